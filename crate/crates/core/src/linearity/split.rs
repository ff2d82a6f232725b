//! Vertex splittable ideals: `I = x I₁ + I₂` with `I₁` free of `x`,
//! `I₂ ⊆ I₁`, both again vertex splittable, down to zero, unit and
//! principal ideals.

use std::collections::HashMap;
use serde::{Deserialize, Serialize};

use super::LinearityError;
use crate::certify::Violation;
use crate::ideals::{parse_monomial, Monomial, MonomialIdeal};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LeafKind {
    Zero,
    Unit,
    Principal,
}

/// The one leaf kind an ideal has, if it is a leaf at all; the unit ideal
/// counts as unit, not principal.
fn leaf_kind(i: &MonomialIdeal) -> Option<LeafKind> {
    if i.is_zero() {
        Some(LeafKind::Zero)
    } else if i.is_unit() {
        Some(LeafKind::Unit)
    } else if i.is_principal() {
        Some(LeafKind::Principal)
    } else {
        None
    }
}

/// Every node records its ideal's generators so verification can redo
/// each split.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "node", rename_all = "snake_case")]
pub enum SplitTree {
    Leaf {
        leaf: LeafKind,
        generators: Vec<String>,
    },
    Split {
        variable: String,
        generators: Vec<String>,
        /// Tree for `I₁`, the ideal of `u / x` over generators divisible by `x`.
        left: Box<SplitTree>,
        /// Tree for `I₂`, the generators not divisible by `x`.
        right: Box<SplitTree>,
    },
}

impl SplitTree {
    pub fn generators(&self) -> &[String] {
        match self {
            SplitTree::Leaf { generators, .. } | SplitTree::Split { generators, .. } => generators,
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            SplitTree::Leaf { .. } => 1,
            SplitTree::Split { left, right, .. } => 1 + left.node_count() + right.node_count(),
        }
    }

    /// Re-checks every split against `i`.
    pub fn verify(&self, i: &MonomialIdeal) -> Result<(), Violation> {
        verify_node(self, i, "root")
    }
}

fn parse_gens(vars: &[String], gens: &[String], path: &str) -> Result<(), Violation> {
    for g in gens {
        parse_monomial(vars, g).map_err(|e| Violation::Unparsable(format!("{path}: {e}")))?;
    }
    Ok(())
}

fn verify_node(t: &SplitTree, expected: &MonomialIdeal, path: &str) -> Result<(), Violation> {
    let vars = expected.vars();
    // generators are recorded in canonical order
    parse_gens(vars, t.generators(), path)?;
    if t.generators() != expected.generator_strings() {
        return Err(Violation::SplitIdealMismatch { path: path.to_string() });
    }
    match t {
        SplitTree::Leaf { leaf, .. } => {
            if leaf_kind(&expected) == Some(*leaf) {
                Ok(())
            } else {
                Err(Violation::SplitBadLeaf { path: path.to_string() })
            }
        }
        SplitTree::Split { variable, left, right, .. } => {
            let x = vars
                .iter()
                .position(|v| v == variable)
                .ok_or_else(|| Violation::SplitUnknownVariable { path: path.to_string(), variable: variable.clone() })?;
            let (i1, i2) = split_at(expected, x);
            if i1.is_zero() {
                return Err(Violation::SplitVariableUnused { path: path.to_string(), variable: variable.clone() });
            }
            if i1.gens().iter().any(|g| g.exp(x) > 0) {
                return Err(Violation::SplitConditionA { path: path.to_string() });
            }
            // G(I) must be the disjoint union of x·G(I₁) and G(I₂)
            let mut union: Vec<Monomial> =
                i1.gens().iter().map(|g| g.mul(&Monomial::var(vars.len(), x))).collect();
            union.extend(i2.gens().iter().cloned());
            let n = union.len();
            let rebuilt = MonomialIdeal::new(vars.clone(), union);
            if rebuilt != *expected || rebuilt.len() != n {
                return Err(Violation::SplitConditionB { path: path.to_string() });
            }
            if !i1.contains_ideal(&i2) {
                return Err(Violation::SplitConditionC { path: path.to_string() });
            }
            verify_node(left, &i1, &format!("{path}.left"))?;
            verify_node(right, &i2, &format!("{path}.right"))
        }
    }
}

/// `I₁` (from generators divisible by `x`, divided by `x`) and `I₂`.
fn split_at(i: &MonomialIdeal, x: usize) -> (MonomialIdeal, MonomialIdeal) {
    let vars = i.vars().clone();
    let xm = Monomial::var(vars.len(), x);
    let (with, without): (Vec<&Monomial>, Vec<&Monomial>) = i.gens().iter().partition(|g| g.exp(x) > 0);
    let i1 = MonomialIdeal::new(vars.clone(), with.iter().map(|g| g.div(&xm).unwrap()).collect());
    let i2 = MonomialIdeal::new(vars, without.into_iter().cloned().collect());
    (i1, i2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitOptions {
    pub cap: usize,
    /// Largest number of distinct sub-ideals examined.
    pub node_budget: u64,
}

impl Default for SplitOptions {
    fn default() -> Self {
        SplitOptions { cap: 20, node_budget: 200_000 }
    }
}

struct SplitSearch {
    memo: HashMap<Vec<Monomial>, Option<SplitTree>>,
    budget: u64,
    nodes: u64,
}

impl SplitSearch {
    fn solve(&mut self, i: &MonomialIdeal) -> Result<Option<SplitTree>, LinearityError> {
        let generators = i.generator_strings();
        if let Some(leaf) = leaf_kind(i) {
            return Ok(Some(SplitTree::Leaf { leaf, generators }));
        }
        if let Some(hit) = self.memo.get(i.gens()) {
            return Ok(hit.clone());
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(LinearityError::BudgetExhausted { nodes: self.budget });
        }
        let mut found = None;
        for x in crate::graphs::bits(i.support_mask()) {
            let (i1, i2) = split_at(i, x);
            if i1.gens().iter().any(|g| g.exp(x) > 0) || !i1.contains_ideal(&i2) {
                continue;
            }
            let Some(left) = self.solve(&i1)? else { continue };
            let Some(right) = self.solve(&i2)? else { continue };
            found = Some(SplitTree::Split {
                variable: i.vars()[x].clone(),
                generators: generators.clone(),
                left: Box::new(left),
                right: Box::new(right),
            });
            break;
        }
        self.memo.insert(i.gens().to_vec(), found.clone());
        Ok(found)
    }
}

/// A split tree when `I` is vertex splittable; variables are tried in
/// universe order at every node.
pub fn is_vertex_splittable(
    i: &MonomialIdeal,
    opts: SplitOptions,
) -> Result<Option<SplitTree>, LinearityError> {
    if i.len() > opts.cap {
        return Err(LinearityError::SearchCapped { generators: i.len(), cap: opts.cap });
    }
    SplitSearch { memo: HashMap::new(), budget: opts.node_budget, nodes: 0 }.solve(i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;
    use crate::ideals::parse_ideal;

    fn xyz() -> Arc<[String]> {
        ["x", "y", "z"].iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn principal_leaf() {
        let i = parse_ideal(xyz(), &["x*y^2"]).unwrap();
        let t = is_vertex_splittable(&i, SplitOptions::default()).unwrap().unwrap();
        assert!(matches!(t, SplitTree::Leaf { leaf: LeafKind::Principal, .. }));
        t.verify(&i).unwrap();
    }

    #[test]
    fn unit_leaf_is_not_principal() {
        let one = MonomialIdeal::unit(xyz());
        let t = SplitTree::Leaf { leaf: LeafKind::Unit, generators: one.generator_strings() };
        t.verify(&one).unwrap();
        let p = SplitTree::Leaf { leaf: LeafKind::Principal, generators: one.generator_strings() };
        assert!(matches!(p.verify(&one), Err(Violation::SplitBadLeaf { .. })));
    }

    #[test]
    fn triangle_splits_at_x() {
        let i = parse_ideal(xyz(), &["x*y", "x*z", "y*z"]).unwrap();
        let t = is_vertex_splittable(&i, SplitOptions::default()).unwrap().unwrap();
        match &t {
            SplitTree::Split { variable, left, right, .. } => {
                assert_eq!(variable, "x");
                assert_eq!(left.generators(), &["y", "z"]);
                assert_eq!(right.generators(), &["y*z"]);
            }
            _ => panic!("expected a split"),
        }
        t.verify(&i).unwrap();
    }

    #[test]
    fn condition_a_forces_split_at_z() {
        let i = parse_ideal(xyz(), &["x^2*y", "z"]).unwrap();
        let t = is_vertex_splittable(&i, SplitOptions::default()).unwrap().unwrap();
        match &t {
            SplitTree::Split { variable, left, right, .. } => {
                assert_eq!(variable, "z");
                assert_eq!(left.generators(), &["1"]);
                assert_eq!(right.generators(), &["x^2*y"]);
            }
            _ => panic!("expected a split"),
        }
        t.verify(&i).unwrap();
        // splitting at x breaks condition (a)
        let bad = SplitTree::Split {
            variable: "x".into(),
            generators: vec!["x^2*y".into(), "z".into()],
            left: Box::new(SplitTree::Leaf { leaf: LeafKind::Principal, generators: vec!["x*y".into()] }),
            right: Box::new(SplitTree::Leaf { leaf: LeafKind::Principal, generators: vec!["z".into()] }),
        };
        assert!(matches!(bad.verify(&i), Err(Violation::SplitIdealMismatch { .. })));
        let bad = SplitTree::Split {
            variable: "x".into(),
            generators: vec!["z".into(), "x^2*y".into()],
            left: Box::new(SplitTree::Leaf { leaf: LeafKind::Principal, generators: vec!["x*y".into()] }),
            right: Box::new(SplitTree::Leaf { leaf: LeafKind::Principal, generators: vec!["z".into()] }),
        };
        assert!(matches!(bad.verify(&i), Err(Violation::SplitConditionA { .. })));
    }

    #[test]
    fn four_cycle_is_not_splittable() {
        let v: Arc<[String]> = ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect();
        // 2K2: ab, cd has no linear resolution
        let i = parse_ideal(v, &["a*b", "c*d"]).unwrap();
        assert_eq!(is_vertex_splittable(&i, SplitOptions::default()).unwrap(), None);
    }

    #[test]
    fn condition_c_violation_is_named() {
        let v: Arc<[String]> = ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect();
        let i = parse_ideal(v, &["a*b", "c*d"]).unwrap();
        let bad = SplitTree::Split {
            variable: "a".into(),
            generators: vec!["a*b".into(), "c*d".into()],
            left: Box::new(SplitTree::Leaf { leaf: LeafKind::Principal, generators: vec!["b".into()] }),
            right: Box::new(SplitTree::Leaf { leaf: LeafKind::Principal, generators: vec!["c*d".into()] }),
        };
        assert!(matches!(bad.verify(&i), Err(Violation::SplitConditionC { .. })));
    }
}
