//! Monomial ideals in canonical form: edge ideals, minimal generators,
//! graded components, colon ideals, products, powers and polarization.

mod monomial;
mod parse;
mod polarize;

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::graphs::WeightedOrientedGraph;

pub use monomial::{canonical_cmp, Monomial};
pub use parse::{format_ideal, parse_ideal, parse_monomial, IdealFile};
pub use polarize::{polarize, PolarizationMap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error("variable {0:?} is not declared")]
    UnknownVariable(String),
    #[error("variable {0:?} is declared twice")]
    DuplicateVariable(String),
    #[error("bad exponent in token {0:?}, exponents must be positive integers")]
    BadExponent(String),
    #[error("cannot parse monomial token {0:?}")]
    Syntax(String),
    #[error("ideals live over different variable lists")]
    UniverseMismatch,
}

/// A monomial ideal given by its minimal generators in canonical order.
/// The empty generator list is the zero ideal; `[1]` is the unit ideal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    vars: Arc<[String]>,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn zero(vars: Arc<[String]>) -> Self {
        MonomialIdeal { vars, gens: Vec::new() }
    }

    pub fn unit(vars: Arc<[String]>) -> Self {
        let n = vars.len();
        MonomialIdeal { vars, gens: vec![Monomial::one(n)] }
    }

    /// The ideal generated by `gens`, minimalized.
    pub fn new(vars: Arc<[String]>, gens: Vec<Monomial>) -> Self {
        assert!(gens.iter().all(|g| g.nvars() == vars.len()), "generator outside universe");
        MonomialIdeal { gens: minimal_generators(gens), vars }
    }

    /// Wraps generators already known to be minimal and canonically sorted.
    pub(crate) fn from_minimal(vars: Arc<[String]>, gens: Vec<Monomial>) -> Self {
        debug_assert!(gens.windows(2).all(|w| canonical_cmp(&w[0], &w[1]).is_lt()));
        MonomialIdeal { vars, gens }
    }

    /// Ideal generated by the given variables.
    pub fn variables(vars: Arc<[String]>, which: &[usize]) -> Self {
        let n = vars.len();
        let gens = which.iter().map(|&i| Monomial::var(n, i)).collect();
        Self::new(vars, gens)
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_one()
    }

    pub fn is_principal(&self) -> bool {
        self.gens.len() == 1
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.gens.first().map(Monomial::degree)
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.gens.last().map(Monomial::degree)
    }

    /// Distinct generator degrees, increasing.
    pub fn degrees(&self) -> Vec<u32> {
        let mut ds: Vec<u32> = self.gens.iter().map(Monomial::degree).collect();
        ds.dedup();
        ds
    }

    pub fn is_equigenerated(&self) -> bool {
        self.min_degree() == self.max_degree()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(Monomial::is_squarefree)
    }

    /// Union of generator supports.
    pub fn support_mask(&self) -> u64 {
        self.gens.iter().fold(0, |m, g| m | g.support_mask())
    }

    pub fn lcm_all(&self) -> Monomial {
        self.gens.iter().fold(Monomial::one(self.nvars()), |a, g| a.lcm(g))
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        membership(self, m)
    }

    /// True when every generator of `other` lies in `self`.
    pub fn contains_ideal(&self, other: &MonomialIdeal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    pub fn generator_strings(&self) -> Vec<String> {
        self.gens.iter().map(|g| g.format(&self.vars)).collect()
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.generator_strings().join(", "))
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Divisibility-minimal elements of `gens`, deduplicated and sorted
/// canonically.
pub fn minimal_generators(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by(canonical_cmp);
    gens.dedup();
    let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        // candidates are sorted by degree, so only earlier ones can divide g
        if !kept.iter().any(|k| k.divides(&g)) {
            kept.push(g);
        }
    }
    kept
}

pub fn minimalize(vars: Arc<[String]>, gens: Vec<Monomial>) -> MonomialIdeal {
    MonomialIdeal::new(vars, gens)
}

/// `I(D)`: one generator `x * y^w(y)` per arc `(x, y)`, minimalized.
pub fn edge_ideal(d: &WeightedOrientedGraph) -> MonomialIdeal {
    let n = d.len();
    let gens = d
        .arcs()
        .into_iter()
        .map(|(t, h)| {
            let mut exps = vec![0u32; n];
            exps[t] = 1;
            exps[h] = d.weight(h);
            Monomial::new(exps)
        })
        .collect();
    MonomialIdeal::new(d.names().clone(), gens)
}

pub fn membership(i: &MonomialIdeal, m: &Monomial) -> bool {
    i.gens.iter().any(|g| g.divides(m))
}

/// `I : g`, generated by `u / gcd(u, g)`.
pub fn colon(i: &MonomialIdeal, g: &Monomial) -> MonomialIdeal {
    let gens = i.gens.iter().map(|u| u.quotient_by_gcd(g)).collect();
    MonomialIdeal::new(i.vars.clone(), gens)
}

/// All monomials of degree `d` in `n` variables, reverse lexicographic on
/// exponent vectors.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(Monomial::new(cur.clone()));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    rec(0, d, &mut vec![0; n], &mut out);
    out
}

/// The ideal generated by the degree-`d` elements of `I`.
pub fn component(i: &MonomialIdeal, d: u32) -> MonomialIdeal {
    let n = i.nvars();
    let mut set: HashSet<Monomial> = HashSet::new();
    for u in i.gens.iter().filter(|u| u.degree() <= d) {
        for m in monomials_of_degree(n, d - u.degree()) {
            set.insert(u.mul(&m));
        }
    }
    let mut gens: Vec<Monomial> = set.into_iter().collect();
    gens.sort_by(canonical_cmp);
    // all generators have degree d, so none divides another
    MonomialIdeal::from_minimal(i.vars.clone(), gens)
}

/// The ideal generated by the minimal generators of degree at most `d`.
pub fn truncate(i: &MonomialIdeal, d: u32) -> MonomialIdeal {
    let gens = i.gens.iter().filter(|g| g.degree() <= d).cloned().collect();
    MonomialIdeal::from_minimal(i.vars.clone(), gens)
}

pub fn product(i: &MonomialIdeal, j: &MonomialIdeal) -> Result<MonomialIdeal, IdealError> {
    if i.vars != j.vars {
        return Err(IdealError::UniverseMismatch);
    }
    let mut gens = Vec::with_capacity(i.len() * j.len());
    for a in &i.gens {
        for b in &j.gens {
            gens.push(a.mul(b));
        }
    }
    Ok(MonomialIdeal::new(i.vars.clone(), gens))
}

/// `I^k` for `k ≥ 1`.
pub fn power(i: &MonomialIdeal, k: u32) -> MonomialIdeal {
    assert!(k >= 1, "power needs k >= 1");
    let mut acc = i.clone();
    for _ in 1..k {
        acc = product(&acc, i).expect("same universe");
    }
    acc
}

/// The sub-ideal generated by the generators supported on `mask`.
pub fn restrict_to(i: &MonomialIdeal, mask: u64) -> MonomialIdeal {
    let gens = i.gens.iter().filter(|g| g.support_mask() & !mask == 0).cloned().collect();
    MonomialIdeal::from_minimal(i.vars.clone(), gens)
}

/// Variable names `x1..xn`.
pub fn default_vars(n: usize) -> Arc<[String]> {
    (1..=n).map(|i| format!("x{i}")).collect()
}
