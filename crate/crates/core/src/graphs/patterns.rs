use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::{bits, SimpleGraph, WeightedOrientedGraph};
use crate::certify::Violation;

/// The forbidden three-vertex configurations and the house graph.
///
/// Roles are numbered 0, 1, 2. Unless noted, role 0 is a source inside the
/// pattern and its weight is unconstrained; the listed roles need weight at
/// least 2.
///
/// - `D1`: directed path 0 → 1 → 2; roles 1 and 2 weighted.
/// - `D2`: out-star 0 → 1, 0 → 2, no edge between 1 and 2; roles 1 and 2 weighted.
/// - `D3`: directed triangle 0 → 1 → 2 → 0; all three roles weighted.
/// - `D4`: transitive triangle 0 → 1, 0 → 2, 2 → 1; roles 1 and 2 weighted.
///   Reversing the arc between 1 and 2 gives the same triangle with roles 1
///   and 2 swapped, so one template covers both.
/// - `House`: a 4-cycle a-b-c-d plus a vertex e adjacent to a and b.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Pattern {
    D1,
    D2,
    D3,
    D4,
    House,
}

impl Pattern {
    pub const FORBIDDEN: [Pattern; 4] = [Pattern::D1, Pattern::D2, Pattern::D3, Pattern::D4];

    /// Arcs of the template in role coordinates.
    pub fn arcs(self) -> &'static [(usize, usize)] {
        match self {
            Pattern::D1 => &[(0, 1), (1, 2)],
            Pattern::D2 => &[(0, 1), (0, 2)],
            Pattern::D3 => &[(0, 1), (1, 2), (2, 0)],
            Pattern::D4 => &[(0, 1), (0, 2), (2, 1)],
            Pattern::House => &[],
        }
    }

    /// Roles whose weight must be at least 2.
    pub fn weighted_roles(self) -> &'static [usize] {
        match self {
            Pattern::D1 | Pattern::D2 | Pattern::D4 => &[1, 2],
            Pattern::D3 => &[0, 1, 2],
            Pattern::House => &[],
        }
    }

    /// An instance of the pattern with the given weights on roles 1 and 2.
    /// For `D3` role 0 gets weight 2. Panics for `House`.
    pub fn instance(self, w2: u32, w3: u32) -> WeightedOrientedGraph {
        assert!(self != Pattern::House, "house is not a weighted pattern");
        let w1 = if self == Pattern::D3 { 2 } else { 1 };
        WeightedOrientedGraph::from_indices(vec![w1, w2, w3], self.arcs())
            .expect("pattern arcs are valid")
            .0
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A pattern occurrence. `witness[role]` is the host vertex playing `role`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternMatch {
    pub pattern: Pattern,
    pub witness: Vec<usize>,
}

const HOUSE_EDGES: [(usize, usize); 6] = [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (1, 4)];

impl PatternMatch {
    /// Re-checks the witness as an induced occurrence in `d`. House matches
    /// are checked against the underlying graph of `d`.
    pub fn verify(&self, d: &WeightedOrientedGraph) -> Result<(), Violation> {
        if self.pattern == Pattern::House {
            return self.verify_house(&super::underlying(d));
        }
        self.check_witness_shape(d.len(), 3)?;
        let w = &self.witness;
        for i in 0..3 {
            for j in 0..3 {
                if i != j && d.has_arc(w[i], w[j]) != self.pattern.arcs().contains(&(i, j)) {
                    return Err(Violation::PatternMismatch(self.pattern));
                }
            }
        }
        if self.pattern.weighted_roles().iter().any(|&r| d.weight(w[r]) < 2) {
            return Err(Violation::PatternMismatch(self.pattern));
        }
        Ok(())
    }

    /// Checks a house witness in a simple graph.
    pub fn verify_house(&self, g: &SimpleGraph) -> Result<(), Violation> {
        if self.pattern != Pattern::House {
            return Err(Violation::PatternMismatch(self.pattern));
        }
        self.check_witness_shape(g.len(), 5)?;
        let w = &self.witness;
        for i in 0..5 {
            for j in i + 1..5 {
                let want = HOUSE_EDGES.contains(&(i, j)) || HOUSE_EDGES.contains(&(j, i));
                if g.has_edge(w[i], w[j]) != want {
                    return Err(Violation::PatternMismatch(Pattern::House));
                }
            }
        }
        Ok(())
    }

    fn check_witness_shape(&self, n: usize, len: usize) -> Result<(), Violation> {
        if self.witness.len() != len {
            return Err(Violation::WitnessLength { found: self.witness.len(), expected: len });
        }
        if let Some(&v) = self.witness.iter().find(|&&v| v >= n) {
            return Err(Violation::UnknownVertex(v));
        }
        let mask = self.witness.iter().fold(0u64, |m, &v| m | 1 << v);
        if mask.count_ones() as usize != len {
            return Err(Violation::WitnessNotDistinct);
        }
        Ok(())
    }
}

/// One relabeling of a template onto sorted positions (p0 < p1 < p2).
struct Placement {
    pattern: Pattern,
    /// Bit `3*i + j` set iff there is an arc from position i to position j.
    arc_code: u16,
    /// Positions that must carry weight at least 2.
    weighted: u8,
    /// `role_at[role]` is the position of `role`.
    role_at: [usize; 3],
}

const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

fn placements() -> &'static [Placement] {
    static TABLE: OnceLock<Vec<Placement>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut out = Vec::new();
        for pattern in Pattern::FORBIDDEN {
            let mut seen = Vec::new();
            for role_at in PERMS {
                let arc_code = pattern
                    .arcs()
                    .iter()
                    .fold(0u16, |c, &(t, h)| c | 1 << (3 * role_at[t] + role_at[h]));
                let weighted = pattern
                    .weighted_roles()
                    .iter()
                    .fold(0u8, |m, &r| m | 1 << role_at[r]);
                // Symmetric templates produce repeated placements.
                if !seen.contains(&(arc_code, weighted)) {
                    seen.push((arc_code, weighted));
                    out.push(Placement { pattern, arc_code, weighted, role_at });
                }
            }
        }
        out
    })
}

/// Scans 3-vertex subsets in lexicographic order and returns the first
/// induced occurrence of D1..D4.
pub fn find_forbidden(d: &WeightedOrientedGraph) -> Option<PatternMatch> {
    let n = d.len();
    let heavy: u64 = (0..n).filter(|&v| d.weight(v) >= 2).fold(0, |m, v| m | 1 << v);
    if heavy.count_ones() < 2 {
        return None;
    }
    let table = placements();
    for a in 0..n {
        for b in a + 1..n {
            if heavy >> a & 1 == 0 && heavy >> b & 1 == 0 {
                continue;
            }
            for c in b + 1..n {
                let t = [a, b, c];
                let weighted =
                    (0..3).filter(|&i| heavy >> t[i] & 1 == 1).fold(0u8, |m, i| m | 1 << i);
                if weighted.count_ones() < 2 {
                    continue;
                }
                let mut code = 0u16;
                for i in 0..3 {
                    for j in 0..3 {
                        if i != j && d.has_arc(t[i], t[j]) {
                            code |= 1 << (3 * i + j);
                        }
                    }
                }
                if let Some(p) = table
                    .iter()
                    .find(|p| p.arc_code == code && p.weighted & !weighted == 0)
                {
                    return Some(PatternMatch {
                        pattern: p.pattern,
                        witness: p.role_at.iter().map(|&pos| t[pos]).collect(),
                    });
                }
            }
        }
    }
    None
}

/// Finds an induced house; the witness lists the cycle a, b, c, d and then
/// the roof vertex e adjacent to a and b.
pub fn find_house(g: &SimpleGraph) -> Option<PatternMatch> {
    let n = g.len();
    for a in 0..n {
        for b in g.neighbors(a) {
            let (na, nb) = (g.neighbor_mask(a), g.neighbor_mask(b));
            for e in bits(na & nb) {
                let ne = g.neighbor_mask(e);
                for c in bits(nb & !na & !ne & !(1 << a)) {
                    let nc = g.neighbor_mask(c);
                    if let Some(dv) = bits(na & nc & !nb & !ne & !(1 << b)).next() {
                        return Some(PatternMatch {
                            pattern: Pattern::House,
                            witness: vec![a, b, c, dv, e],
                        });
                    }
                }
            }
        }
    }
    None
}

pub fn is_house_free(g: &SimpleGraph) -> bool {
    find_house(g).is_none()
}
