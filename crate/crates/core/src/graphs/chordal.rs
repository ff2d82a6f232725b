use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::{bits, complement, SimpleGraph};
use crate::certify::Violation;

/// Either a perfect elimination ordering or a chordless cycle of length at
/// least four.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ChordalityCertificate {
    PerfectEliminationOrdering { order: Vec<usize> },
    ChordlessCycle { cycle: Vec<usize> },
}

impl ChordalityCertificate {
    pub fn is_chordal(&self) -> bool {
        matches!(self, ChordalityCertificate::PerfectEliminationOrdering { .. })
    }

    /// Re-checks the certificate against `g`.
    pub fn verify(&self, g: &SimpleGraph) -> Result<(), Violation> {
        match self {
            ChordalityCertificate::PerfectEliminationOrdering { order } => verify_peo(g, order),
            ChordalityCertificate::ChordlessCycle { cycle } => verify_cycle(g, cycle),
        }
    }
}

fn verify_peo(g: &SimpleGraph, order: &[usize]) -> Result<(), Violation> {
    let n = g.len();
    let mut seen = 0u64;
    for &v in order {
        if v >= n {
            return Err(Violation::UnknownVertex(v));
        }
        if seen >> v & 1 == 1 {
            return Err(Violation::OrderNotPermutation);
        }
        seen |= 1 << v;
    }
    if order.len() != n {
        return Err(Violation::OrderNotPermutation);
    }
    if let Some(v) = first_peo_failure(g, order) {
        return Err(Violation::LaterNeighborsNotClique(v));
    }
    Ok(())
}

fn verify_cycle(g: &SimpleGraph, cycle: &[usize]) -> Result<(), Violation> {
    let k = cycle.len();
    if let Some(&v) = cycle.iter().find(|&&v| v >= g.len()) {
        return Err(Violation::UnknownVertex(v));
    }
    let mask = cycle.iter().fold(0u64, |m, &v| m | 1 << v);
    if mask.count_ones() as usize != k {
        return Err(Violation::WitnessNotDistinct);
    }
    if k < 4 {
        return Err(Violation::CycleTooShort(k));
    }
    for i in 0..k {
        for j in i + 1..k {
            let consecutive = j == i + 1 || (i == 0 && j == k - 1);
            let (a, b) = (cycle[i], cycle[j]);
            match (consecutive, g.has_edge(a, b)) {
                (true, false) => return Err(Violation::CycleMissingEdge(a, b)),
                (false, true) => return Err(Violation::CycleChord(a, b)),
                _ => {}
            }
        }
    }
    Ok(())
}

/// Maximum cardinality search; returns vertices in visiting order.
fn maximum_cardinality_search(g: &SimpleGraph) -> Vec<usize> {
    let n = g.len();
    let mut label = vec![0usize; n];
    let mut numbered = 0u64;
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| numbered >> v & 1 == 0)
            .max_by_key(|&v| (label[v], std::cmp::Reverse(v)))
            .expect("an unnumbered vertex remains");
        numbered |= 1 << v;
        order.push(v);
        for u in bits(g.neighbor_mask(v) & !numbered) {
            label[u] += 1;
        }
    }
    order
}

/// First vertex whose later neighbours (in `order`) are not a clique.
fn first_peo_failure(g: &SimpleGraph, order: &[usize]) -> Option<usize> {
    let mut later = g.all_mask();
    for &v in order {
        later &= !(1 << v);
        let nb = g.neighbor_mask(v) & later;
        for u in bits(nb) {
            if nb & !g.neighbor_mask(u) & !(1 << u) != 0 {
                return Some(v);
            }
        }
    }
    None
}

/// Shortest path from `a` to `b` inside `allowed` (both endpoints allowed).
fn shortest_path(g: &SimpleGraph, a: usize, b: usize, allowed: u64) -> Option<Vec<usize>> {
    let mut parent = vec![usize::MAX; g.len()];
    let mut queue = VecDeque::from([a]);
    let mut seen = 1u64 << a;
    while let Some(v) = queue.pop_front() {
        if v == b {
            let mut path = vec![b];
            let mut cur = b;
            while cur != a {
                cur = parent[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for u in bits(g.neighbor_mask(v) & allowed & !seen) {
            seen |= 1 << u;
            parent[u] = v;
            queue.push_back(u);
        }
    }
    None
}

/// A chordless cycle through `v` and its non-adjacent neighbours `a`, `b`,
/// closed by a shortest path that avoids the rest of `N[v]`.
fn cycle_through(g: &SimpleGraph, v: usize, a: usize, b: usize) -> Option<Vec<usize>> {
    let closed = g.neighbor_mask(v) | 1 << v;
    let allowed = g.all_mask() & !closed | 1 << a | 1 << b;
    let path = shortest_path(g, a, b, allowed)?;
    let mut cycle = vec![v];
    cycle.extend(path);
    Some(cycle)
}

fn find_chordless_cycle(g: &SimpleGraph, hint: Option<usize>, order: &[usize]) -> Vec<usize> {
    let try_vertex = |v: usize, later: u64| -> Option<Vec<usize>> {
        let nb = g.neighbor_mask(v) & later;
        for a in bits(nb) {
            for b in bits(nb & !g.neighbor_mask(a) & !((2u64 << a) - 1)) {
                if let Some(c) = cycle_through(g, v, a, b) {
                    return Some(c);
                }
            }
        }
        None
    };
    if let Some(v) = hint {
        let pos = order.iter().position(|&u| u == v).expect("hint is in the order");
        let later = order[pos + 1..].iter().fold(0u64, |m, &u| m | 1 << u);
        if let Some(c) = try_vertex(v, later) {
            return c;
        }
    }
    for v in 0..g.len() {
        if let Some(c) = try_vertex(v, g.all_mask()) {
            return c;
        }
    }
    unreachable!("graph failed the elimination test but has no chordless cycle")
}

/// Decides chordality with a certificate.
pub fn is_chordal(g: &SimpleGraph) -> ChordalityCertificate {
    let mut order = maximum_cardinality_search(g);
    order.reverse();
    match first_peo_failure(g, &order) {
        None => ChordalityCertificate::PerfectEliminationOrdering { order },
        Some(v) => ChordalityCertificate::ChordlessCycle {
            cycle: find_chordless_cycle(g, Some(v), &order),
        },
    }
}

/// Chordality of the complement; the certificate refers to the complement.
pub fn is_cochordal(g: &SimpleGraph) -> ChordalityCertificate {
    is_chordal(&complement(g))
}
