use serde::{Deserialize, Serialize};

use super::{bits, complement, SimpleGraph};
use crate::certify::Violation;

/// Partition of the vertices into independent sets with every cross-part
/// pair adjacent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultipartiteCertificate {
    pub parts: Vec<Vec<usize>>,
    pub r: usize,
}

impl MultipartiteCertificate {
    pub fn verify(&self, g: &SimpleGraph) -> Result<(), Violation> {
        if self.r != self.parts.len() {
            return Err(Violation::PartCountMismatch { r: self.r, parts: self.parts.len() });
        }
        let mut part_of = vec![usize::MAX; g.len()];
        for (i, part) in self.parts.iter().enumerate() {
            if part.is_empty() {
                return Err(Violation::EmptyPart(i));
            }
            for &v in part {
                if v >= g.len() {
                    return Err(Violation::UnknownVertex(v));
                }
                if part_of[v] != usize::MAX {
                    return Err(Violation::PartsNotPartition);
                }
                part_of[v] = i;
            }
        }
        if part_of.contains(&usize::MAX) {
            return Err(Violation::PartsNotPartition);
        }
        for a in 0..g.len() {
            for b in a + 1..g.len() {
                match (part_of[a] == part_of[b], g.has_edge(a, b)) {
                    (true, true) => return Err(Violation::EdgeInsidePart(a, b)),
                    (false, false) => return Err(Violation::MissingCrossEdge(a, b)),
                    _ => {}
                }
            }
        }
        Ok(())
    }

    /// Part index of every vertex.
    pub fn part_of(&self, n: usize) -> Vec<usize> {
        let mut out = vec![usize::MAX; n];
        for (i, part) in self.parts.iter().enumerate() {
            for &v in part {
                out[v] = i;
            }
        }
        out
    }
}

/// Returns the parts when `g` is complete multipartite. The parts are the
/// connected components of the complement, ordered by least vertex. An
/// edgeless graph yields a single part.
pub fn complete_multipartite(g: &SimpleGraph) -> Option<MultipartiteCertificate> {
    let gc = complement(g);
    let mut left = g.all_mask();
    let mut parts = Vec::new();
    while left != 0 {
        let start = left.trailing_zeros() as usize;
        let mut comp = 1u64 << start;
        let mut frontier = comp;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = gc.neighbor_mask(v) & !comp;
            comp |= fresh;
            frontier |= fresh;
        }
        // the component must be a clique of the complement
        if bits(comp).any(|v| gc.neighbor_mask(v) | 1 << v != comp) {
            return None;
        }
        parts.push(bits(comp).collect::<Vec<_>>());
        left &= !comp;
    }
    Some(MultipartiteCertificate { r: parts.len(), parts })
}
