use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::linalg::IntMatrix;
use super::{Characteristic, OracleError};
use crate::graphs::bits;

/// A simplicial complex given by its facets (bitmasks over `vertices`).
/// No facets at all is the void complex; the single facet `0` is `{∅}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialComplex {
    pub vertices: Vec<String>,
    facets: Vec<u64>,
}

impl SimplicialComplex {
    pub fn from_facets(vertices: Vec<String>, mut facets: Vec<u64>) -> Self {
        assert!(vertices.len() <= 64, "at most 64 vertices");
        facets.sort_unstable_by_key(|f| std::cmp::Reverse(f.count_ones()));
        facets.dedup();
        let mut kept: Vec<u64> = Vec::new();
        for f in facets {
            if !kept.iter().any(|k| f & !k == 0) {
                kept.push(f);
            }
        }
        kept.sort_unstable();
        SimplicialComplex { vertices, facets: kept }
    }

    pub fn void(vertices: Vec<String>) -> Self {
        SimplicialComplex { vertices, facets: Vec::new() }
    }

    pub fn facets(&self) -> &[u64] {
        &self.facets
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn contains(&self, face: u64) -> bool {
        self.facets.iter().any(|f| face & !f == 0)
    }

    /// Dimension, with `{∅}` at -1; `None` for the void complex.
    pub fn dim(&self) -> Option<i32> {
        self.facets.iter().map(|f| f.count_ones() as i32 - 1).max()
    }

    /// All faces including `∅`, failing once more than `cap` are found.
    pub fn faces(&self, cap: usize) -> Result<Vec<u64>, OracleError> {
        let mut seen: HashSet<u64> = HashSet::new();
        for &f in &self.facets {
            // subsets of f via the standard submask walk
            let mut sub = f;
            loop {
                seen.insert(sub);
                if seen.len() > cap {
                    return Err(OracleError::TooManyFaces { cap });
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & f;
            }
        }
        let mut out: Vec<u64> = seen.into_iter().collect();
        out.sort_unstable();
        Ok(out)
    }
}

/// Reduced homology ranks of `k`; entry `q + 1` is the rank of `H̃_q`,
/// from `q = -1` up to the dimension. The void complex yields an empty list.
pub fn reduced_homology_ranks(
    k: &SimplicialComplex,
    ch: Characteristic,
    face_cap: usize,
) -> Result<Vec<usize>, OracleError> {
    if k.is_void() {
        return Ok(Vec::new());
    }
    let faces = k.faces(face_cap)?;
    Ok(homology_of_faces(&faces, ch, None))
}

/// Reduced homology of the complex whose faces (including `∅`) are `faces`.
/// With `max_q`, only dimensions up to `max_q` are computed.
pub(crate) fn homology_of_faces(faces: &[u64], ch: Characteristic, max_q: Option<i32>) -> Vec<usize> {
    if faces.is_empty() {
        return Vec::new();
    }
    let top = faces.iter().map(|f| f.count_ones() as usize).max().unwrap();
    // by_size[s] holds the faces with s vertices (dimension s - 1)
    let mut by_size: Vec<Vec<u64>> = vec![Vec::new(); top + 1];
    for &f in faces {
        by_size[f.count_ones() as usize].push(f);
    }
    for v in &mut by_size {
        v.sort_unstable();
    }
    let last_q = match max_q {
        Some(m) => (m.max(-1) as usize + 1).min(top) as i32 - 1,
        None => top as i32 - 1,
    };
    // rank_of[s] = rank of the boundary from size-s faces to size-(s-1) faces
    let mut rank_of = vec![0usize; top + 2];
    for s in 1..=((last_q + 2) as usize).min(top) {
        rank_of[s] = boundary(&by_size[s], &by_size[s - 1]).rank(ch);
    }
    (-1..=last_q)
        .map(|q| {
            let s = (q + 1) as usize;
            by_size[s].len() - rank_of[s] - rank_of[s + 1]
        })
        .collect()
}

fn boundary(rows: &[u64], cols: &[u64]) -> IntMatrix {
    let mut m = IntMatrix::new(cols.len());
    for &f in rows {
        let mut row = Vec::with_capacity(f.count_ones() as usize);
        for (pos, v) in bits(f).enumerate() {
            let c = cols.binary_search(&(f & !(1 << v))).expect("faces are closed under removal");
            row.push((c, if pos % 2 == 0 { 1 } else { -1 }));
        }
        m.rows.push(row);
    }
    m
}
