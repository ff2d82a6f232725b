//! Canonical forms and isomorphism-reduced enumeration of small graphs.
//!
//! Canonical labels come from colour refinement followed by a brute-force
//! search over the permutations that respect the refined cells. This is
//! exact and fast enough for the graph sizes used here (n ≤ 7).

use std::collections::HashSet;

use super::{bits, underlying, SimpleGraph, WeightedOrientedGraph};

/// Canonical labeling of a vertex-coloured directed graph given by colours
/// and out-neighbour masks.
#[derive(Debug, Clone)]
pub struct Canon {
    /// Isomorphism invariant: equal keys iff isomorphic.
    pub key: Vec<u64>,
    /// `perm[v]` is the canonical position of vertex `v`.
    pub perm: Vec<usize>,
    /// Automorphisms as vertex maps `v -> auto[v]`.
    pub automorphisms: Vec<Vec<usize>>,
}

fn refine(colors: &[u32], out: &[u64]) -> Vec<usize> {
    let n = colors.len();
    let mut rank = rank_of(colors.iter().map(|&c| vec![c as u64]).collect());
    loop {
        let sigs: Vec<Vec<u64>> = (0..n)
            .map(|v| {
                let mut outs: Vec<u64> = bits(out[v]).map(|u| rank[u] as u64).collect();
                let mut ins: Vec<u64> =
                    (0..n).filter(|&u| out[u] >> v & 1 == 1).map(|u| rank[u] as u64).collect();
                outs.sort_unstable();
                ins.sort_unstable();
                let mut s = vec![rank[v] as u64, outs.len() as u64];
                s.extend(outs);
                s.push(u64::MAX);
                s.extend(ins);
                s
            })
            .collect();
        let next = rank_of(sigs);
        let cells = |r: &[usize]| r.iter().collect::<HashSet<_>>().len();
        if cells(&next) == cells(&rank) {
            return next;
        }
        rank = next;
    }
}

fn rank_of(sigs: Vec<Vec<u64>>) -> Vec<usize> {
    let mut sorted = sigs.clone();
    sorted.sort();
    sorted.dedup();
    sigs.iter().map(|s| sorted.binary_search(s).unwrap()).collect()
}

fn key_under(colors: &[u32], out: &[u64], perm: &[usize]) -> Vec<u64> {
    let n = colors.len();
    let mut inv = vec![0usize; n];
    for (v, &p) in perm.iter().enumerate() {
        inv[p] = v;
    }
    let mut key = Vec::with_capacity(2 * n);
    key.extend(inv.iter().map(|&v| colors[v] as u64));
    for &v in &inv {
        key.push(bits(out[v]).fold(0u64, |m, u| m | 1 << perm[u]));
    }
    key
}

/// Computes the canonical form. Vertices are ordered by refined colour and
/// every ordering within the cells is tried.
pub fn canonical_form(colors: &[u32], out: &[u64]) -> Canon {
    let n = colors.len();
    let rank = refine(colors, out);
    let mut cells: Vec<Vec<usize>> = Vec::new();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (rank[v], v));
    for v in order {
        match cells.last_mut() {
            Some(c) if rank[c[0]] == rank[v] => c.push(v),
            _ => cells.push(vec![v]),
        }
    }
    let mut best: Option<(Vec<u64>, Vec<usize>)> = None;
    let mut ties: Vec<Vec<usize>> = Vec::new();
    let mut perm = vec![0usize; n];
    let mut visit = |perm: &[usize]| {
        let key = key_under(colors, out, perm);
        match &best {
            Some((k, _)) if *k < key => {}
            Some((k, _)) if *k == key => ties.push(perm.to_vec()),
            _ => {
                best = Some((key, perm.to_vec()));
                ties.clear();
                ties.push(perm.to_vec());
            }
        }
    };
    permute_cells(&cells, 0, 0, 0, &mut perm, &mut visit);
    let (key, perm) = best.unwrap_or_default();
    let mut inv = vec![0usize; n];
    for (v, &p) in perm.iter().enumerate() {
        inv[p] = v;
    }
    // p and perm give the same labeled graph, so perm^-1 ∘ p is an automorphism
    let automorphisms = ties.iter().map(|p| (0..n).map(|v| inv[p[v]]).collect()).collect();
    Canon { key, perm, automorphisms }
}

fn permute_cells(
    cells: &[Vec<usize>],
    cell: usize,
    used: u64,
    offset: usize,
    perm: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    if cell == cells.len() {
        visit(perm);
        return;
    }
    let c = &cells[cell];
    let placed = used.count_ones() as usize;
    if placed == c.len() {
        permute_cells(cells, cell + 1, 0, offset + c.len(), perm, visit);
        return;
    }
    for (i, &v) in c.iter().enumerate() {
        if used >> i & 1 == 0 {
            perm[v] = offset + placed;
            permute_cells(cells, cell, used | 1 << i, offset, perm, visit);
        }
    }
}

pub fn simple_canon(g: &SimpleGraph) -> Canon {
    let adj: Vec<u64> = (0..g.len()).map(|v| g.neighbor_mask(v)).collect();
    canonical_form(&vec![0; g.len()], &adj)
}

pub fn oriented_canon(d: &WeightedOrientedGraph) -> Canon {
    let out: Vec<u64> = (0..d.len()).map(|v| d.out_mask(v)).collect();
    canonical_form(d.weights(), &out)
}

pub fn is_isomorphic(a: &WeightedOrientedGraph, b: &WeightedOrientedGraph) -> bool {
    a.len() == b.len() && oriented_canon(a).key == oriented_canon(b).key
}

/// Non-isomorphic simple graphs on exactly `n` vertices, grown one vertex at
/// a time from the classes on `n - 1` vertices.
pub fn simple_graph_classes(n: usize) -> Vec<SimpleGraph> {
    assert!(n <= 10, "enumeration is only intended for small n");
    let mut level: Vec<Vec<u64>> = vec![vec![]];
    for m in 1..=n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for adj in &level {
            for nb in 0u64..1 << (m - 1) {
                let mut new_adj = adj.clone();
                for u in bits(nb) {
                    new_adj[u] |= 1 << (m - 1);
                }
                new_adj.push(nb);
                let canon = canonical_form(&vec![0; m], &new_adj);
                if seen.insert(canon.key.clone()) {
                    next.push(new_adj);
                }
            }
        }
        level = next;
    }
    level
        .into_iter()
        .map(|adj| SimpleGraph::from_adjacency(super::default_names(n), adj))
        .collect()
}

fn apply_to_orientation(edges: &[(usize, usize)], orient: u64, auto: &[usize]) -> u64 {
    // bit i set means edge i = (a, b) with a < b is oriented b -> a
    let mut image = 0u64;
    for (i, &(a, b)) in edges.iter().enumerate() {
        let (t, h) = if orient >> i & 1 == 0 { (a, b) } else { (b, a) };
        let (t2, h2) = (auto[t], auto[h]);
        let j = edges
            .iter()
            .position(|&(x, y)| (x, y) == (t2.min(h2), t2.max(h2)))
            .expect("automorphisms map edges to edges");
        if t2 > h2 {
            image |= 1 << j;
        }
    }
    image
}

/// Every weighted oriented graph whose underlying graph is `g`, up to
/// isomorphism, with weights in `1..=max_weight` on non-sources (sources
/// carry weight 1).
pub fn weighted_orientations(g: &SimpleGraph, max_weight: u32) -> Vec<WeightedOrientedGraph> {
    let n = g.len();
    let edges = g.edges();
    assert!(edges.len() < 64, "too many edges to enumerate orientations");
    let autos = simple_canon(g).automorphisms;
    let mut out = Vec::new();
    for orient in 0u64..1 << edges.len() {
        let images: Vec<u64> =
            autos.iter().map(|a| apply_to_orientation(&edges, orient, a)).collect();
        if images.iter().any(|&im| im < orient) {
            continue;
        }
        let stabilizer: Vec<&Vec<usize>> =
            autos.iter().zip(&images).filter(|(_, &im)| im == orient).map(|(a, _)| a).collect();
        let arcs: Vec<(usize, usize)> = edges
            .iter()
            .enumerate()
            .map(|(i, &(a, b))| if orient >> i & 1 == 0 { (a, b) } else { (b, a) })
            .collect();
        let mut has_in = vec![false; n];
        for &(_, h) in &arcs {
            has_in[h] = true;
        }
        let free: Vec<usize> = (0..n).filter(|&v| has_in[v]).collect();
        let mut weights = vec![1u32; n];
        loop {
            let minimal = stabilizer.iter().all(|a| {
                // weights of the image graph: w'(a[v]) = w(v)
                let mut image = vec![0u32; n];
                for v in 0..n {
                    image[a[v]] = weights[v];
                }
                weights <= image
            });
            if minimal {
                let (d, _) = WeightedOrientedGraph::with_names(g.names().clone(), weights.clone(), &arcs)
                    .expect("orientations of a simple graph are valid");
                out.push(d);
            }
            // odometer over the non-source weights
            let mut i = 0;
            while i < free.len() && weights[free[i]] == max_weight {
                weights[free[i]] = 1;
                i += 1;
            }
            if i == free.len() {
                break;
            }
            weights[free[i]] += 1;
        }
    }
    out
}

/// Weighted oriented graphs on `n` vertices up to isomorphism, restricted to
/// underlying classes accepted by `keep`.
pub fn weighted_oriented_classes(
    n: usize,
    max_weight: u32,
    keep: impl Fn(&SimpleGraph) -> bool,
) -> Vec<WeightedOrientedGraph> {
    simple_graph_classes(n)
        .into_iter()
        .filter(|g| keep(g))
        .flat_map(|g| weighted_orientations(&g, max_weight))
        .collect()
}

/// Checks that no two graphs in `ds` are isomorphic.
pub fn pairwise_non_isomorphic(ds: &[WeightedOrientedGraph]) -> bool {
    let mut seen = HashSet::new();
    ds.iter().all(|d| seen.insert((d.len(), oriented_canon(d).key)))
}

/// Underlying graph class key, handy for grouping.
pub fn underlying_key(d: &WeightedOrientedGraph) -> Vec<u64> {
    simple_canon(&underlying(d)).key
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_class_counts() {
        let counts: Vec<usize> = (0..=6).map(|n| simple_graph_classes(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 11, 34, 156]);
    }

    #[test]
    fn tournaments_on_four_and_five_vertices() {
        let k = |n: usize| {
            let edges: Vec<_> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
            SimpleGraph::from_edges(n, &edges).unwrap()
        };
        // unweighted tournaments: 4 on four vertices, 12 on five
        assert_eq!(weighted_orientations(&k(4), 1).len(), 4);
        assert_eq!(weighted_orientations(&k(5), 1).len(), 12);
    }

    #[test]
    fn oriented_graph_counts() {
        // oriented graphs (no weights) on 3 and 4 vertices: 7 and 42
        let c3: usize = weighted_oriented_classes(3, 1, |_| true).len();
        let c4: usize = weighted_oriented_classes(4, 1, |_| true).len();
        assert_eq!((c3, c4), (7, 42));
    }

    #[test]
    fn weighted_enumeration_is_reduced_and_complete() {
        // brute force on 3 vertices: all oriented graphs with non-source
        // weights in {1, 2}, deduplicated by canonical key
        let pairs = [(0usize, 1usize), (0, 2), (1, 2)];
        let mut brute = HashSet::new();
        for code in 0..27u32 {
            let mut arcs = vec![];
            let mut c = code;
            for &(a, b) in &pairs {
                match c % 3 {
                    1 => arcs.push((a, b)),
                    2 => arcs.push((b, a)),
                    _ => {}
                }
                c /= 3;
            }
            for w in 0..8u32 {
                let weights = (0..3).map(|i| 1 + (w >> i & 1)).collect();
                let (d, _) = WeightedOrientedGraph::from_indices(weights, &arcs).unwrap();
                brute.insert(oriented_canon(&d).key);
            }
        }
        let classes = weighted_oriented_classes(3, 2, |_| true);
        assert!(pairwise_non_isomorphic(&classes));
        assert_eq!(classes.len(), brute.len());
    }

    #[test]
    fn automorphism_group_sizes() {
        let c5 = SimpleGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert_eq!(simple_canon(&c5).automorphisms.len(), 10);
        let star = SimpleGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(simple_canon(&star).automorphisms.len(), 6);
    }
}
