//! Weighted oriented graphs, their underlying simple graphs, and the graph
//! predicates the linearity criteria are built from.
//!
//! Vertices are addressed by their index in the vertex list. Adjacency is
//! stored as one `u64` bitmask per vertex, which caps graphs at
//! [`MAX_VERTICES`] vertices.

mod chordal;
pub mod enumerate;
pub mod io;
mod multipartite;
mod patterns;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use chordal::{is_chordal, is_cochordal, ChordalityCertificate};
pub use multipartite::{complete_multipartite, MultipartiteCertificate};
pub use patterns::{find_forbidden, find_house, is_house_free, Pattern, PatternMatch};

pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph has {0} vertices, at most {MAX_VERTICES} are supported")]
    TooManyVertices(usize),
    #[error("vertex id {0:?} is empty or contains whitespace")]
    BadVertexId(String),
    #[error("vertex id {0:?} is declared twice")]
    DuplicateVertex(String),
    #[error("vertex {id:?} has weight {weight}, weights must be positive")]
    NonPositiveWeight { id: String, weight: i64 },
    #[error("arc ({0}, {1}) refers to an undeclared vertex")]
    UnknownVertex(String, String),
    #[error("arc ({0}, {0}) is a loop")]
    Loop(String),
    #[error("arc ({0}, {1}) is listed twice")]
    DuplicateArc(String, String),
    #[error("arcs ({0}, {1}) and ({1}, {0}) form an anti-parallel pair")]
    AntiParallel(String, String),
    #[error("vertex index {0} is out of range")]
    IndexOutOfRange(usize),
    #[error("edge {{{0}, {1}}} is not a pair of distinct listed vertices")]
    BadEdge(String, String),
}

/// Iterates the set bits of a mask in increasing order.
pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

fn default_names(n: usize) -> Arc<[String]> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

/// What construction changed about the input.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionReport {
    /// Source vertices whose declared weight was reset to 1.
    pub normalized_sources: Vec<usize>,
}

/// A vertex-weighted oriented graph: no loops, no anti-parallel arcs, and
/// every weight at least 1. Sources carry weight 1 after construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WeightedOrientedGraph {
    names: Arc<[String]>,
    weights: Vec<u32>,
    out: Vec<u64>,
    inn: Vec<u64>,
}

impl WeightedOrientedGraph {
    /// Builds a graph from named vertices and arcs, rejecting loops,
    /// duplicate arcs and anti-parallel pairs.
    pub fn new(
        vertices: Vec<(String, i64)>,
        arcs: &[(String, String)],
    ) -> Result<(Self, ConstructionReport), GraphError> {
        if vertices.len() > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(vertices.len()));
        }
        let mut names = Vec::with_capacity(vertices.len());
        let mut weights = Vec::with_capacity(vertices.len());
        for (id, w) in vertices {
            if id.is_empty() || id.chars().any(char::is_whitespace) {
                return Err(GraphError::BadVertexId(id));
            }
            if names.contains(&id) {
                return Err(GraphError::DuplicateVertex(id));
            }
            if w < 1 || w > u32::MAX as i64 {
                return Err(GraphError::NonPositiveWeight { id, weight: w });
            }
            names.push(id);
            weights.push(w as u32);
        }
        let index = |s: &str| names.iter().position(|n| n == s);
        let mut idx_arcs = Vec::with_capacity(arcs.len());
        for (t, h) in arcs {
            match (index(t), index(h)) {
                (Some(a), Some(b)) => idx_arcs.push((a, b)),
                _ => return Err(GraphError::UnknownVertex(t.clone(), h.clone())),
            }
        }
        Self::with_names(names.into(), weights, &idx_arcs)
    }

    /// Builds a graph on vertices named `x1..xn`.
    pub fn from_indices(
        weights: Vec<u32>,
        arcs: &[(usize, usize)],
    ) -> Result<(Self, ConstructionReport), GraphError> {
        let names = default_names(weights.len());
        Self::with_names(names, weights, arcs)
    }

    pub fn with_names(
        names: Arc<[String]>,
        weights: Vec<u32>,
        arcs: &[(usize, usize)],
    ) -> Result<(Self, ConstructionReport), GraphError> {
        let mut g = Self::unnormalized(names, weights, arcs)?;
        let report = g.normalize_sources();
        Ok((g, report))
    }

    /// Validates arcs without touching the weights of sources.
    pub(crate) fn unnormalized(
        names: Arc<[String]>,
        weights: Vec<u32>,
        arcs: &[(usize, usize)],
    ) -> Result<Self, GraphError> {
        let n = weights.len();
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        assert_eq!(names.len(), n, "one name per vertex");
        for (i, &w) in weights.iter().enumerate() {
            if w == 0 {
                return Err(GraphError::NonPositiveWeight { id: names[i].clone(), weight: 0 });
            }
        }
        let mut out = vec![0u64; n];
        let mut inn = vec![0u64; n];
        for &(t, h) in arcs {
            if t >= n {
                return Err(GraphError::IndexOutOfRange(t));
            }
            if h >= n {
                return Err(GraphError::IndexOutOfRange(h));
            }
            if t == h {
                return Err(GraphError::Loop(names[t].clone()));
            }
            if out[t] >> h & 1 == 1 {
                return Err(GraphError::DuplicateArc(names[t].clone(), names[h].clone()));
            }
            if out[h] >> t & 1 == 1 {
                return Err(GraphError::AntiParallel(names[h].clone(), names[t].clone()));
            }
            out[t] |= 1 << h;
            inn[h] |= 1 << t;
        }
        Ok(WeightedOrientedGraph { names, weights, out, inn })
    }

    fn normalize_sources(&mut self) -> ConstructionReport {
        let mut report = ConstructionReport::default();
        for x in 0..self.len() {
            if self.inn[x] == 0 && self.weights[x] != 1 {
                self.weights[x] = 1;
                report.normalized_sources.push(x);
            }
        }
        report
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn names(&self) -> &Arc<[String]> {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn weight(&self, v: usize) -> u32 {
        self.weights[v]
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn has_arc(&self, tail: usize, head: usize) -> bool {
        self.out[tail] >> head & 1 == 1
    }

    pub fn adjacent(&self, x: usize, y: usize) -> bool {
        self.has_arc(x, y) || self.has_arc(y, x)
    }

    /// Out-neighbourhood as a bitmask.
    pub fn out_mask(&self, v: usize) -> u64 {
        self.out[v]
    }

    /// In-neighbourhood as a bitmask.
    pub fn in_mask(&self, v: usize) -> u64 {
        self.inn[v]
    }

    pub fn out_neighbors(&self, v: usize) -> impl Iterator<Item = usize> {
        bits(self.out[v])
    }

    pub fn in_neighbors(&self, v: usize) -> impl Iterator<Item = usize> {
        bits(self.inn[v])
    }

    pub fn is_source(&self, v: usize) -> bool {
        self.inn[v] == 0
    }

    /// Arcs in increasing (tail, head) order.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|t| bits(self.out[t]).map(move |h| (t, h)))
            .collect()
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(|m| m.count_ones() as usize).sum()
    }
}

impl fmt::Debug for WeightedOrientedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> = (0..self.len())
            .map(|v| format!("{}:{}", self.names[v], self.weights[v]))
            .collect();
        let arcs: Vec<String> = self
            .arcs()
            .into_iter()
            .map(|(t, h)| format!("{}->{}", self.names[t], self.names[h]))
            .collect();
        write!(f, "WOG[{}; {}]", vs.join(" "), arcs.join(" "))
    }
}

/// A finite simple graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    names: Arc<[String]>,
    adj: Vec<u64>,
}

impl SimpleGraph {
    pub fn new(names: Arc<[String]>, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let n = names.len();
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let mut adj = vec![0u64; n];
        for &(a, b) in edges {
            if a >= n || b >= n || a == b {
                let name = |i: usize| names.get(i).cloned().unwrap_or_else(|| i.to_string());
                return Err(GraphError::BadEdge(name(a), name(b)));
            }
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
        Ok(SimpleGraph { names, adj })
    }

    /// Graph on `x1..xn` with the given edges.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        Self::new(default_names(n), edges)
    }

    pub(crate) fn from_adjacency(names: Arc<[String]>, adj: Vec<u64>) -> Self {
        debug_assert!(adj.iter().enumerate().all(|(v, m)| m >> v & 1 == 0));
        SimpleGraph { names, adj }
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn names(&self) -> &Arc<[String]> {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a] >> b & 1 == 1
    }

    pub fn neighbor_mask(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> {
        bits(self.adj[v])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    /// Edges `(a, b)` with `a < b`, in increasing order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|a| bits(self.adj[a] & !((2u64 << a) - 1)).map(move |b| (a, b)))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    pub(crate) fn all_mask(&self) -> u64 {
        if self.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.len()) - 1
        }
    }

    /// True when the vertex set given as a mask is connected (the empty set
    /// counts as connected).
    pub fn is_connected_mask(&self, mask: u64) -> bool {
        if mask == 0 {
            return true;
        }
        let start = mask.trailing_zeros() as usize;
        let mut seen = 1u64 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = self.adj[v] & mask & !seen;
            seen |= fresh;
            frontier |= fresh;
        }
        seen == mask
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_mask(self.all_mask())
    }
}

impl fmt::Debug for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self
            .edges()
            .into_iter()
            .map(|(a, b)| format!("{}-{}", self.names[a], self.names[b]))
            .collect();
        write!(f, "G[n={}; {}]", self.len(), edges.join(" "))
    }
}

/// Forgets orientation and weights.
pub fn underlying(d: &WeightedOrientedGraph) -> SimpleGraph {
    let adj = (0..d.len()).map(|v| d.out[v] | d.inn[v]).collect();
    SimpleGraph::from_adjacency(d.names.clone(), adj)
}

/// Vertices of weight at least 2 with an incoming arc.
pub fn v_plus(d: &WeightedOrientedGraph) -> Vec<usize> {
    (0..d.len())
        .filter(|&v| d.weights[v] > 1 && d.inn[v] != 0)
        .collect()
}

pub fn v_plus_mask(d: &WeightedOrientedGraph) -> u64 {
    v_plus(d).into_iter().fold(0, |m, v| m | 1 << v)
}

pub fn complement(g: &SimpleGraph) -> SimpleGraph {
    let all = g.all_mask();
    let adj = (0..g.len()).map(|v| !g.adj[v] & all & !(1 << v)).collect();
    SimpleGraph::from_adjacency(g.names.clone(), adj)
}

/// Graph of the degree-two minimal generators of the edge ideal: `{x, y}` is
/// an edge when an arc joins them and its head has weight 1.
pub fn h_graph(d: &WeightedOrientedGraph) -> SimpleGraph {
    let mut adj = vec![0u64; d.len()];
    for (t, h) in d.arcs() {
        if d.weights[h] == 1 {
            adj[t] |= 1 << h;
            adj[h] |= 1 << t;
        }
    }
    SimpleGraph::from_adjacency(d.names.clone(), adj)
}

/// Induced subgraph on `subset`. Vertices keep their original relative order
/// and their weights are inherited as-is (no source normalization).
pub fn induced(
    d: &WeightedOrientedGraph,
    subset: &[usize],
) -> Result<WeightedOrientedGraph, GraphError> {
    let mut keep: Vec<usize> = subset.to_vec();
    if let Some(&bad) = keep.iter().find(|&&v| v >= d.len()) {
        return Err(GraphError::IndexOutOfRange(bad));
    }
    keep.sort_unstable();
    keep.dedup();
    let mut pos = vec![usize::MAX; d.len()];
    for (i, &v) in keep.iter().enumerate() {
        pos[v] = i;
    }
    let names: Arc<[String]> = keep.iter().map(|&v| d.names[v].clone()).collect();
    let weights = keep.iter().map(|&v| d.weights[v]).collect();
    let arcs: Vec<(usize, usize)> = d
        .arcs()
        .into_iter()
        .filter(|&(t, h)| pos[t] != usize::MAX && pos[h] != usize::MAX)
        .map(|(t, h)| (pos[t], pos[h]))
        .collect();
    WeightedOrientedGraph::unnormalized(names, weights, &arcs)
}

pub fn is_vertex_cover(g: &SimpleGraph, cover: u64) -> bool {
    (0..g.len()).all(|v| cover >> v & 1 == 1 || g.adj[v] & !cover == 0)
}

/// True iff `cover` meets every edge and no proper subset does.
pub fn is_minimal_vertex_cover(g: &SimpleGraph, cover: &[usize]) -> bool {
    let mask = cover.iter().fold(0u64, |m, &v| m | 1 << v);
    if !is_vertex_cover(g, mask) {
        return false;
    }
    // Vertex covers are up-closed, so it is enough to drop one vertex at a time.
    bits(mask).all(|v| !is_vertex_cover(g, mask & !(1 << v)))
}
