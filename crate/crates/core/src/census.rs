//! Verdicts over every weighted oriented graph up to a size, up to
//! isomorphism.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::graphs::enumerate::weighted_oriented_classes;
use crate::graphs::io::{to_graph_file, GraphFile};
use crate::graphs::WeightedOrientedGraph;
use crate::linearity::{decide_componentwise_linear, decide_power, Answer, DecideOptions, Rule, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusOptions {
    pub max_vertices: usize,
    pub max_weight: u32,
    /// Skip graphs whose underlying graph is disconnected.
    pub connected_only: bool,
    /// Power of the edge ideal to decide.
    pub k: u32,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions { max_vertices: 4, max_weight: 2, connected_only: true, k: 1 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRow {
    pub graph: GraphFile,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TallyEntry {
    pub vertices: usize,
    pub answer: Answer,
    pub rule: Rule,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub options: CensusOptions,
    pub tally: Vec<TallyEntry>,
    pub rows: Vec<CensusRow>,
}

/// All classes on `1..=max_vertices` vertices, in enumeration order.
pub fn census_graphs(opts: &CensusOptions) -> Vec<WeightedOrientedGraph> {
    (1..=opts.max_vertices)
        .flat_map(|n| weighted_oriented_classes(n, opts.max_weight, |g| !opts.connected_only || g.is_connected()))
        .collect()
}

/// Decides every class in parallel; rows keep enumeration order.
pub fn census(opts: &CensusOptions, decide: &DecideOptions) -> Census {
    let graphs = census_graphs(opts);
    let rows: Vec<CensusRow> = graphs
        .par_iter()
        .map(|d| {
            let verdict = if opts.k <= 1 {
                decide_componentwise_linear(d, decide)
            } else {
                decide_power(d, opts.k, decide).expect("k is positive")
            };
            CensusRow { graph: to_graph_file(d), verdict }
        })
        .collect();
    let mut counts: BTreeMap<(usize, Answer, Rule), usize> = BTreeMap::new();
    for r in &rows {
        *counts.entry((r.graph.vertices.len(), r.verdict.answer, r.verdict.rule)).or_default() += 1;
    }
    let tally = counts
        .into_iter()
        .map(|((vertices, answer, rule), count)| TallyEntry { vertices, answer, rule, count })
        .collect();
    Census { options: *opts, tally, rows }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_vertex_census() {
        let opts = CensusOptions { max_vertices: 3, max_weight: 2, connected_only: true, k: 1 };
        let c = census(&opts, &DecideOptions::default());
        let total: usize = c.tally.iter().map(|t| t.count).sum();
        assert_eq!(total, c.rows.len());
        assert!(c.rows.iter().any(|r| r.verdict.rule == Rule::ForbiddenPattern));
        // a single vertex has no arcs
        assert_eq!(c.rows[0].verdict.rule, Rule::ZeroIdeal);
    }
}
