//! Certificate-producing deciders: linear quotients, vertex splittability,
//! the graph criterion, and verdicts for edge ideals and their powers.

mod criterion;
mod decide;
mod lq;
mod split;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use criterion::{criterion4, Criterion4Report};
pub use decide::{
    decide_componentwise_linear, decide_power, Answer, Certificate, DecideOptions, FormulaEvidence,
    GraphRole, Rule, Verdict,
};
pub use lq::{has_linear_quotients, LinearQuotientOrder, LqOptions, TailMode};
pub use split::{is_vertex_splittable, LeafKind, SplitOptions, SplitTree};

use crate::graphs::{complete_multipartite, underlying, Pattern, WeightedOrientedGraph};
use crate::ideals::{edge_ideal, power};
use crate::oracle::OracleError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinearityError {
    #[error("{generators} generators exceed the search cap of {cap}")]
    SearchCapped { generators: usize, cap: usize },
    #[error("search gave up after {nodes} nodes")]
    BudgetExhausted { nodes: u64 },
    #[error("power must be at least 1, got {0}")]
    BadPower(u32),
    #[error("pattern weights must be at least 2, got ({w2}, {w3})")]
    WeightTooSmall { w2: u32, w3: u32 },
    #[error("{0} has no weighted closed form")]
    NotAWeightedPattern(Pattern),
    #[error("underlying graph is not complete multipartite")]
    NotMultipartite,
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// Closed-form regularity of `I(D)^k` for a weighted pattern instance with
/// weights `w2`, `w3` on roles 1 and 2.
pub fn pattern_power_regularity(pattern: Pattern, k: u32, w2: u32, w3: u32) -> Result<i64, LinearityError> {
    if k == 0 {
        return Err(LinearityError::BadPower(k));
    }
    if w2 < 2 || w3 < 2 {
        return Err(LinearityError::WeightTooSmall { w2, w3 });
    }
    let (k, w2, w3) = (k as i64, w2 as i64, w3 as i64);
    let tail = (k - 1) * (w2.max(w3) + 1);
    match pattern {
        Pattern::D4 | Pattern::D2 | Pattern::D3 => Ok(w2 + w3 + tail),
        Pattern::D1 => Ok((1 + w2 + w3) - 1 + tail),
        Pattern::House => Err(LinearityError::NotAWeightedPattern(pattern)),
    }
}

/// Linear quotients of `I(D)` and of `I(D)²` side by side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareTransferReport {
    pub base: Option<LinearQuotientOrder>,
    pub square: Option<LinearQuotientOrder>,
    /// `I(D)` has linear quotients but `I(D)²` has none.
    pub violation: bool,
}

impl SquareTransferReport {
    /// Nothing to transfer when `I(D)` has no linear quotients.
    pub fn vacuous(&self) -> bool {
        self.base.is_none()
    }
}

/// Runs the linear-quotient search on `I(D)` and `I(D)²` for a graph whose
/// underlying graph is complete multipartite.
pub fn square_lq_transfer_check(
    d: &WeightedOrientedGraph,
    base_opts: LqOptions,
    square_opts: LqOptions,
) -> Result<SquareTransferReport, LinearityError> {
    if complete_multipartite(&underlying(d)).is_none() {
        return Err(LinearityError::NotMultipartite);
    }
    let i = edge_ideal(d);
    let base = has_linear_quotients(&i, base_opts)?;
    let square = has_linear_quotients(&power(&i, 2), square_opts)?;
    let violation = base.is_some() && square.is_none();
    Ok(SquareTransferReport { base, square, violation })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        assert_eq!(pattern_power_regularity(Pattern::D4, 1, 2, 2), Ok(4));
        assert_eq!(pattern_power_regularity(Pattern::D4, 2, 2, 2), Ok(7));
        assert_eq!(pattern_power_regularity(Pattern::D2, 2, 2, 3), Ok(9));
        assert_eq!(pattern_power_regularity(Pattern::D1, 1, 2, 2), Ok(4));
        assert_eq!(
            pattern_power_regularity(Pattern::D1, 1, 1, 2),
            Err(LinearityError::WeightTooSmall { w2: 1, w3: 2 })
        );
        assert_eq!(pattern_power_regularity(Pattern::D2, 0, 2, 2), Err(LinearityError::BadPower(0)));
        assert!(pattern_power_regularity(Pattern::House, 1, 2, 2).is_err());
    }

    #[test]
    fn bipartite_square_transfer() {
        // K_{2,2} with weight 1
        let d = WeightedOrientedGraph::from_indices(vec![1; 4], &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap().0;
        let r = square_lq_transfer_check(&d, LqOptions::default(), LqOptions::default()).unwrap();
        assert!(r.base.is_some() && r.square.is_some() && !r.violation);
        // one weighted head: the arcs into it all come from one side
        let d = WeightedOrientedGraph::from_indices(vec![1, 1, 2, 1], &[(0, 2), (3, 0), (1, 2), (1, 3)]).unwrap().0;
        let r = square_lq_transfer_check(&d, LqOptions::default(), LqOptions::default()).unwrap();
        assert!(r.base.is_some() && r.square.is_some());
        let path = WeightedOrientedGraph::from_indices(vec![1; 4], &[(0, 1), (1, 2), (2, 3)]).unwrap().0;
        assert_eq!(
            square_lq_transfer_check(&path, LqOptions::default(), LqOptions::default()),
            Err(LinearityError::NotMultipartite)
        );
    }

    #[test]
    fn failing_criterion_is_vacuous() {
        // D2 star instance is complete bipartite K_{1,2}
        let d = Pattern::D2.instance(2, 2);
        let r = square_lq_transfer_check(&d, LqOptions::default(), LqOptions::default()).unwrap();
        assert!(r.vacuous());
        assert!(!r.violation);
    }
}
