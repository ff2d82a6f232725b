use serde::{Deserialize, Serialize};

use crate::certify::Violation;
use crate::graphs::{
    complement, find_forbidden, h_graph, is_cochordal, underlying, ChordalityCertificate, PatternMatch,
    WeightedOrientedGraph,
};

/// Both the underlying graph and the degree-two graph are co-chordal, and
/// no forbidden pattern occurs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Criterion4Report {
    /// Chordality certificate for the complement of the underlying graph.
    pub underlying: ChordalityCertificate,
    /// Chordality certificate for the complement of the degree-two graph.
    pub degree_two: ChordalityCertificate,
    pub pattern: Option<PatternMatch>,
    pub holds: bool,
}

pub fn criterion4(d: &WeightedOrientedGraph) -> Criterion4Report {
    let underlying = is_cochordal(&underlying(d));
    let degree_two = is_cochordal(&h_graph(d));
    let pattern = find_forbidden(d);
    let holds = underlying.is_chordal() && degree_two.is_chordal() && pattern.is_none();
    Criterion4Report { underlying, degree_two, pattern, holds }
}

impl Criterion4Report {
    pub fn verify(&self, d: &WeightedOrientedGraph) -> Result<(), Violation> {
        self.underlying.verify(&complement(&underlying(d)))?;
        self.degree_two.verify(&complement(&h_graph(d)))?;
        match &self.pattern {
            Some(m) => m.verify(d)?,
            None => {
                if let Some(m) = find_forbidden(d) {
                    return Err(Violation::PatternPresent(m.pattern));
                }
            }
        }
        let holds = self.underlying.is_chordal() && self.degree_two.is_chordal() && self.pattern.is_none();
        if holds != self.holds {
            return Err(Violation::CriterionOutcome { claimed: self.holds });
        }
        if *self != criterion4(d) {
            return Err(Violation::NonCanonicalWitness("criterion report".into()));
        }
        Ok(())
    }
}
