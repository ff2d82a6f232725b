//! Mechanical re-verification of verdicts and their certificates.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graphs::{
    complement, complete_multipartite, find_forbidden, h_graph, is_chordal, is_house_free, underlying, ChordalityCertificate, Pattern,
    WeightedOrientedGraph,
};
use crate::ideals::{edge_ideal, power, IdealFile, MonomialIdeal};
use crate::linearity::{
    pattern_power_regularity, Answer, Certificate, FormulaEvidence, GraphRole, LeafKind, Rule, SplitTree, Verdict,
};
use crate::oracle::{formula_vs_oracle, is_componentwise_linear_oracle, BettiEvidence, Characteristic, OracleOptions};

/// Why a certificate was rejected.
#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize, Deserialize)]
#[serde(tag = "violation", content = "detail", rename_all = "snake_case")]
pub enum Violation {
    #[error("vertex {0} does not exist")]
    UnknownVertex(usize),
    #[error("witness repeats a vertex")]
    WitnessNotDistinct,
    #[error("witness has {found} vertices, expected {expected}")]
    WitnessLength { found: usize, expected: usize },
    #[error("witness is not an induced copy of {0}")]
    PatternMismatch(Pattern),
    #[error("{0} occurs as an induced subgraph but none was reported")]
    PatternPresent(Pattern),
    #[error("elimination order is not a permutation of the vertices")]
    OrderNotPermutation,
    #[error("later neighbors of vertex {0} do not form a clique")]
    LaterNeighborsNotClique(usize),
    #[error("cycle of length {0} is shorter than 4")]
    CycleTooShort(usize),
    #[error("cycle misses the edge {0}-{1}")]
    CycleMissingEdge(usize, usize),
    #[error("cycle has the chord {0}-{1}")]
    CycleChord(usize, usize),
    #[error("a chordless cycle was expected, found an elimination order")]
    ExpectedNonChordal,
    #[error("claimed {r} parts but listed {parts}")]
    PartCountMismatch { r: usize, parts: usize },
    #[error("part {0} is empty")]
    EmptyPart(usize),
    #[error("parts do not partition the vertices")]
    PartsNotPartition,
    #[error("edge {0}-{1} lies inside a part")]
    EdgeInsidePart(usize, usize),
    #[error("edge {0}-{1} between parts is missing")]
    MissingCrossEdge(usize, usize),
    #[error("fewer than two parts")]
    TooFewParts,
    #[error("cannot parse: {0}")]
    Unparsable(String),
    #[error("order is not a permutation of the minimal generators")]
    LqNotPermutation,
    #[error("colon ideal at position {position} differs from the recorded variables")]
    LqColonMismatch { position: usize },
    #[error("{path}: recorded generators differ from the ideal at this node")]
    SplitIdealMismatch { path: String },
    #[error("{path}: unknown splitting variable {variable}")]
    SplitUnknownVariable { path: String, variable: String },
    #[error("{path}: splitting variable {variable} divides no generator")]
    SplitVariableUnused { path: String, variable: String },
    #[error("{path}: a generator of the left ideal involves the splitting variable")]
    SplitConditionA { path: String },
    #[error("{path}: generators are not the disjoint union of the two parts")]
    SplitConditionB { path: String },
    #[error("{path}: right ideal is not contained in the left ideal")]
    SplitConditionC { path: String },
    #[error("{path}: leaf kind does not match its ideal")]
    SplitBadLeaf { path: String },
    #[error("criterion outcome {claimed} disagrees with its certificates")]
    CriterionOutcome { claimed: bool },
    #[error("criterion report does not hold")]
    CriterionFails,
    #[error("underlying graph contains a house")]
    GraphHasHouse,
    #[error("edge ideal is not the zero ideal")]
    NotZeroIdeal,
    #[error("rule {rule} cannot carry this certificate")]
    CertificateKind { rule: Rule },
    #[error("rule {rule} requires a certificate")]
    MissingCertificate { rule: Rule },
    #[error("rule {rule} cannot conclude {answer}")]
    AnswerMismatch { rule: Rule, answer: Answer },
    #[error("rule {rule} does not apply to power {k}")]
    PowerMismatch { rule: Rule, k: u32 },
    #[error("evidence is about a different ideal")]
    EvidenceIdealMismatch,
    #[error("evidence field {field} differs from recomputation")]
    EvidenceMismatch { field: String },
    #[error("recomputation failed: {0}")]
    RecomputationFailed(String),
    #[error("evidence is over characteristic {found}, expected {expected}")]
    CharacteristicMismatch { expected: u32, found: u32 },
    #[error("colon variables at position {position} are not listed once each in variable order")]
    LqWitnessOrder { position: usize },
    #[error("formula field {field} is wrong")]
    FormulaMismatch { field: String },
    #[error("{0} is valid but not the canonical witness")]
    NonCanonicalWitness(String),
}

/// Recomputes Betti evidence for `i` and compares field by field.
pub fn verify_betti(ev: &BettiEvidence, i: &MonomialIdeal, ch: Characteristic) -> Result<(), Violation> {
    if ev.characteristic != ch {
        return Err(Violation::CharacteristicMismatch { expected: ch.get(), found: ev.characteristic.get() });
    }
    if ev.ideal != IdealFile::from_ideal(i) {
        return Err(Violation::EvidenceIdealMismatch);
    }
    let opts = OracleOptions { characteristic: ev.characteristic, paranoid: ev.paranoid };
    let fresh = is_componentwise_linear_oracle(i, opts).map_err(|e| Violation::RecomputationFailed(e.to_string()))?;
    let field = if fresh.degrees != ev.degrees {
        "degrees"
    } else if fresh.failing_degree != ev.failing_degree {
        "failing_degree"
    } else if fresh.regularity != ev.regularity {
        "regularity"
    } else {
        return Ok(());
    };
    Err(Violation::EvidenceMismatch { field: field.into() })
}

pub fn verify_formula(f: &FormulaEvidence, ch: Characteristic) -> Result<(), Violation> {
    if f.characteristic != ch {
        return Err(Violation::CharacteristicMismatch { expected: ch.get(), found: f.characteristic.get() });
    }
    let predicted = pattern_power_regularity(f.pattern, f.k, f.w2, f.w3)
        .map_err(|e| Violation::RecomputationFailed(e.to_string()))?;
    if predicted != f.predicted_regularity {
        return Err(Violation::FormulaMismatch { field: "predicted_regularity".into() });
    }
    if let Some(r) = f.oracle_regularity {
        let fresh = formula_vs_oracle(f.pattern, f.k, f.w2, f.w3, f.characteristic)
            .map_err(|e| Violation::RecomputationFailed(e.to_string()))?;
        if fresh.oracle != r {
            return Err(Violation::FormulaMismatch { field: "oracle_regularity".into() });
        }
    }
    Ok(())
}

/// Checks a certificate that speaks about the ideal `i` alone; graph-level
/// certificates are rejected. Betti data must be over `ch`.
pub fn verify_ideal_certificate(i: &MonomialIdeal, cert: &Certificate, ch: Characteristic) -> Result<(), Violation> {
    match cert {
        Certificate::LinearQuotients(order) => order.verify(i),
        Certificate::SplitTree { tree } => tree.verify(i),
        Certificate::Betti(ev) => verify_betti(ev, i, ch),
        Certificate::Formula(f) => verify_formula(f, ch),
        _ => Err(Violation::CertificateKind { rule: Rule::Oracle }),
    }
}

fn verify_non_chordal(
    d: &WeightedOrientedGraph,
    role: GraphRole,
    expected: GraphRole,
    cert: &ChordalityCertificate,
    rule: Rule,
) -> Result<(), Violation> {
    if role != expected {
        return Err(Violation::CertificateKind { rule });
    }
    if cert.is_chordal() {
        return Err(Violation::ExpectedNonChordal);
    }
    let g = match role {
        GraphRole::Underlying => underlying(d),
        GraphRole::DegreeTwo => h_graph(d),
    };
    let co = complement(&g);
    cert.verify(&co)?;
    if *cert != is_chordal(&co) {
        return Err(Violation::NonCanonicalWitness("chordless cycle".into()));
    }
    Ok(())
}

/// Re-verifies `verdict` as a statement about `I(D)^k`, `k = verdict.k`.
/// Oracle evidence must be over `ch`.
pub fn verify_verdict(d: &WeightedOrientedGraph, verdict: &Verdict, ch: Characteristic) -> Result<(), Violation> {
    let (rule, answer, k) = (verdict.rule, verdict.answer, verdict.k);
    if k == 0 {
        return Err(Violation::PowerMismatch { rule, k });
    }
    let allowed: &[Answer] = match rule {
        Rule::ZeroIdeal | Rule::ClassHouseFree | Rule::LinearQuotients => &[Answer::Yes],
        Rule::ForbiddenPattern | Rule::UnderlyingNotCochordal | Rule::DegreeTwoNotCochordal => &[Answer::No],
        Rule::Oracle | Rule::MultipartitePowerEquivalence => &[Answer::Yes, Answer::No],
        Rule::Undecided => &[Answer::Unknown],
    };
    if !allowed.contains(&answer) {
        return Err(Violation::AnswerMismatch { rule, answer });
    }
    let first_power_only = matches!(
        rule,
        Rule::UnderlyingNotCochordal | Rule::DegreeTwoNotCochordal | Rule::ClassHouseFree
    );
    if (first_power_only && k != 1) || (rule == Rule::MultipartitePowerEquivalence && k < 2) {
        return Err(Violation::PowerMismatch { rule, k });
    }
    let cert = match (&verdict.certificate, rule) {
        (None, Rule::Undecided) => return Ok(()),
        (Some(_), Rule::Undecided) => return Err(Violation::CertificateKind { rule }),
        (None, _) => return Err(Violation::MissingCertificate { rule }),
        (Some(c), _) => c,
    };
    let kind = || Violation::CertificateKind { rule };
    match (rule, cert) {
        (Rule::ZeroIdeal, Certificate::SplitTree { tree }) => {
            if d.arc_count() != 0 {
                return Err(Violation::NotZeroIdeal);
            }
            if !matches!(tree, SplitTree::Leaf { leaf: LeafKind::Zero, .. }) {
                return Err(kind());
            }
            tree.verify(&edge_ideal(d))
        }
        (Rule::ForbiddenPattern, Certificate::Pattern(m)) => {
            if m.pattern == Pattern::House {
                return Err(kind());
            }
            m.verify(d)?;
            if find_forbidden(d).as_ref() != Some(m) {
                return Err(Violation::NonCanonicalWitness("pattern occurrence".into()));
            }
            Ok(())
        }
        (Rule::UnderlyingNotCochordal, Certificate::NonChordal { graph, certificate }) => {
            verify_non_chordal(d, *graph, GraphRole::Underlying, certificate, rule)
        }
        (Rule::DegreeTwoNotCochordal, Certificate::NonChordal { graph, certificate }) => {
            verify_non_chordal(d, *graph, GraphRole::DegreeTwo, certificate, rule)
        }
        (Rule::ClassHouseFree, c) => {
            if !is_house_free(&underlying(d)) {
                return Err(Violation::GraphHasHouse);
            }
            let i = edge_ideal(d);
            match c {
                Certificate::SplitTree { tree } => tree.verify(&i),
                Certificate::LinearQuotients(order) => order.verify(&i),
                Certificate::Criterion4(report) => {
                    report.verify(d)?;
                    if report.holds {
                        Ok(())
                    } else {
                        Err(Violation::CriterionFails)
                    }
                }
                _ => Err(kind()),
            }
        }
        (Rule::LinearQuotients, Certificate::LinearQuotients(order)) => order.verify(&power(&edge_ideal(d), k)),
        (Rule::Oracle, Certificate::Betti(ev)) => {
            verify_betti(ev, &power(&edge_ideal(d), k), ch)?;
            let claimed = if ev.componentwise_linear() { Answer::Yes } else { Answer::No };
            if claimed != answer {
                return Err(Violation::AnswerMismatch { rule, answer });
            }
            Ok(())
        }
        (Rule::MultipartitePowerEquivalence, Certificate::LinearQuotients(order)) => {
            if answer != Answer::Yes {
                return Err(Violation::AnswerMismatch { rule, answer });
            }
            complete_multipartite(&underlying(d)).ok_or(Violation::PartsNotPartition)?;
            order.verify(&power(&edge_ideal(d), k))
        }
        (Rule::MultipartitePowerEquivalence, Certificate::PowerTransfer { parts, base }) => {
            parts.verify(&underlying(d))?;
            if parts.r < 2 {
                return Err(Violation::TooFewParts);
            }
            if base.k != 1 {
                return Err(Violation::PowerMismatch { rule: base.rule, k: base.k });
            }
            verify_verdict(d, base, ch)?;
            if base.answer != answer {
                return Err(Violation::AnswerMismatch { rule, answer });
            }
            Ok(())
        }
        _ => Err(kind()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linearity::{decide_componentwise_linear, decide_power, DecideOptions};

    const CH: Characteristic = Characteristic::TWO;

    fn whiskered() -> WeightedOrientedGraph {
        WeightedOrientedGraph::from_indices(
            vec![1, 1, 1, 2, 2, 2],
            &[(0, 1), (1, 2), (0, 2), (0, 3), (1, 4), (2, 5)],
        )
        .unwrap()
        .0
    }

    #[test]
    fn emitted_verdicts_verify() {
        let opts = DecideOptions::default();
        let d = whiskered();
        verify_verdict(&d, &decide_componentwise_linear(&d, &opts), CH).unwrap();
        let d4 = Pattern::D4.instance(2, 2);
        verify_verdict(&d4, &decide_componentwise_linear(&d4, &opts), CH).unwrap();
        let arcs: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        let c5 = WeightedOrientedGraph::from_indices(vec![1; 5], &arcs).unwrap().0;
        verify_verdict(&c5, &decide_componentwise_linear(&c5, &opts), CH).unwrap();
        let k22 = WeightedOrientedGraph::from_indices(vec![1, 1, 2, 1], &[(0, 2), (3, 0), (1, 2), (1, 3)]).unwrap().0;
        verify_verdict(&k22, &decide_power(&k22, 3, &opts).unwrap(), CH).unwrap();
    }

    #[test]
    fn another_valid_cycle_is_not_canonical() {
        // complement is two disjoint 4-cycles
        let co = crate::graphs::SimpleGraph::from_edges(
            8,
            &[(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4)],
        )
        .unwrap();
        let arcs: Vec<(usize, usize)> = complement(&co).edges();
        let d = WeightedOrientedGraph::from_indices(vec![1; 8], &arcs).unwrap().0;
        let mut v = decide_componentwise_linear(&d, &DecideOptions::default());
        assert_eq!(v.rule, Rule::UnderlyingNotCochordal);
        verify_verdict(&d, &v, CH).unwrap();
        let Some(Certificate::NonChordal { certificate: ChordalityCertificate::ChordlessCycle { cycle }, .. }) =
            &mut v.certificate
        else {
            panic!("expected a chordless cycle");
        };
        for x in cycle.iter_mut() {
            *x = (*x + 4) % 8;
        }
        assert_eq!(
            verify_verdict(&d, &v, CH),
            Err(Violation::NonCanonicalWitness("chordless cycle".into()))
        );
    }

    #[test]
    fn wrong_graph_is_rejected() {
        let opts = DecideOptions::default();
        let v = decide_componentwise_linear(&Pattern::D4.instance(2, 2), &opts);
        assert!(verify_verdict(&whiskered(), &v, CH).is_err());
    }

    #[test]
    fn answer_and_power_checks() {
        let opts = DecideOptions::default();
        let d = whiskered();
        let mut v = decide_componentwise_linear(&d, &opts);
        v.answer = Answer::No;
        assert_eq!(
            verify_verdict(&d, &v, CH),
            Err(Violation::AnswerMismatch { rule: Rule::ClassHouseFree, answer: Answer::No })
        );
        let mut v = decide_componentwise_linear(&d, &opts);
        v.k = 2;
        assert_eq!(verify_verdict(&d, &v, CH), Err(Violation::PowerMismatch { rule: Rule::ClassHouseFree, k: 2 }));
        let mut v = decide_componentwise_linear(&d, &opts);
        v.certificate = None;
        assert_eq!(verify_verdict(&d, &v, CH), Err(Violation::MissingCertificate { rule: Rule::ClassHouseFree }));
    }

    #[test]
    fn formula_evidence() {
        let f = FormulaEvidence::new(Pattern::D4, 2, 2, 2).unwrap();
        verify_formula(&f, CH).unwrap();
        let mut bad = f.clone();
        bad.predicted_regularity = 8;
        assert!(matches!(verify_formula(&bad, CH), Err(Violation::FormulaMismatch { .. })));
        let f = f.with_oracle(CH).unwrap();
        verify_formula(&f, CH).unwrap();
        let three = Characteristic::new(3).unwrap();
        assert_eq!(
            verify_formula(&f, three),
            Err(Violation::CharacteristicMismatch { expected: 3, found: 2 })
        );
        let mut bad = f;
        bad.oracle_regularity = Some(6);
        assert!(matches!(verify_formula(&bad, CH), Err(Violation::FormulaMismatch { .. })));
    }

    #[test]
    fn violations_serialize_with_names() {
        let s = serde_json::to_string(&Violation::SplitConditionC { path: "root".into() }).unwrap();
        assert!(s.contains("split_condition_c"));
    }
}
