use std::fmt;

use serde::{Deserialize, Serialize};

use super::{
    criterion4, has_linear_quotients, is_vertex_splittable, pattern_power_regularity, Criterion4Report,
    LeafKind, LinearQuotientOrder, LinearityError, LqOptions, SplitOptions, SplitTree,
};
use crate::graphs::{
    complete_multipartite, find_forbidden, h_graph, is_chordal, is_cochordal, is_house_free,
    underlying, ChordalityCertificate, MultipartiteCertificate, Pattern, PatternMatch, WeightedOrientedGraph,
};
use crate::ideals::{edge_ideal, power, MonomialIdeal};
use crate::oracle::{is_componentwise_linear_oracle, BettiEvidence, Characteristic, OracleOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Answer {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// What decided a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    /// No arcs: the zero ideal.
    ZeroIdeal,
    /// A forbidden three-vertex pattern is an induced subgraph.
    ForbiddenPattern,
    /// The complement of the underlying graph has a chordless cycle.
    UnderlyingNotCochordal,
    /// The complement of the degree-two graph has a chordless cycle.
    DegreeTwoNotCochordal,
    /// House-free underlying graph passing the graph criterion.
    ClassHouseFree,
    /// A linear quotient order was found.
    LinearQuotients,
    /// Decided by Betti numbers.
    Oracle,
    /// Complete multipartite: every power behaves like the first.
    MultipartitePowerEquivalence,
    /// Nothing conclusive.
    Undecided,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("rule serializes");
        f.write_str(s.as_str().unwrap_or_default())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphRole {
    /// The underlying simple graph.
    Underlying,
    /// The graph of degree-two generators.
    DegreeTwo,
}

/// Closed-form regularity of a pattern power, optionally checked against
/// the oracle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaEvidence {
    pub pattern: Pattern,
    pub k: u32,
    pub w2: u32,
    pub w3: u32,
    pub predicted_regularity: i64,
    pub oracle_regularity: Option<i64>,
    pub characteristic: Characteristic,
}

impl FormulaEvidence {
    pub fn new(pattern: Pattern, k: u32, w2: u32, w3: u32) -> Result<Self, LinearityError> {
        Ok(FormulaEvidence {
            pattern,
            k,
            w2,
            w3,
            predicted_regularity: pattern_power_regularity(pattern, k, w2, w3)?,
            oracle_regularity: None,
            characteristic: Characteristic::default(),
        })
    }

    /// Fills in the oracle regularity of the pattern instance's power.
    pub fn with_oracle(mut self, ch: Characteristic) -> Result<Self, LinearityError> {
        let r = crate::oracle::formula_vs_oracle(self.pattern, self.k, self.w2, self.w3, ch)?;
        self.oracle_regularity = Some(r.oracle);
        self.characteristic = ch;
        Ok(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    Pattern(PatternMatch),
    NonChordal { graph: GraphRole, certificate: ChordalityCertificate },
    LinearQuotients(LinearQuotientOrder),
    SplitTree { tree: SplitTree },
    Betti(BettiEvidence),
    Formula(FormulaEvidence),
    Criterion4(Criterion4Report),
    PowerTransfer { parts: MultipartiteCertificate, base: Box<Verdict> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub answer: Answer,
    pub rule: Rule,
    /// The power of the edge ideal the verdict is about.
    pub k: u32,
    pub certificate: Option<Certificate>,
    pub notes: Vec<String>,
}

impl Verdict {
    fn new(answer: Answer, rule: Rule, k: u32, certificate: Certificate) -> Self {
        Verdict { answer, rule, k, certificate: Some(certificate), notes: Vec::new() }
    }

    fn note(mut self, s: impl Into<String>) -> Self {
        self.notes.push(s.into());
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecideOptions {
    pub lq: LqOptions,
    pub split: SplitOptions,
    /// Fall back to Betti numbers when the cheaper criteria are silent.
    pub use_oracle: bool,
    pub oracle: OracleOptions,
    /// Linear-quotient search limits for powers.
    pub power_lq: LqOptions,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions {
            lq: LqOptions::default(),
            split: SplitOptions::default(),
            use_oracle: true,
            oracle: OracleOptions::default(),
            power_lq: LqOptions { cap: 64, ..LqOptions::default() },
        }
    }
}

fn zero_verdict(d: &WeightedOrientedGraph, k: u32) -> Verdict {
    let tree = SplitTree::Leaf { leaf: LeafKind::Zero, generators: Vec::new() };
    Verdict::new(Answer::Yes, Rule::ZeroIdeal, k, Certificate::SplitTree { tree })
        .note(format!("no arcs among {} vertices", d.len()))
}

fn pattern_verdict(m: PatternMatch, k: u32) -> Verdict {
    let p = m.pattern;
    Verdict::new(Answer::No, Rule::ForbiddenPattern, k, Certificate::Pattern(m))
        .note(format!("{p} is an induced subgraph"))
}

/// Linear quotients, then the oracle, then Unknown.
fn ideal_level(i: &MonomialIdeal, k: u32, lq: LqOptions, opts: &DecideOptions, mut notes: Vec<String>) -> Verdict {
    match has_linear_quotients(i, lq) {
        Ok(Some(order)) => {
            let mut v = Verdict::new(Answer::Yes, Rule::LinearQuotients, k, Certificate::LinearQuotients(order));
            v.notes = notes;
            return v;
        }
        Ok(None) => notes.push("no linear quotient order exists".into()),
        Err(e) => notes.push(format!("linear quotient search: {e}")),
    }
    if opts.use_oracle {
        match is_componentwise_linear_oracle(i, opts.oracle) {
            Ok(ev) => {
                let answer = if ev.componentwise_linear() { Answer::Yes } else { Answer::No };
                notes.push(format!(
                    "regularity {} in characteristic {}",
                    ev.regularity,
                    ev.characteristic.get()
                ));
                let mut v = Verdict::new(answer, Rule::Oracle, k, Certificate::Betti(ev));
                v.notes = notes;
                return v;
            }
            Err(e) => notes.push(format!("oracle: {e}")),
        }
    } else {
        notes.push("oracle disabled".into());
    }
    Verdict { answer: Answer::Unknown, rule: Rule::Undecided, k, certificate: None, notes }
}

/// Decides whether `I(D)` is componentwise linear, cheapest criteria first.
pub fn decide_componentwise_linear(d: &WeightedOrientedGraph, opts: &DecideOptions) -> Verdict {
    if d.arc_count() == 0 {
        return zero_verdict(d, 1);
    }
    if let Some(m) = find_forbidden(d) {
        return pattern_verdict(m, 1);
    }
    let g = underlying(d);
    let cert = is_cochordal(&g);
    if !cert.is_chordal() {
        return Verdict::new(
            Answer::No,
            Rule::UnderlyingNotCochordal,
            1,
            Certificate::NonChordal { graph: GraphRole::Underlying, certificate: cert },
        );
    }
    let cert = is_cochordal(&h_graph(d));
    if !cert.is_chordal() {
        return Verdict::new(
            Answer::No,
            Rule::DegreeTwoNotCochordal,
            1,
            Certificate::NonChordal { graph: GraphRole::DegreeTwo, certificate: cert },
        );
    }
    let i = edge_ideal(d);
    if is_house_free(&g) {
        let mut notes = Vec::new();
        if is_chordal(&g).is_chordal() {
            notes.push("underlying graph is chordal".to_string());
        }
        if let Some(mp) = complete_multipartite(&g) {
            notes.push(format!("underlying graph is complete {}-partite", mp.r));
        }
        let certificate = match is_vertex_splittable(&i, opts.split) {
            Ok(Some(tree)) => Certificate::SplitTree { tree },
            found => {
                match found {
                    Ok(_) => notes.push("no split tree found".into()),
                    Err(e) => notes.push(format!("split search: {e}")),
                }
                match has_linear_quotients(&i, opts.lq) {
                    Ok(Some(order)) => Certificate::LinearQuotients(order),
                    found => {
                        match found {
                            Ok(_) => notes.push("no linear quotient order found".into()),
                            Err(e) => notes.push(format!("linear quotient search: {e}")),
                        }
                        Certificate::Criterion4(criterion4(d))
                    }
                }
            }
        };
        let mut v = Verdict::new(Answer::Yes, Rule::ClassHouseFree, 1, certificate);
        v.notes = notes;
        return v;
    }
    let notes = vec!["underlying graph contains a house".to_string()];
    ideal_level(&i, 1, opts.lq, opts, notes)
}

/// Decides whether `I(D)^k` is componentwise linear.
pub fn decide_power(d: &WeightedOrientedGraph, k: u32, opts: &DecideOptions) -> Result<Verdict, LinearityError> {
    if k == 0 {
        return Err(LinearityError::BadPower(k));
    }
    if k == 1 {
        return Ok(decide_componentwise_linear(d, opts));
    }
    if d.arc_count() == 0 {
        return Ok(zero_verdict(d, k));
    }
    if let Some(m) = find_forbidden(d) {
        return Ok(pattern_verdict(m, k));
    }
    let g = underlying(d);
    if let Some(parts) = complete_multipartite(&g).filter(|p| p.r >= 2) {
        let base = decide_componentwise_linear(d, opts);
        if base.answer != Answer::Unknown {
            let mut notes = vec![format!("answer of the first power transfers to power {k}")];
            if k > 2 {
                notes.push(format!("power {k} rests on the equivalence, not on direct computation"));
            }
            if base.answer == Answer::Yes {
                let ik = power(&edge_ideal(d), k);
                match has_linear_quotients(&ik, opts.power_lq) {
                    Ok(Some(order)) => {
                        let mut v = Verdict::new(
                            Answer::Yes,
                            Rule::MultipartitePowerEquivalence,
                            k,
                            Certificate::LinearQuotients(order),
                        );
                        notes.push("linear quotient order of the power found".into());
                        v.notes = notes;
                        return Ok(v);
                    }
                    Ok(None) => notes.push("no linear quotient order of the power found".into()),
                    Err(e) => notes.push(format!("linear quotient search on the power: {e}")),
                }
            }
            let mut v = Verdict::new(
                base.answer,
                Rule::MultipartitePowerEquivalence,
                k,
                Certificate::PowerTransfer { parts, base: Box::new(base) },
            );
            v.notes = notes;
            return Ok(v);
        }
    }
    let ik = power(&edge_ideal(d), k);
    let mut notes = Vec::new();
    if !is_house_free(&g) {
        notes.push("underlying graph contains a house".into());
    }
    Ok(ideal_level(&ik, k, opts.power_lq, opts, notes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::WeightedOrientedGraph;

    /// Triangle on x1, x2, x3 with whiskers x1 -> x4, x2 -> x5, x3 -> x6 of weight 2.
    fn whiskered() -> WeightedOrientedGraph {
        WeightedOrientedGraph::from_indices(
            vec![1, 1, 1, 2, 2, 2],
            &[(0, 1), (1, 2), (0, 2), (0, 3), (1, 4), (2, 5)],
        )
        .unwrap()
        .0
    }

    #[test]
    fn whiskered_triangle_is_componentwise_linear() {
        let v = decide_componentwise_linear(&whiskered(), &DecideOptions::default());
        assert_eq!(v.answer, Answer::Yes);
        assert_eq!(v.rule, Rule::ClassHouseFree);
        assert!(matches!(v.certificate, Some(Certificate::SplitTree { .. })));
        assert!(v.notes.iter().any(|n| n.contains("chordal")));
    }

    #[test]
    fn patterns_decide_no() {
        let v = decide_componentwise_linear(&Pattern::D4.instance(2, 2), &DecideOptions::default());
        assert_eq!((v.answer, v.rule), (Answer::No, Rule::ForbiddenPattern));
        let v = decide_power(&Pattern::D2.instance(2, 3), 3, &DecideOptions::default()).unwrap();
        assert_eq!((v.answer, v.rule), (Answer::No, Rule::ForbiddenPattern));
    }

    #[test]
    fn weight_one_five_cycle_is_not() {
        let arcs: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        let d = WeightedOrientedGraph::from_indices(vec![1; 5], &arcs).unwrap().0;
        let v = decide_componentwise_linear(&d, &DecideOptions::default());
        assert_eq!((v.answer, v.rule), (Answer::No, Rule::UnderlyingNotCochordal));
    }

    #[test]
    fn empty_graph_is_zero_ideal() {
        let d = WeightedOrientedGraph::from_indices(vec![1, 1], &[]).unwrap().0;
        let v = decide_power(&d, 2, &DecideOptions::default()).unwrap();
        assert_eq!((v.answer, v.rule, v.k), (Answer::Yes, Rule::ZeroIdeal, 2));
    }

    #[test]
    fn bipartite_power_transfers() {
        let d = WeightedOrientedGraph::from_indices(vec![1, 1, 2, 1], &[(0, 2), (3, 0), (1, 2), (1, 3)]).unwrap().0;
        let v = decide_power(&d, 3, &DecideOptions::default()).unwrap();
        assert_eq!((v.answer, v.rule), (Answer::Yes, Rule::MultipartitePowerEquivalence));
        assert!(v.notes.iter().any(|n| n.contains("equivalence")));
    }

    #[test]
    fn rule_names_are_kebab_case() {
        assert_eq!(Rule::ClassHouseFree.to_string(), "class-house-free");
        assert_eq!(serde_json::to_string(&Rule::ZeroIdeal).unwrap(), "\"zero-ideal\"");
    }

    #[test]
    fn zero_power_is_rejected() {
        assert_eq!(
            decide_power(&whiskered(), 0, &DecideOptions::default()),
            Err(LinearityError::BadPower(0))
        );
    }
}
