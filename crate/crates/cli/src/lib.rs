//! Batch front end: reads graph or ideal files, runs the deciders and
//! emits reports with certificates.

use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use wolin_core::census::{census, Census, CensusOptions};
use wolin_core::certify::{verify_ideal_certificate, verify_verdict, Violation};
use wolin_core::graphs::io::{parse_graph, ParseError};
use wolin_core::graphs::{
    complete_multipartite, find_forbidden, h_graph, is_chordal, is_cochordal, is_house_free, underlying,
    v_plus, Pattern, WeightedOrientedGraph,
};
use wolin_core::ideals::{edge_ideal, power, IdealError, IdealFile, MonomialIdeal};
use wolin_core::linearity::{
    decide_componentwise_linear, decide_power, Answer, Certificate, DecideOptions, FormulaEvidence, LinearityError,
    LqOptions, SplitOptions, Verdict,
};
use wolin_core::oracle::{betti_table, is_componentwise_linear_oracle, Characteristic, OracleError, OracleOptions};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Text,
    Structured,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "snake_case")]
pub enum Command {
    Analyze,
    Power { k: u32 },
    /// Betti data of an ideal file, or of `I(D)^k` for a graph file.
    Oracle { k: u32 },
    /// Closed-form regularity of a pattern power against the oracle.
    Formula { pattern: Pattern, k: u32, w2: u32, w3: u32 },
    Certify { report: PathBuf },
    Census { max_vertices: usize, max_weight: u32, all: bool, k: u32, rows: bool },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisRequest {
    pub input: Option<PathBuf>,
    #[serde(flatten)]
    pub command: Command,
    pub characteristic: Characteristic,
    pub lq_cap: usize,
    pub split_cap: usize,
    pub power_cap: usize,
    pub use_oracle: bool,
    pub paranoid: bool,
    pub format: OutputFormat,
}

impl AnalysisRequest {
    pub fn new(input: Option<PathBuf>, command: Command) -> Self {
        let d = DecideOptions::default();
        AnalysisRequest {
            input,
            command,
            characteristic: Characteristic::default(),
            lq_cap: d.lq.cap,
            split_cap: d.split.cap,
            power_cap: d.power_lq.cap,
            use_oracle: true,
            paranoid: false,
            format: OutputFormat::Text,
        }
    }

    pub fn decide_options(&self) -> DecideOptions {
        let d = DecideOptions::default();
        DecideOptions {
            lq: LqOptions { cap: self.lq_cap, ..d.lq },
            split: SplitOptions { cap: self.split_cap, ..d.split },
            use_oracle: self.use_oracle,
            oracle: OracleOptions { characteristic: self.characteristic, paranoid: self.paranoid },
            power_lq: LqOptions { cap: self.power_cap, ..d.power_lq },
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Graph { path: PathBuf, source: ParseError },
    #[error("{path}: line {line}, column {column}: {message}")]
    Syntax { path: PathBuf, line: usize, column: usize, message: String },
    #[error("{path}: {source}")]
    Ideal { path: PathBuf, source: IdealError },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Linearity(#[from] LinearityError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSummary {
    pub vertices: usize,
    pub arcs: usize,
    /// Names of the vertices of weight at least 2 with an incoming arc.
    pub v_plus: Vec<String>,
    pub weights: Vec<u32>,
    /// Vertices that were sources with weight above 1 and got weight 1.
    pub normalized_sources: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionResult {
    pub name: String,
    pub holds: bool,
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleSummary {
    pub generators: usize,
    pub regularity: Option<i64>,
    pub betti_table: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certification {
    pub valid: bool,
    pub violation: Option<Violation>,
    pub message: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub format_version: u32,
    pub request: AnalysisRequest,
    pub graph: Option<GraphSummary>,
    pub criteria: Vec<CriterionResult>,
    pub verdict: Option<Verdict>,
    /// Certificate about an ideal rather than a graph.
    pub certificate: Option<Certificate>,
    pub oracle: Option<OracleSummary>,
    pub certification: Option<Certification>,
    pub census: Option<Census>,
    pub elapsed_ms: f64,
}

impl Report {
    fn empty(request: &AnalysisRequest) -> Self {
        Report {
            format_version: FORMAT_VERSION,
            request: request.clone(),
            graph: None,
            criteria: Vec::new(),
            verdict: None,
            certificate: None,
            oracle: None,
            certification: None,
            census: None,
            elapsed_ms: 0.0,
        }
    }

    /// 0 for Yes, 1 for No, 2 for Unknown.
    pub fn exit_code(&self) -> i32 {
        if let Some(c) = &self.certification {
            return if c.valid { 0 } else { 1 };
        }
        if let Some(v) = &self.verdict {
            return match v.answer {
                Answer::Yes => 0,
                Answer::No => 1,
                Answer::Unknown => 2,
            };
        }
        match &self.certificate {
            Some(Certificate::Betti(ev)) => i32::from(!ev.componentwise_linear()),
            Some(Certificate::Formula(f)) => i32::from(f.oracle_regularity != Some(f.predicted_regularity)),
            _ => 0,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(g) = &self.graph {
            out.push_str(&format!(
                "graph: {} vertices, {} arcs, V+ = {{{}}}, weights {:?}\n",
                g.vertices,
                g.arcs,
                g.v_plus.join(", "),
                g.weights
            ));
            if !g.normalized_sources.is_empty() {
                out.push_str(&format!("sources reset to weight 1: {}\n", g.normalized_sources.join(", ")));
            }
        }
        for c in &self.criteria {
            let mark = if c.holds { "yes" } else { "no" };
            match &c.detail {
                Some(d) => out.push_str(&format!("  {:<28} {mark} ({d})\n", c.name)),
                None => out.push_str(&format!("  {:<28} {mark}\n", c.name)),
            }
        }
        if let Some(v) = &self.verdict {
            out.push_str(&format!("answer: {} (k = {}, rule {})\n", v.answer, v.k, v.rule));
            for n in &v.notes {
                out.push_str(&format!("  note: {n}\n"));
            }
        }
        if let Some(o) = &self.oracle {
            out.push_str(&format!("generators: {}\n", o.generators));
            if let Some(r) = o.regularity {
                out.push_str(&format!("regularity: {r}\n"));
            }
            out.push_str(&o.betti_table);
        }
        match &self.certificate {
            Some(Certificate::Betti(ev)) => {
                for c in &ev.degrees {
                    out.push_str(&format!("  degree {}: reg {}\n", c.degree, c.regularity));
                }
                let cl = if ev.componentwise_linear() { "yes" } else { "no" };
                out.push_str(&format!("componentwise linear: {cl}\n"));
            }
            Some(Certificate::Formula(f)) => {
                out.push_str(&format!(
                    "{} k={} weights ({}, {}): predicted {}, oracle {}\n",
                    f.pattern,
                    f.k,
                    f.w2,
                    f.w3,
                    f.predicted_regularity,
                    f.oracle_regularity.map_or("-".to_string(), |r| r.to_string())
                ));
            }
            _ => {}
        }
        if let Some(c) = &self.certification {
            if c.valid {
                out.push_str("certificate: valid\n");
            } else {
                let why = c.message.clone().unwrap_or_default();
                out.push_str(&format!("certificate: INVALID: {why}\n"));
            }
        }
        if let Some(c) = &self.census {
            for t in &c.tally {
                out.push_str(&format!("  n={} {:<8} {:<32} {}\n", t.vertices, t.answer, t.rule.to_string(), t.count));
            }
            out.push_str(&format!("total: {}\n", c.tally.iter().map(|t| t.count).sum::<usize>()));
        }
        out
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

/// A parsed input file.
pub enum Input {
    Graph(WeightedOrientedGraph, Vec<usize>),
    Ideal(MonomialIdeal),
}

pub fn load_input(path: &Path) -> Result<Input, CliError> {
    let text = read(path)?;
    let syntax = |e: serde_json::Error| CliError::Syntax {
        path: path.to_path_buf(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    };
    let value: serde_json::Value = serde_json::from_str(&text).map_err(syntax)?;
    if value.get("variables").is_some() {
        let file: IdealFile = serde_json::from_str(&text).map_err(syntax)?;
        let i = file.to_ideal().map_err(|source| CliError::Ideal { path: path.to_path_buf(), source })?;
        return Ok(Input::Ideal(i));
    }
    let (d, report) = parse_graph(&text).map_err(|source| CliError::Graph { path: path.to_path_buf(), source })?;
    Ok(Input::Graph(d, report.normalized_sources))
}

fn require_graph(req: &AnalysisRequest) -> Result<(WeightedOrientedGraph, Vec<usize>), CliError> {
    let path = req.input.as_deref().ok_or_else(|| CliError::Usage("an input graph file is required".into()))?;
    match load_input(path)? {
        Input::Graph(d, n) => Ok((d, n)),
        Input::Ideal(_) => Err(CliError::Usage(format!("{}: expected a graph file", path.display()))),
    }
}

pub fn summarize(d: &WeightedOrientedGraph, normalized: &[usize]) -> GraphSummary {
    GraphSummary {
        vertices: d.len(),
        arcs: d.arc_count(),
        v_plus: v_plus(d).into_iter().map(|v| d.name(v).to_string()).collect(),
        weights: d.weights().to_vec(),
        normalized_sources: normalized.iter().map(|&v| d.name(v).to_string()).collect(),
    }
}

/// The graph-level criteria, each reported on its own.
pub fn criteria(d: &WeightedOrientedGraph) -> Vec<CriterionResult> {
    let g = underlying(d);
    let pattern = find_forbidden(d);
    let mp = complete_multipartite(&g);
    let item = |name: &str, holds: bool, detail: Option<String>| CriterionResult { name: name.into(), holds, detail };
    vec![
        item(
            "no forbidden pattern",
            pattern.is_none(),
            pattern.map(|m| format!("{} at {:?}", m.pattern, m.witness)),
        ),
        item("underlying co-chordal", is_cochordal(&g).is_chordal(), None),
        item("degree-two graph co-chordal", is_cochordal(&h_graph(d)).is_chordal(), None),
        item("underlying chordal", is_chordal(&g).is_chordal(), None),
        item("underlying house-free", is_house_free(&g), None),
        item("complete multipartite", mp.is_some(), mp.map(|c| format!("{} parts", c.r))),
    ]
}

fn oracle_summary(i: &MonomialIdeal, ch: Characteristic) -> Result<OracleSummary, CliError> {
    let t = betti_table(i, ch)?;
    Ok(OracleSummary { generators: i.len(), regularity: t.regularity(), betti_table: t.to_text() })
}

fn certify(req: &AnalysisRequest, report_path: &Path) -> Result<Certification, CliError> {
    let path = req.input.as_deref().ok_or_else(|| CliError::Usage("an input file is required".into()))?;
    let input = load_input(path)?;
    let text = read(report_path)?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| CliError::Syntax {
        path: report_path.to_path_buf(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    Ok(certify_value(&input, &value, req.characteristic))
}

fn rejected(v: Violation) -> Certification {
    Certification { valid: false, message: Some(v.to_string()), violation: Some(v) }
}

/// Checks the verdict or certificate of a report (as JSON) against `input`;
/// Betti evidence must be over `ch`.
pub fn certify_value(input: &Input, report: &serde_json::Value, ch: Characteristic) -> Certification {
    let verdict = report.get("verdict").filter(|v| !v.is_null());
    let certificate = report.get("certificate").filter(|v| !v.is_null());
    let outcome = match (input, verdict, certificate) {
        (Input::Graph(d, _), Some(v), _) => match Verdict::deserialize(v) {
            Ok(v) => verify_verdict(d, &v, ch),
            Err(e) => Err(Violation::Unparsable(e.to_string())),
        },
        (Input::Ideal(i), None, Some(c)) => match Certificate::deserialize(c) {
            Ok(c) => verify_ideal_certificate(i, &c, ch),
            Err(e) => Err(Violation::Unparsable(e.to_string())),
        },
        (Input::Graph(..), None, _) => Err(Violation::Unparsable("report has no verdict".into())),
        (Input::Ideal(_), ..) => Err(Violation::Unparsable("report has no ideal certificate".into())),
    };
    match outcome {
        Ok(()) => Certification { valid: true, violation: None, message: None },
        Err(v) => rejected(v),
    }
}

pub fn run(req: &AnalysisRequest) -> Result<Report, CliError> {
    let start = Instant::now();
    let mut report = Report::empty(req);
    let opts = req.decide_options();
    match &req.command {
        Command::Analyze => {
            let (d, normalized) = require_graph(req)?;
            report.graph = Some(summarize(&d, &normalized));
            report.criteria = criteria(&d);
            report.verdict = Some(decide_componentwise_linear(&d, &opts));
        }
        Command::Power { k } => {
            if *k == 0 {
                return Err(CliError::Usage("k must be at least 1".into()));
            }
            let (d, normalized) = require_graph(req)?;
            report.graph = Some(summarize(&d, &normalized));
            report.criteria = criteria(&d);
            report.verdict = Some(decide_power(&d, *k, &opts)?);
        }
        Command::Oracle { k } => {
            if *k == 0 {
                return Err(CliError::Usage("k must be at least 1".into()));
            }
            let path = req.input.as_deref().ok_or_else(|| CliError::Usage("an input file is required".into()))?;
            let i = match load_input(path)? {
                Input::Ideal(i) => power(&i, *k),
                Input::Graph(d, normalized) => {
                    report.graph = Some(summarize(&d, &normalized));
                    power(&edge_ideal(&d), *k)
                }
            };
            if i.is_zero() {
                return Err(CliError::Usage("the zero ideal has no Betti numbers".into()));
            }
            report.oracle = Some(oracle_summary(&i, req.characteristic)?);
            let ev = is_componentwise_linear_oracle(&i, opts.oracle)?;
            report.certificate = Some(Certificate::Betti(ev));
        }
        Command::Formula { pattern, k, w2, w3 } => {
            let f = FormulaEvidence::new(*pattern, *k, *w2, *w3)?.with_oracle(req.characteristic)?;
            report.certificate = Some(Certificate::Formula(f));
        }
        Command::Certify { report: path } => {
            report.certification = Some(certify(req, path)?);
        }
        Command::Census { max_vertices, max_weight, all, k, rows } => {
            if *k == 0 {
                return Err(CliError::Usage("k must be at least 1".into()));
            }
            let copts = CensusOptions {
                max_vertices: *max_vertices,
                max_weight: *max_weight,
                connected_only: !all,
                k: *k,
            };
            let mut c = census(&copts, &opts);
            if !rows {
                c.rows.clear();
            }
            report.census = Some(c);
        }
    }
    report.elapsed_ms = start.elapsed().as_secs_f64() * 1000.0;
    Ok(report)
}

/// Renders a report in the requested format.
pub fn render(report: &Report) -> String {
    match report.request.format {
        OutputFormat::Text => report.to_text(),
        OutputFormat::Structured => report.to_json() + "\n",
    }
}
