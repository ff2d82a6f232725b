//! Homological ground truth for monomial ideals: graded Betti numbers,
//! regularity, linear resolutions and componentwise linearity.
//!
//! Componentwise linearity is checked through truncations. Writing
//! `I_{≤d}` for the ideal generated by the minimal generators of degree at
//! most `d`, the ideal generated by the degree-`d` part of `I` is the
//! truncation of `I_{≤d}` at degree `d`, so
//! `reg(I_⟨d⟩) = max(d, reg(I_{≤d}))`. This replaces the large component
//! ideals by small sub-ideals; the component route is kept for
//! cross-checks.

mod betti;
mod complex;
mod linalg;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use betti::{
    betti_table, betti_table_polarized, multigraded_betti, regularity_at_most, upper_koszul,
    BettiEntry, BettiTable, MAX_BOX, MAX_DIRECT_SUPPORT,
};
pub use complex::{reduced_homology_ranks, SimplicialComplex};
pub use linalg::IntMatrix;

use crate::graphs::Pattern;
use crate::ideals::{component, edge_ideal, power, truncate, IdealFile, MonomialIdeal};

/// Field characteristic: 0 or a prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Characteristic(u32);

impl Characteristic {
    pub const TWO: Characteristic = Characteristic(2);
    pub const ZERO: Characteristic = Characteristic(0);

    pub fn new(p: u32) -> Result<Self, OracleError> {
        let prime = p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d));
        if p == 0 || prime {
            Ok(Characteristic(p))
        } else {
            Err(OracleError::BadCharacteristic(p))
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

impl Default for Characteristic {
    fn default() -> Self {
        Characteristic(2)
    }
}

impl TryFrom<u32> for Characteristic {
    type Error = OracleError;
    fn try_from(p: u32) -> Result<Self, OracleError> {
        Characteristic::new(p)
    }
}

impl From<Characteristic> for u32 {
    fn from(c: Characteristic) -> u32 {
        c.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("characteristic {0} is neither 0 nor a prime")]
    BadCharacteristic(u32),
    #[error("the zero ideal has no regularity")]
    ZeroIdeal,
    #[error("ideal is not generated in a single degree")]
    NotEquigenerated,
    #[error("simplicial complex exceeds {cap} faces")]
    TooManyFaces { cap: usize },
    #[error("{found} variables occur, at most {max} are supported")]
    TooManyVariables { found: usize, max: usize },
    #[error("multidegree box exceeds {max} points")]
    BoxTooLarge { max: usize },
    /// Internal early exit; never returned to callers.
    #[error("stopped")]
    Stop,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleOptions {
    pub characteristic: Characteristic,
    /// Also check the two degrees above the top generator degree, through
    /// explicit component ideals.
    pub paranoid: bool,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions { characteristic: Characteristic::default(), paranoid: false }
    }
}

pub fn regularity(i: &MonomialIdeal, ch: Characteristic) -> Result<i64, OracleError> {
    betti_table(i, ch)?.regularity().ok_or(OracleError::ZeroIdeal)
}

/// For an ideal generated in one degree `d`: `reg(I) = d`.
pub fn has_linear_resolution(i: &MonomialIdeal, ch: Characteristic) -> Result<bool, OracleError> {
    if i.is_zero() {
        return Err(OracleError::ZeroIdeal);
    }
    if !i.is_equigenerated() {
        return Err(OracleError::NotEquigenerated);
    }
    regularity_at_most(i, i.min_degree().unwrap(), ch)
}

/// `reg(I_⟨d⟩)` via the truncation identity.
pub fn component_regularity(i: &MonomialIdeal, d: u32, ch: Characteristic) -> Result<i64, OracleError> {
    let t = truncate(i, d);
    if t.is_zero() {
        return Err(OracleError::ZeroIdeal);
    }
    Ok(regularity(&t, ch)?.max(d as i64))
}

/// `reg(I_⟨d⟩)` computed from the explicit component ideal.
pub fn component_regularity_explicit(
    i: &MonomialIdeal,
    d: u32,
    ch: Characteristic,
) -> Result<i64, OracleError> {
    regularity(&component(i, d), ch)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeCheck {
    pub degree: u32,
    /// `reg(I_⟨d⟩)`.
    pub regularity: i64,
}

/// Per-degree regularities of the components of an ideal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiEvidence {
    pub ideal: IdealFile,
    pub characteristic: Characteristic,
    pub degrees: Vec<DegreeCheck>,
    /// First degree `d` with `reg(I_⟨d⟩) > d`.
    pub failing_degree: Option<u32>,
    /// `reg(I)`.
    pub regularity: i64,
    pub paranoid: bool,
}

impl BettiEvidence {
    pub fn componentwise_linear(&self) -> bool {
        self.failing_degree.is_none()
    }
}

/// Checks `reg(I_⟨d⟩) = d` for every `d` from the least to the largest
/// generator degree (two more with `paranoid`).
pub fn is_componentwise_linear_oracle(
    i: &MonomialIdeal,
    opts: OracleOptions,
) -> Result<BettiEvidence, OracleError> {
    if i.is_zero() {
        return Err(OracleError::ZeroIdeal);
    }
    let ch = opts.characteristic;
    let (lo, hi) = (i.min_degree().unwrap(), i.max_degree().unwrap());
    let mut degrees = Vec::new();
    let mut cache: Option<(usize, i64)> = None;
    for d in lo..=hi {
        let t = truncate(i, d);
        let reg_t = match cache {
            Some((len, r)) if len == t.len() => r,
            _ => regularity(&t, ch)?,
        };
        cache = Some((t.len(), reg_t));
        degrees.push(DegreeCheck { degree: d, regularity: reg_t.max(d as i64) });
    }
    let regularity = cache.unwrap().1;
    if opts.paranoid {
        for d in hi + 1..=hi + 2 {
            degrees.push(DegreeCheck { degree: d, regularity: component_regularity_explicit(i, d, ch)? });
        }
    }
    let failing_degree = degrees.iter().find(|c| c.regularity > c.degree as i64).map(|c| c.degree);
    Ok(BettiEvidence {
        ideal: IdealFile::from_ideal(i),
        characteristic: ch,
        degrees,
        failing_degree,
        regularity,
        paranoid: opts.paranoid,
    })
}

/// Yes/no componentwise linearity with early exits; returns the first
/// failing degree.
pub fn componentwise_linear_fast(
    i: &MonomialIdeal,
    ch: Characteristic,
) -> Result<Option<u32>, OracleError> {
    if i.is_zero() {
        return Ok(None);
    }
    for d in i.degrees() {
        if !regularity_at_most(&truncate(i, d), d, ch)? {
            return Ok(Some(d));
        }
    }
    Ok(None)
}

/// Oracle regularity of a pattern power against its closed form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaReport {
    pub pattern: Pattern,
    pub k: u32,
    pub w2: u32,
    pub w3: u32,
    pub characteristic: Characteristic,
    pub predicted: i64,
    pub oracle: i64,
}

impl FormulaReport {
    pub fn matches(&self) -> bool {
        self.predicted == self.oracle
    }
}

pub fn formula_vs_oracle(
    pattern: Pattern,
    k: u32,
    w2: u32,
    w3: u32,
    ch: Characteristic,
) -> Result<FormulaReport, crate::linearity::LinearityError> {
    let predicted = crate::linearity::pattern_power_regularity(pattern, k, w2, w3)?;
    let i = power(&edge_ideal(&pattern.instance(w2, w3)), k);
    let oracle = regularity(&i, ch)?;
    Ok(FormulaReport { pattern, k, w2, w3, characteristic: ch, predicted, oracle })
}
