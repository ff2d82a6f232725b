use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// A monomial over a fixed variable universe, stored as a dense exponent
/// vector with its total degree cached.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial {
    exps: Vec<u32>,
    degree: u32,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        let degree = exps
            .iter()
            .try_fold(0u32, |s, &e| s.checked_add(e))
            .expect("monomial degree overflows u32");
        Monomial { exps, degree }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial { exps: vec![0; nvars], degree: 0 }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::var_pow(nvars, i, 1)
    }

    pub fn var_pow(nvars: usize, i: usize, e: u32) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = e;
        Monomial { exps, degree: e }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    /// Variables with a nonzero exponent, increasing.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }

    pub fn support_mask(&self) -> u64 {
        self.support().fold(0, |m, i| m | 1 << i)
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
            .collect();
        Monomial::new(exps)
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.exps.iter().zip(&other.exps).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect())
    }

    /// `self / other`, or `None` if `other` does not divide `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial::new(self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect()))
    }

    /// `self / gcd(self, other)`: the generator of `(self) : other`.
    pub fn quotient_by_gcd(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.exps.iter().zip(&other.exps).map(|(a, b)| a.saturating_sub(*b)).collect(),
        )
    }

    /// The single variable this monomial equals, if it is one.
    pub fn as_variable(&self) -> Option<usize> {
        if self.degree == 1 {
            self.support().next()
        } else {
            None
        }
    }

    pub fn format(&self, names: &[String]) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        self.support()
            .map(|i| match self.exps[i] {
                1 => names[i].clone(),
                e => format!("{}^{e}", names[i]),
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// The canonical generator order: degree ascending, then exponent vectors
/// lexicographically descending (so `a^2*b` precedes `a*b*c`).
pub fn canonical_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    a.degree.cmp(&b.degree).then_with(|| b.exps.cmp(&a.exps))
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps)
    }
}
