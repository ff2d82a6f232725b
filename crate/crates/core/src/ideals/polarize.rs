use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{Monomial, MonomialIdeal};

/// Sends occurrence `j` (1-based) of original variable `i` to the fresh
/// variable `offsets[i] + j - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolarizationMap {
    pub origin_vars: Vec<String>,
    /// Largest exponent of each original variable among the generators.
    pub counts: Vec<u32>,
    pub offsets: Vec<usize>,
}

impl PolarizationMap {
    pub fn forward(&self, var: usize, occurrence: u32) -> Option<usize> {
        (occurrence >= 1 && occurrence <= self.counts[var])
            .then(|| self.offsets[var] + occurrence as usize - 1)
    }

    pub fn polarized_len(&self) -> usize {
        self.counts.iter().map(|&c| c as usize).sum()
    }

    pub fn apply(&self, m: &Monomial) -> Monomial {
        let mut exps = vec![0u32; self.polarized_len()];
        for i in m.support() {
            for j in 1..=m.exp(i) {
                exps[self.forward(i, j).expect("exponent within polarization range")] = 1;
            }
        }
        Monomial::new(exps)
    }
}

/// Standard polarization: `x^e` becomes `x_1 * ... * x_e`.
pub fn polarize(i: &MonomialIdeal) -> (MonomialIdeal, PolarizationMap) {
    let n = i.nvars();
    let counts: Vec<u32> = (0..n).map(|v| i.gens().iter().map(|g| g.exp(v)).max().unwrap_or(0)).collect();
    let mut offsets = Vec::with_capacity(n);
    let mut names = Vec::new();
    for v in 0..n {
        offsets.push(names.len());
        for j in 1..=counts[v] {
            names.push(format!("{}_{j}", i.vars()[v]));
        }
    }
    let map = PolarizationMap { origin_vars: i.vars().to_vec(), counts, offsets };
    let vars: Arc<[String]> = names.into();
    let gens = i.gens().iter().map(|g| map.apply(g)).collect();
    (MonomialIdeal::new(vars, gens), map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideals::{default_vars, parse_ideal};

    fn strs(v: &[&str]) -> Arc<[String]> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn examples() {
        let (p, _) = polarize(&parse_ideal(strs(&["x"]), &["x^2"]).unwrap());
        assert_eq!(p.generator_strings(), vec!["x_1*x_2"]);
        let (p, _) = polarize(&parse_ideal(strs(&["a", "b"]), &["a*b^2"]).unwrap());
        assert_eq!(p.generator_strings(), vec!["a_1*b_1*b_2"]);
        let i = parse_ideal(default_vars(3), &["x1*x2^2", "x1*x3^2", "x3*x2^2"]).unwrap();
        let (p, map) = polarize(&i);
        assert!(p.is_squarefree());
        let mut got = p.generator_strings();
        got.sort();
        assert_eq!(got, vec!["x1_1*x2_1*x2_2", "x1_1*x3_1*x3_2", "x2_1*x2_2*x3_1"]);
        assert_eq!(map.forward(1, 2), Some(2));
        assert_eq!(map.forward(1, 3), None);
    }

    #[test]
    fn preserves_count_and_degrees() {
        let i = parse_ideal(strs(&["a", "b", "c"]), &["a^3", "a*b^2*c", "b*c^4"]).unwrap();
        let (p, _) = polarize(&i);
        assert_eq!(p.len(), i.len());
        let mut d1: Vec<u32> = i.gens().iter().map(|g| g.degree()).collect();
        let mut d2: Vec<u32> = p.gens().iter().map(|g| g.degree()).collect();
        d1.sort();
        d2.sort();
        assert_eq!(d1, d2);
    }
}
