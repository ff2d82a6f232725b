use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{IdealError, Monomial, MonomialIdeal};

/// JSON ideal files: `{"variables": ["a", "b"], "generators": ["a*b^3"]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealFile {
    pub variables: Vec<String>,
    pub generators: Vec<String>,
}

impl IdealFile {
    pub fn to_ideal(&self) -> Result<MonomialIdeal, IdealError> {
        for (i, v) in self.variables.iter().enumerate() {
            if v.is_empty() || v.contains(['*', '^']) || v.chars().any(char::is_whitespace) {
                return Err(IdealError::Syntax(v.clone()));
            }
            if self.variables[..i].contains(v) {
                return Err(IdealError::DuplicateVariable(v.clone()));
            }
        }
        let vars: Arc<[String]> = self.variables.iter().cloned().collect();
        parse_ideal(vars, &self.generators)
    }

    pub fn from_ideal(i: &MonomialIdeal) -> Self {
        IdealFile { variables: i.vars().to_vec(), generators: i.generator_strings() }
    }
}

/// Parses `x1*x2^3`; `1` is the unit monomial. Repeated variables multiply.
pub fn parse_monomial(vars: &[String], text: &str) -> Result<Monomial, IdealError> {
    let text = text.trim();
    let mut exps = vec![0u32; vars.len()];
    if text == "1" {
        return Ok(Monomial::new(exps));
    }
    for factor in text.split('*') {
        let factor = factor.trim();
        let (name, e) = match factor.split_once('^') {
            Some((name, e)) => {
                let e: u32 = e
                    .trim()
                    .parse()
                    .ok()
                    .filter(|&e| e > 0)
                    .ok_or_else(|| IdealError::BadExponent(factor.to_string()))?;
                (name.trim(), e)
            }
            None => (factor, 1),
        };
        if name.is_empty() {
            return Err(IdealError::Syntax(text.to_string()));
        }
        let i = vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| IdealError::UnknownVariable(name.to_string()))?;
        exps[i] = exps[i].checked_add(e).ok_or_else(|| IdealError::BadExponent(factor.to_string()))?;
    }
    Ok(Monomial::new(exps))
}

pub fn parse_ideal<S: AsRef<str>>(vars: Arc<[String]>, gens: &[S]) -> Result<MonomialIdeal, IdealError> {
    let monos = gens
        .iter()
        .map(|g| parse_monomial(&vars, g.as_ref()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(MonomialIdeal::new(vars, monos))
}

pub fn format_ideal(i: &MonomialIdeal) -> String {
    serde_json::to_string_pretty(&IdealFile::from_ideal(i)).expect("ideal files always serialize")
}
