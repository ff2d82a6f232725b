//! Linear quotients: search over degree-increasing generator orders.
//!
//! The colon ideal `(u_1, ..., u_{i-1}) : u_i` depends only on the set of
//! earlier generators, so sets from which no completion exists are
//! remembered and never revisited.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::LinearityError;
use crate::certify::Violation;
use crate::ideals::{colon, parse_monomial, Monomial, MonomialIdeal};

/// An admissible order with, for each position, the variables generating
/// the colon ideal by the earlier generators (empty at position 0).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearQuotientOrder {
    pub order: Vec<String>,
    pub colon_witnesses: Vec<Vec<String>>,
}

/// How the generators after the lowest-degree block are ordered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TailMode {
    /// Backtracking search throughout.
    #[default]
    Search,
    /// Lowest-degree block searched, the rest fixed in canonical order.
    Canonical,
    /// Lowest-degree block searched, the rest in reverse canonical order
    /// within the degree-increasing constraint.
    Reversed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LqOptions {
    /// Largest generator count the search accepts.
    pub cap: usize,
    /// Largest number of search nodes before giving up.
    pub node_budget: u64,
    pub tail: TailMode,
}

impl Default for LqOptions {
    fn default() -> Self {
        LqOptions { cap: 24, node_budget: 2_000_000, tail: TailMode::Search }
    }
}

impl LinearQuotientOrder {
    /// Re-checks the order against `i` by recomputing every colon ideal.
    pub fn verify(&self, i: &MonomialIdeal) -> Result<(), Violation> {
        let vars = i.vars();
        let parsed = self
            .order
            .iter()
            .map(|s| parse_monomial(vars, s))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| Violation::Unparsable(e.to_string()))?;
        let mut sorted = parsed.clone();
        sorted.sort_by(crate::ideals::canonical_cmp);
        sorted.dedup();
        if sorted.len() != parsed.len() || sorted != i.gens() {
            return Err(Violation::LqNotPermutation);
        }
        if self.colon_witnesses.len() != parsed.len() {
            return Err(Violation::LqColonMismatch { position: self.colon_witnesses.len().min(parsed.len()) });
        }
        for pos in 0..parsed.len() {
            let mut want: Vec<usize> = Vec::new();
            for name in &self.colon_witnesses[pos] {
                let v = vars
                    .iter()
                    .position(|x| x == name)
                    .ok_or_else(|| Violation::Unparsable(format!("unknown variable {name}")))?;
                if want.last().is_some_and(|&w| w >= v) {
                    return Err(Violation::LqWitnessOrder { position: pos });
                }
                want.push(v);
            }
            let prefix = MonomialIdeal::new(vars.clone(), parsed[..pos].to_vec());
            let got = colon(&prefix, &parsed[pos]);
            let expected = MonomialIdeal::variables(vars.clone(), &want);
            if pos > 0 && got != expected || pos == 0 && !want.is_empty() {
                return Err(Violation::LqColonMismatch { position: pos });
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }
}

/// Pairwise colon data: for earlier `s` and later `u`, the support of
/// `s / gcd(s, u)` and the variable it equals, if any.
struct ColonTable {
    n: usize,
    support: Vec<u64>,
    var_bit: Vec<u64>,
}

impl ColonTable {
    fn new(gens: &[Monomial]) -> Self {
        let n = gens.len();
        let mut support = vec![0u64; n * n];
        let mut var_bit = vec![0u64; n * n];
        for s in 0..n {
            for u in 0..n {
                let q = gens[s].quotient_by_gcd(&gens[u]);
                support[s * n + u] = q.support_mask();
                if let Some(v) = q.as_variable() {
                    var_bit[s * n + u] = 1 << v;
                }
            }
        }
        ColonTable { n, support, var_bit }
    }

    /// Variables generating `(chosen) : u` when that colon is linear.
    fn linear_colon(&self, chosen: &[usize], u: usize) -> Option<u64> {
        let n = self.n;
        let vars = chosen.iter().fold(0u64, |m, &s| m | self.var_bit[s * n + u]);
        chosen.iter().all(|&s| self.support[s * n + u] & vars != 0).then_some(vars)
    }
}

struct Search<'a> {
    table: ColonTable,
    degrees: Vec<u32>,
    opts: LqOptions,
    dead: HashSet<Vec<u64>>,
    nodes: u64,
    order: Vec<usize>,
    witnesses: Vec<u64>,
    used: Vec<u64>,
    gens: &'a [Monomial],
}

impl Search<'_> {
    fn key(&self) -> Vec<u64> {
        self.used.clone()
    }

    fn is_used(&self, g: usize) -> bool {
        self.used[g / 64] >> (g % 64) & 1 == 1
    }

    fn set_used(&mut self, g: usize, on: bool) {
        if on {
            self.used[g / 64] |= 1 << (g % 64);
        } else {
            self.used[g / 64] &= !(1 << (g % 64));
        }
    }

    fn run(&mut self) -> Result<bool, LinearityError> {
        let total = self.gens.len();
        if self.order.len() == total {
            return Ok(true);
        }
        self.nodes += 1;
        if self.nodes > self.opts.node_budget {
            return Err(LinearityError::BudgetExhausted { nodes: self.opts.node_budget });
        }
        if self.dead.contains(&self.key()) {
            return Ok(false);
        }
        // generators are canonically sorted, so the next degree is that of
        // the first unused one
        let first = (0..total).find(|&g| !self.is_used(g)).unwrap();
        let d = self.degrees[first];
        let lowest = self.degrees[0];
        let candidates: Vec<usize> = match (self.opts.tail, d == lowest) {
            (TailMode::Search, _) | (_, true) => {
                (first..total).filter(|&g| self.degrees[g] == d && !self.is_used(g)).collect()
            }
            (TailMode::Canonical, false) => vec![first],
            (TailMode::Reversed, false) => {
                let last = (first..total).rev().find(|&g| self.degrees[g] == d && !self.is_used(g));
                last.into_iter().collect()
            }
        };
        for g in candidates {
            let Some(w) = self.table.linear_colon(&self.order, g) else {
                continue;
            };
            self.order.push(g);
            self.witnesses.push(w);
            self.set_used(g, true);
            if self.run()? {
                return Ok(true);
            }
            self.set_used(g, false);
            self.order.pop();
            self.witnesses.pop();
        }
        self.dead.insert(self.key());
        Ok(false)
    }
}

/// Searches for a linear quotient order among degree-increasing orders.
/// `Ok(None)` means none exists.
pub fn has_linear_quotients(
    i: &MonomialIdeal,
    opts: LqOptions,
) -> Result<Option<LinearQuotientOrder>, LinearityError> {
    let gens = i.gens();
    if gens.len() > opts.cap {
        return Err(LinearityError::SearchCapped { generators: gens.len(), cap: opts.cap });
    }
    let mut search = Search {
        table: ColonTable::new(gens),
        degrees: gens.iter().map(Monomial::degree).collect(),
        opts,
        dead: HashSet::new(),
        nodes: 0,
        order: Vec::new(),
        witnesses: Vec::new(),
        used: vec![0; gens.len().div_ceil(64).max(1)],
        gens,
    };
    if !search.run()? {
        return Ok(None);
    }
    let names = i.vars();
    let witness_names = |w: u64| -> Vec<String> {
        crate::graphs::bits(w).map(|v| names[v].clone()).collect()
    };
    Ok(Some(LinearQuotientOrder {
        order: search.order.iter().map(|&g| gens[g].format(names)).collect(),
        colon_witnesses: search.witnesses.iter().map(|&w| witness_names(w)).collect(),
    }))
}
