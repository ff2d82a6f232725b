//! Graded Betti numbers of monomial ideals from upper Koszul simplicial
//! complexes: `β_{i,a}(I) = dim H̃_{i-1}(K^a)` where
//! `K^a = {squarefree W ⊆ supp(a) : x^(a-W) ∈ I}`.
//!
//! The direct route walks every multidegree `a` below the lcm of the
//! generators. Membership in `I` for the whole box is filled in by a single
//! pass, and multidegrees whose complex is a cone are skipped. The polarized
//! route works on the squarefree polarization and only visits the lcm
//! lattice; it is slower and kept as an independent cross-check.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::complex::{homology_of_faces, SimplicialComplex};
use super::{Characteristic, OracleError};
use crate::graphs::bits;
use crate::ideals::{polarize, Monomial, MonomialIdeal};

/// Graded Betti numbers `β_{i,j}` with the characteristic they were
/// computed over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    pub characteristic: Characteristic,
    entries: BTreeMap<(usize, u32), u64>,
}

/// One nonzero entry, as serialized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiEntry {
    pub i: usize,
    pub j: u32,
    pub value: u64,
}

#[derive(Serialize, Deserialize)]
struct BettiTableRepr {
    characteristic: u32,
    entries: Vec<BettiEntry>,
}

impl Serialize for BettiTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        BettiTableRepr { characteristic: self.characteristic.get(), entries: self.entries() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BettiTable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = BettiTableRepr::deserialize(d)?;
        let characteristic =
            Characteristic::new(repr.characteristic).map_err(serde::de::Error::custom)?;
        let mut table = BettiTable::empty(characteristic);
        for e in repr.entries {
            table.add(e.i, e.j, e.value);
        }
        Ok(table)
    }
}

impl BettiTable {
    pub fn empty(characteristic: Characteristic) -> Self {
        BettiTable { characteristic, entries: BTreeMap::new() }
    }

    fn add(&mut self, i: usize, j: u32, v: u64) {
        if v > 0 {
            *self.entries.entry((i, j)).or_insert(0) += v;
        }
    }

    pub fn get(&self, i: usize, j: u32) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> Vec<BettiEntry> {
        self.entries.iter().map(|(&(i, j), &value)| BettiEntry { i, j, value }).collect()
    }

    /// `max { j - i : β_{i,j} ≠ 0 }`, or `None` for the zero ideal.
    pub fn regularity(&self) -> Option<i64> {
        self.entries.keys().map(|&(i, j)| j as i64 - i as i64).max()
    }

    pub fn projective_dimension(&self) -> Option<usize> {
        self.entries.keys().map(|&(i, _)| i).max()
    }

    /// Rows `i = 0..=pd`, columns `j - i` (the usual display layout).
    pub fn to_text(&self) -> String {
        let Some(pd) = self.projective_dimension() else {
            return format!("zero ideal (char {})\n", self.characteristic.get());
        };
        let lo = self.entries.keys().map(|&(i, j)| j as i64 - i as i64).min().unwrap();
        let hi = self.regularity().unwrap();
        let mut out = format!("char {}\n      ", self.characteristic.get());
        for i in 0..=pd {
            out.push_str(&format!("{i:>6}"));
        }
        out.push('\n');
        for r in lo..=hi {
            out.push_str(&format!("{r:>4}: "));
            for i in 0..=pd {
                let v = self.get(i, (r + i as i64) as u32);
                if v == 0 {
                    out.push_str(&format!("{:>6}", "-"));
                } else {
                    out.push_str(&format!("{v:>6}"));
                }
            }
            out.push('\n');
        }
        out
    }
}

/// Membership data for every multidegree below the lcm of the generators,
/// restricted to the variables that occur.
struct KoszulBox {
    /// Original variable index of each box coordinate.
    coords: Vec<usize>,
    dims: Vec<usize>,
    strides: Vec<usize>,
    in_ideal: Vec<bool>,
    is_gen: Vec<bool>,
    nvars: usize,
}

/// Largest box the direct route will allocate.
pub const MAX_BOX: usize = 1 << 26;
/// Largest support the direct route handles (face bitmaps have `2^s` bits).
pub const MAX_DIRECT_SUPPORT: usize = 24;

impl KoszulBox {
    fn new(i: &MonomialIdeal) -> Result<Self, OracleError> {
        let lcm = i.lcm_all();
        let coords: Vec<usize> = lcm.support().collect();
        if coords.len() > MAX_DIRECT_SUPPORT {
            return Err(OracleError::TooManyVariables { found: coords.len(), max: MAX_DIRECT_SUPPORT });
        }
        let dims: Vec<usize> = coords.iter().map(|&v| lcm.exp(v) as usize + 1).collect();
        let mut strides = vec![1usize; dims.len()];
        let mut size = 1usize;
        for k in 0..dims.len() {
            strides[k] = size;
            size = size
                .checked_mul(dims[k])
                .filter(|&s| s <= MAX_BOX)
                .ok_or(OracleError::BoxTooLarge { max: MAX_BOX })?;
        }
        let mut is_gen = vec![false; size];
        for g in i.gens() {
            let idx: usize = coords.iter().zip(&strides).map(|(&v, &s)| g.exp(v) as usize * s).sum();
            is_gen[idx] = true;
        }
        let mut in_ideal = vec![false; size];
        let mut pos = vec![0usize; dims.len()];
        for idx in 0..size {
            let mut hit = is_gen[idx];
            if !hit {
                for k in 0..dims.len() {
                    if pos[k] > 0 && in_ideal[idx - strides[k]] {
                        hit = true;
                        break;
                    }
                }
            }
            in_ideal[idx] = hit;
            advance(&mut pos, &dims);
        }
        Ok(KoszulBox { coords, dims, strides, in_ideal, is_gen, nvars: i.nvars() })
    }

    /// Calls `f(index, position, degree)` for every point of the box lying
    /// in the ideal.
    fn for_each_member(&self, mut f: impl FnMut(usize, &[usize], u32) -> Result<(), OracleError>) -> Result<(), OracleError> {
        let mut pos = vec![0usize; self.dims.len()];
        for idx in 0..self.in_ideal.len() {
            if self.in_ideal[idx] {
                let deg = pos.iter().sum::<usize>() as u32;
                f(idx, &pos, deg)?;
            }
            advance(&mut pos, &self.dims);
        }
        Ok(())
    }

    /// Face bitmap of the upper Koszul complex at `idx`, over the box
    /// coordinates in `supp` (bit `k` of a face = `supp[k]`).
    fn faces_at(&self, idx: usize, supp: &[usize], buf: &mut Vec<bool>) {
        let s = supp.len();
        buf.clear();
        buf.resize(1 << s, false);
        let mut off = vec![0usize; 1 << s];
        buf[0] = self.in_ideal[idx];
        for w in 1usize..1 << s {
            let low = w.trailing_zeros() as usize;
            off[w] = off[w & (w - 1)] + self.strides[supp[low]];
            buf[w] = self.in_ideal[idx - off[w]];
        }
    }

    fn monomial_at(&self, pos: &[usize]) -> Monomial {
        let mut exps = vec![0u32; self.nvars];
        for (k, &v) in self.coords.iter().enumerate() {
            exps[v] = pos[k] as u32;
        }
        Monomial::new(exps)
    }
}

fn advance(pos: &mut [usize], dims: &[usize]) {
    for k in 0..pos.len() {
        pos[k] += 1;
        if pos[k] < dims[k] {
            return;
        }
        pos[k] = 0;
    }
}

/// True when some vertex is a cone point of the face bitmap.
fn is_cone(faces: &[bool], s: usize) -> bool {
    (0..s).any(|j| {
        let b = 1usize << j;
        (0..faces.len()).all(|w| w & b != 0 || !faces[w] || faces[w | b])
    })
}

fn face_list(faces: &[bool]) -> Vec<u64> {
    faces.iter().enumerate().filter(|(_, &f)| f).map(|(w, _)| w as u64).collect()
}

/// Support coordinates of a box position.
fn support_of(pos: &[usize]) -> Vec<usize> {
    (0..pos.len()).filter(|&k| pos[k] > 0).collect()
}

/// Graded Betti table by the direct route.
pub fn betti_table(i: &MonomialIdeal, ch: Characteristic) -> Result<BettiTable, OracleError> {
    let mut table = BettiTable::empty(ch);
    if i.is_zero() {
        return Ok(table);
    }
    let bx = KoszulBox::new(i)?;
    let mut buf = Vec::new();
    bx.for_each_member(|idx, pos, deg| {
        if bx.is_gen[idx] {
            table.add(0, deg, 1);
            return Ok(());
        }
        let supp = support_of(pos);
        bx.faces_at(idx, &supp, &mut buf);
        if is_cone(&buf, supp.len()) {
            return Ok(());
        }
        let ranks = homology_of_faces(&face_list(&buf), ch, None);
        for (q1, &r) in ranks.iter().enumerate() {
            // q1 = q + 1 = i
            table.add(q1, deg, r as u64);
        }
        Ok(())
    })?;
    Ok(table)
}

/// Multigraded Betti numbers by the direct route, keyed by multidegree.
pub fn multigraded_betti(
    i: &MonomialIdeal,
    ch: Characteristic,
) -> Result<BTreeMap<(usize, Vec<u32>), u64>, OracleError> {
    let mut out = BTreeMap::new();
    if i.is_zero() {
        return Ok(out);
    }
    let bx = KoszulBox::new(i)?;
    let mut buf = Vec::new();
    bx.for_each_member(|idx, pos, _| {
        let supp = support_of(pos);
        bx.faces_at(idx, &supp, &mut buf);
        if !bx.is_gen[idx] && is_cone(&buf, supp.len()) {
            return Ok(());
        }
        let ranks = homology_of_faces(&face_list(&buf), ch, None);
        let m = bx.monomial_at(pos);
        for (q1, &r) in ranks.iter().enumerate() {
            if r > 0 {
                out.insert((q1, m.exps().to_vec()), r as u64);
            }
        }
        Ok(())
    })?;
    Ok(out)
}

/// `reg(I) ≤ d`, stopping at the first witness to the contrary.
pub fn regularity_at_most(i: &MonomialIdeal, d: u32, ch: Characteristic) -> Result<bool, OracleError> {
    if i.is_zero() {
        return Ok(true);
    }
    if i.max_degree().unwrap() > d {
        return Ok(false);
    }
    let bx = KoszulBox::new(i)?;
    let mut buf = Vec::new();
    // β_{i,a} with |a| - i > d needs i ≤ |a| - d - 1, i.e. H̃_q with
    // q ≤ |a| - d - 2; at |a| ≤ d + 1 only H̃_{-1} (generators) remains
    let mut witness = |idx: usize, pos: &[usize], deg: u32| -> Result<(), OracleError> {
        if deg <= d + 1 || bx.is_gen[idx] {
            return Ok(());
        }
        let supp = support_of(pos);
        bx.faces_at(idx, &supp, &mut buf);
        if is_cone(&buf, supp.len()) {
            return Ok(());
        }
        let max_q = deg as i32 - d as i32 - 2;
        let ranks = homology_of_faces(&face_list(&buf), ch, Some(max_q));
        if ranks.iter().any(|&r| r > 0) {
            return Err(OracleError::Stop);
        }
        Ok(())
    };
    let res = bx.for_each_member(&mut witness);
    match res {
        Ok(()) => Ok(true),
        Err(OracleError::Stop) => Ok(false),
        Err(e) => Err(e),
    }
}

/// The upper Koszul complex `K^a(I)` on the variables of `I`.
pub fn upper_koszul(i: &MonomialIdeal, a: &Monomial) -> SimplicialComplex {
    let names = i.vars().to_vec();
    let supp: Vec<usize> = a.support().collect();
    if supp.len() > MAX_DIRECT_SUPPORT {
        panic!("upper Koszul complex over more than {MAX_DIRECT_SUPPORT} variables");
    }
    let mut faces = Vec::new();
    for w in 0u64..1 << supp.len() {
        let mut exps = a.exps().to_vec();
        for k in bits(w) {
            exps[supp[k]] -= 1;
        }
        if i.contains(&Monomial::new(exps)) {
            faces.push(bits(w).fold(0u64, |m, k| m | 1 << supp[k]));
        }
    }
    SimplicialComplex::from_facets(names, faces)
}

/// Graded Betti table through polarization and the lcm lattice.
pub fn betti_table_polarized(
    i: &MonomialIdeal,
    ch: Characteristic,
    face_cap: usize,
) -> Result<BettiTable, OracleError> {
    let mut table = BettiTable::empty(ch);
    if i.is_zero() {
        return Ok(table);
    }
    let (p, _) = polarize(i);
    if p.nvars() > 64 {
        return Err(OracleError::TooManyVariables { found: p.nvars(), max: 64 });
    }
    let gens: Vec<u64> = p.gens().iter().map(|g| g.support_mask()).collect();
    let mut lattice: BTreeSet<u64> = gens.iter().copied().collect();
    let mut frontier: Vec<u64> = lattice.iter().copied().collect();
    while let Some(a) = frontier.pop() {
        for &g in &gens {
            let l = a | g;
            if lattice.insert(l) {
                if lattice.len() > face_cap {
                    return Err(OracleError::TooManyFaces { cap: face_cap });
                }
                frontier.push(l);
            }
        }
    }
    for &a in &lattice {
        let facets: Vec<u64> = gens.iter().filter(|&&g| g & !a == 0).map(|&g| a & !g).collect();
        let k = SimplicialComplex::from_facets(p.vars().to_vec(), facets);
        let faces = k.faces(face_cap)?;
        let ranks = homology_of_faces(&faces, ch, None);
        for (q1, &r) in ranks.iter().enumerate() {
            table.add(q1, a.count_ones(), r as u64);
        }
    }
    Ok(table)
}
