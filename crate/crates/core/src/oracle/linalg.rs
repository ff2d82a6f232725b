//! Matrix rank over GF(2), GF(p) and the rationals.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Characteristic;

/// A matrix with small integer entries, stored row-sparse.
#[derive(Debug, Clone, Default)]
pub struct IntMatrix {
    pub ncols: usize,
    pub rows: Vec<Vec<(usize, i64)>>,
}

impl IntMatrix {
    pub fn new(ncols: usize) -> Self {
        IntMatrix { ncols, rows: Vec::new() }
    }

    pub fn rank(&self, ch: Characteristic) -> usize {
        if self.rows.is_empty() || self.ncols == 0 {
            return 0;
        }
        match ch.get() {
            0 => rank_rational(self),
            2 => rank_gf2(self),
            p => rank_mod_p(self, p as u64),
        }
    }
}

fn rank_gf2(m: &IntMatrix) -> usize {
    let words = m.ncols.div_ceil(64);
    let mut rows: Vec<Vec<u64>> = m
        .rows
        .iter()
        .map(|r| {
            let mut bits = vec![0u64; words];
            for &(c, v) in r {
                if v.rem_euclid(2) == 1 {
                    bits[c / 64] ^= 1 << (c % 64);
                }
            }
            bits
        })
        .collect();
    let mut rank = 0;
    for col in 0..m.ncols {
        let (w, b) = (col / 64, 1u64 << (col % 64));
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][w] & b != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for r in rank + 1..rows.len() {
            if rows[r][w] & b != 0 {
                for (x, y) in rows[r].iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // p is prime, so a^(p-2) is the inverse
    let (mut base, mut e, mut acc) = (a % p, p - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

fn rank_mod_p(m: &IntMatrix, p: u64) -> usize {
    let mut rows: Vec<Vec<u64>> = m
        .rows
        .iter()
        .map(|r| {
            let mut dense = vec![0u64; m.ncols];
            for &(c, v) in r {
                dense[c] = (dense[c] + v.rem_euclid(p as i64) as u64) % p;
            }
            dense
        })
        .collect();
    let mut rank = 0;
    for col in 0..m.ncols {
        let Some(pr) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pr);
        let inv = inv_mod(rows[rank][col], p);
        for x in rows[rank].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot = rows[rank].clone();
        for r in rank + 1..rows.len() {
            let f = rows[r][col];
            if f != 0 {
                for (x, y) in rows[r].iter_mut().zip(&pivot) {
                    *x = (*x + p - f * y % p) % p;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

fn dense_i128(m: &IntMatrix) -> Vec<Vec<i128>> {
    m.rows
        .iter()
        .map(|r| {
            let mut dense = vec![0i128; m.ncols];
            for &(c, v) in r {
                dense[c] += v as i128;
            }
            dense
        })
        .collect()
}

/// Fraction-free (Bareiss) elimination; `None` on i128 overflow.
fn bareiss_i128(mut a: Vec<Vec<i128>>, ncols: usize) -> Option<usize> {
    let mut rank = 0;
    let mut prev = 1i128;
    for col in 0..ncols {
        let Some(pr) = (rank..a.len()).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(rank, pr);
        let piv = a[rank][col];
        for r in rank + 1..a.len() {
            let f = a[r][col];
            for c in col..ncols {
                let v = piv.checked_mul(a[r][c])?.checked_sub(f.checked_mul(a[rank][c])?)?;
                a[r][c] = v / prev;
            }
        }
        prev = piv;
        rank += 1;
        if rank == a.len() {
            break;
        }
    }
    Some(rank)
}

fn bareiss_big(a: Vec<Vec<i128>>, ncols: usize) -> usize {
    let mut a: Vec<Vec<BigInt>> =
        a.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..ncols {
        let Some(pr) = (rank..a.len()).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, pr);
        let piv = a[rank][col].clone();
        for r in rank + 1..a.len() {
            let f = a[r][col].clone();
            for c in col..ncols {
                let v = &piv * &a[r][c] - &f * &a[rank][c];
                a[r][c] = v / &prev;
            }
        }
        prev = piv;
        rank += 1;
        if rank == a.len() {
            break;
        }
    }
    rank
}

fn rank_rational(m: &IntMatrix) -> usize {
    let a = dense_i128(m);
    match bareiss_i128(a.clone(), m.ncols) {
        Some(r) => r,
        None => bareiss_big(a, m.ncols),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_dense(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix {
            ncols: rows[0].len(),
            rows: rows
                .iter()
                .map(|r| r.iter().enumerate().filter(|(_, &v)| v != 0).map(|(c, &v)| (c, v)).collect())
                .collect(),
        }
    }

    #[test]
    fn ranks_depend_on_characteristic() {
        // determinant 2: full rank over Q and GF(3), rank 1 over GF(2)
        let m = from_dense(&[&[1, 1], &[1, -1]]);
        assert_eq!(m.rank(Characteristic::new(0).unwrap()), 2);
        assert_eq!(m.rank(Characteristic::new(3).unwrap()), 2);
        assert_eq!(m.rank(Characteristic::new(2).unwrap()), 1);
    }

    #[test]
    fn rank_of_singular_matrix() {
        let m = from_dense(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        for p in [0, 2, 5, 7] {
            assert_eq!(m.rank(Characteristic::new(p).unwrap()), 2, "char {p}");
        }
        // every row is (1, 2, 0) mod 3
        assert_eq!(m.rank(Characteristic::new(3).unwrap()), 1);
    }

    #[test]
    fn bignum_fallback_agrees() {
        // entries large enough to overflow i128 during elimination
        let big = 1i64 << 40;
        let m = from_dense(&[
            &[big, 1, 3, 7],
            &[5, big, 11, 13],
            &[17, 19, big, 23],
            &[29, 31, 37, big],
        ]);
        let a = dense_i128(&m);
        assert_eq!(bareiss_big(a, 4), 4);
        assert_eq!(m.rank(Characteristic::new(0).unwrap()), 4);
    }
}
