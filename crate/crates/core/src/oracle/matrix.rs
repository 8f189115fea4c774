//! Dense matrices over F_p and rank by Gaussian elimination.
//!
//! Odd characteristic uses `u32` residues; characteristic 2 packs rows into
//! `u64` words and eliminates with XOR.

use crate::error::{Error, Result};
use crate::prime::Prime;

/// Dense row-major matrix with entries reduced into `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpMatrix {
    p: Prime,
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
}

impl FpMatrix {
    pub fn zeros(p: Prime, rows: usize, cols: usize) -> Self {
        FpMatrix { p, rows, cols, entries: vec![0; rows * cols] }
    }

    pub fn identity(p: Prime, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Build from signed integer rows; entries are reduced mod p.
    pub fn from_rows(p: Prime, rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidInput("ragged matrix rows".into()));
        }
        let mut m = Self::zeros(p, r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v.rem_euclid(p.get() as i64) as u32);
            }
        }
        Ok(m)
    }

    pub fn p(&self) -> Prime {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.entries[i * self.cols + j] = v % self.p.get();
    }

    /// Add `v` to entry `(i, j)` modulo p.
    pub fn add_to(&mut self, i: usize, j: usize, v: u32) {
        let p = self.p.get() as u64;
        let slot = &mut self.entries[i * self.cols + j];
        *slot = ((*slot as u64 + v as u64) % p) as u32;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&v| v == 0)
    }

    pub fn mul(&self, other: &FpMatrix) -> Result<FpMatrix> {
        if self.p != other.p {
            return Err(Error::CharacteristicMismatch { left: self.p.get(), right: other.p.get() });
        }
        if self.cols != other.rows {
            return Err(Error::InvalidInput(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let p = self.p.get() as u64;
        let mut out = FpMatrix::zeros(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            let mut acc = vec![0u64; other.cols];
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                let row = &other.entries[k * other.cols..(k + 1) * other.cols];
                for (slot, &b) in acc.iter_mut().zip(row) {
                    *slot = (*slot + a * b as u64) % p;
                }
            }
            for (j, v) in acc.into_iter().enumerate() {
                out.entries[i * other.cols + j] = v as u32;
            }
        }
        Ok(out)
    }

    fn row_vecs(&self) -> Vec<Vec<u32>> {
        self.entries.chunks(self.cols.max(1)).take(self.rows).map(<[u32]>::to_vec).collect()
    }
}

/// Rank of `m` over F_p.
pub fn fp_rank(m: &FpMatrix) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    if m.p.get() == 2 {
        let words = m.cols.div_ceil(64);
        let rows = (0..m.rows)
            .map(|i| {
                let mut bits = vec![0u64; words];
                for j in 0..m.cols {
                    if m.get(i, j) != 0 {
                        bits[j / 64] |= 1 << (j % 64);
                    }
                }
                bits
            })
            .collect();
        rank_gf2(rows, m.cols)
    } else {
        rank_mod_p(m.row_vecs(), m.cols, m.p.get())
    }
}

/// Rank over GF(2) of bit-packed rows of width `cols`.
pub(crate) fn rank_gf2(mut rows: Vec<Vec<u64>>, cols: usize) -> usize {
    let mut rank = 0;
    for col in 0..cols {
        let (w, bit) = (col / 64, 1u64 << (col % 64));
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][w] & bit != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let pivot = std::mem::take(&mut rows[rank]);
        for row in rows.iter_mut().skip(rank + 1) {
            if row[w] & bit != 0 {
                for (a, b) in row[w..].iter_mut().zip(&pivot[w..]) {
                    *a ^= b;
                }
            }
        }
        rows[rank] = pivot;
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Rank over F_p (p odd or 2) of dense residue rows of width `cols`.
pub(crate) fn rank_mod_p(mut rows: Vec<Vec<u32>>, cols: usize, p: u32) -> usize {
    let pm = p as u64;
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = inv_mod(rows[rank][col] as u64, pm);
        let pivot: Vec<u64> = rows[rank].iter().map(|&v| v as u64 * inv % pm).collect();
        for row in rows.iter_mut().skip(rank + 1) {
            let f = row[col] as u64;
            if f == 0 {
                continue;
            }
            for (a, &b) in row[col..].iter_mut().zip(&pivot[col..]) {
                *a = ((*a as u64 + (pm - f) * b) % pm) as u32;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}
