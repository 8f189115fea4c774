//! Hilbert–Kunz values straight from the definition.
//!
//! `HK_e = q^n - rank(M_f)` where `M_f` is multiplication by `f` on
//! `k[x_0..x_{n-1}]/(x_i^q)`. Any integer weight vector that gives every
//! term of `f` the same weight makes `M_f` block diagonal, so the rank is a
//! sum over weight classes. Weights are taken from the rational kernel of
//! the exponent differences.

use std::collections::HashMap;

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::matrix::rank_mod_p;
use super::poly::PolySpec;
use crate::config;
use crate::error::{Error, Result};
use crate::rational::{qi, Q};

/// Integer basis of `{w : w·(e_t - e_0) = 0 for all terms t}`.
fn weight_basis(f: &PolySpec) -> Vec<Vec<i64>> {
    let n = f.nvars;
    let mut rows: Vec<Vec<Q>> = f
        .terms
        .iter()
        .skip(1)
        .map(|(_, ex)| (0..n).map(|i| qi(ex[i] as i64 - f.terms[0].1[i] as i64)).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(piv) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = rows[r][c].recip();
        for v in rows[r].iter_mut() {
            *v = &*v * &inv;
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let fct = row[c].clone();
                for (a, b) in row.iter_mut().zip(&pivot) {
                    *a = &*a - &fct * b;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![Q::zero(); n];
            v[fc] = Q::one();
            for (ri, &pc) in pivots.iter().enumerate() {
                v[pc] = -rows[ri][fc].clone();
            }
            let lcm = v.iter().fold(num_bigint::BigInt::one(), |acc, x| acc.lcm(x.denom()));
            v.iter().map(|x| (x * Q::from_integer(lcm.clone())).to_integer().to_i64().unwrap_or(0)).collect()
        })
        .collect()
}

/// `HK_e` of the hypersurface `f`, by rank of multiplication by `f`.
pub fn direct_hk(f: &PolySpec, e: u32) -> Result<u64> {
    direct_hk_with_limit(f, e, config::size_limit())
}

pub fn direct_hk_with_limit(f: &PolySpec, e: u32, limit: u64) -> Result<u64> {
    if e == 0 {
        return Err(Error::InvalidInput("Frobenius level e must be at least 1".into()));
    }
    let n = f.nvars;
    let q = f.p.checked_pow(e).ok_or(Error::SizeLimit { requested: u64::MAX, limit })?;
    let total = (q as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if total > limit as u128 {
        return Err(Error::SizeLimit { requested: total.min(u64::MAX as u128) as u64, limit });
    }
    let total = total as usize;
    let terms: Vec<(u32, Vec<u32>)> =
        f.terms.iter().filter(|(_, ex)| ex.iter().all(|&x| (x as u64) < q)).cloned().collect();
    if terms.is_empty() {
        return Ok(total as u64);
    }
    let reduced = PolySpec { p: f.p, nvars: n, terms: terms.clone(), low_degree: f.low_degree };
    let weights = weight_basis(&reduced);
    let shift: Vec<i64> = weights.iter().map(|w| w.iter().zip(&terms[0].1).map(|(a, &b)| a * b as i64).sum()).collect();

    let q = q as usize;
    let decode = |mut idx: usize, out: &mut [u32]| {
        for slot in out.iter_mut().rev() {
            *slot = (idx % q) as u32;
            idx /= q;
        }
    };
    let encode = |ex: &[u32]| ex.iter().fold(0usize, |acc, &x| acc * q + x as usize);

    let mut classes: HashMap<Vec<i64>, Vec<usize>> = HashMap::new();
    let mut ex = vec![0u32; n];
    for idx in 0..total {
        decode(idx, &mut ex);
        let key: Vec<i64> = weights.iter().map(|w| w.iter().zip(&ex).map(|(a, &b)| a * b as i64).sum()).collect();
        classes.entry(key).or_default().push(idx);
    }

    let mut rank = 0usize;
    let mut target_ex = vec![0u32; n];
    for (key, cols) in &classes {
        let tkey: Vec<i64> = key.iter().zip(&shift).map(|(a, b)| a + b).collect();
        let Some(rows) = classes.get(&tkey) else {
            continue;
        };
        let row_of: HashMap<usize, usize> = rows.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        // transpose: one vector per source monomial, rank is unchanged
        let mut mat = vec![vec![0u32; rows.len()]; cols.len()];
        for (ci, &m) in cols.iter().enumerate() {
            decode(m, &mut ex);
            for (c, t) in &terms {
                let mut inside = true;
                for i in 0..n {
                    target_ex[i] = ex[i] + t[i];
                    if target_ex[i] as usize >= q {
                        inside = false;
                        break;
                    }
                }
                if inside {
                    if let Some(&ri) = row_of.get(&encode(&target_ex)) {
                        let slot = &mut mat[ci][ri];
                        *slot = (*slot + c) % f.p.get();
                    }
                }
            }
        }
        rank += rank_mod_p(mat, rows.len(), f.p.get());
    }
    Ok((total - rank) as u64)
}
