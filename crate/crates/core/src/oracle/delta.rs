//! Jordan type of `x + y` acting on `k[x]/(x^i) ⊗ k[y]/(y^j)`.
//!
//! The operator is homogeneous of degree one for the total-degree grading, so
//! `rank(T^k)` is a sum of ranks of the maps between graded pieces. Most of
//! those pieces have full rank by a unit-triangular minor; only maps from a
//! low source degree into a high target degree need elimination. Those
//! blocks depend on `k` only through `k mod P` (Lucas), where `P` is the
//! least power of p that is at least the smaller side, which makes them
//! cacheable across `j`.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use super::jordan::{jordan_partition, JordanPartition};
use super::matrix::{rank_gf2, rank_mod_p, FpMatrix};
use crate::config;
use crate::error::{Error, Result};
use crate::prime::Prime;
use crate::ring::GammaElement;

type BlockKey = (u32, u32, u32, u32, u64);

fn block_cache() -> &'static RwLock<HashMap<BlockKey, u32>> {
    static CACHE: OnceLock<RwLock<HashMap<BlockKey, u32>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Number of cached block ranks.
pub fn block_cache_len() -> usize {
    block_cache().read().map(|c| c.len()).unwrap_or(0)
}

/// `C(n, r) mod p` by Lucas' theorem.
pub fn binom_mod_p(mut n: u64, mut r: u64, p: u32) -> u32 {
    let pm = p as u64;
    let mut acc = 1u64;
    while r > 0 {
        let (ni, ri) = (n % pm, r % pm);
        if ri > ni {
            return 0;
        }
        acc = acc * small_binom(ni, ri, pm) % pm;
        n /= pm;
        r /= pm;
    }
    acc as u32
}

fn small_binom(n: u64, r: u64, p: u64) -> u64 {
    let r = r.min(n - r);
    let (mut num, mut den) = (1u64, 1u64);
    for i in 0..r {
        num = num * ((n - i) % p) % p;
        den = den * ((i + 1) % p) % p;
    }
    num * super::matrix::inv_mod(den, p) % p
}

/// `rank(T^k)` for `k = 0..=i+j-1` by the graded method.
pub fn delta_product_ranks(i: u32, j: u32, p: Prime) -> Vec<u64> {
    let (a, b) = if i <= j { (i as i64, j as i64) } else { (j as i64, i as i64) };
    let top = a + b - 2;
    let h = |n: i64| -> i64 {
        if n < 0 || n > top {
            0
        } else {
            (a - 1).min(n) - 0.max(n - b + 1) + 1
        }
    };
    let big_p = p.power_at_least(a as u64);
    let cache_blocks = b as u64 > 2 * big_p;
    let mut ranks = vec![(a * b) as u64];
    for k in 1..=top {
        let full: i64 = (0..=top - k).map(|n| h(n).min(h(n + k))).sum();
        let mut deficit = 0i64;
        let lo = 0.max(b - k);
        let hi = (a - 2).min(top - k);
        if lo <= hi {
            let row: Vec<u32> = (0..a as u64).map(|r| binom_mod_p(k as u64, r, p.get())).collect();
            for n in lo..=hi {
                let o = n + k - b + 1;
                let nrows = a - o;
                let ncols = n + 1;
                let want = nrows.min(ncols);
                let key = (p.get(), a as u32, n as u32, o as u32, k as u64 % big_p);
                let cached =
                    if cache_blocks { block_cache().read().ok().and_then(|c| c.get(&key).copied()) } else { None };
                let r = match cached {
                    Some(r) => r as i64,
                    None => {
                        let r = lower_upper_rank(&row, p.get(), a, n, o);
                        if cache_blocks {
                            if let Ok(mut c) = block_cache().write() {
                                c.entry(key).or_insert(r as u32);
                            }
                        }
                        r
                    }
                };
                deficit += want - r;
            }
        }
        ranks.push((full - deficit) as u64);
    }
    ranks.push(0);
    ranks
}

// Rows α' in [o, a-1], columns α in [0, n], entry C(k, α'-α).
fn lower_upper_rank(binom: &[u32], p: u32, a: i64, n: i64, o: i64) -> i64 {
    let ncols = (n + 1) as usize;
    if p == 2 {
        let words = ncols.div_ceil(64);
        let rows = (o..a)
            .map(|ap| {
                let mut bits = vec![0u64; words];
                for al in 0..=n.min(ap) {
                    if binom[(ap - al) as usize] != 0 {
                        bits[al as usize / 64] |= 1 << (al as usize % 64);
                    }
                }
                bits
            })
            .collect();
        rank_gf2(rows, ncols) as i64
    } else {
        let rows =
            (o..a).map(|ap| (0..=n).map(|al| if al <= ap { binom[(ap - al) as usize] } else { 0 }).collect()).collect();
        rank_mod_p(rows, ncols, p) as i64
    }
}

/// Jordan type of `x + y` on `k[x,y]/(x^i, y^j)` by the graded method.
pub fn delta_product_partition(i: u32, j: u32, p: Prime) -> Result<JordanPartition> {
    if i == 0 || j == 0 {
        return Err(Error::InvalidInput("δ indices must be at least 1".into()));
    }
    let requested = i as u64 * j as u64;
    let limit = config::delta_limit();
    if requested > limit {
        return Err(Error::SizeLimit { requested, limit });
    }
    if i.min(j) == 1 {
        return Ok(JordanPartition::new(vec![i.max(j)]));
    }
    let part = JordanPartition::from_ranks(&delta_product_ranks(i, j, p));
    debug_assert_eq!(part.dimension(), requested);
    Ok(part)
}

/// Matrix of multiplication by `x + y` on `k[x,y]/(x^i, y^j)`, basis `x^α y^β`
/// at index `α*j + β`.
pub fn x_plus_y_matrix(i: u32, j: u32, p: Prime) -> FpMatrix {
    let (i, j) = (i as usize, j as usize);
    let mut m = FpMatrix::zeros(p, i * j, i * j);
    for al in 0..i {
        for be in 0..j {
            let col = al * j + be;
            if al + 1 < i {
                m.add_to((al + 1) * j + be, col, 1);
            }
            if be + 1 < j {
                m.add_to(al * j + be + 1, col, 1);
            }
        }
    }
    m
}

/// Jordan type of `x + y` from the full dense matrix.
pub fn delta_product_dense(i: u32, j: u32, p: Prime) -> Result<JordanPartition> {
    if i == 0 || j == 0 {
        return Err(Error::InvalidInput("δ indices must be at least 1".into()));
    }
    let requested = i as u64 * j as u64;
    let limit = config::size_limit();
    if requested > limit {
        return Err(Error::SizeLimit { requested, limit });
    }
    jordan_partition(&x_plus_y_matrix(i, j, p))
}

/// `δ_i · δ_j` as a δ-vector, computed from the Jordan type of `x + y`.
pub fn delta_product_oracle(i: u32, j: u32, p: Prime) -> Result<GammaElement> {
    let part = delta_product_partition(i, j, p)?;
    let out = GammaElement::from_partition(p, &part);
    if out.dimension() != Some(i as u64 * j as u64) {
        return Err(Error::InvalidInput(format!("dimension check failed for δ_{i}·δ_{j}")));
    }
    Ok(out)
}
