use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::Zero;

use super::digits::delta_blocks;
use super::element::{Basis, GammaElement};
use crate::error::{Error, Result};
use crate::prime::Prime;
use crate::rational::{qi, Q};

type Blocks = Arc<Vec<(u32, u64)>>;
type ProductCache = RwLock<HashMap<(u32, u32, u32), Blocks>>;

fn product_cache() -> &'static ProductCache {
    static CACHE: OnceLock<ProductCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Number of memoized δ-products.
pub fn product_cache_len() -> usize {
    product_cache().read().map(|c| c.len()).unwrap_or(0)
}

/// `δ_i·δ_j` as (block size, multiplicity) pairs, memoized per `(p, i, j)`.
pub fn delta_pair(p: Prime, i: u32, j: u32) -> Result<Blocks> {
    let key = (p.get(), i.min(j), i.max(j));
    if let Some(hit) = product_cache().read().ok().and_then(|c| c.get(&key).cloned()) {
        return Ok(hit);
    }
    let blocks: Blocks = Arc::new(delta_blocks(p, key.1, key.2)?);
    let mut cache = product_cache().write().map_err(|_| Error::Unsupported("poisoned cache".into()))?;
    Ok(cache.entry(key).or_insert(blocks).clone())
}

impl GammaElement {
    /// Product in Γ, computed in the δ-basis from Jordan types of `x + y`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.p() != other.p() {
            return Err(Error::CharacteristicMismatch { left: self.p().get(), right: other.p().get() });
        }
        let p = self.p();
        let (x, y) = (self.to_delta(), other.to_delta());
        let mut acc: HashMap<u32, Q> = HashMap::new();
        for (&i, ci) in x.coeffs() {
            for (&j, cj) in y.coeffs() {
                let c = ci * cj;
                for &(k, m) in delta_pair(p, i, j)?.iter() {
                    *acc.entry(k).or_insert_with(Q::zero) += &c * qi(m as i64);
                }
            }
        }
        Ok(GammaElement::from_coeffs(p, Basis::Delta, acc))
    }

    /// `self^n`, with `self^0 = δ_1`.
    pub fn pow(&self, n: u32) -> Result<Self> {
        let mut out = GammaElement::one(self.p());
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                out = out.mul(&base)?;
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(out)
    }

    /// Product by the closed-form multiplication rules for the λ-basis.
    ///
    /// Covers characteristic 2 completely, pairs inside Λ_1 for odd p, and
    /// pairs of the form `λ_i λ_{qj}` or `λ_i λ_{qj-1}` with `i < q = p^n`.
    pub fn mul_structural(&self, other: &Self) -> Result<Self> {
        if self.p() != other.p() {
            return Err(Error::CharacteristicMismatch { left: self.p().get(), right: other.p().get() });
        }
        let p = self.p();
        let (x, y) = (self.to_lambda(), other.to_lambda());
        let mut out = GammaElement::zero(p, Basis::Lambda);
        for (&i, ci) in x.coeffs() {
            for (&j, cj) in y.coeffs() {
                let c = ci * cj;
                for k in lambda_pair(p, i, j)? {
                    out.add_term(k, c.clone());
                }
            }
        }
        Ok(out)
    }
}

/// Indices k with `λ_i λ_j = Σ λ_k`, when a closed-form rule applies.
pub fn lambda_pair(p: Prime, i: u32, j: u32) -> Result<Vec<u32>> {
    let (i, j) = (i.min(j), i.max(j));
    if i == 0 {
        return Ok(vec![j]);
    }
    let pp = p.get();
    if pp == 2 {
        return Ok(vec![i ^ j]);
    }
    if j < pp {
        let hi = (i + j).min(2 * pp - 2 - i - j);
        return Ok((j - i..=hi).collect());
    }
    let mut q = pp as u64;
    while q <= j as u64 + 1 {
        if (i as u64) < q {
            if (j as u64).is_multiple_of(q) {
                return Ok(vec![j + i]);
            }
            if (j as u64 + 1).is_multiple_of(q) {
                return Ok(vec![j - i]);
            }
        }
        q *= pp as u64;
    }
    Err(Error::NotReducible { i, j })
}
