use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::element::{Basis, GammaElement};
use crate::error::{Error, Result};
use crate::prime::Prime;
use crate::rational::{floor_frac, qi, Q};

/// The k-object `k[x]/(x^a)` with `T` acting as multiplication by `x^c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicSpec {
    pub a: u64,
    pub c: u64,
}

/// `(c - r)δ_k + rδ_{k+1}` where `a = ck + r`.
pub fn cyclic_decompose(spec: CyclicSpec, p: Prime) -> Result<GammaElement> {
    let CyclicSpec { a, c } = spec;
    if a < 1 || c < 1 {
        return Err(Error::InvalidInput(format!("cyclic spec needs a, c >= 1 (got a={a}, c={c})")));
    }
    let (k, r) = (a / c, a % c);
    let idx = |v: u64| u32::try_from(v).map_err(|_| Error::InvalidInput("index too large".into()));
    Ok(GammaElement::from_coeffs(p, Basis::Delta, [(idx(k)?, qi((c - r) as i64)), (idx(k + 1)?, qi(r as i64))]))
}

/// `δ_a = (1 - z)δ_r + zδ_{r+1}` for `a = r + z`, `0 <= z < 1`.
pub fn delta_fractional(a: &Q, p: Prime) -> Result<GammaElement> {
    if a.is_negative() {
        return Err(Error::InvalidInput(format!("δ_a needs a >= 0, got {a}")));
    }
    let (r, z) = floor_frac(a);
    let r = r.to_u32().ok_or_else(|| Error::InvalidInput("index too large".into()))?;
    Ok(GammaElement::from_coeffs(p, Basis::Delta, [(r, Q::one() - &z), (r + 1, z)]))
}

/// Product of a list of elements; the empty product is `δ_1`.
pub fn product(factors: &[GammaElement], p: Prime) -> Result<GammaElement> {
    let mut acc = GammaElement::one(p);
    for f in factors {
        acc = acc.mul(f)?;
    }
    Ok(acc)
}

/// `α(Π x_i)`, splitting the factors in two halves and pairing the partial
/// products with `α(δ_k δ_l) = min(k, l)`.
pub fn alpha_product(factors: &[GammaElement], p: Prime) -> Result<Q> {
    if factors.len() < 2 {
        return Ok(product(factors, p)?.alpha());
    }
    let (left, right) = factors.split_at(factors.len() / 2);
    let (a, b) = (product(left, p)?.to_delta(), product(right, p)?.to_delta());
    // Σ_l b_l min(k, l) = Σ_{l <= k} l·b_l + k·Σ_{l > k} b_l
    let total: Q = b.coeffs().values().sum();
    let bs: Vec<(u32, &Q)> = b.coeffs().iter().map(|(&l, c)| (l, c)).collect();
    let (mut pos, mut weighted, mut below) = (0, Q::zero(), Q::zero());
    let mut out = Q::zero();
    for (&k, ak) in a.coeffs() {
        while pos < bs.len() && bs[pos].0 <= k {
            weighted += qi(bs[pos].0 as i64) * bs[pos].1;
            below += bs[pos].1;
            pos += 1;
        }
        out += ak * (&weighted + qi(k as i64) * (&total - &below));
    }
    Ok(out)
}

/// `D(a_1, ..., a_s) = α(Π δ_{a_i})`.
pub fn big_d(args: &[Q], p: Prime) -> Result<Q> {
    let factors = args.iter().map(|a| delta_fractional(a, p)).collect::<Result<Vec<_>>>()?;
    alpha_product(&factors, p)
}

/// `ℓ(b_1, ..., b_s) = α(Π λ_{b_i})`.
pub fn ell(args: &[u32], p: Prime) -> Result<Q> {
    let factors: Vec<GammaElement> = args.iter().filter(|&&b| b != 0).map(|&b| GammaElement::lambda(p, b)).collect();
    if factors.is_empty() {
        return Ok(Q::one());
    }
    // structural rules first, paired δ-products otherwise
    let mut acc = GammaElement::one(p).to_lambda();
    for f in &factors {
        acc = match acc.mul_structural(f) {
            Ok(v) => v,
            Err(Error::NotReducible { .. }) => return alpha_product(&factors, p),
            Err(e) => return Err(e),
        };
    }
    Ok(acc.alpha())
}
