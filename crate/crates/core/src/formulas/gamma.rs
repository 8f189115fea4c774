use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::prime::Prime;
use crate::rational::{pow_int, q, qb, qi, Q};
use crate::report::Report;
use crate::ring::{delta_fractional, GammaElement};

/// Coefficients of `γ^d = Σ (-1)^i a_i λ_i`, `γ = (k[x]/(x^p), x^2)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GammaCoeffs {
    pub p: Prime,
    pub d: u32,
    #[serde(skip)]
    pub a: Vec<Q>,
}

impl GammaCoeffs {
    pub fn get(&self, i: usize) -> &Q {
        &self.a[i]
    }

    /// `a = (p-1)/2`.
    pub fn half(&self) -> usize {
        (self.p.get() as usize - 1) / 2
    }
}

fn require_odd(p: Prime) -> Result<()> {
    if p.get() == 2 {
        Err(Error::InvalidInput("γ-coefficients need odd p".into()))
    } else {
        Ok(())
    }
}

/// `γ = 2δ_{p/2}`.
pub fn gamma(p: Prime) -> Result<GammaElement> {
    require_odd(p)?;
    Ok(delta_fractional(&q(p.get() as i64, 2), p)?.scale(&qi(2)))
}

/// `η = 3δ_{p/3}`.
pub fn eta(p: Prime) -> Result<GammaElement> {
    Ok(delta_fractional(&q(p.get() as i64, 3), p)?.scale(&qi(3)))
}

pub fn gamma_coeffs(p: Prime, d: u32) -> Result<GammaCoeffs> {
    if d == 0 {
        return Err(Error::InvalidInput("γ-powers start at d = 1".into()));
    }
    let x = gamma(p)?.pow(d)?.to_lambda();
    if x.max_index().is_some_and(|m| m >= p.get()) {
        return Err(Error::Inconsistent(format!("γ^{d} left Λ_1")));
    }
    let a = (0..p.get()).map(|i| if i % 2 == 0 { x.coeff(i) } else { -x.coeff(i) }).collect();
    Ok(GammaCoeffs { p, d, a })
}

pub(crate) fn p_pow(p: Prime, k: u32) -> Q {
    qb(pow_int(p.get() as u64, k))
}

/// `a_{a-k}^{(d)} - p^{d-1} = 2 Σ_{r=0}^{k-1} (a_r^{(d-1)} - p^{d-2})` for `1 <= k <= a`.
pub fn recursion_rhs(prev: &GammaCoeffs, k: usize) -> Q {
    let pd2 = p_pow(prev.p, prev.d - 1);
    qi(2) * (0..k).map(|r| prev.get(r) - &pd2).sum::<Q>()
}

/// Reflection, `a_a = p^{d-1}`, the product `γ^d(λ_{p-1} + λ_0) = 2p^{d-1}δ_p`,
/// monotonicity, the recursion between consecutive powers and
/// `γ^d - p^{d-1}δ_p = 2^{d-1}(γ - δ_p)δ_a^{d-1}`, for `1 <= d <= d_max`.
pub fn check_gamma_identities(p: Prime, d_max: u32) -> Result<Report> {
    require_odd(p)?;
    let pp = p.get();
    let half = (pp as usize - 1) / 2;
    let g = gamma(p)?;
    let delta_p = GammaElement::delta(p, pp);
    let ends = GammaElement::lambda(p, pp - 1).add(&GammaElement::lambda(p, 0))?;
    let mut report = Report::new();
    let mut prev: Option<GammaCoeffs> = None;
    for d in 1..=d_max {
        let c = gamma_coeffs(p, d)?;
        let pd1 = p_pow(p, d - 1);
        let tag = |what: &str| format!("p={pp} d={d} {what}");
        report.check(tag("nonnegative"), c.a.iter().all(|x| x >= &Q::zero()), "");
        report.check(tag("middle"), c.get(half) == &pd1, format!("a_a = {}", c.get(half)));
        let bad = (0..pp as usize).find(|&i| c.get(i) + c.get(pp as usize - 1 - i) != qi(2) * &pd1);
        report.check(tag("reflection"), bad.is_none(), bad.map(|i| format!("fails at i={i}")).unwrap_or_default());
        let lhs = g.pow(d)?.mul(&ends)?;
        report.check(tag("product with λ_{p-1} + λ_0"), lhs == delta_p.scale(&(qi(2) * &pd1)), lhs.render());
        let strict = d >= 2;
        let mono = (0..half).all(|i| if strict { c.get(i) > c.get(i + 1) } else { c.get(i) >= c.get(i + 1) });
        report.check(tag(if strict { "strictly decreasing" } else { "decreasing" }), mono, "");
        let delta_a = GammaElement::delta(p, half as u32);
        let rhs = g.sub(&delta_p)?.mul(&delta_a.pow(d - 1)?)?.scale(&qb(pow_int(2, d - 1)));
        report.check(tag("closed recursion"), g.pow(d)?.sub(&delta_p.scale(&pd1))? == rhs, "");
        if let Some(prev) = &prev {
            let bad = (1..=half).find(|&k| c.get(half - k) - &pd1 != recursion_rhs(prev, k));
            report.check(tag("recursion"), bad.is_none(), bad.map(|k| format!("fails at k={k}")).unwrap_or_default());
        }
        prev = Some(c);
    }
    Ok(report)
}

/// `(HK_1(R_{p,d}), HK_1(S_{p,d}))` from the coefficients of `γ^d`.
pub fn hk1_identities(p: Prime, d: u32) -> Result<(BigInt, BigInt)> {
    let pp = p.get() as usize;
    if pp <= 3 || d < 1 {
        return Err(Error::InvalidInput("HK_1 identities need p > 3 and d >= 1".into()));
    }
    let c = gamma_coeffs(p, d)?;
    let (a, b, rest) = (c.half(), pp / 3, pp % 3);
    let r: Q = qi(2) * (0..a).map(|i| c.get(i).clone()).sum::<Q>() + c.get(a);
    let s: Q = qi(3) * (0..b).map(|i| c.get(i).clone()).sum::<Q>() + qi(rest as i64) * c.get(b);
    Ok((r.to_integer(), s.to_integer()))
}

/// The same values as sums over floors: `Σ_{k=1}^p a_{⌊(k+1)/2⌋-1}` and
/// `Σ_{k=1}^p a_{⌊(k+2)/3⌋-1}`.
pub fn hk1_floor_sums(p: Prime, d: u32) -> Result<(BigInt, BigInt)> {
    let c = gamma_coeffs(p, d)?;
    let pp = p.get() as usize;
    let r: Q = (1..=pp).map(|k| c.get(k.div_ceil(2) - 1).clone()).sum();
    let s: Q = (1..=pp).map(|k| c.get(k.div_ceil(3) - 1).clone()).sum();
    Ok((r.to_integer(), s.to_integer()))
}
