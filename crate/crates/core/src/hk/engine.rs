use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use super::data::{associated_data, beta_for, find_parameters};
use crate::config;
use crate::error::{Error, Result};
use crate::prime::Prime;
use crate::rational::{pow_int, q_pow, qb, serde_q, Q};
use crate::ring::{alpha_product, big_d, cyclic_decompose, CyclicSpec, GammaElement};
use crate::sigma::{hk_char2, mu_delta, Variant};

/// Extra level computed to exercise the recursion when `p^e` stays below this.
const CHECK_LEVEL_Q_MAX: u64 = 49;
/// Levels used by the characteristic 2 geometric fit.
const SIGMA_LEVELS: u32 = 5;

/// Input to the multiplicity pipeline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Singularity {
    Quadric { variant: Variant, d: u32 },
    Diagonal(Vec<u32>),
}

impl Singularity {
    pub fn dimension(&self) -> u32 {
        match self {
            Singularity::Quadric { d, .. } => *d,
            Singularity::Diagonal(exps) => exps.len().saturating_sub(1) as u32,
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            Singularity::Quadric { d, .. } if *d < 2 => {
                Err(Error::InvalidInput(format!("quadric dimension must be at least 2, got {d}")))
            }
            Singularity::Diagonal(exps) if exps.len() < 2 || exps.iter().any(|&e| e < 2) => {
                Err(Error::InvalidInput("diagonal hypersurfaces need at least two exponents, all at least 2".into()))
            }
            _ => Ok(()),
        }
    }

    /// Exponents of the diagonal form, `(2,...,2)` or `(2,...,2,3)` for quadrics.
    pub fn exponents(&self) -> Vec<u32> {
        match self {
            Singularity::Quadric { variant: Variant::A1, d } => vec![2; *d as usize + 1],
            Singularity::Quadric { variant: Variant::A2, d } => {
                let mut v = vec![2; *d as usize];
                v.push(3);
                v
            }
            Singularity::Diagonal(exps) => exps.clone(),
        }
    }
}

impl fmt::Display for Singularity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Singularity::Quadric { variant, d } => write!(f, "{variant} d={d}"),
            Singularity::Diagonal(exps) => {
                let parts: Vec<String> = exps.iter().map(|e| e.to_string()).collect();
                write!(f, "diagonal {}", parts.join(","))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum HkPath {
    Algorithm,
    ClosedForm,
    SigmaEngine,
    PowerTrick,
    Oracle,
}

impl fmt::Display for HkPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Outcome of the multiplicity pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HkReport {
    pub p: Prime,
    pub d: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variant: Option<Variant>,
    pub exponents: Vec<u32>,
    pub n0: u32,
    pub mu: u32,
    #[serde(serialize_with = "ser_levels")]
    pub hk_values: BTreeMap<u32, BigInt>,
    #[serde(with = "serde_q")]
    pub ell_sharp: Q,
    #[serde(with = "serde_q")]
    pub ehk: Q,
    pub path: HkPath,
}

fn ser_levels<S: Serializer>(v: &BTreeMap<u32, BigInt>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_map(v.iter().map(|(e, h)| (e.to_string(), h.to_string())))
}

impl HkReport {
    /// `HK_{n0+kμ} = eHK·p^{d(n0+kμ)} - c1·(ℓ♯)^k` at every stored level,
    /// with `c1` fixed by `k = 0`.
    pub fn check_recursion(&self) -> bool {
        let Some(h0) = self.hk_values.get(&self.n0) else {
            return false;
        };
        let pd = qb(pow_int(self.p.get() as u64, self.d));
        let c1 = &self.ehk * q_pow(&pd, self.n0) - qb(h0.clone());
        self.hk_values.iter().filter(|(&e, _)| e >= self.n0 && (e - self.n0).is_multiple_of(self.mu)).all(|(&e, h)| {
            let k = (e - self.n0) / self.mu;
            &self.ehk * q_pow(&pd, e) - &c1 * q_pow(&self.ell_sharp, k) == qb(h.clone())
        })
    }
}

fn frobenius_q(p: Prime, e: u32) -> Result<u64> {
    p.checked_pow(e)
        .filter(|&q| q <= u32::MAX as u64)
        .ok_or_else(|| Error::InvalidInput(format!("{p}^{e} is too large")))
}

fn integral(x: Q) -> Result<BigInt> {
    if x.is_integer() {
        Ok(x.to_integer())
    } else {
        Err(Error::Inconsistent(format!("non-integral length {x}")))
    }
}

/// `HK_e = e_0⋯e_d · D(q/e_0, ..., q/e_d)`.
pub fn hk_diagonal(exponents: &[u32], p: Prime, e: u32) -> Result<BigInt> {
    if exponents.is_empty() || exponents.contains(&0) {
        return Err(Error::InvalidInput("exponents must be positive".into()));
    }
    let q = qb(BigInt::from(frobenius_q(p, e)?));
    let args: Vec<Q> = exponents.iter().map(|&x| &q / qb(BigInt::from(x))).collect();
    let scale: BigInt = exponents.iter().map(|&x| BigInt::from(x)).product();
    integral(qb(scale) * big_d(&args, p)?)
}

/// `HK_e` of `Q_d` (A1) or `P_d` (A2) from the factorization through the
/// monomial orbits of `xy` on `k[x,y]/(x^q, y^q)`.
pub fn hk_quadric(variant: Variant, d: u32, p: Prime, e: u32) -> Result<BigInt> {
    if d < 2 {
        return Err(Error::InvalidInput(format!("quadric dimension must be at least 2, got {d}")));
    }
    let q = frobenius_q(p, e)?;
    let m = d.div_ceil(2);
    let mu = mu_delta(p, q as u32);
    let square = cyclic_decompose(CyclicSpec { a: q, c: 2 }, p)?;
    let cube = cyclic_decompose(CyclicSpec { a: q, c: 3 }, p)?;
    let factors: Vec<GammaElement> = match (variant, d.is_multiple_of(2)) {
        (Variant::A1, true) => vec![mu.pow(m)?, square],
        (Variant::A1, false) => vec![mu.pow(m)?],
        (Variant::A2, true) => vec![mu.pow(m)?, cube],
        (Variant::A2, false) => vec![mu.pow(m - 1)?, square, cube],
    };
    integral(alpha_product(&factors, p)?)
}

/// `HK_e` for any supported input; characteristic 2 quadrics use σ-coordinates.
pub fn hk_function(spec: &Singularity, p: Prime, e: u32) -> Result<BigInt> {
    spec.validate()?;
    match spec {
        Singularity::Quadric { variant, d } if p.get() == 2 && e >= 1 => hk_char2(*variant, *d, e),
        Singularity::Quadric { variant, d } => hk_quadric(*variant, *d, p, e),
        Singularity::Diagonal(exps) => hk_diagonal(exps, p, e),
    }
}

/// `(HK_{n0+μ} - ℓ♯·HK_{n0}) / (p^{d(n0+μ)} - ℓ♯·p^{d·n0})`.
pub fn ehk_from_values(
    hk_n0: &BigInt,
    hk_n0mu: &BigInt,
    n0: u32,
    mu: u32,
    d: u32,
    p: Prime,
    ell_sharp: &Q,
) -> Result<Q> {
    let pd = qb(pow_int(p.get() as u64, d));
    let den = q_pow(&pd, n0 + mu) - ell_sharp * q_pow(&pd, n0);
    if den.is_zero() {
        return Err(Error::DegenerateDenominator);
    }
    Ok((qb(hk_n0mu.clone()) - ell_sharp * qb(hk_n0.clone())) / den)
}

/// eHK of `x_0^{e_0} + ... + x_{d-1}^{e_{d-1}} + x_d^{p^e}` as
/// `HK_e(lower) / p^{(n-1)e}`, n the number of lower variables.
pub fn ehk_power_trick(lower_exponents: &[u32], p: Prime, e: u32) -> Result<Q> {
    if lower_exponents.is_empty() || e == 0 {
        return Err(Error::InvalidInput("power trick needs lower exponents and e >= 1".into()));
    }
    let hk = hk_diagonal(lower_exponents, p, e)?;
    let n = lower_exponents.len() as u32;
    Ok(qb(hk) / qb(pow_int(p.get() as u64, (n - 1) * e)))
}

/// `α(λ_a^{d+1})` for A1 and `α(λ_a^d λ_b)` for A2, `a = ⌊p/2⌋`, `b = ⌊p/3⌋`,
/// computed through δ-products.
pub fn yoshida_ell_sharp(variant: Variant, d: u32, p: Prime) -> Result<Q> {
    let la = GammaElement::lambda(p, p.get() / 2);
    let x = match variant {
        Variant::A1 => la.pow(d + 1)?,
        Variant::A2 => la.pow(d)?.mul(&GammaElement::lambda(p, p.get() / 3))?,
    };
    Ok(x.alpha())
}

/// Fits `HK_e = C·p^{de} + c·ℓ^e` to consecutive stored levels and returns
/// `(C, ℓ)`. A vanishing correction reports `ℓ = 0`.
pub fn fit_geometric(values: &BTreeMap<u32, BigInt>, p: Prime, d: u32) -> Result<(Q, Q)> {
    let levels: Vec<(u32, Q)> = values.iter().map(|(&e, h)| (e, qb(h.clone()))).collect();
    if levels.len() < 3 || levels.windows(2).any(|w| w[1].0 != w[0].0 + 1) {
        return Err(Error::InvalidInput("geometric fit needs three consecutive levels".into()));
    }
    let pd = qb(pow_int(p.get() as u64, d));
    let diffs: Vec<Q> = levels.windows(2).map(|w| &w[1].1 - &pd * &w[0].1).collect();
    let (e0, h0) = &levels[0];
    if diffs.iter().all(Zero::is_zero) {
        return Ok((h0 / q_pow(&pd, *e0), Q::zero()));
    }
    if diffs[0].is_zero() {
        return Err(Error::Inconsistent("correction term vanishes at the first level only".into()));
    }
    let ell = &diffs[1] / &diffs[0];
    if diffs.windows(2).any(|w| w[1] != &ell * &w[0]) {
        return Err(Error::Inconsistent("HK values are not of the form C·p^{de} + c·ℓ^e".into()));
    }
    let den = q_pow(&pd, e0 + 1) - &ell * q_pow(&pd, *e0);
    if den.is_zero() {
        return Err(Error::DegenerateDenominator);
    }
    Ok(((&levels[1].1 - &ell * h0) / den, ell))
}

fn pure_power(x: u32, p: Prime) -> Option<u32> {
    let mut k = 0;
    let mut v = x;
    while v > 1 && v.is_multiple_of(p.get()) {
        v /= p.get();
        k += 1;
    }
    (v == 1 && k > 0).then_some(k)
}

/// Full pipeline: routes characteristic 2 quadrics to the σ-engine, inputs
/// with a pure `p`-power exponent to the power trick, and everything else to
/// the Han–Monsky algorithm.
pub fn ehk(spec: &Singularity, p: Prime) -> Result<HkReport> {
    spec.validate()?;
    let d = spec.dimension();
    let variant = match spec {
        Singularity::Quadric { variant, .. } => Some(*variant),
        Singularity::Diagonal(_) => None,
    };
    let exponents = spec.exponents();
    let report = |n0, mu, hk_values, ell_sharp, ehk, path| HkReport {
        p,
        d,
        variant,
        exponents: exponents.clone(),
        n0,
        mu,
        hk_values,
        ell_sharp,
        ehk,
        path,
    };

    if let (Some(v), 2) = (variant, p.get()) {
        let values = (1..=SIGMA_LEVELS).map(|e| Ok((e, hk_char2(v, d, e)?))).collect::<Result<BTreeMap<_, _>>>()?;
        let (c, ell) = fit_geometric(&values, p, d)?;
        return finish(report(1, 1, values, ell, c, HkPath::SigmaEngine));
    }

    if let Some(pos) = exponents.iter().rposition(|&x| pure_power(x, p).is_some()) {
        let k = pure_power(exponents[pos], p).expect("checked above");
        let mut lower = exponents.clone();
        lower.remove(pos);
        let value = ehk_power_trick(&lower, p, k)?;
        let mut values = BTreeMap::new();
        for e in k..=k + 1 {
            if e == k || frobenius_q(p, e)? <= CHECK_LEVEL_Q_MAX {
                values.insert(e, hk_diagonal(&exponents, p, e)?);
            }
        }
        return finish(report(k, 1, values, Q::zero(), value, HkPath::PowerTrick));
    }

    let (n0, mu) = find_parameters(&exponents, p, config::mu_cap())?;
    let data = associated_data(&beta_for(&exponents, p, n0), mu, p)?;
    if let Some(v) = variant {
        let applies = n0 == 0 && mu == 1 && (p.get() > 3 || (v == Variant::A1 && p.get() > 2));
        if applies && yoshida_ell_sharp(v, d, p)? != data.ell_sharp {
            return Err(Error::Inconsistent(format!("ℓ♯ disagrees for {spec} at p={p}")));
        }
    }
    let mut values = BTreeMap::new();
    values.insert(n0, hk_diagonal(&exponents, p, n0)?);
    values.insert(n0 + mu, hk_diagonal(&exponents, p, n0 + mu)?);
    let value = ehk_from_values(&values[&n0], &values[&(n0 + mu)], n0, mu, d, p, &data.ell_sharp)?;
    if frobenius_q(p, n0 + 2 * mu)? <= CHECK_LEVEL_Q_MAX {
        values.insert(n0 + 2 * mu, hk_diagonal(&exponents, p, n0 + 2 * mu)?);
    }
    finish(report(n0, mu, values, data.ell_sharp, value, HkPath::Algorithm))
}

fn finish(r: HkReport) -> Result<HkReport> {
    if r.check_recursion() {
        Ok(r)
    } else {
        let levels: Vec<String> = r.hk_values.keys().map(|e| e.to_string()).collect();
        Err(Error::Inconsistent(format!("recursion fails at levels {}", levels.join(","))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};

    fn p(n: u32) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn diagonal_examples() {
        assert_eq!(hk_diagonal(&[2, 2, 2, 2], p(3), 1).unwrap(), BigInt::from(35));
        assert_eq!(hk_diagonal(&[2, 2], p(2), 1).unwrap(), BigInt::from(4));
        assert_eq!(hk_diagonal(&[2, 2, 2], p(5), 0).unwrap(), BigInt::from(1));
    }

    #[test]
    fn quadric_examples() {
        assert_eq!(hk_quadric(Variant::A1, 3, p(2), 2).unwrap(), BigInt::from(84));
        assert_eq!(hk_quadric(Variant::A1, 3, p(3), 1).unwrap(), BigInt::from(35));
        assert_eq!(hk_quadric(Variant::A2, 2, p(2), 1).unwrap(), BigInt::from(6));
        for prime in [3u32, 5, 7] {
            for d in 2..=4 {
                let spec = Singularity::Quadric { variant: Variant::A2, d };
                assert_eq!(
                    hk_quadric(Variant::A2, d, p(prime), 1).unwrap(),
                    hk_diagonal(&spec.exponents(), p(prime), 1).unwrap()
                );
            }
        }
    }

    #[test]
    fn extraction_examples() {
        let b = BigInt::from;
        assert_eq!(ehk_from_values(&b(1), &b(35), 0, 1, 3, p(3), &qi(3)).unwrap(), q(4, 3));
        assert_eq!(ehk_from_values(&b(1), &b(165), 0, 1, 3, p(5), &qi(5)).unwrap(), q(4, 3));
        assert_eq!(ehk_from_values(&b(16), &b(128), 1, 1, 3, p(2), &qi(1)).unwrap(), qi(2));
        assert_eq!(ehk_from_values(&b(1), &b(8), 0, 1, 3, p(2), &qi(8)), Err(Error::DegenerateDenominator));
    }

    #[test]
    fn power_trick_examples() {
        assert_eq!(ehk_power_trick(&[2, 2, 2], p(3), 1).unwrap(), q(13, 9));
        assert_eq!(ehk_power_trick(&[2, 2], p(3), 1).unwrap(), q(5, 3));
        assert_eq!(ehk_power_trick(&[2, 2, 2, 2], p(3), 1).unwrap(), q(35, 27));
    }

    #[test]
    fn pipeline_examples() {
        let a1 = |d| Singularity::Quadric { variant: Variant::A1, d };
        let a2 = |d| Singularity::Quadric { variant: Variant::A2, d };
        let r = ehk(&a1(4), p(3)).unwrap();
        assert_eq!(r.ehk, q(23, 19));
        assert_eq!(r.path, HkPath::Algorithm);
        let s = ehk(&a2(3), p(5)).unwrap();
        assert!(s.ehk > q(4, 3));
        let c = ehk(&a1(3), p(2)).unwrap();
        assert_eq!((c.ehk.clone(), c.path), (q(4, 3), HkPath::SigmaEngine));
        let t = ehk(&a2(3), p(3)).unwrap();
        assert_eq!((t.ehk.clone(), t.path), (q(13, 9), HkPath::PowerTrick));
        assert!(t.hk_values.len() >= 2);
    }

    #[test]
    fn algorithm_and_power_trick_agree() {
        for d in 2..=4u32 {
            let spec = Singularity::Quadric { variant: Variant::A2, d };
            let exps = spec.exponents();
            let (n0, mu) = find_parameters(&exps, p(3), 8).unwrap();
            assert_eq!(n0, 1);
            let data = associated_data(&beta_for(&exps, p(3), n0), mu, p(3)).unwrap();
            let h0 = hk_diagonal(&exps, p(3), n0).unwrap();
            let h1 = hk_diagonal(&exps, p(3), n0 + mu).unwrap();
            let alg = ehk_from_values(&h0, &h1, n0, mu, d, p(3), &data.ell_sharp).unwrap();
            assert_eq!(alg, ehk(&spec, p(3)).unwrap().ehk);
        }
    }

    #[test]
    fn non_quadric_diagonal() {
        let r = ehk(&Singularity::Diagonal(vec![2, 2, 5]), p(7)).unwrap();
        assert_eq!(r.ehk, q(9, 5));
        assert_eq!(r.mu, 2);
    }

    #[test]
    fn geometric_fit_rejects_noise() {
        let values: BTreeMap<u32, BigInt> =
            [(1, 10), (2, 84), (3, 680), (4, 5000)].map(|(e, h)| (e, BigInt::from(h))).into();
        assert!(fit_geometric(&values, p(2), 3).is_err());
        let exact: BTreeMap<u32, BigInt> =
            [(1, 10), (2, 84), (3, 680), (4, 5456)].map(|(e, h)| (e, BigInt::from(h))).into();
        assert_eq!(fit_geometric(&exact, p(2), 3).unwrap(), (q(4, 3), qi(2)));
    }
}
