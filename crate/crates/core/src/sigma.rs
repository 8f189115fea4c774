//! Characteristic 2: the σ-basis of `Λ_e ⊗ Q`.
//!
//! `σ_{k,e} = 2^{-e} Σ_i (-1)^{<i,k>} λ_i` are orthogonal idempotents, so
//! products are pointwise on σ-coordinates and `α` is the coordinate sum
//! divided by `2^e`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::config;
use crate::error::{Error, Result};
use crate::prime::Prime;
use crate::rational::{fmt_combination, pow_int, qb, qi, Q};
use crate::ring::{Basis, GammaElement};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    LambdaToSigma,
    SigmaToLambda,
}

/// The two quadric families: A1 is `Q_d`, A2 is `P_d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    A1,
    A2,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::A1 => "A1",
            Variant::A2 => "A2",
        })
    }
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "A1" => Ok(Variant::A1),
            "A2" => Ok(Variant::A2),
            _ => Err(Error::InvalidInput(format!("unknown singularity {s:?} (expected A1 or A2)"))),
        }
    }
}

/// Signed Hadamard transform. λ→σ is unscaled, σ→λ carries `2^{-e}`.
pub fn walsh(v: &[Q], direction: Direction) -> Result<Vec<Q>> {
    let n = v.len();
    if n == 0 || !n.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(n));
    }
    let mut out = v.to_vec();
    let mut h = 1;
    while h < n {
        for block in (0..n).step_by(2 * h) {
            for i in block..block + h {
                let a = out[i].clone();
                let b = out[i + h].clone();
                out[i] = &a + &b;
                out[i + h] = a - b;
            }
        }
        h *= 2;
    }
    if direction == Direction::SigmaToLambda {
        let s = Q::new(BigInt::one(), BigInt::from(n));
        for x in out.iter_mut() {
            *x = &*x * &s;
        }
    }
    Ok(out)
}

/// An element of `Λ_e ⊗ Q` in σ-coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaVector {
    e: u32,
    coeffs: Vec<Q>,
}

fn check_level(e: u32) -> Result<()> {
    let cap = config::sigma_level_cap();
    if e == 0 || e > cap {
        return Err(Error::InvalidInput(format!("σ level must be in 1..={cap}, got {e}")));
    }
    Ok(())
}

impl SigmaVector {
    pub fn new(e: u32, coeffs: Vec<Q>) -> Result<Self> {
        check_level(e)?;
        if coeffs.len() != 1 << e {
            return Err(Error::InvalidInput(format!(
                "level {e} needs {} coordinates, got {}",
                1u64 << e,
                coeffs.len()
            )));
        }
        Ok(SigmaVector { e, coeffs })
    }

    pub fn from_ints(e: u32, coeffs: &[i64]) -> Result<Self> {
        Self::new(e, coeffs.iter().map(|&c| qi(c)).collect())
    }

    /// `σ_{k,e}`.
    pub fn basis(k: usize, e: u32) -> Result<Self> {
        check_level(e)?;
        let mut coeffs = vec![Q::zero(); 1 << e];
        *coeffs.get_mut(k).ok_or_else(|| Error::InvalidInput(format!("σ index {k} out of range")))? = Q::one();
        Ok(SigmaVector { e, coeffs })
    }

    /// σ-coordinates of a characteristic-2 element lying in `Λ_e`.
    pub fn from_gamma(x: &GammaElement, e: u32) -> Result<Self> {
        check_level(e)?;
        if x.p().get() != 2 {
            return Err(Error::CharacteristicMismatch { left: x.p().get(), right: 2 });
        }
        let l = x.to_lambda();
        let n = 1usize << e;
        let mut v = vec![Q::zero(); n];
        for (&i, c) in l.coeffs() {
            if i as usize >= n {
                return Err(Error::InvalidInput(format!("λ_{i} is not in Λ_{e}")));
            }
            v[i as usize] = c.clone();
        }
        Self::new(e, walsh(&v, Direction::LambdaToSigma)?)
    }

    /// The element in the λ-basis.
    pub fn to_gamma(&self) -> GammaElement {
        let two = Prime::new(2).expect("2 is prime");
        let l = walsh(&self.coeffs, Direction::SigmaToLambda).expect("length is 2^e");
        GammaElement::from_coeffs(two, Basis::Lambda, l.into_iter().enumerate().map(|(i, c)| (i as u32, c)))
    }

    pub fn level(&self) -> u32 {
        self.e
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &Q {
        &self.coeffs[k]
    }

    /// `α = 2^{-e} Σ_k coeffs[k]`.
    pub fn alpha(&self) -> Q {
        let s: Q = self.coeffs.iter().sum();
        s / qb(pow_int(2, self.e))
    }

    pub fn scale(&self, s: &Q) -> Self {
        SigmaVector { e: self.e, coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.e != other.e {
            return Err(Error::LevelMismatch(self.e, other.e));
        }
        Ok(SigmaVector { e: self.e, coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() })
    }

    /// Pointwise product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.e != other.e {
            return Err(Error::LevelMismatch(self.e, other.e));
        }
        Ok(SigmaVector { e: self.e, coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a * b).collect() })
    }

    pub fn pow(&self, n: u32) -> Self {
        SigmaVector { e: self.e, coeffs: self.coeffs.iter().map(|c| num_traits::pow(c.clone(), n as usize)).collect() }
    }

    /// Same element at level `e' >= e`: `new[k'] = old[k' mod 2^e]`.
    pub fn lift_level(&self, e2: u32) -> Result<Self> {
        if e2 < self.e {
            return Err(Error::LevelMismatch(self.e, e2));
        }
        check_level(e2)?;
        let m = self.coeffs.len();
        Ok(SigmaVector { e: e2, coeffs: (0..1usize << e2).map(|k| self.coeffs[k % m].clone()).collect() })
    }

    /// Render as `2*s[0,1] + 4*s[1,1]`.
    pub fn render(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for SigmaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = self.e;
        f.write_str(&fmt_combination(self.coeffs.iter().enumerate().map(|(k, c)| (format!("s[{k},{e}]"), c))))
    }
}

/// `μ_e = 2^e(σ_0 + 2^e σ_1 + Σ_{k=1}^{e-1} 2^k σ_{2^k+1})`.
pub fn mu(e: u32) -> Result<SigmaVector> {
    check_level(e)?;
    let mut coeffs = vec![Q::zero(); 1 << e];
    coeffs[0] = Q::one();
    coeffs[1] = qb(pow_int(2, e));
    for k in 1..e {
        coeffs[(1usize << k) + 1] = qb(pow_int(2, k));
    }
    Ok(SigmaVector::new(e, coeffs)?.scale(&qb(pow_int(2, e))))
}

/// `ξ_e = 3δ_{2^e/3}` in σ-coordinates.
pub fn xi(e: u32) -> Result<SigmaVector> {
    check_level(e)?;
    let two = Prime::new(2).expect("2 is prime");
    let x = crate::ring::delta_fractional(&Q::new(pow_int(2, e), BigInt::from(3)), two)?.scale(&qi(3));
    SigmaVector::from_gamma(&x, e)
}

/// `(λ_0 + λ_{2^{e-1}})μ_{e-1} + 2^{2e-1}σ_{1,e-1}`, for `e >= 2`.
pub fn mu_step(e: u32) -> Result<SigmaVector> {
    if e < 2 {
        return Err(Error::InvalidInput("the μ recursion starts at e = 2".into()));
    }
    let two = Prime::new(2).expect("2 is prime");
    let factor = GammaElement::lambda(two, 0).add(&GammaElement::lambda(two, 1 << (e - 1)))?;
    let corr = SigmaVector::basis(1, e - 1)?.scale(&qb(pow_int(2, 2 * e - 1)));
    SigmaVector::from_gamma(&factor, e)?.mul(&mu(e - 1)?.lift_level(e)?)?.add(&corr.lift_level(e)?)
}

/// `λ_{2^{e-1}-1}ξ_{e-1} + 3δ_{2^{e-1}}`, for `e >= 2`.
pub fn xi_step(e: u32) -> Result<SigmaVector> {
    if e < 2 {
        return Err(Error::InvalidInput("the ξ recursion starts at e = 2".into()));
    }
    let two = Prime::new(2).expect("2 is prime");
    let lam = SigmaVector::from_gamma(&GammaElement::lambda(two, (1 << (e - 1)) - 1), e)?;
    let d = SigmaVector::from_gamma(&GammaElement::delta(two, 1 << (e - 1)).scale(&qi(3)), e)?;
    lam.mul(&xi(e - 1)?.lift_level(e)?)?.add(&d)
}

/// `μ_e` in the δ-basis: `δ_{2^e} + 2δ_1 + ... + 2δ_{2^e-1}`.
pub fn mu_delta(p: Prime, q: u32) -> GammaElement {
    GammaElement::from_coeffs(p, Basis::Delta, (1..q).map(|k| (k, qi(2))).chain([(q, qi(1))]))
}

/// `HK_e` of `R_{2,d}` (A1) or `S_{2,d}` (A2) from σ-coordinates.
pub fn hk_char2(variant: Variant, d: u32, e: u32) -> Result<BigInt> {
    if d < 2 {
        return Err(Error::InvalidInput(format!("dimension must be at least 2, got {d}")));
    }
    let m = d.div_ceil(2);
    let mu_e = mu(e)?;
    let two = Prime::new(2).expect("2 is prime");
    let half = SigmaVector::from_gamma(&GammaElement::delta(two, 1 << (e - 1)).scale(&qi(2)), e)?;
    let x = match (variant, d.is_multiple_of(2)) {
        (Variant::A1, true) => mu_e.pow(m).mul(&half)?,
        (Variant::A1, false) => mu_e.pow(m),
        (Variant::A2, true) => mu_e.pow(m).mul(&xi(e)?)?,
        (Variant::A2, false) => mu_e.pow(m - 1).mul(&half)?.mul(&xi(e)?)?,
    };
    let a = x.alpha();
    if !a.is_integer() {
        return Err(Error::InvalidInput(format!("non-integral HK value {a}")));
    }
    Ok(a.to_integer())
}
