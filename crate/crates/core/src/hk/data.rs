use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::prime::Prime;
use crate::rational::{floor_frac, pow_int, q, qb, serde_q, Q};
use crate::ring::ell;

/// Data associated with a vector β, a period μ and a prime p.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BetaData {
    pub p: Prime,
    pub mu: u32,
    #[serde(with = "serde_vec_q")]
    pub beta: Vec<Q>,
    pub r: Vec<u64>,
    #[serde(with = "serde_vec_q")]
    pub z: Vec<Q>,
    #[serde(rename = "R")]
    pub big_r: Vec<u64>,
    #[serde(with = "serde_vec_q")]
    pub zprime: Vec<Q>,
    pub t: Vec<u64>,
    pub r_parity: u8,
    #[serde(with = "serde_q")]
    pub ell_sharp: Q,
}

mod serde_vec_q {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::rational::{JsonRational, Q};

    pub fn serialize<S: Serializer>(v: &[Q], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(JsonRational::from).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Q>, D::Error> {
        Vec::<JsonRational>::deserialize(d)?.into_iter().map(|j| j.to_q().map_err(serde::de::Error::custom)).collect()
    }
}

/// Which hypothesis set of the periodicity lemma the data satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Conditions {
    Cond1,
    Cond2,
    Fail,
}

fn to_u64(x: &BigInt) -> Result<u64> {
    x.to_u64().ok_or_else(|| Error::InvalidInput(format!("value {x} out of range")))
}

fn to_u32(x: u64) -> Result<u32> {
    u32::try_from(x).map_err(|_| Error::InvalidInput(format!("λ index {x} out of range")))
}

/// Compute r, z, R, z', t and ℓ♯ for `(β, μ, p)`.
pub fn associated_data(beta: &[Q], mu: u32, p: Prime) -> Result<BetaData> {
    let mut data = digit_data(beta, mu, p)?;
    let pm = pow_int(p.get() as u64, mu);
    let mut args: Vec<u32> = data.t.iter().map(|&x| to_u32(x)).collect::<Result<_>>()?;
    if data.r_parity == 1 {
        args[0] = to_u32(to_u64(&(&pm - BigInt::one()))? - data.t[0])?;
    }
    data.ell_sharp = ell(&args, p)?;
    Ok(data)
}

/// Everything but ℓ♯, which is left at zero.
fn digit_data(beta: &[Q], mu: u32, p: Prime) -> Result<BetaData> {
    if mu == 0 {
        return Err(Error::InvalidInput("period μ must be at least 1".into()));
    }
    if beta.is_empty() || beta.iter().any(|b| b <= &Q::zero()) {
        return Err(Error::InvalidInput("β entries must be positive".into()));
    }
    let pm = pow_int(p.get() as u64, mu);
    let pmq = qb(pm.clone());
    let (mut r, mut z, mut big_r, mut zprime, mut t) = (vec![], vec![], vec![], vec![], vec![]);
    for b in beta {
        let (ri, zi) = floor_frac(b);
        let (rr, zz) = floor_frac(&(b * &pmq));
        let ti = &rr - &pm * &ri;
        debug_assert_eq!(qb(ti.clone()), &zi * &pmq - &zz);
        r.push(to_u64(&ri)?);
        z.push(zi);
        big_r.push(to_u64(&rr)?);
        zprime.push(zz);
        t.push(to_u64(&ti)?);
    }
    let r_parity = (r.iter().sum::<u64>() % 2) as u8;
    Ok(BetaData { p, mu, beta: beta.to_vec(), r, z, big_r, zprime, t, r_parity, ell_sharp: Q::zero() })
}

/// `v ~ w`: v is obtained from w by replacing `w_i` by `1 - w_i` at an
/// even number of indices. An index with `w_i = 1/2` absorbs any parity.
pub fn equivalent(v: &[Q], w: &[Q]) -> bool {
    if v.len() != w.len() {
        return false;
    }
    let half = q(1, 2);
    let mut forced = 0usize;
    let mut free = false;
    for (vi, wi) in v.iter().zip(w) {
        if vi == wi {
            free |= *wi == half;
        } else if *vi == Q::one() - wi {
            forced += 1;
        } else {
            return false;
        }
    }
    free || forced.is_multiple_of(2)
}

/// `v* = (1 - v_0, v_1, ..., v_d)`.
pub fn star(v: &[Q]) -> Vec<Q> {
    let mut out = v.to_vec();
    if let Some(first) = out.first_mut() {
        *first = Q::one() - &*first;
    }
    out
}

/// Which hypothesis set holds. When `z_0 = 1/2` we have `z = z*`, the two
/// sets differ only in the parity clause, and the data is reported as `Cond1`.
pub fn check_conditions(data: &BetaData) -> Conditions {
    let same_parity = data.big_r.iter().sum::<u64>() % 2 == data.r.iter().sum::<u64>() % 2;
    let self_dual = data.z.first() == Some(&q(1, 2));
    if (same_parity || self_dual) && equivalent(&data.zprime, &data.z) {
        Conditions::Cond1
    } else if !same_parity && equivalent(&data.zprime, &star(&data.z)) {
        Conditions::Cond2
    } else {
        Conditions::Fail
    }
}

/// `β = p^{n0}(1/e_0, ..., 1/e_d)`.
pub fn beta_for(exponents: &[u32], p: Prime, n0: u32) -> Vec<Q> {
    let pn = pow_int(p.get() as u64, n0);
    exponents.iter().map(|&e| Q::new(pn.clone(), BigInt::from(e))).collect()
}

/// Least `n0` clearing p from the denominators of `p^n/e_i`, then the least
/// period `μ <= mu_cap` meeting the first hypothesis set.
pub fn find_parameters(exponents: &[u32], p: Prime, mu_cap: u32) -> Result<(u32, u32)> {
    if exponents.is_empty() || exponents.iter().any(|&e| e < 2) {
        return Err(Error::InvalidInput("exponents must all be at least 2".into()));
    }
    let pb = BigInt::from(p.get());
    let mut n0 = 0;
    loop {
        let beta = beta_for(exponents, p, n0);
        if beta.iter().all(|b| !(b.denom() % &pb).is_zero()) {
            break;
        }
        n0 += 1;
    }
    let beta = beta_for(exponents, p, n0);
    for mu in 1..=mu_cap {
        if check_conditions(&digit_data(&beta, mu, p)?) == Conditions::Cond1 {
            return Ok((n0, mu));
        }
    }
    Err(Error::NoPeriodFound(mu_cap))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qi;

    fn p(n: u32) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn data_examples() {
        let beta = vec![q(1, 2), q(1, 2), q(1, 3)];
        let d = associated_data(&beta, 1, p(5)).unwrap();
        assert_eq!(d.r, vec![0, 0, 0]);
        assert_eq!(d.big_r, vec![2, 2, 1]);
        assert_eq!(d.zprime, vec![q(1, 2), q(1, 2), q(2, 3)]);
        assert_eq!(d.t, vec![2, 2, 1]);
        assert_eq!(d.ell_sharp, qi(1));

        let d7 = associated_data(&beta, 1, p(7)).unwrap();
        assert_eq!(d7.zprime, d7.z);
        assert_eq!(d7.t, vec![3, 3, 2]);

        let ones = associated_data(&vec![qi(1); 4], 1, p(2)).unwrap();
        assert_eq!(ones.t, vec![0; 4]);
        assert_eq!(ones.r_parity, 0);
        assert_eq!(ones.ell_sharp, qi(1));
    }

    #[test]
    fn condition_examples() {
        for prime in [5u32, 7, 11, 13] {
            let d = associated_data(&[q(1, 2), q(1, 2), q(1, 2), q(1, 3)], 1, p(prime)).unwrap();
            assert_eq!(check_conditions(&d), Conditions::Cond1);
        }
        let d = associated_data(&[q(1, 2), q(1, 5)], 1, p(5)).unwrap();
        assert_eq!(check_conditions(&d), Conditions::Fail);
        let d = associated_data(&vec![q(1, 2); 3], 1, p(3)).unwrap();
        assert_eq!(check_conditions(&d), Conditions::Cond1);
    }

    #[test]
    fn equivalence() {
        let z = [q(1, 3), q(1, 5)];
        assert!(equivalent(&[q(2, 3), q(4, 5)], &z));
        assert!(!equivalent(&[q(2, 3), q(1, 5)], &z));
        assert!(equivalent(&[q(2, 3), q(1, 5), q(1, 2)], &[q(1, 3), q(1, 5), q(1, 2)]));
        assert_eq!(star(&z), vec![q(2, 3), q(1, 5)]);
    }

    #[test]
    fn parameter_examples() {
        assert_eq!(find_parameters(&[2, 2, 2, 3], p(5), 8).unwrap(), (0, 1));
        assert_eq!(find_parameters(&[2, 2, 2], p(3), 8).unwrap(), (0, 1));
        let (n0, mu) = find_parameters(&[2, 2, 3], p(3), 8).unwrap();
        assert_eq!(n0, 1);
        let beta = beta_for(&[2, 2, 3], p(3), n0);
        assert_eq!(beta, vec![q(3, 2), q(3, 2), qi(1)]);
        assert_eq!(check_conditions(&associated_data(&beta, mu, p(3)).unwrap()), Conditions::Cond1);
        for smaller in 1..mu {
            assert_ne!(check_conditions(&associated_data(&beta, smaller, p(3)).unwrap()), Conditions::Cond1);
        }
        assert!(find_parameters(&[1, 2], p(3), 8).is_err());
    }
}
