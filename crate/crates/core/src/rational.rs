//! Exact rational helpers shared by every module.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qb(n: BigInt) -> Q {
    Q::from_integer(n)
}

pub fn pow_int(base: u64, exp: u32) -> BigInt {
    num_traits::pow(BigInt::from(base), exp as usize)
}

pub fn q_pow(base: &Q, exp: u32) -> Q {
    num_traits::pow(base.clone(), exp as usize)
}

/// Floor and fractional part: `x = r + z` with `r` integer and `0 <= z < 1`.
pub fn floor_frac(x: &Q) -> (BigInt, Q) {
    let r = x.numer().div_floor(x.denom());
    let z = x - Q::from_integer(r.clone());
    (r, z)
}

/// Parse `"a"`, `"-a"`, `"a/b"` or a decimal such as `"2.63"` exactly.
pub fn parse_q(text: &str) -> Result<Q> {
    let t = text.trim();
    let bad = || Error::InvalidInput(format!("not a rational number: `{text}`"));
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Q::new(n, d));
    }
    if let Some((ip, fp)) = t.split_once('.') {
        if fp.is_empty() || !fp.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = ip.starts_with('-');
        let ip_abs = ip.trim_start_matches(['-', '+']);
        let whole: BigInt = if ip_abs.is_empty() { BigInt::zero() } else { ip_abs.parse().map_err(|_| bad())? };
        let frac: BigInt = fp.parse().map_err(|_| bad())?;
        let scale = pow_int(10, fp.len() as u32);
        let v = Q::new(whole * &scale + frac, scale);
        return Ok(if neg { -v } else { v });
    }
    let n: BigInt = t.parse().map_err(|_| bad())?;
    Ok(Q::from_integer(n))
}

/// Render as `a` or `a/b`.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Render `Σ c·sym` as `2*a - b + 1/3*c`; `0` when empty.
pub fn fmt_combination<'a, I>(terms: I) -> String
where
    I: IntoIterator<Item = (String, &'a Q)>,
{
    let mut out = String::new();
    for (sym, c) in terms {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mag = c.abs();
        if !mag.is_one() {
            out.push_str(&fmt_q(&mag));
            out.push('*');
        }
        out.push_str(&sym);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// JSON wire form of a rational: reduced, positive denominator, decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonRational {
    pub num: String,
    pub den: String,
}

impl From<&Q> for JsonRational {
    fn from(x: &Q) -> Self {
        // BigRational is always stored reduced with a positive denominator.
        JsonRational { num: x.numer().to_string(), den: x.denom().to_string() }
    }
}

impl JsonRational {
    pub fn to_q(&self) -> Result<Q> {
        let n: BigInt = self.num.parse().map_err(|_| Error::InvalidInput(self.num.clone()))?;
        let d: BigInt = self.den.parse().map_err(|_| Error::InvalidInput(self.den.clone()))?;
        if !d.is_positive() {
            return Err(Error::InvalidInput("non-positive denominator".into()));
        }
        let reduced = if n.is_zero() { d.is_one() } else { n.gcd(&d).is_one() };
        if !reduced {
            return Err(Error::InvalidInput("rational is not reduced".into()));
        }
        Ok(Q::new(n, d))
    }
}

pub mod serde_q {
    //! `#[serde(with = "serde_q")]` adapter for `Q`.
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
        JsonRational::from(x).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Q, D::Error> {
        let j = JsonRational::deserialize(d)?;
        j.to_q().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_q("2.63").unwrap(), q(263, 100));
        assert_eq!(parse_q("13/10").unwrap(), q(13, 10));
        assert_eq!(parse_q("-4").unwrap(), qi(-4));
        assert_eq!(parse_q("-0.5").unwrap(), q(-1, 2));
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("abc").is_err());
    }

    #[test]
    fn floor_frac_of_negative() {
        let (r, z) = floor_frac(&q(-5, 2));
        assert_eq!(r, BigInt::from(-3));
        assert_eq!(z, q(1, 2));
    }

    #[test]
    fn json_rational_is_reduced() {
        let j = JsonRational::from(&q(6, -4));
        assert_eq!(j, JsonRational { num: "-3".into(), den: "2".into() });
        assert_eq!(j.to_q().unwrap(), q(-3, 2));
        assert!(JsonRational { num: "2".into(), den: "4".into() }.to_q().is_err());
    }
}
