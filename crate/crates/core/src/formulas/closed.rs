use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::rational::{pow_int, q, qb, qi, Q};
use crate::sigma::Variant;

/// A Frobenius level `e`, or the limit `e = ∞` giving eHK.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Finite(u32),
    Infinite,
}

impl FromStr for Level {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(Level::Infinite),
            t => t
                .parse()
                .ok()
                .filter(|&e| e >= 1)
                .map(Level::Finite)
                .ok_or_else(|| Error::InvalidInput(format!("bad level {s:?}"))),
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Level::Finite(e) => write!(f, "{e}"),
            Level::Infinite => f.write_str("inf"),
        }
    }
}

fn two(k: u32) -> Q {
    qb(pow_int(2, k))
}

/// `HK_e` (finite level) or eHK of the A1/A2 quadrics in characteristic 2
/// and 3. For odd `d = 2m-1` the characteristic 2 A2 function is
/// `((2^{m-1}+1)/2^{m-1})·2^{de}`.
pub fn closed_form(variant: Variant, p: u32, d: u32, level: Level) -> Result<Q> {
    if d < 2 {
        return Err(Error::InvalidInput(format!("dimension must be at least 2, got {d}")));
    }
    let m = d.div_ceil(2);
    match (p, level) {
        (2, _) => {
            let e = match level {
                Level::Finite(e) => Some(e),
                Level::Infinite => None,
            };
            let lead = |c: Q| match e {
                Some(e) => c * two(d * e),
                None => c,
            };
            let tail = |c: Q, base: u32| match e {
                Some(e) => c * two(base * e),
                None => Q::from_integer(BigInt::from(0)),
            };
            let odd = d % 2 == 1;
            Ok(match (variant, odd) {
                (Variant::A1, true) => {
                    let den = two(m) - qi(1);
                    lead(two(m) / &den) - tail(Q::one() / &den, m - 1)
                }
                (Variant::A1, false) => lead((two(m) + qi(1)) / two(m)),
                (Variant::A2, false) => {
                    let den = two(m + 1) - qi(1);
                    lead((two(m + 1) + qi(1)) / &den) - tail(qi(2) / &den, m - 1)
                }
                (Variant::A2, true) => lead((two(m - 1) + qi(1)) / two(m - 1)),
            })
        }
        (3, Level::Infinite) => {
            let d = d as i64;
            Ok(match variant {
                Variant::A1 => {
                    let num = qi(3) * two(d as u32);
                    let sign = if d % 2 == 0 { qi(1) } else { qi(-1) };
                    qi(1) + num / (qb(pow_int(3, d as u32 + 1)) - two(d as u32) + sign)
                }
                Variant::A2 => qi(1) + crate::rational::q_pow(&q(2, 3), d as u32 - 1),
            })
        }
        _ => Err(Error::Unsupported(format!("no closed form for p={p} at level {level}"))),
    }
}

/// Tabulated eHK of `R_{p,d}` for `p >= 3`, `3 <= d <= 7`, as a rational
/// function of `p`.
pub fn quadric_table(p: u32, d: u32) -> Result<Q> {
    if p < 3 {
        return Err(Error::InvalidInput(format!("table covers p >= 3, got {p}")));
    }
    let x = qi(p as i64) * qi(p as i64);
    let poly = |c: &[i64]| c.iter().fold(Q::from_integer(BigInt::from(0)), |acc, &k| acc * &x + qi(k));
    let (num, den): (&[i64], &[i64]) = match d {
        3 => (&[4], &[3]),
        4 => (&[29, 15], &[24, 12]),
        5 => (&[17, 12], &[15, 10]),
        6 => (&[781, 656, 315], &[720, 570, 270]),
        7 => (&[332, 304, 192], &[315, 273, 168]),
        _ => return Err(Error::InvalidInput(format!("table covers 3 <= d <= 7, got {d}"))),
    };
    Ok(poly(num) / poly(den))
}

/// Taylor coefficient of `x^d` in `sec x + tan x`, via the boustrophedon
/// triangle for the zigzag numbers.
pub fn zigzag_c(d: u32) -> Q {
    let mut row = vec![BigInt::one()];
    for n in 1..=d as usize {
        let mut next = vec![BigInt::from(0); n + 1];
        for k in 1..=n {
            next[k] = &next[k - 1] + &row[n - k];
        }
        row = next;
    }
    let fact: BigInt = (1..=d as u64).map(BigInt::from).product();
    let e = row.last().cloned().unwrap_or_else(BigInt::one);
    debug_assert!(!e.is_negative());
    Q::new(e, fact)
}
