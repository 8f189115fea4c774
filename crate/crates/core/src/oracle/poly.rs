//! Sparse polynomials over F_p and the input grammar.
//!
//! ```text
//! poly   := ["+"|"-"] term (("+"|"-") term)*
//! term   := factor ("*" factor)*
//! factor := integer | "x" index ["^" integer]
//! ```

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::prime::Prime;
use crate::sigma::Variant;

/// A polynomial in `x0..x{nvars-1}` with coefficients in `[1, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolySpec {
    pub p: Prime,
    pub nvars: usize,
    /// Terms sorted by exponent vector, descending.
    pub terms: Vec<(u32, Vec<u32>)>,
    /// Set when some term has total degree below 2.
    pub low_degree: bool,
}

impl PolySpec {
    /// Canonical form: merge equal exponents, reduce mod p, drop zeros.
    pub fn new(p: Prime, nvars: usize, terms: Vec<(i64, Vec<u32>)>) -> Result<Self> {
        let mut merged: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
        for (c, ex) in terms {
            if ex.len() != nvars {
                return Err(Error::InvalidInput(format!(
                    "exponent vector of length {} in {nvars} variables",
                    ex.len()
                )));
            }
            let c = c.rem_euclid(p.get() as i64) as u64;
            let slot = merged.entry(ex).or_insert(0);
            *slot = (*slot + c) % p.get() as u64;
        }
        let terms: Vec<(u32, Vec<u32>)> =
            merged.into_iter().rev().filter(|(_, c)| *c != 0).map(|(ex, c)| (c as u32, ex)).collect();
        let low_degree = terms.iter().any(|(_, ex)| ex.iter().sum::<u32>() < 2);
        Ok(PolySpec { p, nvars, terms, low_degree })
    }

    /// Diagonal hypersurface `x0^e0 + ... + xd^ed`.
    pub fn diagonal(p: Prime, exponents: &[u32]) -> Result<Self> {
        let n = exponents.len();
        let terms = exponents
            .iter()
            .enumerate()
            .map(|(i, &e)| {
                let mut ex = vec![0; n];
                ex[i] = e;
                (1, ex)
            })
            .collect();
        Self::new(p, n, terms)
    }

    /// `Q_d` (A1) or `P_d` (A2) in `d + 1` variables: hyperbolic pairs
    /// `x0*x1 + ...`, then `x_d^2` (A1, d even), or `x_{d-1}^2 + x_d^3`
    /// (A2, d odd), or `x_d^3` (A2, d even).
    pub fn quadric(variant: Variant, d: u32, p: Prime) -> Result<Self> {
        if d < 1 {
            return Err(Error::InvalidInput("quadric dimension must be at least 1".into()));
        }
        let n = d as usize + 1;
        let mono = |pairs: &[(usize, u32)]| {
            let mut ex = vec![0; n];
            for &(i, e) in pairs {
                ex[i] = e;
            }
            (1i64, ex)
        };
        let squares = match variant {
            Variant::A1 => usize::from(d.is_multiple_of(2)),
            Variant::A2 => usize::from(d % 2 == 1),
        };
        let cubes = usize::from(variant == Variant::A2);
        let paired = n - squares - cubes;
        let mut terms: Vec<(i64, Vec<u32>)> = (0..paired / 2).map(|k| mono(&[(2 * k, 1), (2 * k + 1, 1)])).collect();
        if squares == 1 {
            terms.push(mono(&[(paired, 2)]));
        }
        if cubes == 1 {
            terms.push(mono(&[(n - 1, 3)]));
        }
        Self::new(p, n, terms)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for PolySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (t, (c, ex)) in self.terms.iter().enumerate() {
            if t > 0 {
                write!(f, " + ")?;
            }
            let mut factors = Vec::new();
            if *c != 1 || ex.iter().all(|&e| e == 0) {
                factors.push(c.to_string());
            }
            for (i, &e) in ex.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("x{i}")),
                    _ => factors.push(format!("x{i}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Lexer<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.into() }
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::Syntax { pos: start, msg: "number out of range".into() })
    }
}

/// Parse `text` as a polynomial in `nvars` variables over F_p.
pub fn parse_poly(text: &str, p: Prime, nvars: usize) -> Result<PolySpec> {
    if nvars == 0 {
        return Err(Error::InvalidInput("nvars must be at least 1".into()));
    }
    let pm = p.get() as i64;
    let mut lx = Lexer { src: text.as_bytes(), pos: 0 };
    let mut terms = Vec::new();
    let mut sign = 1i64;
    match lx.peek() {
        Some(b'-') => {
            sign = -1;
            lx.pos += 1;
        }
        Some(b'+') => lx.pos += 1,
        None => return Err(lx.err("empty polynomial")),
        _ => {}
    }
    loop {
        let mut coeff = sign;
        let mut ex = vec![0u32; nvars];
        loop {
            match lx.peek() {
                Some(b'x') => {
                    let start = lx.pos;
                    lx.pos += 1;
                    let idx = lx.number()?;
                    if idx as usize >= nvars {
                        let name = String::from_utf8_lossy(&lx.src[start..lx.pos]).into_owned();
                        return Err(Error::UnknownVariable(name));
                    }
                    let mut e = 1u64;
                    if lx.peek() == Some(b'^') {
                        lx.pos += 1;
                        e = lx.number()?;
                    }
                    let slot = &mut ex[idx as usize];
                    *slot = slot
                        .checked_add(u32::try_from(e).map_err(|_| lx.err("exponent too large"))?)
                        .ok_or_else(|| lx.err("exponent too large"))?;
                }
                Some(c) if c.is_ascii_digit() => {
                    let n = lx.number()?;
                    coeff = coeff * (n % pm as u64) as i64 % pm;
                }
                Some(_) => return Err(lx.err("expected a variable or coefficient")),
                None => return Err(lx.err("unexpected end of input")),
            }
            if lx.peek() == Some(b'*') {
                lx.pos += 1;
            } else {
                break;
            }
        }
        terms.push((coeff, ex));
        match lx.peek() {
            None => break,
            Some(b'+') => sign = 1,
            Some(b'-') => sign = -1,
            Some(_) => return Err(lx.err("expected '+', '-' or '*'")),
        }
        lx.pos += 1;
    }
    PolySpec::new(p, nvars, terms)
}
