use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::JordanPartition;
use crate::prime::Prime;
use crate::rational::{fmt_combination, parse_q, qi, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Delta,
    Lambda,
}

impl Basis {
    fn prefix(self) -> char {
        match self {
            Basis::Delta => 'd',
            Basis::Lambda => 'l',
        }
    }
}

/// Finite rational combination of δ_i (i ≥ 1) or λ_i (i ≥ 0).
///
/// Zero coefficients are never stored. Equality compares the underlying
/// ring elements, converting bases when needed.
#[derive(Debug, Clone)]
pub struct GammaElement {
    p: Prime,
    basis: Basis,
    coeffs: BTreeMap<u32, Q>,
}

impl GammaElement {
    pub fn zero(p: Prime, basis: Basis) -> Self {
        GammaElement { p, basis, coeffs: BTreeMap::new() }
    }

    pub fn from_coeffs<I>(p: Prime, basis: Basis, coeffs: I) -> Self
    where
        I: IntoIterator<Item = (u32, Q)>,
    {
        let mut out = Self::zero(p, basis);
        for (i, c) in coeffs {
            out.add_term(i, c);
        }
        out
    }

    /// `c·δ_i`; zero when `i = 0`.
    pub fn delta(p: Prime, i: u32) -> Self {
        Self::from_coeffs(p, Basis::Delta, [(i, Q::one())])
    }

    pub fn lambda(p: Prime, i: u32) -> Self {
        Self::from_coeffs(p, Basis::Lambda, [(i, Q::one())])
    }

    /// The unit `δ_1 = λ_0`.
    pub fn one(p: Prime) -> Self {
        Self::delta(p, 1)
    }

    /// δ-vector whose coefficient at k is the number of Jordan blocks of size k.
    pub fn from_partition(p: Prime, part: &JordanPartition) -> Self {
        Self::from_coeffs(p, Basis::Delta, part.multiplicities().into_iter().map(|(k, m)| (k, qi(m as i64))))
    }

    pub(crate) fn add_term(&mut self, i: u32, c: Q) {
        if c.is_zero() || (self.basis == Basis::Delta && i == 0) {
            return;
        }
        let slot = self.coeffs.entry(i).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&i);
        }
    }

    pub fn p(&self) -> Prime {
        self.p
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn coeffs(&self) -> &BTreeMap<u32, Q> {
        &self.coeffs
    }

    pub fn coeff(&self, i: u32) -> Q {
        self.coeffs.get(&i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn max_index(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    /// Change of basis. `δ_i = Σ_{m<i} (-1)^m λ_m` and
    /// `λ_i = (-1)^i (δ_{i+1} - δ_i)`.
    pub fn to_basis(&self, target: Basis) -> Self {
        if target == self.basis {
            return self.clone();
        }
        let mut out = Self::zero(self.p, target);
        match target {
            Basis::Lambda => {
                let mut suffix = Q::zero();
                let mut next: Option<u32> = None;
                for (&i, c) in self.coeffs.iter().rev() {
                    if let Some(hi) = next {
                        for m in i..hi {
                            out.add_term(m, signed(m, &suffix));
                        }
                    }
                    suffix += c;
                    next = Some(i);
                }
                if let Some(hi) = next {
                    for m in 0..hi {
                        out.add_term(m, signed(m, &suffix));
                    }
                }
            }
            Basis::Delta => {
                for (&i, c) in &self.coeffs {
                    let s = signed(i, c);
                    out.add_term(i + 1, s.clone());
                    out.add_term(i, -s);
                }
            }
        }
        out
    }

    pub fn to_delta(&self) -> Self {
        self.to_basis(Basis::Delta)
    }

    pub fn to_lambda(&self) -> Self {
        self.to_basis(Basis::Lambda)
    }

    fn check_char(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return Err(Error::CharacteristicMismatch { left: self.p.get(), right: other.p.get() });
        }
        Ok(())
    }

    /// Sum; the result is in the δ-basis unless both operands are λ-vectors.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_char(other)?;
        let basis = if self.basis == other.basis { self.basis } else { Basis::Delta };
        let mut out = self.to_basis(basis);
        for (&i, c) in other.to_basis(basis).coeffs.iter() {
            out.add_term(i, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, s: &Q) -> Self {
        Self::from_coeffs(self.p, self.basis, self.coeffs.iter().map(|(&i, c)| (i, c * s)))
    }

    /// `α`: sum of δ-coefficients.
    pub fn alpha(&self) -> Q {
        match self.basis {
            Basis::Delta => self.coeffs.values().sum(),
            Basis::Lambda => self.coeff(0),
        }
    }

    /// `Σ i·c_i` in the δ-basis.
    pub fn dimension_q(&self) -> Q {
        self.to_delta().coeffs.iter().map(|(&i, c)| c * qi(i as i64)).sum()
    }

    /// Dimension of the underlying k-object, if this is an honest one
    /// (nonnegative integer δ-coefficients).
    pub fn dimension(&self) -> Option<u64> {
        let d = self.to_delta();
        if d.coeffs.values().any(|c| !c.is_integer() || c.is_negative()) {
            return None;
        }
        d.dimension_q().to_integer().to_u64()
    }

    /// True when every δ-coefficient is a nonnegative integer.
    pub fn is_effective(&self) -> bool {
        self.to_delta().coeffs.values().all(|c| c.is_integer() && !c.is_negative())
    }

    /// Render as `2*d2 + 1/3*d4` or `3*l0 - l1`.
    pub fn render(&self) -> String {
        self.to_string()
    }

    /// Parse the textual form. Mixed bases are allowed and unify to δ.
    pub fn parse(text: &str, p: Prime) -> Result<Self> {
        parse_element(text, p)
    }
}

fn signed(i: u32, c: &Q) -> Q {
    if i.is_multiple_of(2) {
        c.clone()
    } else {
        -c.clone()
    }
}

impl PartialEq for GammaElement {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
            && if self.basis == other.basis {
                self.coeffs == other.coeffs
            } else {
                self.coeffs == other.to_basis(self.basis).coeffs
            }
    }
}

impl Eq for GammaElement {}

impl fmt::Display for GammaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pre = self.basis.prefix();
        f.write_str(&fmt_combination(self.coeffs.iter().map(|(i, c)| (format!("{pre}{i}"), c))))
    }
}

fn parse_element(text: &str, p: Prime) -> Result<GammaElement> {
    let src = text.as_bytes();
    let mut pos = 0usize;
    let skip = |pos: &mut usize| {
        while *pos < src.len() && src[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    let syntax = |pos: usize, msg: &str| Error::Syntax { pos, msg: msg.into() };
    let mut terms: Vec<(Basis, u32, Q)> = Vec::new();
    let mut sign = Q::one();
    skip(&mut pos);
    if pos < src.len() && (src[pos] == b'-' || src[pos] == b'+') {
        if src[pos] == b'-' {
            sign = -sign;
        }
        pos += 1;
    }
    loop {
        skip(&mut pos);
        let start = pos;
        while pos < src.len() && (src[pos].is_ascii_digit() || src[pos] == b'/' || src[pos] == b'.') {
            pos += 1;
        }
        let mut coeff = sign.clone();
        let mut explicit = false;
        if pos > start {
            let c = std::str::from_utf8(&src[start..pos])
                .ok()
                .and_then(|s| parse_q(s).ok())
                .ok_or_else(|| syntax(start, "bad coefficient"))?;
            coeff *= c;
            explicit = true;
            skip(&mut pos);
            if pos < src.len() && src[pos] == b'*' {
                pos += 1;
                skip(&mut pos);
            }
        }
        let basis = match src.get(pos) {
            Some(b'd') => Some(Basis::Delta),
            Some(b'l') => Some(Basis::Lambda),
            _ => None,
        };
        match basis {
            Some(b) => {
                pos += 1;
                let istart = pos;
                while pos < src.len() && src[pos].is_ascii_digit() {
                    pos += 1;
                }
                let idx: u32 = std::str::from_utf8(&src[istart..pos])
                    .ok()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| syntax(istart, "expected basis index"))?;
                terms.push((b, idx, coeff));
            }
            None if explicit && coeff.is_zero() => {}
            None => return Err(syntax(pos, "expected d<k> or l<k>")),
        }
        skip(&mut pos);
        match src.get(pos) {
            None => break,
            Some(b'+') => sign = Q::one(),
            Some(b'-') => sign = -Q::one(),
            Some(_) => return Err(syntax(pos, "expected '+' or '-'")),
        }
        pos += 1;
    }
    let basis = match terms.first() {
        Some((b, _, _)) if terms.iter().all(|t| t.0 == *b) => *b,
        Some(_) => Basis::Delta,
        None => Basis::Delta,
    };
    let mut out = GammaElement::zero(p, basis);
    for (b, i, c) in terms {
        let t = GammaElement::from_coeffs(p, b, [(i, c)]).to_basis(basis);
        for (&k, v) in t.coeffs() {
            out.add_term(k, v.clone());
        }
    }
    Ok(out)
}
