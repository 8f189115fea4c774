//! Products in Γ through p-adic digits.
//!
//! Writing `λ_{pm+a} = λ_m ⊗ λ_{t(m,a)}` with `t(m,a) = a` for even `m` and
//! `p-1-a` for odd `m` identifies Γ with Γ ⊗ Λ_1. Both δ_i and λ_i split into
//! at most two pure tensors, so `δ_i·δ_j` recurses on `i/p`, `j/p` with at
//! most four distinct subproblems per digit.

use std::collections::HashMap;
use std::rc::Rc;

use super::mul::lambda_pair;
use crate::error::{Error, Result};
use crate::prime::Prime;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Gen {
    Delta(u32),
    Lambda(u32),
}

struct Ctx {
    p: u32,
    /// `table[a][b]`: indices of `λ_a λ_b` in Λ_1.
    table: Vec<Vec<Vec<u32>>>,
    memo: HashMap<(Gen, Gen), Rc<Vec<i64>>>,
}

fn sign(n: u32) -> i64 {
    if n.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

impl Ctx {
    fn new(p: Prime) -> Result<Self> {
        let pp = p.get();
        let table = (0..pp)
            .map(|a| (0..pp).map(|b| lambda_pair(p, a, b)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Ctx { p: pp, table, memo: HashMap::new() })
    }

    fn twist(&self, m: u32, a: u32) -> u32 {
        if m.is_multiple_of(2) {
            a
        } else {
            self.p - 1 - a
        }
    }

    fn local_mul(&self, v: &[i64], w: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.p as usize];
        for (a, &x) in v.iter().enumerate().filter(|(_, x)| **x != 0) {
            for (b, &y) in w.iter().enumerate().filter(|(_, y)| **y != 0) {
                for &c in &self.table[a][b] {
                    out[c as usize] += x * y;
                }
            }
        }
        out
    }

    fn split(&self, g: Gen) -> Vec<(Gen, Vec<i64>)> {
        let p = self.p;
        let mut out = vec![];
        match g {
            Gen::Lambda(n) => {
                let (m, a) = (n / p, n % p);
                let mut v = vec![0; p as usize];
                v[self.twist(m, a) as usize] = 1;
                out.push((Gen::Lambda(m), v));
            }
            Gen::Delta(i) => {
                let (hi, lo) = (i / p, i % p);
                if hi > 0 {
                    out.push((Gen::Delta(hi), (0..p).map(sign).collect()));
                }
                if lo > 0 {
                    let mut v = vec![0; p as usize];
                    for a in 0..lo {
                        let c = self.twist(hi, a);
                        v[c as usize] = sign(hi) * sign(c);
                    }
                    out.push((Gen::Lambda(hi), v));
                }
            }
        }
        out
    }

    fn expand(g: Gen) -> Vec<i64> {
        match g {
            Gen::Lambda(n) => {
                let mut v = vec![0; n as usize + 1];
                v[n as usize] = 1;
                v
            }
            Gen::Delta(i) => (0..i).map(sign).collect(),
        }
    }

    fn is_one(g: Gen) -> bool {
        matches!(g, Gen::Lambda(0) | Gen::Delta(1))
    }

    fn prod(&mut self, x: Gen, y: Gen) -> Rc<Vec<i64>> {
        let key = if x <= y { (x, y) } else { (y, x) };
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let out = if x == Gen::Delta(0) || y == Gen::Delta(0) {
            vec![]
        } else if Self::is_one(x) {
            Self::expand(y)
        } else if Self::is_one(y) {
            Self::expand(x)
        } else {
            let p = self.p as usize;
            let mut out: Vec<i64> = vec![];
            for (hx, vx) in self.split(x) {
                for (hy, vy) in self.split(y) {
                    let high = self.prod(hx, hy);
                    let low = self.local_mul(&vx, &vy);
                    if out.len() < high.len() * p {
                        out.resize(high.len() * p, 0);
                    }
                    for (k, &h) in high.iter().enumerate().filter(|(_, h)| **h != 0) {
                        for (c, &l) in low.iter().enumerate().filter(|(_, l)| **l != 0) {
                            out[k * p + self.twist(k as u32, c as u32) as usize] += h * l;
                        }
                    }
                }
            }
            out
        };
        let out = Rc::new(out);
        self.memo.insert(key, out.clone());
        out
    }
}

/// λ-coordinates of `λ_i·λ_j`.
pub fn lambda_product(p: Prime, i: u32, j: u32) -> Result<Vec<(u32, i64)>> {
    let mut ctx = Ctx::new(p)?;
    let v = ctx.prod(Gen::Lambda(i), Gen::Lambda(j));
    Ok(v.iter().enumerate().filter(|(_, c)| **c != 0).map(|(k, &c)| (k as u32, c)).collect())
}

/// Jordan blocks of `δ_i·δ_j` as (size, multiplicity) pairs, ascending.
pub fn delta_blocks(p: Prime, i: u32, j: u32) -> Result<Vec<(u32, u64)>> {
    if i == 0 || j == 0 {
        return Ok(vec![]);
    }
    let mut ctx = Ctx::new(p)?;
    let lam = ctx.prod(Gen::Delta(i), Gen::Delta(j));
    // λ_k = (-1)^k (δ_{k+1} - δ_k), δ_0 = 0
    let mut delta = vec![0i64; lam.len() + 1];
    for (k, &c) in lam.iter().enumerate() {
        let s = sign(k as u32) * c;
        delta[k + 1] += s;
        delta[k] -= s;
    }
    let mut out = vec![];
    let mut dim: u64 = 0;
    for (k, &m) in delta.iter().enumerate().skip(1).filter(|(_, m)| **m != 0) {
        if m < 0 {
            return Err(Error::Inconsistent(format!("δ_{i}·δ_{j} has coefficient {m} at δ_{k}")));
        }
        out.push((k as u32, m as u64));
        dim += k as u64 * m as u64;
    }
    if dim != i as u64 * j as u64 {
        return Err(Error::Inconsistent(format!("δ_{i}·δ_{j} has dimension {dim}")));
    }
    Ok(out)
}
