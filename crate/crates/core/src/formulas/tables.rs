use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::bounds::{g_s, TABLE4};
use super::closed::quadric_table;
use crate::error::{Error, Result};
use crate::hk::{ehk, Singularity};
use crate::prime::Prime;
use crate::rational::{q, serde_q, Q};
use crate::sigma::Variant;

pub const CSV_HEADER: &str = "p,d,value_num,value_den,source_path";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableName {
    Quadrics,
    Char2,
    Char3,
    Bounds,
}

impl FromStr for TableName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quadrics" => Ok(TableName::Quadrics),
            "char2" => Ok(TableName::Char2),
            "char3" => Ok(TableName::Char3),
            "bounds" => Ok(TableName::Bounds),
            _ => Err(Error::InvalidInput(format!("unknown table {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub p: Option<u32>,
    pub d: u32,
    #[serde(with = "serde_q")]
    pub value: Q,
    pub source_path: String,
}

impl TableRow {
    pub fn to_csv(&self) -> String {
        let p = self.p.map(|p| p.to_string()).unwrap_or_default();
        format!("{p},{},{},{},{}", self.d, self.value.numer(), self.value.denom(), self.source_path)
    }
}

impl fmt::Display for TableRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.p.map(|p| format!("p={p} ")).unwrap_or_default();
        write!(f, "{p}d={} {} [{}]", self.d, self.value, self.source_path)
    }
}

fn quadric_row(variant: Variant, p: u32, d: u32, tagged: bool) -> Result<TableRow> {
    let r = ehk(&Singularity::Quadric { variant, d }, Prime::new(p)?)?;
    let source_path = if tagged { format!("{variant}/{}", r.path) } else { r.path.to_string() };
    Ok(TableRow { p: Some(p), d, value: r.ehk, source_path })
}

/// Rows of the named table. `primes` applies to the quadric table only.
pub fn table(name: TableName, primes: &[u32]) -> Result<Vec<TableRow>> {
    let mut rows = Vec::new();
    match name {
        TableName::Quadrics => {
            let primes = if primes.is_empty() { &[3, 5, 7][..] } else { primes };
            for &p in primes {
                for d in 3..=7 {
                    let row = quadric_row(Variant::A1, p, d, false)?;
                    if p >= 3 && quadric_table(p, d)? != row.value {
                        return Err(Error::Inconsistent(format!("table value differs at p={p}, d={d}")));
                    }
                    rows.push(row);
                }
            }
        }
        TableName::Char2 | TableName::Char3 => {
            let (p, top) = if name == TableName::Char2 { (2, 9) } else { (3, 8) };
            for d in 2..=top {
                for v in [Variant::A1, Variant::A2] {
                    rows.push(quadric_row(v, p, d, true)?);
                }
            }
        }
        TableName::Bounds => {
            for (lo, hi, (n, den)) in TABLE4 {
                let s = q(n, den);
                let mut best: Option<Q> = None;
                for e in lo..=hi {
                    let g = g_s(&s, e, 6)?;
                    if best.as_ref().is_none_or(|b| &g < b) {
                        best = Some(g);
                    }
                }
                let value = best.expect("nonempty range");
                rows.push(TableRow { p: None, d: 6, value, source_path: format!("G_s s={s} e={lo}..{hi}") });
            }
        }
    }
    Ok(rows)
}
