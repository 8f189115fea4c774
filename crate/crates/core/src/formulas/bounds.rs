use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use super::closed::{closed_form, Level};
use crate::error::{Error, Result};
use crate::rational::{floor_frac, q, q_pow, qb, qi, Q};
use crate::report::Report;
use crate::sigma::Variant;

/// Rows `(e_min, e_max, s)` of the dimension 6 table: `G_s(e) > 9/8` on the range.
pub const TABLE4: [(u32, u32, (i64, i64)); 6] = [
    (5, 9, (263, 100)),
    (10, 16, (231, 100)),
    (17, 28, (21, 10)),
    (29, 58, (19, 10)),
    (59, 296, (16, 10)),
    (297, 810, (13, 10)),
];

fn factorial(n: u32) -> Q {
    qb((1..=n as u64).map(BigInt::from).product())
}

/// `v_s = Σ_{n=0}^{⌊s⌋} (-1)^n (s-n)^d / (n!(d-n)!)`.
pub fn v_s(s: &Q, d: u32) -> Result<Q> {
    if s.is_negative() {
        return Err(Error::InvalidInput(format!("v_s needs s >= 0, got {s}")));
    }
    let top = floor_frac(s).0.to_u32().filter(|&f| f <= d);
    let Some(top) = top else {
        return Err(Error::InvalidInput(format!("v_s needs ⌊s⌋ <= d, got s={s}, d={d}")));
    };
    Ok((0..=top)
        .map(|n| {
            let sign = if n % 2 == 0 { qi(1) } else { qi(-1) };
            sign * q_pow(&(s - qi(n as i64)), d) / (factorial(n) * factorial(d - n))
        })
        .sum())
}

/// `G_s(e) = e(v_s - (e-2)v_{s-1})`.
pub fn g_s(s: &Q, e: u32, d: u32) -> Result<Q> {
    let e = qi(e as i64);
    Ok(&e * (v_s(s, d)? - (&e - qi(2)) * v_s(&(s - qi(1)), d)?))
}

/// `3(v_s - 2(s-1)^4/4!)` in dimension 4.
pub fn d4_bound(s: &Q) -> Result<Q> {
    Ok(qi(3) * (v_s(s, 4)? - qi(2) * q_pow(&(s - qi(1)), 4) / qi(24)))
}

/// Every row of the dimension 6 table, at every `e` of its range, plus the
/// multiplicity bound beyond the table and the dimension 4 estimates.
pub fn check_bounds() -> Result<Report> {
    let mut report = Report::new();
    let target = q(9, 8);
    for (lo, hi, (n, dd)) in TABLE4 {
        let s = q(n, dd);
        let mut worst: Option<(u32, Q)> = None;
        for e in lo..=hi {
            let g = g_s(&s, e, 6)?;
            if worst.as_ref().is_none_or(|(_, w)| &g < w) {
                worst = Some((e, g));
            }
        }
        let (e, w) = worst.expect("nonempty range");
        let ends = g_s(&s, lo, 6)? > target && g_s(&s, hi, 6)? > target;
        report.check(format!("d=6 s={s} e={lo}..{hi}"), ends && w > target, format!("min G_s at e={e}: {w}"));
    }
    report.check("d=6 e>=811", q(811, 720) > target, "e/d! > 9/8");

    let five_fourths = q(5, 4);
    let at2 = d4_bound(&qi(2))?;
    report.check("d=4 e=3 s=2", at2 == q(30, 24), format!("{at2}"));
    let at21 = d4_bound(&q(21, 10))?;
    report.check("d=4 e=3 s=21/10", at21 >= q(13, 10) && at21 > five_fourths, format!("{at21}"));
    report.check("d=4 4<=e<=9", (4..=9).all(|e| q((13 - e) * e, 24) > five_fourths), "(13-e)e/24 > 5/4");
    report.check("d=4 10<=e<=30", (10..=30).all(|e| q((78 - e) * e, 384) > five_fourths), "(78-e)e/384 > 5/4");
    report.check("d=4 e>=31", q(31, 24) > five_fourths, "e/d! > 5/4");
    Ok(report)
}

/// `eHK(S_{3,d}) < eHK(R_{2,d})` exactly when `d >= 8` is even or `d >= 13` is odd.
pub fn boundary_check() -> Result<Report> {
    let mut report = Report::new();
    for d in 7..=14u32 {
        let s3 = closed_form(Variant::A2, 3, d, Level::Infinite)?;
        let r2 = closed_form(Variant::A1, 2, d, Level::Infinite)?;
        let less = s3 < r2;
        let expected = (d >= 8 && d % 2 == 0) || (d >= 13 && d % 2 == 1);
        report.check(format!("d={d}"), less == expected, format!("{s3} {} {r2}", if less { "<" } else { ">=" }));
    }
    Ok(report)
}
