use crate::error::{Error, Result};
use crate::hk::{hk_diagonal, yoshida_ell_sharp, Variant};
use crate::prime::Prime;
use crate::rational::{qb, Q};
use crate::report::Report;

use super::gamma::{gamma_coeffs, hk1_identities, p_pow};

/// `1 + (HK_1 - p^d)/(p^d - ℓ♯)`.
pub fn ehk_mu_one(hk1: &Q, p: Prime, d: u32, ell_sharp: &Q) -> Q {
    let pd = p_pow(p, d);
    Q::from_integer(1.into()) + (hk1 - &pd) / (&pd - ell_sharp)
}

/// The two HK_1 inequalities, the strict chain between them, the bound on
/// `ℓ♯` and the resulting separation of the A1 and A2 multiplicities.
pub fn check_inequalities(p: Prime, d: u32) -> Result<Report> {
    if p.get() <= 3 || d < 2 {
        return Err(Error::InvalidInput("inequality suite needs p > 3 and d >= 2".into()));
    }
    let pp = p.get();
    let (r, s) = hk1_identities(p, d)?;
    let (hr, hs) = (qb(r), qb(s));
    let hr_low = gamma_coeffs(p, d)?.get(0).clone();
    let pd = p_pow(p, d);
    let pd1 = p_pow(p, d - 1);
    let pq = p_pow(p, 1);
    let tag = |what: &str| format!("p={pp} d={d} {what}");
    let mut report = Report::new();

    let direct = qb(hk_diagonal(&vec![2; d as usize], p, 1)?);
    report.check(tag("HK_1(R_{p,d-1}) = a_0"), direct == hr_low, format!("{direct} vs {hr_low}"));
    report.check(tag("first inequality"), &hs - &hr >= &hr_low - &pd1, format!("{} >= {}", &hs - &hr, &hr_low - &pd1));
    report.check(tag("second inequality"), &pq * &hr_low >= hs, format!("{} >= {hs}", &pq * &hr_low));

    let gap = &hr_low - &pd1;
    let links = [&pq * &pq * (&hs - &hr) >= &pq * &pq * &gap, &pq * &pq * &gap > &pq * &gap, &pq * &gap >= &hs - &pd];
    report.check(tag("strict chain"), links.iter().all(|&b| b), format!("{links:?}"));

    let ell_r = yoshida_ell_sharp(Variant::A1, d, p)?;
    let ell_s = yoshida_ell_sharp(Variant::A2, d, p)?;
    let bound = p_pow(p, d - 2);
    report.check(tag("ℓ♯(S) bound"), ell_s <= bound, format!("{ell_s} <= {bound}"));
    report.check(tag("ℓ♯(R) bound"), ell_r <= bound, format!("{ell_r} <= {bound}"));

    let lower_s = (&hs - &pd) / &pd;
    let upper_r = (&hr - &pd) / (&pd - &bound);
    report.check(tag("bracketing"), lower_s > upper_r, format!("{lower_s} > {upper_r}"));
    let (es, er) = (ehk_mu_one(&hs, p, d, &ell_s), ehk_mu_one(&hr, p, d, &ell_r));
    report.check(tag("eHK(S) > eHK(R)"), es > er, format!("{es} > {er}"));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_examples() {
        for (prime, d) in [(5, 2), (7, 4), (13, 3)] {
            let r = check_inequalities(Prime::new(prime).unwrap(), d).unwrap();
            assert!(r.passed(), "{:?}", r.first_failure());
        }
        assert!(check_inequalities(Prime::new(3).unwrap(), 3).is_err());
    }
}
