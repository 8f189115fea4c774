//! Self-verification suites backing `hk-forge verify`.
//!
//! Every case is deterministic; randomized cases draw from a ChaCha stream
//! seeded from [`VerifyOptions::seed`].

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::formulas::{
    boundary_check, check_bounds, check_gamma_identities, check_inequalities, closed_form, hk1_floor_sums,
    hk1_identities, quadric_table, zigzag_c, Level,
};
use crate::hk::{
    associated_data, beta_for, ehk, find_parameters, hk_diagonal, hk_function, hk_quadric, yoshida_ell_sharp, HkPath,
    Singularity, Variant,
};
use crate::oracle::{
    delta_product_dense, delta_product_oracle, delta_product_partition, direct_hk, jordan_partition, FpMatrix, PolySpec,
};
use crate::prime::Prime;
use crate::rational::{pow_int, q, qb, qi, Q};
use crate::report::Report;
use crate::ring::{cyclic_decompose, delta_fractional, lambda_pair, Basis, CyclicSpec, GammaElement};
use crate::sigma::{self, hk_char2, mu_delta, SigmaVector};

pub const DEFAULT_SEED: u64 = 0x4b46_2024;
pub const DEFAULT_MAX_E: u32 = 6;
pub const DEFAULT_AXIOM_TRIPLES: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Core,
    Sigma,
    Gamma,
    Hk,
    Formulas,
    All,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "core" => Ok(Suite::Core),
            "sigma" => Ok(Suite::Sigma),
            "gamma" => Ok(Suite::Gamma),
            "hk" => Ok(Suite::Hk),
            "formulas" => Ok(Suite::Formulas),
            "all" => Ok(Suite::All),
            _ => Err(Error::InvalidInput(format!("unknown suite {s:?}"))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default();
        f.write_str(&s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct VerifyOptions {
    pub max_e: u32,
    pub seed: u64,
    pub axiom_triples: usize,
    pub parallel: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            max_e: DEFAULT_MAX_E,
            seed: DEFAULT_SEED,
            axiom_triples: DEFAULT_AXIOM_TRIPLES,
            parallel: false,
        }
    }
}

/// Result of one named case.
#[derive(Debug, Clone, Serialize)]
pub struct Section {
    pub suite: Suite,
    pub name: String,
    pub passed: bool,
    pub checks: usize,
    pub failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub report: Report,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyOutcome {
    pub suite: Suite,
    pub seed: u64,
    pub max_e: u32,
    pub passed: bool,
    pub sections: Vec<Section>,
}

impl VerifyOutcome {
    pub fn checks(&self) -> usize {
        self.sections.iter().map(|s| s.checks).sum()
    }

    pub fn failures(&self) -> usize {
        self.sections.iter().map(|s| s.failures + usize::from(s.error.is_some())).sum()
    }
}

type CaseFn = fn(&VerifyOptions) -> Result<Report>;

fn cases(suite: Suite) -> Vec<(Suite, &'static str, CaseFn)> {
    let all: Vec<(Suite, &'static str, CaseFn)> = vec![
        (Suite::Core, "basis round trip", core_round_trip),
        (Suite::Core, "ring axioms", core_axioms),
        (Suite::Core, "structural rules", core_structural),
        (Suite::Core, "delta oracle", core_oracle),
        (Suite::Core, "oracle invariants", core_oracle_invariants),
        (Suite::Core, "cyclic modules", core_cyclic),
        (Suite::Core, "diagonal hk", core_diagonal),
        (Suite::Sigma, "sigma properties", sigma_properties),
        (Suite::Sigma, "lambda sigma lemmas", sigma_lambda_lemmas),
        (Suite::Sigma, "recursions", sigma_recursions),
        (Suite::Sigma, "critical coefficients", sigma_critical),
        (Suite::Sigma, "char 2 hk", sigma_hk),
        (Suite::Gamma, "gamma identities", gamma_identities),
        (Suite::Gamma, "hk_1 identities", gamma_hk1),
        (Suite::Hk, "periodicity data", hk_data),
        (Suite::Hk, "quadric table", hk_table),
        (Suite::Hk, "char 2 and 3 multiplicities", hk_small_char),
        (Suite::Hk, "separation", hk_separation),
        (Suite::Hk, "lower bound", hk_lower_bound),
        (Suite::Formulas, "inequality chain", formulas_inequalities),
        (Suite::Formulas, "bounds", formulas_bounds),
        (Suite::Formulas, "zigzag", formulas_zigzag),
    ];
    all.into_iter().filter(|(s, _, _)| suite == Suite::All || *s == suite).collect()
}

/// Run a suite. Cases may run in parallel; sections keep their fixed order.
pub fn verify(suite: Suite, opts: &VerifyOptions) -> VerifyOutcome {
    let run = |(s, name, f): &(Suite, &'static str, CaseFn)| {
        let (report, error) = match f(opts) {
            Ok(r) => (r, None),
            Err(e) => (Report::new(), Some(e.to_string())),
        };
        Section {
            suite: *s,
            name: name.to_string(),
            passed: error.is_none() && report.passed(),
            checks: report.len(),
            failures: report.failures(),
            error,
            report,
        }
    };
    let list = cases(suite);
    let sections: Vec<Section> =
        if opts.parallel { list.par_iter().map(run).collect() } else { list.iter().map(run).collect() };
    VerifyOutcome { suite, seed: opts.seed, max_e: opts.max_e, passed: sections.iter().all(|s| s.passed), sections }
}

/// Names of the sections run by a suite, in output order.
pub fn section_names(suite: Suite) -> Vec<(Suite, &'static str)> {
    cases(suite).into_iter().map(|(s, n, _)| (s, n)).collect()
}

fn prime(p: u32) -> Prime {
    Prime::new(p).expect("suite primes are prime")
}

fn rng_for(opts: &VerifyOptions, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(opts.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

/// A random integer combination of up to three basis elements.
pub fn random_element<R: Rng>(rng: &mut R, p: Prime, basis: Basis, max_index: u32) -> GammaElement {
    let terms = rng.gen_range(1..=3);
    let lo = if basis == Basis::Delta { 1 } else { 0 };
    GammaElement::from_coeffs(p, basis, (0..terms).map(|_| (rng.gen_range(lo..=max_index), qi(rng.gen_range(-3..=3)))))
}

const CHARS: [u32; 4] = [2, 3, 5, 7];

fn core_round_trip(opts: &VerifyOptions) -> Result<Report> {
    let mut r = Report::new();
    for p in CHARS {
        let mut rng = rng_for(opts, p as u64);
        let mut bad = 0;
        for k in 0..100 {
            let basis = if k % 2 == 0 { Basis::Delta } else { Basis::Lambda };
            let x = random_element(&mut rng, prime(p), basis, 40);
            let back = x.to_delta().to_lambda().to_delta() == x.to_delta();
            let parsed = GammaElement::parse(&x.render(), prime(p))?.to_delta() == x.to_delta();
            let alpha = x.to_lambda().alpha() == x.to_delta().alpha();
            if !(back && parsed && alpha) {
                bad += 1;
            }
        }
        r.check(format!("p={p} round trip, parse, α"), bad == 0, format!("{bad} of 100 failed"));
    }
    Ok(r)
}

fn core_axioms(opts: &VerifyOptions) -> Result<Report> {
    let mut r = Report::new();
    for p in CHARS {
        let pr = prime(p);
        let mut rng = rng_for(opts, 100 + p as u64);
        let one = GammaElement::one(pr);
        let mut fails: Vec<String> = vec![];
        for t in 0..opts.axiom_triples {
            let basis = if t % 2 == 0 { Basis::Delta } else { Basis::Lambda };
            let x = random_element(&mut rng, pr, basis, 14);
            let y = random_element(&mut rng, pr, basis, 14);
            let z = random_element(&mut rng, pr, basis, 14);
            let xy = x.mul(&y)?;
            let ok = [
                ("commutative", xy == y.mul(&x)?),
                ("associative", xy.mul(&z)? == x.mul(&y.mul(&z)?)?),
                ("distributive", x.mul(&y.add(&z)?)? == xy.add(&x.mul(&z)?)?),
                ("unit", one.mul(&x)? == x.to_delta()),
                ("dimension", xy.dimension_q() == x.dimension_q() * y.dimension_q()),
            ];
            for (name, good) in ok {
                if !good {
                    fails.push(format!("triple {t}: {name}"));
                }
            }
        }
        r.check(
            format!("p={p} {} triples", opts.axiom_triples),
            fails.is_empty(),
            fails.first().cloned().unwrap_or_else(|| format!("seed {:#x}", opts.seed)),
        );
    }
    Ok(r)
}

/// Pairs `(i, j)` covered by the closed-form λ-rules.
pub fn rule_domain(p: Prime) -> Vec<(u32, u32)> {
    let pp = p.get();
    let mut out = vec![];
    if pp == 2 {
        for i in 0..64 {
            for j in i..64 {
                out.push((i, j));
            }
        }
        return out;
    }
    for i in 0..pp {
        for j in i..pp {
            out.push((i, j));
        }
    }
    for qq in [pp, pp * pp] {
        for i in 1..qq {
            for m in 1..qq {
                for j in [qq * m, qq * m - 1] {
                    if j >= pp {
                        out.push((i, j));
                    }
                }
            }
        }
    }
    out
}

fn core_structural(_: &VerifyOptions) -> Result<Report> {
    let mut r = Report::new();
    for p in [2u32, 3, 5, 7] {
        let pr = prime(p);
        let domain = rule_domain(pr);
        let mut bad = None;
        for &(i, j) in &domain {
            let (li, lj) = (GammaElement::lambda(pr, i), GammaElement::lambda(pr, j));
            if li.mul_structural(&lj)?.to_delta() != li.mul(&lj)? {
                bad = Some((i, j));
                break;
            }
        }
        r.check(
            format!("p={p} mul_structural = mul on {} pairs", domain.len()),
            bad.is_none(),
            bad.map(|(i, j)| format!("λ_{i}·λ_{j}")).unwrap_or_default(),
        );
    }
    let two = prime(2);
    let squares = (0..=6).map(|n| {
        let l = GammaElement::lambda(two, 1 << n);
        Ok(l.mul(&l)? == GammaElement::lambda(two, 0))
    });
    let squares = squares.collect::<Result<Vec<bool>>>()?;
    r.check("p=2 λ_(2^n)^2 = λ_0 for 2^n <= 64", squares.iter().all(|&b| b), "");
    let outside = lambda_pair(prime(3), 3, 4);
    r.check("λ_3·λ_4 at p=3 lies outside the rules", outside.is_err(), "");
    Ok(r)
}

fn core_oracle(_: &VerifyOptions) -> Result<Report> {
    let mut r = Report::new();
    for p in CHARS {
        let pr = prime(p);
        let mut bad = None;
        'outer: for i in 1..=9 {
            for j in 1..=11 {
                if delta_product_partition(i, j, pr)? != delta_product_dense(i, j, pr)? {
                    bad = Some((i, j));
                    break 'outer;
                }
            }
        }
        r.check(format!("p={p} graded = dense for i<=9, j<=11"), bad.is_none(), format!("{bad:?}"));
        let mut bad = None;
        'digits: for i in 1..=24 {
            for j in i..=24 {
                let product = GammaElement::delta(pr, i).mul(&GammaElement::delta(pr, j))?;
                if product != GammaElement::from_partition(pr, &delta_product_partition(i, j, pr)?) {
                    bad = Some((i, j));
                    break 'digits;
                }
            }
        }
        r.check(format!("p={p} ring product = rank oracle for i, j <= 24"), bad.is_none(), format!("{bad:?}"));
        let unit = (1..=20).map(|j| Ok(delta_product_oracle(1, j, pr)? == GammaElement::delta(pr, j)));
        let unit = unit.collect::<Result<Vec<bool>>>()?;
        r.check(format!("p={p} δ_1·δ_j = δ_j"), unit.iter().all(|&b| b), "");
        let mut qq = p;
        while qq * qq <= 400 {
            let part = jordan_partition(&xy_on_box(pr, qq as usize))?;
            let ok = GammaElement::from_partition(pr, &part) == mu_delta(pr, qq);
            r.check(format!("p={p} q={qq} xy on k[x,y]/(x^q,y^q)"), ok, "");
            qq *= p;
        }
    }
    Ok(r)
}

fn core_oracle_invariants(opts: &VerifyOptions) -> Result<Report> {
    let mut r = Report::new();
    let mut rng = rng_for(opts, 300);
    let polys: [(u32, usize, &str); 5] = [
        (2, 3, "x0*x1 + x2^3"),
        (3, 3, "x0^2 + x1^2 + x2^4"),
        (5, 3, "x0*x1 + x2^2"),
        (3, 4, "x0*x1 + x2^2 + x3^3"),
        (2, 4, "x0^3 + x1^3 + x2*x3"),
    ];
    for (p, n, text) in polys {
        let pr = prime(p);
        let f = crate::oracle::parse_poly(text, pr, n)?;
        let base = direct_hk(&f, 1)?;
        let mut same = true;
        for _ in 0..4 {
            let mut perm: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                perm.swap(i, rng.gen_range(0..=i));
            }
            let terms = f
                .terms
                .iter()
                .map(|(c, ex)| {
                    let unit = rng.gen_range(1..p as i64);
                    let moved: Vec<u32> = (0..n).map(|i| ex[perm[i]]).collect();
                    (*c as i64 * unit, moved)
                })
                .collect();
            same &= direct_hk(&PolySpec::new(pr, n, terms)?, 1)? == base;
        }
        r.check(format!("p={p} {text}: HK_1 invariant under permutation and unit rescaling"), same, base.to_string());
    }
    for p in CHARS {
        let pr = prime(p);
        let mut ok = true;
        for (i, j) in [(3u32, 4u32), (5, 7), (8, 9), (2, 11)] {
            let m = crate::oracle::delta::x_plus_y_matrix(i, j, pr);
            let part = jordan_partition(&m)?;
            let conj = part.conjugate();
            ok &= conj.iter().sum::<u64>() == part.dimension() && part.dimension() == (i * j) as u64;
            ok &= conj.windows(2).all(|w| w[0] >= w[1]);
        }
        r.check(format!("p={p} rank(N^k) non-increasing, conjugate sums to dimension"), ok, "");
    }
    Ok(r)
}

/// Multiplication by `xy` on `k[x,y]/(x^q, y^q)`.
fn xy_on_box(p: Prime, q: usize) -> FpMatrix {
    let mut m = FpMatrix::zeros(p, q * q, q * q);
    for a in 0..q - 1 {
        for b in 0..q - 1 {
            m.set((a + 1) * q + b + 1, a * q + b, 1);
        }
    }
    m
}

/// `x^c` acting on `k[x]/(x^a)`.
fn power_on_line(p: Prime, a: usize, c: usize) -> FpMatrix {
    let mut m = FpMatrix::zeros(p, a, a);
    for i in 0..a.saturating_sub(c) {
        m.set(i + c, i, 1);
    }
    m
}

fn core_cyclic(_: &VerifyOptions) -> Result<Report> {
    let mut r = Report::new();
    for p in CHARS {
        let pr = prime(p);
        let mut qq = p as u64;
        let mut ok = true;
        let mut orbit = true;
        while qq <= 128 {
            for c in 1..=9u64 {
                let lhs = delta_fractional(&Q::new(BigInt::from(qq), BigInt::from(c)), pr)?.scale(&qi(c as i64));
                ok &= lhs == cyclic_decompose(CyclicSpec { a: qq, c }, pr)?;
                let part = jordan_partition(&power_on_line(pr, qq as usize, c as usize))?;
                orbit &= GammaElement::from_partition(pr, &part) == cyclic_decompose(CyclicSpec { a: qq, c }, pr)?;
            }
            qq *= p as u64;
        }
        r.check(format!("p={p} c·δ(q/c) = k[x]/(x^q) under x^c"), ok, "");
        r.check(format!("p={p} cyclic decomposition = orbit lengths"), orbit, "");
    }
    Ok(r)
}

fn core_diagonal(_: &VerifyOptions) -> Result<Report> {
    let mut r = Report::new();
    let cases: [(u32, &[u32]); 8] = [
        (2, &[2, 3]),
        (2, &[3, 3, 3]),
        (3, &[2, 2, 2]),
        (3, &[2, 5, 4]),
        (5, &[2, 2, 3]),
        (5, &[3, 4]),
        (7, &[2, 2, 5]),
        (3, &[2, 2, 2, 2]),
    ];
    for (p, exps) in cases {
        let pr = prime(p);
        let f = PolySpec::diagonal(pr, exps)?;
        for e in 1..=3 {
            let Ok(direct) = direct_hk(&f, e) else { break };
            let ring = hk_diagonal(exps, pr, e)?;
            r.check(format!("p={p} {exps:?} e={e}"), ring == BigInt::from(direct), format!("{ring} vs {direct}"));
        }
    }
    Ok(r)
}

/// `σ_{k,e} = 2^{-e} Π_j (λ_0 ± λ_{2^j})` computed in Γ.
pub fn sigma_gamma(k: usize, e: u32) -> Result<GammaElement> {
    let two = prime(2);
    let mut acc = GammaElement::one(two);
    for j in 0..e {
        let sign = if (k >> j) & 1 == 1 { qi(-1) } else { qi(1) };
        let factor = GammaElement::lambda(two, 0).add(&GammaElement::lambda(two, 1 << j).scale(&sign))?;
        acc = acc.mul(&factor)?;
    }
    Ok(acc.scale(&Q::new(BigInt::one(), pow_int(2, e))))
}

fn sign(bits: u32) -> Q {
    if bits.is_multiple_of(2) {
        qi(1)
    } else {
        qi(-1)
    }
}

fn sigma_properties(opts: &VerifyOptions) -> Result<Report> {
    let two = prime(2);
    let mut r = Report::new();
    let small = opts.max_e.min(4);
    for e in 1..=opts.max_e {
        let n = 1usize << e;
        let s: Vec<GammaElement> = (0..n).map(|k| sigma_gamma(k, e)).collect::<Result<_>>()?;
        let scale = Q::new(BigInt::one(), pow_int(2, e));

        let walsh_ok = (0..n).all(|k| {
            let formula = GammaElement::from_coeffs(
                two,
                Basis::Lambda,
                (0..n).map(|i| (i as u32, sign((i & k).count_ones()) * &scale)),
            );
            formula.to_delta() == s[k].to_delta()
        });
        r.check(format!("e={e} (e) λ-expansion"), walsh_ok, "");

        let lambdas: Vec<SigmaVector> =
            (0..n).map(|i| SigmaVector::from_gamma(&GammaElement::lambda(two, i as u32), e)).collect::<Result<_>>()?;
        let mut hom = true;
        for i in 0..n {
            for j in i..n {
                let prod = GammaElement::lambda(two, i as u32).mul(&GammaElement::lambda(two, j as u32))?;
                hom &= SigmaVector::from_gamma(&prod, e)? == lambdas[i].mul(&lambdas[j])?;
            }
        }
        r.check(format!("e={e} (a) σ-coordinates are multiplicative on Λ_e"), hom, "");

        if e <= small {
            let mut idem = true;
            for k in 0..n {
                for l in k..n {
                    let prod = s[k].mul(&s[l])?;
                    idem &= if k == l { prod == s[k].to_delta() } else { prod.is_zero() };
                }
            }
            r.check(format!("e={e} (a) σ_k σ_l = [k=l] σ_k in Γ"), idem, "");

            let mut rng = rng_for(opts, 200 + e as u64);
            let coords: Vec<Q> = (0..n).map(|_| qi(rng.gen_range(-9..=9))).collect();
            let eta = s
                .iter()
                .zip(&coords)
                .try_fold(GammaElement::zero(two, Basis::Delta), |acc, (x, c)| acc.add(&x.scale(c)))?;
            let extract =
                (0..n).map(|k| Ok(s[k].mul(&eta)? == s[k].scale(&coords[k]).to_delta())).collect::<Result<Vec<_>>>()?;
            r.check(format!("e={e} (b) σ_k η = a_k σ_k"), extract.iter().all(|&b| b), "");

            for e2 in e..=small {
                let mut ok = true;
                for l in 0..1usize << e2 {
                    let sl = sigma_gamma(l, e2)?;
                    for (k, sk) in s.iter().enumerate() {
                        let expect = l % n == k;
                        let prod = sl.mul(sk)?;
                        ok &= if expect { prod == sl.to_delta() } else { prod.is_zero() };
                    }
                }
                r.check(format!("e={e} e'={e2} (c) σ_l,e' σ_k,e = [l ≡ k mod 2^e] σ_l,e'"), ok, "");
                if e2 > e {
                    let (k, l) = (0, 2 * n - 1);
                    let loose = sigma_gamma(l, e2)?.mul(&s[k])? == sigma_gamma(l, e2)?.to_delta();
                    r.check(format!("e={e} e'={e2} |l-k| >= 2^e alone does not give σ_l,e'"), !loose, "");
                }
            }
        }

        if e < opts.max_e {
            let split = (0..n)
                .map(|k| Ok(sigma_gamma(k, e + 1)?.add(&sigma_gamma(n + k, e + 1)?)?.to_delta() == s[k].to_delta()))
                .collect::<Result<Vec<_>>>()?;
            r.check(format!("e={e} (d) σ_k,e = σ_k,e+1 + σ_2^e+k,e+1"), split.iter().all(|&b| b), "");
        }

        let alt = GammaElement::from_coeffs(two, Basis::Lambda, (0..n).map(|j| (j as u32, sign(j as u32) * &scale)));
        let d = GammaElement::delta(two, n as u32).scale(&scale);
        r.check(format!("e={e} (f) σ_1 = δ_2^e / 2^e"), s[1].to_delta() == d && alt.to_delta() == d, "");
        r.check(format!("e={e} (g) α(σ_k) = 2^-e"), s.iter().all(|x| x.alpha() == scale), "");
    }
    Ok(r)
}

fn sigma_lambda_lemmas(opts: &VerifyOptions) -> Result<Report> {
    let two = prime(2);
    let mut r = Report::new();
    for e in 1..=opts.max_e {
        let n = 1usize << e;
        let lam = GammaElement::lambda(two, n as u32 - 1);
        let mut same = true;
        for k in 0..n {
            let s = sigma_gamma(k, e)?;
            same &= s.mul(&lam)? == s.scale(&sign(k.count_ones())).to_delta();
        }
        r.check(format!("e={e} σ_k,e λ_2^e-1 = (-1)^|k| σ_k,e"), same, "");
        if e < opts.max_e {
            let mut next = true;
            for k in 0..2 * n {
                let s = sigma_gamma(k, e + 1)?;
                next &= s.mul(&lam)? == s.scale(&sign((k % n).count_ones())).to_delta();
            }
            r.check(format!("e={e} σ_k,e+1 λ_2^e-1 = (-1)^|k mod 2^e| σ_k,e+1"), next, "");
        }
    }
    Ok(r)
}

fn sigma_recursions(opts: &VerifyOptions) -> Result<Report> {
    let two = prime(2);
    let mut r = Report::new();
    for e in 1..=opts.max_e.max(8) {
        let in_sigma = e <= opts.max_e;
        let qq = 1u32 << e;
        let mut ok = !in_sigma || sigma::mu(e)?.to_gamma().to_delta() == mu_delta(two, qq);
        if e <= 4 {
            ok &= GammaElement::from_partition(two, &jordan_partition(&xy_on_box(two, qq as usize))?)
                == mu_delta(two, qq);
        }
        r.check(format!("e={e} μ_e σ-coordinates"), ok, "");
        let xi_gamma = delta_fractional(&Q::new(BigInt::from(qq), BigInt::from(3)), two)?.scale(&qi(3));
        r.check(format!("e={e} ξ_e = 3δ_2^e/3"), !in_sigma || sigma::xi(e)?.to_gamma().to_delta() == xi_gamma, "");
        if e < 2 {
            continue;
        }
        let mu_prev = mu_delta(two, qq / 2);
        let corr = GammaElement::delta(two, qq / 2).scale(&qb(pow_int(2, e)));
        let plus = GammaElement::lambda(two, 0).add(&GammaElement::lambda(two, qq / 2))?;
        let minus = GammaElement::lambda(two, 0).sub(&GammaElement::lambda(two, qq / 2))?;
        let mu_e = mu_delta(two, qq);
        r.check(
            format!("e={e} μ_e = (λ_0 + λ_2^(e-1))μ_e-1 + 2^(2e-1)σ_1,e-1"),
            plus.mul(&mu_prev)?.add(&corr)? == mu_e && (!in_sigma || sigma::mu_step(e)? == sigma::mu(e)?),
            "",
        );
        r.check(format!("e={e} minus sign in the μ recursion fails"), minus.mul(&mu_prev)?.add(&corr)? != mu_e, "");
        let xi_prev = delta_fractional(&Q::new(BigInt::from(qq / 2), BigInt::from(3)), two)?.scale(&qi(3));
        let rhs = GammaElement::lambda(two, qq / 2 - 1)
            .mul(&xi_prev)?
            .add(&GammaElement::delta(two, qq / 2).scale(&qi(3)))?;
        r.check(
            format!("e={e} ξ_e = λ_2^(e-1)-1 ξ_e-1 + 3δ_2^(e-1)"),
            rhs == xi_gamma && (!in_sigma || sigma::xi_step(e)? == sigma::xi(e)?),
            "",
        );
    }
    Ok(r)
}

fn sigma_critical(opts: &VerifyOptions) -> Result<Report> {
    let mut r = Report::new();
    for e in 2..=opts.max_e {
        let x = sigma::xi(e)?;
        let mut expect = vec![(0usize, qi(2)), (1, qb(pow_int(2, e)))];
        for k in 1..e {
            expect.push(((1usize << k) + 1, qb(pow_int(2, k + 1))));
        }
        let bad: Vec<String> = expect
            .iter()
            .filter(|(i, v)| x.coeff(*i) != v)
            .map(|(i, v)| format!("a_{i} = {} (expected {v})", x.coeff(*i)))
            .collect();
        r.check(format!("e={e} a_0 = 2, a_1 = 2^e, a_2^k+1 = 2^(k+1)"), bad.is_empty(), bad.join("; "));
        r.check(format!("e={e} a_1 != 2^(e+1)"), *x.coeff(1) != qb(pow_int(2, e + 1)), "");
    }
    Ok(r)
}

fn sigma_hk(opts: &VerifyOptions) -> Result<Report> {
    let two = prime(2);
    let mut r = Report::new();
    for variant in [Variant::A1, Variant::A2] {
        for d in 2..=9 {
            for e in 1..=opts.max_e.min(6) {
                let sigma = hk_char2(variant, d, e)?;
                let closed = closed_form(variant, 2, d, Level::Finite(e))?;
                let ring = hk_quadric(variant, d, two, e)?;
                let mut ok = qb(sigma.clone()) == closed && ring == sigma;
                let mut detail = format!("σ {sigma}, closed {closed}, ring {ring}");
                if 2u64.pow(e * (d + 1)) <= 40_000 {
                    let direct = direct_hk(&PolySpec::quadric(variant, d, two)?, e)?;
                    ok &= BigInt::from(direct) == sigma;
                    detail.push_str(&format!(", oracle {direct}"));
                }
                r.check(format!("{variant} d={d} e={e}"), ok, detail);
            }
        }
    }
    Ok(r)
}

fn gamma_identities(_: &VerifyOptions) -> Result<Report> {
    let mut r = Report::new();
    for p in [5u32, 7, 11] {
        r.extend(check_gamma_identities(prime(p), 5)?);
    }
    Ok(r)
}

fn gamma_hk1(_: &VerifyOptions) -> Result<Report> {
    let mut r = Report::new();
    for p in [5u32, 7, 11] {
        let pr = prime(p);
        for d in 1..=5 {
            let (hr, hs) = hk1_identities(pr, d)?;
            let floors = hk1_floor_sums(pr, d)?;
            let ring = (hk_quadric(Variant::A1, d.max(2), pr, 1)?, hk_quadric(Variant::A2, d.max(2), pr, 1)?);
            let mut ok = (hr.clone(), hs.clone()) == floors;
            if d >= 2 {
                ok &= (hr.clone(), hs.clone()) == ring;
            }
            let oracle_fits = (p == 5 && d <= 4) || (p == 7 && d <= 3);
            if oracle_fits && d >= 2 {
                let dr = direct_hk(&PolySpec::quadric(Variant::A1, d, pr)?, 1)?;
                let ds = direct_hk(&PolySpec::quadric(Variant::A2, d, pr)?, 1)?;
                ok &= hr == BigInt::from(dr) && hs == BigInt::from(ds);
            }
            r.check(format!("p={p} d={d} HK_1 from γ^d"), ok, format!("R {hr}, S {hs}"));
        }
    }
    Ok(r)
}

fn hk_data(_: &VerifyOptions) -> Result<Report> {
    let mut r = Report::new();
    let cases: [(u32, &[u32]); 6] =
        [(3, &[2, 2, 2]), (5, &[2, 2, 2, 3]), (3, &[2, 2, 3]), (7, &[2, 2, 5]), (5, &[3, 3, 3]), (11, &[2, 3, 4])];
    for (p, exps) in cases {
        let pr = prime(p);
        let (n0, mu) = find_parameters(exps, pr, 8)?;
        let beta = beta_for(exps, pr, n0);
        let data = associated_data(&beta, mu, pr)?;
        let pm = qb(pow_int(p as u64, mu));
        let integral = data.t.iter().zip(&data.z).zip(&data.zprime).all(|((t, z), zp)| qi(*t as i64) == z * &pm - zp);
        r.check(format!("p={p} {exps:?} t = p^μ z - z' integral"), integral, format!("n0={n0} μ={mu}"));
        let report = ehk(&Singularity::Diagonal(exps.to_vec()), pr)?;
        r.check(format!("p={p} {exps:?} recursion at stored levels"), report.check_recursion(), report.ehk.to_string());
    }
    let ex = ehk(&Singularity::Diagonal(vec![2, 2, 5]), prime(7))?;
    r.check("x^2+y^2+z^5 at p=7 has eHK 9/5", ex.ehk == q(9, 5), ex.ehk.to_string());
    Ok(r)
}

fn hk_table(_: &VerifyOptions) -> Result<Report> {
    let mut r = Report::new();
    for p in [3u32, 5, 7] {
        for d in 3..=7 {
            let rep = ehk(&Singularity::Quadric { variant: Variant::A1, d }, prime(p))?;
            let table = quadric_table(p, d)?;
            r.check(
                format!("p={p} d={d} eHK(R)"),
                rep.ehk == table && rep.path == HkPath::Algorithm && rep.check_recursion(),
                format!("{} vs {table}", rep.ehk),
            );
        }
    }
    for d in 3..=7 {
        let table = quadric_table(3, d)?;
        let closed = closed_form(Variant::A1, 3, d, Level::Infinite)?;
        r.check(format!("p=3 d={d} table row = closed form"), table == closed, format!("{table} vs {closed}"));
    }
    for p in [3u32, 5, 7] {
        for d in 2..=4 {
            for e in 1..=2 {
                let mut ok = true;
                for variant in [Variant::A1, Variant::A2] {
                    let mut exps = vec![2u32; d as usize + 1];
                    if variant == Variant::A2 {
                        exps[d as usize] = 3;
                    }
                    ok &= hk_quadric(variant, d, prime(p), e)? == hk_diagonal(&exps, prime(p), e)?;
                }
                r.check(format!("p={p} d={d} e={e} quadric = diagonal form"), ok, "");
            }
        }
    }
    let routes = [
        (2u32, Variant::A1, HkPath::SigmaEngine),
        (2, Variant::A2, HkPath::SigmaEngine),
        (3, Variant::A2, HkPath::PowerTrick),
        (5, Variant::A1, HkPath::Algorithm),
    ];
    for (p, variant, path) in routes {
        let rep = ehk(&Singularity::Quadric { variant, d: 3 }, prime(p))?;
        r.check(format!("p={p} {variant} routed to {path:?}"), rep.path == path, format!("{:?}", rep.path));
    }
    Ok(r)
}

fn hk_small_char(_: &VerifyOptions) -> Result<Report> {
    let mut r = Report::new();
    for d in 2..=9 {
        for variant in [Variant::A1, Variant::A2] {
            let rep = ehk(&Singularity::Quadric { variant, d }, prime(2))?;
            let closed = closed_form(variant, 2, d, Level::Infinite)?;
            r.check(format!("p=2 {variant} d={d}"), rep.ehk == closed, format!("{} vs {closed}", rep.ehk));
        }
    }
    for d in 2..=8 {
        for variant in [Variant::A1, Variant::A2] {
            let rep = ehk(&Singularity::Quadric { variant, d }, prime(3))?;
            let closed = closed_form(variant, 3, d, Level::Infinite)?;
            r.check(format!("p=3 {variant} d={d}"), rep.ehk == closed, format!("{} vs {closed}", rep.ehk));
        }
    }
    for d in 2..=6 {
        let expect = pow_int(2, d) + pow_int(3, d);
        let spec = Singularity::Quadric { variant: Variant::A1, d };
        let ring = hk_function(&spec, prime(3), 1)?;
        let direct = direct_hk(&PolySpec::quadric(Variant::A1, d, prime(3))?, 1)?;
        r.check(format!("p=3 HK_1(R_d) = 2^d + 3^d, d={d}"), ring == expect && BigInt::from(direct) == expect, "");
    }
    Ok(r)
}

fn hk_separation(_: &VerifyOptions) -> Result<Report> {
    let mut r = Report::new();
    for p in [2u32, 3, 5, 7, 11] {
        for d in 2..=6 {
            let a1 = ehk(&Singularity::Quadric { variant: Variant::A1, d }, prime(p))?.ehk;
            let a2 = ehk(&Singularity::Quadric { variant: Variant::A2, d }, prime(p))?.ehk;
            r.check(format!("p={p} d={d} eHK(S) > eHK(R)"), a2 > a1, format!("{a2} > {a1}"));
            if p >= 5 {
                let pd = qb(pow_int(p as u64, d));
                let hk1 = qb(hk_quadric(Variant::A2, d, prime(p), 1)?);
                let sharp = yoshida_ell_sharp(Variant::A2, d, prime(p))?;
                let expect = qi(1) + (hk1 - &pd) / (pd - sharp);
                r.check(format!("p={p} d={d} eHK(S) from HK_1 with μ=1"), a2 == expect, expect.to_string());
            }
        }
    }
    Ok(r)
}

fn hk_lower_bound(_: &VerifyOptions) -> Result<Report> {
    let mut r = Report::new();
    let mut grid: Vec<(u32, u32)> = vec![];
    grid.extend((3..=7).flat_map(|d| [3u32, 5, 7].map(|p| (p, d))));
    grid.extend((2..=9).map(|d| (2, d)));
    grid.extend((2..=8).map(|d| (3, d)));
    let mut equal = std::collections::BTreeSet::new();
    for (p, d) in grid {
        let v = ehk(&Singularity::Quadric { variant: Variant::A1, d }, prime(p))?.ehk;
        let bound = qi(1) + zigzag_c(d);
        r.check(format!("p={p} d={d} eHK(R) >= 1 + c_d"), v >= bound, format!("{v} >= {bound}"));
        if v == bound {
            equal.insert(d);
        }
    }
    r.check("equality at d=3", equal.contains(&3), format!("equality at d in {equal:?}"));
    Ok(r)
}

fn formulas_inequalities(_: &VerifyOptions) -> Result<Report> {
    let mut r = Report::new();
    for p in [5u32, 7, 11, 13] {
        for d in 2..=5 {
            r.extend(check_inequalities(prime(p), d)?);
        }
    }
    Ok(r)
}

fn formulas_bounds(_: &VerifyOptions) -> Result<Report> {
    let mut r = check_bounds()?;
    r.extend(boundary_check()?);
    Ok(r)
}

fn formulas_zigzag(_: &VerifyOptions) -> Result<Report> {
    let mut r = Report::new();
    let expect = [(0, q(1, 1)), (1, q(1, 1)), (2, q(1, 2)), (3, q(1, 3)), (4, q(5, 24)), (5, q(2, 15))];
    for (d, v) in expect {
        r.check(format!("c_{d}"), zigzag_c(d) == v, zigzag_c(d).to_string());
    }
    r.check("c_d > 0", (0..=20).all(|d| zigzag_c(d) > Q::zero()), "");
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in [Suite::Core, Suite::Sigma, Suite::Gamma, Suite::Hk, Suite::Formulas, Suite::All] {
            assert_eq!(s.to_string().parse::<Suite>().unwrap(), s);
        }
        assert!("everything".parse::<Suite>().is_err());
    }

    #[test]
    fn rule_domain_sizes() {
        assert_eq!(rule_domain(prime(2)).len(), 64 * 65 / 2);
        assert!(rule_domain(prime(3)).contains(&(2, 8)));
    }

    #[test]
    fn sigma_gamma_matches_sigma_vector() {
        for e in 1..=3 {
            for k in 0..1usize << e {
                let via_vec = SigmaVector::basis(k, e).unwrap().to_gamma().to_delta();
                assert_eq!(sigma_gamma(k, e).unwrap().to_delta(), via_vec);
            }
        }
    }

    #[test]
    fn formulas_suite_passes() {
        let out = verify(Suite::Formulas, &VerifyOptions::default());
        assert!(out.passed, "{:?}", out.sections.iter().find(|s| !s.passed));
    }
}
