//! Command-line front end.
//!
//! [`run`] parses an argument vector, executes one subcommand and returns the
//! exit code with the captured output streams, so the binary and the tests
//! share one code path.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use crate::config;
use crate::error::Error;
use crate::formulas::{table, TableName, CSV_HEADER};
use crate::hk::{ehk, hk_function, HkReport, Singularity, Variant};
use crate::oracle::{direct_hk, parse_poly};
use crate::prime::Prime;
use crate::rational::JsonRational;
use crate::ring::{Basis, GammaElement};
use crate::verify::{verify, Suite, VerifyOptions, DEFAULT_MAX_E, DEFAULT_SEED};

pub const EXIT_OK: i32 = 0;
pub const EXIT_COMPUTATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VERIFICATION: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

/// Settings shared by every subcommand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CliConfig {
    pub format: Format,
    pub size_limit: u64,
    pub mu_cap: u32,
    pub parallel: bool,
}

impl Default for CliConfig {
    fn default() -> Self {
        CliConfig {
            format: Format::Text,
            size_limit: config::env_size_limit(),
            mu_cap: config::DEFAULT_MU_CAP,
            parallel: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "UPPER")]
enum SingArg {
    A1,
    A2,
}

impl From<SingArg> for Variant {
    fn from(s: SingArg) -> Variant {
        match s {
            SingArg::A1 => Variant::A1,
            SingArg::A2 => Variant::A2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BasisArg {
    Delta,
    Lambda,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Core,
    Sigma,
    Gamma,
    Hk,
    Formulas,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableArg {
    Quadrics,
    Char2,
    Char3,
    Bounds,
}

#[derive(Debug, Parser)]
#[command(name = "hk-forge", version, about = "Hilbert-Kunz multiplicities via the Han-Monsky representation ring")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    /// Maximum dense oracle matrix dimension (overrides HK_FORGE_SIZE_LIMIT).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    size_limit: Option<u64>,
    /// Largest period tried by the periodicity search.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    mu_cap: Option<u32>,
    /// Run independent verification cases in parallel.
    #[arg(long, global = true)]
    parallel: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Target {
    /// Characteristic.
    #[arg(long)]
    p: u32,
    /// Quadric family.
    #[arg(long, value_enum, ignore_case = true, requires = "d", conflicts_with = "diagonal")]
    singularity: Option<SingArg>,
    /// Dimension of the quadric.
    #[arg(long)]
    d: Option<u32>,
    /// Exponents of a diagonal hypersurface, comma separated.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    diagonal: Option<Vec<u32>>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Hilbert-Kunz multiplicity of a quadric or diagonal hypersurface.
    Ehk(Target),
    /// Hilbert-Kunz function values over a range of levels.
    Function {
        #[command(flatten)]
        target: Target,
        /// Level or range `E1..E2`.
        #[arg(long, default_value = "1..3")]
        e: String,
    },
    /// Direct linear-algebra computation of HK_e for a polynomial.
    Oracle {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        e: u32,
        #[arg(long)]
        nvars: usize,
        #[arg(long)]
        poly: String,
    },
    /// Arithmetic in the representation ring.
    #[command(subcommand)]
    Ring(RingCommand),
    /// Run self-verification suites.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        /// Largest σ level checked.
        #[arg(long, default_value_t = DEFAULT_MAX_E, value_parser = clap::value_parser!(u32).range(1..=10))]
        max_e: u32,
        /// Seed for randomized cases.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Tabulate multiplicities or bound functions.
    Table {
        #[arg(long, value_enum)]
        name: TableArg,
        /// Comma separated list of primes.
        #[arg(long, value_delimiter = ',')]
        p: Vec<u32>,
    },
}

#[derive(Debug, Subcommand)]
enum RingCommand {
    /// Product of two elements.
    Mul {
        #[arg(long)]
        p: u32,
        #[arg(long, allow_hyphen_values = true)]
        lhs: String,
        #[arg(long, allow_hyphen_values = true)]
        rhs: String,
        /// Output basis; defaults to the basis of `lhs`.
        #[arg(long, value_enum)]
        basis: Option<BasisArg>,
        /// Use the closed-form λ-rules instead of the Jordan-type product.
        #[arg(long)]
        structural: bool,
    },
    /// `α` (number of Jordan blocks) and dimension of an element.
    Alpha {
        #[arg(long)]
        p: u32,
        #[arg(long, allow_hyphen_values = true)]
        elt: String,
    },
}

/// Exit code and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Failure {
    code: i32,
    error: Error,
}

impl From<Error> for Failure {
    fn from(error: Error) -> Self {
        let code = match error {
            Error::NotPrime(_) | Error::Syntax { .. } | Error::UnknownVariable(_) => EXIT_USAGE,
            _ => EXIT_COMPUTATION,
        };
        Failure { code, error }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, error: Error::InvalidInput(msg.into()) }
}

/// Stable machine name of an error.
pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::NotPrime(_) => "not_prime",
        Error::InvalidInput(_) => "invalid_input",
        Error::CharacteristicMismatch { .. } => "characteristic_mismatch",
        Error::NotReducible { .. } => "not_reducible",
        Error::SizeLimit { .. } => "size_limit",
        Error::NotNilpotent => "not_nilpotent",
        Error::Syntax { .. } => "syntax",
        Error::UnknownVariable(_) => "unknown_variable",
        Error::LevelMismatch(..) => "level_mismatch",
        Error::NotPowerOfTwo(_) => "not_power_of_two",
        Error::NoPeriodFound(_) => "no_period_found",
        Error::DegenerateDenominator => "degenerate_denominator",
        Error::Inconsistent(_) => "inconsistent",
        Error::Unsupported(_) => "unsupported",
    }
}

#[derive(Default)]
struct Out {
    stdout: String,
    stderr: String,
}

impl Out {
    fn line(&mut self, s: impl AsRef<str>) {
        self.stdout.push_str(s.as_ref());
        self.stdout.push('\n');
    }

    fn warn(&mut self, s: impl AsRef<str>) {
        let _ = writeln!(self.stderr, "warning: {}", s.as_ref());
    }

    fn json(&mut self, v: &Value) {
        self.line(serde_json::to_string_pretty(v).expect("JSON values serialize"));
    }
}

/// Run the command line `argv` (including the program name).
pub fn run<I, T>(argv: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                CliOutput { code, stdout: text, stderr: String::new() }
            } else {
                CliOutput { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let cfg = CliConfig {
        format: cli.format,
        size_limit: cli.size_limit.unwrap_or_else(config::env_size_limit),
        mu_cap: cli.mu_cap.unwrap_or(config::DEFAULT_MU_CAP),
        parallel: cli.parallel,
    };
    config::set_size_limit(cfg.size_limit);
    config::set_mu_cap(cfg.mu_cap);

    let mut out = Out::default();
    let code = match execute(&cli.command, &cfg, &mut out) {
        Ok(code) => code,
        Err(f) => {
            let record = json!({
                "error": {
                    "code": f.code,
                    "kind": error_kind(&f.error),
                    "message": f.error.to_string(),
                }
            });
            match cfg.format {
                Format::Json => out.json(&record),
                _ => {
                    let _ = writeln!(out.stderr, "error[{}]: {}", error_kind(&f.error), f.error);
                }
            }
            f.code
        }
    };
    CliOutput { code, stdout: out.stdout, stderr: out.stderr }
}

fn prime(p: u32) -> Result<Prime, Failure> {
    Prime::new(p).map_err(|_| usage(format!("{p} is not a prime")))
}

fn singularity(t: &Target, out: &mut Out) -> Result<Singularity, Failure> {
    match (&t.singularity, &t.diagonal) {
        (Some(v), None) => {
            let d = t.d.ok_or_else(|| usage("--singularity needs --d"))?;
            Ok(Singularity::Quadric { variant: (*v).into(), d })
        }
        (None, Some(exps)) => {
            if t.d.is_some() {
                return Err(usage("--d applies to --singularity only"));
            }
            if t.p == 2 && exps.iter().all(|&e| e == 2) {
                out.warn(
                    "[warn-char2-diagonal] a sum of squares is a square in characteristic 2; \
                     use --singularity A1 for the quadric",
                );
            }
            Ok(Singularity::Diagonal(exps.clone()))
        }
        _ => Err(usage("give exactly one of --singularity/--d or --diagonal")),
    }
}

fn parse_range(text: &str) -> Result<(u32, u32), Failure> {
    let bad = || usage(format!("bad level range {text:?} (expected E or E1..E2)"));
    let (a, b) = match text.split_once("..") {
        Some((a, b)) => (a.trim(), b.trim().trim_start_matches('=')),
        None => (text.trim(), text.trim()),
    };
    let a: u32 = a.parse().map_err(|_| bad())?;
    let b: u32 = b.parse().map_err(|_| bad())?;
    if a == 0 || b < a {
        return Err(bad());
    }
    Ok((a, b))
}

fn rational_json(x: &crate::rational::Q) -> Value {
    serde_json::to_value(JsonRational::from(x)).expect("rationals serialize")
}

fn execute(cmd: &Command, cfg: &CliConfig, out: &mut Out) -> Result<i32, Failure> {
    match cmd {
        Command::Ehk(t) => {
            let spec = singularity(t, out)?;
            let report = ehk(&spec, prime(t.p)?)?;
            emit_report(&report, cfg, out);
        }
        Command::Function { target, e } => {
            let spec = singularity(target, out)?;
            let p = prime(target.p)?;
            let (lo, hi) = parse_range(e)?;
            let values: Vec<(u32, BigInt)> =
                (lo..=hi).map(|e| Ok((e, hk_function(&spec, p, e)?))).collect::<Result<_, Error>>()?;
            match cfg.format {
                Format::Json => out.json(&json!({
                    "p": p.get(),
                    "d": spec.dimension(),
                    "singularity": spec.to_string(),
                    "values": values.iter().map(|(e, v)| json!({"e": e, "hk": v.to_string()})).collect::<Vec<_>>(),
                })),
                Format::Csv => {
                    out.line("p,d,e,hk");
                    for (e, v) in &values {
                        out.line(format!("{},{},{e},{v}", p, spec.dimension()));
                    }
                }
                Format::Text => {
                    for (e, v) in &values {
                        out.line(format!("HK_{e} = {v}"));
                    }
                }
            }
        }
        Command::Oracle { p, e, nvars, poly } => {
            let p = prime(*p)?;
            let f = parse_poly(poly, p, *nvars)?;
            if f.low_degree {
                out.warn("polynomial has a term of degree below 2; the ring may be regular or the ideal improper");
            }
            let v = direct_hk(&f, *e)?;
            match cfg.format {
                Format::Json => out.json(&json!({"p": p.get(), "e": e, "poly": f.to_string(), "hk": v.to_string()})),
                Format::Csv => {
                    out.line("p,e,hk");
                    out.line(format!("{p},{e},{v}"));
                }
                Format::Text => out.line(v.to_string()),
            }
        }
        Command::Ring(RingCommand::Mul { p, lhs, rhs, basis, structural }) => {
            let p = prime(*p)?;
            let x = GammaElement::parse(lhs, p)?;
            let y = GammaElement::parse(rhs, p)?;
            let prod = if *structural { x.mul_structural(&y)? } else { x.mul(&y)? };
            let target = match basis {
                Some(BasisArg::Delta) => Basis::Delta,
                Some(BasisArg::Lambda) => Basis::Lambda,
                None => x.basis(),
            };
            let prod = prod.to_basis(target);
            match cfg.format {
                Format::Json => out.json(&json!({
                    "p": p.get(),
                    "basis": target,
                    "product": prod.render(),
                    "coeffs": prod.coeffs().iter().map(|(i, c)| json!({"index": i, "coeff": rational_json(c)})).collect::<Vec<_>>(),
                })),
                Format::Csv => {
                    out.line("index,coeff_num,coeff_den");
                    for (i, c) in prod.coeffs() {
                        out.line(format!("{i},{},{}", c.numer(), c.denom()));
                    }
                }
                Format::Text => out.line(prod.render()),
            }
        }
        Command::Ring(RingCommand::Alpha { p, elt }) => {
            let x = GammaElement::parse(elt, prime(*p)?)?;
            let (a, dim) = (x.alpha(), x.dimension_q());
            match cfg.format {
                Format::Json => out.json(&json!({"alpha": rational_json(&a), "dimension": rational_json(&dim)})),
                Format::Csv => {
                    out.line("alpha_num,alpha_den,dim_num,dim_den");
                    out.line(format!("{},{},{},{}", a.numer(), a.denom(), dim.numer(), dim.denom()));
                }
                Format::Text => out.line(format!("alpha = {a}\ndimension = {dim}")),
            }
        }
        Command::Verify { suite, max_e, seed } => {
            let suite = match suite {
                SuiteArg::Core => Suite::Core,
                SuiteArg::Sigma => Suite::Sigma,
                SuiteArg::Gamma => Suite::Gamma,
                SuiteArg::Hk => Suite::Hk,
                SuiteArg::Formulas => Suite::Formulas,
                SuiteArg::All => Suite::All,
            };
            let opts = VerifyOptions { max_e: *max_e, seed: *seed, parallel: cfg.parallel, ..Default::default() };
            let outcome = verify(suite, &opts);
            match cfg.format {
                Format::Json => out.json(&serde_json::to_value(&outcome).expect("reports serialize")),
                Format::Csv => {
                    out.line("suite,section,checks,failures,passed");
                    for s in &outcome.sections {
                        out.line(format!("{},{},{},{},{}", s.suite, s.name, s.checks, s.failures, s.passed));
                    }
                }
                Format::Text => {
                    out.line(format!("seed {:#x}, max_e {}", outcome.seed, outcome.max_e));
                    for s in &outcome.sections {
                        let mark = if s.passed { "PASS" } else { "FAIL" };
                        out.line(format!("{mark} {}/{} ({} checks)", s.suite, s.name, s.checks));
                        if let Some(err) = &s.error {
                            out.line(format!("    error: {err}"));
                        }
                        for c in s.report.checks.iter().filter(|c| !c.ok) {
                            out.line(format!("    failed: {} {}", c.name, c.detail));
                        }
                    }
                    out.line(format!(
                        "{}: {} checks, {} failures",
                        if outcome.passed { "ok" } else { "FAILED" },
                        outcome.checks(),
                        outcome.failures()
                    ));
                }
            }
            if !outcome.passed {
                return Ok(EXIT_VERIFICATION);
            }
        }
        Command::Table { name, p } => {
            let name = match name {
                TableArg::Quadrics => TableName::Quadrics,
                TableArg::Char2 => TableName::Char2,
                TableArg::Char3 => TableName::Char3,
                TableArg::Bounds => TableName::Bounds,
            };
            for &x in p {
                prime(x)?;
            }
            let rows = table(name, p)?;
            match cfg.format {
                Format::Json => out.json(&serde_json::to_value(&rows).expect("rows serialize")),
                Format::Csv => {
                    out.line(CSV_HEADER);
                    for r in &rows {
                        out.line(r.to_csv());
                    }
                }
                Format::Text => {
                    for r in &rows {
                        out.line(r.to_string());
                    }
                }
            }
        }
    }
    Ok(EXIT_OK)
}

fn emit_report(r: &HkReport, cfg: &CliConfig, out: &mut Out) {
    match cfg.format {
        Format::Json => out.json(&serde_json::to_value(r).expect("reports serialize")),
        Format::Csv => {
            out.line(CSV_HEADER);
            out.line(format!("{},{},{},{},{}", r.p, r.d, r.ehk.numer(), r.ehk.denom(), r.path));
        }
        Format::Text => {
            let what = match r.variant {
                Some(v) => format!("{v} d={}", r.d),
                None => {
                    let e: Vec<String> = r.exponents.iter().map(|x| x.to_string()).collect();
                    format!("diagonal {}", e.join(","))
                }
            };
            out.line(format!("eHK = {} ({what}, p={}, path {})", r.ehk, r.p, r.path));
            out.line(format!("n0 = {}, mu = {}, ell_sharp = {}", r.n0, r.mu, r.ell_sharp));
            for (e, h) in &r.hk_values {
                out.line(format!("HK_{e} = {h}"));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("1..5").ok(), Some((1, 5)));
        assert_eq!(parse_range("2..=3").ok(), Some((2, 3)));
        assert_eq!(parse_range("4").ok(), Some((4, 4)));
        assert!(parse_range("3..1").is_err());
        assert!(parse_range("0").is_err());
    }

    #[test]
    fn kinds_are_distinct() {
        assert_eq!(error_kind(&Error::NoPeriodFound(8)), "no_period_found");
        assert_eq!(error_kind(&Error::SizeLimit { requested: 2, limit: 1 }), "size_limit");
    }
}
