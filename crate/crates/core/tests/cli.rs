use hk_forge::cli::{run, CliOutput, EXIT_COMPUTATION, EXIT_OK, EXIT_USAGE};
use hk_forge::formulas::CSV_HEADER;
use num_bigint::BigInt;
use num_integer::Integer;
use serde_json::Value;

fn cli(args: &str) -> CliOutput {
    let argv = std::iter::once("hk-forge").chain(args.split_whitespace());
    run(argv)
}

fn json(args: &str) -> Value {
    let out = cli(&format!("--format json {args}"));
    assert_eq!(out.code, EXIT_OK, "{args}: {}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

fn rational(v: &Value) -> (BigInt, BigInt) {
    let num: BigInt = v["num"].as_str().unwrap().parse().unwrap();
    let den: BigInt = v["den"].as_str().unwrap().parse().unwrap();
    assert!(den > BigInt::from(0));
    assert_eq!(num.gcd(&den), BigInt::from(1));
    (num, den)
}

fn frac(n: i64, d: i64) -> (BigInt, BigInt) {
    (BigInt::from(n), BigInt::from(d))
}

#[test]
fn ehk_values() {
    let v = json("ehk --p 3 --singularity A1 --d 4");
    assert_eq!(rational(&v["ehk"]), frac(23, 19));
    let v = json("ehk --p 7 --diagonal 2,2,5");
    assert_eq!(rational(&v["ehk"]), frac(9, 5));
    assert_eq!(v["path"], "Algorithm");
    let v = json("ehk --p 2 --singularity a2 --d 2");
    assert_eq!(v["path"], "SigmaEngine");
}

#[test]
fn csv_shapes() {
    let out = cli("--format csv ehk --p 5 --singularity A2 --d 3");
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert_eq!(lines, [CSV_HEADER, "5,3,87,61,Algorithm"]);

    let out = cli("--format csv table --name quadrics --p 3");
    let mut lines = out.stdout.lines();
    assert_eq!(lines.next(), Some(CSV_HEADER));
    assert_eq!(lines.next(), Some("3,3,4,3,Algorithm"));

    let out = cli("--format csv function --p 3 --singularity A1 --d 2 --e 1..2");
    assert_eq!(out.stdout.lines().collect::<Vec<_>>(), ["p,d,e,hk", "3,2,1,13", "3,2,2,121"]);
}

#[test]
fn ring_commands() {
    let out = cli("ring mul --p 3 --lhs l1 --rhs l1");
    assert_eq!(out.stdout.trim(), "l0 + l1 + l2");
    let out = cli("ring mul --p 5 --lhs d2 --rhs d2");
    assert_eq!(out.stdout.trim(), "d1 + d3");
    let v = json("ring alpha --p 5 --elt d2+1/2*d3");
    assert_eq!(rational(&v["alpha"]), frac(3, 2));
    assert_eq!(rational(&v["dimension"]), frac(7, 2));
}

#[test]
fn oracle_command() {
    let out = cli("oracle --p 3 --e 1 --nvars 4 --poly x0*x1+x2^2+x3^3");
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("39"), "{}", out.stdout);
    let out = cli("oracle --p 3 --e 1 --nvars 2 --poly x0+x1^2");
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stderr.contains("warning"), "{}", out.stderr);
}

#[test]
fn exit_codes() {
    assert_eq!(cli("ehk --p 4 --diagonal 2,3").code, EXIT_USAGE);
    assert_eq!(cli("bogus").code, EXIT_USAGE);
    assert_eq!(cli("ehk --p 3 --singularity A3 --d 2").code, EXIT_USAGE);
    assert_eq!(cli("--help").code, EXIT_OK);
    assert_eq!(cli("--mu-cap 1 ehk --p 7 --diagonal 2,2,5").code, EXIT_COMPUTATION);
    assert_eq!(cli("verify --suite formulas").code, EXIT_OK);
}

#[test]
fn json_errors() {
    let out = cli("--format json ring mul --p 3 --lhs d2+ --rhs l1");
    assert_eq!(out.code, EXIT_USAGE);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["error"]["kind"], "syntax");
    assert_eq!(v["error"]["code"], EXIT_USAGE);

    let out = cli("--format json --mu-cap 1 ehk --p 7 --diagonal 2,2,5");
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["error"]["kind"], "no_period_found");
    assert_eq!(v["error"]["code"], EXIT_COMPUTATION);
}

#[test]
fn char2_diagonal_warning() {
    let out = cli("ehk --p 2 --diagonal 2,2,2");
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stderr.contains("[warn-char2-diagonal]"));
    let out = cli("ehk --p 3 --diagonal 2,2,2");
    assert!(out.stderr.is_empty());
}

#[test]
fn verify_is_deterministic() {
    let a = cli("--format json verify --suite sigma --max-e 4 --seed 7");
    let b = cli("--format json --parallel verify --suite sigma --max-e 4 --seed 7");
    assert_eq!(a.code, EXIT_OK);
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_str(&a.stdout).unwrap();
    assert_eq!(v["passed"], true);
}
