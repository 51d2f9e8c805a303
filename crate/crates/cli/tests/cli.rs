use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_factorlab"))
        .args(args)
        .env("FACTORLAB_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let o = run(&all);
    assert!(o.status.success(), "{:?}", o);
    serde_json::from_slice(&o.stdout).expect("valid json")
}

#[test]
fn normalize_prints_the_normal_form() {
    let o = run(&["normalize", "b a a b"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "a^2");
    let v = json(&["normalize", "a^4 b"]);
    assert_eq!(v["normal_form"], "b^1 a^4");
    assert_eq!(v["oracles_agree"], true);
}

#[test]
fn accp_reports_twenty_inclusions() {
    let o = run(&["accp", "--depth", "20"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).trim_end().ends_with("20 strict inclusions"));
    let v = json(&["accp", "--depth", "5"]);
    assert_eq!(v["strict_inclusions"], 5);
    assert_eq!(v["chain"].as_array().unwrap().len(), 6);
}

#[test]
fn lengths_of_a_squared() {
    let o = run(&["lengths", "a a", "--cap", "8"]);
    assert_eq!(stdout(&o).trim(), "{2,4,6,8}");
    let v = json(&["lengths", "a a", "--cap", "8"]);
    assert_eq!(v["exhausted"], true);
}

#[test]
fn equal_atom_and_sbn() {
    assert_eq!(
        stdout(&run(&["equal", "a a a a b", "b a^4"])).trim(),
        "true"
    );
    assert_eq!(stdout(&run(&["equal", "a b", "b a"])).trim(), "false");
    assert_eq!(json(&["atom", "b"])["verdict"], "atom");
    assert_eq!(json(&["atom", "e"])["verdict"], "unit");
    assert_eq!(json(&["atom", "a a"])["verdict"], "not_atom");
    assert_eq!(json(&["in-all-sbn", "a a"])["in_all"], true);
    assert_eq!(
        json(&["in-all-sbn", "b a", "--probe", "3"])["in_all"],
        false
    );
}

#[test]
fn algebra_commands() {
    assert_eq!(json(&["alg", "mul", "b", "a^2 b"])["result"], "1 * a^2");
    assert_eq!(json(&["alg", "deg", "a^2 + b"])["deg_a"], 2);
    assert_eq!(json(&["alg", "divides", "b a^2", "a^2"])["verdict"], "yes");
    assert_eq!(json(&["alg", "divides", "a^2", "b"])["verdict"], "no");
    assert_eq!(
        json(&["alg", "--field", "5", "add", "3 * a", "2 * a"])["result"],
        "0"
    );
    assert_eq!(
        run(&["alg", "--field", "6", "add", "a", "a"]).status.code(),
        Some(2)
    );
}

#[test]
fn growth_csv_and_json() {
    let o = run(&["growth", "--model", "free-commutative", "--depth", "3"]);
    assert_eq!(stdout(&o), "n,dim\n0,1\n1,3\n2,6\n3,10\n");
    let v = json(&["growth", "--model", "free", "--depth", "10"]);
    assert_eq!(v["entries"][10][1], 2047);
    assert_eq!(v["classification"]["class"], "exponential");
}

#[test]
fn randomized_suites_are_reproducible() {
    let a = run(&[
        "skew-check",
        "--config",
        "qplane:q=2",
        "--pairs",
        "100",
        "--seed",
        "7",
        "--json",
    ]);
    let b = run(&[
        "skew-check",
        "--config",
        "qplane:q=2",
        "--pairs",
        "100",
        "--seed",
        "7",
        "--json",
    ]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(run(&["filt-check", "--pairs", "50"]).status.code(), Some(0));
    assert_eq!(
        run(&["skew-check", "--config", "nope"]).status.code(),
        Some(2)
    );
}

#[test]
fn lenfn_check_hosts() {
    let v = json(&["lenfn-check", "--host", "s"]);
    let refutations = v["refutations"].as_array().unwrap();
    assert_eq!(refutations.len(), 3);
    for r in refutations {
        let r = &r["refutation"];
        assert!(r["n"].as_u64().unwrap() <= r["bound"].as_u64().unwrap());
        let violation = &r["report"]["violations"][0];
        for key in ["a", "b", "c", "lambda_a", "lambda_b", "lambda_c"] {
            assert!(!violation[key].is_null(), "{key}");
        }
    }
    assert_eq!(
        run(&["lenfn-check", "--host", "free"]).status.code(),
        Some(0)
    );
    assert_eq!(
        run(&["lenfn-check", "--host", "poly"]).status.code(),
        Some(0)
    );
}

#[test]
fn pi_demo_runs() {
    let o = run(&["pi-demo", "--steps", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("A_4 = 1; x; y^-4; x*y^-3"));
    assert_eq!(
        run(&["pi-demo", "--matrix", "1; 0; 0; 1"]).status.code(),
        Some(2)
    );
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["normalize", "a", "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["normalize", "a c"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    let o = Command::new(env!("CARGO_BIN_EXE_factorlab"))
        .args(["accp"])
        .env("FACTORLAB_THREADS", "0")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}
