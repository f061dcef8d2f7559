//! The `semistar` binary: exit codes, report shape and reproducibility.

use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn semistar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_semistar"))
        .args(args)
        .env_remove("SEMISTAR_SEED")
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

fn scenario_file(body: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(body.as_bytes()).unwrap();
    f
}

#[test]
fn fixtures_pass() {
    let out = semistar(&["fixtures"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["schemaVersion"], 1);
    assert_eq!(r["summary"]["fail"], 0);
    assert_eq!(r["summary"]["pass"], 26);
}

#[test]
fn single_fixture_and_unknown_fixture() {
    let out = semistar(&["fixtures", "--only", "pvd-overring"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["summary"]["pass"], 6);
    let out = semistar(&["fixtures", "--only", "no-such-fixture"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn failing_expectation_exits_one_with_witness() {
    let f = scenario_file(
        r#"{"schemaVersion": 1, "name": "f", "model": {"kind": "dvr"},
            "checks": [{"name": "wrong", "check": "closure", "op": "v", "ideal": "Seg(>=1)",
                        "expect": {"closure": "Seg(>=0)"}}]}"#,
    );
    let out = semistar(&["run", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r["checks"][0]["verdict"], "fail");
    assert_eq!(r["checks"][0]["witness"], "closure: expected \"Seg(>=0)\", got \"Seg(>=1)\"");
}

#[test]
fn parse_errors_exit_three() {
    let f = scenario_file(r#"{"schemaVersion": 1, "name": "f", "model": {"kind": "dvr"}, "checks": [{"name": "a", "check": "spectrum", "op": "tlide(v)"}]}"#);
    let out = semistar(&["run", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown operation"));
    let f = scenario_file("{\"schemaVersion\": 1,\n \"name\": }");
    let out = semistar(&["run", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    assert_eq!(semistar(&["suite", "-n", "0"]).status.code(), Some(3));
    assert_eq!(semistar(&["no-such-command"]).status.code(), Some(3));
}

#[test]
fn inconclusive_only_exits_two() {
    let out = semistar(&["eval", "--model", "dense", "--op", "t", "--ideal", "Seg(>0)", "--cutoff", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(report(&out)["checks"][0]["verdict"], "inconclusive");
}

#[test]
fn eval_and_spectrum() {
    let out = semistar(&["eval", "--model", "staircase", "--op", "v", "--ideal", "St{(1,0),(0,1)}"]);
    assert_eq!(report(&out)["checks"][0]["facts"]["closure"], "St{(0,0)}");
    let out = semistar(&["spectrum", "--model", "semigroup:3,4,5", "--op", "t"]);
    assert_eq!(report(&out)["checks"][0]["facts"]["quasi-maximals"][0], "Id{3,4,5}");
    let out = semistar(&["group-check", "--model", "pvd", "--op", "star{T=V@0}", "--carrier", "inv"]);
    let r = report(&out);
    assert_eq!(r["checks"][0]["witnesses"]["(D:D^op)"], "V@1");
}

#[test]
fn seeded_suite_is_byte_identical() {
    let args = ["suite", "--models", "pid", "--models", "dvr", "-n", "8"];
    let a = Command::new(env!("CARGO_BIN_EXE_semistar")).args(args).env("SEMISTAR_SEED", "17").output().unwrap();
    let b = Command::new(env!("CARGO_BIN_EXE_semistar")).args(args).env("SEMISTAR_SEED", "17").output().unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(report(&a)["seed"], 17);
    let c = semistar(&["suite", "--models", "pid", "--models", "dvr", "-n", "8", "--sequential", "--seed", "17"]);
    assert_eq!(a.stdout, c.stdout);
}
