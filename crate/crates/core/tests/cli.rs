use std::process::{Command, Output};

use serde_json::Value;

fn qnd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qnd"))
        .args(args)
        .env_remove("QND_SEED")
        .output()
        .expect("spawn qnd")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn check<'a>(r: &'a Value, name: &str) -> &'a Value {
    r["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == name)
        .unwrap_or_else(|| panic!("no check {name}"))
}

#[test]
fn verify_ccr_passes() {
    let out = qnd(&["verify", "ccr"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["suite"], "ccr");
    assert_eq!(r["schema_version"], 1);
    assert_eq!(check(&r, "ccr")["status"], "pass");
    assert!(String::from_utf8_lossy(&out.stderr).contains("ccr:"));
}

#[test]
fn verify_vacuum_counts() {
    let out = qnd(&["verify", "vacuum"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let names: Vec<&str> = r["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(names.iter().filter(|n| n.starts_with("translation/P")).count(), 4);
    assert_eq!(names.iter().filter(|n| n.starts_with("lorentz/J")).count(), 6);
}

#[test]
fn invariants_on_path3() {
    let out = qnd(&["invariants", "--net", &fixture("path3.json"), "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let c = check(&r, "N(2)-matches-oracle");
    assert_eq!(c["status"], "pass");
    // N(2) removes the 2-chain 0→1→2 and recreates every 2-chain 0→j→2 with
    // the same endpoints, j = 0, 1, 2
    assert_eq!(c["detail"], "N(2)|net⟩ = 1·|0←0⟩·|2←0⟩ + 1·|1←0⟩·|2←1⟩ + 1·|2←0⟩·|2←2⟩");
}

#[test]
fn s4_all_rows() {
    let out = qnd(&["s4", "--all"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let rows = r["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["name"].as_str().unwrap().starts_with("perm-"))
        .count();
    assert_eq!(rows, 24);
    assert!(check(&r, "lorentz-classification")["detail"]
        .as_str()
        .unwrap()
        .starts_with("12 proper"));
    let short = report(&qnd(&["s4"]));
    assert!(short["checks"].as_array().unwrap().len() < r["checks"].as_array().unwrap().len());
}

#[test]
fn toy_and_exchange() {
    let out = qnd(&[
        "toy",
        "--dim",
        "8",
        "--steps",
        "2",
        "--potential",
        "free",
        "--tav",
        "0.5",
        "--seed",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(report(&out)["meta"]["seed"], 3);
    assert_eq!(qnd(&["exchange"]).status.code(), Some(0));
}

#[test]
fn seed_from_environment() {
    let a = Command::new(env!("CARGO_BIN_EXE_qnd"))
        .args(["s4"])
        .env("QND_SEED", "11")
        .output()
        .unwrap();
    assert_eq!(report(&a)["meta"]["seed"], 11);
    let b = qnd(&["--seed", "11", "s4"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(qnd(&["verify", "bogus"]).status.code(), Some(2));
    assert_eq!(qnd(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        qnd(&["invariants", "--net", "/nonexistent.json"]).status.code(),
        Some(2)
    );
    assert_eq!(
        qnd(&["invariants", "--net", &fixture("path3.json"), "--n", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(qnd(&["toy", "--potential", "quartic-ish"]).status.code(), Some(2));
    assert_eq!(qnd(&["toy", "--tav", "-1"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"num_nodes": 2, "arrows": [[0, 5]]}"#).unwrap();
    let out = qnd(&["invariants", "--net", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}
