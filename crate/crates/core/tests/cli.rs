use std::process::{Command, Output};

use serde_json::Value;

fn dq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dq"))
        .args(args)
        .env_remove("DQ_DEFAULT_ORDER")
        .output()
        .expect("dq runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("bad JSON ({e}): {}", stdout(o)))
}

fn statuses(doc: &Value) -> Vec<(String, String)> {
    doc["relations"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (r["relation"].as_str().unwrap().to_string(), r["status"].as_str().unwrap().to_string()))
        .collect()
}

#[test]
fn ground_check_saturates_everything() {
    let o = dq(&["check", "--state", "ground", "--obs", "q1", "--obs", "p1", "--order", "8", "--json"]);
    assert_eq!(code(&o), 0);
    let doc = json(&o);
    for (rel, status) in statuses(&doc) {
        assert_eq!(status, "Saturated", "{rel}");
    }
    assert_eq!(doc["det_a"], "1/4*h^2");
    assert_eq!(doc["det_b"], "1/4*h^2");
    assert_eq!(doc["det_phi"], "0");
    assert_eq!(doc["intelligent"]["rs"], true);
    assert_eq!(doc["complex_witness"][1]["im"], "1");
}

#[test]
fn malformed_observable_is_an_input_error() {
    let o = dq(&["check", "--state", "ground", "--obs", "q1 +"]);
    assert_eq!(code(&o), 1);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("column 5"), "{err}");
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(code(&dq(&["frobnicate"])), 1);
    assert_eq!(code(&dq(&["check", "--state", "ground"])), 1);
    assert_eq!(code(&dq(&["--order", "0", "field", "eval", "h"])), 1);
    assert_eq!(code(&dq(&["--help"])), 0);
}

#[test]
fn violated_relation_exits_two() {
    let o = dq(&["check", "--state", "correlated(1/4*h)", "--obs", "q1", "--obs", "p1"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
}

#[test]
fn truncation_residue_exits_three_until_order_is_raised() {
    let expr = "1/(1+h) - (1 - h + h^2 - h^3 + h^4 - h^5 + h^6 - h^7)";
    let low = dq(&["--json", "field", "eval", expr]);
    assert_eq!(code(&low), 3);
    assert_eq!(json(&low)["sign"], "indeterminate");
    let high = dq(&["--json", "--order", "10", "field", "eval", expr]);
    assert_eq!(code(&high), 0);
    assert_eq!(json(&high)["value"], "h^8 - h^9 + O(h^10)");
    assert_eq!(json(&high)["valuation"], "8");
}

#[test]
fn order_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_dq"))
        .args(["--json", "field", "eval", "1/(1-h)"])
        .env("DQ_DEFAULT_ORDER", "3")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    let doc = json(&o);
    assert_eq!(doc["value"], "1 + h + h^2 + O(h^3)");
    assert_eq!(doc["trunc_order"], "3");
}

#[test]
fn exact_zero_prints_inf_valuation() {
    let o = dq(&["field", "eval", "h^(1/2) * h^(1/2) - h"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("valuation: inf"), "{}", stdout(&o));
}

#[test]
fn star_brackets_of_canonical_pair() {
    let o = dq(&["star", "q1", "p1"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("{f, g}_* = 1\n"), "{out}");
    assert!(out.contains("{f, g} = 1\n"), "{out}");
    let o = dq(&["star", "-q1", "q1^2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("{f, g}_* = 0\n"));
}

#[test]
fn squeeze_blocks_annihilate_only_with_matching_sign() {
    let ok = dq(&["intelligent", "--state", "squeezed(4)", "--obs", "q1", "--obs", "p1", "--u", "5/4", "--v", "-3/4"]);
    assert_eq!(code(&ok), 0, "{}", stdout(&ok));
    let bad = dq(&["intelligent", "--state", "squeezed(4)", "--obs", "q1", "--obs", "p1", "--u", "5/4", "--v", "3/4"]);
    assert_eq!(code(&bad), 0);
    assert!(stdout(&bad).contains("annihilated: false"), "{}", stdout(&bad));
}

#[test]
fn ideal_direction_for_dependent_triple() {
    let o = dq(&["--json", "check", "--state", "ground", "--obs", "q1", "--obs", "p1", "--obs", "q1 + p1"]);
    let doc = json(&o);
    let dir = &doc["ideal_direction"];
    assert!(!dir.is_null(), "{doc}");
    assert_eq!(code(&o), 0);
}

#[test]
fn state_from_file() {
    let path = std::env::temp_dir().join(format!("dq-state-{}.json", std::process::id()));
    std::fs::write(&path, r#"{"d": 1, "mean": ["1", "0"], "cov": [["h", "0"], ["0", "h"]]}"#).unwrap();
    let o = dq(&["--json", "check", "--state", path.to_str().unwrap(), "--obs", "q1", "--obs", "p1"]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(code(&o), 0);
    let doc = json(&o);
    assert_eq!(doc["det_a"], "h^2");
    for (rel, status) in statuses(&doc) {
        assert_eq!(status, "StrictlyAbove", "{rel}");
    }
}

#[test]
fn proptest_replays_under_seed() {
    let args = ["--json", "proptest", "valuation", "--trials", "50", "--seed", "11"];
    let (a, b) = (dq(&args), dq(&args));
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let doc = json(&a);
    assert!(doc.is_object());
}
