use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cycleforge"))
        .args(args)
        .env_remove("CYCLEFORGE_MAX_N")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.push("--json");
    let out = run(&full);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("one JSON object")
}

#[test]
fn pq_plain_text() {
    let out = run(&["pq", "--lambda", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "P_(3)(q) = q^3 + q");
}

#[test]
fn pq_every_method_with_oracle() {
    for method in ["operator", "gprime", "hook"] {
        let out = run(&["pq", "--lambda", "2,2,1", "--method", method, "--oracle"]);
        assert_eq!(out.status.code(), Some(0), "{method}");
        assert!(stdout(&out).contains("agree"));
    }
    let out = run(&["pq", "--lambda", "5", "--method", "stirling", "--oracle"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn pq_json_schema() {
    let v = json(&["pq", "--lambda", "1,2", "--n", "3"]);
    assert_eq!(v["command"], "pq");
    assert_eq!(v["n"], 3);
    assert_eq!(v["lambda"], serde_json::json!([2, 1]));
    assert_eq!(v["method"], "operator");
    assert_eq!(v["poly"], serde_json::json!(["0", "0", "3"]));
    assert_eq!(v["routes"], serde_json::json!(["operator"]));
    assert!(v["elapsed_ms"].is_u64());
}

#[test]
fn prob_plain_and_json() {
    let out = run(&["prob", "--n", "4", "--k", "2"]);
    assert_eq!(stdout(&out).trim(), "7/18");
    for method in ["closed", "boccara", "series", "brute"] {
        let v = json(&["prob", "--n", "4", "--k", "2", "--method", method]);
        assert_eq!(v["value"], "7/18", "{method}");
        assert_eq!(v["method"], method);
    }
    let v = json(&["prob", "--n", "5", "--k", "3", "--oracle"]);
    assert_eq!(v["value"], "3/8");
    assert_eq!(v["agree"], true);
}

#[test]
fn boccara_counts() {
    let out = run(&["boccara", "--lambda", "1,1,1", "--oracle"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().next(), Some("2"));
    assert_eq!(json(&["boccara", "--lambda", "2,1"])["value"], "0");
}

#[test]
fn roots_of_cycle_polynomial() {
    let v = json(&["roots", "--lambda", "3,3,2"]);
    assert_eq!(v["report"]["verdict"], true);
    assert_eq!(v["profile"]["unimodal"], true);
    assert_eq!(v["r"], serde_json::json!(["0", "672", "420", "28"]));
}

#[test]
fn roots_rejects_counterexample() {
    let out = run(&["roots", "--poly", r#"["0","0","660","0","424","0","35","0","1"]"#]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("real part 0: false"));
}

#[test]
fn roots_with_shifted_axis() {
    // (q - 1)^2 + 4 has zeros 1 +- 2i
    let out = run(&["roots", "--poly", r#"["5","-2","1"]"#, "--alpha", "1"]);
    assert!(stdout(&out).contains("real part 1: true"));
}

#[test]
fn cnk_table() {
    let v = json(&["cnk", "--n", "5", "--oracle"]);
    assert_eq!(v["agree"], true);
    let counts: Vec<&str> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["count"].as_str().unwrap())
        .collect();
    // P_(5) = 8q + 15q^3 + q^5
    assert_eq!(counts, ["8", "0", "15", "0", "1"]);
}

#[test]
fn theorem4_sweep_is_reproducible() {
    let a = json(&["theorem4", "--seed", "11", "--cases", "20"]);
    let b = json(&["theorem4", "--seed", "11", "--cases", "20"]);
    assert_eq!(a["passed"], 20);
    assert_eq!(a["results"], b["results"]);
}

#[test]
fn plm_counterexample() {
    let v = json(&["plm", "--lambda", "3,3,2", "--mu", "3,3,2"]);
    assert_eq!(v["poly"], serde_json::json!(["0", "0", "660", "0", "424", "0", "35", "0", "1"]));
}

#[test]
fn invalid_input_exits_two() {
    for args in [
        &["pq", "--lambda", "0,2"][..],
        &["pq", "--lambda", "3", "--n", "4"],
        &["pq", "--lambda", "3", "--method", "fourier"],
        &["prob", "--n", "5", "--k", "6"],
        &["prob", "--n", "5", "--k", "4"],
        &["prob", "--n", "5", "--k", "3", "--method", "series"],
        &["roots", "--poly", "not json"],
        &["plm", "--lambda", "3", "--mu", "2,2"],
        &["bogus"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn oracle_cap_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_cycleforge"))
        .args(["pq", "--lambda", "4,2", "--oracle"])
        .env("CYCLEFORGE_MAX_N", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("limit"));
}
