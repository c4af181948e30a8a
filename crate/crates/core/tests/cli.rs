use std::process::{Command, Output};

use serde_json::Value;

fn scgroups(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_scgroups"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .unwrap()
}

fn records(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

fn relator_text() -> String {
    let mut parts: Vec<String> = (1..=20).map(|k| format!("a{k}^2")).collect();
    parts.push("c1 d1^3 c2 d2^3 c3 d3^3".into());
    parts.extend((1..=20).rev().map(|k| format!("b{k}^-2")));
    parts.push("d3^-3 c3^-1 d2^-3 c2^-1 d1^-3 c1^-1".into());
    parts.join(" ")
}

#[test]
fn reduce_reports_identity() {
    let out = scgroups(&["reduce", "--family", "data/ce.toml", "a1^2 a1^-2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(records(&out)[0]["reduced"], "1");
    let out = scgroups(&["reduce", "--family", "data/ce.toml", "--trace", &relator_text()]);
    let recs = records(&out);
    assert_eq!(recs.len(), 2);
    assert_eq!(recs[0]["step"], 1);
    assert_eq!(recs[1]["reduced"], "1");
}

#[test]
fn malformed_word_is_a_usage_error() {
    let out = scgroups(&["reduce", "--family", "data/ce.toml", "a1^"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1, column 4"));
}

#[test]
fn decide_exit_codes() {
    let sat = "(x1 | x3 | -x7) & (-x4 | x7 | x11) & (x1 | x7 | -x9) & (-x3 | x4 | x9)";
    let out = scgroups(&["decide", "--sat", sat]);
    assert_eq!(out.status.code(), Some(0));
    let rec = &records(&out)[0];
    assert!(rec["witness"].is_string());
    assert!(rec["certificate"].as_object().unwrap().values().all(|v| v == false));
    assert_eq!(scgroups(&["decide", "a1", "c1"]).status.code(), Some(1));
    assert_eq!(scgroups(&["decide", "--filter-only", "a1", "b1 a1 b1^-1"]).status.code(), Some(3));
}

#[test]
fn verify_suites() {
    let out = scgroups(&["verify", "pieces", "--max-index", "4", "--p", "20"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(records(&out)[0]["passed"], true);
    let out = scgroups(&["verify", "pieces", "--p", "1000"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!records(&out)[0]["failures"].as_array().unwrap().is_empty());
    let out = scgroups(&["verify", "sat-reduction", "--max-clauses", "1", "--max-var", "2"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn density_is_deterministic() {
    let args = ["density", "--lengths", "10,20,40", "--samples", "500", "--seed", "9"];
    let (a, b) = (scgroups(&args), scgroups(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("length,answered_fraction,samples"));
    assert_eq!(text.lines().count(), 4);
    assert_eq!(scgroups(&["density", "--lengths", "10", "--samples", "0", "--seed", "1"]).status.code(), Some(2));
}
