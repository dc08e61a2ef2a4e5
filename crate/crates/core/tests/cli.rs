use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn orbicalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbicalc")).args(args).output().expect("binary runs")
}

fn corpus_file(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus").join(format!("{name}.json")).display().to_string()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn analyze_reports_checks_and_exits_zero() {
    let out = orbicalc(&["analyze", &corpus_file("reflection-line")]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["tool"], "orbicalc");
    assert_eq!(v["command"], "analyze");
    assert_eq!(v["status"], "ok");
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
    assert!(!out.stderr.is_empty(), "summary goes to stderr");
}

#[test]
fn critical_value_exits_two() {
    let out = orbicalc(&["analyze", &corpus_file("z2-square")]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["regularity"]["regular"], false);
}

#[test]
fn non_equivariant_lift_exits_two() {
    let out = orbicalc(&["analyze", &corpus_file("bad-equivariance")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not equivariant"));
}

#[test]
fn input_errors_exit_one() {
    let out = orbicalc(&["analyze", &corpus_file("malformed-rational")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("$."));

    let out = orbicalc(&["strata", "/nonexistent/scenario.json"]);
    assert_eq!(out.status.code(), Some(1));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(orbicalc(&["strata", bad.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn out_flag_writes_the_report_and_prints_the_summary() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("strata.json");
    let out = orbicalc(&["strata", &corpus_file("q-times-q"), "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["chart"]["order"], 4);
    let summary = String::from_utf8_lossy(&out.stdout);
    assert!(!summary.trim_start().starts_with('{'));
}

#[test]
fn sard_is_byte_identical_for_a_fixed_seed() {
    let file = corpus_file("sard-square");
    let args = ["sard", file.as_str(), "--samples", "2000", "--seed", "9", "--box", "-2", "2"];
    let a = orbicalc(&args);
    let b = orbicalc(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["seed"], 9);
    assert_eq!(v["samples"], 2000);
    let c = orbicalc(&["sard", file.as_str(), "--samples", "2000", "--seed", "10", "--box", "-2", "2"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn other_commands_run() {
    for (cmd, file) in [
        ("obstruct", "c3-obstruction"),
        ("classify1", "four-types"),
        ("retraction", "disk-pm-retraction"),
        ("strata", "klein-four-index2"),
    ] {
        let out = orbicalc(&[cmd, &corpus_file(file)]);
        assert_eq!(out.status.code(), Some(0), "{cmd} {file}: {}", String::from_utf8_lossy(&out.stderr));
        assert_eq!(json(&out)["command"], cmd);
    }
}

#[test]
fn corpus_run_passes_and_filters_by_anchor() {
    let out = orbicalc(&["corpus", "run"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(!text.contains("FAIL"));

    let out = orbicalc(&["corpus", "run", "--anchor", "retraction"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(0));
    let lines: Vec<&str> = text.lines().filter(|l| l.starts_with("PASS")).collect();
    assert!(!lines.is_empty());
    assert!(lines.iter().all(|l| l.contains("retraction")));
}

#[test]
fn corrupted_expectation_fails_the_corpus() {
    let out = orbicalc(&["corpus", "run", "--corrupt", "z2-square"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL  z2-square"));
}
