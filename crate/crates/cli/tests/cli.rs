use std::process::{Command, Output};

use serde_json::Value;

fn qcuntz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcuntz")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim().to_string()
}

#[test]
fn normalize_prints_canonical_form() {
    let o = qcuntz(&["normalize", "-d", "2", "-x", "s2 s1* - q^-1 s2 s1* + s1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "(1 - q^-1) s2 s1* + s1");
}

#[test]
fn normalize_json_round_trips() {
    let o = qcuntz(&["normalize", "-d", "2", "-x", "(q - q^-1) s1 s2 s1* s2*", "--format", "json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["d"], 2);
    assert_eq!(v["terms"].as_array().unwrap().len(), 1);
}

#[test]
fn act_and_theta_and_sq() {
    assert_eq!(stdout(&qcuntz(&["act", "-d", "2", "-a", "e1", "-x", "s2"])), "s1");
    assert_eq!(stdout(&qcuntz(&["act", "-d", "2", "-a", "e1", "-x", "s1"])), "0");
    assert_eq!(stdout(&qcuntz(&["sq", "-d", "2"])), "s1 s2 - q^-1 s2 s1");
    let t = stdout(&qcuntz(&["theta", "-d", "2", "-i", "1"]));
    assert!(t.contains("(q - q^-1) s2 s1 s1* s2*"), "{t}");
    assert_eq!(stdout(&qcuntz(&["coact", "-d", "2", "-x", "s1"])), "s1 (x) u11 + s2 (x) u21");
}

#[test]
fn check_writes_json_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ybe.json");
    let o = qcuntz(&["check", "ybe", "-d", "2..3", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["suite"], "ybe");
    let cases = v["cases"].as_array().unwrap();
    assert_eq!(cases.len(), 4);
    let ids: Vec<&str> = cases.iter().map(|c| c["id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    for c in cases {
        assert_eq!(c["pass"], true);
        assert!(c.get("witness").is_none());
        assert!(c["wall_time_ms"].is_number());
    }
}

#[test]
fn check_text_format_and_fixed_corpus() {
    let o = qcuntz(&["check", "fixed", "-d", "2", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    for name in ["theta1", "theta2", "Sq", "s1"] {
        assert!(s.contains(&format!("PASS fixed/d=2/{name} ")), "{s}");
    }
}

#[test]
fn duality_suite_passes() {
    let o = qcuntz(&["check", "duality", "-d", "2", "--wordlen", "2", "--random", "10"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(qcuntz(&["check", "nonsense"]).status.code(), Some(2));
    assert_eq!(qcuntz(&["check", "ybe", "-d", "1..9"]).status.code(), Some(2));
    assert_eq!(qcuntz(&["check", "ybe", "-d", "x"]).status.code(), Some(2));
    assert_eq!(qcuntz(&["normalize", "-d", "2", "-x", "s3"]).status.code(), Some(2));
    assert_eq!(qcuntz(&["normalize", "-d", "2", "-x", "s1 +"]).status.code(), Some(2));
    assert_eq!(qcuntz(&["frobnicate"]).status.code(), Some(2));
}
