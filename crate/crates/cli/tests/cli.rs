//! End-to-end checks of the command-line interface: exit codes, JSON shape,
//! and byte-identical reports across runs.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_torzeta"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn analyze_reports_the_t_term() {
    let out = run(&["analyze", "--p", "3", "--q", "7", "--jets", "4"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("Q[T^1] = L^5"), "{text}");
}

#[test]
fn analyze_json_is_deterministic_and_parseable() {
    let a = run(&["analyze", "--p", "1", "--q", "2", "--jets", "2", "--format", "json"]);
    let b = run(&["analyze", "--p", "1", "--q", "2", "--jets", "2", "--format", "json"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["recovered"]["roundtrip_ok"], serde_json::json!(true));
    assert_eq!(v["t"], serde_json::json!(1));
}

#[test]
fn validation_errors_exit_one() {
    let out = run(&["analyze", "--p", "2", "--q", "4"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr).unwrap().contains("gcd"));
    let out = run(&["analyze", "--p", "1", "--q", "2", "--jets", "13"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_passes_and_refuses_oversize() {
    let out = run(&["verify", "--p", "1", "--q", "2", "--field", "3", "--order", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["all_pass"], serde_json::json!(true));
    let out = run(&["verify", "--p", "1", "--q", "2", "--field", "3", "--order", "12"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn counterexample_checks_pass() {
    for check in ["class", "chi", "star"] {
        let out = run(&["counterexample", "--check", check]);
        assert_eq!(out.status.code(), Some(0), "{check}");
    }
    let out = run(&["counterexample", "--check", "star"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("[2, 2, -1]"), "{text}");
}

#[test]
fn recover_round_trips() {
    let out = run(&["recover", "--p", "7", "--q", "30", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["recovered"]["c_multiset"], serde_json::json!([2, 2, 3, 5]));
    assert_eq!(v["recovered"]["roundtrip_ok"], serde_json::json!(true));
}
