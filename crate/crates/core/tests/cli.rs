use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};
use wrt_limits::amu::corpus;

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_wrt-limits"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn ok_json(args: &[&str], payload: Value) -> Value {
    let out = run(args, &payload.to_string());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn failure(args: &[&str], stdin: &str) -> (i32, Value) {
    let out = run(args, stdin);
    assert!(out.stdout.is_empty());
    let err: Value = serde_json::from_slice(&out.stderr).expect("errors are JSON");
    (out.status.code().unwrap(), err)
}

#[test]
fn theta_dimension_at_level_eight() {
    let v = ok_json(&["verlinde"], json!({ "spine": "theta", "p": 8 }));
    assert_eq!(v["count"], "10");
}

#[test]
fn stack_limit_polynomial() {
    let v = ok_json(&["p-limit"], json!({ "stack": [[1, 1], [1, 0], [0, 1]] }));
    assert_eq!(v["polynomial"], "2*A^1");
    assert_eq!(v["classification"], "LARGE");
}

#[test]
fn validation_errors_exit_one() {
    let (code, err) = failure(&["trace"], "{\"spine\": ");
    assert_eq!(code, 1);
    assert!(err["message"].as_str().unwrap().contains("line 1"));
    let (code, err) = failure(&["verlinde"], r#"{"spine": "theta", "p": 9}"#);
    assert_eq!((code, err["error"].as_str().unwrap()), (1, "Invalid"));
    let (code, err) = failure(&["p-limit"], r#"{"stack": [], "colour": 1, "shade": 2}"#);
    assert_eq!(code, 1);
    assert_eq!(err["diagnostics"].as_array().unwrap().len(), 2);
    let (code, _) = failure(&["verlinde", "--threads", "0"], r#"{"spine": "theta", "p": 8}"#);
    assert_eq!(code, 1);
    let (code, _) = failure(&["no-such-command"], "{}");
    assert_eq!(code, 1);
}

#[test]
fn domain_errors_exit_two() {
    let (code, err) = failure(&["amu"], r#"{"corpus": "one-face-filling", "operations": ["p_gamma3"]}"#);
    assert_eq!(code, 2);
    assert_eq!(err["error"], "NotAnnularlyResolvable");
}

#[test]
fn resource_caps_exit_three() {
    let probe = corpus::braid_closure(2, &[0; 12], 0);
    let chart = probe.annular_position().unwrap();
    let turning = (0..probe.edge_count()).find(|&e| chart[e].len() == 1).unwrap();
    let big = corpus::braid_closure(2, &[0; 12], turning);
    let payload = json!({ "curve": big.to_json(), "operations": ["p_gamma3"] });
    let (code, err) = failure(&["amu"], &payload.to_string());
    assert_eq!(code, 3);
    assert_eq!(err["error"], "ResourceCap");
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let payload = json!({ "corpus": "figure-eight-and-core", "operations": ["certificate", "p_gamma3"] }).to_string();
    let one = run(&["amu", "--threads", "1"], &payload);
    let four = run(&["amu", "--threads", "4"], &payload);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn seeds_drive_random_functions() {
    let payload = json!({ "function": { "random_cubic": 3 }, "u_angle": "0", "levels": [20, 40] }).to_string();
    let a = run(&["limits", "--seed", "5"], &payload);
    let b = run(&["limits", "--seed", "5"], &payload);
    let c = run(&["limits", "--seed", "6"], &payload);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn csv_and_files() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.json");
    let output = dir.path().join("out.csv");
    std::fs::write(&input, r#"{"spine": "theta", "levels": [6, 8, 10]}"#).unwrap();
    let out = run(
        &["verlinde", "--input", input.to_str().unwrap(), "--output", output.to_str().unwrap(), "--format", "csv"],
        "",
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&output).unwrap(), "p,r,count\n6,3,4\n8,4,10\n10,5,20\n");
}

#[test]
fn trace_reports_exact_and_numeric_values() {
    let v = ok_json(&["trace"], json!({ "spine": "genus-one-surgery", "weights": [[0, 0]], "p": 10 }));
    let t = &v["traces"][0];
    assert_eq!(t["exact"]["p"], 10);
    assert_eq!(t["ev_re"], "2.000000000000e0");
}
