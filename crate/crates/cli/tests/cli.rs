use std::process::{Command, Output};

use serde_json::Value;

fn pf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pf")).args(args).output().expect("pf runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn check_rejects_repeated_factor() {
    let out = pf(&["check", "y^2+x^3-x"]);
    assert_eq!(out.status.code(), Some(2));
    let v = stdout_json(&out);
    assert_eq!(v["regular"], false);
    assert_eq!(v["reason"], "highest homogeneous part x^3 has a repeated factor");
}

#[test]
fn check_accepts_quintic() {
    let out = pf(&["check", "x^5+y^5+x^2*y^2+x+y"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["mu"], 16);
}

#[test]
fn system_json_has_golden_entry() {
    let out = pf(&["system", "x^5+y^5+x^2y^2+x+y", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    let basis = v["basis"].as_array().unwrap();
    let idx = |a: u64, b: u64| basis.iter().position(|e| e["a"] == a && e["b"] == b).unwrap();
    assert_eq!(v["B1"][idx(3, 3)][idx(0, 0)], "1/175");
    assert_eq!(v["classification"]["infinity_fuchsian_form"], false);
    assert_eq!(v["validation"]["spectrum_ok"], true);
}

#[test]
fn system_output_is_deterministic() {
    let a = pf(&["system", "x^3+y^3-3xy", "--format", "text"]);
    let b = Command::new(env!("CARGO_BIN_EXE_pf"))
        .args(["system", "x^3+y^3-3xy", "--format", "text"])
        .env("PF_NUM_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(a.stdout, b.stdout);
    let tex = pf(&["system", "x^5+y^5+x^2y^2+x+y", "--format", "latex", "--no-validate"]);
    assert!(String::from_utf8_lossy(&tex.stdout).contains("\\frac{1}{175}"));
}

#[test]
fn verify_numeric_folium() {
    let out = pf(&["verify", "x^3+y^3-3xy", "--numeric", "--t", "-0.5", "--seed", "1,1"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert!(v["numeric"][0]["residual"].as_f64().unwrap() < 1e-6);
}

#[test]
fn verify_at_critical_level_is_input_error() {
    let out = pf(&["--json-errors", "verify", "x^3+y^3-3xy", "--numeric", "--t", "-1", "--seed", "1,1"]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "input");
}

#[test]
fn reduce_reports_certificate() {
    let out = pf(&["reduce", "x^2+y^2", "--form", "y, 0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["coefficients"][0]["p"], "-1");
    assert_eq!(v["witness_f"], "1/2*x*y");
    assert_eq!(v["verified"], true);
}

#[test]
fn periods_circle_and_cycle_export() {
    let dir = std::env::temp_dir().join(format!("pf-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cycle.json");
    let out = pf(&["periods", "x^2+y^2", "--t", "1", "--seed", "1,0", "--cycle-out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    let re = v["sample"]["I"][0][0].as_f64().unwrap();
    assert!((re - std::f64::consts::PI).abs() < 1e-10);
    let cycle: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(cycle["t"], serde_json::json!([1.0, 0.0]));
    assert!(cycle["samples"].as_array().unwrap().len() > 10);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn x_loop_mode() {
    let out = pf(&["periods", "x^2+y^2", "--t", "1", "--seed", "2,1.7320508075688772i", "--mode", "x_loop", "--center", "0"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout_json(&out)["sample"]["residual"].as_f64().unwrap() < 1e-10);
}

#[test]
fn bad_input_exit_codes() {
    assert_eq!(pf(&["check", "x^2 + * y"]).status.code(), Some(2));
    assert_eq!(pf(&["system", "y^2+x^4-x^2"]).status.code(), Some(2));
    let out = pf(&["--json-errors", "check", "x + 2y"]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["exit_code"], 2);
}
