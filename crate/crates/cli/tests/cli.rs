use std::process::{Command, Output};

use latvoa::lattice_voa::State;
use latvoa::{RootSystem, Weight};
use serde_json::Value;

fn latvoa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latvoa")).args(args).env_remove("LATTICE_VOA_MAX_DIM").output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn exp_json(rs: &str, w: &[i64]) -> Value {
    let rs = RootSystem::new(rs).unwrap();
    State::exp(Weight(w.to_vec())).to_json(&rs)
}

#[test]
fn mode_examples() {
    let out = latvoa(&["mode", "--rs", "A1", "--A", "{e^ω}", "--n", "-1", "--v", "{|0⟩}"]);
    assert_eq!(json(&out), exp_json("A1", &[1]));
    let out = latvoa(&["mode", "--rs", "A1", "--A", "{e^ω}", "--n", "-3/2", "--v", "{e^ω}"]);
    assert_eq!(json(&out), exp_json("A1", &[2]));
    // JSON input round-trips
    let a = exp_json("A2", &[1, 0]).to_string();
    let out = latvoa(&["mode", "--rs", "A2", "--A", &a, "--n", "-1", "--v", "vac"]);
    assert_eq!(json(&out), exp_json("A2", &[1, 0]));
}

#[test]
fn exit_codes() {
    let malformed = latvoa(&["mode", "--rs", "A1", "--A", "{\"terms\": [}", "--n", "-1", "--v", "vac"]);
    assert_eq!(malformed.status.code(), Some(2));
    let bad_n = latvoa(&["mode", "--rs", "A1", "--A", "e^w", "--n", "x", "--v", "vac"]);
    assert_eq!(bad_n.status.code(), Some(2));
    let parity = latvoa(&["mode", "--rs", "A1", "--A", "e^w", "--n", "-1", "--v", "e^w"]);
    assert_eq!(parity.status.code(), Some(3));
    let suite = latvoa(&["verify", "--rs", "A1", "--suite", "nonsense"]);
    assert_eq!(suite.status.code(), Some(2));
    let rs = latvoa(&["char", "--rs", "Z9", "--lambda", "1"]);
    assert_eq!(rs.status.code(), Some(2));
    let unsupported = latvoa(&["char", "--rs", "D4", "--lambda", "0,1,0,0", "--local"]);
    assert_eq!(unsupported.status.code(), Some(3));
    let not_dominant = latvoa(&["span", "--rs", "A1", "--lambda", "-1"]);
    assert_eq!(not_dominant.status.code(), Some(3));
}

#[test]
fn characters() {
    let out = json(&latvoa(&["char", "--rs", "A1", "--lambda", "2", "--cutoff", "2"]));
    assert_eq!(out["graded_dims"], serde_json::json!([3, 4, 7]));
    let out = json(&latvoa(&["char", "--rs", "A2", "--lambda", "1,1", "--cutoff", "0"]));
    assert_eq!(out["graded_dims"], serde_json::json!([8]));
    let local = json(&latvoa(&["char", "--rs", "A1", "--lambda", "2", "--cutoff", "3", "--local"]));
    assert_eq!(local["graded_dims"], serde_json::json!([3, 1, 0, 0]));
}

#[test]
fn relations_include_the_singlet() {
    let out = json(&latvoa(&["relations", "--rs", "A2", "--i", "2", "--j", "1", "--cutoff", "1"]));
    let list = out.as_array().unwrap();
    let singlet = list.iter().find(|s| s["s"] == 1 && s["l"] == 1 && s["trivial"] == false).expect("s = 1 series");
    assert_eq!(singlet["coefficients"][0]["q"], 0);
    assert_eq!(singlet["coefficients"][0]["terms"].as_array().unwrap().len(), 3);
    let bad = latvoa(&["relations", "--rs", "A2", "--i", "1", "--j", "2"]);
    assert_eq!(bad.status.code(), Some(3));
}

#[test]
fn span_and_mult() {
    let out = json(&latvoa(&["span", "--rs", "A1", "--lambda", "2", "--cutoff", "2"]));
    assert_eq!(out["quotient_dims"], serde_json::json!([3, 4, 7]));
    let out = json(&latvoa(&["mult", "--rs", "A1", "--factor", "e^w@0", "--factor", "e^w@0"]));
    assert_eq!(out["lambda"], serde_json::json!([2]));
    assert!(out["reduced"].as_array().unwrap().iter().any(|c| c != "0"));
    let capped = Command::new(env!("CARGO_BIN_EXE_latvoa"))
        .args(["span", "--rs", "A1", "--lambda", "2", "--cutoff", "3"])
        .env("LATTICE_VOA_MAX_DIM", "1")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(3));
}

#[test]
fn tableaux_routes_agree() {
    let out = json(&latvoa(&["tableaux", "--rs", "A2", "--i", "2", "--j", "1"]));
    assert_eq!(out["routes_agree"], true);
    assert_eq!(out["pairs"].as_array().unwrap().len(), 9);
    let text = latvoa(&["tableaux", "--rs", "A1", "--i", "1", "--j", "1", "--text"]);
    assert!(String::from_utf8_lossy(&text.stdout).contains("(2) (1) k = 1"));
}

#[test]
fn characters_suite_reports_the_quarter() {
    let out = latvoa(&["verify", "--rs", "A1", "--suite", "characters"]);
    let report = json(&out);
    assert_eq!(report["passed"], true);
    let checks = report["checks"].as_array().unwrap();
    let conformal = checks.iter().find(|c| c["name"].as_str().unwrap().starts_with("conformal weight")).unwrap();
    assert_eq!(conformal["passed"], true);
    assert!(conformal["note"].as_str().unwrap().contains("1/4"));
}

#[test]
fn voa_axioms_suite_passes() {
    let out = latvoa(&["verify", "--rs", "A1", "--suite", "voa-axioms", "--cutoff", "4"]);
    let report = json(&out);
    assert_eq!(report["passed"], true, "{report:#}");
    assert!(report["checks"].as_array().unwrap().iter().all(|c| c["count"].as_u64().unwrap() > 0));
}

#[test]
fn relations_suite_passes() {
    let out = latvoa(&["verify", "--rs", "A2", "--suite", "relations", "--cutoff", "3"]);
    assert_eq!(json(&out)["passed"], true);
}

#[test]
fn filtration_suite_passes() {
    let out = latvoa(&["verify", "--rs", "A1", "--suite", "filtration", "--cutoff", "2"]);
    assert_eq!(json(&out)["passed"], true);
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "--rs", "A1", "--suite", "voa-axioms", "--cutoff", "2", "--seed", "7"];
    let (a, b) = (latvoa(&args), latvoa(&args));
    assert_eq!(a.stdout, b.stdout);
    let other = latvoa(&["verify", "--rs", "A1", "--suite", "voa-axioms", "--cutoff", "2", "--seed", "8"]);
    assert!(other.status.success());
    let args = ["relations", "--rs", "A2", "--i", "2", "--j", "1"];
    assert_eq!(latvoa(&args).stdout, latvoa(&args).stdout);
}
