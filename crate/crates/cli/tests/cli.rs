//! End-to-end checks of the command-line interface: exit codes, report
//! determinism, and generate/load round trips.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_linkform")
}

fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .output()
        .expect("spawn linkform")
}

fn tmp(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("linkform-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn generate_report_roundtrip_sphere() {
    let path = tmp("s2.json");
    let out = run(&["generate", "sphere", "2", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let rep = run(&[
        "report",
        "--complex",
        path.to_str().unwrap(),
        "--sections",
        "cohomology",
    ]);
    assert!(rep.status.success());
    let json: serde_json::Value = serde_json::from_slice(&rep.stdout).unwrap();
    assert_eq!(json["complex"]["f_vector"], serde_json::json!([4, 6, 4]));
}

#[test]
fn report_is_byte_deterministic() {
    let path = tmp("l41.json");
    assert!(run(&["generate", "lens", "4", "1", "--out", path.to_str().unwrap()])
        .status
        .success());
    let args = [
        "report",
        "--complex",
        path.to_str().unwrap(),
        "--sections",
        "cohomology,steenrod,bss,pairing,wu",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "two runs must be byte-identical");
}

#[test]
fn pairing_on_even_dimension_exits_2() {
    let path = tmp("rp2.json");
    assert!(run(&["generate", "rp", "2", "--out", path.to_str().unwrap()])
        .status
        .success());
    let rep = run(&[
        "report",
        "--complex",
        path.to_str().unwrap(),
        "--sections",
        "pairing",
    ]);
    assert_eq!(rep.status.code(), Some(2));
}

#[test]
fn malformed_complex_exits_2() {
    let path = tmp("bad.json");
    std::fs::write(&path, r#"{"name": "bad", "facets": [[0, 0, 1]]}"#).unwrap();
    let rep = run(&["report", "--complex", path.to_str().unwrap()]);
    assert_eq!(rep.status.code(), Some(2));
    let missing = run(&["report", "--complex", "/nonexistent/nope.json"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn lens_generate_validates_parameters() {
    let path = tmp("l42.json");
    let out = run(&["generate", "lens", "4", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_axioms_passes_on_sphere() {
    let path = tmp("s2v.json");
    assert!(run(&["generate", "sphere", "2", "--out", path.to_str().unwrap()])
        .status
        .success());
    let out = run(&[
        "verify",
        "--complex",
        path.to_str().unwrap(),
        "axioms",
        "--seed",
        "42",
    ]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["failed"], serde_json::json!(0));
}

#[test]
fn verify_unknown_suite_exits_2() {
    let path = tmp("s2u.json");
    assert!(run(&["generate", "sphere", "2", "--out", path.to_str().unwrap()])
        .status
        .success());
    let out = run(&["verify", "--complex", path.to_str().unwrap(), "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn generate_rp5_has_expected_facet_count() {
    let path = tmp("rp5.json");
    let out = run(&["generate", "rp", "5", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let c = std::fs::read_to_string(&path).unwrap();
    let json: serde_json::Value = serde_json::from_str(&c).unwrap();
    assert_eq!(json["facets"].as_array().unwrap().len(), 2520);
}
