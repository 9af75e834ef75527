use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toric-ell")).args(args).output().expect("spawn toric-ell")
}

fn structured(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "structured"]);
    let out = run(&all);
    let v = serde_json::from_slice(&out.stdout).expect("structured output is JSON");
    (out.status.code().unwrap(), v)
}

#[test]
fn minimal_p1_is_valid() {
    let path = data("p1.txt");
    let (code, v) = structured(&["validate", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "ok");
    assert_eq!(v["input"]["rank"], 1);
    assert_eq!(v["input"]["rays"], serde_json::json!([[1], [-1]]));
}

#[test]
fn non_primitive_ray_names_its_line() {
    let path = data("nonprimitive.txt");
    let (code, v) = structured(&["validate", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    let msg = v["error"]["message"].as_str().unwrap();
    assert!(msg.contains("non-primitive ray"), "{msg}");
    assert!(msg.contains("line 3"), "{msg}");
}

#[test]
fn wrong_cone_size_is_semantic_error() {
    let path = data("bad_cone.txt");
    let (code, v) = structured(&["validate", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(v["error"]["message"].as_str().unwrap().contains("line 6"));
}

#[test]
fn syntax_error_reports_column() {
    let dir = std::env::temp_dir().join(format!("toric-ell-syntax-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.txt");
    std::fs::write(&path, "rank 1\nray 1\nray -x\ncone 0\ncone 1\n").unwrap();
    let (code, v) = structured(&["validate", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(v["error"]["message"].as_str().unwrap().starts_with("3:5:"));
}

#[test]
fn missing_file_is_parse_error() {
    let (code, _) = structured(&["validate", "/nonexistent/fan.txt"]);
    assert_eq!(code, 2);
}

#[test]
fn genus_p2_q0_is_hodge_polynomial() {
    let path = data("p2.txt");
    let (code, v) = structured(&["genus", path.to_str().unwrap(), "--order", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "ok");
    let q0 = &v["result"]["coefficients"][0];
    assert_eq!(q0["q"], 0);
    assert_eq!(q0["terms"], serde_json::json!({"-1": "1", "0": "1", "1": "1"}));
    assert_eq!(v["result"]["coefficients"].as_array().unwrap().len(), 5);
    assert!(v["timing"]["seconds"].is_number());
    assert!(v["convention"].is_string());
}

#[test]
fn genus_with_explicit_xi_agrees() {
    let path = data("p1xp1_blowup.txt");
    let (_, a) = structured(&["genus", path.to_str().unwrap(), "--order", "3"]);
    let (_, b) = structured(&["genus", path.to_str().unwrap(), "--order", "3", "--xi", "3,-7"]);
    assert_eq!(a["result"], b["result"]);
}

#[test]
fn vanishing_on_p2_cy_pair() {
    let path = data("p2_cy.txt");
    let out = run(&["vanishing", path.to_str().unwrap(), "--order", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("identically zero to order 4"));
}

#[test]
fn limit_on_negative_case_is_pole() {
    let path = data("pole.txt");
    let (code, v) = structured(&["limit", path.to_str().unwrap(), "--order", "2"]);
    assert_eq!(code, 4);
    assert_eq!(v["status"], "pole");
    let text = v["result"].to_string();
    assert!(text.contains("-2*y^{-1} + 2*y"), "{text}");
}

#[test]
fn limit_on_full_boundary_is_zero() {
    let path = data("p2_boundary.txt");
    let (code, v) = structured(&["limit", path.to_str().unwrap(), "--order", "2"]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["status"], "ok");
}

#[test]
fn equivariant_reports_samples() {
    let path = data("p1.txt");
    let (code, v) = structured(&["equivariant", path.to_str().unwrap(), "--order", "2"]);
    assert_eq!(code, 0);
    let checks = v["result"]["samples"]["validation"].as_array().unwrap();
    assert_eq!(checks.len(), 3);
    assert!(checks.iter().all(|c| c.as_u64().unwrap() >= 3));
    let (_, g) = structured(&["genus", path.to_str().unwrap(), "--order", "2"]);
    assert_eq!(v["result"]["at_t_one"], g["result"]);
}

#[test]
fn blowup_and_singular_succeed() {
    let p2 = data("p2.txt");
    let out = run(&["blowup", p2.to_str().unwrap(), "--order", "2", "--cone", "0,1"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let p112 = data("p112.txt");
    let out = run(&["singular", p112.to_str().unwrap(), "--order", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn missing_order_is_usage_error() {
    let path = data("p2.txt");
    let out = run(&["genus", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn structured_output_is_deterministic_apart_from_timing() {
    let path = data("p1xp1_blowup.txt");
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("timing");
        serde_json::to_string(&v).unwrap()
    };
    let (_, a) = structured(&["equivariant", path.to_str().unwrap(), "--order", "2"]);
    let (_, b) = structured(&["equivariant", path.to_str().unwrap(), "--order", "2"]);
    assert_eq!(strip(a), strip(b));
}
