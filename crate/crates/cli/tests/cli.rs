use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn krcomb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_krcomb"))
        .args(args)
        .output()
        .expect("krcomb runs")
}

fn stdout(args: &[&str]) -> String {
    let out = krcomb(args);
    assert!(
        out.status.success(),
        "krcomb {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8 output")
}

fn schema(name: &str) -> jsonschema::JSONSchema {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schemas").join(format!("{name}.schema.json"));
    let text = std::fs::read_to_string(&path).expect("schema file");
    let value: Value = serde_json::from_str(&text).expect("schema is json");
    jsonschema::JSONSchema::compile(&value).expect("schema compiles")
}

fn assert_valid(name: &str, text: &str) -> Value {
    let value: Value = serde_json::from_str(text).expect("output is json");
    let compiled = schema(name);
    if let Err(errors) = compiled.validate(&value) {
        let msgs: Vec<String> = errors.map(|e| format!("{} at {}", e, e.instance_path)).collect();
        panic!("{name} output violates its schema: {msgs:?}");
    }
    value
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("krcomb-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).expect("temp file");
    path
}

#[test]
fn m_examples() {
    let out = stdout(&["m", "--type", "A3~1", "--tensor", "3,2", "2,1", "1,1", "1,1", "--weight", "0,1,0"]);
    assert_eq!(out, "q^2 + q^3 + q^4\nconfigurations: 2\n");
    let out = stdout(&["m", "--type", "C2~1", "--tensor", "1,2", "1,1", "2,1", "--weight", "3,1"]);
    assert_eq!(out.lines().next(), Some("1"));
    let out = stdout(&["m", "--type", "A1~1", "--tensor", "1,1", "1,1", "--weight", "0"]);
    assert_eq!(out.lines().next(), Some("q"));
}

#[test]
fn x_inverts_to_m() {
    for (ty, w) in [("A2~1", "1,1"), ("C2~1", "0,0"), ("A4~2", "1,0"), ("D3~2", "0,0")] {
        let args = ["--type", ty, "--tensor", "1,1", "1,2", "--weight", w, "--format", "json"];
        let m = assert_valid("m", &stdout(&[&["m"], &args[..]].concat()));
        let x = assert_valid("x", &stdout(&[&["x"], &args[..]].concat()));
        assert_eq!(m["polynomial"]["terms"], x["inverted"]["terms"], "{ty} at {w}");
    }
}

#[test]
fn tree_dot_for_the_a3_example() {
    let dot = stdout(&["tree", "--type", "A3~1", "--tensor", "3,2", "2,1", "1,1", "1,1"]);
    assert!(dot.starts_with("digraph kleber {"));
    assert_eq!(dot.matches(" [label=\"").count() - dot.matches(" -> ").count(), 10);
    assert_eq!(dot.matches(" -> ").count(), 9);
}

#[test]
fn tree_json_is_valid() {
    let out = stdout(&["tree", "--type", "A3~1", "--tensor", "3,2", "2,1", "1,1", "1,1", "--format", "json"]);
    let v = assert_valid("tree", &out);
    assert_eq!(v["nodes"].as_array().map(Vec::len), Some(10));
    assert_eq!(v["configurations"].as_array().map(Vec::len), Some(10));
}

#[test]
fn vtree_selects_six_nodes() {
    let base = ["vtree", "--type", "C2~1", "--tensor", "1,2", "1,1", "2,1", "--weight-filter", "all"];
    let full = stdout(&base);
    assert_eq!(full.matches("peripheries=2").count(), 6);
    assert_eq!(full.matches(" -> ").count(), 10);
    let trimmed = stdout(&[&base[..], &["--trim"]].concat());
    assert_eq!(trimmed.matches("peripheries=2").count(), 6);
    assert_eq!(trimmed.matches(" -> ").count(), 8);
    let v = assert_valid("tree", &stdout(&[&base[..], &["--trim", "--format", "json"]].concat()));
    assert_eq!(v["ambient_type"], "A3~1");
    assert_eq!(v["configurations"].as_array().map(Vec::len), Some(6));
    let one = stdout(&["vtree", "--type", "C2~1", "--tensor", "1,2", "1,1", "2,1", "--weight-filter", "3,1"]);
    assert_eq!(one.matches("peripheries=2").count(), 1);
}

#[test]
fn crystal_outputs() {
    let v = assert_valid("crystal", &stdout(&["crystal", "--type", "C2~1", "--tensor", "1,2", "--format", "json"]));
    // B(2 Lambda_1) + B(0) of C_2
    assert_eq!(v["graph"]["vertices"].as_array().map(Vec::len), Some(11));
    let dot = stdout(&["crystal", "--type", "A2~1", "--tensor", "2,1", "1,1"]);
    assert!(dot.contains("label=\"3^v (x) 1\""));
    let text = stdout(&["crystal", "--type", "B3~1", "--tensor", "1,1", "--format", "text"]);
    assert!(text.contains("3 -3-> 0\n"));
}

#[test]
fn verify_quick_is_clean_and_deterministic() {
    let first = stdout(&["verify", "--budget", "quick"]);
    let second = stdout(&["verify", "--budget", "quick", "--sequential"]);
    assert_eq!(first, second);
    let v = assert_valid("verify", &first);
    assert_eq!(v["failures"], 0);
}

#[test]
fn verify_exit_status_counts_failures() {
    // no row crystal model exists for rank one of this type: each width fails twice
    let budget = r#"{
        "name": "broken", "kleber_types": [], "virtual_types": [], "oracle_weight": 0,
        "crystal_types": ["A2~2dag"], "crystal_max_s": 3, "xv_max_s": 0,
        "energy_types": [], "energy_max_s": 0, "xm_types": [], "xm_max_s": 0,
        "xm_max_factors": 0, "cap": 1000
    }"#;
    let path = temp_file("budget.json", budget);
    let out = krcomb(&["verify", "--budget", path.to_str().expect("utf-8 path")]);
    let _ = std::fs::remove_file(&path);
    let v = assert_valid("verify", &String::from_utf8_lossy(&out.stdout));
    assert_eq!(v["failures"], 6);
    assert_eq!(out.status.code(), Some(6));
    assert_eq!(v["cases"][0]["class"], "Error");
}

#[test]
fn errors_exit_with_126() {
    let cases: [&[&str]; 5] = [
        &["m", "--type", "Q3~1", "--tensor", "1,1", "--weight", "0"],
        &["m", "--type", "A2~1", "--tensor", "1", "--weight", "0,0"],
        &["m", "--type", "A2~1", "--tensor", "1,1", "--weight", "0"],
        &["x", "--type", "C2~1", "--tensor", "2,1", "--weight", "0,1"],
        &["verify", "--budget", "/nonexistent/budget.json"],
    ];
    for args in cases {
        let out = krcomb(args);
        assert_eq!(out.status.code(), Some(126), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
    let out = krcomb(&["x", "--type", "C2~1", "--tensor", "2,1", "--weight", "0,1"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("B^{1,s} only"));
}

#[test]
fn unknown_budget_fields_are_rejected() {
    let path = temp_file("bad.json", r#"{"name": "x", "typo": 1}"#);
    let out = krcomb(&["verify", "--budget", path.to_str().expect("utf-8 path")]);
    let _ = std::fs::remove_file(&path);
    assert_eq!(out.status.code(), Some(126));
}
