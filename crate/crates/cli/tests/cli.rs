use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_equifuse"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_str(&stdout(&out)).unwrap()
}

fn entry<'a>(doc: &'a Value, row: &str, col: &str) -> &'a Value {
    doc["results"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["row"] == row && r["col"] == col)
        .unwrap_or_else(|| panic!("no entry ({row}, {col})"))
}

#[test]
fn table_contains_worked_products() {
    let c = stdout(&run(&["table", "--m", "2", "--ring", "c"]));
    assert!(c.lines().any(|l| l == "X2 ⊗ X+ = X2 ⊕ X-"), "{c}");
    assert!(c.lines().any(|l| l == "X2 ⊗ X- = X2 ⊕ X+"));
    assert!(c.lines().any(|l| l == "X2 ⊗ X3 = X1 ⊕ 2X3"));
    let d = stdout(&run(&["table", "--m", "2", "--ring", "d"]));
    assert!(d.lines().any(|l| l == "V2 ⊗ V3 = V1 ⊕ V3 ⊕ V5"), "{d}");
}

#[test]
fn table_json_lists_multiplicities() {
    let doc = json(&["table", "--m", "2", "--json"]);
    assert_eq!(doc["m"], 2);
    assert_eq!(doc["kappa"], 10);
    let hit = doc["results"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["x"] == "X2" && r["y"] == "X3" && r["z"] == "X3")
        .unwrap();
    assert_eq!(hit["mult"], 2);
}

#[test]
fn smatrix_entries() {
    let ee = json(&["smatrix", "--m", "2", "--which", "c-ee", "--json"]);
    let v = entry(&ee, "l:+", "l:+")["value"][0].as_f64().unwrap();
    assert!((v + 0.276393).abs() < 1e-6);
    let d = json(&["smatrix", "--m", "2", "--which", "d", "--json"]);
    let v = entry(&d, "V0", "V0")["value"][0].as_f64().unwrap();
    assert!((v - 0.138197).abs() < 1e-6);
    let ea = json(&["smatrix", "--m", "2", "--which", "c-ea", "--json"]);
    let v = entry(&ea, "l:3", "al:2")["value"][0].as_f64().unwrap();
    assert!((v + 0.525731).abs() < 1e-6, "{v}");
    let v = entry(&ea, "l:1", "al:2")["value"][0].as_f64().unwrap();
    assert!((v - 0.850651).abs() < 1e-6, "{v}");
}

#[test]
fn coeff_formulas_agree_with_ring() {
    for args in [
        ["--i", "2", "--j", "3", "--k", "3", "--formula", "ext-e"],
        ["--i", "1", "--j", "3", "--k", "X+", "--formula", "ext-a"],
        ["--i", "1", "--j", "1", "--k", "-", "--formula", "ext-a"],
        ["--i", "2", "--j", "3", "--k", "5", "--formula", "verlinde"],
    ] {
        let mut full = vec!["coeff", "--m", "2", "--json"];
        full.extend(args);
        let doc = json(&full);
        assert_eq!(doc["results"][0]["passed"], true, "{doc}");
    }
    let out = run(&[
        "coeff",
        "--m",
        "2",
        "--i",
        "1",
        "--j",
        "3",
        "--k",
        "3",
        "--formula",
        "ext-e",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_exit_codes() {
    assert_eq!(run(&["verify", "--m", "2"]).status.code(), Some(0));
    let tight = run(&["verify", "--m", "2", "--tol", "1e-18"]);
    assert_eq!(tight.status.code(), Some(1));
    assert!(stdout(&tight).contains("FAIL"));
    assert_eq!(
        run(&["verify", "--m", "2", "--tol", "-1"]).status.code(),
        Some(2)
    );
}

#[test]
fn verify_json_is_byte_identical_across_runs() {
    let a = run(&["verify", "--m", "4", "--json"]);
    let b = run(&["verify", "--m", "4", "--json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let doc: Value = serde_json::from_slice(&a.stdout).unwrap();
    let keys: Vec<&String> = doc.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["kappa", "m", "results", "tolerance"]);
    for check in doc["results"].as_array().unwrap() {
        assert!(check["max_residual"].is_number());
        assert_eq!(check["passed"], true);
    }
}

#[test]
fn invalid_invocations_exit_2() {
    let odd = run(&["table", "--m", "3"]);
    assert_eq!(odd.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&odd.stderr).contains("unsupported case"));
    assert_eq!(
        run(&["smatrix", "--m", "2", "--which", "foo"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["table", "--m", "0"]).status.code(), Some(2));
    assert_eq!(run(&["table"]).status.code(), Some(2));
}
