use std::process::{Command, Output};

use schurrep::cli::Report;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_schurrep")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn schur_with_oracle() {
    let out = run(&["schur", "--family", "h", "--n", "1", "--r", "3", "--t", "1", "--oracle"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["closed_form"]["order"], 9);
    assert_eq!(v["oracle"]["multiplier_order"], 9);
}

#[test]
fn even_r_is_rejected() {
    let out = run(&["schur", "--family", "h", "--n", "1", "--r", "4", "--t", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("r must be odd"));
}

#[test]
fn unknown_family_is_rejected() {
    assert_eq!(run(&["schur", "--family", "sl2", "--r", "3"]).status.code(), Some(2));
}

#[test]
fn oracle_cap_is_an_error() {
    let out = run(&["schur", "--family", "h", "--r", "5", "--oracle", "--max-order", "100"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn projreps_single_class_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let out = run(&["projreps", "--family", "h3", "--r", "3", "--t", "1", "--class", "1,0,0", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let classes = v["classes"].as_array().unwrap();
    assert_eq!(classes.len(), 1);
    assert_eq!(classes[0]["sum_dim_sq"], 27);
    assert_eq!(v["checks"]["alpha_identity"], "pass");
}

#[test]
fn output_is_deterministic_and_round_trips() {
    let args = ["projreps", "--family", "abelian", "--n", "1", "--r", "3", "--t", "3"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let report: Report = serde_json::from_slice(&a.stdout).unwrap();
    assert!(matches!(report, Report::Table(_)));
    let again = serde_json::to_string_pretty(&report).unwrap() + "\n";
    assert_eq!(again.as_bytes(), a.stdout.as_slice());
}

#[test]
fn csv_grid_and_rep_rows() {
    let out = run(&["--format", "csv", "schur", "--family", "h", "--r", "3,5", "--t", "1,3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines, ["family,n,r,t,closed_form,oracle", "h,1,3,1,9,", "h,1,3,3,27,", "h,1,5,1,25,"]);

    let out = run(&["irreps", "--family", "h3", "--r", "3", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("rep,dim,conductor,generator,row,col,entry"));
    // 9 characters on 3 generators plus two 3x3 images of 3 generators
    assert_eq!(text.lines().count(), 1 + 9 * 3 + 2 * 3 * 9);
}

#[test]
fn cocycle_tables() {
    let out = run(&["cocycles", "--family", "h3", "--r", "3", "--class", "1", "--tables"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["class_count"], 9);
    assert_eq!(v["certification"], "oracle");
    assert_eq!(v["classes"][0]["table"]["table"].as_array().unwrap().len(), 27 * 27);
}

#[test]
fn heisenberg_five_needs_a_class() {
    assert_eq!(run(&["projreps", "--family", "h", "--n", "2", "--r", "3"]).status.code(), Some(2));
    let out = run(&["projreps", "--family", "h", "--n", "2", "--r", "3", "--class", "1,0,0,0,0,1,0,0,0,0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["classes"][0]["dims"], serde_json::json!([9]));
    assert_eq!(v["classes"][0]["class_confirmed"], true);
}

#[test]
fn verify_passes() {
    let out = run(&["verify"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let v = json(&out);
    assert!(v.as_array().unwrap().iter().all(|l| l["passed"] == true));
}
