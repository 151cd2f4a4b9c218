//! End-to-end runs of the `grex` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

use grex::casestudy::CaseData;
use serde_json::Value;

fn specs() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../specs")
}

fn grex(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grex")).args(args).output().expect("run grex")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn spec(name: &str) -> String {
    specs().join(name).display().to_string()
}

#[test]
fn dual_numbers_are_koszul_to_degree_eight() {
    let out = grex(&["check", &spec("dual_numbers.toml"), "koszul", "--degree", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["schema"], "grex/1");
    assert_eq!(r["ok"], true);
    assert_eq!(r["result"]["bound"], 8);
}

#[test]
fn truncated_cubic_is_not_quadratic() {
    let out = grex(&["check", &spec("truncated_cubic.toml"), "quadratic"]);
    assert_eq!(out.status.code(), Some(1));
    let r = json(&out);
    assert_eq!(r["ok"], false);
    assert_eq!(r["result"]["data"]["w2_dim"], 0);
    let grades = r["result"]["data"]["grades"].as_array().unwrap();
    assert!(grades.iter().any(|g| g[0] == 3 && g[2].as_u64().unwrap() > 0));
}

#[test]
fn two_cycle_is_standard_q_koszul() {
    let out = grex(&["check", &spec("two_cycle.toml"), "standard-qkoszul", "--degree", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let out = grex(&["check", &spec("two_cycle.toml"), "qha"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn malformed_spec_exits_with_parse_error() {
    let dir = std::env::temp_dir().join(format!("grex-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.toml");
    std::fs::write(&bad, "vertices = [\n").unwrap();
    let out = grex(&["check", bad.to_str().unwrap(), "koszul"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["command"], "error");
    assert!(!out.stderr.is_empty());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn kl_polynomial_and_poincare_quotient() {
    let r = json(&grex(&["kl", "a", "3", "2", "2132"]));
    assert_eq!(r["result"]["poly"]["text"], "1 + q");
    let r = json(&grex(&["kl", "poincare", "5", "3,2"]));
    assert_eq!(r["result"]["poly"]["pairs"], serde_json::json!([[0, 1], [1, 1], [2, 2], [3, 2], [4, 2], [5, 1], [6, 1]]));
}

#[test]
fn singular_polynomial_with_empty_parabolic_matches_plain() {
    let r = json(&grex(&["kl", "psing", "a", "3", "-", "2", "2132"]));
    assert_eq!(r["result"]["poly"]["text"], "1 + t^2");
}

#[test]
fn length_overflow_exits_three() {
    let out = grex(&["kl", "--length-bound", "4", "~a", "1", "e", "010101"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn case_study_report() {
    let out = grex(&["casestudy", "run"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["result"]["x"], 1);
    assert_eq!(r["result"]["y"], 1);
    assert_eq!(r["result"]["conversion"][0], serde_json::json!(["1^5", "7"]));
    assert_eq!(out.stdout, grex(&["casestudy", "run"]).stdout);
}

#[test]
fn exported_case_data_round_trips() {
    let out = grex(&["casestudy", "export-data"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let data = CaseData::from_toml(&text).unwrap();
    assert_eq!(data, grex::casestudy::case_data());
}

#[test]
fn text_format_and_out_file() {
    let out = grex(&["--format", "text", "kl", "a", "3", "2", "2132"]);
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("kl [grex/1] ok"));
    let path = std::env::temp_dir().join(format!("grex-out-{}.json", std::process::id()));
    let out = grex(&["--out", path.to_str().unwrap(), "kl", "poincare", "3", "2,1"]);
    assert_eq!(out.status.code(), Some(0));
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(written["result"]["poly"]["text"], "1 + q + q^2");
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn small_corpus_run() {
    let out = grex(&["corpus", "--max-vertices", "2", "--max-arrows", "2", "--characteristics", "2", "--sequential"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["ok"], true);
}
