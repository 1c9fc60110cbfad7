use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn sdias(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sdias"))
        .current_dir(fixtures())
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn unknown_subcommand_prints_usage() {
    let o = sdias(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));
}

#[test]
fn gl_is_leibniz() {
    let o = sdias(&["check", "leibniz", "algebras/gl_2_1_K.alg"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("check leibniz: pass"));
}

#[test]
fn decompose_sl_2_1() {
    let o = sdias(&["--canonical", "decompose", "algebras/sl_2_1_K.alg", "--cartan", "h1,h2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("6 nonzero weights, zero space of dimension 2, complete"));
}

#[test]
fn failing_check_exits_one_with_witnesses() {
    let o = sdias(&["--format", "structured", "check", "lie", "algebras/m2_diff.alg"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["status"], "fail");
    assert!(!v["report"]["violations"].as_array().unwrap().is_empty());
    assert!(v["timing_ms"].is_number());
}

#[test]
fn missing_file_is_an_error() {
    let o = sdias(&["check", "ass", "algebras/nowhere.alg"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("nowhere.alg"));
}

#[test]
fn violation_cap_is_respected() {
    let o = sdias(&[
        "--format",
        "structured",
        "--max-violations",
        "2",
        "steinberg-check",
        "2",
        "1",
        "algebras/sl_2_1_K.alg",
        "--map",
        "maps/sl_2_1_negated.json",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["report"]["violations"].as_array().unwrap().len(), 2);
    assert_eq!(v["report"]["total_violations"], 6);
}

#[test]
fn out_writes_a_loadable_file() {
    let dir = std::env::temp_dir().join(format!("sdias-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let target = dir.join("gl.alg");
    let o = sdias(&["--out", target.to_str().unwrap(), "build", "gl", "1", "1", "algebras/lambda1.alg"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let o = sdias(&["check", "leibniz", target.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    std::fs::remove_dir_all(dir).unwrap();
}
