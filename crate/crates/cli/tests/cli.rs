//! End-to-end runs of the binary against the sample configs.

use std::path::PathBuf;
use std::process::{Command, Output};

fn config(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../configs")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coincide"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn certify_verified_chain_exits_zero() {
    let out = run(&[
        "certify",
        "--config",
        config("triangle_chain.cfg").to_str().unwrap(),
    ]);
    let text = stdout(&out);
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(text.contains("overall: verified"), "{text}");
    assert!(text.contains("uniqueness"), "{text}");
}

#[test]
fn certify_shift_sequence_flags_the_discrepancy() {
    let out = run(&[
        "certify",
        "--config",
        config("shift_sequence.cfg").to_str().unwrap(),
    ]);
    let text = stdout(&out);
    assert_eq!(out.status.code(), Some(2), "{text}");
    assert!(text.contains("overall: verified"), "{text}");
    assert!(text.contains("diagnosis-E-complete"), "{text}");
    assert!(text.contains("counterexample"), "{text}");
}

#[test]
fn certify_shrink_interval_surfaces_assertions() {
    let out = run(&[
        "certify",
        "--config",
        config("shrink_interval.cfg").to_str().unwrap(),
    ]);
    let text = stdout(&out);
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(text.contains("asserted by the user"), "{text}");
    assert!(text.contains("common-fixed"), "{text}");
}

#[test]
fn certify_structured_output_is_json() {
    let out = run(&[
        "certify",
        "--config",
        config("triangle_chain.cfg").to_str().unwrap(),
        "--format",
        "structured",
    ]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(doc["overall"], "verified");
    assert!(doc["entries"].as_array().unwrap().len() >= 8);
}

#[test]
fn solve_parabola_reports_minimal_residual() {
    let out = run(&[
        "solve",
        "--config",
        config("parabola_pair.cfg").to_str().unwrap(),
    ]);
    let text = stdout(&out);
    assert_eq!(out.status.code(), Some(2), "{text}");
    assert!(text.contains("no coincidence point"), "{text}");
    assert!(text.contains("minimal residual 8.88888888"), "{text}");
}

#[test]
fn solve_shrink_interval_structured_trace() {
    let out = run(&[
        "solve",
        "--config",
        config("shrink_interval.cfg").to_str().unwrap(),
        "--format",
        "structured",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(doc["trace"]["verdict"]["verdict"], "cauchy-detected");
    let steps = doc["trace"]["steps"].as_array().unwrap();
    assert!(steps.len() <= 25);
    assert!(doc["extraction"]["fixed_point"]["common"]["z"]["numeric"]
        .as_f64()
        .unwrap()
        .abs()
        <= 1e-9);
}

#[test]
fn oracle_capped_shift_sequence_is_empty() {
    let out = run(&[
        "oracle",
        "--config",
        config("shift_sequence.cfg").to_str().unwrap(),
        "--cap",
        "12",
    ]);
    let text = stdout(&out);
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(text.contains("coincidence points (0)"), "{text}");
    assert!(text.contains("common fixed points (0)"), "{text}");
}

#[test]
fn catalog_lists_entries() {
    let out = run(&["catalog"]);
    let text = stdout(&out);
    assert_eq!(out.status.code(), Some(0));
    for id in ["banach", "linear-quasi", "nonlinear-quasi", "ratio-t3", "kannan"] {
        assert!(text.contains(id), "missing {id} in:\n{text}");
    }
}

#[test]
fn conditions_pass_for_the_nonlinear_quasi_form() {
    let out = run(&["conditions", "--contraction", "nonlinear-quasi:k=0.4"]);
    let text = stdout(&out);
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert_eq!(text.matches("pass-on-grid").count(), 5, "{text}");
}

#[test]
fn conditions_find_the_denied_counterexamples() {
    let out = run(&["conditions", "--contraction", "ratio-t3"]);
    let text = stdout(&out);
    assert_eq!(out.status.code(), Some(2), "{text}");
    assert!(text.contains("counterexample"), "{text}");
    assert!(text.contains("witness"), "{text}");
}

#[test]
fn config_errors_exit_one_with_diagnostics() {
    let dir = std::env::temp_dir().join("coincide-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("broken.cfg");
    std::fs::write(&path, "contraction {\n  F = t1 - (t2\n}\n").unwrap();
    let out = run(&["conditions", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("line 2"), "{err}");
}
