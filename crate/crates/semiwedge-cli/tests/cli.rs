//! End-to-end tests against the built binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_semiwedge"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).trim_end().to_string()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).to_string()
}

#[test]
fn contract_pinned_example() {
    let out = run(&["contract", "--d", "3", "x5^x3^x1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "x1^x5");
}

#[test]
fn normal_form_pinned_example() {
    let out = run(&["normal-form", "d1 * x1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "1 + neg(x1*d1)");
}

#[test]
fn normal_form_orders_agree() {
    let expr = "d2*x1*d1*x2*x1";
    let left = run(&["normal-form", expr, "--form", "sum+1", "--order", "leftmost"]);
    let right = run(&["normal-form", expr, "--form", "sum+1", "--order", "rightmost"]);
    assert_eq!(left.status.code(), Some(0));
    assert_eq!(stdout(&left), stdout(&right));
}

#[test]
fn repeated_wedge_letter_warns_and_zeroes() {
    let out = run(&["wedge", "x1^x1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "0");
    assert!(stderr(&out).contains("warning"), "stderr: {}", stderr(&out));
}

#[test]
fn wedge_output_reparses_to_itself() {
    let first = run(&["wedge", "x1^x5 + x2^x0"]);
    assert_eq!(first.status.code(), Some(0));
    let text = stdout(&first);
    let second = run(&["wedge", &text]);
    assert_eq!(stdout(&second), text);
}

#[test]
fn usage_errors_exit_three() {
    let bad_flag = run(&["contract", "x5^x3^x1"]);
    assert_eq!(bad_flag.status.code(), Some(3));
    let bad_expr = run(&["wedge", "x5^"]);
    assert_eq!(bad_expr.status.code(), Some(3));
    assert!(stderr(&bad_expr).contains("error"));
    let bad_semiring = run(&["wedge", "x1", "--semiring", "float"]);
    assert_eq!(bad_semiring.status.code(), Some(3));
}

#[test]
fn unsupported_series_direction_is_an_error() {
    let out = run(&["schubert", "--r", "1", "--op", "sigma-plus", "--var", "w"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn pieri_strips_listed() {
    let out = run(&["schubert", "--r", "2", "--lambda", "1", "--pieri", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "3\n2,1");
}

#[test]
fn expand_main_holds_and_emits_json() {
    let out = run(&["expand-main", "--r", "1", "--lambda", "1", "--zmax", "4", "--wmax", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("verdict: holds"));

    let out = run(&[
        "expand-main", "--r", "2", "--lambda", "2,1", "--zmax", "5", "--wmax", "5", "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(doc["schema"], "semiwedge.v1");
    assert_eq!(doc["verdict"], "holds");
    assert!(doc["lhs"]["terms"].as_array().is_some());
}

#[test]
fn verify_small_run_all_holds() {
    let out = run(&[
        "verify", "--semiring", "nat", "--rmax", "1", "--weight", "1", "--zmax", "4",
        "--wmax", "4", "--samples", "20", "--words", "5", "--checks", "pieri,degree-raise",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("0 fails, 0 inconclusive"));
}

#[test]
fn verify_json_report_is_versioned() {
    let out = run(&[
        "verify", "--semiring", "qplus", "--rmax", "1", "--weight", "0", "--zmax", "4",
        "--wmax", "4", "--checks", "quasi-inverse", "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(doc["schema"], "semiwedge.v1");
    assert_eq!(doc["config"]["rmax"], 1);
    assert!(doc["summary"]["holds"].as_u64().unwrap() > 0);
    assert_eq!(doc["summary"]["fails"], 0);
}

#[test]
fn verify_truncation_gap_is_inconclusive() {
    // The geometric lower bound is only known up to min(zmax, wmax), so an
    // asymmetric window leaves coefficients undecided rather than guessed.
    let out = run(&[
        "verify", "--semiring", "nat", "--rmax", "1", "--weight", "0", "--zmax", "6",
        "--wmax", "3", "--checks", "clifford-relations",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("INCONCLUSIVE"));
}

#[test]
fn config_file_supplies_defaults_and_flags_override() {
    let dir = std::env::temp_dir();
    let path: PathBuf = dir.join(format!("semiwedge-cli-test-{}.conf", std::process::id()));
    std::fs::write(
        &path,
        "# suite defaults\nsemiring = nat\nrmax = 1\nweight = 1\nzmax = 4\nwmax = 4\nchecks = pieri\nsamples = 10\nwords = 5\n",
    )
    .unwrap();
    let from_file = run(&["verify", "--config", path.to_str().unwrap()]);
    assert_eq!(from_file.status.code(), Some(0), "stderr: {}", stderr(&from_file));
    assert!(stdout(&from_file).contains("pieri"));
    assert!(!stdout(&from_file).contains("quasi-inverse"));

    let overridden = run(&[
        "verify", "--config", path.to_str().unwrap(), "--checks", "quasi-inverse",
    ]);
    assert_eq!(overridden.status.code(), Some(0));
    assert!(stdout(&overridden).contains("quasi-inverse"));

    let bad = std::fs::write(&path, "rmax = three\n");
    bad.unwrap();
    let rejected = run(&["verify", "--config", path.to_str().unwrap()]);
    assert_eq!(rejected.status.code(), Some(3));
    std::fs::remove_file(&path).ok();
}
