//! Drives the compiled binary end to end: run outputs, trace re-checking,
//! batching, and the error exit codes.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rbl"))
}

fn scenario_path() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scenarios/n9_grid.json")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("process exited without a code")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn run_then_check_round_trips_cleanly() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .arg("run")
        .arg(scenario_path())
        .args(["--seed", "1", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    for name in ["trace.csv", "violations.json", "metrics.json", "traj.svg"] {
        assert!(dir.path().join(name).exists(), "{name} missing");
    }

    let metrics: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("metrics.json")).unwrap())
            .unwrap();
    assert_eq!(metrics["success"], serde_json::json!(true));
    assert_eq!(metrics["violation_count"], serde_json::json!(0));
    assert_eq!(metrics["seed"], serde_json::json!(1));

    let svg = fs::read_to_string(dir.path().join("traj.svg")).unwrap();
    assert_eq!(svg.matches("<polyline").count(), 9, "one path per robot");

    // The stored trace must reproduce the stored verdict exactly.
    let check = bin()
        .arg("check")
        .arg(scenario_path())
        .arg(dir.path().join("trace.csv"))
        .output()
        .unwrap();
    assert_eq!(code(&check), 0, "stderr: {}", stderr(&check));
    let text = String::from_utf8_lossy(&check.stdout);
    assert!(text.contains("safety: PASS | proximity: PASS"), "stdout: {text}");
}

#[test]
fn tampered_trace_fails_the_check() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .arg("run")
        .arg(scenario_path())
        .args(["--seed", "2", "--no-svg", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert!(!dir.path().join("traj.svg").exists(), "--no-svg still wrote the plot");

    // Teleport robot 1 onto robot 0 for one tick mid-flight.
    let trace = dir.path().join("trace.csv");
    let mut lines: Vec<String> = fs::read_to_string(&trace)
        .unwrap()
        .lines()
        .map(str::to_owned)
        .collect();
    let block = 1 + 9 * ((lines.len() - 1) / 9 / 2);
    let donor: Vec<String> = lines[block].split(',').map(str::to_owned).collect();
    let mut victim: Vec<String> = lines[block + 1].split(',').map(str::to_owned).collect();
    victim[2] = donor[2].clone();
    victim[3] = donor[3].clone();
    lines[block + 1] = victim.join(",");
    fs::write(&trace, lines.join("\n") + "\n").unwrap();

    let check = bin()
        .arg("check")
        .arg(scenario_path())
        .arg(&trace)
        .output()
        .unwrap();
    assert_eq!(code(&check), 1, "stderr: {}", stderr(&check));
    let text = String::from_utf8_lossy(&check.stdout);
    assert!(text.contains("robot-robot"), "stdout: {text}");
    assert!(text.contains("safety: FAIL"), "stdout: {text}");
}

#[test]
fn batch_writes_a_summary_and_reports_success() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .arg("batch")
        .arg(scenario_path())
        .args(["--seeds", "1..2", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let summary: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("summary.json")).unwrap())
            .unwrap();
    assert_eq!(summary["runs"], serde_json::json!(2));
    assert_eq!(summary["success_rate"], serde_json::json!(1.0));
    assert_eq!(summary["seeds"].as_array().unwrap().len(), 2);
}

#[test]
fn bad_inputs_exit_with_code_two() {
    let dir = tempfile::tempdir().unwrap();

    let missing = bin()
        .arg("run")
        .arg(dir.path().join("nope.json"))
        .args(["--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(code(&missing), 2);
    assert!(stderr(&missing).contains("error"));

    let junk = dir.path().join("junk.json");
    fs::write(&junk, r#"{"format_version": 1, "bogus": true}"#).unwrap();
    let bad_schema = bin()
        .arg("run")
        .arg(&junk)
        .args(["--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(code(&bad_schema), 2);

    let bad_range = bin()
        .arg("batch")
        .arg(scenario_path())
        .args(["--seeds", "9..1", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(code(&bad_range), 2);
    assert!(stderr(&bad_range).contains("seed range") || stderr(&bad_range).contains("range"));
}
