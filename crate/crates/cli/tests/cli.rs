use std::process::{Command, Output};

use serde_json::Value;

fn steinberg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_steinberg"))
        .args(args)
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn flag_homology_of_the_plane_over_f3() {
    let out = steinberg(&["run", "flag-homology", "--n", "2", "--p", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["status"], "pass");
    let degrees = report["witness"]["reduced"]["degrees"].as_array().unwrap();
    let zero = degrees.iter().find(|h| h["degree"] == 0).unwrap();
    assert_eq!(zero["rank"], 3);
    assert_eq!(report["elapsed_ms"], Value::Null);
}

#[test]
fn oversized_groups_are_skipped_with_exit_one() {
    let out = steinberg(&["run", "idempotent", "--n", "3", "--p", "5"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["status"], "skipped");
}

#[test]
fn bad_input_exits_two() {
    assert_eq!(
        steinberg(&["run", "nope", "--p", "2"]).status.code(),
        Some(2)
    );
    assert_eq!(
        steinberg(&["run", "bruhat", "--n", "2"]).status.code(),
        Some(2)
    );
    assert_eq!(
        steinberg(&["run", "bruhat", "--n", "2", "--p", "4"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn list_names_every_check() {
    let out = steinberg(&["list"]);
    let names: Vec<&str> = std::str::from_utf8(&out.stdout).unwrap().lines().collect();
    assert_eq!(names.len(), 16);
    assert!(names.contains(&"theorem15") && names.contains(&"assoc-comm"));
}

#[test]
fn reports_go_to_files_and_markdown() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.md");
    let out = steinberg(&[
        "run",
        "hom-partition",
        "--group",
        "Q8",
        "--n",
        "2",
        "--p",
        "2",
        "--format",
        "markdown",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(
        text.contains("| hom-partition |") && text.contains("| pass |"),
        "{text}"
    );
}

#[test]
fn timings_are_opt_in() {
    let out = steinberg(&["run", "bruhat", "--n", "2", "--p", "2", "--timings"]);
    assert!(json(&out)["elapsed_ms"].is_u64());
}

#[test]
fn quick_suite_is_stable_across_thread_counts() {
    let one = steinberg(&["suite", "quick", "--threads", "1"]);
    let four = steinberg(&["suite", "quick", "--threads", "4"]);
    assert_eq!(one.stdout, four.stdout);
    let reports = json(&one);
    let statuses: Vec<&str> = reports
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["status"].as_str().unwrap())
        .collect();
    assert!(statuses.iter().all(|&s| s != "skipped"));
    let failing: Vec<&str> = reports
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["status"] == "fail")
        .map(|r| r["check"].as_str().unwrap())
        .collect();
    assert_eq!(failing, ["assoc-comm"]);
    assert_eq!(one.status.code(), Some(1));
}
