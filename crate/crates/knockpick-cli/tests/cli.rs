//! End-to-end tests of the `kp` binary.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn kp(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kp"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, contents: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, contents).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn solve_then_validate_full_3x3() {
    let tmp = tempfile::tempdir().unwrap();
    let instance = write(tmp.path(), "full3.kp", "3 3\n###\n###\n###\n");

    let out = kp(&["solve", &instance], tmp.path());
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(stdout(&out), "cells=9 faces=4 knocks=2 actions=11\n");

    let plan = tmp.path().join("full3.plan");
    assert!(plan.exists());
    let text = fs::read_to_string(&plan).unwrap();
    assert!(text.starts_with("plan v1 3 3 knocks=2\n"));
    assert_eq!(text.lines().count(), 12); // header + 11 actions

    let out = kp(&["validate", &instance, plan.to_str().unwrap()], tmp.path());
    assert!(out.status.success());
    assert_eq!(stdout(&out), "valid\n");
}

#[test]
fn solve_empty_instance() {
    let tmp = tempfile::tempdir().unwrap();
    let instance = write(tmp.path(), "empty.kp", "2 3\n...\n...\n");
    let out = kp(&["solve", &instance], tmp.path());
    assert!(out.status.success());
    assert_eq!(stdout(&out), "cells=0 faces=0 knocks=0 actions=0\n");
}

#[test]
fn solve_full_5x5_reports_eight_knocks() {
    let tmp = tempfile::tempdir().unwrap();
    let instance = write(
        tmp.path(),
        "full5.kp",
        &format!("5 5\n{}", "#####\n".repeat(5)),
    );
    let out = kp(&["solve", &instance], tmp.path());
    assert!(out.status.success());
    assert_eq!(stdout(&out), "cells=25 faces=16 knocks=8 actions=33\n");
}

#[test]
fn solve_rejects_malformed_instance_with_exit_1() {
    let tmp = tempfile::tempdir().unwrap();
    let instance = write(tmp.path(), "bad.kp", "x y\n");
    let out = kp(&["solve", &instance], tmp.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("malformed header"));
}

#[test]
fn oracle_reports_minimum() {
    let tmp = tempfile::tempdir().unwrap();
    let instance = write(tmp.path(), "full3.kp", "3 3\n###\n###\n###\n");
    let out = kp(&["oracle", &instance], tmp.path());
    assert!(out.status.success());
    assert_eq!(stdout(&out), "min_knocks=2\n");
}

#[test]
fn oracle_refuses_oversized_instances() {
    let tmp = tempfile::tempdir().unwrap();
    let instance = write(
        tmp.path(),
        "big.kp",
        &format!("4 4\n{}", "####\n".repeat(4)),
    );
    let out = kp(&["oracle", &instance], tmp.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("above the search limit"));
}

#[test]
fn render_without_plan_prints_the_grid() {
    let tmp = tempfile::tempdir().unwrap();
    let instance = write(tmp.path(), "sq.kp", "2 2\n##\n##\n");
    let out = kp(&["render", &instance], tmp.path());
    assert!(out.status.success());
    assert_eq!(stdout(&out), "##\n##\n");
}

#[test]
fn render_with_plan_prints_one_frame_per_action() {
    let tmp = tempfile::tempdir().unwrap();
    let instance = write(tmp.path(), "sq.kp", "2 2\n##\n##\n");
    let out = kp(&["solve", &instance], tmp.path());
    assert!(out.status.success());
    assert_eq!(stdout(&out), "cells=4 faces=1 knocks=1 actions=5\n");

    let plan = tmp.path().join("sq.plan");
    let out = kp(&["render", &instance, plan.to_str().unwrap()], tmp.path());
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    let frames = text.lines().filter(|l| l.starts_with("frame ")).count();
    assert_eq!(frames, 6, "initial frame plus one per action:\n{text}");
    assert!(text.contains("frame 1: knock"));

    // identical invocations render identically
    let again = kp(&["render", &instance, plan.to_str().unwrap()], tmp.path());
    assert_eq!(stdout(&again), text);
}

#[test]
fn render_rejects_mismatched_plan() {
    let tmp = tempfile::tempdir().unwrap();
    let instance = write(tmp.path(), "sq.kp", "2 2\n##\n##\n");
    let other = write(tmp.path(), "row.kp", "1 3\n###\n");
    let out = kp(&["solve", &other], tmp.path());
    assert!(out.status.success());
    let plan = tmp.path().join("row.plan");
    let out = kp(&["render", &instance, plan.to_str().unwrap()], tmp.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("plan/instance mismatch"));
}

#[test]
fn validate_flags_a_tampered_plan() {
    let tmp = tempfile::tempdir().unwrap();
    let instance = write(tmp.path(), "full3.kp", "3 3\n###\n###\n###\n");
    let out = kp(&["solve", &instance], tmp.path());
    assert!(out.status.success());
    let plan_path = tmp.path().join("full3.plan");
    // retarget the first knock at the enclosed center cell
    let tampered = fs::read_to_string(&plan_path)
        .unwrap()
        .replacen("K 0 1 -1 0", "K 1 1 -1 0", 1);
    fs::write(&plan_path, tampered).unwrap();
    let out = kp(
        &["validate", &instance, plan_path.to_str().unwrap()],
        tmp.path(),
    );
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("ray blocked"), "{}", stdout(&out));
}

#[test]
fn bench_writes_csv_with_one_line_per_series() {
    let tmp = tempfile::tempdir().unwrap();
    let csv = tmp.path().join("rows.csv");
    let out = kp(
        &[
            "bench",
            "--grids",
            "3x3,5x5",
            "--subgraph",
            "3x3:5",
            "--reps",
            "2",
            "--seed",
            "9",
            "--out",
            csv.to_str().unwrap(),
        ],
        tmp.path(),
    );
    assert!(out.status.success(), "{}", stderr(&out));
    let text = fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[0], "grid,|V|,knocks_mean,t_total_ms_mean");
    assert!(lines[1].starts_with("3x3,9,2.00,"));
    assert!(lines[2].starts_with("5x5,25,8.00,"));
    assert!(lines[3].starts_with("3x3,5,"));

    // stdout carries the deterministic part only
    let printed = stdout(&out);
    assert!(printed.contains("3x3 |V|=9 knocks_mean=2.00"));
    assert!(!printed.contains("ms"));
}

#[test]
fn unknown_subcommand_exits_1() {
    let tmp = tempfile::tempdir().unwrap();
    let out = kp(&["frobnicate"], tmp.path());
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn help_exits_0() {
    let tmp = tempfile::tempdir().unwrap();
    let out = kp(&["--help"], tmp.path());
    assert!(out.status.success());
    assert!(stdout(&out).contains("solve"));
}
