//! End-to-end runs of the command-line binary: sources, modes, exit codes
//! and report determinism.

use std::process::{Command, Output};

fn defext(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_defext"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

const QUICK: &[&str] = &["--pop-size", "30", "--max-gens", "100", "--seed", "11"];

#[test]
fn solve_from_file_exits_zero_on_found() {
    let dir = std::env::temp_dir().join("defext-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("w1.dt");
    std::fs::write(&path, "W: a. b|c.\nD: a : ~b / d. c : e / e. d : f / g.\n").unwrap();

    let out = defext(&[&["solve", path.to_str().unwrap()], QUICK].concat());
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout_of(&out).contains("found"));
}

#[test]
fn exhausted_search_exits_two() {
    let dir = std::env::temp_dir().join("defext-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("w3.dt");
    std::fs::write(&path, "W: a.\nD: a : b / ~b.\n").unwrap();

    let out = defext(&[
        "solve",
        path.to_str().unwrap(),
        "--pop-size",
        "10",
        "--max-gens",
        "5",
        "--trials",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn oracle_mode_exit_codes() {
    let dir = std::env::temp_dir().join("defext-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let two = dir.join("w2.dt");
    std::fs::write(&two, "W: a. b|c.\nD: a : ~b / ~b. a : ~c / ~c.\n").unwrap();
    let none = dir.join("w3b.dt");
    std::fs::write(&none, "W: a.\nD: a : b / ~b.\n").unwrap();

    let out = defext(&["solve", two.to_str().unwrap(), "--oracle", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(report["extension_count"], 2);

    let out = defext(&["solve", none.to_str().unwrap(), "--oracle"]);
    assert_eq!(out.status.code(), Some(3), "no extension proved");
}

#[test]
fn verify_mode_exit_codes() {
    let dir = std::env::temp_dir().join("defext-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("counter.dt");
    std::fs::write(&path, "W:\nD: a : c / b. b : c / a.\n").unwrap();

    let certified = defext(&["solve", path.to_str().unwrap(), "--verify", "0000"]);
    assert_eq!(certified.status.code(), Some(0));

    let rejected = defext(&["solve", path.to_str().unwrap(), "--verify", "1010"]);
    assert_eq!(rejected.status.code(), Some(2));
    assert!(stdout_of(&rejected).contains("not grounded"));

    let bogus = defext(&["solve", path.to_str().unwrap(), "--verify", "10"]);
    assert_eq!(bogus.status.code(), Some(1), "length mismatch is an error");
}

#[test]
fn parse_errors_exit_one_with_position() {
    let dir = std::env::temp_dir().join("defext-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.dt");
    std::fs::write(&path, "W: a &.\nD:\n").unwrap();

    let out = defext(&["solve", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("1:7"), "position missing in: {stderr}");
}

#[test]
fn people_and_hamilton_sources() {
    let out = defext(&[&["solve", "--people", "woman", "--trials", "2"], QUICK].concat());
    assert_eq!(out.status.code(), Some(0));

    let out = defext(&[
        &["solve", "--hamilton", "3", "--edges", "0-1,1-2,2-0"],
        QUICK,
    ]
    .concat());
    assert_eq!(out.status.code(), Some(0));

    // a graph without cycles has no extension: the oracle proves it
    let out = defext(&["solve", "--hamilton", "3", "--edges", "0-1", "--oracle"]);
    assert_eq!(out.status.code(), Some(3));

    let out = defext(&["solve", "--hamilton", "3", "--edges", "0-x"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn conflicting_sources_are_rejected() {
    let out = defext(&["solve", "--people", "boy", "--hamilton", "3", "--edges", "0-1"]);
    assert_ne!(out.status.code(), Some(0));
    let out = defext(&["solve"]);
    assert_eq!(out.status.code(), Some(1), "no source given");
}

#[test]
fn json_reports_are_deterministic_across_runs() {
    let strip_wall_time = |text: &str| {
        let mut v: serde_json::Value = serde_json::from_str(text).unwrap();
        v.as_object_mut().unwrap().remove("wall_time_mean_s");
        serde_json::to_string_pretty(&v).unwrap()
    };
    let args: Vec<&str> = [
        &[
            "solve",
            "--hamilton",
            "3",
            "--edges",
            "0-1,1-2,2-0",
            "--trials",
            "3",
            "--json",
        ],
        QUICK,
    ]
    .concat();
    let mut reports = Vec::new();
    for _ in 0..3 {
        let out = defext(&args);
        assert_eq!(out.status.code(), Some(0));
        reports.push(strip_wall_time(&stdout_of(&out)));
    }
    assert_eq!(reports[0], reports[1]);
    assert_eq!(reports[1], reports[2]);
}

#[test]
fn one_bit_mode_runs() {
    let out = defext(&[
        &["solve", "--hamilton", "3", "--edges", "0-1,1-2,2-0", "--one-bit"],
        QUICK,
    ]
    .concat());
    assert_eq!(out.status.code(), Some(0));
}
