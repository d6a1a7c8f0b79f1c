use std::path::Path;
use std::process::{Command, Output};

use balpack::format::ResultFile;

fn balpack(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_balpack")).args(args).output().unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn lists_all_instances() {
    let out = balpack(&["instances", "list"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 13);
    assert!(text.lines().next().unwrap().starts_with("I1 "));
    assert!(text.contains("II3"));
}

#[test]
fn shown_instance_can_be_solved_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = balpack(&["instances", "show", "I1"]);
    assert!(out.status.success());
    let file = dir.path().join("i1.txt");
    std::fs::write(&file, &out.stdout).unwrap();

    let json = dir.path().join("r.json");
    let out = balpack(&["solve", path(&file), "--iters", "3000", "--out-json", path(&json)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let result = ResultFile::from_json(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert!(result.feasible);
    assert_eq!(result.instance, "I1");
    assert_eq!(result.hyperparameters.n_it, 3000);
    assert_eq!(result.milestones.len(), 5);
}

#[test]
fn solve_writes_all_outputs_and_export_matches() {
    let dir = tempfile::tempdir().unwrap();
    let (json, svg, csv, svg2) = (
        dir.path().join("r.json"),
        dir.path().join("r.svg"),
        dir.path().join("trace.csv"),
        dir.path().join("again.svg"),
    );
    let out = balpack(&[
        "solve", "I2", "--iters", "2000", "--seed", "1",
        "--out-json", path(&json), "--out-svg", path(&svg), "--trace-csv", path(&csv),
    ]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.starts_with("I2 seed 1 radius "), "{stdout}");

    let trace = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(trace.lines().count(), 2001);
    assert!(trace.starts_with("iteration,target_radius,actual_radius,overlap,cg_violation,feasible\n1,"));

    let out = balpack(&["export", "--result", path(&json), "--svg", path(&svg2)]);
    assert!(out.status.success());
    assert_eq!(std::fs::read(&svg).unwrap(), std::fs::read(&svg2).unwrap());
    let text = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches(r#"class="item""#).count(), 15);
}

#[test]
fn hyperparameter_flags_reach_the_solver() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("r.json");
    let out = balpack(&[
        "solve", "I1", "--iters", "500", "--vmax", "2.5", "--fmax", "30", "--alpha", "7",
        "--smax", "1.5", "--smin", "0.02", "--c", "4", "--dt", "0.5", "--out-json", path(&json),
    ]);
    assert!(out.status.code().unwrap() <= 1);
    let hp = ResultFile::from_json(&std::fs::read_to_string(&json).unwrap()).unwrap().hyperparameters;
    assert_eq!((hp.v_max, hp.f_max, hp.alpha, hp.s_max, hp.s_min, hp.c, hp.dt), (2.5, 30.0, 7.0, 1.5, 0.02, 4.0, 0.5));
    assert_eq!(hp.n_it, 500);
}

#[test]
fn suite_two_defaults_to_fifteen_thousand_iterations() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("r.json");
    let out = balpack(&["solve", "II1", "--out-json", path(&json)]);
    assert!(out.status.success());
    let file = ResultFile::from_json(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(file.hyperparameters.n_it, 15_000);
    assert_eq!(file.reference_radius, Some(247.93));
}

#[test]
fn infeasible_run_exits_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("r.json");
    let out = balpack(&["solve", "I3", "--iters", "3", "--out-json", path(&json)]);
    assert_eq!(out.status.code(), Some(1));
    let file = ResultFile::from_json(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert!(!file.feasible);
    assert!(file.positions.is_empty());

    let svg = dir.path().join("r.svg");
    let out = balpack(&["export", "--result", path(&json), "--svg", path(&svg)]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_input_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let broken = dir.path().join("broken.txt");
    std::fs::write(&broken, "x 2\n1 1\n1 oops\n").unwrap();
    let out = balpack(&["solve", path(&broken)]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 3"), "{err}");

    assert_eq!(balpack(&["solve", "no-such-instance"]).status.code(), Some(2));
    assert_eq!(balpack(&["solve", "I1", "--vmax", "-1"]).status.code(), Some(2));
    assert_eq!(balpack(&["solve", "I1", "--seed", "abc"]).status.code(), Some(2));
    assert_eq!(balpack(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn bench_writes_reports() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("bench");
    let out = balpack(&["bench", "I1", "--reps", "2", "--jobs", "2", "--iters", "1500", "--out", path(&out_dir)]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.lines().nth(1).unwrap().starts_with("I1 "));

    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out_dir.join("bench.json")).unwrap()).unwrap();
    assert_eq!(report["runs"].as_array().unwrap().len(), 2);
    assert_eq!(report["instances"][0]["reference_radius"], 59.85);
    assert!(report["runs"][0].get("wall_time").is_none());

    let csv = std::fs::read_to_string(out_dir.join("runs.csv")).unwrap();
    assert_eq!(csv.lines().count(), 3);
}
