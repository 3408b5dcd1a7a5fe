use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bethe(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bethe"))
        .args(args)
        .env_remove("BETHE_OUT_DIR")
        .output()
        .expect("binary runs")
}

/// Runs with `--out` inside `dir` and returns the exit code and file.
fn run_to(dir: &Path, name: &str, args: &[&str]) -> (i32, String) {
    let path = dir.join(name);
    let mut full: Vec<&str> = args.to_vec();
    let p = path.to_str().unwrap().to_string();
    full.extend(["--out", &p]);
    let out = bethe(&full);
    let code = out.status.code().unwrap();
    (code, fs::read_to_string(&path).unwrap_or_default())
}

fn json(text: &str) -> Value {
    serde_json::from_str(text).expect("valid json")
}

#[test]
fn delta_regular_consistency_passes() {
    let dir = tempfile::tempdir().unwrap();
    let (code, text) = run_to(
        dir.path(),
        "c.json",
        &[
            "consistency",
            "--model",
            "delta",
            "--N",
            "3",
            "--rep",
            "regular",
            "--samples",
            "50",
            "--seed",
            "7",
        ],
    );
    assert_eq!(code, 0);
    let doc = json(&text);
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["seed"], 7);
    assert_eq!(doc["config"]["N"], 3);
    assert_eq!(doc["status"], "ok");
    let rels = doc["result"]["relations"].as_array().unwrap();
    assert_eq!(rels.len(), 11);
}

#[test]
fn pdp_regular_braid_fails_as_expected() {
    let dir = tempfile::tempdir().unwrap();
    let (code, text) = run_to(
        dir.path(),
        "c.json",
        &[
            "consistency",
            "--model",
            "pdp",
            "--N",
            "3",
            "--rep",
            "regular",
            "--samples",
            "20",
        ],
    );
    assert_eq!(code, 0);
    let doc = json(&text);
    let braid = doc["result"]["relations"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["relation"] == "braid")
        .unwrap()
        .clone();
    assert_eq!(braid["outcome"], "fail_as_expected");
    assert!(braid["max_residual"].as_f64().unwrap() > 0.1);
}

#[test]
fn invalid_configuration_exits_two() {
    for args in [
        vec!["consistency", "--N", "0"],
        vec!["consistency", "--model", "quartic"],
        vec!["build", "--N", "2", "--k", "1.0"],
        vec!["build", "--N", "2", "--k", "1.0,-1.0"],
        vec!["build", "--rep", "regular", "--sector", "++"],
        vec!["scatter", "--v0", "0.5:10:3"],
        vec!["scatter", "--v0", "10:100"],
        vec!["reps", "--N", "7"],
        vec!["frobnicate"],
    ] {
        let out = bethe(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn sector_build_has_eight_entries_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "build", "--model", "delta", "--N", "2", "--sector", "++", "--k", "1.1,2.3",
    ];
    let (code, first) = run_to(dir.path(), "a.json", &args);
    assert_eq!(code, 0);
    let (_, second) = run_to(dir.path(), "b.json", &args);
    assert_eq!(first, second);
    let doc = json(&first);
    let entries = doc["result"]["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 8);
    // A_I = 1 in every scalar sector.
    assert_eq!(entries[0]["a"][0], serde_json::json!([1.0, 0.0]));
    assert_eq!(doc["config"]["momenta"], serde_json::json!([1.1, 2.3]));
}

#[test]
fn seeded_runs_repeat_byte_for_byte() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        vec![
            "build", "--N", "3", "--rep", "regular", "--seed", "11", "--format", "csv",
        ],
        vec![
            "verify", "boundary", "--N", "3", "--seed", "5", "--probes", "5",
        ],
    ] {
        let (c1, a) = run_to(dir.path(), "x", &args);
        let (c2, b) = run_to(dir.path(), "y", &args);
        assert_eq!((c1, c2), (0, 0));
        assert_eq!(a, b, "{args:?}");
    }
}

#[test]
fn pdp_regular_build_reports_witness() {
    let dir = tempfile::tempdir().unwrap();
    let (code, text) = run_to(
        dir.path(),
        "w.json",
        &["build", "--model", "pdp", "--N", "3", "--rep", "regular"],
    );
    assert_eq!(code, 1);
    let doc = json(&text);
    assert_eq!(doc["status"], "violation");
    let w = &doc["result"]["witness"];
    assert_ne!(w["assigned_word"], w["revisit_word"]);
    assert!(w["residual"].as_f64().unwrap() > 1e-6);
}

#[test]
fn verify_commands_pass() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        vec![
            "verify", "boundary", "--model", "delta", "--N", "2", "--sector", "++", "--probes",
            "20",
        ],
        vec![
            "verify", "boundary", "--model", "pdp", "--N", "3", "--sector", "-+", "--probes", "10",
        ],
        vec![
            "verify", "duality", "--N", "2", "--c1", "1", "--c2", "2", "--points", "20",
        ],
        vec!["verify", "eigen", "--h", "1e-4"],
        vec!["verify", "halfline", "--model", "pdp", "--sector", "+-"],
    ] {
        let (code, text) = run_to(dir.path(), "v.json", &args);
        assert_eq!(code, 0, "{args:?}\n{text}");
    }
    let (_, text) = run_to(
        dir.path(),
        "d.json",
        &["verify", "duality", "--N", "2", "--c1", "1", "--c2", "2"],
    );
    let d = &json(&text)["result"]["duality"];
    assert!(d["table_difference"].as_f64().unwrap() <= 1e-12);
    assert!(d["max_psi_difference"].as_f64().unwrap() <= 1e-12);
}

#[test]
fn eigen_residual_shrinks_with_step() {
    let dir = tempfile::tempdir().unwrap();
    let (_, text) = run_to(
        dir.path(),
        "e.json",
        &["verify", "eigen", "--h", "1e-2", "--points", "5"],
    );
    for p in json(&text)["result"]["points"].as_array().unwrap() {
        let ratio = p["ratio"].as_f64().unwrap();
        assert!((ratio - 4.0).abs() < 0.5, "{ratio}");
    }
}

#[test]
fn scatter_slope_is_minus_one_half() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        vec![
            "scatter",
            "--model",
            "delta",
            "--parity",
            "even",
            "--k",
            "1",
            "--c",
            "2",
            "--v0",
            "1e3:1e9:7",
        ],
        vec![
            "scatter", "--model", "pdp", "--parity", "odd", "--k", "1", "--lambda", "0.5",
        ],
    ] {
        let (code, text) = run_to(dir.path(), "s.json", &args);
        assert_eq!(code, 0);
        let slope = json(&text)["result"]["slope"].as_f64().unwrap();
        assert!((slope + 0.5).abs() < 0.05, "{slope}");
    }
    let (_, text) = run_to(
        dir.path(),
        "o.json",
        &["scatter", "--model", "delta", "--parity", "odd"],
    );
    let rows = json(&text)["result"]["rows"].as_array().unwrap().clone();
    let last = &rows.last().unwrap()["b"];
    // Odd delta: A_- = -1 exactly, and B_- is already close at large V_0.
    let b = (last[0].as_f64().unwrap(), last[1].as_f64().unwrap());
    let limit = &json(&text)["result"]["limit"];
    let a = (limit[0].as_f64().unwrap(), limit[1].as_f64().unwrap());
    assert_eq!(a, (-1.0, 0.0));
    assert!(((b.0 - a.0).powi(2) + (b.1 - a.1).powi(2)).sqrt() < 1e-3);
}

#[test]
fn reps_breakdown() {
    let dir = tempfile::tempdir().unwrap();
    for (n, orbits, total) in [
        ("1", vec![1, 1], 2),
        ("3", vec![6, 18, 18, 6], 48),
        ("4", vec![24, 96, 144, 96, 24], 384),
    ] {
        let (code, text) = run_to(dir.path(), "r.json", &["reps", "--N", n]);
        assert_eq!(code, 0);
        let rule = &json(&text)["result"]["sum_rule"];
        assert_eq!(rule["per_orbit"], serde_json::json!(orbits));
        assert_eq!(rule["sum_of_squares"], total);
    }
}

#[test]
fn csv_output_carries_header() {
    let dir = tempfile::tempdir().unwrap();
    let (code, text) = run_to(
        dir.path(),
        "r.csv",
        &["reps", "--N", "2", "--format", "csv", "--seed", "3"],
    );
    assert_eq!(code, 0);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("# schema_version: 1"));
    assert_eq!(lines.next(), Some("# command: reps"));
    assert_eq!(lines.next(), Some("# seed: 3"));
    assert!(text
        .lines()
        .any(|l| l == "orbit,lambda,mu,dimension,dimension_squared"));
}

#[test]
fn output_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_bethe"))
        .args(["verify", "duality", "--points", "3"])
        .env("BETHE_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    let doc = json(&fs::read_to_string(dir.path().join("verify-duality.json")).unwrap());
    assert_eq!(doc["command"], "verify duality");
}
