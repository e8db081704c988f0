//! End-to-end tests driving the built binary.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_elicit")
}

fn fixtures() -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().unwrap()
}

#[test]
fn compare_is_byte_exact() {
    let data = fixtures().join("forecasts.csv");
    let out = run(&["compare", "--data", data.to_str().unwrap(), "--score", "mean_sq"]);
    assert_eq!(out.status.code(), Some(0));
    let expected = include_str!("fixtures/compare_expected.txt");
    assert_eq!(out.stdout, expected.as_bytes());
}

#[test]
fn compare_json_is_valid() {
    let data = fixtures().join("forecasts.csv");
    let out = run(&[
        "compare",
        "--data",
        data.to_str().unwrap(),
        "--score",
        "pinball:alpha=0.5",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["ranking"].as_array().unwrap().len(), 2);
    assert_eq!(doc["pairwise"].as_array().unwrap().len(), 1);
}

#[test]
fn missing_config_exits_1() {
    let out = run(&["properties", "--config", "/nonexistent/conf.ini"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
}

#[test]
fn dimension_mismatch_exits_2() {
    let data = fixtures().join("forecasts.csv");
    let out = run(&["compare", "--data", data.to_str().unwrap(), "--score", "mv"]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("dimension"));
}

#[test]
fn metrical_falsification_exits_3() {
    let cfg = fixtures().join("metrical_falsification.ini");
    let out_dir = tempfile::tempdir().unwrap();
    let out = run(&[
        "properties",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out_dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
    let report = std::fs::read_to_string(
        out_dir.path().join("order_sensitivity_metrical_p2.json"),
    )
    .unwrap();
    let doc: serde_json::Value = serde_json::from_str(&report).unwrap();
    assert_eq!(doc["verdict"], "violated");
}

#[test]
fn estimate_recovers_the_median() {
    let dir = tempfile::tempdir().unwrap();
    let data = fixtures().join("forecasts.csv");
    let cfg_path = dir.path().join("median.ini");
    std::fs::write(
        &cfg_path,
        format!(
            "[score]\nliteral = pinball:alpha=0.5\n\n[io]\ndata = {}\n",
            data.display()
        ),
    )
    .unwrap();
    let out = run(&["estimate", "--config", cfg_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let value: f64 = text.lines().nth(1).unwrap().parse().unwrap();
    // y column is 0.0, 0.5, 1.0; the median pinball fit is 0.5
    assert!((value - 0.5).abs() < 1e-9);
}

#[test]
fn estimate_experiment_writes_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let cfg_path = dir.path().join("exp.ini");
    std::fs::write(
        &cfg_path,
        "[score]\nliteral = mean_sq\n\n[functional]\nliteral = mean\n\n\
         [check]\ndist = normal: 0, 1\nns = 50, 200\nreps = 3\nseed = 11\n",
    )
    .unwrap();
    let out_dir = dir.path().join("out");
    let out = run(&[
        "estimate",
        "--config",
        cfg_path.to_str().unwrap(),
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out_dir.join("estimate_rows.csv").exists());
    let summary =
        std::fs::read_to_string(out_dir.join("estimate_summary.json")).unwrap();
    let doc: serde_json::Value = serde_json::from_str(&summary).unwrap();
    assert_eq!(doc["aggregates"].as_array().unwrap().len(), 2);
}

#[test]
fn identical_invocations_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cfg_path = dir.path().join("sim.ini");
    std::fs::write(
        &cfg_path,
        "[score]\nliteral = mean_sq\nliteral2 = pinball:alpha=0.5\n\n\
         [check]\ndist = normal: 0, 1\nforecast_a = 0.0\nforecast_b = 0.3\n\
         n = 100\nreps = 5\nseed = 42\n",
    )
    .unwrap();
    let mut outputs = Vec::new();
    for tag in ["a", "b"] {
        let out_dir = dir.path().join(tag);
        let out = run(&[
            "simulate",
            "--config",
            cfg_path.to_str().unwrap(),
            "--out",
            out_dir.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
        let rows = std::fs::read(out_dir.join("simulate_rows.csv")).unwrap();
        outputs.push((out.stdout, rows));
    }
    assert_eq!(outputs[0], outputs[1]);
}

#[test]
fn seed_flag_overrides_config_seed() {
    let dir = tempfile::tempdir().unwrap();
    let cfg_path = dir.path().join("sim.ini");
    std::fs::write(
        &cfg_path,
        "[score]\nliteral = mean_sq\nliteral2 = pinball:alpha=0.5\n\n\
         [check]\ndist = normal: 0, 1\nforecast_a = 0.0\nforecast_b = 0.3\n\
         n = 50\nreps = 4\nseed = 42\n",
    )
    .unwrap();
    let base = dir.path().join("base");
    let with_flag = dir.path().join("flag");
    let a = run(&[
        "simulate",
        "--config",
        cfg_path.to_str().unwrap(),
        "--out",
        base.to_str().unwrap(),
    ]);
    let b = run(&[
        "simulate",
        "--config",
        cfg_path.to_str().unwrap(),
        "--seed",
        "43",
        "--out",
        with_flag.to_str().unwrap(),
    ]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(b.status.code(), Some(0));
    let rows_a = std::fs::read(base.join("simulate_rows.csv")).unwrap();
    let rows_b = std::fs::read(with_flag.join("simulate_rows.csv")).unwrap();
    assert_ne!(rows_a, rows_b);
}
