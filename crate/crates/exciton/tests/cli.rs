//! End-to-end tests of the `exciton` binary: argument handling, exit
//! codes, output formats, and byte-level determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_exciton"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn exciton")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write_config(dir: &tempfile::TempDir, body: &str) -> PathBuf {
    let path = dir.path().join("material.json");
    std::fs::write(&path, body).unwrap();
    path
}

const GOOD_CONFIG: &str = r#"{
  "name": "scaled-unit",
  "m_e": 2.0,
  "m_h": 2.0,
  "omega0": 1.0,
  "epsilon": 2.0,
  "unit_system": "scaled"
}"#;

#[test]
fn spectrum_csv_has_expected_shape() {
    let out = run(&[
        "spectrum",
        "--m",
        "0",
        "--g",
        "1.0",
        "--grid-points",
        "1000",
        "--count",
        "3",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "index,alpha_bar,error_estimate,node_count"
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 3);
    let first: Vec<&str> = rows[0].split(',').collect();
    let e0: f64 = first[1].parse().unwrap();
    assert!((e0 - -0.2086).abs() < 1e-2, "ground state {e0}");
}

#[test]
fn spectrum_rejects_negative_g_with_exit_1() {
    let out = run(&["spectrum", "--g=-1.0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("non-negative"));
}

#[test]
fn spectrum_rejects_bad_grid_with_exit_1() {
    let out = run(&["spectrum", "--g", "1.0", "--grid-points", "10"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["spectrum", "--g", "1.0", "--r-max=-3"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn qes_json_contains_closed_form_point() {
    let out = run(&["qes", "--m", "0", "--degree", "1", "--format", "json"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let pts = v["points"].as_array().unwrap();
    assert_eq!(pts.len(), 1);
    assert!((pts[0]["alpha_bar"].as_f64().unwrap() - 4.0).abs() < 1e-12);
    assert!((pts[0]["g_squared"].as_f64().unwrap() - 2.0).abs() < 1e-12);
    assert_eq!(pts[0]["exact"], serde_json::Value::Bool(true));
}

#[test]
fn qes_rejects_degree_zero_with_exit_1() {
    let out = run(&["qes", "--degree", "0"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn check_json_reports_refutation_fields() {
    let out = run(&["check", "--m", "0", "--g", "1.0", "--grid-points", "1000"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["series_tail"], "grows");
    assert!(v["ode_max_residual"].as_f64().unwrap() > 1e-2);
    assert!((v["claimed_alpha_bar"].as_f64().unwrap() - 3.0).abs() < 1e-12);
}

#[test]
fn refute_writes_csv_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(&dir, GOOD_CONFIG);
    let out_path = dir.path().join("report.csv");
    let out = run(&[
        "refute",
        cfg.to_str().unwrap(),
        "--m",
        "0",
        "--degree",
        "1",
        "--grid-points",
        "1000",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = std::fs::read_to_string(&out_path).unwrap();
    assert!(text.starts_with("m,n_r,g,"));
    assert!(text.contains("REFUTED: non-terminating"), "{text}");
}

#[test]
fn refute_missing_config_exits_1() {
    let out = run(&["refute", "/nonexistent/config.json"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn refute_malformed_json_exits_1_with_location() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(&dir, "{\"name\": \"x\",");
    let out = run(&["refute", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    // serde_json reports line/column for syntax errors.
    assert!(stderr(&out).contains("line"), "{}", stderr(&out));
}

#[test]
fn refute_unknown_key_exits_1_naming_key() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        &dir,
        r#"{"name":"x","m_e":1,"m_h":1,"omega0":1,"epsilon":1,"unit_system":"scaled","typo_key":1}"#,
    );
    let out = run(&["refute", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("typo_key"), "{}", stderr(&out));
}

#[test]
fn refute_nonpositive_mass_exits_1_naming_field() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        &dir,
        r#"{"name":"x","m_e":0.0,"m_h":1,"omega0":1,"epsilon":1,"unit_system":"scaled"}"#,
    );
    let out = run(&["refute", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("m_e"), "{}", stderr(&out));
}

#[test]
fn refute_output_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(&dir, GOOD_CONFIG);
    let args = [
        "refute",
        cfg.to_str().unwrap(),
        "--m",
        "0",
        "--degree",
        "1",
        "--grid-points",
        "800",
        "--format",
        "json",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn refute_plot_data_files_written() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(&dir, GOOD_CONFIG);
    let out_path = dir.path().join("report.csv");
    let out = run(&[
        "refute",
        cfg.to_str().unwrap(),
        "--m",
        "0",
        "--degree",
        "1",
        "--grid-points",
        "1000",
        "--out",
        out_path.to_str().unwrap(),
        "--plot-data",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let cand = dir.path().join("candidate_m0.dat");
    assert!(cand.exists());
    let body = std::fs::read_to_string(cand).unwrap();
    let first = body.lines().next().unwrap();
    assert_eq!(first.split_whitespace().count(), 2);
}

#[test]
fn unknown_subcommand_exits_2_clap() {
    // clap's own usage errors use exit code 2, distinct from our domain
    // errors (1) and solver diagnostics (2 via Error::exit_code).
    let out = run(&["frobnicate"]);
    assert!(!out.status.success());
}
