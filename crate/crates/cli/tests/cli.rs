use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const WELL: &str = r#"{"kind": "SquareWell", "dimension": 1, "support_radius": 1.0, "depth": -10.0, "half_width": 1.0}"#;
const ZERO: &str = r#"{"kind": "BumpSum", "dimension": 1, "support_radius": 1.0, "bumps": []}"#;
const BUMP: &str =
    r#"{"kind": "BumpSum", "dimension": 1, "support_radius": 1.0, "bumps": [{"amplitude": 1.0, "center": 0.0, "width": 1.0}]}"#;
const REGION: &str = r#""region": {"re_min": 0.1, "re_max": 8, "im_min": -3, "im_max": -0.001}"#;

fn run(dir: &Path, config: &str, extra: &[&str]) -> Output {
    fs::write(dir.join("well.json"), WELL).unwrap();
    fs::write(dir.join("zero.json"), ZERO).unwrap();
    fs::write(dir.join("bump.json"), BUMP).unwrap();
    fs::write(dir.join("run.json"), config).unwrap();
    Command::new(env!("CARGO_BIN_EXE_isores"))
        .arg("--config")
        .arg(dir.join("run.json"))
        .arg("--output")
        .arg(dir.join("out"))
        .args(extra)
        .output()
        .unwrap()
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn compare_identical_files_is_iso_resonant() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &format!(r#"{{"command": "compare", "potentials": ["well.json", "well.json"], {REGION}}}"#), &[]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report = read_json(&dir.path().join("out/compare.json"));
    assert_eq!(report["iso_resonant"], Value::Bool(true));
    assert_eq!(report["resonances"][0]["entries"].as_array().unwrap().len(), 3);
    assert_eq!(report["config"]["command"], "compare");
}

#[test]
fn zero_potential_has_no_resonances() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &format!(r#"{{"command": "resonances", "potentials": ["zero.json"], {REGION}}}"#), &[]);
    assert_eq!(out.status.code(), Some(0));
    let report = read_json(&dir.path().join("out/resonances.json"));
    assert!(report["resonances"]["entries"].as_array().unwrap().is_empty());
    let csv = fs::read_to_string(dir.path().join("out/resonances.csv")).unwrap();
    assert_eq!(csv, "re_lambda,im_lambda,multiplicity\n");
}

#[test]
fn malformed_potential_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("bad.json"), r#"{"kind": "SquareWell", "#).unwrap();
    let out = run(dir.path(), &format!(r#"{{"command": "resonances", "potentials": ["bad.json"], {REGION}}}"#), &[]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("bad.json") && err.contains("EOF"), "{err}");
}

#[test]
fn invalid_configs_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        format!(r#"{{"command": "resonances", "potentials": ["well.json"], "nodes": 4, {REGION}}}"#),
        format!(r#"{{"command": "resonances", "potentials": ["missing.json"], {REGION}}}"#),
        format!(r#"{{"command": "resonances", "potentials": ["well.json"], "tol": 0, {REGION}}}"#),
        r#"{"command": "resonances", "potentials": ["well.json"]}"#.to_string(),
        r#"{"command": "transmogrify", "potentials": ["well.json"]}"#.to_string(),
        r#"{"command": "heat-trace", "potentials": ["bump.json"], "t_grid": [0.001, 0.002, 0.003, 0.004, 0.005, 0.006]}"#.to_string(),
    ];
    for cfg in cases {
        let out = run(dir.path(), &cfg, &[]);
        assert_eq!(out.status.code(), Some(2), "{cfg}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn zero_on_contour_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = r#"{"command": "resonances", "potentials": ["well.json"],
                  "region": {"re_min": 3.2270135884927, "re_max": 4, "im_min": -2, "im_max": -1.2697160956756}}"#;
    let out = run(dir.path(), cfg, &[]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn det_sweep_grid_rows() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = format!(r#"{{"command": "det-sweep", "potentials": ["well.json"], {REGION}, "grid": {{"re_steps": 3, "im_steps": 3}}}}"#);
    let out = run(dir.path(), &cfg, &[]);
    assert_eq!(out.status.code(), Some(0));
    let csv = fs::read_to_string(dir.path().join("out/det_sweep.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "re_lambda,im_lambda,re_D,im_D,log_abs_D");
    assert_eq!(lines.len(), 10);
    assert!(lines[9].starts_with("8.000000000000e0,-1.000000000000e-3,"));
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let cfg = format!(r#"{{"command": "resonances", "potentials": ["well.json"], {REGION}}}"#);
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    assert_eq!(run(a.path(), &cfg, &[]).status.code(), Some(0));
    assert_eq!(run(b.path(), &cfg, &["--threads", "1"]).status.code(), Some(0));
    for name in ["resonances.csv", "resonances.json"] {
        let strip = |d: &Path| fs::read_to_string(d.join("out").join(name)).unwrap().replace(&d.display().to_string(), "");
        assert_eq!(strip(a.path()), strip(b.path()), "{name}");
    }
}

#[test]
fn seeded_sobolev_suite_holds() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = r#"{"command": "sobolev", "potentials": ["bump.json"], "random_potentials": 4, "seed": 11, "j_max": 4}"#;
    let out = run(dir.path(), cfg, &[]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report = read_json(&dir.path().join("out/sobolev.json"));
    assert_eq!(report["all_hold"], Value::Bool(true));
    assert_eq!(report["reports"].as_array().unwrap().len(), 10);
}

#[test]
fn square_well_rejected_by_sobolev() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), r#"{"command": "sobolev", "potentials": ["well.json"]}"#, &[]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invariants_report_layout() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), r#"{"command": "invariants", "potentials": ["bump.json"], "j_max": 3}"#, &[]);
    assert_eq!(out.status.code(), Some(0));
    let report = read_json(&dir.path().join("out/invariants.json"));
    let inv = &report["reports"][0]["invariants"];
    assert_eq!(inv["dimension"], 1);
    let c1 = inv["c"]["1"].as_f64().unwrap();
    assert!((c1 - 0.4439938161680791).abs() < 1e-12);
    assert!(inv["calibration"]["kappa"]["2"].as_f64().unwrap() == 0.5);
}
