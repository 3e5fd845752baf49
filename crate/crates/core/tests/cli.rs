use std::path::Path;
use std::process::Command;

use quantum_friction::cli::{self, parse_config, sidecar_path, Mode, CSV_HEADER};

fn config(dir: &Path, body: &str) -> cli::RunConfig {
    let out = dir.join("out.csv");
    parse_config(&format!("{body}\noutput = \"{}\"\n", out.display())).unwrap()
}

/// CSV lines without the leading timestamp comment.
fn rows(path: &Path) -> Vec<String> {
    let text = std::fs::read_to_string(path).unwrap();
    let mut lines: Vec<String> = text.lines().map(str::to_string).collect();
    assert!(lines[0].starts_with("# qfric "));
    lines.remove(0);
    lines
}

fn fit_exponent(lines: &[String], label: &str) -> f64 {
    let prefix = format!("# fit: {label} exponent=");
    let line = lines.iter().find(|l| l.starts_with(&prefix)).unwrap();
    line[prefix.len()..].split(' ').next().unwrap().parse().unwrap()
}

#[test]
fn point_mode_writes_one_row() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(dir.path(), "mode = point");
    let summary = cli::run(&cfg).unwrap();
    assert_eq!(summary.exit_code(), 0);
    let lines = rows(&summary.output_path);
    assert_eq!(lines[0], CSV_HEADER);
    let cells: Vec<f64> = lines[1].split(',').map(|c| c.parse().unwrap()).collect();
    assert_eq!(cells.len(), 5);
    assert_eq!(cells[0], 0.01);
    assert!(cells[3] < 0.0 && cells[4] > 0.0);
}

#[test]
fn sweep_mode_reports_fit() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(dir.path(), "mode = sweep\nmodel = oscillator\nsweep_components = total");
    let summary = cli::run(&cfg).unwrap();
    let lines = rows(&summary.output_path);
    let data = lines.iter().filter(|l| !l.starts_with('#')).count();
    assert_eq!(data, 1 + 8);
    assert!((fit_exponent(&lines, "total") - 3.0).abs() < 0.15);
}

#[test]
fn compare_mode_exponents() {
    let dir = tempfile::tempdir().unwrap();
    let summary = cli::run(&config(dir.path(), "mode = compare")).unwrap();
    let lines = rows(&summary.output_path);
    assert_eq!(lines[0], "v,f_tla,f_osc,ratio");
    assert!((fit_exponent(&lines, "tla") - 1.0).abs() < 0.1);
    assert!((fit_exponent(&lines, "oscillator") - 3.0).abs() < 0.15);
}

#[test]
fn selftest_mode_passes() {
    let dir = tempfile::tempdir().unwrap();
    let summary = cli::run(&config(dir.path(), "mode = selftest")).unwrap();
    assert!(summary.failure.is_none(), "{}", summary.text);
    assert_eq!(summary.exit_code(), 0);
    let lines = rows(&summary.output_path);
    assert_eq!(lines[0], "check,passed,measured,tolerance");
    assert!(lines[1..].iter().all(|l| l.split(',').nth(1) == Some("true")));
}

#[test]
fn runs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = cli::run(&config(dir.path(), "mode = sweep")).unwrap();
    let first = rows(&a.output_path);
    let b = cli::run(&config(dir.path(), "mode = sweep")).unwrap();
    assert_eq!(first, rows(&b.output_path));
}

#[test]
fn sidecar_reproduces_the_run() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(dir.path(), "mode = point\nz = 1.5\ngamma_z_ref = 1\nv = 0.004");
    let summary = cli::run(&cfg).unwrap();
    assert_eq!(summary.sidecar_path, sidecar_path(&summary.output_path));
    let replay = parse_config(&std::fs::read_to_string(&summary.sidecar_path).unwrap()).unwrap();
    assert_eq!(replay, cfg);
}

#[test]
fn mode_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = cli::with_mode(config(dir.path(), ""), Mode::Point).unwrap();
    assert_eq!(cfg.mode, Mode::Point);
}

#[test]
fn binary_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.cfg");
    std::fs::write(&bad, "mode = point\ngamma = 2\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_qfric"))
        .arg("--config")
        .arg(&bad)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let missing = Command::new(env!("CARGO_BIN_EXE_qfric"))
        .arg("--config")
        .arg(dir.path().join("absent.cfg"))
        .output()
        .unwrap();
    assert_eq!(missing.status.code(), Some(1));

    let good = dir.path().join("good.cfg");
    std::fs::write(&good, "mode = point\n").unwrap();
    let csv = dir.path().join("bin.csv");
    let ok = Command::new(env!("CARGO_BIN_EXE_qfric"))
        .arg("--config")
        .arg(&good)
        .arg("--output")
        .arg(&csv)
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(csv.exists() && sidecar_path(&csv).exists());

    let starved = dir.path().join("starved.cfg");
    std::fs::write(&starved, "mode = point\nmax_subdivisions = 1\n").unwrap();
    let fail = Command::new(env!("CARGO_BIN_EXE_qfric"))
        .arg("--config")
        .arg(&starved)
        .arg("--output")
        .arg(dir.path().join("starved.csv"))
        .output()
        .unwrap();
    assert_eq!(fail.status.code(), Some(2));
}
