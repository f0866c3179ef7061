use std::path::PathBuf;
use std::process::{Command, Output};

fn spdc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spdc")).args(args).output().unwrap()
}

fn shipped() -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("configs/bbo_branciard.json")
        .to_string_lossy()
        .into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn rate_prints_report() {
    let out = spdc(&["rate", "--config", &shipped()]);
    assert!(out.status.success(), "{}", stderr(&out));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let xi = doc["xi"].as_f64().unwrap();
    assert!((xi - 0.933).abs() < 5e-3);
    assert!(doc["rate_total"].as_f64().unwrap() > 0.0);
    assert!(stderr(&out).contains("warning:"));
}

#[test]
fn angle_convention_flag_changes_walk_off() {
    let paper = spdc(&["rate", "--config", &shipped()]);
    let internal = spdc(&["rate", "--config", &shipped(), "--angle-convention", "internal"]);
    let xi = |o: &Output| serde_json::from_slice::<serde_json::Value>(&o.stdout).unwrap()["xi"].as_f64().unwrap();
    assert!(xi(&internal) < xi(&paper));
}

#[test]
fn validation_error_exit_code() {
    let out = spdc(&["rate", "--config", &shipped(), "--set", "pump.waist_um=0"]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert_eq!(err.lines().count(), 1, "{err}");
    assert!(err.starts_with("error[validation]: pump.waist_um"), "{err}");
}

#[test]
fn parse_error_reports_position() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\n  \"pump\": {,\n}").unwrap();
    let out = spdc(&["rate", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("bad.json:2:"), "{}", stderr(&out));
}

#[test]
fn missing_config_file_is_io_error() {
    let out = spdc(&["rate", "--config", "/nonexistent/config.json"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stderr(&out).starts_with("error[io]"));
}

#[test]
fn unknown_material() {
    let out = spdc(&["rate", "--config", &shipped(), "--set", "crystal.material=KDP"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("available: BBO"), "{}", stderr(&out));
}

#[test]
fn out_of_range_wavelength() {
    let out = spdc(&["rate", "--config", &shipped(), "--set", "pump.wavelength_nm=100"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).starts_with("error[validation]"), "{}", stderr(&out));
}

#[test]
fn refuses_overwrite_without_force() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    assert!(spdc(&["sweep-gamma", "--out", d]).status.success());
    let again = spdc(&["sweep-gamma", "--out", d]);
    assert_eq!(again.status.code(), Some(4));
    assert!(stderr(&again).contains("--force"));
    assert!(spdc(&["sweep-gamma", "--out", d, "--force"]).status.success());
}

#[test]
fn sweep_gamma_marks_single_argmax() {
    let out = spdc(&["sweep-gamma"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("gamma,relative_rate,argmax"));
    let marked: Vec<f64> = lines
        .filter(|l| l.ends_with(",1"))
        .map(|l| l.split(',').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(marked.len(), 1);
    assert!((marked[0] - std::f64::consts::FRAC_1_SQRT_2).abs() <= 0.0025 + 1e-12);
    assert!(!text.contains('\r'));
}

#[test]
fn sweep_xi_custom_range() {
    let out = spdc(&["sweep-xi", "--min", "0", "--max", "1", "--points", "3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 4);
    assert!(rows[1].starts_with("0,3.14159265"));
    let bad = spdc(&["sweep-xi", "--points", "1"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn spectrum_csv() {
    let out = spdc(&["spectrum", "--config", &shipped()]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("omega_s,lambda_s_nm,density\n"));
    assert_eq!(text.lines().count(), 1202);
}

#[test]
fn compare_experiment_reports_ratios() {
    let out = spdc(&["compare-experiment", "--config", &shipped()]);
    assert!(out.status.success(), "{}", stderr(&out));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let ratio = doc["model_over_reference"]["observable_rate_per_mw_s"].as_f64().unwrap();
    assert!((ratio - 1.0).abs() < 0.15);
    let no_experiment = spdc(&["compare-experiment", "--config", &shipped(), "--set", "experiment=null"]);
    assert_eq!(no_experiment.status.code(), Some(2));
}

#[test]
fn figures_requires_out() {
    let out = spdc(&["figures"]);
    assert_eq!(out.status.code(), Some(2));
}
