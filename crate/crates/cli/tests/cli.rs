use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use fhca_cli::{run_config_text, run_preset, CliError, RunOptions, CSV_HEADER, PRESETS};

fn fhca(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fhca"))
        .args(args)
        .current_dir(cwd)
        .output()
        .expect("spawn fhca")
}

fn small(dir: &Path) -> RunOptions {
    let mut o = RunOptions::new(dir);
    o.trials_scale = 0.001;
    o
}

const BER_CONFIG: &str = "\
[link]
scheme = ook
carriers = 128
[attack]
kind = ca
alpha = 0.5
[experiment]
grid_db = 0:10:5
trials = 2000
";

#[test]
fn list_names_every_preset() {
    let dir = tempfile::tempdir().unwrap();
    let out = fhca(&["list"], dir.path());
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for p in PRESETS {
        assert!(text.contains(p.name), "{}", p.name);
    }
}

#[test]
fn unknown_preset_is_a_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = fhca(&["preset", "fig99"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("fig99"));
    assert!(matches!(
        run_preset("fig99", &small(dir.path())),
        Err(CliError::Validation(_))
    ));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("bad.cfg"), "[link]\nantennas = 2\n").unwrap();
    assert_eq!(fhca(&["check", "bad.cfg"], dir.path()).status.code(), Some(2));
    assert_eq!(fhca(&["run", "missing.cfg"], dir.path()).status.code(), Some(3));
    assert_eq!(fhca(&["preset"], dir.path()).status.code(), Some(2));
    let out = fhca(&["preset", "fig2", "--set", "attack.alpha=2"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_accepts_valid_config() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("ok.cfg"), BER_CONFIG).unwrap();
    let out = fhca(&["check", "ok.cfg"], dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("ok"));
}

#[test]
fn run_writes_csv_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("sweep.cfg"), BER_CONFIG).unwrap();
    let out = fhca(&["run", "sweep.cfg", "--out-dir", "out", "--seed", "7"], dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = fs::read_to_string(dir.path().join("out/sweep.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], CSV_HEADER);
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("0,") && lines[3].ends_with(",2000"));
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("out/sweep.manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["seed"], 7);
    assert_eq!(manifest["trials"], 6000);
    assert_eq!(manifest["config_digest"].as_str().unwrap().len(), 64);
}

#[test]
fn config_runs_are_reproducible() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let ma = run_config_text(BER_CONFIG, &RunOptions::new(a.path()), Some(3), "x").unwrap();
    let mut ob = RunOptions::new(b.path());
    ob.threads = 3;
    let mb = run_config_text(BER_CONFIG, &ob, Some(3), "x").unwrap();
    assert_eq!(ma.config_digest, mb.config_digest);
    assert_eq!(
        fs::read(a.path().join("x.csv")).unwrap(),
        fs::read(b.path().join("x.csv")).unwrap()
    );
}

#[test]
fn seed_changes_output() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    run_config_text(BER_CONFIG, &RunOptions::new(a.path()), Some(1), "x").unwrap();
    run_config_text(BER_CONFIG, &RunOptions::new(b.path()), Some(2), "x").unwrap();
    assert_ne!(
        fs::read(a.path().join("x.csv")).unwrap(),
        fs::read(b.path().join("x.csv")).unwrap()
    );
}

#[test]
fn preset_via_config_takes_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let text = "[experiment]\npreset = fig11\ntrials = 500\ngrid_db = 10\n";
    let m = run_config_text(text, &RunOptions::new(dir.path()), None, "ignored").unwrap();
    assert!(!m.outputs.is_empty());
    for name in &m.outputs {
        let csv = fs::read_to_string(dir.path().join(name)).unwrap();
        assert_eq!(csv.lines().count(), 2, "{name}");
    }
    let bad = "[experiment]\npreset = fig11\n[link]\ncarriers = 4\n";
    assert!(matches!(
        run_config_text(bad, &RunOptions::new(dir.path()), None, "x"),
        Err(CliError::Validation(_)) | Err(CliError::Config { .. })
    ));
}

#[test]
fn every_preset_runs_small() {
    let dir = tempfile::tempdir().unwrap();
    for p in PRESETS {
        let m = run_preset(p.name, &small(dir.path())).unwrap_or_else(|e| panic!("{}: {e}", p.name));
        assert!(!m.outputs.is_empty(), "{}", p.name);
        assert!(dir.path().join(format!("{}.manifest.json", p.name)).exists());
    }
}
