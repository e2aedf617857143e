use std::path::Path;
use std::process::{Command, Output};

fn capwave(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_capwave")).args(args).output().expect("spawn capwave")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

const SMALL: &str = "L = 64\nn = 128\nwidth = 3\ndt = 0.05\nt_end = 2\nout_every = 0.5\nenergy_every = 1\nweighted_every = 0\n";

fn write_config(dir: &Path, text: &str) -> String {
    let p = dir.join("run.cfg");
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn missing_config_names_path() {
    let o = capwave(&["simulate", "--config", "/nonexistent/abc.cfg", "--quiet"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("/nonexistent/abc.cfg"), "{}", stderr(&o));
}

#[test]
fn bad_override_is_a_config_error() {
    let o = capwave(&["simulate", "--set", "no_such_key=1", "--quiet"]);
    assert_eq!(o.status.code(), Some(1));
    let o = capwave(&["simulate", "--set", "dt", "--quiet"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn simulate_then_scattering_report() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), SMALL);
    let out = dir.path().join("run");
    let out_s = out.to_string_lossy();
    let o = capwave(&["simulate", "--config", &cfg, "--out", &out_s, "--seed", "3", "--set", "eps0=1e-3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    for f in ["run.csv", "profile.bin", "report_initial.json", "report_run.json"] {
        assert!(out.join(f).is_file(), "missing {f}");
    }
    let summary: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(summary["status"], "completed");

    let o = capwave(&["scattering-report", &out_s]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let rep: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out.join("scattering.json")).unwrap()).unwrap();
    assert!(rep.get("blocks_with_phase").is_some());
    assert!(rep.get("blocks_without_phase").is_some());
}

#[test]
fn aborted_run_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), &format!("{SMALL}growth_limit = 0.5\n"));
    let out = dir.path().join("run");
    let o = capwave(&["simulate", "--config", &cfg, "--out", &out.to_string_lossy(), "--quiet"]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
    assert!(stderr(&o).contains("aborted"));
}

#[test]
fn scattering_report_needs_profile() {
    let dir = tempfile::tempdir().unwrap();
    let o = capwave(&["scattering-report", &dir.path().to_string_lossy()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("profile.bin"));
    let o = capwave(&["scattering-report", "/nonexistent/run"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn unknown_suite_lists_suites() {
    let o = capwave(&["verify", "nope"]);
    assert_eq!(o.status.code(), Some(1));
    let e = stderr(&o);
    for s in ["symbols", "dispersive", "interpolation", "identities", "oracle"] {
        assert!(e.contains(s), "{e}");
    }
}

#[test]
fn verify_symbols_small_box_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_string_lossy();
    let o = capwave(&["verify", "symbols", "--family", "q0", "--family", "mN", "--range", "-10:-9", "--out", &out]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let rep: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("report_symbols.json")).unwrap()).unwrap();
    assert_eq!(rep["suite"], "symbols");
    assert_eq!(rep["passed"], true);
    let records = rep["records"]["triples"].as_array().unwrap();
    assert!(!records.is_empty());
}

#[test]
fn verify_rejects_bad_inputs() {
    let o = capwave(&["verify", "symbols", "--family", "zz"]);
    assert_eq!(o.status.code(), Some(1));
    let o = capwave(&["verify", "symbols", "--range", "3:1"]);
    assert_eq!(o.status.code(), Some(1));
    let o = capwave(&["verify", "symbols", "--range", "-10:-10", "--resolution", "32"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("64"));
}

#[test]
fn verify_identities_passes() {
    let dir = tempfile::tempdir().unwrap();
    let o = capwave(&["verify", "identities", "--samples", "500", "--out", &dir.path().to_string_lossy()]);
    assert_eq!(o.status.code(), Some(0), "{}{}", String::from_utf8_lossy(&o.stdout), stderr(&o));
    assert!(dir.path().join("report_identities.json").is_file());
}

#[test]
fn help_exits_zero() {
    assert_eq!(capwave(&["--help"]).status.code(), Some(0));
    assert_eq!(capwave(&[]).status.code(), Some(1));
}
