use std::ffi::{c_char, c_int, CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use capwave_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let mut buf = vec![0 as c_char; 256];
    let n = unsafe { cw_last_error(buf.as_mut_ptr(), buf.len()) };
    assert!(n > 0);
    unsafe { CStr::from_ptr(buf.as_ptr()) }.to_string_lossy().into_owned()
}

fn small_config() -> *mut CwConfig {
    let cfg = cw_config_new();
    for (k, v) in [("L", "64"), ("n", "128"), ("width", "3"), ("dt", "0.05"), ("t_end", "1"), ("weighted_every", "0")] {
        assert_eq!(unsafe { cw_config_set(cfg, c(k).as_ptr(), c(v).as_ptr()) }, CwStatus::Ok);
    }
    cfg
}

#[test]
fn version_is_a_string() {
    let v = unsafe { CStr::from_ptr(cw_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn config_errors_carry_codes_and_messages() {
    let cfg = cw_config_new();
    unsafe {
        assert_eq!(cw_config_set(cfg, c("nope").as_ptr(), c("1").as_ptr()), CwStatus::Config);
        assert!(last_error().contains("nope"));
        assert_eq!(cw_config_set(cfg, c("n").as_ptr(), c("100").as_ptr()), CwStatus::Config);
        assert_eq!(cw_config_set(cfg, ptr::null(), c("1").as_ptr()), CwStatus::NullPointer);
        assert_eq!(cw_config_set(ptr::null_mut(), c("n").as_ptr(), c("128").as_ptr()), CwStatus::NullPointer);
        let mut out: *mut CwConfig = ptr::null_mut();
        assert_eq!(cw_config_load(c("/nonexistent/x.cfg").as_ptr(), &mut out), CwStatus::Config);
        assert!(out.is_null());
        assert!(last_error().contains("/nonexistent/x.cfg"));
        cw_config_free(cfg);
        cw_config_free(ptr::null_mut());
    }
}

#[test]
fn config_load_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("a.cfg");
    std::fs::write(&p, "L = 64\nn = 128\n").unwrap();
    let mut out: *mut CwConfig = ptr::null_mut();
    unsafe {
        assert_eq!(cw_config_load(c(p.to_str().unwrap()).as_ptr(), &mut out), CwStatus::Ok);
        let mut sim: *mut CwSim = ptr::null_mut();
        assert_eq!(cw_sim_new(out, &mut sim), CwStatus::Ok);
        assert_eq!(cw_sim_len(sim), 128);
        cw_sim_free(sim);
        cw_config_free(out);
    }
}

#[test]
fn linear_sim_keeps_modulus() {
    let cfg = small_config();
    unsafe {
        assert_eq!(cw_config_set(cfg, c("nonlinear").as_ptr(), c("false").as_ptr()), CwStatus::Ok);
        let mut sim: *mut CwSim = ptr::null_mut();
        assert_eq!(cw_sim_new(cfg, &mut sim), CwStatus::Ok);
        let n = cw_sim_len(sim);
        let (mut re0, mut im0) = (vec![0.0; n], vec![0.0; n]);
        assert_eq!(cw_sim_spectrum(sim, re0.as_mut_ptr(), im0.as_mut_ptr(), n), CwStatus::Ok);
        assert_eq!(cw_sim_step(sim, 20), CwStatus::Ok);
        assert!((cw_sim_time(sim) - 1.0).abs() < 1e-12);
        let (mut re, mut im) = (vec![0.0; n], vec![0.0; n]);
        assert_eq!(cw_sim_spectrum(sim, re.as_mut_ptr(), im.as_mut_ptr(), n), CwStatus::Ok);
        for i in 0..n {
            let a = re0[i].hypot(im0[i]);
            let b = re[i].hypot(im[i]);
            assert!((a - b).abs() <= 1e-12 * a.max(1e-300), "{i}: {a} vs {b}");
        }
        assert_eq!(cw_sim_samples(sim, re.as_mut_ptr(), im.as_mut_ptr(), n), CwStatus::Ok);
        assert!(re.iter().zip(&im).any(|(a, b)| a.hypot(*b) > 0.0));
        assert_eq!(cw_sim_spectrum(sim, re.as_mut_ptr(), im.as_mut_ptr(), n - 1), CwStatus::InvalidArgument);
        assert_eq!(cw_sim_spectrum(sim, ptr::null_mut(), im.as_mut_ptr(), n), CwStatus::NullPointer);
        cw_sim_free(sim);
        cw_config_free(cfg);
    }
    assert_eq!(unsafe { cw_sim_len(ptr::null()) }, 0);
    assert!(unsafe { cw_sim_time(ptr::null()) }.is_nan());
}

#[test]
fn run_writes_outputs_and_reports_abort() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small_config();
    let mut aborted: c_int = -1;
    unsafe {
        let out = c(dir.path().join("ok").to_str().unwrap());
        assert_eq!(cw_run(cfg, out.as_ptr(), &mut aborted), CwStatus::Ok);
        assert_eq!(aborted, 0);
        assert!(dir.path().join("ok/run.csv").is_file());
        assert_eq!(cw_config_set(cfg, c("growth_limit").as_ptr(), c("0.5").as_ptr()), CwStatus::Ok);
        let out = c(dir.path().join("abort").to_str().unwrap());
        assert_eq!(cw_run(cfg, out.as_ptr(), &mut aborted), CwStatus::Ok);
        assert_eq!(aborted, 1);
        assert!(last_error().contains("aborted"));
        cw_config_free(cfg);
    }
}

#[test]
fn verify_and_symbols() {
    let dir = tempfile::tempdir().unwrap();
    let out = c(dir.path().to_str().unwrap());
    let mut passed: c_int = -1;
    unsafe {
        assert_eq!(cw_verify(c("nope").as_ptr(), out.as_ptr(), 1, &mut passed), CwStatus::Config);
        assert!(last_error().contains("identities"));
        assert_eq!(cw_verify(c("identities").as_ptr(), out.as_ptr(), 1, &mut passed), CwStatus::Ok);
        assert_eq!(passed, 1);
        assert!(dir.path().join("report_identities.json").is_file());

        let (mut re, mut im) = (f64::NAN, f64::NAN);
        assert_eq!(cw_symbol(c("q0").as_ptr(), 1.0, 1.0, &mut re, &mut im), CwStatus::Ok);
        // χ(0, 1) = 1 and |ξ−η| = 0
        assert_eq!((re, im), (0.0, 0.0));
        assert_eq!(cw_symbol(c("q0").as_ptr(), 2.0, 1.0, &mut re, &mut im), CwStatus::Ok);
        assert!(re == 0.0 && (im - 1.0).abs() < 1e-15, "{re} {im}");
        assert_eq!(cw_symbol(c("zz").as_ptr(), 1.0, 1.0, &mut re, &mut im), CwStatus::InvalidArgument);
    }
    let exact = -(8.0 * std::f64::consts::PI / 3.0) * (1.0 + 2f64.sqrt());
    assert!((cw_ctilde(1.0) - exact).abs() <= 1e-10 * exact.abs());
}

#[test]
fn header_compiles_as_c() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/capwave.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for f in ["cw_config_new", "cw_sim_step", "cw_run", "cw_verify", "cw_last_error", "CW_STATUS_PANIC"] {
        assert!(text.contains(f), "{f} missing from header");
    }
    let Ok(cc) = Command::new("cc").arg("--version").output() else { return };
    if !cc.status.success() {
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("use.c");
    std::fs::write(
        &src,
        "#include \"capwave.h\"\nint main(void) { CwConfig *c = cw_config_new(); CwStatus s = cw_config_set(c, \"n\", \"128\"); cw_config_free(c); return s == CW_STATUS_OK ? 0 : 1; }\n",
    )
    .unwrap();
    let o = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(header.parent().unwrap())
        .arg(&src)
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
}
