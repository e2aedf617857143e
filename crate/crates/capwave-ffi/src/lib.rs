//! C ABI for capwave. Handles are opaque pointers created by `*_new`/`*_load`
//! and released by the matching `*_free`. Every fallible call returns a
//! [`CwStatus`]; the message of the last failure on the calling thread is
//! available through [`cw_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::ptr;

use capwave::config::RunConfig;
use capwave::evolution::{make_initial_data, Evolver};
use capwave::run::{run, RunOptions, RunStatus};
use capwave::symbols::{ctilde, BilinearSymbol, SymbolName};
use capwave::verify::{run_suite, VerifyOptions};
use capwave::{Error, Grid, C64};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CwStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Config = 3,
    Io = 4,
    Numerical = 5,
    Checkpoint = 6,
    Panic = 7,
}

impl From<&Error> for CwStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Config(_) => CwStatus::Config,
            Error::Io(_) | Error::Json(_) => CwStatus::Io,
            Error::NonFinite(_) | Error::Normalization(_) => CwStatus::Numerical,
            Error::Checkpoint(_) => CwStatus::Checkpoint,
            _ => CwStatus::InvalidArgument,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: CwStatus, msg: impl Into<String>) -> CwStatus {
    set_error(msg.into());
    status
}

fn from_err(e: Error) -> CwStatus {
    let s = CwStatus::from(&e);
    fail(s, e.to_string())
}

/// Runs `f`, turning a panic into [`CwStatus::Panic`].
fn guard(f: impl FnOnce() -> CwStatus) -> CwStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(CwStatus::Panic, "internal panic"),
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, CwStatus> {
    if p.is_null() {
        return Err(fail(CwStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| fail(CwStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

/// Opaque run configuration.
pub struct CwConfig {
    inner: RunConfig,
}

/// Opaque evolving state: grid, integrator and current profile.
pub struct CwSim {
    grid: Grid,
    ev: Evolver,
    w: Vec<C64>,
    step: u64,
    dt: f64,
}

impl CwSim {
    fn t(&self) -> f64 {
        self.step as f64 * self.dt
    }
}

/// Copies the message of the last failure on this thread into `buf`
/// (NUL-terminated, truncated to `len`). Returns the full message length
/// without the terminator, or 0 if there is none.
#[no_mangle]
pub unsafe extern "C" fn cw_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let Some(msg) = e.as_ref() else { return 0 };
        let bytes = msg.as_bytes();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len - 1);
            ptr::copy_nonoverlapping(bytes.as_ptr() as *const c_char, buf, n);
            *buf.add(n) = 0;
        }
        bytes.len()
    })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn cw_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Default configuration. Never null.
#[no_mangle]
pub extern "C" fn cw_config_new() -> *mut CwConfig {
    Box::into_raw(Box::new(CwConfig { inner: RunConfig::default() }))
}

/// Reads a `key = value` config file into a new handle.
#[no_mangle]
pub unsafe extern "C" fn cw_config_load(path: *const c_char, out: *mut *mut CwConfig) -> CwStatus {
    guard(|| {
        if out.is_null() {
            return fail(CwStatus::NullPointer, "out is null");
        }
        *out = ptr::null_mut();
        let path = match str_arg(path, "path") {
            Ok(p) => p,
            Err(s) => return s,
        };
        match RunConfig::load(&PathBuf::from(path)) {
            Ok(c) => {
                *out = Box::into_raw(Box::new(CwConfig { inner: c }));
                CwStatus::Ok
            }
            Err(e) => from_err(e),
        }
    })
}

/// Sets one key; the config is left unchanged on failure.
#[no_mangle]
pub unsafe extern "C" fn cw_config_set(cfg: *mut CwConfig, key: *const c_char, value: *const c_char) -> CwStatus {
    guard(|| {
        let Some(cfg) = cfg.as_mut() else { return fail(CwStatus::NullPointer, "config is null") };
        let (key, value) = match (str_arg(key, "key"), str_arg(value, "value")) {
            (Ok(k), Ok(v)) => (k, v),
            (Err(s), _) | (_, Err(s)) => return s,
        };
        let mut next = cfg.inner.clone();
        if let Err(e) = next.set(key, value).and_then(|_| next.validate()) {
            return from_err(e);
        }
        cfg.inner = next;
        CwStatus::Ok
    })
}

#[no_mangle]
pub unsafe extern "C" fn cw_config_free(cfg: *mut CwConfig) {
    if !cfg.is_null() {
        drop(Box::from_raw(cfg));
    }
}

/// Builds the initial data of `cfg` and an integrator at `t = 0`.
#[no_mangle]
pub unsafe extern "C" fn cw_sim_new(cfg: *const CwConfig, out: *mut *mut CwSim) -> CwStatus {
    guard(|| {
        if out.is_null() {
            return fail(CwStatus::NullPointer, "out is null");
        }
        *out = ptr::null_mut();
        let Some(cfg) = cfg.as_ref() else { return fail(CwStatus::NullPointer, "config is null") };
        let c = &cfg.inner;
        if let Err(e) = c.validate() {
            return from_err(e);
        }
        let (u0, _) = match make_initial_data(c) {
            Ok(v) => v,
            Err(e) => return from_err(e),
        };
        let grid = u0.grid().clone();
        let ev = Evolver::new(&grid, c.dt, c.nonlinear);
        let w = ev.to_profile(u0.spectrum(), 0.0);
        *out = Box::into_raw(Box::new(CwSim { grid, ev, w, step: 0, dt: c.dt }));
        CwStatus::Ok
    })
}

/// Grid size `n`, or 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn cw_sim_len(sim: *const CwSim) -> usize {
    sim.as_ref().map_or(0, |s| s.grid.n())
}

/// Current time, or NaN for a null handle.
#[no_mangle]
pub unsafe extern "C" fn cw_sim_time(sim: *const CwSim) -> f64 {
    sim.as_ref().map_or(f64::NAN, |s| s.t())
}

/// Advances `count` IF-RK4 steps. On failure the state is the last good one.
#[no_mangle]
pub unsafe extern "C" fn cw_sim_step(sim: *mut CwSim, count: u64) -> CwStatus {
    guard(|| {
        let Some(s) = sim.as_mut() else { return fail(CwStatus::NullPointer, "sim is null") };
        for _ in 0..count {
            match s.ev.step(&s.w, s.t()) {
                Ok(w) => {
                    s.w = w;
                    s.step += 1;
                }
                Err(e) => return from_err(e),
            }
        }
        CwStatus::Ok
    })
}

unsafe fn copy_out(v: &[C64], re: *mut f64, im: *mut f64, len: usize) -> CwStatus {
    if re.is_null() || im.is_null() {
        return fail(CwStatus::NullPointer, "output buffer is null");
    }
    if len != v.len() {
        return fail(CwStatus::InvalidArgument, format!("buffer length {len}, grid has {}", v.len()));
    }
    for (i, z) in v.iter().enumerate() {
        *re.add(i) = z.re;
        *im.add(i) = z.im;
    }
    CwStatus::Ok
}

/// Copies `û` at the current time (centered frequency order) into `re`/`im` of length `len = n`.
#[no_mangle]
pub unsafe extern "C" fn cw_sim_spectrum(sim: *const CwSim, re: *mut f64, im: *mut f64, len: usize) -> CwStatus {
    guard(|| {
        let Some(s) = sim.as_ref() else { return fail(CwStatus::NullPointer, "sim is null") };
        copy_out(&s.ev.to_physical(&s.w, s.t()), re, im, len)
    })
}

/// Copies the grid samples of `u` at the current time.
#[no_mangle]
pub unsafe extern "C" fn cw_sim_samples(sim: *const CwSim, re: *mut f64, im: *mut f64, len: usize) -> CwStatus {
    guard(|| {
        let Some(s) = sim.as_ref() else { return fail(CwStatus::NullPointer, "sim is null") };
        copy_out(&s.grid.inverse(&s.ev.to_physical(&s.w, s.t())), re, im, len)
    })
}

#[no_mangle]
pub unsafe extern "C" fn cw_sim_free(sim: *mut CwSim) {
    if !sim.is_null() {
        drop(Box::from_raw(sim));
    }
}

/// Full run into `out_dir`. `*aborted` is set to 1 when a monitor stopped the run, else 0.
#[no_mangle]
pub unsafe extern "C" fn cw_run(cfg: *const CwConfig, out_dir: *const c_char, aborted: *mut c_int) -> CwStatus {
    guard(|| {
        let Some(cfg) = cfg.as_ref() else { return fail(CwStatus::NullPointer, "config is null") };
        let dir = match str_arg(out_dir, "out_dir") {
            Ok(d) => d,
            Err(s) => return s,
        };
        let opts = RunOptions { out: PathBuf::from(dir), quiet: true, resume: None };
        match run(&cfg.inner, &opts) {
            Ok(summary) => {
                if let Some(a) = aborted.as_mut() {
                    *a = matches!(summary.status, RunStatus::Aborted(_)) as c_int;
                }
                if let RunStatus::Aborted(reason) = summary.status {
                    set_error(format!("aborted: {reason}"));
                }
                CwStatus::Ok
            }
            Err(e) => from_err(e),
        }
    })
}

/// Runs a verification suite with default options and writes `report_<suite>.json`
/// into `out_dir`. `*passed` is set to 1 or 0.
#[no_mangle]
pub unsafe extern "C" fn cw_verify(suite: *const c_char, out_dir: *const c_char, seed: u64, passed: *mut c_int) -> CwStatus {
    guard(|| {
        let (suite, dir) = match (str_arg(suite, "suite"), str_arg(out_dir, "out_dir")) {
            (Ok(s), Ok(d)) => (s, d),
            (Err(s), _) | (_, Err(s)) => return s,
        };
        let opts = VerifyOptions { seed, ..Default::default() };
        let rep = match run_suite(suite, &opts) {
            Ok(r) => r,
            Err(e) => return from_err(e),
        };
        if let Err(e) = rep.save(&PathBuf::from(dir)) {
            return from_err(e);
        }
        if let Some(p) = passed.as_mut() {
            *p = rep.passed as c_int;
        }
        CwStatus::Ok
    })
}

/// Evaluates a named bilinear symbol (`chi`, `q0`, `qN`, `mN`, ...) at `(ξ, η)`.
#[no_mangle]
pub unsafe extern "C" fn cw_symbol(name: *const c_char, xi: f64, eta: f64, re: *mut f64, im: *mut f64) -> CwStatus {
    guard(|| {
        let name = match str_arg(name, "name") {
            Ok(n) => n,
            Err(s) => return s,
        };
        if re.is_null() || im.is_null() {
            return fail(CwStatus::NullPointer, "output is null");
        }
        let sym = match name.parse::<SymbolName>() {
            Ok(n) => BilinearSymbol::new(n),
            Err(e) => return from_err(e),
        };
        let z = sym.eval(xi, eta);
        *re = z.re;
        *im = z.im;
        CwStatus::Ok
    })
}

/// `c̃(ξ)`, the coefficient of the logarithmic phase.
#[no_mangle]
pub extern "C" fn cw_ctilde(xi: f64) -> f64 {
    ctilde(xi)
}
