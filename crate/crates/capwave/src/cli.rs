//! Command-line front end: `simulate`, `verify` and `scattering-report`.
//!
//! Exit codes: 0 success, 1 configuration or input error (and failed
//! verification), 2 run aborted by a monitor.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::config::RunConfig;
use crate::run::{self, RunOptions, RunStatus, INITIAL_REPORT_FILE, PROFILE_FILE, SCATTERING_FILE};
use crate::scattering::{scattering_report, ProfileSeries};
use crate::verify::{self, Family, SymbolOptions, VerifyOptions, SUITES};
use crate::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_ABORTED: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "capwave", version, about = "Pseudo-spectral lab for ∂_t u + i|D|^{3/2}u = N(u)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run the evolution and write run.csv, profile.bin, checkpoints and reports.
    Simulate {
        /// `key = value` config file; defaults are used for missing keys.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Override a config key, e.g. `--set dt=0.005`. Repeatable.
        #[arg(long = "set", value_name = "KEY=VALUE")]
        set: Vec<String>,
        #[arg(long, default_value = "out")]
        out: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        quiet: bool,
        /// Continue from a checkpoint written by the same config.
        #[arg(long)]
        resume: Option<PathBuf>,
    },
    /// Run a verification suite and write report_<suite>.json.
    Verify {
        /// One of: symbols, dispersive, interpolation, identities, oracle.
        suite: String,
        /// Symbol family (repeatable); default is every bilinear family.
        #[arg(long = "family")]
        family: Vec<String>,
        /// Dyadic box `lo:hi` for the symbols suite.
        #[arg(long, value_name = "LO:HI", allow_hyphen_values = true)]
        range: Option<String>,
        /// Lattice points per dyadic scale (at least 64).
        #[arg(long)]
        resolution: Option<usize>,
        #[arg(long, default_value = ".")]
        out: PathBuf,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Trials (dispersive, interpolation) or fields (oracle).
        #[arg(long)]
        trials: Option<usize>,
        /// Random samples for the identities suite.
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long)]
        quiet: bool,
    },
    /// Block monitor and phase-drift fits from a run directory's profile.bin.
    ScatteringReport {
        dir: PathBuf,
        #[arg(long, default_value_t = 4)]
        m_lo: u32,
        #[arg(long, default_value_t = 9)]
        m_hi: u32,
        /// Weight exponent; read from report_initial.json when omitted.
        #[arg(long)]
        p1: Option<f64>,
    },
}

/// Parses `args` (including the program name) and runs; returns the exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}

fn dispatch(cmd: Command) -> Result<i32> {
    match cmd {
        Command::Simulate { config, set, out, seed, quiet, resume } => {
            let mut cfg = match &config {
                Some(p) => {
                    if !p.exists() {
                        return Err(Error::Config(format!("config file not found: {}", p.display())));
                    }
                    RunConfig::load(p)?
                }
                None => RunConfig::default(),
            };
            for pair in &set {
                cfg.set_pair(pair)?;
            }
            if let Some(s) = seed {
                cfg.seed = s;
            }
            cfg.validate()?;
            let summary = run::run(&cfg, &RunOptions { out: out.clone(), quiet, resume })?;
            if !quiet {
                println!("{}", serde_json::to_string_pretty(&summary)?);
            }
            Ok(match summary.status {
                RunStatus::Completed => EXIT_OK,
                RunStatus::Aborted(reason) => {
                    eprintln!("aborted: {reason}");
                    EXIT_ABORTED
                }
            })
        }
        Command::Verify { suite, family, range, resolution, out, seed, trials, samples, quiet } => {
            if !SUITES.contains(&suite.as_str()) {
                return Err(Error::Config(format!("unknown suite `{suite}`; available: {}", SUITES.join(", "))));
            }
            let mut symbols = SymbolOptions::default();
            if !family.is_empty() {
                symbols.families = family.iter().map(|f| f.parse::<Family>()).collect::<Result<_>>()?;
            }
            if let Some(r) = &range {
                let (lo, hi) = parse_range(r)?;
                symbols.lo = lo;
                symbols.hi = hi;
            }
            if let Some(r) = resolution {
                symbols.resolution = r;
            }
            let opts = VerifyOptions { seed, symbols, trials, samples };
            let rep = verify::run_suite(&suite, &opts)?;
            let path = rep.save(&out)?;
            if !quiet {
                for c in &rep.checks {
                    println!("{} {}: {:.6e} (limit {:.6e})", if c.passed { "PASS" } else { "FAIL" }, c.name, c.value, c.limit);
                }
                println!("{} {} -> {}", if rep.passed { "PASS" } else { "FAIL" }, rep.suite, path.display());
            }
            Ok(if rep.passed { EXIT_OK } else { EXIT_ERROR })
        }
        Command::ScatteringReport { dir, m_lo, m_hi, p1 } => {
            let profile = dir.join(PROFILE_FILE);
            if !profile.is_file() {
                return Err(Error::Config(format!("no {PROFILE_FILE} in {}", dir.display())));
            }
            let series = ProfileSeries::load(&profile)?;
            let p1 = match p1 {
                Some(p) => p,
                None => p1_from_run(&dir).unwrap_or(RunConfig::default().p1),
            };
            let rep = scattering_report(&series, p1, m_lo, m_hi)?;
            let path = dir.join(SCATTERING_FILE);
            std::fs::write(&path, serde_json::to_string_pretty(&rep)?)?;
            println!(
                "with phase: slope {} | without phase: slope {} -> {}",
                fmt_slope(rep.decay_with_phase.fit.as_ref().map(|f| f.slope)),
                fmt_slope(rep.decay_without_phase.fit.as_ref().map(|f| f.slope)),
                path.display()
            );
            Ok(EXIT_OK)
        }
    }
}

fn fmt_slope(s: Option<f64>) -> String {
    s.map_or_else(|| "n/a".into(), |v| format!("{v:.4}"))
}

fn p1_from_run(dir: &Path) -> Option<f64> {
    let text = std::fs::read_to_string(dir.join(INITIAL_REPORT_FILE)).ok()?;
    let v: serde_json::Value = serde_json::from_str(&text).ok()?;
    v.get("config")?.get("p1")?.as_f64()
}

/// `"a:b"` with `a ≤ b`.
pub fn parse_range(s: &str) -> Result<(i32, i32)> {
    let bad = || Error::Config(format!("range must be lo:hi, got `{s}`"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    let lo: i32 = a.trim().parse().map_err(|_| bad())?;
    let hi: i32 = b.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}
