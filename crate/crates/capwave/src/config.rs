//! Run configuration: a `key = value` text format with `#` comments.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Localization {
    /// Stop the run when mass reaches the outer half of the domain.
    Abort,
    /// Record the inner mass fraction and mark weighted quantities unreliable.
    Monitor,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub eps0: f64,
    pub l: f64,
    pub n: usize,
    pub dt: f64,
    pub t_end: f64,
    pub n_sob: i32,
    pub p0: f64,
    pub p1: f64,
    pub xi_c: f64,
    pub width: f64,
    pub seed: u64,
    /// Relative size of a seeded random perturbation added before normalization.
    pub noise: f64,
    pub nonlinear: bool,
    pub phase_correction: bool,
    /// Smallest spacing between output times.
    pub out_every: f64,
    /// Output spacing grows as `max(out_every, out_growth·t)`.
    pub out_growth: f64,
    /// Energies every this many outputs (0 disables).
    pub energy_every: usize,
    /// Weighted energies every this many outputs (0 disables).
    pub weighted_every: usize,
    /// Checkpoint every this many outputs (0 disables).
    pub checkpoint_every: usize,
    /// Compute the normal form and profile at each output.
    pub profile: bool,
    pub localization: Localization,
    /// Relative magnitude below which input bins are skipped in O(n²) sums.
    pub prune_tol: f64,
    /// Abort once `‖u‖_{H^N}` exceeds this multiple of `ε₀`.
    pub growth_limit: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            eps0: 1e-3,
            l: 200.0,
            n: 4096,
            dt: 0.01,
            t_end: 1000.0,
            n_sob: 10,
            p0: 1e-6,
            p1: 1e-6,
            xi_c: 1.0,
            width: 10.0,
            seed: 0,
            noise: 0.0,
            nonlinear: true,
            phase_correction: true,
            out_every: 1.0,
            out_growth: 0.0,
            energy_every: 1,
            weighted_every: 1,
            checkpoint_every: 0,
            profile: true,
            localization: Localization::Abort,
            prune_tol: 1e-14,
            growth_limit: 1e3,
        }
    }
}

fn parse<T: FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse().map_err(|_| Error::Config(format!("bad value `{v}` for `{key}`")))
}

fn parse_bool(key: &str, v: &str) -> Result<bool> {
    match v {
        "true" | "yes" | "on" | "1" => Ok(true),
        "false" | "no" | "off" | "0" => Ok(false),
        _ => Err(Error::Config(format!("bad value `{v}` for `{key}`"))),
    }
}

impl RunConfig {
    pub const KEYS: [&'static str; 23] = [
        "eps0",
        "L",
        "n",
        "dt",
        "t_end",
        "N",
        "p0",
        "p1",
        "xi_c",
        "width",
        "seed",
        "noise",
        "nonlinear",
        "phase_correction",
        "out_every",
        "out_growth",
        "energy_every",
        "weighted_every",
        "checkpoint_every",
        "profile",
        "localization",
        "prune_tol",
        "growth_limit",
    ];

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let v = value.trim();
        match key.trim() {
            "eps0" => self.eps0 = parse(key, v)?,
            "L" => self.l = parse(key, v)?,
            "n" => self.n = parse(key, v)?,
            "dt" => self.dt = parse(key, v)?,
            "t_end" => self.t_end = parse(key, v)?,
            "N" => self.n_sob = parse(key, v)?,
            "p0" => self.p0 = parse(key, v)?,
            "p1" => self.p1 = parse(key, v)?,
            "xi_c" => self.xi_c = parse(key, v)?,
            "width" => self.width = parse(key, v)?,
            "seed" => self.seed = parse(key, v)?,
            "noise" => self.noise = parse(key, v)?,
            "nonlinear" => self.nonlinear = parse_bool(key, v)?,
            "phase_correction" => self.phase_correction = parse_bool(key, v)?,
            "out_every" => self.out_every = parse(key, v)?,
            "out_growth" => self.out_growth = parse(key, v)?,
            "energy_every" => self.energy_every = parse(key, v)?,
            "weighted_every" => self.weighted_every = parse(key, v)?,
            "checkpoint_every" => self.checkpoint_every = parse(key, v)?,
            "profile" => self.profile = parse_bool(key, v)?,
            "localization" => {
                self.localization = match v {
                    "abort" => Localization::Abort,
                    "monitor" => Localization::Monitor,
                    _ => return Err(Error::Config(format!("bad value `{v}` for `localization`"))),
                }
            }
            "prune_tol" => self.prune_tol = parse(key, v)?,
            "growth_limit" => self.growth_limit = parse(key, v)?,
            other => return Err(Error::Config(format!("unknown key `{other}`"))),
        }
        Ok(())
    }

    /// `key=value` override as given on the command line.
    pub fn set_pair(&mut self, pair: &str) -> Result<()> {
        let (k, v) = pair
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("expected key=value, got `{pair}`")))?;
        self.set(k, v)
    }

    pub fn parse_str(text: &str) -> Result<RunConfig> {
        let mut cfg = RunConfig::default();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", no + 1)))?;
            cfg.set(k, v).map_err(|e| Error::Config(format!("line {}: {e}", no + 1)))?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<RunConfig> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        RunConfig::parse_str(&text)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Config(m.to_string()));
        if !(self.n >= 4 && self.n.is_power_of_two()) {
            return bad("n must be a power of two ≥ 4");
        }
        if !(self.l > 0.0 && self.l.is_finite()) {
            return bad("L must be positive");
        }
        if !(self.dt > 0.0 && self.dt <= 0.1) {
            return bad("dt must lie in (0, 0.1]");
        }
        if !(self.t_end >= 0.0 && self.t_end.is_finite()) {
            return bad("t_end must be non-negative");
        }
        if !(self.eps0 >= 0.0 && self.eps0.is_finite()) {
            return bad("eps0 must be non-negative");
        }
        if !(self.p1 > 0.0 && self.p1 <= self.p0 && self.p0 <= 1e-6) {
            return bad("need 0 < p1 ≤ p0 ≤ 1e-6");
        }
        if !(self.width > 0.0) {
            return bad("width must be positive");
        }
        if !(self.out_every > 0.0) || self.out_growth < 0.0 {
            return bad("out_every must be positive and out_growth non-negative");
        }
        if self.n_sob < 0 {
            return bad("N must be non-negative");
        }
        if !(self.noise >= 0.0) || !(self.prune_tol >= 0.0) || !(self.growth_limit > 0.0) {
            return bad("noise, prune_tol must be ≥ 0 and growth_limit > 0");
        }
        Ok(())
    }

    /// Canonical `key = value` rendering; parsing it gives back the same config.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let loc = match self.localization {
            Localization::Abort => "abort",
            Localization::Monitor => "monitor",
        };
        let vals: [String; 23] = [
            format!("{:e}", self.eps0),
            format!("{:e}", self.l),
            self.n.to_string(),
            format!("{:e}", self.dt),
            format!("{:e}", self.t_end),
            self.n_sob.to_string(),
            format!("{:e}", self.p0),
            format!("{:e}", self.p1),
            format!("{:e}", self.xi_c),
            format!("{:e}", self.width),
            self.seed.to_string(),
            format!("{:e}", self.noise),
            self.nonlinear.to_string(),
            self.phase_correction.to_string(),
            format!("{:e}", self.out_every),
            format!("{:e}", self.out_growth),
            self.energy_every.to_string(),
            self.weighted_every.to_string(),
            self.checkpoint_every.to_string(),
            self.profile.to_string(),
            loc.to_string(),
            format!("{:e}", self.prune_tol),
            format!("{:e}", self.growth_limit),
        ];
        for (k, v) in RunConfig::KEYS.iter().zip(vals) {
            let _ = writeln!(s, "{k} = {v}");
        }
        s
    }

    /// SHA-256 of the canonical text.
    pub fn hash(&self) -> [u8; 32] {
        Sha256::digest(self.to_text().as_bytes()).into()
    }
}
