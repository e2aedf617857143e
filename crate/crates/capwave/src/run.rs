//! A complete run: time stepping, diagnostics at the output cadence,
//! checkpoints, the profile series and the reports written at the end.

use std::fs::{self, OpenOptions};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::config::{Localization, RunConfig};
use crate::energies::EnergyContext;
use crate::error::{Error, Result};
use crate::evolution::{make_initial_data, Evolver, MainhypReport};
use crate::scattering::{advance_phase, fit_line, phase_rates, scattering_report, LineFit, NormalForm, ProfileSeries, ProfileState};
use crate::spectral_core::{inner_mass_fraction, norms, project_spectrum, spectral_l2_sq, Field, Grid, Projection, C64};

pub const CSV_FILE: &str = "run.csv";
pub const PROFILE_FILE: &str = "profile.bin";
pub const SCATTERING_FILE: &str = "scattering.json";
pub const RUN_REPORT_FILE: &str = "report_run.json";
pub const INITIAL_REPORT_FILE: &str = "report_initial.json";

/// Leading columns of `run.csv`, in order. Band columns `sup_k{k}` follow `Linf`,
/// then `Znorm`, then [`EXTRA_COLUMNS`].
pub const LEAD_COLUMNS: [&str; 11] = ["t", "E2N", "E3N", "Ew2", "Ew3_1", "Ew3_2", "Ew3_3", "Ew3_4", "Ew3_5", "HN", "Linf"];
pub const EXTRA_COLUMNS: [&str; 5] = ["L2", "low_freq", "inner_mass", "W3inf", "step"];

pub fn csv_header(grid: &Grid) -> Vec<String> {
    let (lo, hi) = grid.k_range();
    let mut h: Vec<String> = LEAD_COLUMNS.iter().map(|s| s.to_string()).collect();
    h.extend((lo..=hi).map(|k| format!("sup_k{k}")));
    h.push("Znorm".into());
    h.extend(EXTRA_COLUMNS.iter().map(|s| s.to_string()));
    h
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Row {
    pub t: f64,
    pub e2n: f64,
    pub e3n: f64,
    pub ew2: f64,
    pub ew3: [f64; 5],
    pub hn: f64,
    pub linf: f64,
    pub band_sups: Vec<f64>,
    pub znorm: f64,
    pub l2: f64,
    pub low_freq: f64,
    pub inner_mass: f64,
    pub w3inf: f64,
    pub step: u64,
}

impl Row {
    fn fields(&self) -> Vec<String> {
        let f = |x: f64| if x.is_nan() { "nan".to_string() } else { format!("{x:.17e}") };
        let mut v = vec![f(self.t), f(self.e2n), f(self.e3n), f(self.ew2)];
        v.extend(self.ew3.iter().map(|&x| f(x)));
        v.push(f(self.hn));
        v.push(f(self.linf));
        v.extend(self.band_sups.iter().map(|&x| f(x)));
        v.push(f(self.znorm));
        v.extend([f(self.l2), f(self.low_freq), f(self.inner_mass), f(self.w3inf)]);
        v.push(self.step.to_string());
        v
    }
}

// ---------------------------------------------------------------------------
// Checkpoints

const CKPT_MAGIC: &[u8; 8] = b"CWCKPT01";
const CKPT_VERSION: u32 = 1;

/// Everything needed to continue a run bit-for-bit.
#[derive(Clone, Debug, PartialEq)]
pub struct Checkpoint {
    pub config_hash: [u8; 32],
    pub step: u64,
    pub out_index: u64,
    pub next_out_step: u64,
    pub w: Vec<C64>,
    pub profile: Option<ProfileState>,
    pub low_freq0: f64,
    pub low_freq_dev: f64,
}

fn put_f64s(buf: &mut Vec<u8>, v: impl IntoIterator<Item = f64>) {
    for x in v {
        buf.extend_from_slice(&x.to_le_bytes());
    }
}

struct Cursor<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn take(&mut self, n: usize) -> Result<&[u8]> {
        if self.pos + n > self.buf.len() {
            return Err(Error::Checkpoint("truncated file".into()));
        }
        let s = &self.buf[self.pos..self.pos + n];
        self.pos += n;
        Ok(s)
    }
    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }
    fn f64(&mut self) -> Result<f64> {
        Ok(f64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }
    fn complex(&mut self, n: usize) -> Result<Vec<C64>> {
        (0..n).map(|_| Ok(C64::new(self.f64()?, self.f64()?))).collect()
    }
}

impl Checkpoint {
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut b = Vec::new();
        b.extend_from_slice(CKPT_MAGIC);
        b.extend_from_slice(&CKPT_VERSION.to_le_bytes());
        b.extend_from_slice(&self.config_hash);
        for x in [self.step, self.out_index, self.next_out_step, self.w.len() as u64] {
            b.extend_from_slice(&x.to_le_bytes());
        }
        put_f64s(&mut b, self.w.iter().flat_map(|z| [z.re, z.im]));
        put_f64s(&mut b, [self.low_freq0, self.low_freq_dev]);
        match &self.profile {
            None => b.push(0),
            Some(p) => {
                b.push(1);
                put_f64s(&mut b, [p.t]);
                put_f64s(&mut b, p.fhat.iter().flat_map(|z| [z.re, z.im]));
                put_f64s(&mut b, p.l.iter().copied());
            }
        }
        b
    }

    pub fn from_bytes(buf: &[u8]) -> Result<Checkpoint> {
        let mut c = Cursor { buf, pos: 0 };
        if c.take(8)? != CKPT_MAGIC {
            return Err(Error::Checkpoint("not a checkpoint file".into()));
        }
        let version = u32::from_le_bytes(c.take(4)?.try_into().unwrap());
        if version != CKPT_VERSION {
            return Err(Error::Checkpoint(format!("unsupported version {version}")));
        }
        let config_hash: [u8; 32] = c.take(32)?.try_into().unwrap();
        let (step, out_index, next_out_step, n) = (c.u64()?, c.u64()?, c.u64()?, c.u64()? as usize);
        let w = c.complex(n)?;
        let (low_freq0, low_freq_dev) = (c.f64()?, c.f64()?);
        let profile = match c.take(1)?[0] {
            0 => None,
            _ => {
                let t = c.f64()?;
                let fhat = c.complex(n)?;
                let l = (0..n).map(|_| c.f64()).collect::<Result<Vec<f64>>>()?;
                Some(ProfileState { t, fhat, l })
            }
        };
        if c.pos != buf.len() {
            return Err(Error::Checkpoint("trailing bytes".into()));
        }
        Ok(Checkpoint { config_hash, step, out_index, next_out_step, w, profile, low_freq0, low_freq_dev })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_bytes())?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Checkpoint> {
        Checkpoint::from_bytes(&fs::read(path)?)
    }
}

pub fn checkpoint_path(dir: &Path, out_index: u64) -> PathBuf {
    dir.join(format!("checkpoint_{out_index:04}.bin"))
}

// ---------------------------------------------------------------------------
// Running

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub out: PathBuf,
    pub quiet: bool,
    /// Continue from this checkpoint instead of building initial data.
    pub resume: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", content = "reason", rename_all = "snake_case")]
pub enum RunStatus {
    Completed,
    Aborted(String),
}

#[derive(Clone, Debug, Serialize)]
pub struct RunSummary {
    #[serde(flatten)]
    pub status: RunStatus,
    pub t_final: f64,
    pub steps: u64,
    pub outputs: u64,
    /// `‖P_{≤−30}u(0)‖_{L²}` and the largest relative deviation seen.
    pub low_freq0: f64,
    pub low_freq_dev: f64,
    /// `log‖u‖_∞` against `log t` over `t ∈ [50, 1000]`.
    pub decay_fit: Option<LineFit>,
    /// `sup_t (1+t)^{1/2}‖u‖_∞` over `(1+t)^{1/2}‖u‖_∞` at `t = 1`.
    pub decay_ratio: Option<f64>,
}

impl RunSummary {
    pub fn completed(&self) -> bool {
        self.status == RunStatus::Completed
    }
}

struct Outputs {
    csv: csv::Writer<std::fs::File>,
    profile: Option<BufWriter<std::fs::File>>,
}

fn open_outputs(dir: &Path, grid: &Grid, profile: bool, fresh: bool) -> Result<Outputs> {
    fs::create_dir_all(dir)?;
    let open = |name: &str| -> Result<(std::fs::File, bool)> {
        let path = dir.join(name);
        let empty = fresh || fs::metadata(&path).map(|m| m.len() == 0).unwrap_or(true);
        let file = OpenOptions::new().create(true).write(true).append(!empty).truncate(empty).open(&path)?;
        Ok((file, empty))
    };
    let (file, empty) = open(CSV_FILE)?;
    let mut csv = csv::WriterBuilder::new().has_headers(false).from_writer(file);
    if empty {
        csv.write_record(csv_header(grid)).map_err(csv_err)?;
    }
    let profile = if profile {
        let (file, empty) = open(PROFILE_FILE)?;
        let mut w = BufWriter::new(file);
        if empty {
            ProfileSeries::write_header(&mut w, grid)?;
        }
        Some(w)
    } else {
        None
    };
    Ok(Outputs { csv, profile })
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e.to_string()))
}

fn low_freq(grid: &Grid, hat: &[C64]) -> f64 {
    spectral_l2_sq(grid, &project_spectrum(grid, hat, Projection::Leq(-30))).sqrt()
}

/// Output steps: spacing `max(out_every, out_growth·t)` rounded to whole steps; the last step is always an output.
pub fn next_output_step(cfg: &RunConfig, step: u64, total: u64) -> u64 {
    let t = step as f64 * cfg.dt;
    let base = ((cfg.out_every / cfg.dt).round() as u64).max(1);
    let grown = (cfg.out_growth * t / cfg.dt).floor() as u64;
    (step + base.max(grown)).min(total)
}

/// Executes a run, writing every output into `opts.out`.
pub fn run(cfg: &RunConfig, opts: &RunOptions) -> Result<RunSummary> {
    cfg.validate()?;
    let grid = Grid::new(cfg.l, cfg.n)?;
    let ev = Evolver::new(&grid, cfg.dt, cfg.nonlinear);
    let total = (cfg.t_end / cfg.dt).round() as u64;
    let hash = cfg.hash();
    let profile_on = cfg.profile;
    let nf = (profile_on && cfg.nonlinear).then(|| NormalForm::new(&grid, cfg.prune_tol));
    let rates = phase_rates(&grid);
    let needs_energy = cfg.energy_every > 0 || cfg.weighted_every > 0;
    let ctx = needs_energy.then(|| EnergyContext::new(&grid, cfg.n_sob, cfg.prune_tol));

    let mut ck = match &opts.resume {
        Some(p) => {
            let ck = Checkpoint::load(p)?;
            if ck.config_hash != hash {
                return Err(Error::Checkpoint(format!("{} was written by a different config", p.display())));
            }
            if ck.w.len() != grid.n() {
                return Err(Error::Checkpoint("grid size differs from config".into()));
            }
            ck
        }
        None => {
            let (u0, rep) = make_initial_data(cfg)?;
            fs::create_dir_all(&opts.out)?;
            write_json(&opts.out.join(INITIAL_REPORT_FILE), &InitialReport { config: cfg, mainhyp: &rep })?;
            let w = ev.to_profile(u0.spectrum(), 0.0);
            Checkpoint {
                config_hash: hash,
                step: 0,
                out_index: 0,
                next_out_step: 0,
                low_freq0: low_freq(&grid, u0.spectrum()),
                low_freq_dev: 0.0,
                w,
                profile: None,
            }
        }
    };
    let mut outs = open_outputs(&opts.out, &grid, profile_on, opts.resume.is_none())?;
    let mut status = RunStatus::Completed;

    loop {
        if ck.step == ck.next_out_step {
            let t = ck.step as f64 * cfg.dt;
            let uhat = ev.to_physical(&ck.w, t);
            let u = Field::from_spectrum(&grid, uhat, t)?;
            let idx = ck.out_index as usize;
            let nr = norms(&u, cfg.n_sob as f64, cfg.p1);
            let lf = low_freq(&grid, u.spectrum());
            if ck.low_freq0 > 0.0 {
                ck.low_freq_dev = ck.low_freq_dev.max((lf - ck.low_freq0).abs() / ck.low_freq0);
            } else if lf > 0.0 {
                ck.low_freq_dev = f64::INFINITY;
            }
            let inner = inner_mass_fraction(&u);
            let mut row = Row {
                t,
                e2n: f64::NAN,
                e3n: f64::NAN,
                ew2: f64::NAN,
                ew3: [f64::NAN; 5],
                hn: nr.hn,
                linf: nr.linf,
                band_sups: nr.band_sups.iter().map(|b| b.1).collect(),
                znorm: nr.znorm,
                l2: nr.l2,
                low_freq: lf,
                inner_mass: inner,
                w3inf: nr.w3inf,
                step: ck.step,
            };
            if let Some(ctx) = &ctx {
                if cfg.energy_every > 0 && idx % cfg.energy_every == 0 {
                    row.e2n = ctx.e2n(u.spectrum());
                    row.e3n = ctx.e3n(u.spectrum()).re;
                }
                if cfg.weighted_every > 0 && idx % cfg.weighted_every == 0 {
                    let (z, _) = ctx.z(&u, t, &ev);
                    let ew = ctx.ew(u.spectrum(), &z);
                    row.ew2 = ew.e2;
                    row.ew3 = ew.e3;
                }
            }
            outs.csv.write_record(row.fields()).map_err(csv_err)?;
            outs.csv.flush()?;
            if let Some(w) = outs.profile.as_mut() {
                let vhat = match &nf {
                    Some(nf) => nf.v(u.spectrum()),
                    None => u.spectrum().to_vec(),
                };
                let fhat = ev.to_profile(&vhat, t);
                let st = match &ck.profile {
                    None => ProfileState { t, l: vec![0.0; fhat.len()], fhat },
                    Some(prev) => advance_phase(&rates, prev, fhat, t),
                };
                ProfileSeries::write_record(w, &st)?;
                w.flush()?;
                ck.profile = Some(st);
            }
            if !opts.quiet {
                eprintln!("t = {t:10.3}  Linf = {:.6e}  HN = {:.6e}  inner = {:.9}", nr.linf, nr.hn, inner);
            }
            ck.out_index += 1;
            ck.next_out_step = next_output_step(cfg, ck.step, total);
            let last = ck.step >= total;
            if cfg.checkpoint_every > 0 && (idx % cfg.checkpoint_every == 0) || last {
                ck.save(&checkpoint_path(&opts.out, idx as u64))?;
            }
            if cfg.eps0 > 0.0 && nr.hn > cfg.growth_limit * cfg.eps0 {
                status = RunStatus::Aborted(format!("H^N norm {:.3e} exceeds {} ε₀ at t = {t}", nr.hn, cfg.growth_limit));
            } else if cfg.localization == Localization::Abort && inner < 1.0 - 1e-6 {
                status = RunStatus::Aborted(format!("mass left |x| ≤ L/4 at t = {t}: inner fraction {inner:.9}"));
            }
            if last || status != RunStatus::Completed {
                if status != RunStatus::Completed && !last {
                    ck.save(&checkpoint_path(&opts.out, idx as u64))?;
                }
                break;
            }
        }
        let t = ck.step as f64 * cfg.dt;
        match ev.step(&ck.w, t) {
            Ok(w) => {
                ck.w = w;
                ck.step += 1;
            }
            Err(e) => {
                ck.save(&checkpoint_path(&opts.out, ck.out_index))?;
                status = RunStatus::Aborted(format!("{e} at t = {t}"));
                break;
            }
        }
    }
    drop(outs);
    let summary = summarize(cfg, &opts.out, status, &ck)?;
    write_json(&opts.out.join(RUN_REPORT_FILE), &summary)?;
    if profile_on {
        let series = ProfileSeries::load(&opts.out.join(PROFILE_FILE))?;
        if series.states.len() >= 2 {
            let rep = scattering_report(&series, cfg.p1, 4, 9)?;
            write_json(&opts.out.join(SCATTERING_FILE), &rep)?;
        }
    }
    Ok(summary)
}

#[derive(Serialize)]
struct InitialReport<'a> {
    config: &'a RunConfig,
    mainhyp: &'a MainhypReport,
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    fs::write(path, s)?;
    Ok(())
}

/// `(t, Linf)` from a `run.csv`.
pub fn read_linf(path: &Path) -> Result<Vec<(f64, f64)>> {
    let mut rd = csv::Reader::from_path(path).map_err(csv_err)?;
    let headers = rd.headers().map_err(csv_err)?.clone();
    let col = |name: &str| headers.iter().position(|h| h == name);
    let (Some(ct), Some(cl)) = (col("t"), col("Linf")) else {
        return Err(Error::Config(format!("{} lacks t/Linf columns", path.display())));
    };
    let mut out = Vec::new();
    for rec in rd.records() {
        let rec = rec.map_err(csv_err)?;
        let p = |i: usize| rec.get(i).and_then(|s| s.parse::<f64>().ok()).unwrap_or(f64::NAN);
        out.push((p(ct), p(cl)));
    }
    Ok(out)
}

/// Log-log fit of `‖u‖_∞` on `t ∈ [t_lo, t_hi]`.
pub fn decay_fit(series: &[(f64, f64)], t_lo: f64, t_hi: f64) -> Option<LineFit> {
    let pts: Vec<(f64, f64)> =
        series.iter().filter(|(t, l)| *t >= t_lo && *t <= t_hi && *l > 0.0).map(|(t, l)| (t.ln(), l.ln())).collect();
    let (x, y): (Vec<f64>, Vec<f64>) = pts.into_iter().unzip();
    fit_line(&x, &y)
}

fn summarize(cfg: &RunConfig, dir: &Path, status: RunStatus, ck: &Checkpoint) -> Result<RunSummary> {
    let series = read_linf(&dir.join(CSV_FILE))?;
    let at1 = series.iter().find(|(t, _)| (*t - 1.0).abs() < 0.5 * cfg.dt).map(|(t, l)| (1.0 + t).sqrt() * l);
    let sup = series.iter().map(|(t, l)| (1.0 + t).sqrt() * l).fold(0.0, f64::max);
    Ok(RunSummary {
        status,
        t_final: ck.step as f64 * cfg.dt,
        steps: ck.step,
        outputs: ck.out_index,
        low_freq0: ck.low_freq0,
        low_freq_dev: ck.low_freq_dev,
        decay_fit: decay_fit(&series, 50.0, 1000.0),
        decay_ratio: at1.filter(|&v| v > 0.0).map(|v| sup / v),
    })
}
