//! Normal form `v = u + A(u,u) + B(ū,u)`, the profile `f̂ = e^{itΛ}v̂`, the
//! phase correction `L` and the scattering monitors built on `g = e^{iL}f̂`.

use std::f64::consts::PI;
use std::io::{Read, Write};
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, StudentsT};

use crate::bilinear::{active_slots, direct_lattice, real_part_doubled, trilinear_integral, LatticeSymbol, LatticeTables};
use crate::error::{Error, Result};
use crate::evolution::Evolver;
use crate::spectral_core::{abs_pow, conj_reflect, lambda, Field, Grid, C64};
use crate::symbols::{ctilde, BilinearSymbol, Signature, SymbolName};

fn add(a: &[C64], b: &[C64]) -> Vec<C64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub(a: &[C64], b: &[C64]) -> Vec<C64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// `e^{±itΛ}` on a spectrum.
fn rotate(grid: &Grid, hat: &[C64], t: f64) -> Vec<C64> {
    hat.iter().zip(grid.xis()).map(|(z, x)| z * C64::from_polar(1.0, t * lambda(x))).collect()
}

/// Direct lattice sums for the quadratic normal form and its quartic remainder.
pub struct NormalForm {
    grid: Grid,
    a: LatticeSymbol,
    b: LatticeSymbol,
    q0: LatticeSymbol,
    /// Input bins below `tol·max` are skipped.
    pub tol: f64,
}

impl NormalForm {
    pub fn new(grid: &Grid, tol: f64) -> NormalForm {
        let tables = Arc::new(LatticeTables::new(grid));
        let sym = |name| LatticeSymbol::new(BilinearSymbol::new(name), &tables);
        NormalForm { grid: grid.clone(), a: sym(SymbolName::A), b: sym(SymbolName::B), q0: sym(SymbolName::Q0), tol }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    fn a(&self, f: &[C64], g: &[C64]) -> Vec<C64> {
        direct_lattice(&self.grid, &self.a, f, g, self.tol)
    }

    fn b(&self, f: &[C64], g: &[C64]) -> Vec<C64> {
        direct_lattice(&self.grid, &self.b, f, g, self.tol)
    }

    /// `N̂ = F[Q₀(u+ū, u)]` by the direct sum.
    pub fn nonlinearity(&self, uhat: &[C64]) -> Vec<C64> {
        direct_lattice(&self.grid, &self.q0, &real_part_doubled(uhat), uhat, self.tol)
    }

    /// `F[A(u,u) + B(ū,u)]`.
    pub fn correction(&self, uhat: &[C64]) -> Vec<C64> {
        add(&self.a(uhat, uhat), &self.b(&conj_reflect(uhat), uhat))
    }

    pub fn v(&self, uhat: &[C64]) -> Vec<C64> {
        add(uhat, &self.correction(uhat))
    }

    /// `A(N,h) + A(h,N) + B(N̄,h) + B(h̄,N)` with `N = Q₀(h+h̄, h)`.
    pub fn cubic_forcing(&self, hhat: &[C64]) -> Vec<C64> {
        let n = self.nonlinearity(hhat);
        let (hb, nb) = (conj_reflect(hhat), conj_reflect(&n));
        let mut out = add(&self.a(&n, hhat), &self.a(hhat, &n));
        out = add(&out, &self.b(&nb, hhat));
        add(&out, &self.b(&hb, &n))
    }

    /// `R₄ = N′(u) − N″(v)`, quartic in `u`.
    pub fn r4(&self, uhat: &[C64], vhat: &[C64]) -> Vec<C64> {
        sub(&self.cubic_forcing(uhat), &self.cubic_forcing(vhat))
    }

    /// `(i/4π²)Σ_ι I^ι(ξ,t)` at one output slot, with `f̂` the profile of `v`.
    pub fn cubic_terms(&self, fhat: &[C64], t: f64, slot: usize) -> C64 {
        let s: C64 = Signature::ALL
            .iter()
            .map(|&sig| trilinear_integral(&self.grid, sig, slot, fhat, fhat, fhat, t, None))
            .sum();
        C64::new(0.0, 1.0) * s / (4.0 * PI * PI)
    }
}

pub fn normal_form_v(u: &Field) -> Field {
    let nf = NormalForm::new(u.grid(), 0.0);
    Field::from_spectrum(u.grid(), nf.v(u.spectrum()), u.t).expect("finite normal form")
}

pub fn compute_r4(u: &Field, v: &Field) -> Result<Field> {
    u.same_grid(v)?;
    let nf = NormalForm::new(u.grid(), 0.0);
    Field::from_spectrum(u.grid(), nf.r4(u.spectrum(), v.spectrum()), u.t)
}

/// Profile, accumulated phase correction and the time they refer to.
#[derive(Clone, Debug, PartialEq)]
pub struct ProfileState {
    pub t: f64,
    pub fhat: Vec<C64>,
    /// `L(ξ,t) = (c̃(ξ)/4π²)∫₀ᵗ |f̂(ξ,s)|²/(s+1) ds`
    pub l: Vec<f64>,
}

impl ProfileState {
    /// State at the first time of a series, with `L = 0`.
    pub fn start(v: &Field) -> ProfileState {
        let fhat = rotate(v.grid(), v.spectrum(), v.t);
        ProfileState { t: v.t, l: vec![0.0; fhat.len()], fhat }
    }

    /// `ĝ = e^{iL}f̂`.
    pub fn g(&self) -> Vec<C64> {
        self.fhat.iter().zip(&self.l).map(|(f, l)| f * C64::from_polar(1.0, *l)).collect()
    }
}

/// `c̃(ξ)/4π²` on the lattice.
pub fn phase_rates(grid: &Grid) -> Vec<f64> {
    grid.xis().iter().map(|&x| ctilde(x) / (4.0 * PI * PI)).collect()
}

/// Advance `L` by one trapezoid step from `prior` to `v.t = prior.t + dt`.
pub fn profile_and_phase(v: &Field, prior: &ProfileState, dt: f64) -> Result<ProfileState> {
    let expected = prior.t + dt;
    if (v.t - expected).abs() > 1e-9 * expected.abs().max(1.0) || prior.fhat.len() != v.grid().n() {
        return Err(Error::TimeMismatch { expected, got: v.t });
    }
    Ok(advance_phase(&phase_rates(v.grid()), prior, rotate(v.grid(), v.spectrum(), v.t), v.t))
}

/// Trapezoid update with precomputed rates.
pub fn advance_phase(rates: &[f64], prior: &ProfileState, fhat: Vec<C64>, t: f64) -> ProfileState {
    let h = 0.5 * (t - prior.t);
    let (w0, w1) = (1.0 / (prior.t + 1.0), 1.0 / (t + 1.0));
    let l = (0..fhat.len())
        .map(|i| prior.l[i] + rates[i] * h * (prior.fhat[i].norm_sqr() * w0 + fhat[i].norm_sqr() * w1))
        .collect();
    ProfileState { t, fhat, l }
}

// ---------------------------------------------------------------------------
// Series of profiles

const PROFILE_MAGIC: &[u8; 8] = b"CWPROF01";

/// Profiles and phase corrections at the output times of a run.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ProfileSeries {
    pub l_domain: f64,
    pub n: usize,
    pub states: Vec<ProfileState>,
}

impl ProfileSeries {
    pub fn new(grid: &Grid) -> ProfileSeries {
        ProfileSeries { l_domain: grid.l(), n: grid.n(), states: Vec::new() }
    }

    pub fn grid(&self) -> Result<Grid> {
        Grid::new(self.l_domain, self.n)
    }

    pub fn times(&self) -> Vec<f64> {
        self.states.iter().map(|s| s.t).collect()
    }

    pub fn write_record(w: &mut impl Write, s: &ProfileState) -> Result<()> {
        w.write_all(&s.t.to_le_bytes())?;
        for z in &s.fhat {
            w.write_all(&z.re.to_le_bytes())?;
            w.write_all(&z.im.to_le_bytes())?;
        }
        for l in &s.l {
            w.write_all(&l.to_le_bytes())?;
        }
        Ok(())
    }

    pub fn write_header(w: &mut impl Write, grid: &Grid) -> Result<()> {
        w.write_all(PROFILE_MAGIC)?;
        w.write_all(&(grid.n() as u64).to_le_bytes())?;
        w.write_all(&grid.l().to_le_bytes())?;
        Ok(())
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let mut w = std::io::BufWriter::new(std::fs::File::create(path)?);
        Self::write_header(&mut w, &self.grid()?)?;
        for s in &self.states {
            Self::write_record(&mut w, s)?;
        }
        w.flush()?;
        Ok(())
    }

    /// Reads a series; a trailing partial record is ignored.
    pub fn load(path: &Path) -> Result<ProfileSeries> {
        let mut buf = Vec::new();
        std::fs::File::open(path)?.read_to_end(&mut buf)?;
        let bad = || Error::Checkpoint(format!("{} is not a profile series", path.display()));
        if buf.len() < 24 || &buf[..8] != PROFILE_MAGIC {
            return Err(bad());
        }
        let f = |o: usize| f64::from_le_bytes(buf[o..o + 8].try_into().unwrap());
        let n = u64::from_le_bytes(buf[8..16].try_into().unwrap()) as usize;
        let l_domain = f(16);
        let rec = 8 * (1 + 3 * n);
        let mut states = Vec::new();
        let mut o = 24;
        while o + rec <= buf.len() {
            let t = f(o);
            let fhat = (0..n).map(|i| C64::new(f(o + 8 + 16 * i), f(o + 16 + 16 * i))).collect();
            let l = (0..n).map(|i| f(o + 8 + 16 * n + 8 * i)).collect();
            states.push(ProfileState { t, fhat, l });
            o += rec;
        }
        Ok(ProfileSeries { l_domain, n, states })
    }
}

// ---------------------------------------------------------------------------
// Block monitor

/// `sup_{t₁≤t₂ in block} ‖(|ξ|^{p₁}+|ξ|⁵)(ĝ(t₂)−ĝ(t₁))‖_∞` over `t ∈ [2^m−2, 2^{m+1}]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlockValue {
    pub m: u32,
    pub t_lo: f64,
    pub t_hi: f64,
    pub samples: usize,
    /// Absent when fewer than two samples fall in the block.
    pub value: Option<f64>,
}

pub fn block_values(grid: &Grid, times: &[f64], gs: &[Vec<C64>], p1: f64) -> Vec<BlockValue> {
    let weight: Vec<f64> = grid.xis().iter().map(|&x| abs_pow(x, p1) + abs_pow(x, 5.0)).collect();
    let Some(&t_last) = times.last() else { return Vec::new() };
    let mut out = Vec::new();
    let mut m = 1u32;
    while 2f64.powi(m as i32) - 2.0 <= t_last {
        let (lo, hi) = (2f64.powi(m as i32) - 2.0, 2f64.powi(m as i32 + 1));
        let idx: Vec<usize> = (0..times.len()).filter(|&i| times[i] >= lo && times[i] <= hi + 1e-9).collect();
        let value = (idx.len() >= 2).then(|| {
            let mut sup = 0.0f64;
            for (a, &i) in idx.iter().enumerate() {
                for &j in &idx[a + 1..] {
                    for k in 0..weight.len() {
                        sup = sup.max(weight[k] * (gs[j][k] - gs[i][k]).norm());
                    }
                }
            }
            sup
        });
        out.push(BlockValue { m, t_lo: lo, t_hi: hi, samples: idx.len(), value });
        m += 1;
    }
    out
}

/// Least-squares line with a two-sided 95% interval on the slope.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    pub ci95: f64,
    pub points: usize,
}

pub fn fit_line(x: &[f64], y: &[f64]) -> Option<LineFit> {
    let n = x.len();
    if n < 2 || y.len() != n {
        return None;
    }
    let nf = n as f64;
    let (mx, my) = (x.iter().sum::<f64>() / nf, y.iter().sum::<f64>() / nf);
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let slope = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum::<f64>() / sxx;
    let intercept = my - slope * mx;
    let ci95 = if n > 2 {
        let rss: f64 = x.iter().zip(y).map(|(a, b)| (b - intercept - slope * a).powi(2)).sum();
        let se = (rss / (nf - 2.0) / sxx).sqrt();
        let q = StudentsT::new(0.0, 1.0, nf - 2.0).map(|d| d.inverse_cdf(0.975)).unwrap_or(f64::INFINITY);
        q * se
    } else {
        f64::INFINITY
    };
    Some(LineFit { slope, intercept, ci95, points: n })
}

/// Slope of `log₂(value)` against `m` over the given block range.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlockDecay {
    pub fit: Option<LineFit>,
    pub blocks: Vec<u32>,
    /// Negative slope with the whole 95% interval below zero, over at least four blocks.
    pub decaying: bool,
}

pub fn block_decay(blocks: &[BlockValue], m_lo: u32, m_hi: u32) -> BlockDecay {
    let used: Vec<&BlockValue> = blocks
        .iter()
        .filter(|b| b.m >= m_lo && b.m <= m_hi && b.value.is_some_and(|v| v > 0.0))
        .collect();
    let x: Vec<f64> = used.iter().map(|b| b.m as f64).collect();
    let y: Vec<f64> = used.iter().map(|b| b.value.unwrap().log2()).collect();
    let fit = fit_line(&x, &y);
    let decaying = used.len() >= 4 && fit.is_some_and(|f| f.slope + f.ci95 < 0.0);
    BlockDecay { fit, blocks: used.iter().map(|b| b.m).collect(), decaying }
}

/// Phase of `f̂(ξ)` against `log(1+t)` compared with the slope of `−L(ξ,t)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseFit {
    pub xi: f64,
    pub measured: f64,
    pub predicted: f64,
    pub rel_err: f64,
}

pub fn phase_drift(series: &ProfileSeries, slot: usize, t_lo: f64, t_hi: f64) -> Option<PhaseFit> {
    let grid = series.grid().ok()?;
    let sel: Vec<&ProfileState> = series.states.iter().filter(|s| s.t >= t_lo && s.t <= t_hi).collect();
    let x: Vec<f64> = sel.iter().map(|s| (1.0 + s.t).ln()).collect();
    let mut phase = Vec::with_capacity(sel.len());
    let mut prev = 0.0;
    for (k, s) in sel.iter().enumerate() {
        let mut p = s.fhat[slot].arg();
        if k > 0 {
            p -= 2.0 * PI * ((p - prev) / (2.0 * PI)).round();
        }
        prev = p;
        phase.push(p);
    }
    let ls: Vec<f64> = sel.iter().map(|s| -s.l[slot]).collect();
    let measured = fit_line(&x, &phase)?.slope;
    let predicted = fit_line(&x, &ls)?.slope;
    let rel_err = if predicted != 0.0 { (measured - predicted).abs() / predicted.abs() } else { f64::INFINITY };
    Some(PhaseFit { xi: grid.xi(slot), measured, predicted, rel_err })
}

/// Slots where `|f̂|` is within a factor two of its maximum, thinned to `count`.
pub fn phase_slots(series: &ProfileSeries, count: usize) -> Vec<usize> {
    let Some(last) = series.states.last() else { return Vec::new() };
    let top = active_slots(&last.fhat, 0.5);
    if top.len() <= count {
        return top;
    }
    (0..count).map(|k| top[k * (top.len() - 1) / (count - 1).max(1)]).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScatteringReport {
    pub t_end: f64,
    pub outputs: usize,
    pub blocks_with_phase: Vec<BlockValue>,
    pub blocks_without_phase: Vec<BlockValue>,
    pub decay_with_phase: BlockDecay,
    pub decay_without_phase: BlockDecay,
    pub phase_fits: Vec<PhaseFit>,
    pub notes: Vec<String>,
}

/// Block monitor with and without the phase correction, plus phase-drift fits on `[100, 1000]`.
pub fn scattering_report(series: &ProfileSeries, p1: f64, m_lo: u32, m_hi: u32) -> Result<ScatteringReport> {
    let grid = series.grid()?;
    if series.states.is_empty() {
        return Err(Error::Config("profile series is empty".into()));
    }
    let times = series.times();
    let with: Vec<Vec<C64>> = series.states.iter().map(|s| s.g()).collect();
    let without: Vec<Vec<C64>> = series.states.iter().map(|s| s.fhat.clone()).collect();
    let blocks_with_phase = block_values(&grid, &times, &with, p1);
    let blocks_without_phase = block_values(&grid, &times, &without, p1);
    let mut notes = Vec::new();
    for b in &blocks_with_phase {
        if b.value.is_none() {
            notes.push(format!("block {} skipped: {} sample(s) in [{}, {}]", b.m, b.samples, b.t_lo, b.t_hi));
        }
    }
    let t_end = *times.last().unwrap();
    let phase_fits = if t_end >= 200.0 {
        phase_slots(series, 5).into_iter().filter_map(|s| phase_drift(series, s, 100.0, 1000.0)).collect()
    } else {
        notes.push("phase drift not fitted: run ends before t = 200".into());
        Vec::new()
    };
    Ok(ScatteringReport {
        t_end,
        outputs: times.len(),
        decay_with_phase: block_decay(&blocks_with_phase, m_lo, m_hi),
        decay_without_phase: block_decay(&blocks_without_phase, m_lo, m_hi),
        blocks_with_phase,
        blocks_without_phase,
        phase_fits,
        notes,
    })
}

// ---------------------------------------------------------------------------
// Cubic right-hand side check

/// Lattice slots nearest to `count` log-spaced frequencies in `[lo, hi]`, at least one bin apart.
pub fn sample_slots(grid: &Grid, lo: f64, hi: f64, count: usize) -> Vec<usize> {
    let h = (grid.n() / 2) as i64;
    let d = grid.dxi();
    let mut js: Vec<i64> = Vec::new();
    for k in 0..count {
        let x = lo * (hi / lo).powf(k as f64 / (count - 1).max(1) as f64);
        let mut j = (x / d).round() as i64;
        if j as f64 * d > hi {
            j -= 1;
        }
        let j = j.clamp(1, h - 1);
        let j = match js.last() {
            Some(&p) if j <= p => p + 1,
            _ => j,
        };
        js.push(j.min(h - 1));
    }
    js.dedup();
    js.into_iter().map(|j| (j + h) as usize).collect()
}

/// `∂_t f̂` at the middle of four steps of size `dt`, by the fourth-order
/// central difference.
#[derive(Clone, Debug)]
pub struct ProfileRate {
    pub t: f64,
    pub rate: Vec<C64>,
    /// `û` at time `t`.
    pub uhat: Vec<C64>,
}

/// Runs the direct-sum integrator from `u0` with step `dt/substeps` and
/// differences `f̂ = w + e^{itΛ}F[A(u,u)+B(ū,u)]` around `t_mid`.
/// Without the nonlinearity the normal form is the identity and `f̂ = w`.
///
/// Differences of `w` are accumulated from the step increments, so the
/// quadratic parts of the two summands cancel to working precision.
pub fn profile_rate(
    nf: &NormalForm,
    u0: &Field,
    t_mid: f64,
    dt: f64,
    substeps: usize,
    nonlinear: bool,
) -> Result<ProfileRate> {
    let grid = nf.grid().clone();
    let h = dt / substeps as f64;
    let ev = if nonlinear { Evolver::direct(&grid, h) } else { Evolver::new(&grid, h, false) };
    let t_start = t_mid - 2.0 * dt;
    let lead = ((t_start - u0.t) / h).round();
    if lead < 0.0 || (u0.t + lead * h - t_start).abs() > 1e-9 * t_mid.abs().max(1.0) {
        return Err(Error::TimeMismatch { expected: t_start, got: u0.t });
    }
    let mut w = ev.to_profile(u0.spectrum(), u0.t);
    let mut t = u0.t;
    for _ in 0..lead as usize {
        w = ev.step(&w, t)?;
        t += h;
    }
    let t0 = t;
    let base = w.clone();
    let corr = |w: &[C64], t: f64| {
        if nonlinear {
            ev.to_profile(&nf.correction(&ev.to_physical(w, t)), t)
        } else {
            vec![C64::new(0.0, 0.0); w.len()]
        }
    };
    let c0 = corr(&base, t0);
    let mut delta = vec![C64::new(0.0, 0.0); base.len()];
    let mut diffs = vec![delta.clone()];
    let mut mid = Vec::new();
    for k in 1..=4 {
        for s in 0..substeps {
            let ts = t0 + ((k - 1) * substeps + s) as f64 * h;
            let inc = ev.increment(&add(&base, &delta), ts)?;
            delta = add(&delta, &inc);
        }
        let tk = t0 + k as f64 * dt;
        let wk = add(&base, &delta);
        if k == 2 {
            mid = ev.to_physical(&wk, tk);
        }
        diffs.push(add(&delta, &sub(&corr(&wk, tk), &c0)));
    }
    let rate = (0..base.len())
        .map(|i| ((diffs[3][i] - diffs[1][i]) * 8.0 - (diffs[4][i] - diffs[0][i])) / (12.0 * dt))
        .collect();
    Ok(ProfileRate { t: t0 + 2.0 * dt, rate, uhat: mid })
}

#[derive(Clone, Debug, Serialize)]
pub struct ResidualSample {
    pub xi: f64,
    pub lhs: [f64; 2],
    pub cubic: [f64; 2],
    pub quartic: [f64; 2],
    /// `|lhs − cubic − quartic| / |lhs|`
    pub residual: f64,
    /// `|lhs − cubic|`, the size of the dropped quartic part.
    pub gap: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ResidualReport {
    pub t: f64,
    pub samples: Vec<ResidualSample>,
    pub max_residual: f64,
}

/// Compares a measured `∂_t f̂` with `(i/4π²)Σ_ι I^ι + e^{itΛ}R̂₄` at the given slots.
pub fn cubic_rhs_check(nf: &NormalForm, rate: &ProfileRate, slots: &[usize]) -> ResidualReport {
    let grid = nf.grid();
    let vhat = nf.v(&rate.uhat);
    let fhat = rotate(grid, &vhat, rate.t);
    let r4 = rotate(grid, &nf.r4(&rate.uhat, &vhat), rate.t);
    let pair = |z: C64| [z.re, z.im];
    let samples: Vec<ResidualSample> = slots
        .iter()
        .map(|&s| {
            let lhs = rate.rate[s];
            let cubic = nf.cubic_terms(&fhat, rate.t, s);
            let quartic = r4[s];
            ResidualSample {
                xi: grid.xi(s),
                lhs: pair(lhs),
                cubic: pair(cubic),
                quartic: pair(quartic),
                residual: (lhs - cubic - quartic).norm() / lhs.norm(),
                gap: (lhs - cubic).norm(),
            }
        })
        .collect();
    let max_residual = samples.iter().map(|s| s.residual).fold(0.0, f64::max);
    ResidualReport { t: rate.t, samples, max_residual }
}

/// Initial data of `cfg` with every bin above `ξ_max/3` removed, renormalized to `ε₀`.
///
/// Pair sums of three such inputs stay on the lattice, so composed bilinear
/// sums and the trilinear sums see the same frequencies.
pub fn band_limited_data(cfg: &crate::config::RunConfig) -> Result<Field> {
    let (u, _) = crate::evolution::make_initial_data(cfg)?;
    let grid = u.grid().clone();
    let cut = grid.xi_max() / 3.0;
    let spec: Vec<C64> =
        u.spectrum().iter().zip(grid.xis()).map(|(z, x)| if x.abs() > cut { C64::new(0.0, 0.0) } else { *z }).collect();
    let v = Field::from_spectrum(&grid, spec, 0.0)?;
    let q = crate::evolution::mainhyp(&v, cfg.n_sob, cfg.p1).total;
    if !(q > 0.0) {
        return Ok(v);
    }
    Ok(v.scale(cfg.eps0 / q))
}
