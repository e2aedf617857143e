//! Batch verification suites: S^∞ symbol bounds, the linear dispersive
//! estimate, the interpolation inequality, algebraic identities and the
//! fast-versus-direct nonlinearity oracle.

use std::f64::consts::PI;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bilinear::{direct_lattice, real_part_doubled, LatticeSymbol, LatticeTables, NonlinearPlan};
use crate::error::{Error, Result};
use crate::config::RunConfig;
use crate::energies::EnergyContext;
use crate::evolution::{make_initial_data, Evolver};
use crate::scattering::{band_limited_data, cubic_rhs_check, fit_line, profile_rate, NormalForm, ResidualReport};
use crate::spectral_core::{lambda, phi_band, pow2, weight_m, Field, Grid, C64};
use crate::symbols::{
    chi, ctilde, ctilde_complex, euler_chi, eval_cubic_complex, phase_minus, phase_plus, q, q0, q1, q2, qn,
    sinfty_norms, BilinearSymbol, DyadicTriple, Localization, Signature, SymbolName, DEFAULT_GUARD,
};

pub const SUITES: [&str; 5] = ["symbols", "dispersive", "interpolation", "identities", "oracle"];

/// One named pass/fail check inside a suite.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub limit: f64,
    pub passed: bool,
}

impl Check {
    fn at_most(name: impl Into<String>, value: f64, limit: f64) -> Check {
        Check { name: name.into(), value, limit, passed: value <= limit }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub records: Option<serde_json::Value>,
}

impl SuiteReport {
    fn new(suite: &str, seed: u64, checks: Vec<Check>, records: Option<serde_json::Value>) -> SuiteReport {
        let passed = checks.iter().all(|c| c.passed);
        SuiteReport { suite: suite.into(), seed, passed, checks, records }
    }

    /// Writes `report_<suite>.json` into `dir`.
    pub fn save(&self, dir: &Path) -> Result<PathBuf> {
        fs::create_dir_all(dir)?;
        let path = dir.join(format!("report_{}.json", self.suite));
        let text = if self.suite == "symbols" { serde_json::to_string(self)? } else { serde_json::to_string_pretty(self)? };
        fs::write(&path, text)?;
        Ok(path)
    }
}

// ---------------------------------------------------------------------------
// Symbol bounds

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Q0,
    QN,
    MN,
    /// `1/(|ξ|^{3/2}−|η|^{3/2}−|ξ−η|^{3/2})`
    Phase,
    Q,
    Q1,
    Q2,
    M1,
    M2,
    M3,
    M4,
    M5,
    A,
    B,
    /// `q_N − i|ξ−η|^{1/2}ξ` where `|ξ−η| ≪ |ξ| ≈ |η|`
    QNAsym,
    /// `m_N + ((4N−2)/3)|ξ−η|^{1/2}ξ/|ξ|^{3/2}` in the same regime
    MNAsym,
    /// Cubic coefficient localized at `(ξ₀+x, ξ₀+y, ξ₀+x+y)` for fixed `ξ₀`.
    Cubic(Signature),
}

const BILINEAR: [Family; 16] = [
    Family::Q0,
    Family::QN,
    Family::MN,
    Family::Phase,
    Family::Q,
    Family::Q1,
    Family::Q2,
    Family::M1,
    Family::M2,
    Family::M3,
    Family::M4,
    Family::M5,
    Family::A,
    Family::B,
    Family::QNAsym,
    Family::MNAsym,
];

impl Family {
    pub const ALL: [Family; 19] = [
        Family::Q0,
        Family::QN,
        Family::MN,
        Family::Phase,
        Family::Q,
        Family::Q1,
        Family::Q2,
        Family::M1,
        Family::M2,
        Family::M3,
        Family::M4,
        Family::M5,
        Family::A,
        Family::B,
        Family::QNAsym,
        Family::MNAsym,
        Family::Cubic(Signature::PPM),
        Family::Cubic(Signature::PPP),
        Family::Cubic(Signature::MMP),
    ];

    /// Families run by `verify symbols` without `--family`.
    pub const DEFAULT: [Family; 16] = BILINEAR;

    pub fn as_str(&self) -> &'static str {
        match self {
            Family::Q0 => "q0",
            Family::QN => "qN",
            Family::MN => "mN",
            Family::Phase => "phase",
            Family::Q => "q",
            Family::Q1 => "q1",
            Family::Q2 => "q2",
            Family::M1 => "m1",
            Family::M2 => "m2",
            Family::M3 => "m3",
            Family::M4 => "m4",
            Family::M5 => "m5",
            Family::A => "a",
            Family::B => "b",
            Family::QNAsym => "qN_asym",
            Family::MNAsym => "mN_asym",
            Family::Cubic(Signature::PPM) => "c_ppm",
            Family::Cubic(Signature::PPP) => "c_ppp",
            Family::Cubic(Signature::MMP) => "c_mmp",
        }
    }

    fn slot(&self) -> usize {
        BILINEAR.iter().position(|f| f == self).unwrap_or(usize::MAX)
    }

    fn asymptotic(&self) -> bool {
        matches!(self, Family::QNAsym | Family::MNAsym)
    }

    /// Right-hand side of the bound at a triple.
    pub fn bound(&self, t: DyadicTriple) -> f64 {
        let (k, k1, k2) = (t.k as f64, t.k1 as f64, t.k2 as f64);
        let ind = t.indicator(15);
        let e = |x: f64| 2f64.powf(x);
        let hi1 = (t.k1.max(0)) as f64;
        match self {
            Family::Q0 | Family::QN | Family::Q => e(k1 / 2.0 + k2) * ind,
            Family::MN | Family::M1 => e(k1 / 2.0 - k2 / 2.0) * ind,
            Family::Phase => 1.0 / (e(k1.min(k2)) * e(k.max(k2) / 2.0)),
            Family::Q1 => e(2.0 * k - 2.0 * hi1 + k1 / 2.0 + k2) * ind,
            Family::Q2 => e(2.0 * k + k1 / 2.0 + k2) * ind,
            Family::M2 | Family::M3 => e((k2 - k1) / 2.0 + 2.0 * k - 2.0 * hi1) * ind,
            Family::M4 | Family::M5 => e((k2 - k1) / 2.0 + 2.0 * k) * ind,
            Family::A | Family::B => e((k2 - k1) / 2.0) * ind,
            Family::QNAsym => e(1.5 * k1),
            Family::MNAsym => e(k1 - k2),
            Family::Cubic(_) => {
                let mut l = [t.k, t.k1, t.k2];
                l.sort_unstable();
                e(4.0 * l[2] as f64 + (l[1] - l[0]) as f64 / 2.0)
            }
        }
    }

    /// Triples tested for a dyadic box `[lo, hi]`. Bilinear triples outside `X`
    /// are kept and reported as skipped.
    pub fn triples(&self, lo: i32, hi: i32) -> Vec<DyadicTriple> {
        let mut out = Vec::new();
        if self.asymptotic() {
            // |k − k₂| ≤ 4 and k₁ + 40 ≤ max(k, k₂), with the separation ranging over as many values as the box
            let width = hi - lo + 1;
            for k in lo..=hi {
                for k2 in (k - 4).max(lo)..=(k + 4).min(hi) {
                    for j in 0..width {
                        out.push(DyadicTriple::new(k, k.max(k2) - 40 - j, k2));
                    }
                }
            }
            return out;
        }
        for k in lo..=hi {
            for k1 in lo..=hi {
                for k2 in lo..=hi {
                    let t = DyadicTriple::new(k, k1, k2);
                    out.push(t);
                }
            }
        }
        out
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Family> {
        Family::ALL
            .iter()
            .find(|f| f.as_str() == s)
            .copied()
            .ok_or_else(|| Error::Config(format!("unknown symbol family `{s}`")))
    }
}

/// `|ξ|^{3/2} − |η|^{3/2}` without cancellation when `ξ−η` is small.
fn lambda_diff(xi: f64, x: f64, eta: f64) -> f64 {
    if xi * eta > 0.0 {
        let (a, b) = (xi.abs(), eta.abs());
        eta.signum() * x * (a * a + a * b + b * b) / (a.powf(1.5) + b.powf(1.5))
    } else {
        lambda(xi) - lambda(eta)
    }
}

fn guarded(num: C64, den: f64) -> C64 {
    if den.abs() < DEFAULT_GUARD {
        C64::new(0.0, 0.0)
    } else {
        num / den
    }
}

/// All bilinear families at `(ξ, ξ−η, η)`, in the order of `BILINEAR`.
///
/// Uses `x = ξ−η` as given, so the near-diagonal families keep their
/// relative accuracy when `|x| ≪ |ξ|`.
pub fn bilinear_family_values(v: &[f64; 3], n: i32, out: &mut [C64; 16]) {
    let (xi, x, eta) = (v[0], v[1], v[2]);
    let i = C64::new(0.0, 1.0);
    let zero = C64::new(0.0, 0.0);
    let cxy = chi(x, eta);
    let csw = chi(-x, xi);
    let exy = euler_chi(x, eta);
    let h = x.abs().sqrt();
    let ld = lambda_diff(xi, x, eta);
    let pm = ld - lambda(x);
    let pp = ld + lambda(x);
    let (axi, aeta) = (xi.abs(), eta.abs());
    let nn = n as f64;

    let q0v = C64::new(0.0, cxy * h * eta);
    let qnv = if aeta > 0.0 { q0v * (axi / aeta).powi(n) } else { zero };
    let q0sw = C64::new(0.0, csw * h * xi);
    let same = xi * eta > 0.0;
    let ell = if same { (x / eta).ln_1p() } else { 0.0 };
    // both numerator and phase are free of cancellation here, so only an exact zero is guarded
    let mn = if same && cxy == csw {
        let num = cxy * h * eta * (((1.0 - nn) * ell).exp_m1() - (nn * ell).exp_m1());
        C64::new(if pm == 0.0 { 0.0 } else { num / pm }, 0.0)
    } else {
        let qnsw = if axi > 0.0 { q0sw * (aeta / axi).powi(n) } else { zero };
        guarded(-i * (qnv.conj() + qnsw), pm)
    };
    let qv = q0v * (weight_m(xi) / weight_m(eta));
    let q1v = q0v * (weight_m(xi) / weight_m(x));
    let q2v = C64::new(0.0, -weight_m(xi) * h * eta * exy);
    let qsw = q0sw * (weight_m(eta) / weight_m(xi));

    out[0] = q0v;
    out[1] = qnv;
    out[2] = mn;
    out[3] = guarded(C64::new(1.0, 0.0), pm);
    out[4] = qv;
    out[5] = q1v;
    out[6] = q2v;
    out[7] = guarded(i * (qv + qsw.conj()), pm);
    out[8] = guarded(i * q1v, pm);
    out[9] = guarded(i * q1v, pp);
    out[10] = guarded(i * q2v, pm);
    out[11] = guarded(i * q2v, pp);
    out[12] = guarded(i * q0v, pm);
    out[13] = guarded(i * q0v, pp);
    out[14] = if same {
        i * h * (cxy * eta * (nn * ell).exp_m1() + (cxy - 1.0) * eta - x)
    } else {
        qnv - i * h * xi
    };
    out[15] = if axi > 0.0 { mn + (4.0 * nn - 2.0) / 3.0 * h * xi / axi.powf(1.5) } else { zero };
}

/// Sobolev index used by `q_N` and `m_N` in the suite.
pub const SUITE_N: i32 = 10;

/// Frequency `ξ₀` at which the cubic families are localized.
pub const CUBIC_XI0: f64 = 1.0;

#[derive(Clone, Debug, Serialize)]
pub struct BoundRecord {
    pub family: String,
    pub triple: DyadicTriple,
    pub resolution: usize,
    pub measured: f64,
    pub bound_rhs: f64,
    /// `None` when both sides vanish (skipped).
    pub ratio: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilySummary {
    pub family: String,
    pub triples: usize,
    pub skipped: usize,
    pub max_ratio: f64,
    pub max_ratio_refined: f64,
    pub argmax: Option<DyadicTriple>,
    /// `max_ratio_refined / max_ratio`.
    pub change: f64,
    pub passed: bool,
}

#[derive(Clone, Debug)]
pub struct SymbolOptions {
    pub families: Vec<Family>,
    pub lo: i32,
    pub hi: i32,
    /// Coarse resolution; the suite also measures at twice this.
    pub resolution: usize,
}

impl Default for SymbolOptions {
    fn default() -> Self {
        SymbolOptions { families: Family::DEFAULT.to_vec(), lo: -10, hi: 9, resolution: 64 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SymbolReport {
    pub lo: i32,
    pub hi: i32,
    pub resolution: usize,
    pub summaries: Vec<FamilySummary>,
    pub records: Vec<BoundRecord>,
}

/// Measured norms of several families over one triple set at one resolution.
fn measure(families: &[Family], triples: &[DyadicTriple], resolution: usize) -> Result<Vec<Vec<f64>>> {
    let mut out = vec![Vec::with_capacity(triples.len()); families.len()];
    let cubic = families.iter().any(|f| matches!(f, Family::Cubic(_)));
    let mut full = [C64::new(0.0, 0.0); 16];
    for &t in triples {
        let vals = if cubic {
            let loc = Localization {
                scales: [t.k, t.k1, t.k2],
                coeffs: [1.0, 1.0, -1.0],
                offset: CUBIC_XI0,
                widened: true,
            };
            sinfty_norms(&loc, resolution, families.len(), |v, o| {
                let (eta, sigma) = (CUBIC_XI0 - v[0], CUBIC_XI0 - v[0] - v[1]);
                for (slot, f) in o.iter_mut().zip(families) {
                    *slot = match f {
                        Family::Cubic(s) => C64::new(eval_cubic_complex(*s, CUBIC_XI0, eta, sigma).re, 0.0),
                        _ => C64::new(0.0, 0.0),
                    };
                }
            })?
        } else if !t.in_x() {
            vec![0.0; families.len()]
        } else {
            sinfty_norms(&Localization::bilinear(t), resolution, families.len(), |v, o| {
                bilinear_family_values(v, SUITE_N, &mut full);
                for (slot, f) in o.iter_mut().zip(families) {
                    *slot = full[f.slot()];
                }
            })?
        };
        for (col, v) in out.iter_mut().zip(vals) {
            col.push(v);
        }
    }
    Ok(out)
}

/// Fitted constants per family at `resolution` and `2·resolution`.
pub fn suite_symbol_bounds(opts: &SymbolOptions) -> Result<SymbolReport> {
    let mut groups: Vec<(Vec<Family>, Vec<DyadicTriple>)> = Vec::new();
    let mut push = |fams: Vec<Family>, lo: i32, hi: i32| {
        if let Some(f) = fams.first() {
            let t = f.triples(lo, hi);
            groups.push((fams, t));
        }
    };
    let pick = |pred: &dyn Fn(&Family) -> bool| -> Vec<Family> { opts.families.iter().copied().filter(|f| pred(f)).collect() };
    push(pick(&|f| !f.asymptotic() && !matches!(f, Family::Cubic(_))), opts.lo, opts.hi);
    push(pick(&|f| f.asymptotic()), opts.lo, opts.hi);
    push(pick(&|f| matches!(f, Family::Cubic(_))), opts.lo, opts.hi);

    let mut summaries = Vec::new();
    let mut records = Vec::new();
    for (fams, triples) in &groups {
        let coarse = measure(fams, triples, opts.resolution)?;
        let fine = measure(fams, triples, 2 * opts.resolution)?;
        for (fi, fam) in fams.iter().enumerate() {
            let mut s = FamilySummary {
                family: fam.to_string(),
                triples: triples.len(),
                skipped: 0,
                max_ratio: 0.0,
                max_ratio_refined: 0.0,
                argmax: None,
                change: 1.0,
                passed: true,
            };
            for (ti, &t) in triples.iter().enumerate() {
                let rhs = fam.bound(t);
                let outside = !matches!(fam, Family::Cubic(_)) && !t.in_x();
                for (res, m) in [(opts.resolution, coarse[fi][ti]), (2 * opts.resolution, fine[fi][ti])] {
                    if outside && res != opts.resolution {
                        continue;
                    }
                    let ratio = if outside || m == 0.0 && rhs == 0.0 {
                        None
                    } else if rhs == 0.0 {
                        Some(f64::INFINITY)
                    } else {
                        Some(m / rhs)
                    };
                    match ratio {
                        None if res == opts.resolution => s.skipped += 1,
                        Some(r) if res == opts.resolution => {
                            if r > s.max_ratio {
                                s.max_ratio = r;
                                s.argmax = Some(t);
                            }
                        }
                        Some(r) => s.max_ratio_refined = s.max_ratio_refined.max(r),
                        None => {}
                    }
                    records.push(BoundRecord {
                        family: fam.to_string(),
                        triple: t,
                        resolution: res,
                        measured: m,
                        bound_rhs: rhs,
                        ratio: ratio.map(|r| if r.is_finite() { r } else { f64::MAX }),
                    });
                }
            }
            s.change = if s.max_ratio == 0.0 && s.max_ratio_refined == 0.0 {
                1.0
            } else {
                s.max_ratio_refined / s.max_ratio
            };
            s.passed = s.max_ratio.is_finite()
                && s.max_ratio_refined.is_finite()
                && s.change < 2.0
                && s.change > 0.5;
            summaries.push(s);
        }
    }
    Ok(SymbolReport { lo: opts.lo, hi: opts.hi, resolution: opts.resolution, summaries, records })
}

impl SymbolReport {
    pub fn to_suite(&self) -> Result<SuiteReport> {
        let checks = self
            .summaries
            .iter()
            .map(|s| Check {
                name: format!("{}: refined/coarse fitted constant", s.family),
                value: s.change,
                limit: 2.0,
                passed: s.passed,
            })
            .collect();
        let records = serde_json::json!({ "summaries": self.summaries, "triples": self.records });
        Ok(SuiteReport::new("symbols", 0, checks, Some(records)))
    }
}

// ---------------------------------------------------------------------------
// Random smooth spectra

/// `ĝ(ξ) = Σ cⱼ·exp(−(ξ−μⱼ)²/2σⱼ²)`.
#[derive(Clone, Debug, Serialize)]
pub struct BumpSpectrum {
    pub bumps: Vec<(f64, f64, f64, f64)>,
}

impl BumpSpectrum {
    /// `count` bumps with centers `±[mu_lo, mu_hi]` and widths in `[s_lo, s_hi]`.
    pub fn random(rng: &mut ChaCha8Rng, count: usize, mu: (f64, f64), sigma: (f64, f64)) -> BumpSpectrum {
        let bumps = (0..count)
            .map(|_| {
                let sign = if rng.gen::<bool>() { 1.0 } else { -1.0 };
                let m = sign * rng.gen_range(mu.0..mu.1);
                let s = rng.gen_range(sigma.0..sigma.1);
                (rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5, m, s)
            })
            .collect();
        BumpSpectrum { bumps }
    }

    pub fn gaussian(mu: f64, sigma: f64) -> BumpSpectrum {
        BumpSpectrum { bumps: vec![(1.0, 0.0, mu, sigma)] }
    }

    pub fn eval(&self, xi: f64) -> C64 {
        self.bumps
            .iter()
            .map(|&(re, im, m, s)| C64::new(re, im) * (-(xi - m).powi(2) / (2.0 * s * s)).exp())
            .sum()
    }

    pub fn deriv(&self, xi: f64) -> C64 {
        self.bumps
            .iter()
            .map(|&(re, im, m, s)| C64::new(re, im) * (-(xi - m) / (s * s)) * (-(xi - m).powi(2) / (2.0 * s * s)).exp())
            .sum()
    }

    fn support(&self) -> (f64, f64) {
        let lo = self.bumps.iter().map(|b| b.2 - 10.0 * b.3).fold(f64::INFINITY, f64::min);
        let hi = self.bumps.iter().map(|b| b.2 + 10.0 * b.3).fold(f64::NEG_INFINITY, f64::max);
        (lo, hi)
    }

    fn min_width(&self) -> f64 {
        self.bumps.iter().map(|b| b.3).fold(f64::INFINITY, f64::min)
    }

    /// `(‖ĝ‖_∞, ‖ĝ‖_{L²}, ‖∂ĝ‖_{L²})` by fine quadrature.
    pub fn norms(&self) -> (f64, f64, f64) {
        let (lo, hi) = self.support();
        let h = self.min_width() / 200.0;
        let steps = ((hi - lo) / h).ceil() as usize;
        let (mut sup, mut l2, mut d2) = (0.0f64, 0.0, 0.0);
        for s in 0..=steps {
            let xi = lo + s as f64 * h;
            let g = self.eval(xi).norm();
            sup = sup.max(g);
            l2 += g * g * h;
            d2 += self.deriv(xi).norm_sqr() * h;
        }
        (sup, l2.sqrt(), d2.sqrt())
    }
}

/// `F⁻¹[φ_k(ξ)·ĝ(ξ/2^k)·e^{itΛ(ξ)}]` sampled on `grid`.
fn evolve_band(grid: &Grid, g: &BumpSpectrum, k: i32, t: f64) -> (Vec<C64>, Vec<C64>) {
    let s = pow2(k);
    let hat: Vec<C64> = grid
        .xis()
        .iter()
        .map(|&xi| {
            let p = phi_band(k, xi);
            if p == 0.0 {
                return C64::new(0.0, 0.0);
            }
            g.eval(xi / s) * p * C64::from_polar(1.0, t * lambda(xi))
        })
        .collect();
    (grid.inverse(&hat), hat)
}

/// A grid holding `e^{itΛ}P_k f` for `|x| ≤ reach` with `pad` samples per shortest wavelength.
fn band_grid(k: i32, reach: f64, pad: f64) -> Result<Grid> {
    let l = 2.5 * reach;
    let xi_max = pad * 1.6 * pow2(k);
    let n = ((l * xi_max / PI).ceil() as usize).next_power_of_two().max(64);
    Grid::new(l, n)
}

// ---------------------------------------------------------------------------
// Dispersive estimate

#[derive(Clone, Debug, Serialize)]
pub struct DispersiveSample {
    pub trial: usize,
    pub k: i32,
    pub t: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
}

#[derive(Clone, Debug)]
pub struct DispersiveOptions {
    pub ks: Vec<i32>,
    pub times: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
}

impl Default for DispersiveOptions {
    fn default() -> Self {
        DispersiveOptions { ks: (-4..=4).collect(), times: vec![1.0, 10.0, 100.0, 1000.0], trials: 8, seed: 17 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DispersiveReport {
    pub fitted_c: f64,
    pub decay_fit: crate::scattering::LineFit,
    pub zero_lhs: f64,
    pub l2_drift: f64,
    pub samples: Vec<DispersiveSample>,
}

fn reach(k: i32, t: f64, width: f64) -> f64 {
    let vmax = 1.5 * (1.6 * pow2(k)).sqrt();
    vmax * t + 12.0 * pow2(-k) / width
}

fn sup_norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `‖e^{itΛ}P_k f‖_∞ / [t^{−1/2}2^{k/4}‖f̂‖_∞ + t^{−3/5}2^{−2k/5}(2^k‖∂f̂‖₂ + ‖f̂‖₂)]` for `f̂ = ĝ(·/2^k)`.
pub fn dispersive_ratio(g: &BumpSpectrum, k: i32, t: f64) -> Result<(f64, f64)> {
    let grid = band_grid(k, reach(k, t, g.min_width()), 4.0)?;
    let (u, _) = evolve_band(&grid, g, k, t);
    let lhs = sup_norm(&u);
    let (sup, l2, d2) = g.norms();
    let s = pow2(k);
    let (f_sup, f_l2, f_d2) = (sup, s.sqrt() * l2, d2 / s.sqrt());
    let rhs = t.powf(-0.5) * s.powf(0.25) * f_sup + t.powf(-0.6) * s.powf(-0.4) * (s * f_d2 + f_l2);
    Ok((lhs, rhs))
}

pub fn suite_dispersive(opts: &DispersiveOptions) -> Result<DispersiveReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut samples = Vec::new();
    for trial in 0..opts.trials {
        let count = rng.gen_range(1..=3);
        let g = BumpSpectrum::random(&mut rng, count, (0.7, 1.4), (0.05, 0.3));
        for &k in &opts.ks {
            for &t in &opts.times {
                let (lhs, rhs) = dispersive_ratio(&g, k, t)?;
                samples.push(DispersiveSample { trial, k, t, lhs, rhs, ratio: lhs / rhs });
            }
        }
    }
    let fitted_c = samples.iter().map(|s| s.ratio).fold(0.0, f64::max);

    // fixed Gaussian profile e^{−2x²}: decay of the k = 0 piece
    let g = BumpSpectrum::gaussian(0.0, 2.0);
    let grid = band_grid(0, reach(0, 1000.0, 2.0), 4.0)?;
    let ts: Vec<f64> = (0..20).map(|i| 10f64 * 100f64.powf(i as f64 / 19.0)).collect();
    let mut x = Vec::new();
    let mut y = Vec::new();
    let mut l2_drift = 0.0f64;
    let (_, hat0) = evolve_band(&grid, &g, 0, 0.0);
    let l2_0 = hat0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for &t in &ts {
        let (u, hat) = evolve_band(&grid, &g, 0, t);
        x.push(t.ln());
        y.push(sup_norm(&u).ln());
        let l2 = hat.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        l2_drift = l2_drift.max(((l2 - l2_0) / l2_0).abs());
    }
    let decay_fit = fit_line(&x, &y).ok_or(Error::NonFinite("decay fit"))?;
    let zero = BumpSpectrum { bumps: vec![(0.0, 0.0, 1.0, 0.2)] };
    let (u, _) = evolve_band(&Grid::new(256.0, 1024)?, &zero, 0, 10.0);
    Ok(DispersiveReport { fitted_c, decay_fit, zero_lhs: sup_norm(&u), l2_drift, samples })
}

impl DispersiveReport {
    pub fn to_suite(&self, seed: u64) -> Result<SuiteReport> {
        let checks = vec![
            Check::at_most("fitted constant", self.fitted_c, 10.0),
            Check::at_most("|decay slope + 1/2|", (self.decay_fit.slope + 0.5).abs(), 0.05),
            Check::at_most("zero profile", self.zero_lhs, 0.0),
            Check::at_most("relative L2 drift", self.l2_drift, 1e-12),
        ];
        Ok(SuiteReport::new("dispersive", seed, checks, Some(serde_json::to_value(self)?)))
    }
}

// ---------------------------------------------------------------------------
// Interpolation inequality

#[derive(Clone, Debug, Serialize)]
pub struct InterpolationSample {
    pub trial: usize,
    pub k: i32,
    /// `‖P̂_k f‖²_∞ / ‖P_k f‖²_{L¹}`
    pub first: f64,
    /// `‖P_k f‖²_{L¹} / 2^{−k}‖f̂‖₂(2^k‖∂f̂‖₂ + ‖f̂‖₂)`
    pub second: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct InterpolationReport {
    pub fitted_c: f64,
    pub violations: usize,
    /// Spread of both ratios across `k` for one rescaled Gaussian.
    pub rescaling_spread: f64,
    pub zero_case: (f64, f64),
    pub samples: Vec<InterpolationSample>,
}

/// Both ratios for `f̂ = ĝ(·/2^k)`.
pub fn interpolation_ratios(g: &BumpSpectrum, k: i32) -> Result<(f64, f64, f64, f64)> {
    let s = pow2(k);
    let (_, hi) = g.support();
    let (lo, _) = g.support();
    let extent = hi.abs().max(lo.abs()).max(1.6);
    let l = 48.0 / g.min_width() / s;
    let n = ((l * 1.5 * extent * s / PI).ceil() as usize).next_power_of_two().max(256);
    let grid = Grid::new(l, n)?;
    let xis = grid.xis();
    let full: Vec<C64> = xis.iter().map(|&xi| g.eval(xi / s)).collect();
    let band: Vec<C64> = full.iter().zip(&xis).map(|(z, &xi)| z * phi_band(k, xi)).collect();
    let dxi = grid.dxi();
    let sup_hat = sup_norm(&band);
    let l1: f64 = grid.inverse(&band).iter().map(|z| z.norm()).sum::<f64>() * grid.dx();
    let l2 = (full.iter().map(|z| z.norm_sqr()).sum::<f64>() * dxi).sqrt();
    let d2 = (xis.iter().map(|&xi| (g.deriv(xi / s) / s).norm_sqr()).sum::<f64>() * dxi).sqrt();
    let rhs = l2 * (s * d2 + l2) / s;
    Ok((sup_hat * sup_hat, l1 * l1, rhs, 0.0))
}

fn ratio_or_zero(a: f64, b: f64) -> f64 {
    if a == 0.0 && b == 0.0 {
        0.0
    } else {
        a / b
    }
}

pub fn suite_interpolation(trials: usize, seed: u64) -> Result<InterpolationReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples = Vec::new();
    for trial in 0..trials {
        for k in -10..=10 {
            let count = rng.gen_range(1..=4);
            let g = BumpSpectrum::random(&mut rng, count, (0.3, 3.0), (0.05, 0.5));
            let (a, b, c, _) = interpolation_ratios(&g, k)?;
            samples.push(InterpolationSample { trial, k, first: ratio_or_zero(a, b), second: ratio_or_zero(b, c) });
        }
    }
    let c = 10.0;
    let fitted_c = samples.iter().map(|s| s.first.max(s.second)).fold(0.0, f64::max);
    let violations = samples.iter().filter(|s| !(s.first <= c && s.second <= c)).count();

    let gauss = BumpSpectrum::gaussian(1.0, 0.3);
    let mut firsts = Vec::new();
    let mut seconds = Vec::new();
    for k in -10..=10 {
        let (a, b, c, _) = interpolation_ratios(&gauss, k)?;
        firsts.push(a / b);
        seconds.push(b / c);
    }
    let spread = |v: &[f64]| {
        let mx = v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let mn = v.iter().cloned().fold(f64::INFINITY, f64::min);
        mx / mn - 1.0
    };
    let rescaling_spread = spread(&firsts).max(spread(&seconds));
    let zero = BumpSpectrum { bumps: vec![(0.0, 0.0, 1.0, 0.3)] };
    let (a, b, c, _) = interpolation_ratios(&zero, 0)?;
    let zero_case = (a.max(b), c);
    Ok(InterpolationReport { fitted_c, violations, rescaling_spread, zero_case, samples })
}

impl InterpolationReport {
    pub fn to_suite(&self, seed: u64) -> Result<SuiteReport> {
        let checks = vec![
            Check::at_most("fitted constant", self.fitted_c, 10.0),
            Check::at_most("violations", self.violations as f64, 0.0),
            Check::at_most("rescaling spread", self.rescaling_spread, 0.05),
            Check::at_most("zero field", self.zero_case.0, self.zero_case.1),
        ];
        Ok(SuiteReport::new("interpolation", seed, checks, Some(serde_json::to_value(self)?)))
    }
}

// ---------------------------------------------------------------------------
// Identities

/// Random point with `η` in a dyadic band and `χ(ξ−η, η) > 0`.
fn in_support_point(rng: &mut ChaCha8Rng) -> (f64, f64) {
    loop {
        let eta: f64 = rng.gen_range(0.05..40.0) * if rng.gen::<bool>() { 1.0 } else { -1.0 };
        let x: f64 = rng.gen_range(-3.0..3.0) * eta.abs();
        if chi(x, eta) > 0.0 {
            return (x + eta, eta);
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    /// Largest relative defect of each resonance identity.
    pub identities: Vec<(String, f64)>,
    pub inequality_violations: usize,
    pub inequality_at_one: f64,
    /// Largest `|Re|` of imaginary symbols and `|Im|/(1+|Re|)` of real ones.
    pub reality: Vec<(String, f64)>,
    pub ctilde_one: f64,
    pub ctilde_one_rel_err: f64,
    pub ctilde_max_imag: f64,
}

pub fn suite_identities(samples: usize, inequality_samples: usize, seed: u64) -> Result<IdentityReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let i = C64::new(0.0, 1.0);
    let n = SUITE_N;
    let sym = |s: SymbolName| BilinearSymbol::with_n(s, n);
    let names = ["mN", "a", "b", "m1", "m2", "m3", "m4", "m5"];
    let mut worst = [0.0f64; 8];
    let mut reality = [0.0f64; 7];
    for _ in 0..samples {
        let (xi, eta) = in_support_point(&mut rng);
        let pm = phase_minus(xi, eta);
        let pp = phase_plus(xi, eta);
        let pairs = [
            (sym(SymbolName::MN).eval(xi, eta) * pm, -i * (qn(xi, eta, n).conj() + qn(eta, xi, n)), qn(xi, eta, n).norm()),
            (sym(SymbolName::A).eval(xi, eta) * pm, i * q0(xi, eta), 0.0),
            (sym(SymbolName::B).eval(xi, eta) * pp, i * q0(xi, eta), 0.0),
            (sym(SymbolName::M1).eval(xi, eta) * pm, i * (q(xi, eta) + q(eta, xi).conj()), q(xi, eta).norm()),
            (sym(SymbolName::M2).eval(xi, eta) * pm, i * q1(xi, eta), 0.0),
            (sym(SymbolName::M3).eval(xi, eta) * pp, i * q1(xi, eta), 0.0),
            (sym(SymbolName::M4).eval(xi, eta) * pm, i * q2(xi, eta), 0.0),
            (sym(SymbolName::M5).eval(xi, eta) * pp, i * q2(xi, eta), 0.0),
        ];
        for (w, (l, r, extra)) in worst.iter_mut().zip(pairs) {
            *w = w.max((l - r).norm() / (1.0 + r.norm() + extra));
        }
        let imag = [q0(xi, eta), qn(xi, eta, n)];
        for (slot, v) in reality.iter_mut().zip(imag) {
            *slot = slot.max(v.re.abs() / (1.0 + v.im.abs()));
        }
        let real = [SymbolName::MN, SymbolName::A, SymbolName::B, SymbolName::M1].map(|s| sym(s).eval(xi, eta));
        for (slot, v) in reality[2..6].iter_mut().zip(real) {
            *slot = slot.max(v.im.abs() / (1.0 + v.re.abs()));
        }
        let sg = rng.gen_range(-20.0..20.0);
        for s in Signature::ALL {
            let c = eval_cubic_complex(s, xi, eta, sg);
            reality[6] = reality[6].max(c.im.abs() / (1.0 + c.re.abs()));
        }
    }
    let f = |a: f64, b: f64| (a + b).powf(1.5) - b.powf(1.5) - a.powf(1.5);
    let mut violations = 0;
    for _ in 0..inequality_samples {
        let b = rng.gen_range(0.0..1e6);
        let a = rng.gen_range(0.0..=b);
        let v = f(a, b);
        let slack = 1e-12 * (a + b).powf(1.5);
        if !(v >= a * b.sqrt() / 4.0 - slack && v <= 4.0 * a * b.sqrt() + slack) {
            violations += 1;
        }
    }
    let want = -(8.0 * PI / 3.0) * (1.0 + 2f64.sqrt());
    let c1 = ctilde(1.0);
    let mut ctilde_max_imag = 0.0f64;
    for _ in 0..1000 {
        let z = ctilde_complex(rng.gen_range(0.5..64.0));
        ctilde_max_imag = ctilde_max_imag.max(z.im.abs() / (1.0 + z.re.abs()));
    }
    Ok(IdentityReport {
        identities: names.iter().zip(worst).map(|(n, w)| (n.to_string(), w)).collect(),
        inequality_violations: violations,
        inequality_at_one: f(1.0, 1.0),
        reality: ["q0", "qN", "mN", "a", "b", "m1", "cubic"]
            .iter()
            .zip(reality)
            .map(|(n, w)| (n.to_string(), w))
            .collect(),
        ctilde_one: c1,
        ctilde_one_rel_err: ((c1 - want) / want).abs(),
        ctilde_max_imag,
    })
}

impl IdentityReport {
    pub fn to_suite(&self, seed: u64) -> Result<SuiteReport> {
        let mut checks: Vec<Check> =
            self.identities.iter().map(|(n, w)| Check::at_most(format!("identity {n}"), *w, 1e-12)).collect();
        checks.extend(self.reality.iter().map(|(n, w)| Check::at_most(format!("reality {n}"), *w, 1e-12)));
        checks.push(Check::at_most("inequality violations", self.inequality_violations as f64, 0.0));
        let a1 = self.inequality_at_one;
        checks.push(Check { name: "inequality at a=b=1".into(), value: a1, limit: 4.0, passed: (0.25..=4.0).contains(&a1) });
        checks.push(Check::at_most("ctilde(1) relative error", self.ctilde_one_rel_err, 1e-10));
        checks.push(Check::at_most("ctilde imaginary part", self.ctilde_max_imag, 1e-12));
        Ok(SuiteReport::new("identities", seed, checks, Some(serde_json::to_value(self)?)))
    }
}

// ---------------------------------------------------------------------------
// Fast-versus-direct oracle

/// Random spectrum on `|j| < n/4` with a smooth envelope around `center`.
pub fn band_limited_spectrum(grid: &Grid, rng: &mut ChaCha8Rng, center: f64) -> Vec<C64> {
    let n = grid.n() as i64;
    (0..grid.n())
        .map(|i| {
            let j = grid.index(i);
            if j.abs() >= n / 4 {
                return C64::new(0.0, 0.0);
            }
            let env = (-(grid.xi(i).abs() - center).powi(2) / 2.0).exp();
            C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5) * env
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    pub n: usize,
    pub fields: usize,
    pub max_rel_err: f64,
    pub errors: Vec<f64>,
}

pub fn suite_oracle(fields: usize, n: usize, seed: u64) -> Result<OracleReport> {
    let grid = Grid::new(100.0, n)?;
    let plan = NonlinearPlan::new(&grid);
    let tables = Arc::new(LatticeTables::new(&grid));
    let q0s = LatticeSymbol::new(BilinearSymbol::new(SymbolName::Q0), &tables);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut errors = Vec::with_capacity(fields);
    for _ in 0..fields {
        let center = rng.gen_range(0.5..6.0);
        let u = band_limited_spectrum(&grid, &mut rng, center);
        let direct = direct_lattice(&grid, &q0s, &real_part_doubled(&u), &u, 0.0);
        let fast = plan.apply(&u);
        let num: f64 = fast.iter().zip(&direct).map(|(a, b)| (a - b).norm_sqr()).sum();
        let den: f64 = direct.iter().map(|b| b.norm_sqr()).sum();
        errors.push((num / den.max(1e-300)).sqrt());
    }
    let max_rel_err = errors.iter().cloned().fold(0.0, f64::max);
    Ok(OracleReport { n, fields, max_rel_err, errors })
}

impl OracleReport {
    pub fn to_suite(&self, seed: u64) -> Result<SuiteReport> {
        let checks = vec![Check::at_most("max relative L2 error", self.max_rel_err, 1e-10)];
        Ok(SuiteReport::new("oracle", seed, checks, Some(serde_json::to_value(self)?)))
    }
}

// ---------------------------------------------------------------------------
// Run-level checks

/// A finite-difference rate against its predicted value at one time.
#[derive(Clone, Debug, Serialize)]
pub struct RateSample {
    pub t: f64,
    pub measured: f64,
    pub predicted: f64,
    pub rel_err: f64,
}

impl RateSample {
    fn new(t: f64, measured: f64, predicted: f64) -> RateSample {
        RateSample { t, measured, predicted, rel_err: (measured - predicted).abs() / predicted.abs() }
    }
}

/// Spectra at steps `0..=last` of the fast IF-RK4 flow from `u0` (at time zero).
fn trajectory(u0: &Field, dt: f64, last: usize) -> Result<Vec<Vec<C64>>> {
    let ev = Evolver::new(u0.grid(), dt, true);
    let mut w = ev.to_profile(u0.spectrum(), 0.0);
    let mut out = vec![u0.spectrum().to_vec()];
    for s in 0..last {
        w = ev.step(&w, s as f64 * dt)?;
        out.push(ev.to_physical(&w, (s + 1) as f64 * dt));
    }
    Ok(out)
}

fn fd5(f: &[f64], dt: f64) -> f64 {
    (-f[4] + 8.0 * f[3] - 8.0 * f[1] + f[0]) / (12.0 * dt)
}

/// `d/dt[E₂+E₃]` by the five-point stencil against `A₂+A₃+A₄`, centered at each step in `centers`.
pub fn energy_identity(u0: &Field, n_sob: i32, dt: f64, centers: &[usize]) -> Result<Vec<RateSample>> {
    let last = centers.iter().max().copied().unwrap_or(0) + 2;
    if centers.iter().any(|&c| c < 2) {
        return Err(Error::Config("energy identity centers must be ≥ 2 steps in".into()));
    }
    let traj = trajectory(u0, dt, last)?;
    let ctx = EnergyContext::new(u0.grid(), n_sob, 0.0);
    let mut out = Vec::new();
    for &c in centers {
        let e: Vec<f64> = (c - 2..=c + 2).map(|s| ctx.e2n(&traj[s]) + ctx.e3n(&traj[s]).re).collect();
        out.push(RateSample::new(c as f64 * dt, fd5(&e, dt), ctx.quartic_a(&traj[c]).sum()));
    }
    Ok(out)
}

/// `d/dt[E_w^{(2)}+ΣE_{w,l}^{(3)}]` against `ΣJ_l`, as [`energy_identity`].
pub fn weighted_identity(u0: &Field, n_sob: i32, dt: f64, centers: &[usize]) -> Result<Vec<RateSample>> {
    let last = centers.iter().max().copied().unwrap_or(0) + 2;
    if centers.iter().any(|&c| c < 2) {
        return Err(Error::Config("weighted identity centers must be ≥ 2 steps in".into()));
    }
    let traj = trajectory(u0, dt, last)?;
    let grid = u0.grid();
    let ctx = EnergyContext::new(grid, n_sob, 0.0);
    let ev = Evolver::new(grid, dt, true);
    let mut out = Vec::new();
    for &c in centers {
        let mut e = Vec::with_capacity(5);
        let mut j = 0.0;
        for s in c - 2..=c + 2 {
            let t = s as f64 * dt;
            let u = Field::from_spectrum(grid, traj[s].clone(), t)?;
            let (z, _) = ctx.z(&u, t, &ev);
            e.push(ctx.ew(u.spectrum(), &z).total());
            if s == c {
                let nl = ctx.nonlinearity(u.spectrum());
                let nz = ctx.nz(u.spectrum(), &z).total();
                j = ctx.j_terms(u.spectrum(), &z, &nl, &nz).iter().sum();
            }
        }
        out.push(RateSample::new(c as f64 * dt, fd5(&e, dt), j));
    }
    Ok(out)
}

/// Values of a quantity under `u₀ → λu₀` and the fitted power of `λ`.
#[derive(Clone, Debug, Serialize)]
pub struct AmplitudeSweep {
    pub lambdas: Vec<f64>,
    pub values: Vec<f64>,
    pub exponent: f64,
}

impl AmplitudeSweep {
    fn fit(lambdas: &[f64], values: Vec<f64>) -> Result<AmplitudeSweep> {
        let x: Vec<f64> = lambdas.iter().map(|l| l.ln()).collect();
        let y: Vec<f64> = values.iter().map(|v| v.ln()).collect();
        let fit = fit_line(&x, &y).ok_or(Error::NonFinite("amplitude sweep"))?;
        if !fit.slope.is_finite() {
            return Err(Error::NonFinite("amplitude sweep"));
        }
        Ok(AmplitudeSweep { lambdas: lambdas.to_vec(), values, exponent: fit.slope })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DriftSweep {
    /// `max_t |E₂(t) − E₂(0)|`
    pub e2: AmplitudeSweep,
    /// `max_t |(E₂+E₃)(t) − (E₂+E₃)(0)|`
    pub corrected: AmplitudeSweep,
}

/// Energy drift over `steps` steps of `cfg.dt` for the initial data of `cfg`
/// with `ε₀` scaled by each `λ`, sampled every `every` steps.
pub fn drift_sweep(cfg: &RunConfig, lambdas: &[f64], steps: usize, every: usize) -> Result<DriftSweep> {
    let grid = Grid::new(cfg.l, cfg.n)?;
    let ctx = EnergyContext::new(&grid, cfg.n_sob, 0.0);
    let ev = Evolver::new(&grid, cfg.dt, true);
    let (mut d2, mut dc) = (Vec::new(), Vec::new());
    for &lam in lambdas {
        let c = RunConfig { eps0: cfg.eps0 * lam, ..cfg.clone() };
        let (u0, _) = make_initial_data(&c)?;
        let energies = |h: &[C64]| {
            let e2 = ctx.e2n(h);
            (e2, e2 + ctx.e3n(h).re)
        };
        let (a0, b0) = energies(u0.spectrum());
        let mut w = ev.to_profile(u0.spectrum(), 0.0);
        let (mut da, mut db) = (0.0f64, 0.0f64);
        for s in 0..steps {
            w = ev.step(&w, s as f64 * cfg.dt)?;
            if (s + 1) % every.max(1) == 0 || s + 1 == steps {
                let (a, b) = energies(&ev.to_physical(&w, (s + 1) as f64 * cfg.dt));
                da = da.max((a - a0).abs());
                db = db.max((b - b0).abs());
            }
        }
        d2.push(da);
        dc.push(db);
    }
    Ok(DriftSweep { e2: AmplitudeSweep::fit(lambdas, d2)?, corrected: AmplitudeSweep::fit(lambdas, dc)? })
}

#[derive(Clone, Debug, Serialize)]
pub struct GapSweep {
    /// Cubic residual reports, one per `λ`.
    pub reports: Vec<ResidualReport>,
    /// `max_ξ |lhs − cubic|(λ) / |lhs(ξ, λ=1)|` and its fitted power of `λ`.
    pub gap: AmplitudeSweep,
}

/// Cubic right-hand-side check at `t_mid` for band-limited data of `cfg`,
/// repeated with `ε₀` scaled by each `λ` (the first entry is the reference).
pub fn gap_sweep(cfg: &RunConfig, lambdas: &[f64], t_mid: f64, dt: f64, slots: &[usize]) -> Result<GapSweep> {
    let grid = Grid::new(cfg.l, cfg.n)?;
    let nf = NormalForm::new(&grid, 0.0);
    let mut reports = Vec::new();
    for &lam in lambdas {
        let c = RunConfig { eps0: cfg.eps0 * lam, ..cfg.clone() };
        let u0 = band_limited_data(&c)?;
        let rate = profile_rate(&nf, &u0, t_mid, dt, 2, true)?;
        reports.push(cubic_rhs_check(&nf, &rate, slots));
    }
    let reference: Vec<f64> =
        reports[0].samples.iter().map(|s| C64::new(s.lhs[0], s.lhs[1]).norm()).collect();
    let gaps = reports
        .iter()
        .map(|r| r.samples.iter().zip(&reference).map(|(s, l)| s.gap / l).fold(0.0, f64::max))
        .collect();
    Ok(GapSweep { reports, gap: AmplitudeSweep::fit(lambdas, gaps)? })
}

// ---------------------------------------------------------------------------
// Dispatch

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub seed: u64,
    pub symbols: SymbolOptions,
    /// Trials for dispersive and interpolation, fields for the oracle.
    pub trials: Option<usize>,
    /// Sample count for the identity suite.
    pub samples: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { seed: 7, symbols: SymbolOptions::default(), trials: None, samples: 10_000 }
    }
}

/// Runs a suite by name.
pub fn run_suite(name: &str, opts: &VerifyOptions) -> Result<SuiteReport> {
    let mut rep = match name {
        "symbols" => suite_symbol_bounds(&opts.symbols)?.to_suite()?,
        "dispersive" => {
            let d = DispersiveOptions { seed: opts.seed, trials: opts.trials.unwrap_or(8), ..Default::default() };
            suite_dispersive(&d)?.to_suite(opts.seed)?
        }
        "interpolation" => suite_interpolation(opts.trials.unwrap_or(100), opts.seed)?.to_suite(opts.seed)?,
        "identities" => suite_identities(opts.samples, 100_000, opts.seed)?.to_suite(opts.seed)?,
        "oracle" => suite_oracle(opts.trials.unwrap_or(100), 512, opts.seed)?.to_suite(opts.seed)?,
        other => {
            return Err(Error::Config(format!("unknown suite `{other}`; available: {}", SUITES.join(", "))));
        }
    };
    rep.seed = opts.seed;
    Ok(rep)
}
