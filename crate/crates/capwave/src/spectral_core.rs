//! Grids, transforms in the continuous convention `û(ξ) = ∫ e^{-ixξ} u dx`,
//! Littlewood–Paley cutoffs, unary multipliers and norms.
//!
//! Spectra are stored in centered order: slot `i` holds frequency
//! `ξ = dxi·(i − n/2)`, so slot 0 is the single Nyquist bin.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;

/// Plateau edge of the base bump.
pub const PHI_INNER: f64 = 1.25;
/// Support edge of the base bump.
pub const PHI_OUTER: f64 = 1.6;

struct GridInner {
    l: f64,
    n: usize,
    dx: f64,
    dxi: f64,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
}

/// Truncated-line lattice. Cheap to clone.
#[derive(Clone)]
pub struct Grid(Arc<GridInner>);

impl fmt::Debug for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Grid").field("l", &self.0.l).field("n", &self.0.n).finish()
    }
}

impl PartialEq for Grid {
    fn eq(&self, other: &Self) -> bool {
        self.0.n == other.0.n && self.0.l.to_bits() == other.0.l.to_bits()
    }
}

impl Grid {
    pub fn new(l: f64, n: usize) -> Result<Self> {
        if !(l.is_finite() && l > 0.0) {
            return Err(Error::InvalidGrid(format!("domain length {l} must be positive")));
        }
        if n < 4 || !n.is_power_of_two() {
            return Err(Error::InvalidGrid(format!("point count {n} must be a power of two ≥ 4")));
        }
        let mut planner = FftPlanner::new();
        let fwd = planner.plan_fft_forward(n);
        let inv = planner.plan_fft_inverse(n);
        Ok(Grid(Arc::new(GridInner {
            l,
            n,
            dx: l / n as f64,
            dxi: 2.0 * PI / l,
            fwd,
            inv,
        })))
    }

    pub fn l(&self) -> f64 {
        self.0.l
    }
    pub fn n(&self) -> usize {
        self.0.n
    }
    pub fn dx(&self) -> f64 {
        self.0.dx
    }
    pub fn dxi(&self) -> f64 {
        self.0.dxi
    }
    pub fn xi_max(&self) -> f64 {
        self.0.dxi * (self.0.n / 2) as f64
    }

    /// Signed lattice index of slot `i`.
    #[inline]
    pub fn index(&self, i: usize) -> i64 {
        i as i64 - (self.0.n / 2) as i64
    }

    /// Slot holding signed index `j`, if it lies on the lattice.
    #[inline]
    pub fn slot(&self, j: i64) -> Option<usize> {
        let h = (self.0.n / 2) as i64;
        if j >= -h && j < h {
            Some((j + h) as usize)
        } else {
            None
        }
    }

    #[inline]
    pub fn xi(&self, i: usize) -> f64 {
        self.0.dxi * self.index(i) as f64
    }

    #[inline]
    pub fn x(&self, i: usize) -> f64 {
        -0.5 * self.0.l + i as f64 * self.0.dx
    }

    pub fn xis(&self) -> Vec<f64> {
        (0..self.n()).map(|i| self.xi(i)).collect()
    }

    pub fn xs(&self) -> Vec<f64> {
        (0..self.n()).map(|i| self.x(i)).collect()
    }

    /// Resolvable dyadic range `[⌊log₂ dxi⌋ − 2, ⌈log₂ ξ_max⌉ + 1]`.
    pub fn k_range(&self) -> (i32, i32) {
        let lo = self.dxi().log2().floor() as i32 - 2;
        let hi = self.xi_max().log2().ceil() as i32 + 1;
        (lo, hi)
    }

    /// Same domain length, twice the points. Used for dealiased products.
    pub fn doubled(&self) -> Grid {
        Grid::new(self.l(), 2 * self.n()).expect("doubling a valid grid")
    }

    /// `û_j = dx·(−1)^j·DFT_j`, returned in centered order.
    pub fn forward(&self, u: &[C64]) -> Vec<C64> {
        let n = self.n();
        assert_eq!(u.len(), n);
        let mut buf = u.to_vec();
        self.0.fwd.process(&mut buf);
        let dx = self.dx();
        (0..n)
            .map(|i| {
                let j = self.index(i);
                let v = buf[j.rem_euclid(n as i64) as usize];
                if j & 1 == 0 {
                    v * dx
                } else {
                    -v * dx
                }
            })
            .collect()
    }

    /// Inverse of [`Grid::forward`]: `u(x_p) = (1/2π)Σ_j û_j e^{i x_p ξ_j} dxi`.
    pub fn inverse(&self, hat: &[C64]) -> Vec<C64> {
        let n = self.n();
        assert_eq!(hat.len(), n);
        let mut buf = vec![C64::new(0.0, 0.0); n];
        for (i, &h) in hat.iter().enumerate() {
            let j = self.index(i);
            buf[j.rem_euclid(n as i64) as usize] = if j & 1 == 0 { h } else { -h };
        }
        self.0.inv.process(&mut buf);
        let s = 1.0 / self.l();
        buf.iter_mut().for_each(|v| *v *= s);
        buf
    }
}

fn check_finite(v: &[C64], what: &'static str) -> Result<()> {
    if v.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite(what))
    }
}

/// Complex samples on a grid with their spectrum and a time tag.
#[derive(Clone, Debug)]
pub struct Field {
    grid: Grid,
    samples: Vec<C64>,
    spectrum: Vec<C64>,
    pub t: f64,
}

impl Field {
    pub fn zeros(grid: &Grid, t: f64) -> Field {
        let n = grid.n();
        Field { grid: grid.clone(), samples: vec![C64::new(0.0, 0.0); n], spectrum: vec![C64::new(0.0, 0.0); n], t }
    }

    pub fn from_samples(grid: &Grid, samples: Vec<C64>, t: f64) -> Result<Field> {
        if samples.len() != grid.n() {
            return Err(Error::InvalidGrid(format!("{} samples on a grid of {}", samples.len(), grid.n())));
        }
        check_finite(&samples, "physical samples")?;
        let spectrum = grid.forward(&samples);
        Ok(Field { grid: grid.clone(), samples, spectrum, t })
    }

    pub fn from_spectrum(grid: &Grid, spectrum: Vec<C64>, t: f64) -> Result<Field> {
        if spectrum.len() != grid.n() {
            return Err(Error::InvalidGrid(format!("{} bins on a grid of {}", spectrum.len(), grid.n())));
        }
        check_finite(&spectrum, "spectrum")?;
        let samples = grid.inverse(&spectrum);
        Ok(Field { grid: grid.clone(), samples, spectrum, t })
    }

    pub fn from_fn(grid: &Grid, t: f64, f: impl Fn(f64) -> C64) -> Result<Field> {
        Field::from_samples(grid, grid.xs().into_iter().map(f).collect(), t)
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }
    pub fn samples(&self) -> &[C64] {
        &self.samples
    }
    pub fn spectrum(&self) -> &[C64] {
        &self.spectrum
    }
    pub fn into_spectrum(self) -> Vec<C64> {
        self.spectrum
    }

    pub fn same_grid(&self, other: &Field) -> Result<()> {
        if self.grid == other.grid {
            Ok(())
        } else {
            Err(Error::GridMismatch)
        }
    }

    /// Pointwise complex conjugate in physical space.
    pub fn conj(&self) -> Field {
        Field {
            grid: self.grid.clone(),
            samples: self.samples.iter().map(|z| z.conj()).collect(),
            spectrum: conj_reflect(&self.spectrum),
            t: self.t,
        }
    }

    pub fn scale(&self, s: f64) -> Field {
        Field {
            grid: self.grid.clone(),
            samples: self.samples.iter().map(|z| z * s).collect(),
            spectrum: self.spectrum.iter().map(|z| z * s).collect(),
            t: self.t,
        }
    }

    pub fn add(&self, other: &Field) -> Result<Field> {
        self.same_grid(other)?;
        let spec = self.spectrum.iter().zip(&other.spectrum).map(|(a, b)| a + b).collect();
        Field::from_spectrum(&self.grid, spec, self.t)
    }

    pub fn sub(&self, other: &Field) -> Result<Field> {
        self.same_grid(other)?;
        let spec = self.spectrum.iter().zip(&other.spectrum).map(|(a, b)| a - b).collect();
        Field::from_spectrum(&self.grid, spec, self.t)
    }

    /// Spectral multiplier `m(ξ)`.
    pub fn multiply(&self, m: impl Fn(f64) -> C64) -> Field {
        let spec = apply_multiplier(&self.grid, &self.spectrum, m);
        Field::from_spectrum(&self.grid, spec, self.t).expect("finite multiplier on finite field")
    }
}

/// Spectrum of the conjugate field: `ĥ⁻(ξ) = conj(ĥ(−ξ))`, with the Nyquist bin
/// mapped to itself (periodic lattice).
pub fn conj_reflect(hat: &[C64]) -> Vec<C64> {
    let n = hat.len();
    (0..n).map(|i| hat[(n - i) % n].conj()).collect()
}

/// `(1/2π)·Σ|ĥ|²·dxi`.
pub fn spectral_l2_sq(grid: &Grid, hat: &[C64]) -> f64 {
    hat.iter().map(|z| z.norm_sqr()).sum::<f64>() * grid.dxi() / (2.0 * PI)
}

// ---------------------------------------------------------------------------
// Littlewood–Paley cutoffs

#[inline]
fn h(s: f64) -> f64 {
    if s > 0.0 {
        (-1.0 / s).exp()
    } else {
        0.0
    }
}

#[inline]
fn psi(s: f64) -> f64 {
    if s <= 0.0 {
        0.0
    } else if s >= 1.0 {
        1.0
    } else {
        let a = h(s);
        a / (a + h(1.0 - s))
    }
}

#[inline]
fn dpsi(s: f64) -> f64 {
    if s <= 0.0 || s >= 1.0 {
        return 0.0;
    }
    let (a, b) = (h(s), h(1.0 - s));
    let (da, db) = (a / (s * s), b / ((1.0 - s) * (1.0 - s)));
    (da * b + a * db) / ((a + b) * (a + b))
}

/// Even bump: 1 on `[−5/4, 5/4]`, 0 outside `[−8/5, 8/5]`.
#[inline]
pub fn phi(x: f64) -> f64 {
    let ax = x.abs();
    if ax <= PHI_INNER {
        1.0
    } else if ax >= PHI_OUTER {
        0.0
    } else {
        psi((PHI_OUTER - ax) / (PHI_OUTER - PHI_INNER))
    }
}

/// `φ'(x)`.
#[inline]
pub fn dphi(x: f64) -> f64 {
    let ax = x.abs();
    if ax <= PHI_INNER || ax >= PHI_OUTER {
        0.0
    } else {
        -x.signum() * dpsi((PHI_OUTER - ax) / (PHI_OUTER - PHI_INNER)) / (PHI_OUTER - PHI_INNER)
    }
}

/// `z·φ'(z)`, the Euler derivative of the bump.
#[inline]
pub fn phi_tilde(z: f64) -> f64 {
    z * dphi(z)
}

#[inline]
pub fn pow2(k: i32) -> f64 {
    2f64.powi(k)
}

/// `φ_k(x) = φ(x/2^k) − φ(x/2^{k−1})`.
#[inline]
pub fn phi_band(k: i32, x: f64) -> f64 {
    phi(x / pow2(k)) - phi(x / pow2(k - 1))
}

/// `φ_{≤k}(x) = φ(x/2^k)`.
#[inline]
pub fn phi_le(k: i32, x: f64) -> f64 {
    phi(x / pow2(k))
}

/// `φ_{≥k}(x) = 1 − φ(x/2^{k−1})`.
#[inline]
pub fn phi_ge(k: i32, x: f64) -> f64 {
    1.0 - phi(x / pow2(k - 1))
}

/// Euler derivative of `φ_k`.
#[inline]
pub fn euler_phi_band(k: i32, x: f64) -> f64 {
    phi_tilde(x / pow2(k)) - phi_tilde(x / pow2(k - 1))
}

#[inline]
pub fn euler_phi_le(k: i32, x: f64) -> f64 {
    phi_tilde(x / pow2(k))
}

#[inline]
pub fn euler_phi_ge(k: i32, x: f64) -> f64 {
    -phi_tilde(x / pow2(k - 1))
}

/// Bands `k` for which `φ_k(x)` can be nonzero (at most two).
#[inline]
pub fn bands_of(x: f64) -> std::ops::RangeInclusive<i32> {
    let ax = x.abs();
    if ax == 0.0 || !ax.is_finite() {
        #[allow(clippy::reversed_empty_ranges)]
        return 1..=0;
    }
    let lo = (ax / PHI_OUTER).log2().floor() as i32;
    let hi = (ax / 0.625).log2().ceil() as i32;
    lo..=hi
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CutoffKind {
    Band,
    Leq,
    Geq,
}

pub fn lp_cutoff(kind: CutoffKind, k: i32, x: f64) -> f64 {
    match kind {
        CutoffKind::Band => phi_band(k, x),
        CutoffKind::Leq => phi_le(k, x),
        CutoffKind::Geq => phi_ge(k, x),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Projection {
    /// `P_k`
    Band(i32),
    /// `P_{≤k}`
    Leq(i32),
    /// `P_{≥k}`
    Geq(i32),
    /// `P'_k = P_{k−1} + P_k + P_{k+1}`
    Wide(i32),
}

impl Projection {
    pub fn weight(&self, xi: f64) -> f64 {
        match *self {
            Projection::Band(k) => phi_band(k, xi),
            Projection::Leq(k) => phi_le(k, xi),
            Projection::Geq(k) => phi_ge(k, xi),
            Projection::Wide(k) => phi_band(k - 1, xi) + phi_band(k, xi) + phi_band(k + 1, xi),
        }
    }
}

/// Band projections must lie in the grid's dyadic range; `P_{≤k}` and `P_{≥k}`
/// saturate outside it and accept any `k`.
pub fn project(field: &Field, kind: Projection) -> Result<Field> {
    if let Projection::Band(k) | Projection::Wide(k) = kind {
        let (lo, hi) = field.grid().k_range();
        if k < lo || k > hi {
            return Err(Error::DyadicRange { k, lo, hi });
        }
    }
    Ok(field.multiply(|xi| C64::new(kind.weight(xi), 0.0)))
}

pub fn project_spectrum(grid: &Grid, hat: &[C64], kind: Projection) -> Vec<C64> {
    apply_multiplier(grid, hat, |xi| C64::new(kind.weight(xi), 0.0))
}

// ---------------------------------------------------------------------------
// Unary multipliers

pub fn apply_multiplier(grid: &Grid, hat: &[C64], m: impl Fn(f64) -> C64) -> Vec<C64> {
    hat.iter().enumerate().map(|(i, &z)| z * m(grid.xi(i))).collect()
}

/// `Λ(ξ) = |ξ|^{3/2}`.
#[inline]
pub fn lambda(xi: f64) -> f64 {
    let a = xi.abs();
    a * a.sqrt()
}

/// `|ξ|^s` with `|0|^s = 0` for `s > 0`.
#[inline]
pub fn abs_pow(xi: f64, s: f64) -> f64 {
    if xi == 0.0 {
        if s == 0.0 {
            1.0
        } else {
            0.0
        }
    } else {
        xi.abs().powf(s)
    }
}

/// `m(r) = 1 + r²`.
#[inline]
pub fn weight_m(r: f64) -> f64 {
    1.0 + r * r
}

/// `e^{−i·sign·tΛ(ξ)}`: `sign = 1` is the forward linear flow.
#[inline]
pub fn propagator(t: f64, sign: f64, xi: f64) -> C64 {
    C64::from_polar(1.0, -sign * t * lambda(xi))
}

pub fn derivative(xi: f64) -> C64 {
    C64::new(0.0, xi)
}

// ---------------------------------------------------------------------------
// Norms

#[derive(Clone, Debug, Default, PartialEq, serde::Serialize)]
pub struct NormRecord {
    pub l2: f64,
    pub linf: f64,
    pub hn: f64,
    pub w3inf: f64,
    /// `(k, 2^{4max(k,0)}‖P_k u‖_∞)` over the grid's dyadic range.
    pub band_sups: Vec<(i32, f64)>,
    pub znorm: f64,
}

pub fn linf(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `‖(1+ξ²)^{s/2} û‖ / √(2π)`.
pub fn sobolev_norm(grid: &Grid, hat: &[C64], s: f64) -> f64 {
    let sum: f64 = hat
        .iter()
        .enumerate()
        .map(|(i, z)| weight_m(grid.xi(i)).powf(s) * z.norm_sqr())
        .sum();
    (sum * grid.dxi() / (2.0 * PI)).sqrt()
}

/// `‖(|ξ|^{p₁} + |ξ|⁵) ĥ‖_∞`.
pub fn z_norm(grid: &Grid, hat: &[C64], p1: f64) -> f64 {
    hat.iter()
        .enumerate()
        .map(|(i, z)| {
            let xi = grid.xi(i);
            (abs_pow(xi, p1) + abs_pow(xi, 5.0)) * z.norm()
        })
        .fold(0.0, f64::max)
}

pub fn norms(field: &Field, n_sob: f64, p1: f64) -> NormRecord {
    let grid = field.grid();
    let hat = field.spectrum();
    let l2 = spectral_l2_sq(grid, hat).sqrt();
    let w3 = grid.inverse(&apply_multiplier(grid, hat, |xi| C64::new(weight_m(xi).powf(1.5), 0.0)));
    let (lo, hi) = grid.k_range();
    let band_sups = (lo..=hi)
        .map(|k| {
            let pk = grid.inverse(&project_spectrum(grid, hat, Projection::Band(k)));
            (k, pow2(4 * k.max(0)) * linf(&pk))
        })
        .collect();
    NormRecord {
        l2,
        linf: linf(field.samples()),
        hn: sobolev_norm(grid, hat, n_sob),
        w3inf: linf(&w3),
        band_sups,
        znorm: z_norm(grid, hat, p1),
    }
}

/// Fraction of the L² mass inside `|x| ≤ L/4`.
pub fn inner_mass_fraction(field: &Field) -> f64 {
    let grid = field.grid();
    let q = 0.25 * grid.l();
    let (mut inner, mut total) = (0.0, 0.0);
    for (i, z) in field.samples().iter().enumerate() {
        let m = z.norm_sqr();
        total += m;
        if grid.x(i).abs() <= q {
            inner += m;
        }
    }
    if total == 0.0 {
        1.0
    } else {
        inner / total
    }
}
