//! Bilinear and cubic multipliers, the Euler operator, the S^∞ estimator and
//! the scattering coefficient `c̃`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::spectral_core::{
    bands_of, euler_phi_band, euler_phi_ge, euler_phi_le, lambda, phi_band, phi_ge, phi_le, pow2, weight_m, C64,
};

pub const DEFAULT_GUARD: f64 = 1e-14;
const I: C64 = Complex { re: 0.0, im: 1.0 };

/// `χ(x,y) = Σ_{k≥−10} φ_k(y)·φ_{≤k+10}(x)·φ_{≥k−10}(x+y)`.
pub fn chi(x: f64, y: f64) -> f64 {
    let mut s = 0.0;
    for k in bands_of(y) {
        if k < -10 {
            continue;
        }
        let p = phi_band(k, y);
        if p == 0.0 {
            continue;
        }
        let a = phi_le(k + 10, x);
        if a == 0.0 {
            continue;
        }
        s += p * a * phi_ge(k - 10, x + y);
    }
    s
}

/// `(x∂_x + y∂_y)χ`.
pub fn euler_chi(x: f64, y: f64) -> f64 {
    let mut s = 0.0;
    for k in bands_of(y) {
        if k < -10 {
            continue;
        }
        let p = phi_band(k, y);
        let ep = euler_phi_band(k, y);
        if p == 0.0 && ep == 0.0 {
            continue;
        }
        let a = phi_le(k + 10, x);
        let ea = euler_phi_le(k + 10, x);
        let b = phi_ge(k - 10, x + y);
        let eb = euler_phi_ge(k - 10, x + y);
        s += ep * a * b + p * ea * b + p * a * eb;
    }
    s
}

/// `|ξ|^{3/2} − |η|^{3/2} − |ξ−η|^{3/2}`.
#[inline]
pub fn phase_minus(xi: f64, eta: f64) -> f64 {
    lambda(xi) - lambda(eta) - lambda(xi - eta)
}

/// `|ξ|^{3/2} − |η|^{3/2} + |ξ−η|^{3/2}`.
#[inline]
pub fn phase_plus(xi: f64, eta: f64) -> f64 {
    lambda(xi) - lambda(eta) + lambda(xi - eta)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymbolName {
    Chi,
    Q0,
    QN,
    Q,
    Q1,
    Q2,
    MN,
    M1,
    M2,
    M3,
    M4,
    M5,
    A,
    B,
    ATilde,
    BTilde,
    Q0Tilde,
}

impl SymbolName {
    pub const ALL: [SymbolName; 17] = [
        SymbolName::Chi,
        SymbolName::Q0,
        SymbolName::QN,
        SymbolName::Q,
        SymbolName::Q1,
        SymbolName::Q2,
        SymbolName::MN,
        SymbolName::M1,
        SymbolName::M2,
        SymbolName::M3,
        SymbolName::M4,
        SymbolName::M5,
        SymbolName::A,
        SymbolName::B,
        SymbolName::ATilde,
        SymbolName::BTilde,
        SymbolName::Q0Tilde,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            SymbolName::Chi => "chi",
            SymbolName::Q0 => "q0",
            SymbolName::QN => "qN",
            SymbolName::Q => "q",
            SymbolName::Q1 => "q1",
            SymbolName::Q2 => "q2",
            SymbolName::MN => "mN",
            SymbolName::M1 => "m1",
            SymbolName::M2 => "m2",
            SymbolName::M3 => "m3",
            SymbolName::M4 => "m4",
            SymbolName::M5 => "m5",
            SymbolName::A => "a",
            SymbolName::B => "b",
            SymbolName::ATilde => "a_tilde",
            SymbolName::BTilde => "b_tilde",
            SymbolName::Q0Tilde => "q0_tilde",
        }
    }
}

impl fmt::Display for SymbolName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SymbolName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        SymbolName::ALL
            .iter()
            .find(|n| n.as_str() == s)
            .copied()
            .ok_or_else(|| Error::UnknownSymbol(s.to_string()))
    }
}

/// Anything that evaluates `(ξ,η) → ℂ`.
pub trait Symbol2: Sync {
    fn eval(&self, xi: f64, eta: f64) -> C64;
}

impl<F: Fn(f64, f64) -> C64 + Sync> Symbol2 for F {
    fn eval(&self, xi: f64, eta: f64) -> C64 {
        self(xi, eta)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BilinearSymbol {
    pub name: SymbolName,
    /// Sobolev index used by `qN` and `mN`.
    pub n: i32,
    pub guard: f64,
}

impl BilinearSymbol {
    pub fn new(name: SymbolName) -> Self {
        BilinearSymbol { name, n: 10, guard: DEFAULT_GUARD }
    }

    pub fn with_n(name: SymbolName, n: i32) -> Self {
        BilinearSymbol { name, n, guard: DEFAULT_GUARD }
    }

    pub fn parse(name: &str) -> Result<Self> {
        Ok(BilinearSymbol::new(name.parse()?))
    }

    #[inline]
    fn div(&self, num: C64, den: f64) -> C64 {
        if den.abs() < self.guard {
            C64::new(0.0, 0.0)
        } else {
            num / den
        }
    }

    pub fn eval(&self, xi: f64, eta: f64) -> C64 {
        match self.name {
            SymbolName::Chi => C64::new(chi(xi - eta, eta), 0.0),
            SymbolName::Q0 => q0(xi, eta),
            SymbolName::QN => qn(xi, eta, self.n),
            SymbolName::Q => q(xi, eta),
            SymbolName::Q1 => q1(xi, eta),
            SymbolName::Q2 => q2(xi, eta),
            SymbolName::MN => {
                let num = qn(xi, eta, self.n).conj() + qn(eta, xi, self.n);
                self.div(-I * num, phase_minus(xi, eta))
            }
            SymbolName::M1 => self.div(I * (q(xi, eta) + q(eta, xi).conj()), phase_minus(xi, eta)),
            SymbolName::M2 => self.div(I * q1(xi, eta), phase_minus(xi, eta)),
            SymbolName::M3 => self.div(I * q1(xi, eta), phase_plus(xi, eta)),
            SymbolName::M4 => self.div(I * q2(xi, eta), phase_minus(xi, eta)),
            SymbolName::M5 => self.div(I * q2(xi, eta), phase_plus(xi, eta)),
            SymbolName::A => self.div(I * q0(xi, eta), phase_minus(xi, eta)),
            SymbolName::B => self.div(I * q0(xi, eta), phase_plus(xi, eta)),
            SymbolName::ATilde => {
                let hh = homogeneous_part(xi, eta);
                self.div(C64::new(-hh * euler_chi(xi - eta, eta), 0.0), phase_minus(xi, eta))
            }
            SymbolName::BTilde => {
                let hh = homogeneous_part(xi, eta);
                self.div(C64::new(-hh * euler_chi(xi - eta, eta), 0.0), phase_plus(xi, eta))
            }
            SymbolName::Q0Tilde => {
                let x = xi - eta;
                I * homogeneous_part(xi, eta) * (euler_chi(x, eta) + 1.5 * chi(x, eta))
            }
        }
    }
}

impl Symbol2 for BilinearSymbol {
    fn eval(&self, xi: f64, eta: f64) -> C64 {
        BilinearSymbol::eval(self, xi, eta)
    }
}

/// `|ξ−η|^{1/2}·η`, the degree-3/2 factor of `q₀`.
#[inline]
pub fn homogeneous_part(xi: f64, eta: f64) -> f64 {
    (xi - eta).abs().sqrt() * eta
}

/// `q₀(ξ,η) = i·χ(ξ−η,η)·|ξ−η|^{1/2}·η`.
#[inline]
pub fn q0(xi: f64, eta: f64) -> C64 {
    let c = chi(xi - eta, eta);
    if c == 0.0 {
        return C64::new(0.0, 0.0);
    }
    C64::new(0.0, c * homogeneous_part(xi, eta))
}

/// `q_N = (|ξ|^N/|η|^N)·q₀`.
#[inline]
pub fn qn(xi: f64, eta: f64, n: i32) -> C64 {
    if eta == 0.0 {
        return C64::new(0.0, 0.0);
    }
    q0(xi, eta) * (xi.abs() / eta.abs()).powi(n)
}

#[inline]
pub fn q(xi: f64, eta: f64) -> C64 {
    q0(xi, eta) * (weight_m(xi) / weight_m(eta))
}

#[inline]
pub fn q1(xi: f64, eta: f64) -> C64 {
    q0(xi, eta) * (weight_m(xi) / weight_m(xi - eta))
}

/// `−m(ξ)·(ξ∂_ξ+η∂_η−3/2)q₀`, using the degree-3/2 homogeneity of the non-cutoff factor.
#[inline]
pub fn q2(xi: f64, eta: f64) -> C64 {
    let e = euler_chi(xi - eta, eta);
    if e == 0.0 {
        return C64::new(0.0, 0.0);
    }
    C64::new(0.0, -weight_m(xi) * homogeneous_part(xi, eta) * e)
}

/// `(ξ∂_ξ+η∂_η)` applied to `a`, `b` or `q0`.
pub fn euler(name: SymbolName) -> Result<BilinearSymbol> {
    let out = match name {
        SymbolName::A => SymbolName::ATilde,
        SymbolName::B => SymbolName::BTilde,
        SymbolName::Q0 => SymbolName::Q0Tilde,
        other => return Err(Error::EulerUndefined(other.to_string())),
    };
    Ok(BilinearSymbol::new(out))
}

// ---------------------------------------------------------------------------
// Cubic symbols

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Signature {
    /// `(+ + −)`
    PPM,
    /// `(+ + +)`
    PPP,
    /// `(− − +)`
    MMP,
}

impl Signature {
    pub const ALL: [Signature; 3] = [Signature::PPM, Signature::PPP, Signature::MMP];

    pub fn signs(&self) -> [f64; 3] {
        match self {
            Signature::PPM => [1.0, 1.0, -1.0],
            Signature::PPP => [1.0, 1.0, 1.0],
            Signature::MMP => [-1.0, -1.0, 1.0],
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Signature::PPM => "++-",
            Signature::PPP => "+++",
            Signature::MMP => "--+",
        }
    }
}

fn a_sym(xi: f64, eta: f64) -> C64 {
    BilinearSymbol::new(SymbolName::A).eval(xi, eta)
}

fn b_sym(xi: f64, eta: f64) -> C64 {
    BilinearSymbol::new(SymbolName::B).eval(xi, eta)
}

/// `c^ι(ξ,η,σ)` before taking the real part; slots are `(ξ−η, η−σ, σ)`.
pub fn eval_cubic_complex(sig: Signature, xi: f64, eta: f64, sigma: f64) -> C64 {
    let ic = match sig {
        Signature::PPM => {
            a_sym(xi, xi - eta) * q0(eta, eta - sigma)
                + a_sym(xi, eta) * q0(eta, eta - sigma)
                + b_sym(xi, xi - eta) * q0(eta, sigma)
                + b_sym(xi, xi - sigma) * q0(xi - sigma, eta - sigma)
        }
        Signature::PPP => (a_sym(xi, xi - eta) + a_sym(xi, eta)) * q0(eta, sigma),
        Signature::MMP => b_sym(xi, sigma) * q0(xi - sigma, eta - sigma) + b_sym(xi, eta) * q0(eta, sigma),
    };
    -I * ic
}

pub fn eval_cubic(sig: Signature, xi: f64, eta: f64, sigma: f64) -> f64 {
    eval_cubic_complex(sig, xi, eta, sigma).re
}

/// `Φ^ι = |ξ|^{3/2} − ι₁|ξ−η|^{3/2} − ι₂|η−σ|^{3/2} − ι₃|σ|^{3/2}`.
pub fn eval_phase(sig: Signature, xi: f64, eta: f64, sigma: f64) -> f64 {
    let [s1, s2, s3] = sig.signs();
    lambda(xi) - s1 * lambda(xi - eta) - s2 * lambda(eta - sigma) - s3 * lambda(sigma)
}

/// `c̃(ξ) = (8π|ξ|^{1/2}/3)·i·b(ξ,2ξ)·q₀(2ξ,ξ)`, complex form.
pub fn ctilde_complex(xi: f64) -> C64 {
    I * (8.0 * PI * xi.abs().sqrt() / 3.0) * b_sym(xi, 2.0 * xi) * q0(2.0 * xi, xi)
}

pub fn ctilde(xi: f64) -> f64 {
    if xi.abs() < pow2(-25) {
        return 0.0;
    }
    ctilde_complex(xi).re
}

// ---------------------------------------------------------------------------
// Dyadic triples and the S^∞ estimator

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub struct DyadicTriple {
    pub k: i32,
    pub k1: i32,
    pub k2: i32,
}

impl DyadicTriple {
    pub fn new(k: i32, k1: i32, k2: i32) -> Self {
        DyadicTriple { k, k1, k2 }
    }

    /// Membership in `X`: `max − med ≤ 6`.
    pub fn in_x(&self) -> bool {
        let mut v = [self.k, self.k1, self.k2];
        v.sort_unstable();
        v[2] - v[1] <= 6
    }

    /// `1̃_d(k,k₁,k₂)`.
    pub fn indicator(&self, d: i32) -> f64 {
        let ok = self.k2 >= -d && self.k2 - self.k1 >= -d && (self.k2 - self.k).abs() <= d;
        if ok {
            1.0
        } else {
            0.0
        }
    }
}

/// Three frequency variables tied by `Σ cᵢvᵢ = offset`, each cut off at a dyadic scale.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Localization {
    pub scales: [i32; 3],
    /// Each coefficient is `±1`.
    pub coeffs: [f64; 3],
    pub offset: f64,
    /// Cut off with `φ'_s = φ_{s−1}+φ_s+φ_{s+1}` instead of `φ_s`.
    pub widened: bool,
}

impl Localization {
    /// `(ξ, ξ−η, η)` at scales `(k, k₁, k₂)`.
    pub fn bilinear(t: DyadicTriple) -> Self {
        Localization { scales: [t.k, t.k1, t.k2], coeffs: [1.0, -1.0, -1.0], offset: 0.0, widened: false }
    }

    fn cutoff(&self, i: usize, v: f64) -> f64 {
        let s = self.scales[i];
        if self.widened {
            phi_band(s - 1, v) + phi_band(s, v) + phi_band(s + 1, v)
        } else {
            phi_band(s, v)
        }
    }

    /// Open interval of `|vᵢ|` where the cutoff can be nonzero.
    fn shell(&self, i: usize) -> (f64, f64) {
        let s = self.scales[i];
        if self.widened {
            (0.625 * pow2(s - 1), 1.6 * pow2(s + 1))
        } else {
            (0.625 * pow2(s), 1.6 * pow2(s))
        }
    }

    /// Whether the three cutoffs have a common point on the constraint line.
    pub fn feasible(&self) -> bool {
        let (ia, ib, ic) = self.axes();
        let (la, ha) = self.shell(ia);
        let (lb, hb) = self.shell(ib);
        let (lc, hc) = self.shell(ic);
        for sa in [1.0, -1.0] {
            for sb in [1.0, -1.0] {
                let ra = if sa > 0.0 { (la, ha) } else { (-ha, -la) };
                let rb = if sb > 0.0 { (lb, hb) } else { (-hb, -lb) };
                // v_c = (offset − c_a v_a − c_b v_b)/c_c
                let ends = [
                    self.solve(ic, [(ia, ra.0), (ib, rb.0)]),
                    self.solve(ic, [(ia, ra.0), (ib, rb.1)]),
                    self.solve(ic, [(ia, ra.1), (ib, rb.0)]),
                    self.solve(ic, [(ia, ra.1), (ib, rb.1)]),
                ];
                let lo = ends.iter().cloned().fold(f64::INFINITY, f64::min);
                let hi = ends.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                if hi > lc && lo < hc || -lo > lc && -hi < hc {
                    return true;
                }
            }
        }
        false
    }

    fn solve(&self, ic: usize, known: [(usize, f64); 2]) -> f64 {
        let rest: f64 = known.iter().map(|&(i, v)| self.coeffs[i] * v).sum();
        (self.offset - rest) / self.coeffs[ic]
    }

    /// Indices of the two smallest scales (lattice axes) and the remaining one.
    fn axes(&self) -> (usize, usize, usize) {
        let mut order = [0usize, 1, 2];
        order.sort_by_key(|&i| self.scales[i]);
        (order[0], order[1], order[2])
    }
}

const PACK_RATIO: f64 = 1e3;

/// Numerical `‖F⁻¹(mⱼ·φ(v₀)φ(v₁)φ(v₂))‖_{L¹}` for `count` symbols at once.
///
/// The L¹ norm of an inverse transform is invariant under invertible affine
/// changes of the frequency variables, so the lattice is laid out in the two
/// variables with the smallest dyadic scales, each axis spanning
/// `[−2^{s+1}, 2^{s+1})` (`[−2^{s+2}, 2^{s+2})` when widened) with
/// `resolution` points per unit `2^s`. The third variable is solved from the
/// constraint. `eval` receives `[v₀, v₁, v₂]` and fills one value per symbol.
pub fn sinfty_norms(
    loc: &Localization,
    resolution: usize,
    count: usize,
    mut eval: impl FnMut(&[f64; 3], &mut [C64]),
) -> Result<Vec<f64>> {
    if resolution < 64 {
        return Err(Error::Resolution(resolution));
    }
    let mut out = vec![0.0; count];
    if !loc.feasible() {
        return Ok(out);
    }
    let (ia, ib, ic) = loc.axes();
    let span = if loc.widened { 8 } else { 4 };
    let mm = span * resolution;
    let axis = |i: usize| -> (Vec<f64>, Vec<f64>) {
        let h = pow2(loc.scales[i]) / resolution as f64;
        let v: Vec<f64> = (0..mm).map(|p| h * (p as f64 - (mm / 2) as f64)).collect();
        let w = v.iter().map(|&x| loc.cutoff(i, x)).collect();
        (v, w)
    };
    let (va, wa) = axis(ia);
    let (vb, wb) = axis(ib);
    let mut points: Vec<usize> = Vec::new();
    let mut values: Vec<C64> = Vec::new();
    let mut buf = vec![C64::new(0.0, 0.0); count];
    let mut v = [0.0; 3];
    for p in 0..mm {
        if wa[p] == 0.0 {
            continue;
        }
        for r in 0..mm {
            if wb[r] == 0.0 {
                continue;
            }
            v[ia] = va[p];
            v[ib] = vb[r];
            v[ic] = loc.solve(ic, [(ia, va[p]), (ib, vb[r])]);
            let third = loc.cutoff(ic, v[ic]);
            if third == 0.0 {
                continue;
            }
            eval(&v, &mut buf);
            let w = wa[p] * wb[r] * third;
            points.push(p * mm + r);
            values.extend(buf.iter().map(|z| z * w));
        }
    }
    // Real-valued and imaginary-valued symbols are packed two per transform.
    let mut rotate = vec![C64::new(1.0, 0.0); count];
    let mut packable = Vec::new();
    let mut general = Vec::new();
    for j in 0..count {
        let col = || values.iter().skip(j).step_by(count);
        if col().all(|z| *z == C64::new(0.0, 0.0)) {
            continue;
        }
        if col().all(|z| z.im == 0.0) {
            packable.push(j);
        } else if col().all(|z| z.re == 0.0) {
            rotate[j] = C64::new(0.0, -1.0);
            packable.push(j);
        } else {
            general.push(j);
        }
    }
    // Separating a packed pair leaks roundoff of the larger member into the
    // smaller, so only families of comparable size share a transform.
    let peak = |j: usize| values.iter().skip(j).step_by(count).map(|z| z.norm()).fold(0.0, f64::max);
    let mut sized: Vec<(f64, usize)> = packable.iter().map(|&j| (peak(j), j)).collect();
    sized.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut pairs: Vec<(usize, Option<usize>)> = Vec::new();
    let mut i = 0;
    while i < sized.len() {
        if i + 1 < sized.len() && sized[i + 1].0 <= PACK_RATIO * sized[i].0 {
            pairs.push((sized[i].1, Some(sized[i + 1].1)));
            i += 2;
        } else {
            pairs.push((sized[i].1, None));
            i += 1;
        }
    }
    let mut data = vec![C64::new(0.0, 0.0); mm * mm];
    for (a, b) in pairs {
        data.iter_mut().for_each(|z| *z = C64::new(0.0, 0.0));
        for (q, &idx) in points.iter().enumerate() {
            let mut z = (values[q * count + a] * rotate[a]).re * C64::new(1.0, 0.0);
            if let Some(b) = b {
                z += C64::new(0.0, (values[q * count + b] * rotate[b]).re);
            }
            data[idx] = z;
        }
        let (la, lb) = l1_of_dft2_pair(&mut data, mm);
        out[a] = la;
        if let Some(b) = b {
            out[b] = lb;
        }
    }
    for j in general {
        data.iter_mut().for_each(|z| *z = C64::new(0.0, 0.0));
        for (q, &idx) in points.iter().enumerate() {
            data[idx] = values[q * count + j];
        }
        out[j] = l1_of_dft2(&mut data, mm);
    }
    Ok(out)
}

fn fft2(data: &mut [C64], mm: usize) {
    let mut planner = FftPlanner::new();
    let fft = planner.plan_fft_forward(mm);
    for row in data.chunks_mut(mm) {
        fft.process(row);
    }
    let mut col = vec![C64::new(0.0, 0.0); mm];
    for c in 0..mm {
        for r in 0..mm {
            col[r] = data[r * mm + c];
        }
        fft.process(&mut col);
        for r in 0..mm {
            data[r * mm + c] = col[r];
        }
    }
}

/// `(1/M²)·Σ|DFT₂ a|` and `(1/M²)·Σ|DFT₂ b|` for real `a`, `b` packed as `a + ib`.
pub fn l1_of_dft2_pair(data: &mut [C64], mm: usize) -> (f64, f64) {
    fft2(data, mm);
    let (mut sa, mut sb) = (0.0, 0.0);
    for r in 0..mm {
        let rr = (mm - r) % mm;
        for c in 0..mm {
            let z = data[r * mm + c];
            let w = data[rr * mm + (mm - c) % mm].conj();
            sa += (z + w).norm();
            sb += (z - w).norm();
        }
    }
    let s = 2.0 * (mm * mm) as f64;
    (sa / s, sb / s)
}

/// Numerical `‖F⁻¹(m·φ_k(ξ)φ_{k₁}(ξ−η)φ_{k₂}(η))‖_{L¹}`; 0 for triples outside `X`.
pub fn sinfty_norm(m: &dyn Symbol2, triple: DyadicTriple, resolution: usize) -> Result<f64> {
    if resolution < 64 {
        return Err(Error::Resolution(resolution));
    }
    if !triple.in_x() {
        return Ok(0.0);
    }
    let v = sinfty_norms(&Localization::bilinear(triple), resolution, 1, |v, out| out[0] = m.eval(v[0], v[2]))?;
    Ok(v[0])
}

/// `(1/M²)·Σ|DFT₂(data)|`.
pub fn l1_of_dft2(data: &mut [C64], mm: usize) -> f64 {
    let mut planner = FftPlanner::new();
    let fft = planner.plan_fft_forward(mm);
    for row in data.chunks_mut(mm) {
        fft.process(row);
    }
    let mut col = vec![C64::new(0.0, 0.0); mm];
    let mut total = 0.0;
    for c in 0..mm {
        for r in 0..mm {
            col[r] = data[r * mm + c];
        }
        fft.process(&mut col);
        total += col.iter().map(|z| z.norm()).sum::<f64>();
    }
    total / (mm * mm) as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chi_hand_values() {
        assert_eq!(chi(1.0, 1.0), 1.0);
        assert_eq!(chi(-1.0, 2.0), 1.0);
        assert_eq!(chi(0.3, pow2(-20)), 0.0);
    }

    #[test]
    fn names_round_trip() {
        for n in SymbolName::ALL {
            assert_eq!(n.as_str().parse::<SymbolName>().unwrap(), n);
        }
        assert!("zz".parse::<SymbolName>().is_err());
    }

    #[test]
    fn l1_of_delta_symbol() {
        let mm = 64;
        let mut d = vec![C64::new(1.0, 0.0); mm * mm];
        assert!((l1_of_dft2(&mut d, mm) - 1.0).abs() < 1e-12);
    }
}
