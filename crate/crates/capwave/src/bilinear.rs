//! Bilinear operators `F[M(f,g)](ξ) = (1/2π)∫ m(ξ,η) f̂(ξ−η) ĝ(η) dη` by direct
//! lattice quadrature, the fast paraproduct form of the quadratic
//! nonlinearity, and trilinear oscillatory sums.
//!
//! All convolution sums are truncated at the lattice edge: terms whose
//! frequencies leave `[−n/2, n/2)·dxi` are dropped, never wrapped.

use std::f64::consts::PI;

use crate::error::Result;
use std::sync::Arc;

use crate::spectral_core::{
    bands_of, conj_reflect, euler_phi_band, euler_phi_ge, euler_phi_le, lambda, phi_band, phi_ge, phi_le, weight_m,
    Field, Grid, C64,
};
use crate::symbols::{eval_cubic, eval_phase, BilinearSymbol, Signature, Symbol2, SymbolName};

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };

/// Slots whose magnitude exceeds `tol·max`; with `tol = 0` every nonzero slot.
pub fn active_slots(hat: &[C64], tol: f64) -> Vec<usize> {
    let m = hat.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if m == 0.0 {
        return Vec::new();
    }
    let cut = tol * m;
    hat.iter()
        .enumerate()
        .filter(|(_, z)| {
            let a = z.norm();
            a > cut && a > 0.0
        })
        .map(|(i, _)| i)
        .collect()
}

/// Shared loop of the direct sums; `sym(j_out, j_g)` gives the symbol at lattice indices.
fn direct_core(grid: &Grid, fhat: &[C64], ghat: &[C64], tol: f64, sym: impl Fn(i64, i64) -> C64) -> Vec<C64> {
    let n = grid.n();
    let h = (n / 2) as i64;
    let act_f = active_slots(fhat, tol);
    let act_g = active_slots(ghat, tol);
    let mut out = vec![ZERO; n];
    for &ig in &act_g {
        let gv = ghat[ig];
        let jg = ig as i64 - h;
        for &i_f in &act_f {
            let j = i_f as i64 - h + jg;
            if j < -h || j >= h {
                continue;
            }
            let w = sym(j, jg);
            if w.re != 0.0 || w.im != 0.0 {
                out[(j + h) as usize] += w * fhat[i_f] * gv;
            }
        }
    }
    let s = grid.dxi() / (2.0 * PI);
    out.iter_mut().for_each(|z| *z *= s);
    out
}

/// Direct quadrature on spectra. `tol > 0` skips input bins below `tol·max`.
pub fn direct_spectrum(grid: &Grid, m: &dyn Symbol2, fhat: &[C64], ghat: &[C64], tol: f64) -> Vec<C64> {
    let d = grid.dxi();
    direct_core(grid, fhat, ghat, tol, |jo, jg| m.eval(jo as f64 * d, jg as f64 * d))
}

/// Same sum with a table-driven symbol.
pub fn direct_lattice(grid: &Grid, m: &LatticeSymbol, fhat: &[C64], ghat: &[C64], tol: f64) -> Vec<C64> {
    assert_eq!(grid.n(), m.tables.n, "lattice symbol built for another grid");
    direct_core(grid, fhat, ghat, tol, |jo, jg| m.eval_j(jo, jg))
}

/// `(1/2π)·dxi·Σ_ξ c(ξ)·F[M(f,g)](ξ)`, the building block of every double integral.
pub fn pair_integral(grid: &Grid, m: &LatticeSymbol, fhat: &[C64], ghat: &[C64], c: &[C64], tol: f64) -> C64 {
    let inner = direct_lattice(grid, m, fhat, ghat, tol);
    let s: C64 = inner.iter().zip(c).map(|(a, b)| a * b).sum();
    s * (grid.dxi() / (2.0 * PI))
}

/// Full O(n²) oracle.
pub fn apply_direct(m: &dyn Symbol2, f: &Field, g: &Field) -> Result<Field> {
    f.same_grid(g)?;
    let spec = direct_spectrum(f.grid(), m, f.spectrum(), g.spectrum(), 0.0);
    Field::from_spectrum(f.grid(), spec, g.t)
}

/// Dealiased product: `(1/2π)Σ_η F̂(ξ−η)Ĝ(η)dxi` for every lattice `ξ`,
/// computed on a grid with twice the points so no term wraps.
pub fn conv_padded(grid: &Grid, grid2: &Grid, fhat: &[C64], ghat: &[C64]) -> Vec<C64> {
    let n = grid.n();
    let embed = |hat: &[C64]| {
        let mut big = vec![ZERO; 2 * n];
        big[n / 2..n / 2 + n].copy_from_slice(hat);
        big
    };
    let a = grid2.inverse(&embed(fhat));
    let b = grid2.inverse(&embed(ghat));
    let prod: Vec<C64> = a.iter().zip(&b).map(|(x, y)| x * y).collect();
    let big = grid2.forward(&prod);
    big[n / 2..n / 2 + n].to_vec()
}

struct Band {
    k: i32,
    /// `(slot, φ_k(ξ_slot))` over the band's lattice support.
    support: Vec<(usize, f64)>,
    /// `φ_{≤k+10}(ξ)`, absent when it equals 1 on the whole lattice.
    low_pass: Option<Vec<f64>>,
    /// `φ_{≥k−10}(ξ)` on the lattice.
    high_pass: Vec<f64>,
}

/// Precomputed tables for `N(u) = Σ_{k≥−10} P_{≥k−10}[(|D|^{1/2}P_{≤k+10}V)(∂_x P_k u)]`.
pub struct NonlinearPlan {
    grid: Grid,
    grid2: Grid,
    sqrt_abs: Vec<f64>,
    bands: Vec<Band>,
    /// `iη·Σ_{k∈G} φ_k(η)` for the bands whose low-pass is trivial.
    group_weight: Vec<C64>,
    group: Vec<usize>,
    /// Output slots where some grouped band has `φ_{≥k−10} ≠ 1`.
    low_slots: Vec<usize>,
}

impl NonlinearPlan {
    pub fn new(grid: &Grid) -> NonlinearPlan {
        let n = grid.n();
        let xi = grid.xis();
        let xmax = xi.iter().fold(0.0f64, |a, b| a.max(b.abs()));
        let mut bands = Vec::new();
        let top = (xmax / 0.625).log2().ceil() as i32 + 1;
        for k in -10..=top {
            let support: Vec<(usize, f64)> = (0..n)
                .filter_map(|i| {
                    let w = phi_band(k, xi[i]);
                    (w != 0.0).then_some((i, w))
                })
                .collect();
            if support.is_empty() {
                continue;
            }
            let lp: Vec<f64> = xi.iter().map(|&x| phi_le(k + 10, x)).collect();
            let low_pass = if lp.iter().all(|&v| v == 1.0) { None } else { Some(lp) };
            let high_pass = xi.iter().map(|&x| phi_ge(k - 10, x)).collect();
            bands.push(Band { k, support, low_pass, high_pass });
        }
        let group: Vec<usize> = (0..bands.len()).filter(|&b| bands[b].low_pass.is_none()).collect();
        let mut group_weight = vec![ZERO; n];
        for &b in &group {
            for &(i, w) in &bands[b].support {
                group_weight[i] += C64::new(0.0, xi[i] * w);
            }
        }
        let mut low_slots: Vec<usize> = (0..n)
            .filter(|&i| group.iter().any(|&b| bands[b].high_pass[i] != 1.0))
            .collect();
        low_slots.sort_unstable();
        NonlinearPlan {
            grid: grid.clone(),
            grid2: grid.doubled(),
            sqrt_abs: xi.iter().map(|x| x.abs().sqrt()).collect(),
            bands,
            group_weight,
            group,
            low_slots,
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    /// Active band indices.
    pub fn band_indices(&self) -> Vec<i32> {
        self.bands.iter().map(|b| b.k).collect()
    }

    /// `N̂` from `û`.
    pub fn apply(&self, uhat: &[C64]) -> Vec<C64> {
        self.apply_pair(&real_part_doubled(uhat), uhat)
    }

    /// `F[Q₀(f,g)]` with `f` in the `ξ−η` slot.
    pub fn apply_pair(&self, fhat: &[C64], uhat: &[C64]) -> Vec<C64> {
        let n = self.grid.n();
        let xi = self.grid.xis();
        let a: Vec<C64> = (0..n).map(|i| fhat[i] * self.sqrt_abs[i]).collect();
        let mut out = vec![ZERO; n];
        if !self.group.is_empty() {
            let b: Vec<C64> = uhat.iter().zip(&self.group_weight).map(|(u, w)| u * w).collect();
            out = conv_padded(&self.grid, &self.grid2, &a, &b);
            let s = self.grid.dxi() / (2.0 * PI);
            let h = (n / 2) as i64;
            for &io in &self.low_slots {
                let jo = io as i64 - h;
                let mut acc = ZERO;
                for &bi in &self.group {
                    let band = &self.bands[bi];
                    let hp = band.high_pass[io];
                    if hp == 0.0 {
                        continue;
                    }
                    let mut sum = ZERO;
                    for &(ig, w) in &band.support {
                        let jf = jo - (ig as i64 - h);
                        if jf < -h || jf >= h {
                            continue;
                        }
                        sum += a[(jf + h) as usize] * uhat[ig] * C64::new(0.0, xi[ig] * w);
                    }
                    acc += sum * hp;
                }
                out[io] = acc * s;
            }
        }
        for band in &self.bands {
            let Some(lp) = &band.low_pass else { continue };
            let ak: Vec<C64> = a.iter().zip(lp).map(|(z, w)| z * w).collect();
            let mut bk = vec![ZERO; n];
            for &(i, w) in &band.support {
                bk[i] = uhat[i] * C64::new(0.0, xi[i] * w);
            }
            let p = conv_padded(&self.grid, &self.grid2, &ak, &bk);
            for i in 0..n {
                let hp = band.high_pass[i];
                if hp != 0.0 {
                    out[i] += p[i] * hp;
                }
            }
        }
        out
    }
}

/// Fast evaluation of `N(u)` with a freshly built plan.
pub fn apply_nonlinearity_fast(u: &Field) -> Field {
    let plan = NonlinearPlan::new(u.grid());
    Field::from_spectrum(u.grid(), plan.apply(u.spectrum()), u.t).expect("finite nonlinearity")
}

/// `V = u + ū` as a spectrum.
pub fn real_part_doubled(uhat: &[C64]) -> Vec<C64> {
    let r = conj_reflect(uhat);
    uhat.iter().zip(&r).map(|(a, b)| a + b).collect()
}

/// `I^ι(ξ,t) = Σ_{η,σ} e^{itΦ^ι} c^ι f̂₁^{ι₁}(ξ−η) f̂₂^{ι₂}(η−σ) f̂₃^{ι₃}(σ)·dxi²`.
///
/// `xi_slot` selects the output frequency on the lattice. When `bands` is
/// given each input is first localized by `φ_{k_m}`.
#[allow(clippy::too_many_arguments)]
pub fn trilinear_integral(
    grid: &Grid,
    sig: Signature,
    xi_slot: usize,
    f1: &[C64],
    f2: &[C64],
    f3: &[C64],
    t: f64,
    bands: Option<(i32, i32, i32)>,
) -> C64 {
    let n = grid.n();
    let h = (n / 2) as i64;
    let xs = grid.xis();
    let signs = sig.signs();
    let prep = |f: &[C64], s: f64, k: Option<i32>| -> Vec<C64> {
        let mut v = if s < 0.0 { conj_reflect(f) } else { f.to_vec() };
        if let Some(k) = k {
            for (i, z) in v.iter_mut().enumerate() {
                *z *= phi_band(k, xs[i]);
            }
        }
        v
    };
    let (k1, k2, k3) = match bands {
        Some((a, b, c)) => (Some(a), Some(b), Some(c)),
        None => (None, None, None),
    };
    let g1 = prep(f1, signs[0], k1);
    let g2 = prep(f2, signs[1], k2);
    let g3 = prep(f3, signs[2], k3);
    let act3 = active_slots(&g3, 0.0);
    let act1 = active_slots(&g1, 0.0);
    let xi = xs[xi_slot];
    let jx = xi_slot as i64 - h;
    let mut acc = ZERO;
    for &is in &act3 {
        let js = is as i64 - h;
        let sigma = xs[is];
        for &ia in &act1 {
            // slot 1 holds ξ−η
            let ja = ia as i64 - h;
            let je = jx - ja;
            let jb = je - js;
            if jb < -h || jb >= h || je < -h || je >= h {
                continue;
            }
            let b = g2[(jb + h) as usize];
            if b.re == 0.0 && b.im == 0.0 {
                continue;
            }
            let eta = (je as f64) * grid.dxi();
            let c = eval_cubic(sig, xi, eta, sigma);
            if c == 0.0 {
                continue;
            }
            let ph = C64::from_polar(1.0, t * eval_phase(sig, xi, eta, sigma));
            acc += ph * c * g1[ia] * b * g3[is];
        }
    }
    acc * grid.dxi() * grid.dxi()
}

// ---------------------------------------------------------------------------
// Table-driven symbols on the lattice

/// Cutoff and multiplier values at every lattice index `j ∈ [−n, n]`, so that
/// `ξ`, `η`, `ξ−η` and `η−ξ` of any in-range pair can be looked up.
pub struct LatticeTables {
    n: usize,
    xi: Vec<f64>,
    lam: Vec<f64>,
    sq: Vec<f64>,
    wm: Vec<f64>,
    kmin: i32,
    /// `(k, φ_k, Eφ_k)` for the bands `k ≥ −10` meeting each index.
    bands: Vec<Vec<(i32, f64, f64)>>,
    le: Vec<Vec<f64>>,
    ele: Vec<Vec<f64>>,
    ge: Vec<Vec<f64>>,
    ege: Vec<Vec<f64>>,
}

impl LatticeTables {
    pub fn new(grid: &Grid) -> LatticeTables {
        let n = grid.n();
        let d = grid.dxi();
        let xi: Vec<f64> = (0..=2 * n).map(|p| (p as i64 - n as i64) as f64 * d).collect();
        let mut kmax = -10;
        let bands: Vec<Vec<(i32, f64, f64)>> = xi
            .iter()
            .map(|&y| {
                bands_of(y)
                    .filter(|&k| k >= -10)
                    .filter_map(|k| {
                        let (p, e) = (phi_band(k, y), euler_phi_band(k, y));
                        (p != 0.0 || e != 0.0).then_some((k, p, e))
                    })
                    .inspect(|&(k, _, _)| kmax = kmax.max(k))
                    .collect()
            })
            .collect();
        let kmin = -10;
        let table = |f: &dyn Fn(i32, f64) -> f64| -> Vec<Vec<f64>> {
            (kmin..=kmax).map(|k| xi.iter().map(|&x| f(k, x)).collect()).collect()
        };
        LatticeTables {
            n,
            lam: xi.iter().map(|&x| lambda(x)).collect(),
            sq: xi.iter().map(|&x| x.abs().sqrt()).collect(),
            wm: xi.iter().map(|&x| weight_m(x)).collect(),
            le: table(&|k, x| phi_le(k + 10, x)),
            ele: table(&|k, x| euler_phi_le(k + 10, x)),
            ge: table(&|k, x| phi_ge(k - 10, x)),
            ege: table(&|k, x| euler_phi_ge(k - 10, x)),
            kmin,
            bands,
            xi,
        }
    }

    #[inline]
    fn p(&self, j: i64) -> usize {
        (j + self.n as i64) as usize
    }

    /// `χ(x, y)` at `x = j_x·dxi`, `y = j_y·dxi`.
    #[inline]
    pub fn chi(&self, jx: i64, jy: i64) -> f64 {
        let (px, po) = (self.p(jx), self.p(jx + jy));
        let mut s = 0.0;
        for &(k, p, _) in &self.bands[self.p(jy)] {
            let r = (k - self.kmin) as usize;
            s += p * self.le[r][px] * self.ge[r][po];
        }
        s
    }

    /// `(x∂_x + y∂_y)χ`.
    #[inline]
    pub fn euler_chi(&self, jx: i64, jy: i64) -> f64 {
        let (px, po) = (self.p(jx), self.p(jx + jy));
        let mut s = 0.0;
        for &(k, p, e) in &self.bands[self.p(jy)] {
            let r = (k - self.kmin) as usize;
            let (a, ea, b, eb) = (self.le[r][px], self.ele[r][px], self.ge[r][po], self.ege[r][po]);
            s += e * a * b + p * ea * b + p * a * eb;
        }
        s
    }
}

/// A [`BilinearSymbol`] evaluated at lattice indices through [`LatticeTables`].
#[derive(Clone)]
pub struct LatticeSymbol {
    pub name: SymbolName,
    pub n_sob: i32,
    pub guard: f64,
    conj: bool,
    tables: Arc<LatticeTables>,
}

impl LatticeSymbol {
    pub fn new(sym: BilinearSymbol, tables: &Arc<LatticeTables>) -> LatticeSymbol {
        LatticeSymbol { name: sym.name, n_sob: sym.n, guard: sym.guard, conj: false, tables: tables.clone() }
    }

    /// The complex-conjugate symbol `conj(m(ξ,η))`.
    pub fn conjugated(&self) -> LatticeSymbol {
        LatticeSymbol { conj: !self.conj, ..self.clone() }
    }

    pub fn tables(&self) -> &Arc<LatticeTables> {
        &self.tables
    }

    #[inline]
    fn div(&self, num: C64, den: f64) -> C64 {
        if den.abs() < self.guard {
            ZERO
        } else {
            num / den
        }
    }

    #[inline]
    fn hom(&self, ja: i64, jb: i64) -> f64 {
        let t = &self.tables;
        t.sq[t.p(ja - jb)] * t.xi[t.p(jb)]
    }

    #[inline]
    fn q0(&self, ja: i64, jb: i64) -> C64 {
        let c = self.tables.chi(ja - jb, jb);
        if c == 0.0 {
            return ZERO;
        }
        C64::new(0.0, c * self.hom(ja, jb))
    }

    #[inline]
    fn qn(&self, ja: i64, jb: i64) -> C64 {
        if jb == 0 {
            return ZERO;
        }
        let t = &self.tables;
        self.q0(ja, jb) * (t.xi[t.p(ja)].abs() / t.xi[t.p(jb)].abs()).powi(self.n_sob)
    }

    #[inline]
    fn q(&self, ja: i64, jb: i64) -> C64 {
        let t = &self.tables;
        self.q0(ja, jb) * (t.wm[t.p(ja)] / t.wm[t.p(jb)])
    }

    #[inline]
    fn q1(&self, ja: i64, jb: i64) -> C64 {
        let t = &self.tables;
        self.q0(ja, jb) * (t.wm[t.p(ja)] / t.wm[t.p(ja - jb)])
    }

    #[inline]
    fn q2(&self, ja: i64, jb: i64) -> C64 {
        let e = self.tables.euler_chi(ja - jb, jb);
        if e == 0.0 {
            return ZERO;
        }
        let t = &self.tables;
        C64::new(0.0, -t.wm[t.p(ja)] * self.hom(ja, jb) * e)
    }

    /// Symbol value at `(ξ, η) = (j_a·dxi, j_b·dxi)`.
    #[inline]
    pub fn eval_j(&self, ja: i64, jb: i64) -> C64 {
        let v = self.eval_raw(ja, jb);
        if self.conj {
            v.conj()
        } else {
            v
        }
    }

    fn eval_raw(&self, ja: i64, jb: i64) -> C64 {
        let t = &self.tables;
        let i = C64::new(0.0, 1.0);
        let pm = || t.lam[t.p(ja)] - t.lam[t.p(jb)] - t.lam[t.p(ja - jb)];
        let pp = || t.lam[t.p(ja)] - t.lam[t.p(jb)] + t.lam[t.p(ja - jb)];
        match self.name {
            SymbolName::Chi => C64::new(t.chi(ja - jb, jb), 0.0),
            SymbolName::Q0 => self.q0(ja, jb),
            SymbolName::QN => self.qn(ja, jb),
            SymbolName::Q => self.q(ja, jb),
            SymbolName::Q1 => self.q1(ja, jb),
            SymbolName::Q2 => self.q2(ja, jb),
            SymbolName::MN => {
                let num = self.qn(ja, jb).conj() + self.qn(jb, ja);
                if num == ZERO {
                    return ZERO;
                }
                self.div(-i * num, pm())
            }
            SymbolName::M1 => {
                let num = self.q(ja, jb) + self.q(jb, ja).conj();
                if num == ZERO {
                    return ZERO;
                }
                self.div(i * num, pm())
            }
            SymbolName::M2 => self.div(i * self.q1(ja, jb), pm()),
            SymbolName::M3 => self.div(i * self.q1(ja, jb), pp()),
            SymbolName::M4 => self.div(i * self.q2(ja, jb), pm()),
            SymbolName::M5 => self.div(i * self.q2(ja, jb), pp()),
            SymbolName::A => {
                let q = self.q0(ja, jb);
                if q == ZERO {
                    return ZERO;
                }
                self.div(i * q, pm())
            }
            SymbolName::B => {
                let q = self.q0(ja, jb);
                if q == ZERO {
                    return ZERO;
                }
                self.div(i * q, pp())
            }
            SymbolName::ATilde => {
                let e = t.euler_chi(ja - jb, jb);
                self.div(C64::new(-self.hom(ja, jb) * e, 0.0), pm())
            }
            SymbolName::BTilde => {
                let e = t.euler_chi(ja - jb, jb);
                self.div(C64::new(-self.hom(ja, jb) * e, 0.0), pp())
            }
            SymbolName::Q0Tilde => {
                let e = t.euler_chi(ja - jb, jb) + 1.5 * t.chi(ja - jb, jb);
                C64::new(0.0, self.hom(ja, jb) * e)
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Separable evaluation of χ-structured products

/// `(1/2π)Σ_η i|ξ−η|^{1/2}η·K(ξ−η,η)·f̂(ξ−η)ĝ(η)` with `K = χ` or `K = Eχ`, one
/// padded product per separable term.
pub struct ChiProductPlan {
    grid: Grid,
    grid2: Grid,
    sqrt_abs: Vec<f64>,
    i_xi: Vec<C64>,
    /// `(out(ξ), left(ξ−η), right(η))` weights.
    terms: Vec<(Vec<f64>, Vec<f64>, Vec<f64>)>,
}

impl ChiProductPlan {
    pub fn new(grid: &Grid, euler: bool) -> ChiProductPlan {
        let xi = grid.xis();
        let xmax = xi.iter().fold(0.0f64, |a, b| a.max(b.abs()));
        let top = (xmax / 0.625).log2().ceil() as i32 + 1;
        let mut terms = Vec::new();
        let nonzero = |v: &[f64]| v.iter().any(|&x| x != 0.0);
        for k in -10..=top {
            let band: Vec<f64> = xi.iter().map(|&x| phi_band(k, x)).collect();
            let le: Vec<f64> = xi.iter().map(|&x| phi_le(k + 10, x)).collect();
            let ge: Vec<f64> = xi.iter().map(|&x| phi_ge(k - 10, x)).collect();
            if !euler {
                terms.push((ge, le, band));
                continue;
            }
            let eband: Vec<f64> = xi.iter().map(|&x| euler_phi_band(k, x)).collect();
            let ele: Vec<f64> = xi.iter().map(|&x| euler_phi_le(k + 10, x)).collect();
            let ege: Vec<f64> = xi.iter().map(|&x| euler_phi_ge(k - 10, x)).collect();
            terms.push((ge.clone(), le.clone(), eband));
            terms.push((ge, ele, band.clone()));
            terms.push((ege, le, band));
        }
        terms.retain(|(o, l, r)| nonzero(o) && nonzero(l) && nonzero(r));
        ChiProductPlan {
            grid: grid.clone(),
            grid2: grid.doubled(),
            sqrt_abs: xi.iter().map(|x| x.abs().sqrt()).collect(),
            i_xi: xi.iter().map(|&x| C64::new(0.0, x)).collect(),
            terms,
        }
    }

    pub fn apply(&self, fhat: &[C64], ghat: &[C64]) -> Vec<C64> {
        let n = self.grid.n();
        let mut out = vec![ZERO; n];
        for (o, l, r) in &self.terms {
            let a: Vec<C64> = (0..n).map(|i| fhat[i] * (self.sqrt_abs[i] * l[i])).collect();
            let b: Vec<C64> = (0..n).map(|i| ghat[i] * self.i_xi[i] * r[i]).collect();
            let p = conv_padded(&self.grid, &self.grid2, &a, &b);
            for i in 0..n {
                if o[i] != 0.0 {
                    out[i] += p[i] * o[i];
                }
            }
        }
        out
    }
}
