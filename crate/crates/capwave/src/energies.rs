//! Quadratic and cubic energies for `W = |D|^N u` and for the weighted
//! variable `Z = (1+D²)Su`, with their quartic time derivatives.
//!
//! Every double integral is the lattice Riemann sum
//! `(dxi/2π)²·Σ_ξΣ_η c(ξ)m(ξ,η)f(ξ−η)g(η)` of [`pair_integral`].

use std::sync::Arc;

use serde::Serialize;

use crate::bilinear::{
    direct_lattice, pair_integral, real_part_doubled, ChiProductPlan, LatticeSymbol, LatticeTables, NonlinearPlan,
};
use crate::evolution::{apply_s, Evolver};
use crate::spectral_core::{
    abs_pow, conj_reflect, project_spectrum, spectral_l2_sq, weight_m, Field, Grid, Projection, C64,
};
use crate::symbols::{BilinearSymbol, SymbolName};

fn conj(v: &[C64]) -> Vec<C64> {
    v.iter().map(|z| z.conj()).collect()
}

fn add(a: &[C64], b: &[C64]) -> Vec<C64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Quartic flux of `E_N^{(2)} + E_N^{(3)}`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct QuarticA {
    pub a2: C64,
    pub a3: C64,
    pub a4: C64,
}

impl QuarticA {
    pub fn sum(&self) -> f64 {
        (self.a2 + self.a3 + self.a4).re
    }
}

/// The three summands of `N_Z`.
#[derive(Clone, Debug)]
pub struct NzTerms {
    pub vz: Vec<C64>,
    pub uz: Vec<C64>,
    pub uu: Vec<C64>,
}

impl NzTerms {
    pub fn total(&self) -> Vec<C64> {
        (0..self.vz.len()).map(|i| self.vz[i] + self.uz[i] + self.uu[i]).collect()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct WeightedEnergies {
    pub e2: f64,
    pub e3: [f64; 5],
}

impl WeightedEnergies {
    pub fn total(&self) -> f64 {
        self.e2 + self.e3.iter().sum::<f64>()
    }
}

/// Everything the energy functionals need for one grid: symbol tables and fast plans.
pub struct EnergyContext {
    grid: Grid,
    n_sob: i32,
    /// Input bins below `tol·max` are skipped in the O(n²) sums.
    pub tol: f64,
    plan: NonlinearPlan,
    euler: ChiProductPlan,
    qn: LatticeSymbol,
    mn: LatticeSymbol,
    q: LatticeSymbol,
    q1: LatticeSymbol,
    q2: LatticeSymbol,
    m: [LatticeSymbol; 5],
}

impl EnergyContext {
    pub fn new(grid: &Grid, n_sob: i32, tol: f64) -> EnergyContext {
        let tables = Arc::new(LatticeTables::new(grid));
        let sym = |name| LatticeSymbol::new(BilinearSymbol::with_n(name, n_sob), &tables);
        EnergyContext {
            grid: grid.clone(),
            n_sob,
            tol,
            plan: NonlinearPlan::new(grid),
            euler: ChiProductPlan::new(grid, true),
            qn: sym(SymbolName::QN),
            mn: sym(SymbolName::MN),
            q: sym(SymbolName::Q),
            q1: sym(SymbolName::Q1),
            q2: sym(SymbolName::Q2),
            m: [
                sym(SymbolName::M1),
                sym(SymbolName::M2),
                sym(SymbolName::M3),
                sym(SymbolName::M4),
                sym(SymbolName::M5),
            ],
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn nonlinearity(&self, uhat: &[C64]) -> Vec<C64> {
        self.plan.apply(uhat)
    }

    /// `Ŵ = |ξ|^N û`.
    pub fn w(&self, uhat: &[C64]) -> Vec<C64> {
        let n = self.n_sob as f64;
        uhat.iter().zip(self.grid.xis()).map(|(z, x)| z * abs_pow(x, n)).collect()
    }

    /// `N_N` as the direct sum with `q_N` on `(V, W)`.
    pub fn nn_direct(&self, uhat: &[C64]) -> Vec<C64> {
        direct_lattice(&self.grid, &self.qn, &real_part_doubled(uhat), &self.w(uhat), self.tol)
    }

    /// `N_N = |D|^N N`, which agrees with [`Self::nn_direct`] on the lattice.
    pub fn nn_fast(&self, uhat: &[C64]) -> Vec<C64> {
        self.w(&self.plan.apply(uhat))
    }

    pub fn e2n(&self, uhat: &[C64]) -> f64 {
        spectral_l2_sq(&self.grid, &self.w(uhat))
    }

    /// `(1/4π²)∬ P(ξ)conj(Q(η))[m_N(ξ,η)conj(U(ξ−η)) + conj(m_N(η,ξ))U(η−ξ)]`.
    fn cubic_form(&self, p: &[C64], q: &[C64], u: &[C64]) -> C64 {
        let g = &self.grid;
        pair_integral(g, &self.mn, &conj(u), &conj(q), p, self.tol)
            + pair_integral(g, &self.mn.conjugated(), u, p, &conj(q), self.tol)
    }

    /// `E_N^{(3)}`; the imaginary part is a discretization residual.
    pub fn e3n(&self, uhat: &[C64]) -> C64 {
        let w = self.w(uhat);
        self.cubic_form(&w, &w, uhat)
    }

    pub fn quartic_a(&self, uhat: &[C64]) -> QuarticA {
        let w = self.w(uhat);
        let nn = self.nn_fast(uhat);
        let nl = self.plan.apply(uhat);
        QuarticA {
            a2: self.cubic_form(&nn, &w, uhat),
            a3: self.cubic_form(&w, &nn, uhat),
            a4: self.cubic_form(&w, &w, &nl),
        }
    }

    /// `Ẑ = (1+ξ²)·F[Su]` and the localization flag of `S`.
    pub fn z(&self, u: &Field, t: f64, ev: &Evolver) -> (Vec<C64>, bool) {
        let (s, ok) = apply_s(u, t, ev);
        let z = s.spectrum().iter().zip(self.grid.xis()).map(|(a, x)| a * weight_m(x)).collect();
        (z, ok)
    }

    /// `N_Z` summands through padded products.
    pub fn nz(&self, uhat: &[C64], zhat: &[C64]) -> NzTerms {
        let xis = self.grid.xis();
        let v = real_part_doubled(uhat);
        let zz = add(zhat, &conj_reflect(zhat));
        let over_m = |h: &[C64]| -> Vec<C64> { h.iter().zip(&xis).map(|(a, x)| a / weight_m(*x)).collect() };
        let times_m = |h: Vec<C64>| -> Vec<C64> { h.iter().zip(&xis).map(|(a, x)| a * weight_m(*x)).collect() };
        NzTerms {
            vz: times_m(self.plan.apply_pair(&v, &over_m(zhat))),
            uz: times_m(self.plan.apply_pair(&over_m(&zz), uhat)),
            uu: times_m(self.euler.apply(&v, uhat)).into_iter().map(|a| -a).collect(),
        }
    }

    /// `N_Z` summands as direct sums with `q`, `q₁`, `q₂`.
    pub fn nz_direct(&self, uhat: &[C64], zhat: &[C64]) -> NzTerms {
        let g = &self.grid;
        let v = real_part_doubled(uhat);
        let zz = add(zhat, &conj_reflect(zhat));
        NzTerms {
            vz: direct_lattice(g, &self.q, &v, zhat, self.tol),
            uz: direct_lattice(g, &self.q1, &zz, uhat, self.tol),
            uu: direct_lattice(g, &self.q2, &v, uhat, self.tol),
        }
    }

    /// `2Re(1/4π²)∬ m(ξ,η)F(η)G(ξ−η)conj(H(ξ))`.
    fn weighted_form(&self, l: usize, f: &[C64], g: &[C64], h: &[C64]) -> f64 {
        2.0 * pair_integral(&self.grid, &self.m[l], g, f, &conj(h), self.tol).re
    }

    /// Inputs `(F, G)` of the cubic correction `l` in terms of `(u, Z)`.
    fn slots<'a>(l: usize, u: &'a [C64], ub: &'a [C64], z: &'a [C64], zb: &'a [C64]) -> (&'a [C64], &'a [C64]) {
        match l {
            0 => (z, u),
            1 => (u, z),
            2 => (u, zb),
            3 => (u, u),
            _ => (u, ub),
        }
    }

    pub fn ew(&self, uhat: &[C64], zhat: &[C64]) -> WeightedEnergies {
        let (ub, zb) = (conj_reflect(uhat), conj_reflect(zhat));
        let mut e3 = [0.0; 5];
        for (l, e) in e3.iter_mut().enumerate() {
            let (f, g) = Self::slots(l, uhat, &ub, zhat, &zb);
            *e = self.weighted_form(l, f, g, zhat);
        }
        WeightedEnergies { e2: spectral_l2_sq(&self.grid, zhat), e3 }
    }

    /// `J₁..J₅`: each cubic correction with one input at a time replaced by its nonlinearity.
    pub fn j_terms(&self, uhat: &[C64], zhat: &[C64], nhat: &[C64], nzhat: &[C64]) -> [f64; 5] {
        let (ub, zb) = (conj_reflect(uhat), conj_reflect(zhat));
        let (nb, nzb) = (conj_reflect(nhat), conj_reflect(nzhat));
        let mut j = [0.0; 5];
        for (l, out) in j.iter_mut().enumerate() {
            let (f, g) = Self::slots(l, uhat, &ub, zhat, &zb);
            let (df, dg) = Self::slots(l, nhat, &nb, nzhat, &nzb);
            *out = self.weighted_form(l, df, g, zhat)
                + self.weighted_form(l, f, dg, zhat)
                + self.weighted_form(l, f, g, nzhat);
        }
        j
    }

    /// `d/dt E_w^{(2)}` split into `I₁..I₅` by the summands of `N_Z`, conjugate parts included.
    pub fn i_terms(&self, uhat: &[C64], zhat: &[C64]) -> [f64; 5] {
        let g = &self.grid;
        let v = real_part_doubled(uhat);
        let zb = conj_reflect(zhat);
        let ub = conj_reflect(uhat);
        let cz = conj(zhat);
        let pair = |m: &LatticeSymbol, f: &[C64], h: &[C64]| 2.0 * pair_integral(g, m, f, h, &cz, self.tol).re;
        [
            pair(&self.q, &v, zhat),
            pair(&self.q1, zhat, uhat),
            pair(&self.q1, &zb, uhat),
            pair(&self.q2, uhat, uhat),
            pair(&self.q2, &ub, uhat),
        ]
    }
}

/// `‖P_l h‖_{L²}` for every band of the grid.
pub fn band_norms(grid: &Grid, hat: &[C64]) -> Vec<(i32, f64)> {
    let (lo, hi) = grid.k_range();
    (lo..=hi)
        .map(|k| (k, spectral_l2_sq(grid, &project_spectrum(grid, hat, Projection::Band(k))).sqrt()))
        .collect()
}

pub fn compute_w(u: &Field, n_sob: i32) -> Field {
    u.multiply(|x| C64::new(abs_pow(x, n_sob as f64), 0.0))
}

pub fn compute_nn(u: &Field, n_sob: i32) -> Field {
    let ctx = EnergyContext::new(u.grid(), n_sob, 0.0);
    Field::from_spectrum(u.grid(), ctx.nn_direct(u.spectrum()), u.t).expect("finite N_N")
}

pub fn energy_e2n(u: &Field, n_sob: i32) -> f64 {
    spectral_l2_sq(u.grid(), compute_w(u, n_sob).spectrum())
}
