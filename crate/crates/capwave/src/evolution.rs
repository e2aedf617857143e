//! Initial data, the integrating-factor RK4 integrator and the vector field `S`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use std::sync::Arc;

use crate::bilinear::{direct_lattice, real_part_doubled, LatticeSymbol, LatticeTables, NonlinearPlan};
use crate::symbols::{BilinearSymbol, SymbolName};
use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::spectral_core::{
    derivative, inner_mass_fraction, lambda, pow2, project_spectrum, sobolev_norm, spectral_l2_sq, Field, Grid,
    Projection, C64,
};

/// Summands of the smallness quantity for initial data.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct MainhypReport {
    /// `‖u₀‖_{H^N}`
    pub hn: f64,
    /// `‖x∂_x u₀‖_{H²}`
    pub xdx_h2: f64,
    /// `sup_{k≤0} 2^{−k(1/2−p₁)}[‖P_k u₀‖ + ‖P_k x∂_x u₀‖]`
    pub low_sup: f64,
    pub total: f64,
    /// Amplitude `c` multiplying the unit profile.
    pub scale: f64,
}

/// `x∂_x u` with `x` measured from the domain center.
pub fn x_dx(u: &Field) -> Field {
    let du = u.multiply(derivative);
    let grid = u.grid();
    let s: Vec<C64> = du.samples().iter().enumerate().map(|(i, z)| z * grid.x(i)).collect();
    Field::from_samples(grid, s, u.t).expect("finite product")
}

pub fn mainhyp(u: &Field, n_sob: i32, p1: f64) -> MainhypReport {
    let grid = u.grid();
    let xu = x_dx(u);
    let (lo, _) = grid.k_range();
    let mut low_sup = 0.0f64;
    for k in lo..=0 {
        let a = spectral_l2_sq(grid, &project_spectrum(grid, u.spectrum(), Projection::Band(k))).sqrt();
        let b = spectral_l2_sq(grid, &project_spectrum(grid, xu.spectrum(), Projection::Band(k))).sqrt();
        low_sup = low_sup.max(pow2(-k) .powf(0.5 - p1) * (a + b));
    }
    let hn = sobolev_norm(grid, u.spectrum(), n_sob as f64);
    let xdx_h2 = sobolev_norm(grid, xu.spectrum(), 2.0);
    MainhypReport { hn, xdx_h2, low_sup, total: hn + xdx_h2 + low_sup, scale: 1.0 }
}

/// Modulated Gaussian `c·e^{−x²/2w²}e^{iξ_c x}` scaled so the smallness quantity equals `ε₀`.
pub fn make_initial_data(cfg: &RunConfig) -> Result<(Field, MainhypReport)> {
    let grid = Grid::new(cfg.l, cfg.n)?;
    if cfg.eps0 == 0.0 {
        return Ok((Field::zeros(&grid, 0.0), MainhypReport::default()));
    }
    let w = cfg.width;
    let mut base = Field::from_fn(&grid, 0.0, |x| C64::from_polar((-x * x / (2.0 * w * w)).exp(), cfg.xi_c * x))?;
    if cfg.noise > 0.0 {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let pert: Vec<C64> = base
            .spectrum()
            .iter()
            .map(|z| z.norm() * C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
            .collect();
        let pn = spectral_l2_sq(&grid, &pert).sqrt();
        let bn = spectral_l2_sq(&grid, base.spectrum()).sqrt();
        if pn > 0.0 {
            let s = cfg.noise * bn / pn;
            let spec: Vec<C64> = base.spectrum().iter().zip(&pert).map(|(a, b)| a + b * s).collect();
            base = Field::from_spectrum(&grid, spec, 0.0)?;
        }
    }
    let q = mainhyp(&base, cfg.n_sob, cfg.p1).total;
    if !(q > 0.0 && q.is_finite()) {
        return Err(Error::Normalization("profile has zero size".into()));
    }
    let c = cfg.eps0 / q;
    let u0 = base.scale(c);
    let mut rep = mainhyp(&u0, cfg.n_sob, cfg.p1);
    rep.scale = c;
    Ok((u0, rep))
}

enum Nonlinearity {
    Off,
    Fast(NonlinearPlan),
    /// O(n²) lattice sum; roundoff stays local to each output bin.
    Direct(LatticeSymbol),
}

/// Integrating-factor RK4 on the profile `w = e^{itΛ}û`.
pub struct Evolver {
    grid: Grid,
    nl: Nonlinearity,
    lam: Vec<f64>,
    pub dt: f64,
}

impl Evolver {
    pub fn new(grid: &Grid, dt: f64, nonlinear: bool) -> Evolver {
        let nl = if nonlinear { Nonlinearity::Fast(NonlinearPlan::new(grid)) } else { Nonlinearity::Off };
        Evolver::with(grid, dt, nl)
    }

    /// Same scheme with the nonlinearity evaluated by the direct sum.
    pub fn direct(grid: &Grid, dt: f64) -> Evolver {
        let tables = Arc::new(LatticeTables::new(grid));
        let q0 = LatticeSymbol::new(BilinearSymbol::new(SymbolName::Q0), &tables);
        Evolver::with(grid, dt, Nonlinearity::Direct(q0))
    }

    fn with(grid: &Grid, dt: f64, nl: Nonlinearity) -> Evolver {
        Evolver { grid: grid.clone(), nl, lam: grid.xis().iter().map(|&x| lambda(x)).collect(), dt }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn is_linear(&self) -> bool {
        matches!(self.nl, Nonlinearity::Off)
    }

    /// `N̂(û)`, zero when the nonlinearity is disabled.
    pub fn nonlinearity(&self, uhat: &[C64]) -> Vec<C64> {
        match &self.nl {
            Nonlinearity::Fast(p) => p.apply(uhat),
            Nonlinearity::Direct(q0) => direct_lattice(&self.grid, q0, &real_part_doubled(uhat), uhat, 0.0),
            Nonlinearity::Off => vec![C64::new(0.0, 0.0); uhat.len()],
        }
    }

    /// `∂_t û = −iΛû + N̂`.
    pub fn du_dt(&self, uhat: &[C64]) -> Vec<C64> {
        let nl = self.nonlinearity(uhat);
        uhat.iter()
            .zip(&nl)
            .zip(&self.lam)
            .map(|((u, n), l)| C64::new(0.0, -l) * u + n)
            .collect()
    }

    /// `e^{−itΛ}` applied to `w`.
    pub fn to_physical(&self, w: &[C64], t: f64) -> Vec<C64> {
        w.iter().zip(&self.lam).map(|(z, l)| z * C64::from_polar(1.0, -t * l)).collect()
    }

    /// `e^{itΛ}` applied to `û`.
    pub fn to_profile(&self, uhat: &[C64], t: f64) -> Vec<C64> {
        uhat.iter().zip(&self.lam).map(|(z, l)| z * C64::from_polar(1.0, t * l)).collect()
    }

    fn rhs(&self, w: &[C64], t: f64) -> Vec<C64> {
        let nl = self.nonlinearity(&self.to_physical(w, t));
        self.to_profile(&nl, t)
    }

    /// `w(t+dt) − w(t)` as produced by one step.
    pub fn increment(&self, w: &[C64], t: f64) -> Result<Vec<C64>> {
        if self.is_linear() {
            return Ok(vec![C64::new(0.0, 0.0); w.len()]);
        }
        let (dt, h) = (self.dt, 0.5 * self.dt);
        let axpy = |a: &[C64], s: f64, b: &[C64]| -> Vec<C64> { a.iter().zip(b).map(|(x, y)| x + y * s).collect() };
        let a1 = self.rhs(w, t);
        let a2 = self.rhs(&axpy(w, h, &a1), t + h);
        let a3 = self.rhs(&axpy(w, h, &a2), t + h);
        let a4 = self.rhs(&axpy(w, dt, &a3), t + dt);
        let inc: Vec<C64> = (0..w.len()).map(|i| (a1[i] + (a2[i] + a3[i]) * 2.0 + a4[i]) * (dt / 6.0)).collect();
        if inc.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::NonFinite("time step"));
        }
        Ok(inc)
    }

    /// One step from `t` to `t + dt`. With the nonlinearity disabled `w` is returned unchanged.
    pub fn step(&self, w: &[C64], t: f64) -> Result<Vec<C64>> {
        if self.is_linear() {
            return Ok(w.to_vec());
        }
        let inc = self.increment(w, t)?;
        Ok(w.iter().zip(&inc).map(|(a, b)| a + b).collect())
    }
}

/// `∂_t u = −iΛu + N(u)`.
pub fn du_dt(u: &Field) -> Field {
    let ev = Evolver::new(u.grid(), 0.1, true);
    Field::from_spectrum(u.grid(), ev.du_dt(u.spectrum()), u.t).expect("finite derivative")
}

/// `Su = x∂_x u + (3/2)t(−iΛu + N(u))` and whether at least `1−10⁻⁶` of the mass lies in `|x| ≤ L/4`.
pub fn apply_s(u: &Field, t: f64, ev: &Evolver) -> (Field, bool) {
    let reliable = inner_mass_fraction(u) >= 1.0 - 1e-6;
    let xu = x_dx(u);
    let dt = ev.du_dt(u.spectrum());
    let spec: Vec<C64> = xu.spectrum().iter().zip(&dt).map(|(a, b)| a + b * (1.5 * t)).collect();
    (Field::from_spectrum(u.grid(), spec, t).expect("finite S"), reliable)
}
