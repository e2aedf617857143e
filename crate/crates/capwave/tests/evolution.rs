use capwave::bilinear::{apply_direct, real_part_doubled};
use capwave::config::RunConfig;
use capwave::evolution::{apply_s, du_dt, make_initial_data, mainhyp, x_dx, Evolver};
use capwave::spectral_core::{lambda, Field, Grid, C64};
use capwave::symbols::{BilinearSymbol, SymbolName};

fn gaussian(grid: &Grid, amp: f64, w: f64, xi_c: f64) -> Field {
    Field::from_fn(grid, 0.0, |x| C64::from_polar(amp * (-x * x / (2.0 * w * w)).exp(), xi_c * x)).unwrap()
}

fn max_diff(a: &[C64], b: &[C64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn max_abs(a: &[C64]) -> f64 {
    a.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[test]
fn zero_amplitude_gives_zero_field() {
    let cfg = RunConfig { eps0: 0.0, n: 256, l: 64.0, ..Default::default() };
    let (u, rep) = make_initial_data(&cfg).unwrap();
    assert!(u.samples().iter().all(|z| *z == C64::new(0.0, 0.0)));
    assert_eq!(rep.total, 0.0);
}

#[test]
fn initial_data_is_normalized() {
    for (l, n, w, xi_c) in [(200.0, 4096, 10.0, 1.0), (64.0, 512, 2.0, 1.0), (4096.0, 4096, 2.5, 1.0)] {
        let cfg = RunConfig { l, n, width: w, xi_c, ..Default::default() };
        let (u, rep) = make_initial_data(&cfg).unwrap();
        let again = mainhyp(&u, cfg.n_sob, cfg.p1);
        assert!((again.total - cfg.eps0).abs() <= 1e-6 * cfg.eps0, "{again:?}");
        assert!((rep.total - again.total).abs() <= 1e-12 * cfg.eps0);
        assert!(rep.low_sup.is_finite() && rep.low_sup > 0.0);
        assert!(rep.hn > 0.0 && rep.xdx_h2 > 0.0);
        assert!((rep.hn + rep.xdx_h2 + rep.low_sup - rep.total).abs() < 1e-15);
    }
}

#[test]
fn noise_is_seeded() {
    let base = RunConfig { n: 256, l: 64.0, width: 2.0, noise: 0.1, seed: 7, ..Default::default() };
    let (a, _) = make_initial_data(&base).unwrap();
    let (b, _) = make_initial_data(&base).unwrap();
    let (c, _) = make_initial_data(&RunConfig { seed: 8, ..base.clone() }).unwrap();
    assert_eq!(a.samples(), b.samples());
    assert_ne!(a.samples(), c.samples());
}

#[test]
fn small_amplitude_derivative_is_linear() {
    let grid = Grid::new(2.0 * std::f64::consts::PI * 8.0, 128).unwrap();
    let xi = 3.0 / 8.0;
    for amp in [1e-2, 1e-4, 1e-6] {
        let u = Field::from_fn(&grid, 0.0, |x| C64::from_polar(amp, xi * x)).unwrap();
        let d = du_dt(&u);
        let lin: Vec<C64> = u.samples().iter().map(|z| z * C64::new(0.0, -lambda(xi))).collect();
        let rel = max_diff(d.samples(), &lin) / max_abs(&lin);
        assert!(rel < 10.0 * amp, "amp {amp}: {rel}");
    }
}

#[test]
fn nonlinear_part_matches_direct_sum() {
    let grid = Grid::new(32.0, 256).unwrap();
    let u = gaussian(&grid, 0.3, 2.0, 1.0);
    let d = du_dt(&u);
    let lin: Vec<C64> = u
        .spectrum()
        .iter()
        .zip(grid.xis())
        .map(|(z, x)| z * C64::new(0.0, -lambda(x)))
        .collect();
    let npart: Vec<C64> = d.spectrum().iter().zip(&lin).map(|(a, b)| a - b).collect();
    let m = BilinearSymbol::new(SymbolName::Q0);
    let v = Field::from_spectrum(&grid, real_part_doubled(u.spectrum()), 0.0).unwrap();
    let oracle = apply_direct(&m, &v, &u).unwrap();
    let rel = max_diff(&npart, oracle.spectrum()) / max_abs(oracle.spectrum());
    assert!(rel < 1e-10, "{rel}");
    assert!(d.samples().iter().all(|z| z.re.is_finite() && z.im.is_finite()));
}

#[test]
fn zero_state_stays_zero() {
    let grid = Grid::new(32.0, 128).unwrap();
    let ev = Evolver::new(&grid, 0.05, true);
    let w = vec![C64::new(0.0, 0.0); 128];
    assert_eq!(ev.step(&w, 0.0).unwrap(), w);
}

#[test]
fn linear_flow_is_exact() {
    let grid = Grid::new(64.0, 512).unwrap();
    let u0 = gaussian(&grid, 1.0, 2.0, 1.0);
    let ev = Evolver::new(&grid, 0.01, false);
    let mut w = ev.to_profile(u0.spectrum(), 0.0);
    for s in 0..10_000 {
        w = ev.step(&w, s as f64 * 0.01).unwrap();
    }
    let t = 10_000.0 * 0.01;
    let got = ev.to_physical(&w, t);
    let exact: Vec<C64> = u0
        .spectrum()
        .iter()
        .zip(grid.xis())
        .map(|(z, x)| z * C64::from_polar(1.0, -t * lambda(x)))
        .collect();
    let rel = max_diff(&got, &exact) / max_abs(&exact);
    assert!(rel < 1e-12, "{rel}");
}

fn evolve(grid: &Grid, u0: &Field, dt: f64, t_end: f64) -> Vec<C64> {
    let ev = Evolver::new(grid, dt, true);
    let steps = (t_end / dt).round() as usize;
    let mut w = ev.to_profile(u0.spectrum(), 0.0);
    for s in 0..steps {
        w = ev.step(&w, s as f64 * dt).unwrap();
    }
    ev.to_physical(&w, steps as f64 * dt)
}

#[test]
fn global_error_is_fourth_order() {
    let grid = Grid::new(32.0, 128).unwrap();
    let u0 = gaussian(&grid, 0.5, 1.5, 1.0);
    let t_end = 10.0;
    let reference = evolve(&grid, &u0, 0.0125, t_end);
    let dts = [0.1, 0.05, 0.025];
    let errs: Vec<f64> = dts.iter().map(|&dt| max_diff(&evolve(&grid, &u0, dt, t_end), &reference)).collect();
    // Richardson: the reference carries error (1/8)^4 of the coarsest, small next to the fitted ratios.
    let xs: Vec<f64> = dts.iter().map(|d| d.ln()).collect();
    let ys: Vec<f64> = errs.iter().map(|e| e.ln()).collect();
    let (mx, my) = (xs.iter().sum::<f64>() / 3.0, ys.iter().sum::<f64>() / 3.0);
    let slope = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum::<f64>()
        / xs.iter().map(|x| (x - mx).powi(2)).sum::<f64>();
    assert!((3.7..=4.3).contains(&slope), "order {slope}, errors {errs:?}");
    assert!(errs[2] > 1e-13, "errors at roundoff: {errs:?}");
}

#[test]
fn s_at_time_zero_is_dilation() {
    let grid = Grid::new(64.0, 256).unwrap();
    let u = gaussian(&grid, 1.0, 3.0, 0.0);
    let ev = Evolver::new(&grid, 0.01, true);
    let (s, ok) = apply_s(&u, 0.0, &ev);
    assert!(ok);
    let xd = x_dx(&u);
    assert!(max_diff(s.samples(), xd.samples()) < 1e-14);
    for (i, z) in s.samples().iter().enumerate() {
        let x = grid.x(i);
        let exact = -x * x / 9.0 * (-x * x / 18.0).exp();
        assert!((z.re - exact).abs() < 1e-10 && z.im.abs() < 1e-10, "x={x}");
    }
    // ∂_x u is odd, so x∂_x u is even about the center
    let n = grid.n();
    for i in 1..n / 2 {
        assert!((s.samples()[n / 2 + i] - s.samples()[n / 2 - i]).norm() < 1e-10);
    }
}

#[test]
fn s_amplitude_scaling() {
    let grid = Grid::new(64.0, 256).unwrap();
    let u = gaussian(&grid, 1.0, 2.0, 1.0);
    let ev = Evolver::new(&grid, 0.01, true);
    let lin = Evolver::new(&grid, 0.01, false);
    let t = 3.0;
    let (s1, _) = apply_s(&u, t, &lin);
    let nl = ev.nonlinearity(u.spectrum());
    for lam in [1e-3, 1e-2, 0.1, 1.0] {
        let (s, _) = apply_s(&u.scale(lam), t, &ev);
        let pred: Vec<C64> =
            s1.spectrum().iter().zip(&nl).map(|(a, b)| a * lam + b * (1.5 * t * lam * lam)).collect();
        let rel = max_diff(s.spectrum(), &pred) / max_abs(&pred);
        assert!(rel < 1e-10, "λ={lam}: {rel}");
    }
}

#[test]
fn s_commutes_with_linear_flow() {
    let grid = Grid::new(400.0, 2048).unwrap();
    let f0 = gaussian(&grid, 1.0, 5.0, 2.0);
    let lin = Evolver::new(&grid, 0.01, false);
    for t in [0.0, 1.0, 10.0] {
        let u = Field::from_spectrum(&grid, lin.to_physical(f0.spectrum(), t), t).unwrap();
        let (s, ok) = apply_s(&u, t, &lin);
        assert!(ok);
        let rhs = lin.to_physical(x_dx(&f0).spectrum(), t);
        let rel = max_diff(s.spectrum(), &rhs) / max_abs(&rhs);
        assert!(rel < 1e-8, "t={t}: {rel}");
    }
}

#[test]
fn localization_flag() {
    let grid = Grid::new(64.0, 256).unwrap();
    let ev = Evolver::new(&grid, 0.01, true);
    let inside = gaussian(&grid, 1.0, 2.0, 1.0);
    assert!(apply_s(&inside, 0.0, &ev).1);
    let outside = Field::from_fn(&grid, 0.0, |x| C64::new((-(x - 25.0).powi(2) / 4.0).exp(), 0.0)).unwrap();
    assert!(!apply_s(&outside, 0.0, &ev).1);
}
