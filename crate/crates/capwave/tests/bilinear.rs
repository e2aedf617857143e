use std::f64::consts::PI;

use capwave::bilinear::*;
use capwave::spectral_core::*;
use capwave::symbols::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn zero() -> C64 {
    C64::new(0.0, 0.0)
}

fn rel(a: &[C64], b: &[C64]) -> f64 {
    let num: f64 = a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum();
    let den: f64 = b.iter().map(|y| y.norm_sqr()).sum();
    (num / den.max(1e-300)).sqrt()
}

/// Random spectrum supported on `|j| < n/4`, with a smooth envelope around `center`.
fn band_limited(grid: &Grid, seed: u64, center: f64, real: bool) -> Field {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = grid.n() as i64;
    let spec: Vec<C64> = (0..grid.n())
        .map(|i| {
            let j = grid.index(i);
            if j.abs() >= n / 4 {
                return zero();
            }
            let xi = grid.xi(i);
            let env = (-(xi.abs() - center).powi(2) / 2.0).exp();
            C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5) * env
        })
        .collect();
    let f = Field::from_spectrum(grid, spec, 0.0).unwrap();
    if real {
        let s: Vec<C64> = f.samples().iter().map(|z| C64::new(z.re, 0.0)).collect();
        Field::from_samples(grid, s, 0.0).unwrap()
    } else {
        f
    }
}

#[test]
fn zero_inputs_give_zero() {
    let g = Grid::new(50.0, 64).unwrap();
    let f = band_limited(&g, 1, 1.0, false);
    let z = Field::zeros(&g, 0.0);
    let m = BilinearSymbol::new(SymbolName::Q0);
    assert!(apply_direct(&m, &f, &z).unwrap().spectrum().iter().all(|v| *v == zero()));
    assert!(apply_direct(&m, &z, &f).unwrap().spectrum().iter().all(|v| *v == zero()));
    assert!(apply_nonlinearity_fast(&z).spectrum().iter().all(|v| *v == zero()));
}

#[test]
fn grid_mismatch_rejected() {
    let a = Field::zeros(&Grid::new(50.0, 64).unwrap(), 0.0);
    let b = Field::zeros(&Grid::new(50.0, 128).unwrap(), 0.0);
    assert!(apply_direct(&BilinearSymbol::new(SymbolName::Q0), &a, &b).is_err());
}

#[test]
fn single_modes_give_one_bin() {
    let g = Grid::new(2.0 * PI * 8.0, 128).unwrap();
    let (ja, jb) = (5i64, 9i64);
    let mut fs = vec![zero(); 128];
    let mut gs = vec![zero(); 128];
    fs[g.slot(ja).unwrap()] = C64::new(1.0, 0.0);
    gs[g.slot(jb).unwrap()] = C64::new(1.0, 0.0);
    let f = Field::from_spectrum(&g, fs, 0.0).unwrap();
    let h = Field::from_spectrum(&g, gs, 0.0).unwrap();
    let m = BilinearSymbol::new(SymbolName::Q0);
    let out = apply_direct(&m, &f, &h).unwrap();
    let io = g.slot(ja + jb).unwrap();
    let (xa, xb) = (g.dxi() * ja as f64, g.dxi() * jb as f64);
    let want = m.eval(xa + xb, xb) * g.dxi() / (2.0 * PI);
    for (i, v) in out.spectrum().iter().enumerate() {
        if i == io {
            assert!((v - want).norm() < 1e-15);
        } else {
            assert_eq!(*v, zero());
        }
    }
}

#[test]
fn unit_symbol_is_pointwise_product() {
    let g = Grid::new(60.0, 256).unwrap();
    let f = band_limited(&g, 4, 1.0, false);
    let h = band_limited(&g, 5, 2.0, false);
    let one = |_: f64, _: f64| C64::new(1.0, 0.0);
    let out = apply_direct(&one, &f, &h).unwrap();
    let want: Vec<C64> = f.samples().iter().zip(h.samples()).map(|(a, b)| a * b).collect();
    assert!(rel(out.samples(), &want) <= 1e-10);
}

#[test]
fn fast_matches_direct_n512() {
    let g = Grid::new(100.0, 512).unwrap();
    let u = band_limited(&g, 11, 2.0, false);
    let v = Field::from_spectrum(&g, real_part_doubled(u.spectrum()), 0.0).unwrap();
    let direct = apply_direct(&BilinearSymbol::new(SymbolName::Q0), &v, &u).unwrap();
    let fast = apply_nonlinearity_fast(&u);
    assert!(rel(fast.spectrum(), direct.spectrum()) <= 1e-10);
}

#[test]
fn fast_matches_direct_many_seeds() {
    let g = Grid::new(40.0, 128).unwrap();
    let plan = NonlinearPlan::new(&g);
    let q0s = BilinearSymbol::new(SymbolName::Q0);
    for seed in 0..100 {
        let u = band_limited(&g, 1000 + seed, 0.5 + (seed % 7) as f64, seed % 2 == 0);
        let v = real_part_doubled(u.spectrum());
        let direct = direct_spectrum(&g, &q0s, &v, u.spectrum(), 0.0);
        let fast = plan.apply(u.spectrum());
        let e = rel(&fast, &direct);
        assert!(e <= 1e-10, "seed {seed}: {e}");
    }
}

#[test]
fn fast_handles_full_lattice_support() {
    // no band limit: truncation must agree between both paths
    let g = Grid::new(30.0, 128).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let spec: Vec<C64> = (0..128).map(|_| C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)).collect();
    let v = real_part_doubled(&spec);
    let direct = direct_spectrum(&g, &BilinearSymbol::new(SymbolName::Q0), &v, &spec, 0.0);
    let fast = NonlinearPlan::new(&g).apply(&spec);
    assert!(rel(&fast, &direct) <= 1e-10);
}

#[test]
fn quadratic_homogeneity() {
    let g = Grid::new(100.0, 256).unwrap();
    let u = band_limited(&g, 3, 1.5, true);
    let a = apply_nonlinearity_fast(&u);
    let b = apply_nonlinearity_fast(&u.scale(2.0));
    let scale = a.spectrum().iter().map(|z| z.norm()).fold(0.0, f64::max);
    for (x, y) in a.spectrum().iter().zip(b.spectrum()) {
        assert!((x * 4.0 - y).norm() <= 1e-12 * scale);
    }
}

#[test]
fn nonlinearity_vanishes_at_low_frequency() {
    for (l, n) in [(200.0, 512), (4096.0, 1024)] {
        let g = Grid::new(l, n).unwrap();
        let u = band_limited(&g, 21, 0.3, true);
        let out = NonlinearPlan::new(&g).apply(u.spectrum());
        for (i, v) in out.iter().enumerate() {
            if g.xi(i).abs() <= pow2(-25) {
                assert_eq!(*v, zero());
            }
        }
    }
}

#[test]
fn s_infinity_bounds_the_operator() {
    let g = Grid::new(200.0, 512).unwrap();
    let base = BilinearSymbol::new(SymbolName::Q0);
    for (k, k1, k2) in [(0, 0, 0), (1, -1, 1), (0, 2, 2), (-1, 1, 1)] {
        let loc = move |xi: f64, eta: f64| {
            base.eval(xi, eta) * (phi_band(k, xi) * phi_band(k1, xi - eta) * phi_band(k2, eta))
        };
        let s = sinfty_norm(&loc, DyadicTriple::new(k, k1, k2), 128).unwrap();
        for seed in 0..5 {
            let f = band_limited(&g, seed, pow2(k1), false);
            let h = band_limited(&g, 50 + seed, pow2(k2), false);
            let out = apply_direct(&loc, &f, &h).unwrap();
            let lhs = spectral_l2_sq(&g, out.spectrum()).sqrt();
            let rhs = s * linf(f.samples()) * spectral_l2_sq(&g, h.spectrum()).sqrt();
            assert!(lhs <= 1.1 * rhs, "({k},{k1},{k2}) seed {seed}: {lhs} vs {rhs}");
        }
    }
}

#[test]
fn trilinear_zero_and_single_bins() {
    let g = Grid::new(2.0 * PI * 8.0, 64).unwrap();
    let z = vec![zero(); 64];
    let mut f1 = vec![zero(); 64];
    let mut f2 = vec![zero(); 64];
    let mut f3 = vec![zero(); 64];
    let (ja, jb, jc) = (6i64, 3i64, -4i64);
    f1[g.slot(ja).unwrap()] = C64::new(1.0, 0.0);
    f2[g.slot(jb).unwrap()] = C64::new(0.5, 0.2);
    f3[g.slot(jc).unwrap()] = C64::new(-0.3, 0.7);
    for sig in Signature::ALL {
        assert_eq!(trilinear_integral(&g, sig, g.slot(2).unwrap(), &z, &f2, &f3, 0.0, None), zero());
    }
    // (+ + −): slot 3 sees conj(f̂₃(−σ)), nonzero at σ = −jc
    let sig = Signature::PPM;
    let s_star = -jc;
    let xi_j = ja + jb + s_star;
    let out = trilinear_integral(&g, sig, g.slot(xi_j).unwrap(), &f1, &f2, &f3, 0.0, None);
    let d = g.dxi();
    let (xi, eta, sigma) = (xi_j as f64 * d, (jb + s_star) as f64 * d, s_star as f64 * d);
    let want = d * d * eval_cubic(sig, xi, eta, sigma) * C64::new(1.0, 0.0) * C64::new(0.5, 0.2) * C64::new(-0.3, -0.7);
    assert!((out - want).norm() <= 1e-14 * (1.0 + want.norm()), "{out} vs {want}");
}

#[test]
fn trilinear_band_sum_reproduces_full() {
    let g = Grid::new(40.0, 64).unwrap();
    let f1 = band_limited(&g, 1, 1.0, false);
    let f2 = band_limited(&g, 2, 1.5, false);
    let f3 = band_limited(&g, 3, 0.8, false);
    let (lo, hi) = g.k_range();
    for sig in Signature::ALL {
        let xs = g.slot(5).unwrap();
        let full = trilinear_integral(&g, sig, xs, f1.spectrum(), f2.spectrum(), f3.spectrum(), 3.0, None);
        let mut sum = zero();
        for a in lo..=hi {
            for b in lo..=hi {
                for c in lo..=hi {
                    sum += trilinear_integral(&g, sig, xs, f1.spectrum(), f2.spectrum(), f3.spectrum(), 3.0, Some((a, b, c)));
                }
            }
        }
        assert!((sum - full).norm() <= 1e-10 * (1.0 + full.norm()), "{}: {sum} vs {full}", sig.label());
    }
}

#[test]
fn trilinear_conjugation_consistency() {
    let g = Grid::new(40.0, 64).unwrap();
    let fs: Vec<Field> = (0..3).map(|s| band_limited(&g, 30 + s, 1.0, false)).collect();
    let r: Vec<Vec<C64>> = fs.iter().map(|f| conj_reflect(f.spectrum())).collect();
    for sig in Signature::ALL {
        for j in [3i64, -7, 11] {
            let t = 2.5;
            let a = trilinear_integral(&g, sig, g.slot(j).unwrap(), fs[0].spectrum(), fs[1].spectrum(), fs[2].spectrum(), t, None);
            let b = trilinear_integral(&g, sig, g.slot(-j).unwrap(), &r[0], &r[1], &r[2], -t, None);
            assert!((a.conj() - b).norm() <= 1e-12 * (1.0 + a.norm()), "{}: {a} vs {b}", sig.label());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn direct_is_bilinear(seed in any::<u64>(), alpha in -3.0f64..3.0) {
        let g = Grid::new(30.0, 64).unwrap();
        let f = band_limited(&g, seed, 1.0, false);
        let f2 = band_limited(&g, seed ^ 1, 2.0, false);
        let h = band_limited(&g, seed ^ 2, 1.0, false);
        let m = BilinearSymbol::new(SymbolName::Q0);
        let lhs = apply_direct(&m, &f.scale(alpha).add(&f2).unwrap(), &h).unwrap();
        let a = apply_direct(&m, &f, &h).unwrap();
        let b = apply_direct(&m, &f2, &h).unwrap();
        let want: Vec<C64> = a.spectrum().iter().zip(b.spectrum()).map(|(x, y)| x * alpha + y).collect();
        prop_assert!(rel(lhs.spectrum(), &want) <= 1e-12);
    }
}

#[test]
fn lattice_symbols_match_pointwise_evaluation() {
    for (l, n) in [(40.0, 64usize), (3000.0, 64)] {
        let g = Grid::new(l, n).unwrap();
        let tables = std::sync::Arc::new(LatticeTables::new(&g));
        let h = (n / 2) as i64;
        let d = g.dxi();
        for name in SymbolName::ALL {
            let b = BilinearSymbol::new(name);
            let ls = LatticeSymbol::new(b, &tables);
            for ja in -h..h {
                for jb in -h..h {
                    let want = b.eval(ja as f64 * d, jb as f64 * d);
                    let got = ls.eval_j(ja, jb);
                    assert!(
                        (want - got).norm() <= 1e-12 * (1.0 + want.norm()),
                        "{name} at ({ja},{jb}): {want} vs {got}"
                    );
                }
            }
        }
    }
}

#[test]
fn lattice_direct_matches_pointwise_direct() {
    let g = Grid::new(60.0, 128).unwrap();
    let tables = std::sync::Arc::new(LatticeTables::new(&g));
    let f = band_limited(&g, 7, 1.0, false);
    let h = band_limited(&g, 8, 1.5, false);
    for name in [SymbolName::A, SymbolName::MN, SymbolName::M3, SymbolName::Q2] {
        let b = BilinearSymbol::new(name);
        let x = direct_spectrum(&g, &b, f.spectrum(), h.spectrum(), 0.0);
        let y = direct_lattice(&g, &LatticeSymbol::new(b, &tables), f.spectrum(), h.spectrum(), 0.0);
        assert!(rel(&y, &x) <= 1e-12, "{name}");
    }
}

#[test]
fn separable_products_match_direct() {
    let g = Grid::new(50.0, 128).unwrap();
    let f = band_limited(&g, 2, 1.0, false);
    let h = band_limited(&g, 3, 2.0, false);
    let plain = ChiProductPlan::new(&g, false).apply(f.spectrum(), h.spectrum());
    let q0s = BilinearSymbol::new(SymbolName::Q0);
    let direct = direct_spectrum(&g, &q0s, f.spectrum(), h.spectrum(), 0.0);
    assert!(rel(&plain, &direct) <= 1e-10);
    let pair = NonlinearPlan::new(&g).apply_pair(f.spectrum(), h.spectrum());
    assert!(rel(&pair, &direct) <= 1e-10);

    // the Euler cutoffs only act when one frequency is ~2^10 times another:
    // put mass at the lattice extremes of a long grid
    let n = 8192usize;
    let g = Grid::new(5000.0, n).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut spec = || -> Vec<C64> {
        (0..n)
            .map(|i| {
                let j = g.index(i).abs();
                if j <= 8 || j >= 2500 {
                    C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)
                } else {
                    C64::new(0.0, 0.0)
                }
            })
            .collect()
    };
    let (fs, hs) = (spec(), spec());
    let eu = ChiProductPlan::new(&g, true).apply(&fs, &hs);
    let sym = |xi: f64, eta: f64| C64::new(0.0, homogeneous_part(xi, eta) * euler_chi(xi - eta, eta));
    let direct = direct_spectrum(&g, &sym, &fs, &hs, 0.0);
    let scale = direct.iter().map(|z| z.norm()).fold(0.0, f64::max);
    assert!(scale > 1e-5, "{scale}");
    let err = eu.iter().zip(&direct).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    assert!(err <= 1e-10 * scale, "{err} vs {scale}");
}
