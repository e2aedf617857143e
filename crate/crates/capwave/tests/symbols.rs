use capwave::spectral_core::pow2;
use capwave::symbols::*;
use capwave::C64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn sym(name: SymbolName) -> BilinearSymbol {
    BilinearSymbol::new(name)
}

fn close(a: C64, b: C64, tol: f64) -> bool {
    (a - b).norm() <= tol * (1.0 + b.norm())
}

/// Random point with `η` in a dyadic band and `ξ−η` comparable or smaller.
fn in_support_point(rng: &mut ChaCha8Rng) -> (f64, f64) {
    loop {
        let eta: f64 = rng.gen_range(0.05..40.0) * if rng.gen::<bool>() { 1.0 } else { -1.0 };
        let x: f64 = rng.gen_range(-3.0..3.0) * eta.abs();
        if chi(x, eta) > 0.0 {
            return (x + eta, eta);
        }
    }
}

#[test]
fn chi_examples() {
    assert_eq!(chi(1.0, 1.0), 1.0);
    assert_eq!(chi(-1.0, 2.0), 1.0);
    for x in [-3.0, 0.0, 0.5, 100.0] {
        assert_eq!(chi(x, pow2(-20)), 0.0);
        assert_eq!(chi(x, -pow2(-20)), 0.0);
    }
}

#[test]
fn bilinear_examples() {
    assert!(close(q0(2.0, 1.0), C64::new(0.0, 1.0), 1e-15));
    let a = sym(SymbolName::A).eval(2.0, 1.0);
    assert!(close(a, C64::new(-1.0 / (2.0 * 2f64.sqrt() - 2.0), 0.0), 1e-14));
    assert!((a.re + 1.20711).abs() < 1e-5);
    let b = sym(SymbolName::B).eval(1.0, 2.0);
    assert!(close(b, C64::new(1.0 + 2f64.sqrt(), 0.0), 1e-14));
    for xi in [-5.0, 0.0, 0.7, 30.0] {
        assert_eq!(q0(xi, pow2(-12)), C64::new(0.0, 0.0));
    }
}

#[test]
fn phase_examples() {
    for xi in [0.3, 1.0, 7.5] {
        assert_eq!(eval_phase(Signature::PPM, xi, 0.0, -xi), 0.0);
    }
    let p = eval_phase(Signature::PPP, 2.0, 1.0, 0.0);
    assert!((p - (2f64.powf(1.5) - 2.0)).abs() < 1e-15);
    assert!((p - 0.82843).abs() < 1e-5);
}

#[test]
fn cubic_vanishes_with_q0() {
    // σ below the χ floor kills every q₀(η,σ) factor of c^{+++}
    let s = pow2(-14);
    for (xi, eta) in [(1.0, 0.5), (2.0, 3.0), (-1.0, 0.7)] {
        assert_eq!(eval_cubic(Signature::PPP, xi, eta, s), 0.0);
    }
}

#[test]
fn ctilde_examples() {
    let want = -(8.0 * std::f64::consts::PI / 3.0) * (1.0 + 2f64.sqrt());
    assert!((ctilde(1.0) - want).abs() <= 1e-10 * want.abs());
    assert!((ctilde(1.0) + 20.22527).abs() < 1e-5);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..1000 {
        let xi = rng.gen_range(0.5..64.0);
        assert!(ctilde_complex(xi).im.abs() <= 1e-12 * (1.0 + ctilde_complex(xi).re.abs()));
    }
    assert_eq!(ctilde(pow2(-26)), 0.0);
    assert_eq!(ctilde(0.0), 0.0);
}

#[test]
fn ctilde_matches_cubic_at_resonance() {
    for xi in [0.5, 1.0, 3.0, 10.0] {
        let c = eval_cubic(Signature::PPM, xi, 0.0, -xi);
        let want = -(8.0 * std::f64::consts::PI * xi.sqrt() / 3.0) * c;
        assert!((ctilde(xi) - want).abs() <= 1e-12 * want.abs(), "{xi}");
    }
}

#[test]
fn resonance_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let n = 10;
    for _ in 0..10_000 {
        let (xi, eta) = in_support_point(&mut rng);
        let pm = phase_minus(xi, eta);
        let pp = phase_plus(xi, eta);
        let mn = BilinearSymbol::with_n(SymbolName::MN, n).eval(xi, eta);
        let lhs = mn * pm;
        let rhs = -C64::new(0.0, 1.0) * (qn(xi, eta, n).conj() + qn(eta, xi, n));
        assert!((lhs - rhs).norm() <= 1e-12 * (rhs.norm() + qn(xi, eta, n).norm() + 1e-300), "mN at {xi},{eta}");

        let i = C64::new(0.0, 1.0);
        let checks = [
            (sym(SymbolName::A).eval(xi, eta) * pm, i * q0(xi, eta)),
            (sym(SymbolName::B).eval(xi, eta) * pp, i * q0(xi, eta)),
            (sym(SymbolName::M1).eval(xi, eta) * pm, i * (q(xi, eta) + q(eta, xi).conj())),
            (sym(SymbolName::M2).eval(xi, eta) * pm, i * q1(xi, eta)),
            (sym(SymbolName::M3).eval(xi, eta) * pp, i * q1(xi, eta)),
            (sym(SymbolName::M4).eval(xi, eta) * pm, i * q2(xi, eta)),
            (sym(SymbolName::M5).eval(xi, eta) * pp, i * q2(xi, eta)),
        ];
        for (k, (l, r)) in checks.iter().enumerate() {
            assert!((l - r).norm() <= 1e-12 * (1.0 + r.norm()), "identity {k} at {xi},{eta}: {l} vs {r}");
        }
    }
}

#[test]
fn reality_flags() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..5000 {
        let (xi, eta) = in_support_point(&mut rng);
        assert_eq!(q0(xi, eta).re, 0.0);
        assert_eq!(qn(xi, eta, 10).re, 0.0);
        for name in [SymbolName::MN, SymbolName::A, SymbolName::B, SymbolName::M1] {
            let v = sym(name).eval(xi, eta);
            assert!(v.im.abs() <= 1e-12 * (1.0 + v.re.abs()), "{name} at {xi},{eta}");
        }
        let sg = rng.gen_range(-20.0..20.0);
        for s in Signature::ALL {
            let c = eval_cubic_complex(s, xi, eta, sg);
            assert!(c.im.abs() <= 1e-12 * (1.0 + c.re.abs()));
        }
    }
}

#[test]
fn elementary_inequality() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let f = |a: f64, b: f64| (a + b).powf(1.5) - b.powf(1.5) - a.powf(1.5);
    assert!((f(1.0, 1.0) - 0.82843).abs() < 1e-5);
    for _ in 0..100_000 {
        let b = rng.gen_range(0.0..1e6);
        let a = rng.gen_range(0.0..=b);
        let v = f(a, b);
        let lo = a * b.sqrt() / 4.0;
        let hi = 4.0 * a * b.sqrt();
        let slack = 1e-12 * (a + b).powf(1.5);
        assert!(v >= lo - slack && v <= hi + slack, "a={a} b={b}");
    }
}

#[test]
fn euler_examples() {
    // plateau of χ: (x,y) = (1,1) sits strictly inside all cutoff plateaus
    let at = euler(SymbolName::A).unwrap();
    assert_eq!(at.eval(2.0, 1.0), C64::new(0.0, 0.0));
    assert!(euler(SymbolName::QN).is_err());

    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..1000 {
        let (xi, eta) = (rng.gen_range(-50.0..50.0), rng.gen_range(-50.0..50.0));
        let hfun = |s: f64| homogeneous_part(s * xi, s * eta) / phase_minus(s * xi, s * eta);
        let e: f64 = 1e-3;
        let d = (hfun(e.exp()) - hfun((-e).exp())) / (2.0 * e);
        assert!(d.abs() <= 1e-10 * (1.0 + hfun(1.0).abs()), "{d}");
    }
}

#[test]
fn euler_matches_finite_difference() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let e: f64 = 1e-5;
    let mut tested = 0;
    while tested < 400 {
        let (xi, eta) = in_support_point(&mut rng);
        for name in [SymbolName::A, SymbolName::B, SymbolName::Q0] {
            let base = sym(name);
            let scaled = |s: f64| base.eval(s * xi, s * eta);
            let fd = (scaled(e.exp()) - scaled((-e).exp())) / (2.0 * e);
            let exact = euler(name).unwrap().eval(xi, eta);
            let scale = 1.0 + base.eval(xi, eta).norm() + exact.norm();
            assert!((fd - exact).norm() <= 1e-6 * scale, "{name} at {xi},{eta}: {fd} vs {exact}");
        }
        tested += 1;
    }
}

#[test]
fn q2_matches_shifted_euler() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let e: f64 = 1e-5;
    for _ in 0..300 {
        let (xi, eta) = in_support_point(&mut rng);
        let scaled = |s: f64| q0(s * xi, s * eta);
        let fd = (scaled(e.exp()) - scaled((-e).exp())) / (2.0 * e);
        let want = -(fd - q0(xi, eta) * 1.5) * (1.0 + xi * xi);
        let got = q2(xi, eta);
        assert!((got - want).norm() <= 1e-6 * (1.0 + want.norm() + q0(xi, eta).norm() * (1.0 + xi * xi)));
    }
}

#[test]
fn sinfty_examples() {
    let q = sym(SymbolName::Q0);
    assert_eq!(sinfty_norm(&q, DyadicTriple::new(0, 0, 9), 64).unwrap(), 0.0);
    assert!(sinfty_norm(&q, DyadicTriple::new(0, 0, 0), 32).is_err());
    let v = sinfty_norm(&q, DyadicTriple::new(0, 0, 0), 64).unwrap();
    assert!(v.is_finite() && v > 0.0);
    let v2 = sinfty_norm(&q, DyadicTriple::new(0, 0, 0), 128).unwrap();
    assert!((v2 / v - 1.0).abs() <= 0.02, "{v} {v2}");
}

#[test]
fn sinfty_of_constant_bump_is_scale_free() {
    let one = |_: f64, _: f64| C64::new(1.0, 0.0);
    let a = sinfty_norm(&one, DyadicTriple::new(0, -3, 0), 64).unwrap();
    let b = sinfty_norm(&one, DyadicTriple::new(4, 1, 4), 64).unwrap();
    assert!((a / b - 1.0).abs() < 1e-9, "{a} {b}");
}

#[test]
fn triple_membership() {
    assert!(DyadicTriple::new(0, 0, 0).in_x());
    assert!(DyadicTriple::new(0, 6, -20).in_x());
    assert!(!DyadicTriple::new(0, 7, -20).in_x());
    assert_eq!(DyadicTriple::new(0, 0, 0).indicator(15), 1.0);
    assert_eq!(DyadicTriple::new(0, 0, -16).indicator(15), 0.0);
    assert_eq!(DyadicTriple::new(17, 0, 0).indicator(15), 0.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn chi_range_and_floor(x in -1e4f64..1e4, y in -1e4f64..1e4) {
        let c = chi(x, y);
        prop_assert!((0.0..=1.0 + 1e-15).contains(&c));
        if y.abs() <= pow2(-11) {
            prop_assert_eq!(c, 0.0);
        }
    }

    #[test]
    fn chi_even(x in -100f64..100.0, y in -100f64..100.0) {
        prop_assert_eq!(chi(x, y), chi(-x, -y));
    }

    #[test]
    fn symbols_finite(xi in -200f64..200.0, eta in -200f64..200.0) {
        for name in SymbolName::ALL {
            let v = sym(name).eval(xi, eta);
            prop_assert!(v.re.is_finite() && v.im.is_finite(), "{}", name);
        }
    }
}

#[test]
fn packed_families_of_very_different_size_do_not_mix() {
    let t = DyadicTriple { k: 2, k1: 2, k2: -9 };
    let loc = Localization::bilinear(t);
    let alone = sinfty_norms(&loc, 64, 1, |v, out| out[0] = q0(v[0], v[2])).unwrap()[0];
    let mixed = sinfty_norms(&loc, 64, 2, |v, out| {
        out[0] = q0(v[0], v[2]);
        out[1] = qn(v[0], v[2], 10);
    })
    .unwrap();
    assert!(mixed[1] > 1e25, "{}", mixed[1]);
    assert!((mixed[0] - alone).abs() <= 1e-9 * alone, "{} vs {alone}", mixed[0]);
}
