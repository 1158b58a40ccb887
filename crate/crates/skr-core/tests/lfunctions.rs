use num_complex::Complex64;
use proptest::prelude::*;
use skr_core::lfunctions::cfkrs::*;
use skr_core::lfunctions::lvalues::{harmonic_weight, sym2_at_1_afe};
use skr_core::lfunctions::petersson::*;
use skr_core::lfunctions::*;
use skr_core::modforms::{eigenbasis, Eigenform, DEFAULT_PREC_BITS};
use std::sync::OnceLock;

/// (f ∈ S₂₂, Δ) with coefficients to 80·11².
fn pair() -> &'static (Eigenform, Eigenform) {
    static P: OnceLock<(Eigenform, Eigenform)> = OnceLock::new();
    P.get_or_init(|| {
        let n = 80 * 121 + 1;
        let f = eigenbasis(22, n, DEFAULT_PREC_BITS).unwrap().remove(0);
        let g = eigenbasis(12, n, DEFAULT_PREC_BITS).unwrap().remove(0);
        (f, g)
    })
}

fn central(cfg: RsConfig) -> f64 {
    let (f, g) = pair();
    rankin_central_value(f, g, &RsEvaluator::new(11, cfg).unwrap()).unwrap().value
}

#[test]
fn central_value_stable_under_doubled_cutoff() {
    let a = central(RsConfig::default());
    let b = central(RsConfig { cutoff_c: 80.0, ..RsConfig::default() });
    assert!(((a - b) / a).abs() < 1e-6, "{a} {b}");
}

#[test]
fn central_value_independent_of_test_function() {
    let a = central(RsConfig::default());
    let b = central(RsConfig { h_a: 0.5, ..RsConfig::default() });
    let c = central(RsConfig { h_a: 0.5, cutoff_c: 80.0, ..RsConfig::default() });
    assert!(((a - b) / a).abs() < 1e-6, "{a} {b}");
    // the faster-decaying kernel settles far below the default's truncation noise
    assert!(((b - c) / b).abs() < 1e-10, "{b} {c}");
}

#[test]
fn sym2_at_1_reproduces_delta_norm() {
    // (π/2)(4π)^12/Γ(12)·⟨Δ,Δ⟩
    let (_, g) = pair();
    let l = sym2_at_1_afe(&Hecke::from_eigenform(g), 12).unwrap();
    assert!((l.value - 0.63179294572788).abs() < 1e-12, "{l:?}");
    assert!(l.err < 1e-12);
    assert!(harmonic_weight(12, l.value) > 0.0);
}

#[test]
fn twisted_values_are_positive_and_symmetric() {
    let (f, _) = pair();
    for d in [-3, -4, -7, -8, -11] {
        let t = twisted_central_value(f, d).unwrap();
        assert!(t.value > 0.0, "D = {d}: {t:?}");
        assert!(t.symmetry_defect < 1e-8);
        assert!(t.err < 1e-12);
    }
    assert!(twisted_central_value(f, -12).is_err());
    assert!(twisted_central_value(f, 5).is_err());
}

#[test]
fn a_f_euler_product_converges_to_analytic_value() {
    let (f, _) = pair();
    let h = Hecke::from_eigenform(f);
    for alpha in [0.1, 0.25] {
        let coarse = a_f_consistency(&h, 22, alpha, 100).unwrap();
        let fine = a_f_consistency(&h, 22, alpha, 1000).unwrap();
        let rel = |r: &AfConsistency| (r.euler / r.analytic - 1.0).abs();
        assert!(rel(&fine) < rel(&coarse) / 5.0, "α = {alpha}");
        assert!(rel(&fine) < 1e-3);
    }
}

#[test]
fn petersson_spot_checks() {
    let s12 = PeterssonSpectral::new(12).unwrap();
    for (m, n) in [(1, 1), (2, 3), (6, 6)] {
        let r = s12.check(m, n, 10_000).unwrap();
        assert!(r.diff() <= 1e-8 + r.budget(), "{r:?}");
    }
    let s22 = PeterssonSpectral::new(22).unwrap();
    assert_eq!(s22.forms.len(), 1);
    let r = s22.check(2, 2, 10_000).unwrap();
    assert!(r.diff() <= 1e-8 + r.budget(), "{r:?}");
    assert!(r.tail < 1e-30);
    assert!(s22.check(11, 1, 10).is_err());
    assert!(PeterssonSpectral::new(13).is_err());
}

#[test]
fn constants_reduce_exactly() {
    let (a, b) = conjecture_constants().unwrap();
    assert_eq!(a, rug::Rational::from((4, 5)));
    assert_eq!(b, rug::Rational::from(2));
}

#[test]
fn m0_factor_at_two() {
    let m = m0_local_factor(2).unwrap();
    assert_eq!(m.closed, 1.25);
    assert!((m.truncated - 1.25).abs() < 1e-12);
    assert!(m0_local_factor(4).is_err());
}

#[test]
fn satake_draws_are_seeded() {
    let a = satake_draws(42, 5);
    assert_eq!(a, satake_draws(42, 5));
    assert_ne!(a, satake_draws(43, 5));
    for z in a {
        assert!((z.norm() - 1.0).abs() < 1e-15 && z.im >= 0.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn local_factor_truncation_matches_closed_form(theta in 0.0f64..std::f64::consts::PI, pi in 0usize..3, alpha in 0.0f64..0.5) {
        let p = [2u64, 3, 5][pi];
        let (t, c) = cfkrs_local_factor(p, Complex64::from_polar(1.0, theta), alpha).unwrap();
        prop_assert!((t - c).norm() < 1e-12, "p = {}: {} vs {}", p, t, c);
        prop_assert!(c.im.abs() < 1e-12);
    }

    #[test]
    fn m0_closed_form(pi in 0usize..6) {
        let p = [2u64, 3, 5, 7, 11, 13][pi];
        let m = m0_local_factor(p).unwrap();
        prop_assert!((m.truncated - m.closed).abs() < 1e-12);
    }
}
