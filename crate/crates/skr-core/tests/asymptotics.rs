use proptest::prelude::*;
use skr_core::asymptotics::bessel::*;
use skr_core::asymptotics::sums::*;
use skr_core::asymptotics::weight::WeightFunction;
use std::f64::consts::PI;

#[test]
fn exponentially_small_corner() {
    let k = 128.0;
    let w = WeightFunction::new(k, 0).unwrap();
    for (a, b) in [(k / 200.0, k), (k, k / 100.0 - 0.01), (k / 100.0 - 0.01, k / 100.0 - 0.01)] {
        let p = BesselSumParams::new(a, b, k).unwrap();
        assert_eq!(p.regime(), Regime::ExponentiallySmall);
        let s = s_direct(&p, &w).unwrap();
        assert!(s.norm() <= (-k / 2.0).exp(), "α={a} β={b}: {s}");
    }
    let s = single_bessel_direct(0, k / 200.0, &w).unwrap();
    assert!(s.abs() < 1e-20);
}

#[test]
fn asymptotic_matches_direct() {
    let mut last = [f64::INFINITY; 3];
    for k in [64.0, 128.0, 256.0] {
        let w = WeightFunction::new(k, 2 * TAYLOR_J).unwrap();
        for (i, g) in [0.2, 0.5, 0.8].into_iter().enumerate() {
            let p = BesselSumParams::at_gamma(k, g, 1.5).unwrap();
            let d = s_direct(&p, &w).unwrap();
            let a = s_asymptotic(&p, &w).unwrap();
            assert_eq!(d.re, 0.0);
            assert!(a.re.abs() < 1e-15);
            let r = (d - a).norm() * k / k.ln();
            assert!(r <= 10.0, "K={k} γ={g}: {r}");
            assert!(r <= last[i], "residual grew at K={k} γ={g}");
            last[i] = r;
            // |S| ≲ (β/K)/√α
            assert!(a.norm() <= p.beta / k / p.alpha.sqrt());
        }
    }
}

#[test]
fn direct_sum_is_stable_under_oracle_bessel() {
    let k = 64.0;
    let w = WeightFunction::new(k, 0).unwrap();
    let p = BesselSumParams::at_gamma(k, 0.5, 1.5).unwrap();
    let d = s_direct(&p, &w).unwrap();
    let mut o = 0.0;
    for n in (65u32..128).filter(|n| n % 2 == 1) {
        let ik = if n % 4 == 1 { 1.0 } else { -1.0 };
        o += ik * w.eval(n as f64) * bessel_j_mpfr(n, 4.0 * PI * p.alpha, 128) * bessel_j_mpfr(2 * n - 1, 4.0 * PI * p.beta, 128);
    }
    assert!((d.im - o).abs() < 1e-14);
    let zero = WeightFunction::new(0.4, 0).unwrap();
    assert_eq!(s_direct(&p, &zero).unwrap().norm(), 0.0);
}

#[test]
fn single_bessel_residual_is_the_third_derivative_term() {
    for k in [128.0, 256.0] {
        let w = WeightFunction::new(k, 3).unwrap();
        for r in [1.25, 1.5, 1.75, 3.0, 10.0] {
            for a in [0, 2] {
                let s = single_bessel_sum(a, r * k, &w).unwrap();
                assert!(s.scaled <= 100.0, "K={k} x/K={r} a={a}: {}", s.scaled);
            }
        }
    }
    // the a-independent part of the error is x w'''(x)/6
    let k = 1024.0;
    let w = WeightFunction::new(k, 3).unwrap();
    for r in [1.25, 1.75] {
        let x = r * k;
        let avg = (single_bessel_direct(0, x, &w).unwrap() + single_bessel_direct(2, x, &w).unwrap()) / 2.0 - w.eval(x);
        let pred = x * w.deriv(3, x).unwrap() / 6.0;
        assert!((avg / pred - 1.0).abs() < 0.01, "{avg} {pred}");
    }
}

#[test]
fn single_bessel_residual_scales_like_x_over_k_cubed() {
    for r in [1.25, 1.75] {
        let res: Vec<f64> = [512.0, 1024.0]
            .iter()
            .map(|&k| single_bessel_sum(0, r * k, &WeightFunction::new(k, 0).unwrap()).unwrap().residual)
            .collect();
        let drop = res[0] / res[1];
        assert!((2.0..=8.0).contains(&drop), "x/K={r}: drop {drop}");
    }
}

#[test]
fn even_sum_carries_a_single_g() {
    // 2Σ_{k even} i^k w(k−1)J_{k−1}(x) tracks −g(x), not −2g(x)
    for k in [128.0, 256.0] {
        let w = WeightFunction::new(k, 0).unwrap();
        let x = 10.0 * k;
        let (lhs, g) = even_signed_sum(x, &w).unwrap();
        assert!((lhs + g).abs() <= 100.0 * x / k.powi(3));
        assert!((lhs + 2.0 * g).abs() > 10.0 * (lhs + g).abs());
    }
}

#[test]
fn ik_expansion_error_decays() {
    // measured decay is close to K^{-0.6}, slower than 1/K
    let worst = |k: f64| {
        let w = WeightFunction::new(k, 2 * TAYLOR_J + 4).unwrap();
        let mut m: f64 = 0.0;
        for sign in [1.0, -1.0] {
            for u in [0.02, 0.05, 0.1, 0.2, 0.3, 0.45] {
                m = m.max(ik_integral(u, 0.1 * k, sign, &w, TAYLOR_J).unwrap().diff);
            }
        }
        m
    };
    let (a, b) = (worst(128.0), worst(256.0));
    assert!(a < 0.2, "{a}");
    assert!(b < 0.8 * a, "{a} -> {b}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]
    #[test]
    fn bessel_routes_agree(l in 0u32..600, x in 0.01f64..800.0) {
        let t = bessel_j(l, x).unwrap();
        let o = bessel_j_mpfr(l, x, 128);
        prop_assert!((t - o).abs() < 1e-12, "J_{}({}): {} vs {}", l, x, t, o);
        let m = bessel_j_miller(l, x).unwrap();
        prop_assert!((m - o).abs() < 1e-10);
    }

    #[test]
    fn bessel_recurrence(l in 1u32..400, x in 1.0f64..500.0) {
        let lhs = bessel_j(l - 1, x).unwrap() + bessel_j(l + 1, x).unwrap();
        let rhs = 2.0 * l as f64 / x * bessel_j(l, x).unwrap();
        prop_assert!((lhs - rhs).abs() < 1e-11 * (1.0 + 2.0 * l as f64 / x));
    }
}
