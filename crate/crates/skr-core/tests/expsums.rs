use proptest::prelude::*;
use skr_core::arith::{euler_phi, gcd, inv_mod};
use skr_core::expsums::*;

#[test]
fn weil_holds_on_the_grid() {
    assert!(weil_sweep(20, 200).unwrap().is_empty());
    for p in [2u64, 3, 5, 7, 101, 199] {
        assert!(kloosterman(1, 1, p).unwrap().abs() <= 2.0 * (p as f64).sqrt() + 1e-12);
    }
    assert!(weil_check(1, 1, 1).unwrap());
}

#[test]
fn gauss_t_closed_form_to_500() {
    assert!(gauss_sweep(500).is_empty());
}

#[test]
fn gauss_t_multiplicative() {
    for c1 in 1..=400u64 {
        for c2 in 1..=400 / c1 {
            if gcd(c1, c2) == 1 {
                assert_eq!(gauss_t_exact(c1 * c2), gauss_t_exact(c1) * gauss_t_exact(c2), "{c1} {c2}");
            }
        }
    }
}

#[test]
fn gauss_t_prime_powers() {
    for p in [2u64, 3, 5, 7] {
        for j in 1..=4u32 {
            let q = p.pow(j);
            let t = gauss_t(q).unwrap();
            let want = if j % 2 == 1 { 0 } else { (euler_phi(q) * p.pow(j / 2)) as i64 };
            assert_eq!(t.brute, want, "p^j = {q}");
        }
    }
}

#[test]
fn gauss_t_independent_of_r2() {
    for c in [1u64, 2, 3, 4, 8, 9, 12, 16, 25] {
        assert!(gauss_t_r2_independence(c, &[1, 2, 3, 4, 5, 7]).unwrap(), "c = {c}");
    }
    assert!(gauss_t_r2_independence(36, &[11]).unwrap());
}

#[test]
fn kloosterman_twisted_multiplicativity() {
    for c in 1..=100u64 {
        for q in 1..=100 / c {
            if gcd(c, q) != 1 {
                continue;
            }
            let (ci, qi) = (c as i64, q as i64);
            let qbar = if c == 1 { 0 } else { inv_mod(qi, ci).unwrap() };
            let cbar = if q == 1 { 0 } else { inv_mod(ci, qi).unwrap() };
            for (m, n) in [(1, 1), (2, 5), (3, 7), (6, 4), (0, 9)] {
                let lhs = kloosterman(m, n, c * q).unwrap();
                let rhs = kloosterman(qbar * m, qbar * n, c).unwrap() * kloosterman(cbar * m, cbar * n, q).unwrap();
                assert!((lhs - rhs).abs() < 1e-9, "S({m},{n};{c}·{q}): {lhs} vs {rhs}");
            }
        }
    }
}

#[test]
fn ramanujan_is_kloosterman_with_zero() {
    for c in 1..60u64 {
        for n in -5..12i64 {
            let r = ramanujan(n, c).unwrap() as f64;
            assert!((kloosterman(n, 0, c).unwrap() - r).abs() < 1e-10);
        }
    }
}

proptest! {
    #[test]
    fn kloosterman_symmetric_and_real(m in -50i64..50, n in -50i64..50, c in 1u64..300) {
        let cos = cos_table(c);
        let a = kloosterman_full(m, n, c, &cos).unwrap();
        let b = kloosterman_full(n, m, c, &cos).unwrap();
        prop_assert_eq!(a.antisymmetric_weight, 0);
        prop_assert!((a.value - b.value).abs() < 1e-9);
        // periodic mod c, and a → −a flips both signs
        let p = kloosterman_full(m + c as i64, n - 2 * c as i64, c, &cos).unwrap();
        prop_assert!((a.value - p.value).abs() < 1e-9);
        let neg = kloosterman_full(-m, -n, c, &cos).unwrap();
        prop_assert!((a.value - neg.value).abs() < 1e-9);
    }

    #[test]
    fn ramanujan_multiplicative(n in -100i64..100, c1 in 1u64..60, c2 in 1u64..60) {
        prop_assume!(gcd(c1, c2) == 1);
        prop_assert_eq!(ramanujan(n, c1 * c2).unwrap(), ramanujan(n, c1).unwrap() * ramanujan(n, c2).unwrap());
    }

    #[test]
    fn gauss_t_vanishes_off_squares(c in 1u64..400) {
        let t = gauss_t_exact(c);
        let r = (c as f64).sqrt().round() as u64;
        if r * r == c {
            prop_assert_eq!(t, (euler_phi(c) * r) as i64);
        } else {
            prop_assert_eq!(t, 0);
        }
    }
}
