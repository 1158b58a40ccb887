//! Kloosterman sums, Ramanujan sums and the quadratic sum
//! T(c) = Σ*_{h mod c} Σ_{a mod c} e(ha²/c).

use crate::arith::{self, gcd, inv_mod};
use crate::error::{Error, Result};
use crate::numerics::e;
use num_complex::Complex64;
use rug::Float;

/// cos(2πj/c), j = 0..c, correctly rounded to f64 via MPFR.
pub fn cos_table(c: u64) -> Vec<f64> {
    let prec = 128;
    let two_pi = Float::with_val(prec, crate::hp::pi(prec) * 2u32);
    (0..c)
        .map(|j| {
            let x = Float::with_val(prec, &two_pi * j) / c;
            x.cos().to_f64()
        })
        .collect()
}

/// Value counts of ma + nā mod c over units a.
fn kloosterman_counts(m: i64, n: i64, c: u64) -> Vec<u64> {
    let ci = c as i64;
    let mut counts = vec![0u64; c as usize];
    for a in 0..ci.max(1) {
        if gcd(a as u64, c) != 1 {
            continue;
        }
        let abar = inv_mod(a, ci).unwrap_or(0);
        let j = (m.rem_euclid(ci) as i128 * a as i128 + n.rem_euclid(ci) as i128 * abar as i128)
            .rem_euclid(ci as i128) as usize;
        counts[j] += 1;
    }
    counts
}

/// Kloosterman sum with the exact imaginary residue.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KloostermanValue {
    pub value: f64,
    /// Σ_j (N_j − N_{−j}) over the counts, which is the integer weight of the
    /// imaginary part; zero for every (m, n, c).
    pub antisymmetric_weight: i64,
}

/// S(m, n; c) = Σ_{aā≡1 (c)} e((ma + nā)/c).
pub fn kloosterman_full(m: i64, n: i64, c: u64, cos: &[f64]) -> Result<KloostermanValue> {
    if c == 0 {
        return Err(Error::InvalidArgument("modulus must be ≥ 1".into()));
    }
    if c == 1 {
        return Ok(KloostermanValue { value: 1.0, antisymmetric_weight: 0 });
    }
    let counts = kloosterman_counts(m, n, c);
    let cu = c as usize;
    let mut value = 0.0;
    let mut anti = 0i64;
    for (j, &nj) in counts.iter().enumerate() {
        value += nj as f64 * cos[j];
        let opp = counts[(cu - j) % cu];
        anti += (nj as i64 - opp as i64).abs();
    }
    Ok(KloostermanValue { value, antisymmetric_weight: anti })
}

/// S(m, n; c) as a real number.
pub fn kloosterman(m: i64, n: i64, c: u64) -> Result<f64> {
    let v = kloosterman_full(m, n, c, &cos_table(c.max(1)))?;
    if v.antisymmetric_weight != 0 {
        return Err(Error::Validation(format!("S({m},{n};{c}) has an imaginary part")));
    }
    Ok(v.value)
}

/// Weil's bound (m,n,c)^{1/2} c^{1/2} τ(c).
pub fn weil_bound(m: i64, n: i64, c: u64) -> f64 {
    let g = gcd(gcd(m.unsigned_abs(), n.unsigned_abs()), c);
    (g as f64).sqrt() * (c as f64).sqrt() * arith::tau(c) as f64
}

pub fn weil_check(m: i64, n: i64, c: u64) -> Result<bool> {
    Ok(kloosterman(m, n, c)?.abs() <= weil_bound(m, n, c) * (1.0 + 1e-12))
}

/// Ramanujan sum c_c(n) by the divisor formula Σ_{b|(n,c)} b μ(c/b).
pub fn ramanujan_divisor(n: i64, c: u64) -> i64 {
    let g = gcd(n.unsigned_abs(), c);
    arith::divisors(g).into_iter().map(|b| b as i64 * arith::mobius(c / b)).sum()
}

/// Ramanujan sum by direct summation over reduced residues, rounded.
pub fn ramanujan_direct(n: i64, c: u64) -> (i64, f64) {
    let mut s = Complex64::new(0.0, 0.0);
    for h in 0..c {
        if gcd(h, c) == 1 {
            s += e(((h as i128 * n as i128).rem_euclid(c as i128)) as f64 / c as f64);
        }
    }
    let r = s.re.round();
    (r as i64, (s - r).norm())
}

/// Ramanujan sum with both routes compared.
pub fn ramanujan(n: i64, c: u64) -> Result<i64> {
    if c == 0 {
        return Err(Error::InvalidArgument("modulus must be ≥ 1".into()));
    }
    let a = ramanujan_divisor(n, c);
    let (b, resid) = ramanujan_direct(n, c);
    if a != b || resid > 1e-8 {
        return Err(Error::Validation(format!("Ramanujan sum c_{c}({n}): {a} vs {b} (residual {resid:e})")));
    }
    Ok(a)
}

/// T(c) two ways.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GaussT {
    pub c: u64,
    /// Rounded floating double sum.
    pub brute: i64,
    /// Distance of the floating double sum from `brute`.
    pub residual: f64,
    /// Exact Σ_j N_j c_c(j) with N_j = #{a : a² ≡ j}.
    pub exact: i64,
    /// φ(c)√c if c is a square, else 0.
    pub closed: i64,
}

/// φ(c)√c·[c = □].
pub fn gauss_t_closed(c: u64) -> i64 {
    if arith::is_square(c) {
        (arith::euler_phi(c) * arith::isqrt(c)) as i64
    } else {
        0
    }
}

/// Exact integer T(c) through Ramanujan sums of the square counts.
pub fn gauss_t_exact(c: u64) -> i64 {
    let mut counts = vec![0i64; c as usize];
    for a in 0..c {
        counts[(a * a % c) as usize] += 1;
    }
    counts
        .iter()
        .enumerate()
        .filter(|(_, &n)| n != 0)
        .map(|(j, &n)| n * ramanujan_divisor(j as i64, c))
        .sum()
}

/// Σ*_h Σ_a e(ha²/c) in floating point using a table of e(j/c).
pub fn gauss_t_brute(c: u64) -> (i64, f64) {
    let table: Vec<Complex64> = (0..c).map(|j| e(j as f64 / c as f64)).collect();
    let squares: Vec<u64> = (0..c).map(|a| a * a % c).collect();
    let mut s = Complex64::new(0.0, 0.0);
    for h in 0..c {
        if gcd(h, c) != 1 {
            continue;
        }
        for &q in &squares {
            s += table[(h * q % c) as usize];
        }
    }
    let r = s.re.round();
    (r as i64, (s - r).norm())
}

/// T(c) with brute force, exact and closed form required to agree.
pub fn gauss_t(c: u64) -> Result<GaussT> {
    if c == 0 {
        return Err(Error::InvalidArgument("modulus must be ≥ 1".into()));
    }
    let (brute, residual) = gauss_t_brute(c);
    let t = GaussT { c, brute, residual, exact: gauss_t_exact(c), closed: gauss_t_closed(c) };
    if t.brute != t.closed || t.exact != t.closed || residual > 1e-6 {
        return Err(Error::Validation(format!("T({c}) mismatch: {t:?}")));
    }
    Ok(t)
}

/// Σ_{a mod c} S(a², r₂²; c) e(sign·2ar₂/c), which equals T(c) for every r₂.
pub fn gauss_t_twisted(c: u64, r2: i64, sign: i64) -> Result<f64> {
    let cos = cos_table(c);
    let ci = c as i64;
    let mut s = Complex64::new(0.0, 0.0);
    for a in 0..ci {
        let k = kloosterman_full(a * a, r2 * r2, c, &cos)?;
        s += e(((sign * 2 * a * r2).rem_euclid(ci)) as f64 / c as f64) * k.value;
    }
    if s.im.abs() > 1e-6 * (1.0 + s.re.abs()) {
        return Err(Error::Validation(format!("twisted sum for c = {c}, r₂ = {r2} is not real: {s}")));
    }
    Ok(s.re)
}

/// Every r₂ in the list (and both signs) reproduces T(c).
pub fn gauss_t_r2_independence(c: u64, r2s: &[i64]) -> Result<bool> {
    let t = gauss_t(c)?.closed as f64;
    for &r in r2s {
        for sign in [1, -1] {
            if (gauss_t_twisted(c, r, sign)? - t).abs() > 1e-6 * (1.0 + t.abs()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// T(c) for c = 1..=cmax; returns every c where the routes disagree.
pub fn gauss_sweep(cmax: u64) -> Vec<u64> {
    (1..=cmax).filter(|&c| gauss_t(c).is_err()).collect()
}

/// (m, n, c) with m, n ≤ mn_max and c ≤ cmax violating Weil's bound.
pub fn weil_sweep(mn_max: i64, cmax: u64) -> Result<Vec<(i64, i64, u64)>> {
    let mut bad = Vec::new();
    for c in 1..=cmax {
        let cos = cos_table(c);
        for m in 1..=mn_max {
            for n in 1..=mn_max {
                let v = kloosterman_full(m, n, c, &cos)?;
                if v.antisymmetric_weight != 0 || v.value.abs() > weil_bound(m, n, c) * (1.0 + 1e-12) {
                    bad.push((m, n, c));
                }
            }
        }
    }
    Ok(bad)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kloosterman_examples() {
        assert_eq!(kloosterman(1, 1, 1).unwrap(), 1.0);
        assert!((kloosterman(1, 1, 2).unwrap() - 1.0).abs() < 1e-15);
        for (m, n, c) in [(1, 2, 7), (3, 5, 12), (4, 9, 25)] {
            assert!((kloosterman(m, n, c).unwrap() - kloosterman(n, m, c).unwrap()).abs() < 1e-12);
        }
        // S(1,1;5) straight from the definition
        let direct: f64 = (1..5)
            .map(|a: i64| {
                let ab = inv_mod(a, 5).unwrap();
                (2.0 * std::f64::consts::PI * ((a + ab) % 5) as f64 / 5.0).cos()
            })
            .sum();
        assert!((kloosterman(1, 1, 5).unwrap() - direct).abs() < 1e-14);
    }

    #[test]
    fn gauss_examples() {
        assert_eq!(gauss_t(1).unwrap().closed, 1);
        assert_eq!(gauss_t(4).unwrap().closed, 4);
        assert_eq!(gauss_t(2).unwrap().closed, 0);
        assert_eq!(gauss_t(9).unwrap().closed, 18);
        assert!(gauss_t_r2_independence(4, &[1, 2, 3]).unwrap());
        assert!(gauss_t_r2_independence(2, &[1, 2, 3]).unwrap());
        assert!(gauss_t_r2_independence(9, &[5]).unwrap());
    }

    #[test]
    fn ramanujan_examples() {
        for c in 1..30 {
            assert_eq!(ramanujan(0, c).unwrap(), arith::euler_phi(c) as i64);
            assert_eq!(ramanujan(1, c).unwrap(), arith::mobius(c));
        }
        // e(3/2) + e(9/2)
        assert_eq!(ramanujan(6, 4).unwrap(), -2);
        assert_eq!(ramanujan(4, 6).unwrap(), -1);
        assert_eq!(ramanujan(3, 4).unwrap(), 0);
    }
}
