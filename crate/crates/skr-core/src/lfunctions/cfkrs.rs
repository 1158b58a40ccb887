//! Local factors of the moment recipe, the diagonal Euler factor M₀ and the
//! π-free conjecture constants.

use super::coeffs::Hecke;
use super::lvalues::{l_f_at, sym2_at};
use crate::arith;
use crate::error::{Error, Result};
use crate::hp;
use crate::numerics::zeta;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::{Float, Rational};

/// Tempered Satake parameters e^{iθ}, θ uniform on [0, π], from a ChaCha8 stream.
pub fn satake_draws(seed: u64, count: usize) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::PI))).collect()
}

/// λ(p^j) = Σ_{r=0}^{j} α^r β^{j−r}.
fn satake_powers(a: Complex64, b: Complex64, jmax: usize) -> Vec<Complex64> {
    (0..=jmax)
        .map(|j| (0..=j).map(|r| a.powu(r as u32) * b.powu((j - r) as u32)).sum())
        .collect()
}

/// Total x-degree kept in the truncated local sums.
const DEGREE: u32 = 200;

/// B_{f,p}(α) by its defining sum, truncated at x-degree 200.
pub fn b_fp_truncated(p: u64, alpha_p: Complex64, alpha: f64) -> Result<Complex64> {
    let x = (p as f64).powf(-0.5 - alpha);
    if x >= 1.0 {
        return Err(Error::InvalidArgument(format!("|x| = {x} ≥ 1: local sum diverges")));
    }
    let beta_p = 1.0 / alpha_p;
    let e = DEGREE as i64;
    let lam = satake_powers(alpha_p, beta_p, DEGREE as usize + 2);
    // coefficient of x^m, summed before evaluation to keep rounding small
    let mut by_degree = vec![Complex64::new(0.0, 0.0); e as usize + 1];
    // exponent 3a₁ + 2b₁ + 4a₂ + 3d − 2c ≥ 3·max(a₁, a₂) + 2b₁
    for a1 in 0..=e / 3 {
        for a2 in 0..=e / 3 {
            for c in 0..=2 * a1.min(a2) {
                let base = 3 * a1 + 4 * a2 - 2 * c;
                for d in 0..=1i64 {
                    let sign = if d == 0 { 1.0 } else { -1.0 };
                    let mut b1 = 0;
                    while base + 3 * d + 2 * b1 <= e {
                        let j = (d + a1 + 2 * b1) as usize;
                        if j < lam.len() {
                            by_degree[(base + 3 * d + 2 * b1) as usize] += lam[j] * sign;
                        }
                        b1 += 1;
                    }
                }
            }
        }
    }
    Ok(by_degree.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * x + c))
}

/// (1−x⁸)/((1−x²)(1−α_p²x²)(1−β_p²x²)(1−α_p x³)(1−β_p x³)), x = p^{−½−α}.
pub fn b_fp_closed(p: u64, alpha_p: Complex64, alpha: f64) -> Result<Complex64> {
    let x = (p as f64).powf(-0.5 - alpha);
    if x >= 1.0 {
        return Err(Error::InvalidArgument(format!("|x| = {x} ≥ 1: local sum diverges")));
    }
    let b = 1.0 / alpha_p;
    let x2 = x * x;
    let x3 = x2 * x;
    let den = (1.0 - x2) * (1.0 - alpha_p * alpha_p * x2) * (1.0 - b * b * x2) * (1.0 - alpha_p * x3) * (1.0 - b * x3);
    Ok(Complex64::new(1.0 - x2 * x2 * x2 * x2, 0.0) / den)
}

/// (truncated sum, closed form) for a unit-modulus Satake parameter.
pub fn cfkrs_local_factor(p: u64, alpha_p: Complex64, alpha: f64) -> Result<(Complex64, Complex64)> {
    if !arith::is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    if (alpha_p.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidArgument(format!("|α_p| = {} ≠ 1", alpha_p.norm())));
    }
    Ok((b_fp_truncated(p, alpha_p, alpha)?, b_fp_closed(p, alpha_p, alpha)?))
}

/// Satake parameter with α+β = λ(p), αβ = 1 and |λ(p)| ≤ 2.
pub fn satake_from_lambda(lp: f64) -> Complex64 {
    let l = lp.clamp(-2.0, 2.0);
    Complex64::new(l / 2.0, (1.0 - l * l / 4.0).max(0.0).sqrt())
}

/// A_f(α) two ways: ζ(2+4α)²∏_{p≤P} B_{f,p}(α) against
/// L(1+2α, sym²f) L(3/2+3α, f) ζ(2+4α)²/ζ(4+8α) from the AFE.
#[derive(Clone, Copy, Debug)]
pub struct AfConsistency {
    pub euler: f64,
    pub analytic: f64,
    pub primes_used: usize,
}

pub fn a_f_consistency(f: &Hecke, kappa: u32, alpha: f64, p_max: u64) -> Result<AfConsistency> {
    let mut prod = Complex64::new(1.0, 0.0);
    let primes = arith::primes_up_to(p_max);
    for &p in &primes {
        prod *= b_fp_closed(p, satake_from_lambda(f.lambda_p(p as usize)?), alpha)?;
    }
    let z2 = zeta(2.0 + 4.0 * alpha);
    let euler = prod.re * z2 * z2;
    let s2 = sym2_at(f, kappa, 1.0 + 2.0 * alpha)?;
    let l3 = l_f_at(f, kappa, 1.5 + 3.0 * alpha)?;
    let analytic = s2.value * l3.value * z2 * z2 / zeta(4.0 + 8.0 * alpha);
    Ok(AfConsistency { euler, analytic, primes_used: primes.len() })
}

/// Local factor of the diagonal constant M₀, split by c.
#[derive(Clone, Debug)]
pub struct M0Local {
    pub c0: f64,
    /// Terms with c ∈ {1, 2}.
    pub c12: f64,
    pub truncated: f64,
    pub closed: f64,
}

/// Σ over d + a₁ + b ≤ 1, a₂ ≥ 0, 0 ≤ c ≤ min(2a₁, 2a₂) of p^c (−1)^{a₁} p^{−(3d+3a₁+2a₂+3b)},
/// with a₂ ≤ 60, against (1−p⁻²)⁻¹(1−p⁻⁴).
pub fn m0_local_factor(p: u64) -> Result<M0Local> {
    if !arith::is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    let pf = p as f64;
    let mut c0 = 0.0;
    let mut c12 = 0.0;
    for (d, a1, b) in [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)] {
        for a2 in 0..=60i32 {
            for c in 0..=(2 * a1).min(2 * a2) {
                let sign = if a1 == 1 { -1.0 } else { 1.0 };
                let t = sign * pf.powi(c - (3 * d + 3 * a1 + 2 * a2 + 3 * b));
                if c == 0 {
                    c0 += t;
                } else {
                    c12 += t;
                }
            }
        }
    }
    let closed = (1.0 - pf.powi(-4)) / (1.0 - pf.powi(-2));
    Ok(M0Local { c0, c12, truncated: c0 + c12, closed })
}

/// −p⁻⁵(1−p⁻²)⁻¹(p+p²).
pub fn m0_c12_closed(p: u64) -> f64 {
    let pf = p as f64;
    -pf.powi(-5) * (pf + pf * pf) / (1.0 - pf.powi(-2))
}

/// Rational multiple of a power of π.
#[derive(Clone, Debug, PartialEq)]
pub struct PiMonomial {
    pub coef: Rational,
    pub pi_exp: i32,
}

impl PiMonomial {
    pub fn new(num: i64, den: i64, pi_exp: i32) -> Self {
        PiMonomial { coef: Rational::from((num, den)), pi_exp }
    }

    pub fn mul(&self, o: &Self) -> Self {
        PiMonomial { coef: Rational::from(&self.coef * &o.coef), pi_exp: self.pi_exp + o.pi_exp }
    }

    pub fn div(&self, o: &Self) -> Self {
        PiMonomial { coef: Rational::from(&self.coef / &o.coef), pi_exp: self.pi_exp - o.pi_exp }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(PiMonomial::new(1, 1, 0), |acc, _| acc.mul(self))
    }

    pub fn to_float(&self, prec: u32) -> Float {
        let pi = hp::pi(prec);
        let pw = Float::with_val(prec, rug::ops::Pow::pow(&pi, self.pi_exp));
        Float::with_val(prec, pw * &self.coef)
    }

    /// The rational value when π has cancelled.
    pub fn rational(&self) -> Option<Rational> {
        (self.pi_exp == 0).then(|| self.coef.clone())
    }
}

/// ζ(2) = π²/6.
pub fn zeta2() -> PiMonomial {
    PiMonomial::new(1, 6, 2)
}

/// ζ(4) = π⁴/90.
pub fn zeta4() -> PiMonomial {
    PiMonomial::new(1, 90, 4)
}

/// v₁ = vol(SL₂(Z)\H) = 2π⁻¹ζ(2).
pub fn v1() -> PiMonomial {
    PiMonomial::new(2, 1, -1).mul(&zeta2())
}

/// v₂ = vol(Sp₄(Z)\H₂) = 2π⁻³ζ(2)ζ(4).
pub fn v2() -> PiMonomial {
    PiMonomial::new(2, 1, -3).mul(&zeta2()).mul(&zeta4())
}

/// c″ = (6/π³)(v₂/v₁²).
pub fn c_double_prime() -> PiMonomial {
    PiMonomial::new(6, 1, -3).mul(&v2().div(&v1().pow(2)))
}

/// (24c″ζ(2), 24c″ζ(2)³/ζ(4)) reduced to rationals.
pub fn conjecture_constants() -> Result<(Rational, Rational)> {
    let base = PiMonomial::new(24, 1, 0).mul(&c_double_prime());
    let first = base.mul(&zeta2());
    let second = base.mul(&zeta2().pow(3)).div(&zeta4());
    match (first.rational(), second.rational()) {
        (Some(a), Some(b)) => Ok((a, b)),
        _ => Err(Error::Validation("π powers did not cancel".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants() {
        let (a, b) = conjecture_constants().unwrap();
        assert_eq!(a, Rational::from((4, 5)));
        assert_eq!(b, Rational::from(2));
        assert_eq!(v1(), PiMonomial::new(1, 3, 1));
        assert_eq!(v2(), PiMonomial::new(1, 270, 3));
        assert_eq!(v2().div(&v1().pow(2)), PiMonomial::new(1, 30, 1));
        let pi = hp::pi(256);
        let d = Float::with_val(256, v1().to_float(256) - Float::with_val(256, &pi / 3u32));
        assert!(d.abs() < 1e-70);
    }

    #[test]
    fn local_factor_at_trivial_parameters() {
        let one = Complex64::new(1.0, 0.0);
        let (t, c) = cfkrs_local_factor(2, one, 0.0).unwrap();
        assert!((t - c).norm() < 1e-12, "{t} {c}");
        // x → 0 limit
        let (t, c) = cfkrs_local_factor(1_000_003, one, 2.0).unwrap();
        assert!((t - 1.0).norm() < 1e-12 && (c - 1.0).norm() < 1e-12);
        assert!(cfkrs_local_factor(2, Complex64::new(1.1, 0.0), 0.0).is_err());
    }

    #[test]
    fn m0_examples() {
        let m = m0_local_factor(2).unwrap();
        assert!((m.closed - 1.25).abs() < 1e-15);
        assert!((m.truncated - m.closed).abs() < 1e-12);
        for p in [3u64, 5, 7] {
            let m = m0_local_factor(p).unwrap();
            assert!((m.truncated - m.closed).abs() < 1e-12);
            assert!((m.c12 - m0_c12_closed(p)).abs() < 1e-14);
        }
    }
}
