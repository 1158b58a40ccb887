//! Sums of Bessel functions over the weight k.

use super::bessel::bessel_j;
use super::weight::WeightFunction;
use crate::error::{Error, Result};
use crate::numerics::e;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Taylor order of the quadratic-phase expansion.
pub const TAYLOR_J: usize = 12;

/// Integers n with w(n) ≠ 0.
fn support(w: &WeightFunction) -> std::ops::RangeInclusive<u32> {
    (w.k.floor() as u32 + 1)..=((2.0 * w.k).ceil() as u32 - 1)
}

/// Both sides of 4Σ_{k≡a (4)} w(k−1)J_{k−1}(x) = w(x) − i^a g(x) + O(x/K³).
#[derive(Clone, Copy, Debug)]
pub struct SingleBesselSum {
    pub x: f64,
    pub direct: f64,
    pub formula: f64,
    pub g: f64,
    pub residual: f64,
    /// residual·K³/x.
    pub scaled: f64,
}

/// g(x) = x^{−½} Im(e^{ix−πi/4} w̌(1/2x)).
pub fn g_term(x: f64, w: &WeightFunction) -> Result<f64> {
    let wc = w.w_check(1.0 / (2.0 * x))?;
    Ok((Complex64::from_polar(1.0, x - PI / 4.0) * wc).im / x.sqrt())
}

/// 4Σ_{k≡a (4)} w(k−1) J_{k−1}(x).
pub fn single_bessel_direct(a: u32, x: f64, w: &WeightFunction) -> Result<f64> {
    let mut s = 0.0;
    for n in support(w) {
        if (n + 1) % 4 == a {
            s += w.eval(n as f64) * bessel_j(n, x)?;
        }
    }
    Ok(4.0 * s)
}

pub fn single_bessel_sum(a: u32, x: f64, w: &WeightFunction) -> Result<SingleBesselSum> {
    if a != 0 && a != 2 {
        return Err(Error::InvalidArgument(format!("a = {a} must be 0 or 2")));
    }
    if !(x > 0.0) {
        return Err(Error::InvalidArgument(format!("x = {x} must be positive")));
    }
    let direct = single_bessel_direct(a, x, w)?;
    let g = g_term(x, w)?;
    let ia = if a == 0 { 1.0 } else { -1.0 };
    let formula = w.eval(x) - ia * g;
    let residual = (direct - formula).abs();
    Ok(SingleBesselSum { x, direct, formula, g, residual, scaled: residual * w.k.powi(3) / x })
}

/// (2Σ_{k even} i^k w(k−1)J_{k−1}(x), g(x)).
pub fn even_signed_sum(x: f64, w: &WeightFunction) -> Result<(f64, f64)> {
    let s0 = single_bessel_direct(0, x, w)?;
    let s2 = single_bessel_direct(2, x, w)?;
    Ok(((s0 - s2) / 2.0, g_term(x, w)?))
}

/// Parameters of S(α, β) = Σ_{k odd} i^k J_k(4πα) J_{2k−1}(4πβ) w(k).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BesselSumParams {
    pub alpha: f64,
    pub beta: f64,
    pub k: f64,
    pub gamma: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    /// α or β below K/100.
    ExponentiallySmall,
    /// γ ≥ 1.
    Bounded,
    MainTerm,
}

impl BesselSumParams {
    pub fn new(alpha: f64, beta: f64, k: f64) -> Result<Self> {
        if !(alpha > 0.0 && beta > 0.0 && k > 0.0) {
            return Err(Error::InvalidArgument(format!("α = {alpha}, β = {beta}, K = {k} must be positive")));
        }
        Ok(BesselSumParams { alpha, beta, k, gamma: beta / (4.0 * alpha) })
    }

    /// α, β with γ given and 2πβ√(1−γ²) = x_ratio·K.
    pub fn at_gamma(k: f64, gamma: f64, x_ratio: f64) -> Result<Self> {
        if !(0.0 < gamma && gamma < 1.0) {
            return Err(Error::InvalidArgument(format!("γ = {gamma} must lie in (0, 1)")));
        }
        let beta = x_ratio * k / (2.0 * PI * (1.0 - gamma * gamma).sqrt());
        Self::new(beta / (4.0 * gamma), beta, k)
    }

    pub fn regime(&self) -> Regime {
        if self.alpha.min(self.beta) < self.k / 100.0 {
            Regime::ExponentiallySmall
        } else if self.gamma >= 1.0 {
            Regime::Bounded
        } else {
            Regime::MainTerm
        }
    }
}

/// Σ over odd k in the support of i^k J_k(4πα) J_{2k−1}(4πβ) w(k).
pub fn s_direct(p: &BesselSumParams, w: &WeightFunction) -> Result<Complex64> {
    let mut s = 0.0;
    for k in support(w).filter(|k| k % 2 == 1) {
        let wk = w.eval(k as f64);
        if wk == 0.0 {
            continue;
        }
        let ik = if k % 4 == 1 { 1.0 } else { -1.0 };
        s += ik * wk * bessel_j(k, 4.0 * PI * p.alpha)? * bessel_j(2 * k - 1, 4.0 * PI * p.beta)?;
    }
    Ok(Complex64::new(0.0, s))
}

/// Σ_{j≤J} a_j (αc)^j w^{(2j)}(x) with a_j = (±2πi)^j/j!, stopped early once
/// the terms start to grow.
pub fn quadratic_phase_series(sign: f64, alpha_c: f64, x: f64, w: &WeightFunction, jmax: usize) -> Result<Complex64> {
    let step = Complex64::new(0.0, sign * 2.0 * PI * alpha_c);
    let mut coef = Complex64::new(1.0, 0.0);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut last = f64::INFINITY;
    for j in 0..=jmax.min(w.max_deriv() / 2) {
        let t = coef * w.deriv(2 * j, x)?;
        if j > 1 && t.norm() > last {
            break;
        }
        sum += t;
        last = t.norm();
        coef *= step / (j + 1) as f64;
    }
    Ok(sum)
}

/// Σ_± H_±(β√(1−γ²), γ)/√α · e(±(2α + β²/4α)).
///
/// With W(x) = −½Σ_j a_j (αc)^j w^{(2j)}(x) at c = cos 4πu = 1 − 2γ² on the
/// stationary point, H_−(x, γ) = 8^{−½} e(⅛) (1/2π)(1 − iγ/√(1−γ²)) W(2πx) and
/// H_+ = −conj H_−, since S is purely imaginary.
pub fn s_asymptotic(p: &BesselSumParams, w: &WeightFunction) -> Result<Complex64> {
    if p.regime() != Regime::MainTerm {
        return Err(Error::InvalidArgument(format!("no main term in regime {:?}", p.regime())));
    }
    let m = s_minus_main(p, w)?;
    Ok(m - m.conj())
}

fn s_minus_main(p: &BesselSumParams, w: &WeightFunction) -> Result<Complex64> {
    let g = p.gamma;
    let root = (1.0 - g * g).sqrt();
    let x = p.beta * root;
    let c = 1.0 - 2.0 * g * g;
    let big_w = -0.5 * quadratic_phase_series(-1.0, p.alpha * c, 2.0 * PI * x, w, TAYLOR_J)?;
    let h_minus = e(0.125) / 8f64.sqrt() / (2.0 * PI) * Complex64::new(1.0, -g / root) * big_w;
    Ok(h_minus / p.alpha.sqrt() * e(-(2.0 * p.alpha + p.beta * p.beta / (4.0 * p.alpha))))
}

/// The quadratic-phase expansion of I_{K,±α}(u) against its exact value.
#[derive(Clone, Copy, Debug)]
pub struct IkComparison {
    pub exact: Complex64,
    pub expansion: Complex64,
    pub diff: f64,
}

/// I_{K,±α}(u) = ∫ e(±2α cos(2π(2u−t))) ŵ(−t) dt. Expanding the exponential
/// in its Fourier series makes this Σ_n (±i)^n J_n(4πα) w(n) e(2nu) exactly;
/// the expansion is e(±2αc) Σ_j a_j(αc)^j w^{(2j)}(∓4παs), c = cos 4πu,
/// s = sin 4πu.
pub fn ik_integral(u: f64, alpha: f64, sign: f64, w: &WeightFunction, jmax: usize) -> Result<IkComparison> {
    if alpha < 0.0 || (sign != 1.0 && sign != -1.0) {
        return Err(Error::InvalidArgument(format!("α = {alpha}, sign = {sign}")));
    }
    if alpha > w.k * w.k {
        return Err(Error::InvalidArgument(format!("α = {alpha} beyond K² = {}", w.k * w.k)));
    }
    let mut exact = Complex64::new(0.0, 0.0);
    let unit = Complex64::new(0.0, sign);
    for n in support(w) {
        let wn = w.eval(n as f64);
        if wn == 0.0 || alpha == 0.0 {
            continue;
        }
        exact += unit.powu(n) * bessel_j(n, 4.0 * PI * alpha)? * wn * e(2.0 * n as f64 * u);
    }
    let c = (4.0 * PI * u).cos();
    let s = (4.0 * PI * u).sin();
    let series = quadratic_phase_series(sign, alpha * c, -sign * 4.0 * PI * alpha * s, w, jmax)?;
    let expansion = e(sign * 2.0 * alpha * c) * series;
    Ok(IkComparison { exact, expansion, diff: (exact - expansion).norm() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regimes() {
        let p = BesselSumParams::new(1.0, 8.0, 128.0).unwrap();
        assert_eq!(p.gamma, 2.0);
        assert_eq!(p.regime(), Regime::ExponentiallySmall);
        let p = BesselSumParams::new(10.0, 50.0, 128.0).unwrap();
        assert_eq!(p.regime(), Regime::Bounded);
        let w = WeightFunction::new(128.0, 2 * TAYLOR_J).unwrap();
        assert!(s_asymptotic(&p, &w).is_err());
        let p = BesselSumParams::at_gamma(128.0, 0.5, 1.5).unwrap();
        assert!((2.0 * PI * p.beta * (1.0 - 0.25f64).sqrt() - 192.0).abs() < 1e-9);
        assert_eq!(p.regime(), Regime::MainTerm);
    }

    #[test]
    fn ik_at_zero_alpha() {
        let w = WeightFunction::new(64.0, 2 * TAYLOR_J).unwrap();
        let r = ik_integral(0.1, 0.0, 1.0, &w, TAYLOR_J).unwrap();
        assert_eq!(r.exact, Complex64::new(0.0, 0.0));
        assert!(r.expansion.norm() < 1e-300);
    }
}
