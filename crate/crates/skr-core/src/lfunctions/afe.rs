//! Smoothed approximate functional equation for self-dual L-functions with
//! real coefficients:
//! Λ(s) = Σ aₙ n^{−s} γ(s) W_s(n/A) + ε Σ aₙ n^{s−1} γ(1−s) W_{1−s}(nA),
//! W_s(y) = (1/2πi) ∫ γ(s+u)/γ(s) y^{−u} du/u.

use super::mellin::{GammaFactor, MellinKernel};
use crate::error::{Error, Result};
use num_complex::Complex64;

/// Contour abscissae; each y uses the line with the smallest rounding floor.
const SIGMAS: [f64; 5] = [1.5, 3.0, 6.0, 12.0, 24.0];
const STEP: f64 = 1.0 / 16.0;

#[derive(Clone, Debug)]
pub struct Afe {
    pub gamma: GammaFactor,
    pub eps: f64,
    /// a[n] for n ≥ 1; a[0] ignored.
    pub coeffs: Vec<f64>,
}

/// L(s) with an error estimate and the number of terms used.
#[derive(Clone, Copy, Debug)]
pub struct AfeValue {
    pub value: Complex64,
    pub err: f64,
    pub terms: usize,
}

/// Height where the gamma ratio has decayed by 10⁻²⁴ from its value on the real axis.
fn height(g: &GammaFactor, s: Complex64, sigma: f64) -> f64 {
    let base = (g.ln_at(s + sigma) - g.ln_at(s)).re;
    let mut t = 8.0;
    while (g.ln_at(s + Complex64::new(sigma, t)) - g.ln_at(s)).re - base > -55.0 {
        t += 4.0;
    }
    t
}

struct Kernel {
    lines: Vec<MellinKernel>,
}

impl Kernel {
    fn new(g: &GammaFactor, s: Complex64) -> Self {
        let g0 = g.ln_at(s);
        let real = s.im == 0.0;
        let lines = SIGMAS
            .iter()
            .map(|&sigma| {
                let t = height(g, s, sigma).max(height(g, s.conj(), sigma));
                MellinKernel::new(sigma, STEP, t, real, |u| (g.ln_at(s + u) - g0).exp() / u)
            })
            .collect();
        Kernel { lines }
    }

    fn eval(&self, y: f64) -> Complex64 {
        let best = self
            .lines
            .iter()
            .min_by(|a, b| a.abs_bound(y).total_cmp(&b.abs_bound(y)))
            .expect("at least one contour");
        best.eval(y)
    }
}

impl Afe {
    /// Doubling scan for the first n where both W-weighted terms, scaled by a
    /// d₃-size coefficient bound, drop below `tol`.
    fn needed_terms(&self, ks: &Kernel, k1s: &Kernel, s: Complex64, a: f64, tol: f64) -> usize {
        let mut n = 8usize;
        loop {
            let x = n as f64;
            let w1 = ks.eval(x / a).norm() * x.powf(-s.re);
            let w2 = k1s.eval(x * a).norm() * x.powf(s.re - 1.0);
            let d = (x.ln() + 1.0).powi(3);
            if (w1 + w2) * d < tol || n > (1 << 28) {
                return n;
            }
            n *= 2;
        }
    }

    /// Λ(s)/γ(s) with splitting parameter A.
    pub fn l_value_split(&self, s: Complex64, a: f64) -> Result<AfeValue> {
        let ks = Kernel::new(&self.gamma, s);
        let k1s = Kernel::new(&self.gamma, 1.0 - s);
        let n = self.needed_terms(&ks, &k1s, s, a, 1e-17);
        if n >= self.coeffs.len() {
            return Err(Error::InsufficientPrecision { needed: n, available: self.coeffs.len() - 1 });
        }
        let ratio = (self.gamma.ln_at(1.0 - s) - self.gamma.ln_at(s)).exp();
        let mut first = Complex64::new(0.0, 0.0);
        let mut second = Complex64::new(0.0, 0.0);
        let mut abs = 0.0;
        for m in 1..=n {
            let c = self.coeffs[m];
            if c == 0.0 {
                continue;
            }
            let x = m as f64;
            let t1 = ks.eval(x / a) * (-s * x.ln()).exp() * c;
            let t2 = k1s.eval(x * a) * ((s - 1.0) * x.ln()).exp() * c;
            first += t1;
            second += t2;
            abs += t1.norm() + (t2 * ratio).norm();
        }
        let value = first + ratio * second * self.eps;
        Ok(AfeValue { value, err: 1e-15 * abs + 1e-16, terms: n })
    }

    /// L(s); the error adds the spread between two splitting parameters.
    pub fn l_value(&self, s: Complex64) -> Result<AfeValue> {
        let v1 = self.l_value_split(s, 1.0)?;
        let v2 = self.l_value_split(s, 1.15)?;
        Ok(AfeValue {
            value: v1.value,
            err: v1.err + (v1.value - v2.value).norm(),
            terms: v1.terms.max(v2.terms),
        })
    }

    pub fn l_real(&self, s: f64) -> Result<(f64, f64)> {
        let v = self.l_value(Complex64::new(s, 0.0))?;
        Ok((v.value.re, v.err))
    }

    /// Λ(s) = γ(s)L(s).
    pub fn completed(&self, s: Complex64, a: f64) -> Result<Complex64> {
        let v = self.l_value_split(s, a)?;
        Ok(v.value * self.gamma.ln_at(s).exp())
    }

    /// Relative gap |Λ_A(½+it) − εΛ_1(½−it)| / |Λ_1(½−it)|: zero iff the
    /// gamma factor, sign and coefficients form a consistent functional equation.
    pub fn symmetry_defect(&self, t: f64, a: f64) -> Result<f64> {
        let s = Complex64::new(0.5, t);
        let lhs = self.completed(s, a)?;
        let rhs = self.completed(1.0 - s, 1.0)? * self.eps;
        Ok((lhs - rhs).norm() / rhs.norm().max(1e-300))
    }
}

/// L(s, f ⊗ χ_D) for f of weight κ and level 1; D = 1 gives L(s, f).
pub fn degree2(kappa: u32, d: i64, coeffs: Vec<f64>) -> Afe {
    let q = (d.unsigned_abs() as f64) / (2.0 * std::f64::consts::PI);
    let half_kappa = kappa / 2;
    // i^κ χ_D(−1)
    let mut eps = if half_kappa % 2 == 0 { 1.0 } else { -1.0 };
    if d < 0 {
        eps = -eps;
    }
    Afe {
        gamma: GammaFactor { log_q: q.ln(), shifts: vec![(1.0, (kappa as f64 - 1.0) / 2.0)] },
        eps,
        coeffs,
    }
}

/// L(s, sym²g) for g of weight κ and level 1.
pub fn sym2(kappa: u32, coeffs: Vec<f64>) -> Afe {
    let k = kappa as f64;
    Afe {
        gamma: GammaFactor {
            log_q: -1.5 * std::f64::consts::PI.ln(),
            shifts: vec![(0.5, 0.5), (0.5, (k - 1.0) / 2.0), (0.5, k / 2.0)],
        },
        eps: 1.0,
        coeffs,
    }
}
