//! Inverse-Mellin kernels (1/2πi)∫_{(σ)} F(u) y^{−u} du evaluated by the
//! trapezoid rule on a truncated vertical line.

use crate::numerics::ln_gamma;
use num_complex::Complex64;
use std::f64::consts::PI;

/// log γ(s) = s·log_q + Σ_i lnΓ(a_i s + b_i), up to an additive constant.
#[derive(Clone, Debug)]
pub struct GammaFactor {
    pub log_q: f64,
    pub shifts: Vec<(f64, f64)>,
}

impl GammaFactor {
    pub fn ln_at(&self, s: Complex64) -> Complex64 {
        let mut v = s * self.log_q;
        for &(a, b) in &self.shifts {
            v += ln_gamma(s * a + b);
        }
        v
    }
}

/// Precomputed nodes u_j = σ + i t_j and weights h·F(u_j)/2π.
#[derive(Clone, Debug)]
pub struct MellinKernel {
    pub sigma: f64,
    pub step: f64,
    pub height: f64,
    /// Integrand conjugate-symmetric in t: only t ≥ 0 stored, result is real.
    pub real: bool,
    t: Vec<f64>,
    w: Vec<Complex64>,
}

impl MellinKernel {
    /// `f` is the integrand without the y^{−u} factor.
    pub fn new(sigma: f64, step: f64, height: f64, real: bool, f: impl Fn(Complex64) -> Complex64) -> Self {
        let n = (height / step).round() as i64;
        let range: Vec<i64> = if real { (0..=n).collect() } else { (-n..=n).collect() };
        let mut t = Vec::with_capacity(range.len());
        let mut w = Vec::with_capacity(range.len());
        for j in range {
            let tj = j as f64 * step;
            let mut wj = f(Complex64::new(sigma, tj)) * (step / (2.0 * PI));
            if real && j > 0 {
                wj *= 2.0;
            }
            t.push(tj);
            w.push(wj);
        }
        MellinKernel { sigma, step, height, real, t, w }
    }

    pub fn eval(&self, y: f64) -> Complex64 {
        let ly = y.ln();
        let scale = (-self.sigma * ly).exp();
        let mut acc = Complex64::new(0.0, 0.0);
        // y^{−it} by rotation, re-synchronized every 32 nodes
        let rot = Complex64::from_polar(1.0, -self.step * ly);
        let mut z = Complex64::from_polar(1.0, -self.t[0] * ly);
        for (j, (tj, wj)) in self.t.iter().zip(&self.w).enumerate() {
            if j % 32 == 0 {
                z = Complex64::from_polar(1.0, -tj * ly);
            }
            acc += wj * z;
            z *= rot;
        }
        let v = acc * scale;
        if self.real {
            Complex64::new(v.re, 0.0)
        } else {
            v
        }
    }

    /// Bound on |value| for every y: Σ|w_j| y^{−σ}.
    pub fn abs_bound(&self, y: f64) -> f64 {
        self.w.iter().map(|w| w.norm()).sum::<f64>() * y.powf(-self.sigma)
    }
}
