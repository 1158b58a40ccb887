//! The bump weight w(x) = exp(1 − 1/(1−t²)), t = (2x − 3K)/K, supported on
//! (K, 2K), with exact derivatives and the transform w̌.

use crate::error::{Error, Result};
use num_complex::Complex64;
use rug::ops::Pow;
use rug::Float;
use std::f64::consts::PI;

const PREC: u32 = 256;

/// d^n/dt^n e^{−1/(1−t²)} = P_n(t) (1−t²)^{−2n} e^{−1/(1−t²)}, coefficients of
/// P_n in increasing degree.
fn bump_polys(nmax: usize) -> Vec<Vec<Float>> {
    let mut out = vec![vec![Float::with_val(PREC, 1)]];
    for n in 0..nmax {
        let p = &out[n];
        // P' q² + 4n t P q − 2t P with q = 1 − t²
        let deg = p.len() + 3;
        let mut next = vec![Float::with_val(PREC, 0); deg];
        let mut add = |i: usize, v: Float| next[i] += v;
        for (i, c) in p.iter().enumerate() {
            if i > 0 {
                let d = Float::with_val(PREC, c * i as u32);
                // (1 − 2t² + t⁴) t^{i−1}
                add(i - 1, d.clone());
                add(i + 1, Float::with_val(PREC, &d * -2i32));
                add(i + 3, d);
            }
            let f = Float::with_val(PREC, c * (4 * n) as u32);
            add(i + 1, f.clone());
            add(i + 3, -f);
            add(i + 1, Float::with_val(PREC, c * -2i32));
        }
        while next.len() > 1 && next.last().map_or(false, |c| c.is_zero()) {
            next.pop();
        }
        out.push(next);
    }
    out
}

#[derive(Clone, Debug)]
pub struct WeightFunction {
    pub k: f64,
    polys: Vec<Vec<Float>>,
}

impl WeightFunction {
    /// Derivatives available up to order `max_deriv`.
    pub fn new(k: f64, max_deriv: usize) -> Result<Self> {
        if !(k > 0.0) {
            return Err(Error::InvalidArgument(format!("K = {k} must be positive")));
        }
        Ok(WeightFunction { k, polys: bump_polys(max_deriv) })
    }

    pub fn max_deriv(&self) -> usize {
        self.polys.len() - 1
    }

    fn t(&self, x: f64) -> f64 {
        (2.0 * x - 3.0 * self.k) / self.k
    }

    pub fn eval(&self, x: f64) -> f64 {
        let t = self.t(x);
        if t.abs() >= 1.0 {
            return 0.0;
        }
        (1.0 - 1.0 / (1.0 - t * t)).exp()
    }

    /// w^{(n)}(x).
    pub fn deriv(&self, n: usize, x: f64) -> Result<f64> {
        let p = self
            .polys
            .get(n)
            .ok_or_else(|| Error::InvalidArgument(format!("derivative {n} beyond {}", self.max_deriv())))?;
        let t = self.t(x);
        if t.abs() >= 1.0 {
            return Ok(0.0);
        }
        let tf = Float::with_val(PREC, t);
        let mut acc = Float::with_val(PREC, 0);
        for c in p.iter().rev() {
            acc *= &tf;
            acc += c;
        }
        let q = Float::with_val(PREC, 1 - Float::with_val(PREC, &tf * &tf));
        let e = Float::with_val(PREC, 1 - Float::with_val(PREC, q.recip_ref())).exp();
        let scale = Float::with_val(PREC, 2.0 / self.k);
        let v = acc * e / q.pow(2 * n as i32) * scale.pow(n as i32);
        Ok(v.to_f64())
    }

    /// sup_x |w^{(j)}(x)| K^j on a grid of 4000 points.
    pub fn derivative_constant(&self, j: usize) -> Result<f64> {
        let mut m = 0.0f64;
        for i in 1..4000 {
            let x = self.k * (1.0 + i as f64 / 4000.0);
            m = m.max(self.deriv(j, x)?.abs());
        }
        Ok(m * self.k.powi(j as i32))
    }

    /// w̌(v) = ∫₀^∞ w(√u)/√(2πu) e^{iuv} du = √(2/π) ∫_K^{2K} w(y) e^{iy²v} dy
    /// by the trapezoid rule, doubled until two refinements agree to 10⁻¹⁴.
    pub fn w_check(&self, v: f64) -> Result<Complex64> {
        let k = self.k;
        let integrand = |y: f64| Complex64::from_polar(self.eval(y), y * y * v);
        // the phase y²v turns at rate ≤ 4K|v|; start with ~8 nodes per turn
        let turns = 4.0 * k * v.abs() * k / (2.0 * PI);
        let mut n = ((8.0 * turns).max(256.0) as usize).next_power_of_two();
        let h0 = k / n as f64;
        let mut sum: Complex64 = (1..n).map(|i| integrand(k + i as f64 * h0)).sum();
        let mut prev = sum * h0;
        let mut agreed = 0;
        while n < 1 << 24 {
            let h = k / (2 * n) as f64;
            sum += (0..n).map(|i| integrand(k + (2 * i + 1) as f64 * h)).sum::<Complex64>();
            n *= 2;
            let cur = sum * h;
            if (cur - prev).norm() < 1e-14 {
                agreed += 1;
                if agreed == 2 {
                    return Ok(cur * (2.0 / PI).sqrt());
                }
            } else {
                agreed = 0;
            }
            prev = cur;
        }
        Err(Error::Quadrature(format!("w̌({v}) at K = {k}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivatives_match_differences() {
        let w = WeightFunction::new(100.0, 6).unwrap();
        assert_eq!(w.eval(150.0), 1.0);
        assert_eq!(w.eval(100.0), 0.0);
        assert_eq!(w.eval(200.0), 0.0);
        let h = 1e-3;
        for x in [112.0, 150.3, 171.0, 190.0] {
            for n in 0..5 {
                let fd = (w.deriv(n, x + h).unwrap() - w.deriv(n, x - h).unwrap()) / (2.0 * h);
                let d = w.deriv(n + 1, x).unwrap();
                assert!((fd - d).abs() < 1e-6 * (1.0 + d.abs()), "n={n} x={x}: {fd} vs {d}");
            }
        }
        assert!((w.deriv(0, 133.0).unwrap() - w.eval(133.0)).abs() < 1e-15);
    }

    #[test]
    fn check_transform_at_zero() {
        // w̌(0) = √(2/π) ∫ w
        let w = WeightFunction::new(64.0, 0).unwrap();
        let c = w.w_check(0.0).unwrap();
        let n = 200_000;
        let direct: f64 = (0..n).map(|i| w.eval(64.0 + 64.0 * (i as f64 + 0.5) / n as f64)).sum::<f64>() * 64.0 / n as f64;
        assert!((c.re - (2.0 / PI).sqrt() * direct).abs() < 1e-9);
        assert_eq!(c.im, 0.0);
    }
}
