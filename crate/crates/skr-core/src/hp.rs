//! Multiprecision helpers built on MPFR floats: dense linear solves and a
//! minimal complex type with exp/log/log-gamma.

use crate::error::{Error, Result};
use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Rational};

pub fn fl(prec: u32, x: impl Into<f64>) -> Float {
    Float::with_val(prec, x.into())
}

pub fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

/// Solve A x = b by Gaussian elimination with partial pivoting.
/// Returns the solution and a crude condition estimate (max|pivot|/min|pivot|).
pub fn solve(a: &[Vec<Float>], b: &[Float]) -> Result<(Vec<Float>, f64)> {
    let n = a.len();
    let prec = b.first().map(|x| x.prec()).unwrap_or(64);
    let mut m: Vec<Vec<Float>> = a.to_vec();
    let mut rhs: Vec<Float> = b.to_vec();
    let mut pmax = 0f64;
    let mut pmin = f64::INFINITY;
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| {
                m[i][col]
                    .clone()
                    .abs()
                    .partial_cmp(&m[j][col].clone().abs())
                    .unwrap()
            })
            .unwrap();
        m.swap(col, piv);
        rhs.swap(col, piv);
        let p = m[col][col].clone();
        let pa = p.clone().abs().to_f64();
        if pa == 0.0 {
            return Err(Error::IllConditioned(f64::INFINITY));
        }
        pmax = pmax.max(pa);
        pmin = pmin.min(pa);
        for row in col + 1..n {
            let f = Float::with_val(prec, &m[row][col] / &p);
            if f == 0 {
                continue;
            }
            for c in col..n {
                let t = Float::with_val(prec, &f * &m[col][c]);
                m[row][c] -= t;
            }
            let t = Float::with_val(prec, &f * &rhs[col]);
            rhs[row] -= t;
        }
    }
    let mut x = vec![Float::with_val(prec, 0); n];
    for i in (0..n).rev() {
        let mut s = rhs[i].clone();
        for j in i + 1..n {
            s -= Float::with_val(prec, &m[i][j] * &x[j]);
        }
        x[i] = s / &m[i][i];
    }
    Ok((x, pmax / pmin))
}

/// Least squares via normal equations.
pub fn least_squares(a: &[Vec<Float>], b: &[Float]) -> Result<(Vec<Float>, f64)> {
    let rows = a.len();
    let cols = a[0].len();
    let prec = b[0].prec();
    let mut ata = vec![vec![Float::with_val(prec, 0); cols]; cols];
    let mut atb = vec![Float::with_val(prec, 0); cols];
    for r in 0..rows {
        for i in 0..cols {
            atb[i] += Float::with_val(prec, &a[r][i] * &b[r]);
            for j in 0..cols {
                ata[i][j] += Float::with_val(prec, &a[r][i] * &a[r][j]);
            }
        }
    }
    solve(&ata, &atb)
}

/// Complex number with MPFR parts.
#[derive(Clone, Debug)]
pub struct HpComplex {
    pub re: Float,
    pub im: Float,
}

impl HpComplex {
    pub fn new(re: Float, im: Float) -> Self {
        HpComplex { re, im }
    }

    pub fn real(x: Float) -> Self {
        let p = x.prec();
        HpComplex { re: x, im: Float::with_val(p, 0) }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    pub fn add(&self, o: &Self) -> Self {
        let p = self.prec();
        HpComplex::new(
            Float::with_val(p, &self.re + &o.re),
            Float::with_val(p, &self.im + &o.im),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        let p = self.prec();
        HpComplex::new(
            Float::with_val(p, &self.re - &o.re),
            Float::with_val(p, &self.im - &o.im),
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        let p = self.prec();
        let re = Float::with_val(p, &self.re * &o.re) - Float::with_val(p, &self.im * &o.im);
        let im = Float::with_val(p, &self.re * &o.im) + Float::with_val(p, &self.im * &o.re);
        HpComplex::new(re, im)
    }

    pub fn scale(&self, x: &Float) -> Self {
        let p = self.prec();
        HpComplex::new(Float::with_val(p, &self.re * x), Float::with_val(p, &self.im * x))
    }

    pub fn norm_sqr(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, self.re.square_ref()) + Float::with_val(p, self.im.square_ref())
    }

    pub fn recip(&self) -> Self {
        let n = self.norm_sqr();
        let p = self.prec();
        HpComplex::new(Float::with_val(p, &self.re / &n), Float::with_val(p, -&self.im) / &n)
    }

    pub fn div(&self, o: &Self) -> Self {
        self.mul(&o.recip())
    }

    pub fn exp(&self) -> Self {
        let p = self.prec();
        let m = self.re.clone().exp();
        let (s, c) = self.im.clone().sin_cos(Float::new(p));
        HpComplex::new(Float::with_val(p, &m * &c), Float::with_val(p, &m * &s))
    }

    /// Principal logarithm.
    pub fn ln(&self) -> Self {
        let p = self.prec();
        let r = self.norm_sqr().sqrt().ln();
        let t = Float::with_val(p, self.im.atan2_ref(&self.re));
        HpComplex::new(r, t)
    }

    /// log Γ(z) for Re z > 0 by shifting to Re z ≥ N and the Stirling series.
    pub fn ln_gamma(&self) -> Self {
        let p = self.prec();
        let shift = (p as f64 * 0.35).ceil() as i64 + 10;
        let mut z = self.clone();
        let mut logprod = HpComplex::real(Float::with_val(p, 0));
        let one = HpComplex::real(Float::with_val(p, 1));
        // accumulate Σ log(z+j) for j < shift
        let re0 = z.re.to_f64();
        let steps = if re0 < shift as f64 { (shift as f64 - re0).ceil() as i64 } else { 0 };
        let mut prod = one.clone();
        for j in 0..steps {
            prod = prod.mul(&z);
            // each factor has argument in (−π/2, π/2), so pairs stay on the principal branch
            if j % 2 == 1 {
                logprod = logprod.add(&prod.ln());
                prod = one.clone();
            }
            z = z.add(&one);
        }
        logprod = logprod.add(&prod.ln());
        // Stirling: (z−½)log z − z + ½log 2π + Σ B_{2m}/(2m(2m−1) z^{2m−1})
        let lz = z.ln();
        let half = Float::with_val(p, 0.5);
        let zm = HpComplex::new(Float::with_val(p, &z.re - &half), z.im.clone());
        let mut s = zm.mul(&lz).sub(&z);
        let l2pi = Float::with_val(p, pi(p) * 2u32).ln() / 2u32;
        s.re += l2pi;
        let zinv = z.recip();
        let zinv2 = zinv.mul(&zinv);
        let mut zpow = zinv.clone();
        let terms = (p / 6 + 8) as usize;
        let bern = bernoulli_cached();
        assert!(terms <= bern.len(), "precision too high for cached Bernoulli table");
        for (m, b) in bern.iter().enumerate().take(terms).skip(1) {
            let coef = Float::with_val(p, b) / ((2 * m) as u32 * (2 * m - 1) as u32);
            s = s.add(&zpow.scale(&coef));
            zpow = zpow.mul(&zinv2);
        }
        s.sub(&logprod)
    }
}

fn bernoulli_cached() -> &'static [Rational] {
    static TABLE: std::sync::OnceLock<Vec<Rational>> = std::sync::OnceLock::new();
    TABLE.get_or_init(|| bernoulli_even(200))
}

/// B_0, B_2, B_4, ..., B_{2(n−1)} as exact rationals.
pub fn bernoulli_even(n: usize) -> Vec<Rational> {
    let all = bernoulli(2 * n);
    (0..n).map(|i| all[2 * i].clone()).collect()
}

/// B_0..B_m with B_1 = −1/2.
pub fn bernoulli(m: usize) -> Vec<Rational> {
    let mut b = vec![Rational::new(); m + 1];
    b[0] = Rational::from(1);
    for n in 1..=m {
        // Σ_{k=0}^{n} C(n+1,k) B_k = 0
        let mut s = Rational::new();
        let mut binom = rug::Integer::from(1);
        for k in 0..n {
            s += Rational::from(&b[k] * &binom);
            binom *= (n + 1 - k) as u32;
            binom /= (k + 1) as u32;
        }
        b[n] = -s / (n as u32 + 1);
    }
    b
}

/// x^y for real positive x.
pub fn powf(x: &Float, y: &Float) -> Float {
    Float::with_val(x.prec(), x.pow(y))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli_values() {
        let b = bernoulli(12);
        assert_eq!(b[1], Rational::from((-1, 2)));
        assert_eq!(b[4], Rational::from((-1, 30)));
        assert_eq!(b[6], Rational::from((1, 42)));
        assert_eq!(b[12], Rational::from((-691, 2730)));
    }

    #[test]
    fn ln_gamma_real_matches_mpfr() {
        for &x in &[0.5f64, 1.0, 3.7, 25.0, 46.5] {
            let z = HpComplex::real(fl(256, x));
            let g = z.ln_gamma();
            let want = fl(256, x).ln_gamma();
            let err = Float::with_val(256, &g.re - &want).abs().to_f64();
            assert!(err < 1e-60, "x={x} err={err}");
            assert!(g.im.clone().abs().to_f64() < 1e-60);
        }
    }

    #[test]
    fn ln_gamma_reflection_on_critical_line() {
        // |Γ(½+it)|² = π / cosh(πt)
        let p = 256;
        let t = 3.25;
        let z = HpComplex::new(fl(p, 0.5), fl(p, t));
        let g = z.ln_gamma();
        let lhs = Float::with_val(p, &g.re * 2u32);
        let pt = Float::with_val(p, pi(p) * t);
        let rhs = Float::with_val(p, pi(p) / pt.cosh()).ln();
        assert!(Float::with_val(p, lhs - rhs).abs().to_f64() < 1e-60);
    }

    #[test]
    fn solve_small_system() {
        let p = 128;
        let a = vec![vec![fl(p, 2.0), fl(p, 1.0)], vec![fl(p, 1.0), fl(p, 3.0)]];
        let b = vec![fl(p, 3.0), fl(p, 5.0)];
        let (x, _) = solve(&a, &b).unwrap();
        assert!((x[0].to_f64() - 0.8).abs() < 1e-30);
        assert!((x[1].to_f64() - 1.4).abs() < 1e-30);
    }
}
