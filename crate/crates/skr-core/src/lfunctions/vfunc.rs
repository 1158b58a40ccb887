use super::coeffs::{rankin_coeffs, rankin_majorant, rankin_majorant_local, Hecke};
use super::mellin::{GammaFactor, MellinKernel};
use crate::arith::Sieve;
use crate::error::{Error, Result};
use crate::modforms::Eigenform;
use crate::hp::{self, HpComplex};
use num_complex::Complex64;
use rug::Float;
use std::f64::consts::PI;

/// Numerical parameters for the GL3×GL2 approximate functional equation.
#[derive(Clone, Debug)]
pub struct RsConfig {
    /// Contour abscissa.
    pub sigma: f64,
    pub step: f64,
    pub height: f64,
    /// H(u) = exp(h_a·u²)(1 − 16u²).
    pub h_a: f64,
    /// Series cutoff X = C·k².
    pub cutoff_c: f64,
}

impl Default for RsConfig {
    fn default() -> Self {
        RsConfig { sigma: 1.5, step: 1.0 / 64.0, height: 16.0, h_a: 1.0, cutoff_c: 40.0 }
    }
}

pub fn h_test(a: f64, u: Complex64) -> Complex64 {
    (u * u * a).exp() * (1.0 - u * u * 16.0)
}

/// γ(s,k) = 2³(2π)^{−(3s+3k−½)} Γ(s+2k−½) Γ(s+k−½) Γ(s+½), constants dropped.
pub fn rs_gamma(k: u32) -> GammaFactor {
    let k = k as f64;
    GammaFactor {
        log_q: -3.0 * (2.0 * PI).ln(),
        shifts: vec![(1.0, 2.0 * k - 0.5), (1.0, k - 0.5), (1.0, 0.5)],
    }
}

/// Evaluator state for V(y,k) and the central-value sum.
#[derive(Clone, Debug)]
pub struct RsEvaluator {
    pub k: u32,
    pub cfg: RsConfig,
    kernel: MellinKernel,
    /// |V_h − V_{h/2,2T}| maximized over y ∈ {1, 10, 40}·k²; the rounding
    /// floor 10⁻¹⁶·Σ|w|y^{−σ} is accounted separately.
    pub quad_err: f64,
    /// V(n) for n ≤ X.
    v: Vec<f64>,
    /// Bound on 2Σ_{n>X} c̃(n) n^{−½} |V(n)| for the divisor majorant c̃.
    pub tail: f64,
    /// 2Σ_{n≤X} c̃(n) n^{−½}·(quadrature error).
    pub quad_budget: f64,
}

/// A central value with its error budget split by source.
#[derive(Clone, Copy, Debug)]
pub struct CentralValue {
    pub value: f64,
    pub tail: f64,
    pub quad: f64,
    /// Rounding in the summation.
    pub rounding: f64,
    pub terms: usize,
}

impl CentralValue {
    pub fn budget(&self) -> f64 {
        self.tail + self.quad + self.rounding
    }
}

fn v_kernel(k: u32, cfg: &RsConfig, sigma: f64, step: f64, height: f64) -> MellinKernel {
    let g = rs_gamma(k);
    let half = Complex64::new(0.5, 0.0);
    let g0 = g.ln_at(half);
    let a = cfg.h_a;
    MellinKernel::new(sigma, step, height, true, move |u| {
        (g.ln_at(half + u) - g0).exp() * h_test(a, u) / u
    })
}

impl RsEvaluator {
    pub fn new(k: u32, cfg: RsConfig) -> Result<Self> {
        if k % 2 == 0 {
            return Err(Error::InvalidArgument(format!("k = {k} must be odd")));
        }
        let kernel = v_kernel(k, &cfg, cfg.sigma, cfg.step, cfg.height);
        let fine = v_kernel(k, &cfg, cfg.sigma, cfg.step / 2.0, cfg.height * 2.0);
        let kk = (k * k) as f64;
        let quad_err = [kk, 10.0 * kk, 40.0 * kk]
            .iter()
            .map(|&y| (kernel.eval(y).re - fine.eval(y).re).abs())
            .fold(0.0, f64::max);
        let x = (cfg.cutoff_c * kk).ceil() as usize;
        let v: Vec<f64> = (0..=x).map(|n| if n == 0 { 0.0 } else { kernel.eval(n as f64).re }).collect();
        let mut ev = RsEvaluator { k, cfg, kernel, quad_err, v, tail: 0.0, quad_budget: 0.0 };
        ev.tail = ev.tail_bound()?;
        let maj = rankin_majorant(x);
        ev.quad_budget = 2.0
            * (1..=x)
                .map(|n| maj[n] / (n as f64).sqrt() * (quad_err + 1e-16 * ev.kernel.abs_bound(n as f64)))
                .sum::<f64>();
        Ok(ev)
    }

    /// 2Σ_{n>X} c̃(n) n^{−½} |V(n)|: blockwise on (X, 16X] against the running
    /// maximum of |V| on a 64-per-octave grid, then the remainder
    /// through sup_{y≥16X} |V(y)| y² · (16X)^{−1} · Σ c̃(n) n^{−3/2}.
    fn tail_bound(&self) -> Result<f64> {
        let x = self.cutoff();
        let end = 16 * x;
        let maj = rankin_majorant(end);
        let per_octave = 64.0;
        let mut grid = vec![x as f64];
        while *grid.last().unwrap() < end as f64 {
            let g = grid.len() as f64;
            grid.push((x as f64 * 2f64.powf(g / per_octave)).min(end as f64));
        }
        let vals: Vec<f64> = grid.iter().map(|&y| self.kernel.eval(y).re.abs()).collect();
        // a monotone envelope: running max from the right
        let mut env = vals.clone();
        for i in (0..env.len() - 1).rev() {
            env[i] = env[i].max(env[i + 1]);
        }
        let mut sum = 0.0;
        let mut j = 0;
        for n in x + 1..=end {
            while j + 1 < grid.len() && grid[j + 1] <= n as f64 {
                j += 1;
            }
            sum += maj[n] / (n as f64).sqrt() * env[j];
        }
        let mut sup = 0.0f64;
        let mut y = end as f64;
        for _ in 0..160 {
            sup = sup.max(self.kernel.eval(y).re.abs() * y * y);
            y *= 2f64.powf(0.125);
        }
        // beyond the scan: the σ′ = 4 envelope
        sup = sup.max(self.envelope(4.0) * y.powf(-2.0));
        let rem = sup / end as f64 * majorant_dirichlet(1.5);
        Ok(2.0 * (sum + rem))
    }

    /// Series cutoff X.
    pub fn cutoff(&self) -> usize {
        (self.cfg.cutoff_c * (self.k * self.k) as f64).ceil() as usize
    }

    /// V(y, k) with the quadrature error estimate.
    pub fn v(&self, y: f64) -> (f64, f64) {
        (self.kernel.eval(y).re, self.quad_err + 1e-16 * self.kernel.abs_bound(y))
    }

    /// Precomputed V(n), n ≤ X.
    pub fn v_cached(&self) -> &[f64] {
        &self.v
    }

    /// 2Σ_{n≤X} c(n) n^{−½} V(n) for a coefficient table covering X.
    pub fn central_sum(&self, c: &[f64]) -> Result<CentralValue> {
        let x = self.cutoff();
        if c.len() <= x {
            return Err(Error::InsufficientPrecision { needed: x, available: c.len().saturating_sub(1) });
        }
        let mut sum = 0.0;
        let mut abs = 0.0;
        for n in 1..=x {
            let t = c[n] / (n as f64).sqrt() * self.v[n];
            sum += t;
            abs += t.abs();
        }
        Ok(CentralValue {
            value: 2.0 * sum,
            tail: self.tail,
            quad: self.quad_budget,
            rounding: 2.0 * abs * 1e-15,
            terms: x,
        })
    }

    /// L(½, sym²g⊗f) from Hecke data at primes.
    pub fn central_value(&self, f: &Hecke, g: &Hecke) -> Result<CentralValue> {
        let c = rankin_coeffs(f, g, self.cutoff())?;
        self.central_sum(&c)
    }

    /// V on 1..=n.
    pub fn v_table(&self, n: usize) -> Vec<f64> {
        let mut out = vec![0.0; n + 1];
        for (m, o) in out.iter_mut().enumerate().skip(1) {
            *o = self.kernel.eval(m as f64).re;
        }
        out
    }

    /// Rigorous envelope |V(y)| ≤ M(σ′) y^{−σ′} from the line Re u = σ′.
    pub fn envelope(&self, sigma_prime: f64) -> f64 {
        let kern = v_kernel(self.k, &self.cfg, sigma_prime, self.cfg.step, self.cfg.height + 8.0);
        kern.abs_bound(1.0)
    }

    /// V(y) as 1 + the integral over Re u = −½, i.e. the residue at u = 0
    /// plus the shifted contour.
    pub fn v_shifted(&self, y: f64) -> f64 {
        let kern = v_kernel(self.k, &self.cfg, -0.5, self.cfg.step, self.cfg.height);
        1.0 + kern.eval(y).re
    }
}

/// Σ_n c̃(n) n^{−s} for the Rankin majorant, s > 1: Euler product over
/// p ≤ 10⁵ and the bound exp(Σ_{p>P} 7 p^{−s}) for the rest.
pub fn majorant_dirichlet(s: f64) -> f64 {
    let p_max = 100_000usize;
    let sieve = Sieve::new(p_max);
    let mut log = 0.0;
    for p in sieve.primes() {
        let x = (p as f64).powf(-s);
        let mut local = 0.0;
        let mut xe = 1.0;
        for e in 0..200u32 {
            let t = rankin_majorant_local(e) * xe;
            local += t;
            if e > 4 && t < 1e-18 * local {
                break;
            }
            xe *= x;
        }
        log += f64::ln(local);
    }
    // Σ_{p>P} p^{−s} ≤ P^{1−s}/((s−1) log P)
    let pf = p_max as f64;
    log += 7.0 * pf.powf(1.0 - s) / ((s - 1.0) * pf.ln());
    log.exp()
}

/// L(½, sym²g⊗f) for f of weight 2k and g of weight k+1.
pub fn rankin_central_value(f: &Eigenform, g: &Eigenform, ev: &RsEvaluator) -> Result<CentralValue> {
    let k = ev.k;
    if f.weight != 2 * k || g.weight != k + 1 {
        return Err(Error::InvalidArgument(format!(
            "weights ({}, {}) do not match (2k, k+1) for k = {k}",
            f.weight, g.weight
        )));
    }
    ev.central_value(&Hecke::from_eigenform(f), &Hecke::from_eigenform(g))
}

/// V(y,k) in multiprecision with the same contour but step/height set by the caller.
pub fn v_multiprecision(k: u32, cfg: &RsConfig, y: f64, step: f64, height: f64, prec: u32) -> Float {
    let kf = k as f64;
    let two_pi = Float::with_val(prec, hp::pi(prec) * 2u32);
    let ln2pi = two_pi.clone().ln();
    let lgam = |s: &HpComplex| -> HpComplex {
        let mut acc = HpComplex::real(Float::with_val(prec, 0));
        for b in [2.0 * kf - 0.5, kf - 0.5, 0.5] {
            let z = HpComplex::new(Float::with_val(prec, &s.re + b), s.im.clone());
            acc = acc.add(&z.ln_gamma());
        }
        let lin = s.scale(&Float::with_val(prec, -3 * ln2pi.clone()));
        acc.add(&lin)
    };
    let half = HpComplex::real(Float::with_val(prec, 0.5));
    let g0 = lgam(&half);
    let ly = Float::with_val(prec, y).ln();
    let n = (height / step).round() as i64;
    let mut acc = Float::with_val(prec, 0);
    let sixteen = Float::with_val(prec, 16);
    let a = Float::with_val(prec, cfg.h_a);
    for j in 0..=n {
        let t = Float::with_val(prec, j) * Float::with_val(prec, step);
        let u = HpComplex::new(Float::with_val(prec, cfg.sigma), t);
        let s = half.add(&u);
        let ratio = lgam(&s).sub(&g0);
        let u2 = u.mul(&u);
        let h = u2.scale(&a).exp();
        let poly = HpComplex::real(Float::with_val(prec, 1)).sub(&u2.scale(&sixteen));
        let yu = u.scale(&Float::with_val(prec, -&ly)).exp();
        let term = ratio.exp().mul(&h).mul(&poly).mul(&yu).div(&u);
        let w = if j == 0 { 1u32 } else { 2u32 };
        acc += Float::with_val(prec, &term.re * w);
    }
    acc * Float::with_val(prec, step) / two_pi
}
