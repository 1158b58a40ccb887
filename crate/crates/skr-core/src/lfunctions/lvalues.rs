//! L(1, sym²g), L(3/2, f) and its inverse, and twisted central values.

use super::afe::{self, Afe};
use super::coeffs::{sym2_coeffs, Hecke};
use crate::arith::{self, Sieve};
use crate::error::{Error, Result};
use crate::modforms::Eigenform;
use crate::numerics::zeta;
use num_complex::Complex64;
use std::f64::consts::PI;

/// A value together with an error budget.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub err: f64,
}

impl Estimate {
    pub fn new(value: f64, err: f64) -> Self {
        Estimate { value, err }
    }
}

/// Terms needed for an AFE at this weight, capped by the table.
fn coeff_len(h: &Hecke) -> usize {
    h.limit()
}

/// L(s, sym²g) at real s by the approximate functional equation.
pub fn sym2_at(g: &Hecke, kappa: u32, s: f64) -> Result<Estimate> {
    let afe = afe::sym2(kappa, sym2_coeffs(g, coeff_len(g))?);
    let (v, err) = afe.l_real(s)?;
    Ok(Estimate::new(v, err))
}

/// L(1, sym²g) by the approximate functional equation.
pub fn sym2_at_1_afe(g: &Hecke, kappa: u32) -> Result<Estimate> {
    sym2_at(g, kappa, 1.0)
}

/// Smoothed short sum Σ_{q,r} λ(r²)/(q²r) exp(−q²r/V).
///
/// The error combines the truncation tail and the leading term of E(g,V),
/// which is −L(0, sym²g)/V = −(κ−1)/(2π²V)·L(1, sym²g), inflated by a
/// quarter for the higher residues.
pub fn sym2_at_1(g: &Hecke, kappa: u32, v_param: f64) -> Result<Estimate> {
    if v_param < 1.0 {
        return Err(Error::InvalidArgument(format!("V = {v_param} must be ≥ 1")));
    }
    let r_max = (40.0 * v_param).ceil() as usize;
    if r_max > g.limit() {
        return Err(Error::InsufficientPrecision { needed: r_max, available: g.limit() });
    }
    let sieve = Sieve::new(r_max);
    let lam_sq = arith::multiplicative_table(&sieve, r_max, |p, e| {
        g.prime_powers(p, 2 * e).map(|v| v[2 * e as usize]).unwrap_or(f64::NAN)
    });
    let mut sum = 0.0;
    for (r, l) in lam_sq.iter().enumerate().skip(1) {
        let mut q = 1usize;
        while q * q * r <= r_max {
            let n = (q * q * r) as f64;
            sum += l / n * (-n / v_param).exp();
            q += 1;
        }
    }
    // Σ_{n>R} d₃(n)/n e^{−n/V} ≤ e^{−R/V}·(log R + 1)²·V/R·ζ(2)
    let rf = r_max as f64;
    let tail = (-rf / v_param).exp() * (rf.ln() + 1.0).powi(2) * v_param / rf * zeta(2.0);
    let e_term = 1.25 * (kappa as f64 - 1.0) / (2.0 * PI * PI * v_param) * sum.abs();
    Ok(Estimate::new(sum, tail + e_term))
}

/// ω = (κ−1)/(2π²)·L(1, sym²g), the Petersson harmonic weight.
pub fn harmonic_weight(kappa: u32, l1: f64) -> f64 {
    (kappa as f64 - 1.0) / (2.0 * PI * PI) * l1
}

fn lambda_table(h: &Hecke, n: usize) -> Result<Vec<f64>> {
    let sieve = Sieve::new(n.max(1));
    let mut out = vec![0.0; n + 1];
    if n >= 1 {
        out[1] = 1.0;
    }
    for (m, o) in out.iter_mut().enumerate().skip(2) {
        let mut v = 1.0;
        for (p, e) in sieve.factor(m) {
            v *= h.prime_powers(p, e)?[e as usize];
        }
        *o = v;
    }
    Ok(out)
}

/// L(s, f) at real s by the approximate functional equation.
pub fn l_f_at(f: &Hecke, kappa: u32, s: f64) -> Result<Estimate> {
    let afe = afe::degree2(kappa, 1, lambda_table(f, coeff_len(f))?);
    let (v, err) = afe.l_real(s)?;
    Ok(Estimate::new(v, err))
}

/// L(3/2, f) by the approximate functional equation.
pub fn l_f_at_32(f: &Hecke, kappa: u32) -> Result<Estimate> {
    l_f_at(f, kappa, 1.5)
}

/// Σ_{n≤N} λ_f(n) n^{−3/2} with the tail bound Σ_{n>N} d(n) n^{−3/2}.
pub fn l_f_at_32_direct(f: &Hecke, n: usize) -> Result<Estimate> {
    let lam = lambda_table(f, n)?;
    let sum: f64 = lam.iter().enumerate().skip(1).map(|(m, l)| l * (m as f64).powf(-1.5)).sum();
    // ∫_N^∞ (log t + 2γ + 1) t^{−3/2} dt with a 10% margin for the error term
    let nf = n as f64;
    let tail = 1.1 * 2.0 * nf.powf(-0.5) * (nf.ln() + 2.0 * 0.577_215_664_901_532_9 + 3.0);
    Ok(Estimate::new(sum, tail))
}

/// μ_f(p) = −λ_f(p), μ_f(p²) = 1, zero on higher powers.
pub fn mu_f_table(f: &Hecke, n: usize) -> Result<Vec<f64>> {
    let sieve = Sieve::new(n.max(1));
    let mut out = vec![0.0; n + 1];
    if n >= 1 {
        out[1] = 1.0;
    }
    for (m, o) in out.iter_mut().enumerate().skip(2) {
        let mut v = 1.0;
        for (p, e) in sieve.factor(m) {
            v *= match e {
                1 => -f.lambda_p(p)?,
                2 => 1.0,
                _ => 0.0,
            };
        }
        *o = v;
    }
    Ok(out)
}

/// Σ_t μ_f(t) t^{−3/2} exp(−t/V), summed to t ≤ table limit.
///
/// Budget: Σ_{t≤T} |μ_f(t)| t^{−3/2}(1 − e^{−t/V}) for the smoothing plus the
/// d(t) tail beyond T.
pub fn inv_l_f_at_32(f: &Hecke, v_param: f64) -> Result<Estimate> {
    let t_max = f.limit();
    let mu = mu_f_table(f, t_max)?;
    let mut sum = 0.0;
    let mut smooth = 0.0;
    for (t, m) in mu.iter().enumerate().skip(1) {
        if *m == 0.0 {
            continue;
        }
        let w = (t as f64).powf(-1.5);
        let damp = (-(t as f64) / v_param).exp();
        sum += m * w * damp;
        smooth += m.abs() * w * (1.0 - damp);
    }
    let nf = t_max as f64;
    let tail = 1.1 * 2.0 * nf.powf(-0.5) * (nf.ln() + 2.0 * 0.577_215_664_901_532_9 + 3.0);
    Ok(Estimate::new(sum, smooth + tail))
}

/// Upper bound ∏_p (1 + p^{−3/2})² = (ζ(3/2)/ζ(3))² for 1/L(3/2, f).
pub fn inv_l32_upper_bound() -> f64 {
    (zeta(1.5) / zeta(3.0)).powi(2)
}

/// Twisted central value with its functional-equation self-test.
#[derive(Clone, Copy, Debug)]
pub struct TwistedValue {
    pub d: i64,
    pub value: f64,
    pub err: f64,
    /// Relative Λ(½+it) vs εΛ(½−it) gap at t = 0.3.
    pub symmetry_defect: f64,
}

/// Symmetry tolerance for the twisted functional equation.
pub const SYMMETRY_TOL: f64 = 1e-8;

/// L(½, f⊗χ_D) for D < 0 fundamental, sign +1 asserted and validated.
pub fn twisted_central_value(f: &Eigenform, d: i64) -> Result<TwistedValue> {
    let kappa = f.weight;
    if d >= 0 || !arith::is_fundamental_discriminant(d) {
        return Err(Error::InvalidArgument(format!("D = {d} is not a negative fundamental discriminant")));
    }
    if (kappa + 2) % 4 != 0 {
        return Err(Error::InvalidArgument(format!("weight {kappa} is not 2ℓ−2 with ℓ even")));
    }
    let h = Hecke::from_eigenform(f);
    let lam = lambda_table(&h, h.limit())?;
    let coeffs: Vec<f64> = lam
        .iter()
        .enumerate()
        .map(|(n, l)| if n == 0 { 0.0 } else { l * arith::kronecker(d, n as u64) as f64 })
        .collect();
    let afe: Afe = afe::degree2(kappa, d, coeffs);
    if afe.eps != 1.0 {
        return Err(Error::Validation(format!("root number for D = {d} is not +1")));
    }
    let defect = afe.symmetry_defect(0.3, 1.3)?;
    if defect > SYMMETRY_TOL {
        return Err(Error::Validation(format!(
            "functional equation self-test failed for D = {d}: relative defect {defect:e}"
        )));
    }
    let v = afe.l_value(Complex64::new(0.5, 0.0))?;
    Ok(TwistedValue { d, value: v.value.re, err: v.err, symmetry_defect: defect })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn delta_hecke(n: usize) -> Hecke {
        let d = crate::modforms::delta(n + 1);
        let lam: Vec<f64> = (0..=n)
            .map(|m| if m == 0 { 0.0 } else { d.int_coeff(m).to_f64() / (m as f64).powf(5.5) })
            .collect();
        Hecke::from_lambdas(&lam)
    }

    #[test]
    fn short_sum_tracks_afe() {
        let h = delta_hecke(40_000);
        let exact = sym2_at_1_afe(&h, 12).unwrap();
        let s = sym2_at_1(&h, 12, 1000.0).unwrap();
        assert!((s.value - exact.value).abs() <= s.err, "{s:?} vs {exact:?}");
        // the leading E(g,V) term is the whole story at this V
        let e = harmonic_weight(12, exact.value) / 1000.0;
        assert!((s.value - (exact.value - e)).abs() < 1e-6);
        let rr = sym2_at_1(&h, 12, 100.0).unwrap();
        assert!(((rr.value - s.value) / s.value).abs() < 1e-1);
    }

    #[test]
    fn l32_routes() {
        let h = delta_hecke(20_000);
        let l = l_f_at_32(&h, 12).unwrap();
        assert!(l.err < 1e-12);
        let d = l_f_at_32_direct(&h, 20_000).unwrap();
        assert!((d.value - l.value).abs() <= d.err);
        let inv = inv_l_f_at_32(&h, 2000.0).unwrap();
        assert!((inv.value * l.value - 1.0).abs() <= inv.err * l.value + l.err / l.value);
        assert!(1.0 / l.value <= inv_l32_upper_bound());
        // Euler product at primes below the table, tail ~ p^{-3/2}
        let mut e = 1.0;
        for p in arith::primes_up_to(20_000) {
            let x = (p as f64).powf(-1.5);
            e /= 1.0 - h.lambda_p(p as usize).unwrap() * x + x * x;
        }
        assert!((e - l.value).abs() < 0.02, "{e} {}", l.value);
    }
}
