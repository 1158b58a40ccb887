//! Both sides of the Petersson trace formula
//! Σ_φ ω_φ⁻¹ λ_φ(m)λ_φ(n) = δ_{m,n} + 2πi^{−k} Σ_c S(m,n;c)/c · J_{k−1}(4π√(mn)/c).

use super::coeffs::Hecke;
use super::lvalues::{harmonic_weight, sym2_at_1_afe};
use crate::arith::{gcd, inv_mod};
use crate::asymptotics::bessel::bessel_j;
use crate::error::{Error, Result};
use crate::expsums::{cos_table, weil_bound};
use crate::modforms::{eigenbasis, Eigenform, DEFAULT_PREC_BITS};
use std::f64::consts::PI;

/// Terms whose Weil majorant is below this are bounded instead of summed.
const NEGLIGIBLE: f64 = 1e-20;

#[derive(Clone, Debug)]
pub struct PeterssonCheck {
    pub weight: u32,
    pub m: u64,
    pub n: u64,
    pub cmax: u64,
    pub lhs: f64,
    /// From the L(1, sym²φ) errors.
    pub lhs_err: f64,
    pub rhs: f64,
    /// Weil-type bound on Σ_{c>cmax}.
    pub tail: f64,
    /// Weil bound on the c ≤ cmax terms that were not summed.
    pub skipped: f64,
    /// Kloosterman sums actually evaluated; the rest are bounded by Weil.
    pub evaluated: u64,
}

impl PeterssonCheck {
    pub fn diff(&self) -> f64 {
        (self.lhs - self.rhs).abs()
    }

    pub fn budget(&self) -> f64 {
        self.lhs_err + self.tail + self.skipped + 1e-13 * (1.0 + self.rhs.abs())
    }
}

/// Spectral side data for one weight.
#[derive(Clone, Debug)]
pub struct PeterssonSpectral {
    pub weight: u32,
    pub forms: Vec<Eigenform>,
    /// ω_φ and its absolute error.
    pub omegas: Vec<(f64, f64)>,
}

/// Largest m, n accepted.
pub const MAX_MN: u64 = 10;

impl PeterssonSpectral {
    pub fn new(weight: u32) -> Result<Self> {
        if weight < 12 || weight % 2 != 0 {
            return Err(Error::InvalidArgument(format!("weight {weight} must be even and ≥ 12")));
        }
        // L(1, sym²φ) by its approximate functional equation needs ~40k² terms
        let forms = eigenbasis(weight, 40 * (weight * weight) as usize, DEFAULT_PREC_BITS)?;
        let omegas = forms
            .iter()
            .map(|f| {
                let l1 = sym2_at_1_afe(&Hecke::from_eigenform(f), weight)?;
                Ok((harmonic_weight(weight, l1.value), harmonic_weight(weight, l1.err)))
            })
            .collect::<Result<_>>()?;
        Ok(PeterssonSpectral { weight, forms, omegas })
    }

    /// Σ_φ ω_φ⁻¹ λ_φ(m)λ_φ(n) with its error.
    pub fn spectral_sum(&self, m: u64, n: u64) -> (f64, f64) {
        let mut s = 0.0;
        let mut e = 0.0;
        for (f, &(w, we)) in self.forms.iter().zip(&self.omegas) {
            let t = f.lambda(m as usize) * f.lambda(n as usize) / w;
            s += t;
            e += t.abs() * we / w;
        }
        (s, e)
    }

    pub fn check(&self, m: u64, n: u64, cmax: u64) -> Result<PeterssonCheck> {
        Ok(self.check_many(&[(m, n)], cmax)?.remove(0))
    }

    /// Several (m, n) at once, sharing the inverse and cosine tables per c.
    pub fn check_many(&self, pairs: &[(u64, u64)], cmax: u64) -> Result<Vec<PeterssonCheck>> {
        for &(m, n) in pairs {
            if !(1..=MAX_MN).contains(&m) || !(1..=MAX_MN).contains(&n) {
                return Err(Error::InvalidArgument(format!("m = {m}, n = {n} outside 1..={MAX_MN}")));
            }
        }
        if cmax == 0 || cmax > 100_000 {
            return Err(Error::InvalidArgument(format!("cmax = {cmax} outside 1..=100000")));
        }
        let k = self.weight;
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        let mut out: Vec<PeterssonCheck> = pairs
            .iter()
            .map(|&(m, n)| {
                let (lhs, lhs_err) = self.spectral_sum(m, n);
                PeterssonCheck {
                    weight: k,
                    m,
                    n,
                    cmax,
                    lhs,
                    lhs_err,
                    rhs: if m == n { 1.0 } else { 0.0 },
                    tail: tail_bound(k, m, n, cmax),
                    skipped: 0.0,
                    evaluated: 0,
                }
            })
            .collect();
        for c in 1..=cmax {
            let ci = c as i64;
            let mut tables: Option<(Vec<(i64, i64)>, Vec<f64>)> = None;
            for r in out.iter_mut() {
                let j = bessel_j(k - 1, 4.0 * PI * ((r.m * r.n) as f64).sqrt() / c as f64)?;
                let majorant = 2.0 * PI * weil_bound(r.m as i64, r.n as i64, c) / c as f64 * j.abs();
                if majorant < NEGLIGIBLE {
                    r.skipped += majorant;
                    continue;
                }
                let (units, cos) = tables.get_or_insert_with(|| {
                    let units = (0..ci)
                        .filter(|&a| gcd(a as u64, c) == 1)
                        .map(|a| (a, inv_mod(a, ci).unwrap_or(0)))
                        .collect();
                    (units, cos_table(c))
                });
                let s: f64 = units
                    .iter()
                    .map(|&(a, ab)| cos[((r.m as i64 * a + r.n as i64 * ab) % ci) as usize])
                    .sum();
                r.rhs += sign * 2.0 * PI * s / c as f64 * j;
                r.evaluated += 1;
            }
        }
        Ok(out)
    }
}

/// Σ_{c>C} 2π τ(c)√((m,n)) c^{−3/2} (x/2c)^{k−1}/(k−1)! with τ(c) ≤ 2√c and
/// |J_ν(y)| ≤ (y/2)^ν/ν!, x = 4π√(mn).
pub fn tail_bound(k: u32, m: u64, n: u64, cmax: u64) -> f64 {
    let nu = (k - 1) as f64;
    let half_x = 2.0 * PI * ((m * n) as f64).sqrt();
    let g = gcd(m, n) as f64;
    let log_pref = (4.0 * PI * g.sqrt()).ln() + nu * half_x.ln() - crate::numerics::ln_gamma_real(nu + 1.0);
    // Σ_{c>C} c^{−1−ν} ≤ C^{−ν}/ν
    (log_pref - nu * (cmax as f64).ln() - nu.ln()).exp()
}

/// Checks every m, n ≤ mn_max.
pub fn petersson_grid(weight: u32, mn_max: u64, cmax: u64) -> Result<Vec<PeterssonCheck>> {
    let sp = PeterssonSpectral::new(weight)?;
    let pairs: Vec<(u64, u64)> = (1..=mn_max).flat_map(|m| (1..=mn_max).map(move |n| (m, n))).collect();
    sp.check_many(&pairs, cmax)
}
