//! Restricted norms N(F_f) and N*(F_f) of Saito–Kurokawa lifts.

use super::coeffs::Hecke;
use super::lvalues::{harmonic_weight, l_f_at_32, sym2_at_1_afe, Estimate};
use super::vfunc::{CentralValue, RsConfig, RsEvaluator};
use crate::error::{Error, Result};
use crate::modforms::{eigenbasis, Eigenform};
use std::f64::consts::PI;

/// Everything entering N(F_f) for one f.
#[derive(Clone, Debug)]
pub struct NormReport {
    pub ell: u32,
    pub label: String,
    /// (g name, L(½, sym²g⊗f)).
    pub central: Vec<(String, CentralValue)>,
    /// L(1, sym²g) per g, same order.
    pub sym2_g: Vec<Estimate>,
    pub l32: Estimate,
    pub sym2_f: Estimate,
    pub v1: f64,
    pub v2: f64,
    pub c_f: f64,
    pub c_f_prime: f64,
    pub n: f64,
    pub n_star: f64,
    pub err_budget: f64,
}

impl NormReport {
    /// `ell,label,L_rankin,L_32,L_sym2,N,N_star,err_budget`; L_rankin joins the
    /// per-g values with ';'.
    pub fn csv_row(&self) -> String {
        let rankin: Vec<String> = self.central.iter().map(|(_, c)| fmt20(c.value)).collect();
        format!(
            "{},{},{},{},{},{},{},{}",
            self.ell,
            self.label,
            rankin.join(";"),
            fmt20(self.l32.value),
            fmt20(self.sym2_f.value),
            fmt20(self.n),
            fmt20(self.n_star),
            fmt20(self.err_budget)
        )
    }
}

pub const CSV_HEADER: &str = "ell,label,L_rankin,L_32,L_sym2,N,N_star,err_budget";

/// 20 significant digits in scientific notation.
pub fn fmt20(x: f64) -> String {
    format!("{x:.19e}")
}

/// N(F_f) = (v₂/v₁²)·24π/(L(3/2,f)L(1,sym²f))·Σ_g L(½,sym²g⊗f)/k, with
/// N* = c_f′ Σ_g ω_g⁻¹ L(½,sym²g⊗f); the first is cross-checked against
/// c_f Σ_g ω_g⁻¹ L(1,sym²g) L(½,sym²g⊗f).
pub fn norm_report(f: &Eigenform, gs: &[Eigenform], ev: &RsEvaluator) -> Result<NormReport> {
    let k = ev.k;
    let ell = k + 1;
    if f.weight != 2 * k || gs.iter().any(|g| g.weight != ell) {
        return Err(Error::InvalidArgument(format!("weights do not match ℓ = {ell}")));
    }
    let hf = Hecke::from_eigenform(f);
    let l32 = l_f_at_32(&hf, f.weight)?;
    let sym2_f = sym2_at_1_afe(&hf, f.weight)?;
    let v1 = PI / 3.0;
    let v2 = PI.powi(3) / 270.0;
    let ratio = v2 / (v1 * v1);
    let c_f = ratio * 12.0 / PI / (l32.value * sym2_f.value);
    let c_f_prime = ratio * 12.0 / PI / sym2_f.value;

    let mut central = Vec::new();
    let mut sym2_g = Vec::new();
    let kf = k as f64;
    let (mut plain, mut plain_err) = (0.0, 0.0);
    let (mut weighted, mut star) = (0.0, 0.0);
    for g in gs {
        let hg = Hecke::from_eigenform(g);
        let c = ev.central_value(&hf, &hg)?;
        let s2 = sym2_at_1_afe(&hg, g.weight)?;
        // ω_g with κ = k + 1
        let omega = harmonic_weight(g.weight, s2.value);
        plain += c.value / kf;
        plain_err += c.budget() / kf;
        weighted += c.value * s2.value / omega;
        star += c.value / omega;
        central.push((g.name(), c));
        sym2_g.push(s2);
    }
    let pre = ratio * 24.0 * PI / (l32.value * sym2_f.value);
    let n = pre * plain;
    let n_alt = c_f * weighted;
    if (n - n_alt).abs() > 1e-12 * n.abs().max(1e-300) + 1e-300 {
        return Err(Error::Validation(format!("N via the two formulas: {n} vs {n_alt}")));
    }
    let rel = l32.err / l32.value + sym2_f.err / sym2_f.value;
    let err_budget = pre * plain_err + n.abs() * rel;
    let n_star = c_f_prime * star;
    Ok(NormReport {
        ell,
        label: f.label.clone(),
        central,
        sym2_g,
        l32,
        sym2_f,
        v1,
        v2,
        c_f,
        c_f_prime,
        n,
        n_star,
        err_budget,
    })
}

/// Settings for [`norm_nff`].
#[derive(Clone, Debug)]
pub struct NormConfig {
    pub prec_bits: u32,
    pub rs: RsConfig,
}

impl Default for NormConfig {
    fn default() -> Self {
        NormConfig { prec_bits: crate::modforms::DEFAULT_PREC_BITS, rs: RsConfig::default() }
    }
}

/// One report per f ∈ B_{2ℓ−2}.
pub fn norm_nff(ell: u32, cfg: &NormConfig) -> Result<Vec<NormReport>> {
    if ell < 10 || ell % 2 != 0 {
        return Err(Error::InvalidArgument(format!("ℓ = {ell} must be even and ≥ 10")));
    }
    let k = ell - 1;
    let ev = RsEvaluator::new(k, cfg.rs.clone())?;
    let n = ev.cutoff();
    let fs = eigenbasis(2 * k, n, cfg.prec_bits)?;
    let gs = eigenbasis(ell, n, cfg.prec_bits)?;
    norm_reports(&fs, &gs, &ev)
}

/// Reports for precomputed eigenbases.
pub fn norm_reports(fs: &[Eigenform], gs: &[Eigenform], ev: &RsEvaluator) -> Result<Vec<NormReport>> {
    fs.iter().map(|f| norm_report(f, gs, ev)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_g_sums() {
        for ell in [10, 14] {
            let r = norm_nff(ell, &NormConfig::default()).unwrap();
            assert_eq!(r.len(), 1);
            assert_eq!(r[0].n, 0.0);
            assert_eq!(r[0].n_star, 0.0);
        }
    }

    #[test]
    fn weight_12_row() {
        let r = norm_nff(12, &NormConfig::default()).unwrap();
        assert_eq!(r.len(), 1);
        let rep = &r[0];
        assert!((rep.n - 0.83).abs() / 0.83 < 0.15, "{}", rep.n);
        assert!(rep.n >= -rep.err_budget);
        assert!((rep.v2 / (rep.v1 * rep.v1) - PI / 30.0).abs() < 1e-15);
        assert_eq!(rep.csv_row().split(',').count(), CSV_HEADER.split(',').count());
    }
}
