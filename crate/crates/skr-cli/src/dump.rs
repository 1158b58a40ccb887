//! Deterministic coefficient dumps.

use crate::store::eigenbasis_cached;
use skr_core::arith;
use skr_core::error::{Error, Result};
use skr_core::modforms::write_cache;
use skr_core::sk_lift::lift::sk_csv;
use skr_core::sk_lift::{jacobi_cusp_basis, maass_coefficient, match_lifts, restrict_z0};
use std::path::{Path, PathBuf};

/// A named text output.
pub struct Dump {
    pub file: String,
    pub content: String,
}

/// Each eigenform of S_k in the cache format, n rows apiece.
pub fn eigen(weight: u32, n: usize, prec_bits: u32, cache: Option<&Path>) -> Result<Vec<Dump>> {
    let fs = eigenbasis_cached(weight, n, prec_bits, cache)?;
    if fs.is_empty() {
        return Err(Error::InvalidArgument(format!("S_{weight} is zero")));
    }
    let tmp = std::env::temp_dir().join(format!("skr-dump-{}", std::process::id()));
    std::fs::create_dir_all(&tmp)?;
    let mut out = Vec::new();
    for f in &fs {
        let p = tmp.join(format!("{}.txt", f.name()));
        write_cache(f, &p)?;
        out.push(Dump { file: format!("{}.txt", f.name()), content: std::fs::read_to_string(&p)? });
        std::fs::remove_file(&p)?;
    }
    let _ = std::fs::remove_dir(&tmp);
    Ok(out)
}

/// c(D) of each basis form of J^cusp_{ℓ,1} for D ≤ d_max.
pub fn jacobi(ell: u32, d_max: usize) -> Result<Vec<Dump>> {
    let s = jacobi_cusp_basis(ell, d_max)?;
    let labels = s.labels();
    Ok(s.forms
        .iter()
        .map(|f| Dump { file: format!("jacobi_{ell}_{}.csv", f.label.replace('*', "_")), content: f.to_csv(&labels) })
        .collect())
}

/// A(n, r, m) of each eigen lift for n, m ≤ max, after a Maass-symmetry spot check.
pub fn sk(ell: u32, max: i64) -> Result<Vec<Dump>> {
    let mut out = Vec::new();
    for lift in match_lifts(ell)? {
        for n in 1..=max.min(6) {
            for m in n..=max.min(6) {
                let rm = arith::isqrt((4 * n * m) as u64) as i64;
                for r in -rm..=rm {
                    let a = maass_coefficient(&lift, n, r, m)?.to_f64();
                    for b in [maass_coefficient(&lift, m, r, n)?.to_f64(), maass_coefficient(&lift, n, -r, m)?.to_f64()] {
                        if (a - b).abs() > 1e-12 * a.abs().max(1.0) {
                            return Err(Error::Validation(format!("Maass symmetry fails at ({n},{r},{m}) for {}", lift.f.name())));
                        }
                    }
                }
            }
        }
        out.push(Dump { file: format!("sk_{}.csv", lift.f.name()), content: sk_csv(&lift, max)? });
    }
    Ok(out)
}

/// b(n, m) of the z = 0 restriction of each basis form, n, m < N.
pub fn restriction(ell: u32, n_max: usize) -> Result<Vec<Dump>> {
    let s = jacobi_cusp_basis(ell, (4 * n_max * n_max).max(64))?;
    let mut out = Vec::new();
    for phi in &s.forms {
        let r = restrict_z0(&s, phi, n_max)?;
        let mut c = format!(
            "# ell={ell} form={} basis={} certified_vanishing={}\nn,m,b\n",
            phi.label,
            s.labels().join(";"),
            r.certified_vanishing
        );
        for (n, row) in r.b.iter().enumerate() {
            for (m, v) in row.iter().enumerate() {
                c.push_str(&format!("{n},{m},{v}\n"));
            }
        }
        out.push(Dump { file: format!("restriction_{ell}_{}.csv", phi.label.replace('*', "_")), content: c });
    }
    Ok(out)
}

/// Files under `dir`, or everything concatenated when no directory is given.
pub fn emit(dumps: &[Dump], dir: Option<&Path>) -> Result<String> {
    match dir {
        None => Ok(dumps.iter().map(|d| d.content.as_str()).collect()),
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            let mut listing = String::new();
            for d in dumps {
                let p: PathBuf = dir.join(&d.file);
                std::fs::write(&p, &d.content)?;
                listing.push_str(&format!("wrote {}\n", p.display()));
            }
            Ok(listing)
        }
    }
}
