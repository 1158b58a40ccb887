//! Eigenforms backed by the on-disk coefficient cache.

use skr_core::arith::dim_sk;
use skr_core::error::Result;
use skr_core::modforms::{eigenbasis, read_cache, write_cache, Eigenform};
use std::path::{Path, PathBuf};

/// Label of the i-th form by descending λ(2).
fn label(i: usize) -> String {
    char::from(b'a' + i as u8).to_string()
}

pub fn cache_path(dir: &Path, k: u32, i: usize) -> PathBuf {
    dir.join(format!("{k}{}.txt", label(i)))
}

/// The eigenbasis of S_k to n coefficients. With a cache directory, complete
/// cached sets of sufficient length and precision are loaded (and
/// re-validated); otherwise the basis is computed and written back.
pub fn eigenbasis_cached(k: u32, n: usize, prec_bits: u32, cache: Option<&Path>) -> Result<Vec<Eigenform>> {
    let Some(dir) = cache else {
        return eigenbasis(k, n, prec_bits);
    };
    let dim = dim_sk(k as i64);
    let paths: Vec<PathBuf> = (0..dim).map(|i| cache_path(dir, k, i)).collect();
    if dim > 0 && paths.iter().all(|p| p.exists()) {
        let loaded: Vec<Eigenform> = paths.iter().map(|p| read_cache(p)).collect::<Result<_>>()?;
        if loaded.iter().all(|f| f.n_max() >= n && f.prec_bits >= prec_bits) {
            return Ok(loaded.into_iter().map(|f| f.truncated(n)).collect());
        }
    }
    let fs = eigenbasis(k, n, prec_bits)?;
    std::fs::create_dir_all(dir)?;
    for (f, p) in fs.iter().zip(&paths) {
        write_cache(f, p)?;
    }
    Ok(fs)
}
