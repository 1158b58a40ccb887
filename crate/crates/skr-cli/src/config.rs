//! Run configuration and its flat `key = value` file form.

use skr_core::error::{Error, Result};
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Text,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            _ => Err(Error::InvalidArgument(format!("format {s:?} is not csv or text"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Text => "text",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub prec_bits: u32,
    /// Series cutoff X = C·k².
    pub cutoff_c: f64,
    pub cache: Option<PathBuf>,
    pub suite: Option<String>,
    pub format: Format,
    pub seed: u64,
}

/// Smallest precision accepted for L-value work.
pub const MIN_PREC: u32 = 128;

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            prec_bits: skr_core::modforms::DEFAULT_PREC_BITS,
            cutoff_c: 40.0,
            cache: None,
            suite: None,
            format: Format::Text,
            seed: 1,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.prec_bits < MIN_PREC {
            return Err(Error::InvalidArgument(format!("precision {} < {MIN_PREC} bits", self.prec_bits)));
        }
        if !(self.cutoff_c.is_finite() && self.cutoff_c >= 1.0) {
            return Err(Error::InvalidArgument(format!("cutoff constant {} must be ≥ 1", self.cutoff_c)));
        }
        Ok(())
    }

    /// One `key = value` line per field; unset paths are left empty.
    pub fn to_file_string(&self) -> String {
        let opt = |p: Option<String>| p.unwrap_or_default();
        format!(
            "prec = {}\ncutoff_c = {}\ncache = {}\nsuite = {}\nformat = {}\nseed = {}\n",
            self.prec_bits,
            self.cutoff_c,
            opt(self.cache.as_ref().map(|p| p.display().to_string())),
            opt(self.suite.clone()),
            self.format,
            self.seed
        )
    }

    /// Keys not present keep the values already in `self`.
    pub fn apply_file_string(&mut self, text: &str) -> Result<()> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("line {}: expected key = value", i + 1)))?;
            let v = v.trim();
            let bad = |e: &dyn fmt::Display| Error::Parse(format!("line {}: {e}", i + 1));
            match k.trim() {
                "prec" => self.prec_bits = v.parse().map_err(|e| bad(&e))?,
                "cutoff_c" => self.cutoff_c = v.parse().map_err(|e| bad(&e))?,
                "cache" => self.cache = (!v.is_empty()).then(|| PathBuf::from(v)),
                "suite" => self.suite = (!v.is_empty()).then(|| v.to_string()),
                "format" => self.format = v.parse().map_err(|e| bad(&e))?,
                "seed" => self.seed = v.parse().map_err(|e| bad(&e))?,
                other => return Err(Error::Parse(format!("line {}: unknown key {other:?}", i + 1))),
            }
        }
        Ok(())
    }

    pub fn from_file_string(text: &str) -> Result<Self> {
        let mut c = RunConfig::default();
        c.apply_file_string(text)?;
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_file_string(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        Ok(std::fs::write(path, self.to_file_string())?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let c = RunConfig {
            prec_bits: 256,
            cutoff_c: 0.1 + 0.2 + 40.0,
            cache: Some(PathBuf::from("/tmp/a b")),
            suite: Some("gauss".into()),
            format: Format::Csv,
            seed: u64::MAX,
        };
        assert_eq!(RunConfig::from_file_string(&c.to_file_string()).unwrap(), c);
        let d = RunConfig::default();
        assert_eq!(RunConfig::from_file_string(&d.to_file_string()).unwrap(), d);
    }

    #[test]
    fn rejects() {
        assert!(RunConfig::from_file_string("prec 12").is_err());
        assert!(RunConfig::from_file_string("colour = red").is_err());
        assert!(RunConfig::from_file_string("format = xml").is_err());
        assert!(RunConfig { prec_bits: 64, ..Default::default() }.validate().is_err());
    }
}
