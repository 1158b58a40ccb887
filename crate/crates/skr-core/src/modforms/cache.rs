use super::Eigenform;
use crate::error::{Error, Result};
use rug::{Float, Integer};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

/// Hecke relations re-checked on every load.
const CHECKS: [(usize, usize); 3] = [(2, 3), (2, 2), (3, 3)];

/// Write `# weight=.. label=.. prec_bits=.. n_max=..` followed by `n a(n)` lines.
pub fn write_cache(f: &Eigenform, path: &Path) -> Result<()> {
    let mut w = BufWriter::new(std::fs::File::create(path)?);
    writeln!(
        w,
        "# weight={} label={} prec_bits={} n_max={}",
        f.weight,
        f.label,
        f.prec_bits,
        f.n_max()
    )?;
    let digits = (f.a(1).prec() as f64 * std::f64::consts::LOG10_2).ceil() as usize + 2;
    for n in 1..=f.n_max() {
        match f.exact() {
            Some(ex) => writeln!(w, "{} {}", n, ex[n])?,
            None => writeln!(w, "{} {}", n, f.a(n).to_string_radix(10, Some(digits)))?,
        }
    }
    w.flush()?;
    Ok(())
}

fn header_field<'a>(header: &'a str, key: &str) -> Result<&'a str> {
    header
        .split_whitespace()
        .find_map(|tok| tok.strip_prefix(key).and_then(|r| r.strip_prefix('=')))
        .ok_or_else(|| Error::Parse(format!("missing header field {key}")))
}

/// Load a cached eigenform and re-validate three Hecke relations.
pub fn read_cache(path: &Path) -> Result<Eigenform> {
    let r = BufReader::new(std::fs::File::open(path)?);
    let mut lines = r.lines();
    let header = lines.next().ok_or_else(|| Error::Parse("empty cache file".into()))??;
    if !header.starts_with('#') {
        return Err(Error::Parse("missing header".into()));
    }
    let parse_num = |s: &str| s.parse::<u64>().map_err(|e| Error::Parse(format!("{s}: {e}")));
    let weight = parse_num(header_field(&header, "weight")?)? as u32;
    let label = header_field(&header, "label")?.to_string();
    let prec_bits = parse_num(header_field(&header, "prec_bits")?)? as u32;
    let n_max = parse_num(header_field(&header, "n_max")?)? as usize;
    let wp = prec_bits + 64;

    let mut a = vec![Float::with_val(wp, 0); n_max + 1];
    let mut exact: Option<Vec<Integer>> = Some(vec![Integer::new(); n_max + 1]);
    let mut seen = vec![false; n_max + 1];
    for line in lines {
        let line = line?;
        let mut it = line.split_whitespace();
        let (Some(ns), Some(vs), None) = (it.next(), it.next(), it.next()) else {
            return Err(Error::Parse(format!("bad line: {line}")));
        };
        let n = parse_num(ns)? as usize;
        if n == 0 || n > n_max {
            return Err(Error::Parse(format!("index {n} outside 1..={n_max}")));
        }
        match vs.parse::<Integer>() {
            Ok(i) => {
                a[n] = Float::with_val(wp, &i);
                if let Some(ex) = exact.as_mut() {
                    ex[n] = i;
                }
            }
            Err(_) => {
                let v = Float::parse(vs).map_err(|e| Error::Parse(format!("{vs}: {e}")))?;
                a[n] = Float::with_val(wp, v);
                exact = None;
            }
        }
        seen[n] = true;
    }
    if let Some(missing) = (1..=n_max).find(|&n| !seen[n]) {
        return Err(Error::Parse(format!("missing coefficient a({missing})")));
    }
    let f = Eigenform::from_coefficients(weight, label, prec_bits, a, exact, Vec::new());
    if *f.a(1) != 1 {
        return Err(Error::Validation("cached form is not normalized".into()));
    }
    let tol = 2f64.powi(-(prec_bits as i32) / 2);
    for (m, n) in CHECKS {
        if m * n <= n_max {
            let d = f.hecke_defect(m, n)?;
            if d > tol {
                return Err(Error::Validation(format!(
                    "cached coefficients fail Hecke relation ({m},{n}): defect {d:e}"
                )));
            }
        }
    }
    Ok(f)
}
