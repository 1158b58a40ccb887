//! Bessel functions J_l(x) of integer order.
//!
//! The reference route is the trapezoid rule on
//! J_l(x) = (1/2π) ∫_{−π}^{π} cos(lθ − x sin θ) dθ, which converges
//! geometrically once the node count exceeds l + x. Where J_l(x) is far below
//! the quadrature noise floor the ascending series is used instead, which keeps
//! relative accuracy.

use crate::error::{Error, Result};
use crate::numerics::ln_gamma_real;
use rug::Float;
use std::f64::consts::PI;

/// Largest order accepted.
pub const MAX_ORDER: u32 = 10_000;
/// Largest argument accepted.
pub const MAX_ARG: f64 = 1e7;

const AGREE: f64 = 1e-14;
const MAX_NODES: usize = 1 << 26;

fn check(l: u32, x: f64) -> Result<()> {
    if l > MAX_ORDER || !(0.0..=MAX_ARG).contains(&x) {
        return Err(Error::InvalidArgument(format!("J_{l}({x}) outside 0 ≤ l ≤ {MAX_ORDER}, 0 ≤ x ≤ {MAX_ARG}")));
    }
    Ok(())
}

/// J_l(x): series when x²/4 < l + 1, trapezoid otherwise.
pub fn bessel_j(l: u32, x: f64) -> Result<f64> {
    check(l, x)?;
    if x == 0.0 {
        return Ok(if l == 0 { 1.0 } else { 0.0 });
    }
    if x * x / 4.0 < l as f64 + 1.0 {
        Ok(bessel_j_series(l, x))
    } else {
        bessel_j_trapezoid(l, x)
    }
}

/// (x/2)^l/l! Σ_m (−x²/4)^m / (m! (l+1)_m); terms decrease from the start
/// when x²/4 < l + 1, so the result is accurate relative to its size.
pub fn bessel_j_series(l: u32, x: f64) -> f64 {
    let lf = l as f64;
    let pre = lf * (x / 2.0).ln() - ln_gamma_real(lf + 1.0);
    let z = -x * x / 4.0;
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    let mut m = 1.0;
    while term.abs() > 1e-18 * sum.abs() || m < 3.0 {
        term *= z / (m * (lf + m));
        sum += term;
        m += 1.0;
        if m > 10_000.0 {
            break;
        }
    }
    sum * pre.exp()
}

fn trapezoid_nodes(l: u32, x: f64, n: usize) -> f64 {
    // l·j reduced mod n exactly so the phase stays accurate for large l
    let mut s = 0.0;
    for j in 0..n {
        let lj = (l as u64 * j as u64 % n as u64) as f64;
        let theta = 2.0 * PI * j as f64 / n as f64;
        s += (2.0 * PI * lj / n as f64 - x * theta.sin()).cos();
    }
    s / n as f64
}

/// Trapezoid rule, doubling the node count until two refinements agree.
pub fn bessel_j_trapezoid(l: u32, x: f64) -> Result<f64> {
    check(l, x)?;
    let start = (l as f64 + x + 32.0 + 8.0 * x.cbrt()).ceil() as usize;
    let mut n = start.next_power_of_two();
    let mut prev = trapezoid_nodes(l, x, n);
    let mut agreed = 0;
    while n < MAX_NODES {
        n *= 2;
        let cur = trapezoid_nodes(l, x, n);
        if (cur - prev).abs() < AGREE {
            agreed += 1;
            if agreed == 2 {
                return Ok(cur);
            }
        } else {
            agreed = 0;
        }
        prev = cur;
    }
    Err(Error::Quadrature(format!("J_{l}({x}) did not settle with {MAX_NODES} nodes")))
}

/// Miller's backward recurrence normalised by J₀ + 2ΣJ_{2k} = 1.
pub fn bessel_j_miller(l: u32, x: f64) -> Result<f64> {
    check(l, x)?;
    if x == 0.0 {
        return Ok(if l == 0 { 1.0 } else { 0.0 });
    }
    let top = (l as f64).max(x);
    let mut m = (top + 30.0 + 10.0 * top.sqrt()) as u64;
    m += m % 2;
    let (mut jp1, mut j) = (0.0f64, 1e-300f64);
    let mut norm = 0.0;
    let mut want = 0.0;
    for n in (1..=m).rev() {
        let jm1 = 2.0 * n as f64 / x * j - jp1;
        jp1 = j;
        j = jm1;
        let idx = n - 1;
        if idx == l as u64 {
            want = j;
        }
        if idx % 2 == 0 && idx > 0 {
            norm += 2.0 * j;
        }
        if j.abs() > 1e250 {
            j *= 1e-250;
            jp1 *= 1e-250;
            norm *= 1e-250;
            want *= 1e-250;
        }
    }
    norm += j;
    Ok(want / norm)
}

/// MPFR's jn at `prec` bits.
pub fn bessel_j_mpfr(l: u32, x: f64, prec: u32) -> f64 {
    Float::with_val(prec, x).jn(l as i32).to_f64()
}
