//! Double-precision special functions and quadrature helpers.

use num_complex::Complex64;
use std::f64::consts::PI;

/// B_{2m}/(2m(2m−1)) for m = 1..=10.
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
];

/// log Γ(z) for Re z > 0 (imaginary part continuous along horizontal lines).
pub fn ln_gamma(z: Complex64) -> Complex64 {
    let mut z = z;
    let mut acc = Complex64::new(0.0, 0.0);
    while z.re < 18.0 {
        acc += z.ln();
        z += 1.0;
    }
    let zinv = 1.0 / z;
    let zinv2 = zinv * zinv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut p = zinv;
    for c in STIRLING {
        series += p * c;
        p *= zinv2;
    }
    (z - 0.5) * z.ln() - z + 0.5 * (2.0 * PI).ln() + series - acc
}

pub fn ln_gamma_real(x: f64) -> f64 {
    ln_gamma(Complex64::new(x, 0.0)).re
}

/// Regularized upper incomplete gamma Q(a, x) for a > 0, x ≥ 0.
pub fn gamma_q(a: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 1.0;
    }
    let lpre = a * x.ln() - x - ln_gamma_real(a);
    if x < a + 1.0 {
        // series for P
        let mut sum = 1.0 / a;
        let mut term = sum;
        let mut n = 1.0;
        while term.abs() > sum.abs() * 1e-17 {
            term *= x / (a + n);
            sum += term;
            n += 1.0;
        }
        1.0 - sum * lpre.exp()
    } else {
        // Lentz continued fraction for Q
        let tiny = 1e-300;
        let mut b = x + 1.0 - a;
        let mut c = 1.0 / tiny;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..10_000 {
            let an = -(i as f64) * (i as f64 - a);
            b += 2.0;
            d = an * d + b;
            if d.abs() < tiny {
                d = tiny;
            }
            c = b + an / c;
            if c.abs() < tiny {
                c = tiny;
            }
            d = 1.0 / d;
            let del = d * c;
            h *= del;
            if (del - 1.0).abs() < 1e-17 {
                break;
            }
        }
        h * lpre.exp()
    }
}

/// Riemann zeta for real s > 1 by Euler–Maclaurin.
pub fn zeta(s: f64) -> f64 {
    let n = 20usize;
    let mut sum = 0.0;
    for k in 1..n {
        sum += (k as f64).powf(-s);
    }
    let nf = n as f64;
    sum += nf.powf(1.0 - s) / (s - 1.0) + 0.5 * nf.powf(-s);
    // Σ B_{2j}/(2j)! s(s+1)...(s+2j−2) N^{−s−2j+1}
    let b = [1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0, -691.0 / 2730.0];
    let mut fact = 1.0;
    let mut rising = s;
    for (j, bj) in b.iter().enumerate() {
        let j2 = 2 * (j + 1);
        fact *= ((j2 - 1) * j2) as f64;
        sum += bj / fact * rising * nf.powf(-s - j2 as f64 + 1.0);
        rising *= (s + j2 as f64 - 1.0) * (s + j2 as f64);
    }
    sum
}

/// e(x) = exp(2πix).
pub fn e(x: f64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * x)
}
