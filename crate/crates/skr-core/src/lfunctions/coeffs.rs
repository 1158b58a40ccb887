//! Multiplicative coefficient tables built from Hecke eigenvalues at primes.

use crate::arith::{self, Sieve};
use crate::error::{Error, Result};
use crate::modforms::Eigenform;

/// λ(n) for arbitrary n, via the Hecke recursion at primes.
#[derive(Clone, Debug)]
pub struct Hecke {
    /// λ(p) at primes, indexed by p; other entries unused.
    lp: Vec<f64>,
    sieve: Sieve,
}

impl Hecke {
    pub fn from_eigenform(f: &Eigenform) -> Self {
        Self::from_lambdas(f.lambdas())
    }

    /// `lam[n]` = λ(n) for n ≤ limit; only prime entries are read.
    pub fn from_lambdas(lam: &[f64]) -> Self {
        let sieve = Sieve::new(lam.len().saturating_sub(1).max(1));
        Hecke { lp: lam.to_vec(), sieve }
    }

    /// Largest prime bound covered.
    pub fn limit(&self) -> usize {
        self.lp.len() - 1
    }

    pub fn lambda_p(&self, p: usize) -> Result<f64> {
        if p > self.limit() {
            return Err(Error::InsufficientPrecision { needed: p, available: self.limit() });
        }
        Ok(self.lp[p])
    }

    /// λ(p^0..=p^e).
    pub fn prime_powers(&self, p: usize, e: u32) -> Result<Vec<f64>> {
        let l = self.lambda_p(p)?;
        Ok(hecke_powers(l, e))
    }

    /// λ(n) by multiplicativity; n may exceed the table if its primes do not.
    pub fn lambda(&self, n: u64) -> Result<f64> {
        let fac = if (n as usize) <= self.sieve.limit() {
            self.sieve.factor(n as usize).into_iter().map(|(p, e)| (p as u64, e)).collect()
        } else {
            arith::factor(n)
        };
        let mut v = 1.0;
        for (p, e) in fac {
            v *= self.prime_powers(p as usize, e)?[e as usize];
        }
        Ok(v)
    }
}

/// λ(p^j), j ≤ e, from λ(p^{j+1}) = λ(p)λ(p^j) − λ(p^{j−1}).
pub fn hecke_powers(lp: f64, e: u32) -> Vec<f64> {
    let mut out = vec![1.0];
    if e >= 1 {
        out.push(lp);
    }
    for j in 2..=e as usize {
        out.push(lp * out[j - 1] - out[j - 2]);
    }
    out
}

/// A(p^j, 1) = Σ_{i+2t=j} λ_g(p^{2i}) for j ≤ e.
pub fn gl3_prime_powers(lp: f64, e: u32) -> Vec<f64> {
    let lam = hecke_powers(lp, 2 * e);
    (0..=e as usize)
        .map(|j| (0..=j / 2).map(|t| lam[2 * (j - 2 * t)]).sum())
        .collect()
}

/// Coefficients A_G(m₁, m₂) of the symmetric-square lift of g.
#[derive(Clone, Debug)]
pub struct GL3Coefficients {
    pub source: String,
    m1: usize,
    m2: usize,
    /// Row-major (m₁, m₂), both 1-based.
    table: Vec<f64>,
}

impl GL3Coefficients {
    pub fn get(&self, m1: usize, m2: usize) -> f64 {
        assert!((1..=self.m1).contains(&m1) && (1..=self.m2).contains(&m2), "A_G index out of range");
        self.table[(m1 - 1) * self.m2 + (m2 - 1)]
    }

    pub fn bounds(&self) -> (usize, usize) {
        (self.m1, self.m2)
    }
}

/// A_G(r,1) = Σ_{ab²=r} λ_g(a²), then A_G(m₁,m₂) = Σ_{d|(m₁,m₂)} μ(d) A_G(m₁/d,1) A_G(m₂/d,1).
pub fn gl3_coeffs(g: &Hecke, name: &str, m1: usize, m2: usize) -> Result<GL3Coefficients> {
    let m = m1.max(m2);
    let mut a1 = vec![0.0; m + 1];
    for (r, slot) in a1.iter_mut().enumerate().skip(1) {
        let mut s = 0.0;
        let mut b = 1;
        while b * b <= r {
            if r % (b * b) == 0 {
                let a = (r / (b * b)) as u64;
                s += g.lambda(a * a)?;
            }
            b += 1;
        }
        *slot = s;
    }
    let mut table = vec![0.0; m1 * m2];
    for i in 1..=m1 {
        for j in 1..=m2 {
            let mut s = 0.0;
            for d in arith::divisors(arith::gcd(i as u64, j as u64)) {
                let mu = arith::mobius(d);
                if mu != 0 {
                    let d = d as usize;
                    s += mu as f64 * a1[i / d] * a1[j / d];
                }
            }
            table[(i - 1) * m2 + (j - 1)] = s;
        }
    }
    Ok(GL3Coefficients { source: name.to_string(), m1, m2, table })
}

/// Dirichlet coefficients c(n) = Σ_{m₁m₂²=n} λ_f(m₁) A_G(m₁,m₂) of L(s, sym²g⊗f) for n ≤ limit.
pub fn rankin_coeffs(f: &Hecke, g: &Hecke, limit: usize) -> Result<Vec<f64>> {
    let sieve = Sieve::new(limit.max(1));
    let mut local: Vec<Vec<f64>> = vec![Vec::new(); limit + 1];
    for p in sieve.primes() {
        let mut e = 0u32;
        let mut q = 1usize;
        while q <= limit / p {
            q *= p;
            e += 1;
        }
        local[p] = rankin_local(f.lambda_p(p)?, g.lambda_p(p)?, e);
    }
    let mut c = vec![0.0; limit + 1];
    if limit >= 1 {
        c[1] = 1.0;
    }
    for n in 2..=limit {
        c[n] = sieve.factor(n).iter().map(|&(p, e)| local[p][e as usize]).product();
    }
    Ok(c)
}

/// c(p^e) = Σ_{a+2b=e} λ_f(p^a) A_G(p^a, p^b) for e ≤ emax.
pub fn rankin_local(lf: f64, lg: f64, emax: u32) -> Vec<f64> {
    let lam_f = hecke_powers(lf, emax);
    let a = gl3_prime_powers(lg, emax);
    let ag = |i: usize, j: usize| {
        let mut v = a[i] * a[j];
        if i > 0 && j > 0 {
            v -= a[i - 1] * a[j - 1];
        }
        v
    };
    (0..=emax as usize)
        .map(|e| (0..=e / 2).map(|b| lam_f[e - 2 * b] * ag(e - 2 * b, b)).sum())
        .collect()
}

/// Majorant of |c(p^e)|: Σ_{a+2b=e} (a+1)·C(a+2,2)·C(b+2,2).
pub fn rankin_majorant_local(e: u32) -> f64 {
    (0..=e / 2)
        .map(|b| {
            let a = (e - 2 * b) as u64;
            ((a + 1) * arith::binom(a + 2, 2) * arith::binom(b as u64 + 2, 2)) as f64
        })
        .sum()
}

/// Majorant table for n ≤ limit.
pub fn rankin_majorant(limit: usize) -> Vec<f64> {
    let sieve = Sieve::new(limit.max(1));
    arith::multiplicative_table(&sieve, limit, |_, e| rankin_majorant_local(e))
}

/// Coefficients of L(s, sym²g): b(n) = Σ_{q²r=n} λ(r²), n ≤ limit.
pub fn sym2_coeffs(g: &Hecke, limit: usize) -> Result<Vec<f64>> {
    let sieve = Sieve::new(limit.max(1));
    let mut local: Vec<Vec<f64>> = vec![Vec::new(); limit + 1];
    for p in sieve.primes() {
        let mut e = 0u32;
        let mut q = 1usize;
        while q <= limit / p {
            q *= p;
            e += 1;
        }
        local[p] = gl3_prime_powers(g.lambda_p(p)?, e);
    }
    let mut c = vec![0.0; limit + 1];
    if limit >= 1 {
        c[1] = 1.0;
    }
    for n in 2..=limit {
        c[n] = sieve.factor(n).iter().map(|&(p, e)| local[p][e as usize]).product();
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy() -> Hecke {
        // any bounded values at primes define a consistent multiplicative system
        let mut lam = vec![0.0; 200];
        for p in arith::primes_up_to(199) {
            lam[p as usize] = 2.0 * ((p as f64) * 0.7).cos();
        }
        Hecke::from_lambdas(&lam)
    }

    #[test]
    fn gl3_examples() {
        let g = toy();
        let t = gl3_coeffs(&g, "toy", 50, 50).unwrap();
        assert_eq!(t.get(1, 1), 1.0);
        for p in [2usize, 3, 5, 7] {
            let lp2 = g.lambda((p * p) as u64).unwrap();
            assert!((t.get(p, 1) - lp2).abs() < 1e-12);
            assert!((t.get(p, p) - (t.get(p, 1).powi(2) - 1.0)).abs() < 1e-12);
        }
    }

    #[test]
    fn rankin_local_matches_double_sum() {
        let g = toy();
        let f = {
            let mut lam = vec![0.0; 200];
            for p in arith::primes_up_to(199) {
                lam[p as usize] = 2.0 * ((p as f64) * 1.3 + 0.2).sin();
            }
            Hecke::from_lambdas(&lam)
        };
        let t = gl3_coeffs(&g, "toy", 64, 8).unwrap();
        let c = rankin_coeffs(&f, &g, 64).unwrap();
        for n in 1..=64usize {
            let mut s = 0.0;
            for m2 in 1..=8usize {
                if n % (m2 * m2) == 0 {
                    let m1 = n / (m2 * m2);
                    s += f.lambda(m1 as u64).unwrap() * t.get(m1, m2);
                }
            }
            assert!((s - c[n]).abs() < 1e-10, "n={n}: {s} vs {}", c[n]);
        }
    }

    #[test]
    fn majorant_dominates_at_extremes() {
        // λ(p) = ±2 saturates Deligne; the majorant must still dominate
        for lf in [-2.0, 2.0] {
            for lg in [-2.0, 2.0] {
                let c = rankin_local(lf, lg, 8);
                for e in 0..=8 {
                    assert!(c[e].abs() <= rankin_majorant_local(e as u32) + 1e-9);
                }
            }
        }
    }
}
