//! Level-one modular forms: exact q-expansions, echelon bases, Hecke
//! operators and normalized eigenforms.

mod cache;
pub mod poly;
pub mod qseries;

pub use cache::{read_cache, write_cache};
pub use qseries::QSeries;

use crate::arith;
use crate::error::{Error, Result};
use crate::hp;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

/// Default working precision for eigenvalues, in bits.
pub const DEFAULT_PREC_BITS: u32 = 192;

/// Σ_{d|n} d^e for n in 0..prec (entry 0 is 0).
fn sigma_table(e: u32, prec: usize) -> Vec<Integer> {
    let mut out = vec![Integer::new(); prec];
    for d in 1..prec {
        let de = Integer::from(d).pow(e);
        let mut m = d;
        while m < prec {
            out[m] += &de;
            m += d;
        }
    }
    out
}

/// E_k with constant term 1, to `prec` coefficients.
pub fn eisenstein(k: u32, prec: usize) -> Result<QSeries> {
    if k < 4 || k % 2 != 0 {
        return Err(Error::InvalidArgument(format!("Eisenstein weight {k} must be even and at least 4")));
    }
    let b = hp::bernoulli(k as usize)[k as usize].clone();
    let factor = Rational::from(-(Rational::from(2 * k) / b));
    let sig = sigma_table(k - 1, prec);
    let mut num: Vec<Integer> = sig.iter().map(|s| Integer::from(s * factor.numer())).collect();
    if prec > 0 {
        num[0] = factor.denom().clone();
    }
    Ok(QSeries::from_parts(num, factor.denom().clone()))
}

/// ∏_{n≥1}(1−qⁿ)³ via Jacobi's identity Σ (−1)^m (2m+1) q^{m(m+1)/2}.
pub fn euler_cubed(prec: usize) -> QSeries {
    let mut num = vec![Integer::new(); prec];
    let mut m = 0usize;
    loop {
        let e = m * (m + 1) / 2;
        if e >= prec {
            break;
        }
        let v = Integer::from(2 * m + 1);
        num[e] = if m % 2 == 0 { v } else { -v };
        m += 1;
    }
    QSeries::from_integers(num)
}

/// ∏_{n≥1}(1−qⁿ)^{3e}.
pub fn euler_power3(e: u32, prec: usize) -> QSeries {
    euler_cubed(prec).pow(e)
}

/// Δ = q∏(1−qⁿ)²⁴.
pub fn delta(prec: usize) -> QSeries {
    if prec == 0 {
        return QSeries::zero(0);
    }
    euler_power3(8, prec).shift(1)
}

/// Echelonized basis of M_k or S_k.
#[derive(Clone, Debug)]
pub struct SpaceBasis {
    pub weight: u32,
    pub cuspidal: bool,
    pub dim_m: usize,
    pub dim_s: usize,
    /// Element i has leading term q^{pivot(i)} with coefficient 1 and zeros at the other pivots.
    pub basis: Vec<QSeries>,
}

impl SpaceBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Pivot column of basis element i.
    pub fn pivot(&self, i: usize) -> usize {
        if self.cuspidal {
            i + 1
        } else {
            i
        }
    }

    /// Coordinates of a series in this basis, read off at the pivots.
    /// The remaining coefficients are checked for consistency.
    pub fn coordinates(&self, s: &QSeries) -> Result<Vec<Rational>> {
        let coords: Vec<Rational> = (0..self.dim()).map(|i| s.coeff(self.pivot(i))).collect();
        let prec = s.prec().min(self.basis.first().map(|b| b.prec()).unwrap_or(0));
        for n in 0..prec {
            let mut v = Rational::new();
            for (c, b) in coords.iter().zip(&self.basis) {
                v += Rational::from(c * &b.coeff(n));
            }
            if v != s.coeff(n) {
                return Err(Error::Validation(format!("series not in span at q^{n}")));
            }
        }
        Ok(coords)
    }
}

/// Powers x^0..x^e.
fn powers(x: &QSeries, e: usize) -> Vec<QSeries> {
    let mut out = vec![QSeries::one(x.prec())];
    for i in 1..=e {
        let next = out[i - 1].mul(x);
        out.push(next);
    }
    out
}

/// Victor–Miller style basis from Δ^j E₄^a E₆^b, echelonized over Z.
pub fn space_basis(k: u32, cuspidal: bool, prec: usize) -> SpaceBasis {
    let dim_m = arith::dim_mk(k as i64);
    let dim_s = arith::dim_sk(k as i64);
    let dim = if cuspidal { dim_s } else { dim_m };
    let mut basis = Vec::new();
    if dim > 0 {
        let j0 = if cuspidal { 1 } else { 0 };
        let jmax = dim_m - 1;
        let e4 = eisenstein(4, prec).unwrap();
        let e6 = eisenstein(6, prec).unwrap();
        let d = delta(prec);
        let dp = powers(&d, jmax);
        let p4 = powers(&e4, 2);
        let bmax = (k / 6) as usize;
        let p6 = powers(&e6, bmax);
        for j in j0..=jmax {
            let w = k as usize - 12 * j;
            let a = (0..=2).find(|a| w >= 4 * a && (w - 4 * a) % 6 == 0).expect("weight decomposition");
            let b = (w - 4 * a) / 6;
            basis.push(dp[j].mul(&p4[a]).mul(&p6[b]));
        }
        // back-substitution to an identity block at the pivots
        for i in (0..basis.len()).rev() {
            let col = i + j0;
            for r in 0..i {
                let c = basis[r].coeff(col);
                if c != 0 {
                    basis[r] = basis[r].sub(&basis[i].scale(&c));
                }
            }
        }
    }
    SpaceBasis { weight: k, cuspidal, dim_m, dim_s, basis }
}

/// T_n on a weight-k series: b(m) = Σ_{d|(m,n)} d^{k−1} a(mn/d²).
/// The output holds every m with mn inside the input range.
pub fn hecke_tn(s: &QSeries, k: u32, n: u64) -> Result<QSeries> {
    if n == 0 {
        return Err(Error::InvalidArgument("Hecke index must be positive".into()));
    }
    let prec = s.prec();
    if prec == 0 {
        return Ok(s.clone());
    }
    let out_prec = (prec - 1) / n as usize + 1;
    let num = s.numerators();
    let mut out = vec![Integer::new(); out_prec];
    let ndivs = arith::divisors(n);
    for (m, o) in out.iter_mut().enumerate() {
        for &d in &ndivs {
            if m as u64 % d != 0 {
                continue;
            }
            let idx = (m as u64 * n / (d * d)) as usize;
            if idx >= prec {
                return Err(Error::InsufficientPrecision { needed: idx, available: prec });
            }
            *o += Integer::from(d).pow(k - 1) * &num[idx];
        }
    }
    Ok(QSeries::from_parts(out, s.denominator().clone()))
}

/// A normalized Hecke eigenform with coefficient table a(1..=n_max).
#[derive(Clone, Debug)]
pub struct Eigenform {
    pub weight: u32,
    /// "a", "b", ... by descending λ(2).
    pub label: String,
    pub prec_bits: u32,
    /// a[n] for n in 0..=n_max; a[0] = 0.
    a: Vec<Float>,
    /// Exact coefficients when the Hecke field is Q.
    exact: Option<Vec<Integer>>,
    /// λ(n) = a(n)/n^{(k−1)/2} in double precision.
    lambda: Vec<f64>,
    /// Characteristic polynomial of T₂ on S_k, increasing degree.
    pub t2_charpoly: Vec<Integer>,
}

impl Eigenform {
    pub fn from_coefficients(
        weight: u32,
        label: String,
        prec_bits: u32,
        a: Vec<Float>,
        exact: Option<Vec<Integer>>,
        t2_charpoly: Vec<Integer>,
    ) -> Self {
        let half = (weight as f64 - 1.0) / 2.0;
        let lambda = a
            .iter()
            .enumerate()
            .map(|(n, x)| if n == 0 { 0.0 } else { normalize(x, n, half) })
            .collect();
        Eigenform { weight, label, prec_bits, a, exact, lambda, t2_charpoly }
    }

    /// Weight plus label, e.g. "30a".
    pub fn name(&self) -> String {
        format!("{}{}", self.weight, self.label)
    }

    pub fn n_max(&self) -> usize {
        self.a.len() - 1
    }

    pub fn a(&self, n: usize) -> &Float {
        &self.a[n]
    }

    pub fn exact(&self) -> Option<&[Integer]> {
        self.exact.as_deref()
    }

    pub fn lambda(&self, n: usize) -> f64 {
        self.lambda[n]
    }

    pub fn lambdas(&self) -> &[f64] {
        &self.lambda
    }

    /// λ(n) at full precision.
    pub fn lambda_hp(&self, n: usize) -> Float {
        let p = self.a[n].prec();
        let e = Float::with_val(p, (self.weight - 1) as f64 / 2.0);
        let scale = Float::with_val(p, Float::with_val(p, n).pow(&e));
        Float::with_val(p, &self.a[n] / scale)
    }

    /// Relative defect of λ(m)λ(n) = Σ_{d|(m,n)} λ(mn/d²), at full precision.
    pub fn hecke_defect(&self, m: usize, n: usize) -> Result<f64> {
        if m * n > self.n_max() {
            return Err(Error::InsufficientPrecision { needed: m * n, available: self.n_max() });
        }
        let lhs = Float::with_val(self.prec_bits, self.lambda_hp(m) * self.lambda_hp(n));
        let mut rhs = Float::with_val(self.prec_bits, 0);
        for d in arith::divisors(arith::gcd(m as u64, n as u64)) {
            rhs += self.lambda_hp(m * n / (d * d) as usize);
        }
        let scale = lhs.clone().abs().to_f64().max(1.0);
        Ok(Float::with_val(self.prec_bits, lhs - rhs).abs().to_f64() / scale)
    }

    /// Restrict the table to n ≤ n_max.
    pub fn truncated(&self, n_max: usize) -> Eigenform {
        let mut e = self.clone();
        e.a.truncate(n_max + 1);
        e.lambda.truncate(n_max + 1);
        if let Some(x) = e.exact.as_mut() {
            x.truncate(n_max + 1);
        }
        e
    }
}

fn normalize(x: &Float, n: usize, half: f64) -> f64 {
    let p = x.prec();
    let s = Float::with_val(p, Float::with_val(p, n).pow(half));
    Float::with_val(p, x / s).to_f64()
}

/// Integer matrix of T₂ on the cuspidal echelon basis: T₂ b_i = Σ_j M[i][j] b_j.
pub fn t2_matrix(basis: &SpaceBasis) -> Result<Vec<Vec<Integer>>> {
    let mut m = Vec::new();
    for b in &basis.basis {
        let t = hecke_tn(b, basis.weight, 2)?;
        let coords = basis.coordinates(&t)?;
        m.push(
            coords
                .into_iter()
                .map(|c| {
                    assert_eq!(*c.denom(), 1, "T2 has integral matrix on the echelon basis");
                    c.numer().clone()
                })
                .collect(),
        );
    }
    Ok(m)
}

/// All normalized eigenforms of S_k with coefficients a(1..=n_max).
pub fn eigenbasis(k: u32, n_max: usize, prec_bits: u32) -> Result<Vec<Eigenform>> {
    if k % 2 != 0 {
        return Err(Error::InvalidArgument(format!("weight {k} must be even")));
    }
    let s = arith::dim_sk(k as i64);
    if s == 0 {
        return Ok(vec![]);
    }
    let prec = (n_max + 1).max(2 * s + 2);
    let basis = space_basis(k, true, prec);
    // T₂ matrix needs only 2s+2 coefficients
    let small = SpaceBasis {
        basis: basis.basis.iter().map(|b| b.truncate(2 * s + 2)).collect(),
        ..basis.clone()
    };
    let m = t2_matrix(&small)?;
    let cp = poly::charpoly(&m);
    let wp = prec_bits + 64;
    let label = |i: usize| ((b'a' + i as u8) as char).to_string();

    if s == 1 {
        let b = &basis.basis[0];
        let exact: Vec<Integer> = (0..=n_max).map(|n| b.int_coeff(n).clone()).collect();
        let a = exact.iter().map(|x| Float::with_val(wp, x)).collect();
        return Ok(vec![Eigenform::from_coefficients(k, label(0), prec_bits, a, Some(exact), cp)]);
    }

    let roots = poly::real_roots(&cp, prec_bits)?;
    let mut forms = Vec::new();
    for (idx, theta) in roots.iter().enumerate() {
        let theta = Float::with_val(wp, theta);
        // c^T M = θ c^T with c_1 = 1: equations j = 2..s of (Mᵀ − θ)c = 0
        let mt = |j: usize, i: usize| -> Float {
            let mut v = Float::with_val(wp, &m[i][j]);
            if i == j {
                v -= &theta;
            }
            v
        };
        let a_sys: Vec<Vec<Float>> = (1..s).map(|j| (1..s).map(|i| mt(j, i)).collect()).collect();
        let b_sys: Vec<Float> = (1..s).map(|j| -mt(j, 0)).collect();
        let (rest, _) = hp::solve(&a_sys, &b_sys)?;
        let mut c = vec![Float::with_val(wp, 1)];
        c.extend(rest);
        // first equation must hold as well
        let mut r0 = mt(0, 0);
        for i in 1..s {
            r0 += Float::with_val(wp, mt(0, i) * &c[i]);
        }
        let scale = theta.clone().abs().to_f64().max(1.0);
        if r0.abs().to_f64() / scale > 2f64.powi(-(prec_bits as i32) / 2) {
            return Err(Error::Validation(format!("eigenvector residual too large at weight {k}")));
        }
        let a: Vec<Float> = (0..=n_max)
            .map(|n| {
                let mut v = Float::with_val(wp, 0);
                for (ci, bi) in c.iter().zip(&basis.basis) {
                    v += Float::with_val(wp, ci * bi.int_coeff(n));
                }
                v
            })
            .collect();
        forms.push(Eigenform::from_coefficients(k, label(idx), prec_bits, a, None, cp.clone()));
    }
    Ok(forms)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &QSeries) -> Vec<i64> {
        s.numerators().iter().map(|x| x.to_i64().unwrap()).collect()
    }

    #[test]
    fn eisenstein_coefficients() {
        assert_eq!(ints(&eisenstein(4, 3).unwrap()), vec![1, 240, 2160]);
        assert_eq!(ints(&eisenstein(6, 2).unwrap()), vec![1, -504]);
        assert!(eisenstein(5, 3).is_err());
        assert!(eisenstein(2, 3).is_err());
        let e12 = eisenstein(12, 3).unwrap();
        assert_eq!(e12.coeff(0), Rational::from(1));
        assert_eq!(e12.coeff(1), Rational::from((65520, 691)));
    }

    #[test]
    fn delta_identity() {
        let n = 60;
        let d = delta(n);
        assert_eq!(d.int_coeff(1), &Integer::from(1));
        assert_eq!(d.int_coeff(2), &Integer::from(-24));
        assert_eq!(d.int_coeff(3), &Integer::from(252));
        let e4 = eisenstein(4, n).unwrap();
        let e6 = eisenstein(6, n).unwrap();
        let other = e4.pow(3).sub(&e6.pow(2)).scale(&Rational::from((1, 1728)));
        assert_eq!(d, other);
    }

    #[test]
    fn basis_dimensions() {
        assert_eq!(space_basis(12, true, 10).dim(), 1);
        assert_eq!(space_basis(10, true, 10).dim(), 0);
        assert_eq!(space_basis(30, true, 10).dim(), 2);
        assert_eq!(space_basis(24, false, 10).dim(), 3);
        let b = space_basis(36, true, 12);
        for (i, s) in b.basis.iter().enumerate() {
            for j in 0..b.dim() {
                let want = if i == j { 1 } else { 0 };
                assert_eq!(s.coeff(b.pivot(j)), Rational::from(want));
            }
        }
    }

    #[test]
    fn hecke_on_delta() {
        let d = delta(40);
        let t2 = hecke_tn(&d, 12, 2).unwrap();
        assert_eq!(t2, d.truncate(t2.prec()).scale_int(&Integer::from(-24)));
        let t1 = hecke_tn(&d, 12, 1).unwrap();
        assert_eq!(t1, d);
    }

    #[test]
    fn eigenforms_small_weights() {
        let f = eigenbasis(12, 10, 192).unwrap();
        assert_eq!(f.len(), 1);
        assert!((f[0].lambda(2) + 24.0 / 2f64.powf(5.5)).abs() < 1e-14);
        let f22 = eigenbasis(22, 10, 192).unwrap();
        assert_eq!(f22[0].exact().unwrap()[2], -288);
        let f30 = eigenbasis(30, 12, 192).unwrap();
        assert_eq!(f30.len(), 2);
        assert!(f30[0].a(2) > f30[1].a(2));
        let cp: poly::Poly = f30[0].t2_charpoly.iter().map(|c| Rational::from(c.clone())).collect();
        for f in &f30 {
            let v = poly::eval_float(&cp, f.a(2));
            let rel = v.abs().to_f64() / f.a(2).to_f64().powi(2);
            assert!(rel < 1e-30, "charpoly residual {rel}");
            assert!(f.hecke_defect(2, 3).unwrap() < 1e-40);
            assert!(f.hecke_defect(2, 4).unwrap() < 1e-40);
        }
    }
}
