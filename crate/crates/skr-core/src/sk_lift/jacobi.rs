//! Index-1 Jacobi cusp forms stored by discriminant.
//!
//! A form is rebuilt from its two Taylor jets in z,
//! R0_n = Σ_r c(4n−r²) and R2_n = Σ_r r² c(4n−r²),
//! which fix c(4n−1) and c(4n) one n at a time. The generators have
//! jets (0, 2Δ) for φ₁₀,₁ and (12Δ, 2θΔ) for φ₁₂,₁, θ = q d/dq; a product
//! f·φ multiplies both jets by f.

use crate::error::{Error, Result};
use crate::modforms::{delta, euler_power3, space_basis, QSeries, SpaceBasis};
use rug::{Integer, Rational};

/// Which generator a basis element multiplies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    Phi10,
    Phi12,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiForm {
    pub weight: u32,
    pub label: String,
    /// c[D] for 0 ≤ D ≤ d_max.
    c: Vec<Rational>,
}

impl JacobiForm {
    pub fn from_coeffs(weight: u32, label: impl Into<String>, c: Vec<Rational>) -> Self {
        JacobiForm { weight, label: label.into(), c }
    }

    pub fn d_max(&self) -> usize {
        self.c.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.c
    }

    /// c(D), zero for D < 0.
    pub fn c(&self, d: i64) -> Result<Rational> {
        if d < 0 {
            return Ok(Rational::new());
        }
        self.c
            .get(d as usize)
            .cloned()
            .ok_or(Error::InsufficientPrecision { needed: d as usize, available: self.d_max() })
    }

    /// Coefficient of qⁿζʳ.
    pub fn coeff(&self, n: i64, r: i64) -> Result<Rational> {
        self.c(4 * n - r * r)
    }

    /// Largest n with every (n, r) covered.
    pub fn n_max(&self) -> usize {
        self.d_max() / 4
    }

    /// (φ(τ,0), ∂²_z-jet) up to q^{n_max}, recomputed from c(D).
    pub fn jets(&self) -> (Vec<Rational>, Vec<Rational>) {
        let nm = self.n_max() as i64;
        let mut r0 = Vec::new();
        let mut r2 = Vec::new();
        for n in 0..=nm {
            let mut a = Rational::new();
            let mut b = Rational::new();
            let rm = crate::arith::isqrt(4 * n as u64) as i64;
            for r in -rm..=rm {
                let d = (4 * n - r * r) as usize;
                a += &self.c[d];
                b += Rational::from(&self.c[d] * Integer::from(r * r));
            }
            r0.push(a);
            r2.push(b);
        }
        (r0, r2)
    }

    /// Discriminants D ≡ 1, 2 (mod 4) with c(D) ≠ 0.
    pub fn plus_space_violations(&self) -> Vec<usize> {
        (0..self.c.len()).filter(|d| matches!(d % 4, 1 | 2) && self.c[*d] != 0).collect()
    }

    pub fn scale(&self, s: &Rational) -> JacobiForm {
        let c = self.c.iter().map(|x| Rational::from(x * s)).collect();
        JacobiForm { weight: self.weight, label: self.label.clone(), c }
    }

    /// CSV `D,c(D)` with a commented header.
    pub fn to_csv(&self, basis_labels: &[String]) -> String {
        let mut out = format!(
            "# ell={} form={} basis={} normalization=phi10_1(1,1)=1\nD,c(D)\n",
            self.weight,
            self.label,
            basis_labels.join(";")
        );
        for (d, v) in self.c.iter().enumerate() {
            if d % 4 == 0 || d % 4 == 3 {
                out.push_str(&format!("{d},{v}\n"));
            }
        }
        out
    }
}

/// c(D) for D ≤ 4·(prec−1) from the two jets.
pub fn from_jets(weight: u32, label: &str, r0: &QSeries, r2: &QSeries) -> Result<JacobiForm> {
    let prec = r0.prec().min(r2.prec());
    if prec == 0 {
        return Err(Error::InvalidArgument("empty jets".into()));
    }
    let d_max = 4 * (prec - 1);
    let mut c = vec![Rational::new(); d_max + 1];
    c[0] = r0.coeff(0);
    if r2.coeff(0) != 0 {
        return Err(Error::Validation("∂²_z jet has a constant term".into()));
    }
    for n in 1..prec {
        let n4 = 4 * n as i64;
        // |r| ≥ 2 terms are already known
        let mut s0 = Rational::new();
        let mut s2 = Rational::new();
        let mut r = 2i64;
        while r * r <= n4 {
            let v = &c[(n4 - r * r) as usize];
            s0 += Rational::from(v * 2u32);
            s2 += Rational::from(v * Integer::from(2 * r * r));
            r += 1;
        }
        let c3 = (r2.coeff(n) - s2) / 2u32;
        let c0 = r0.coeff(n) - s0 - Rational::from(&c3 * 2u32);
        c[n4 as usize - 1] = c3;
        c[n4 as usize] = c0;
    }
    Ok(JacobiForm { weight, label: label.into(), c })
}

/// θΔ = Σ nτ(n)qⁿ.
fn theta_delta(prec: usize) -> QSeries {
    let d = delta(prec);
    QSeries::from_integers((0..prec).map(|n| Integer::from(d.int_coeff(n) * n as u64)).collect())
}

pub fn phi_10_1(prec: usize) -> Result<JacobiForm> {
    let d = delta(prec);
    from_jets(10, "phi10_1", &QSeries::zero(prec), &d.scale_int(&Integer::from(2)))
}

pub fn phi_12_1(prec: usize) -> Result<JacobiForm> {
    let d = delta(prec);
    from_jets(12, "phi12_1", &d.scale_int(&Integer::from(12)), &theta_delta(prec).scale_int(&Integer::from(2)))
}

/// Basis of J^cusp_{ℓ,1} = M_{ℓ−10}φ₁₀,₁ ⊕ M_{ℓ−12}φ₁₂,₁.
#[derive(Clone, Debug)]
pub struct JacobiSpace {
    pub weight: u32,
    pub forms: Vec<JacobiForm>,
    pub generators: Vec<Generator>,
    /// Discriminants at which the basis is read off.
    pub pivots: Vec<usize>,
    /// Inverse of [c_i(pivot_j)].
    pivot_inverse: Vec<Vec<Rational>>,
}

fn weight_basis(k: i64, prec: usize) -> Vec<QSeries> {
    if k < 0 {
        Vec::new()
    } else {
        space_basis(k as u32, false, prec).basis
    }
}

/// Echelon basis of M_k (empty for k < 0), exposed for coordinates.
pub fn modular_basis(k: i64, prec: usize) -> Option<SpaceBasis> {
    (k >= 0).then(|| space_basis(k as u32, false, prec))
}

pub fn jacobi_cusp_basis(weight: u32, d_max: usize) -> Result<JacobiSpace> {
    if weight < 10 || weight % 2 != 0 {
        return Err(Error::InvalidArgument(format!("ℓ = {weight} must be even and ≥ 10")));
    }
    let prec = d_max / 4 + 1;
    let d = delta(prec);
    let td = theta_delta(prec);
    let two = Integer::from(2);
    let mut forms = Vec::new();
    let mut generators = Vec::new();
    for (i, f) in weight_basis(weight as i64 - 10, prec).iter().enumerate() {
        let r2 = f.mul(&d).scale_int(&two);
        forms.push(from_jets(weight, &format!("f{i}*phi10"), &QSeries::zero(prec), &r2)?);
        generators.push(Generator::Phi10);
    }
    for (i, g) in weight_basis(weight as i64 - 12, prec).iter().enumerate() {
        let r0 = g.mul(&d).scale_int(&Integer::from(12));
        let r2 = g.mul(&td).scale_int(&two);
        forms.push(from_jets(weight, &format!("g{i}*phi12"), &r0, &r2)?);
        generators.push(Generator::Phi12);
    }
    let (pivots, pivot_inverse) = choose_pivots(&forms)?;
    Ok(JacobiSpace { weight, forms, generators, pivots, pivot_inverse })
}

/// Greedy column selection over allowed D, then the inverse of the square block.
fn choose_pivots(forms: &[JacobiForm]) -> Result<(Vec<usize>, Vec<Vec<Rational>>)> {
    let dim = forms.len();
    if dim == 0 {
        return Ok((vec![], vec![]));
    }
    let d_max = forms[0].d_max();
    let mut pivots = Vec::new();
    let mut cols: Vec<Vec<Rational>> = Vec::new();
    for d in (3..=d_max).filter(|d| d % 4 == 0 || d % 4 == 3) {
        let col: Vec<Rational> = forms.iter().map(|f| f.c[d].clone()).collect();
        let mut trial = cols.clone();
        trial.push(col.clone());
        if rank(&trial) == trial.len() {
            cols = trial;
            pivots.push(d);
            if pivots.len() == dim {
                break;
            }
        }
    }
    if pivots.len() < dim {
        return Err(Error::Validation(format!("basis is degenerate up to D = {d_max}")));
    }
    // P[i][j] = c_i(pivot_j)
    let p: Vec<Vec<Rational>> = (0..dim).map(|i| (0..dim).map(|j| cols[j][i].clone()).collect()).collect();
    Ok((pivots, invert(&p)?))
}

impl JacobiSpace {
    pub fn dim(&self) -> usize {
        self.forms.len()
    }

    pub fn d_max(&self) -> usize {
        self.forms.first().map_or(0, |f| f.d_max())
    }

    pub fn labels(&self) -> Vec<String> {
        self.forms.iter().map(|f| f.label.clone()).collect()
    }

    /// Coordinates x with Σ x_i φ_i = t on every D of `t`, checked beyond the pivots.
    pub fn coordinates(&self, t: &[Rational]) -> Result<Vec<Rational>> {
        let dim = self.dim();
        let mut x = vec![Rational::new(); dim];
        for j in 0..dim {
            let tj = t.get(self.pivots[j]).ok_or(Error::InsufficientPrecision {
                needed: self.pivots[j],
                available: t.len().saturating_sub(1),
            })?;
            for (i, xi) in x.iter_mut().enumerate() {
                *xi += Rational::from(tj * &self.pivot_inverse[j][i]);
            }
        }
        for (d, td) in t.iter().enumerate() {
            let mut v = Rational::new();
            for (xi, f) in x.iter().zip(&self.forms) {
                v += Rational::from(xi * &f.c[d]);
            }
            if v != *td {
                return Err(Error::Validation(format!("table leaves J^cusp_{{{},1}} at D = {d}", self.weight)));
            }
        }
        Ok(x)
    }

    pub fn combine(&self, x: &[Rational]) -> JacobiForm {
        let mut c = vec![Rational::new(); self.d_max() + 1];
        for (xi, f) in x.iter().zip(&self.forms) {
            for (cd, fd) in c.iter_mut().zip(&f.c) {
                *cd += Rational::from(xi * fd);
            }
        }
        JacobiForm { weight: self.weight, label: "combination".into(), c }
    }
}

/// Rank over Q of a list of rows.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| m[i][col] != 0) else { continue };
        m.swap(r, p);
        for i in r + 1..m.len() {
            if m[i][col] != 0 {
                let f = Rational::from(&m[i][col] / &m[r][col]);
                for j in col..ncols {
                    let t = Rational::from(&f * &m[r][j]);
                    m[i][j] -= t;
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Gauss–Jordan inverse over Q.
pub fn invert(a: &[Vec<Rational>]) -> Result<Vec<Vec<Rational>>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| Rational::from(u32::from(i == j))));
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&i| m[i][col] != 0).ok_or_else(|| Error::Validation("singular matrix".into()))?;
        m.swap(col, p);
        let inv = Rational::from(m[col][col].recip_ref());
        for x in m[col].iter_mut() {
            *x *= &inv;
        }
        for i in 0..n {
            if i != col && m[i][col] != 0 {
                let f = m[i][col].clone();
                for j in 0..2 * n {
                    let t = Rational::from(&f * &m[col][j]);
                    m[i][j] -= t;
                }
            }
        }
    }
    Ok(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Two-variable series Σ c(n,r) qⁿζʳ, n < prec, r in [rmin, rmax].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoVar {
    prec: usize,
    rmin: i64,
    c: Vec<Vec<Integer>>,
}

impl TwoVar {
    fn zero(prec: usize, rmin: i64, rmax: i64) -> Self {
        TwoVar { prec, rmin, c: vec![vec![Integer::new(); (rmax - rmin + 1) as usize]; prec] }
    }

    fn rmax(&self) -> i64 {
        self.rmin + self.c[0].len() as i64 - 1
    }

    pub fn get(&self, n: usize, r: i64) -> Integer {
        if n >= self.prec || r < self.rmin || r > self.rmax() {
            Integer::new()
        } else {
            self.c[n][(r - self.rmin) as usize].clone()
        }
    }

    fn from_q(s: &QSeries) -> Self {
        let mut t = TwoVar::zero(s.prec(), 0, 0);
        for n in 0..s.prec() {
            t.c[n][0] = s.int_coeff(n).clone();
        }
        t
    }

    fn mul(&self, o: &TwoVar) -> TwoVar {
        let prec = self.prec.min(o.prec);
        let mut out = TwoVar::zero(prec, self.rmin + o.rmin, self.rmax() + o.rmax());
        for n1 in 0..prec {
            for (i1, a) in self.c[n1].iter().enumerate() {
                if *a == 0 {
                    continue;
                }
                for n2 in 0..prec - n1 {
                    for (i2, b) in o.c[n2].iter().enumerate() {
                        if *b != 0 {
                            out.c[n1 + n2][i1 + i2] += Integer::from(a * b);
                        }
                    }
                }
            }
        }
        out
    }

    fn add_scaled(&self, o: &TwoVar, s: i64) -> TwoVar {
        let prec = self.prec.min(o.prec);
        let mut out = TwoVar::zero(prec, self.rmin.min(o.rmin), self.rmax().max(o.rmax()));
        for n in 0..prec {
            for r in out.rmin..=out.rmax() {
                out.c[n][(r - out.rmin) as usize] = self.get(n, r) + o.get(n, r) * s;
            }
        }
        out
    }

    /// Multiply by q^{dn}ζ^{dr}, keeping the precision.
    fn shift(&self, dn: usize, dr: i64) -> TwoVar {
        let mut out = TwoVar::zero(self.prec, self.rmin + dr, self.rmax() + dr);
        for n in dn..self.prec {
            out.c[n] = self.c[n - dn].clone();
        }
        out
    }

    /// G with (1−ζ)G = self in each q-degree; fails if not divisible.
    fn div_one_minus_zeta(&self) -> Result<TwoVar> {
        let mut out = TwoVar::zero(self.prec, self.rmin, self.rmax() - 1);
        for n in 0..self.prec {
            let mut acc = Integer::new();
            for (i, v) in self.c[n].iter().enumerate() {
                acc += v;
                if i + 1 < self.c[n].len() {
                    out.c[n][i] = acc.clone();
                } else if acc != 0 {
                    return Err(Error::Validation(format!("q^{n} slice not divisible by 1−ζ")));
                }
            }
        }
        Ok(out)
    }

    /// Σ_r c(n, r).
    pub fn at_zero(&self) -> Vec<Integer> {
        self.c.iter().map(|row| row.iter().sum()).collect()
    }

    /// Reads off c(D), checking that c(n,r) depends only on 4n − r² and vanishes for r² > 4n.
    pub fn to_jacobi(&self, weight: u32, label: &str) -> Result<JacobiForm> {
        let d_max = 4 * (self.prec - 1);
        let mut c: Vec<Option<Integer>> = vec![None; d_max + 1];
        for n in 0..self.prec {
            for r in self.rmin..=self.rmax() {
                let v = self.get(n, r);
                let d = 4 * n as i64 - r * r;
                if d < 0 {
                    if v != 0 {
                        return Err(Error::Validation(format!("nonzero coefficient at (n, r) = ({n}, {r}) with r² > 4n")));
                    }
                    continue;
                }
                match &c[d as usize] {
                    Some(old) if *old != v => {
                        return Err(Error::Validation(format!("c(n, r) at ({n}, {r}) is not a function of 4n − r²")))
                    }
                    _ => c[d as usize] = Some(v),
                }
            }
        }
        // every D ≤ d_max with D ≡ 0, 3 is hit by r ∈ {0, 1}
        let c = c.into_iter().map(|v| Rational::from(v.unwrap_or_default())).collect();
        Ok(JacobiForm { weight, label: label.into(), c })
    }
}

/// θ̃ = Σ_m (−1)^m q^{m(m−1)/2} ζ^m.
fn theta_tilde(prec: usize) -> TwoVar {
    let mut ms = Vec::new();
    let mut m = 0i64;
    while (m * (m - 1) / 2) < prec as i64 {
        ms.push(m);
        ms.push(1 - m);
        m += 1;
    }
    let (lo, hi) = (*ms.iter().min().unwrap(), *ms.iter().max().unwrap());
    let mut t = TwoVar::zero(prec, lo, hi);
    for m in ms {
        let n = (m * (m - 1) / 2) as usize;
        t.c[n][(m - lo) as usize] = Integer::from(if m % 2 == 0 { 1 } else { -1 });
    }
    t
}

/// Σ_{n≥1} Σ_{d|n} d(ζ^d − 2 + ζ^{−d}) qⁿ.
fn s_series(prec: usize) -> TwoVar {
    let rm = prec as i64;
    let mut t = TwoVar::zero(prec, -rm, rm);
    for n in 1..prec {
        for d in crate::arith::divisors(n as u64) {
            let d = d as i64;
            t.c[n][(d + rm) as usize] += d;
            t.c[n][(-d + rm) as usize] += d;
            t.c[n][rm as usize] -= 2 * d;
        }
    }
    t
}

/// The generators from theta products: φ₁₀,₁ = q P¹⁸ ζ⁻¹ θ̃² and
/// φ₁₂,₁ = φ₁₀,₁(1 + 12S) + 12 q U² P¹⁸ with U = θ̃/(1−ζ), P = ∏(1−qⁿ).
pub fn generators_from_products(prec: usize) -> Result<(TwoVar, TwoVar)> {
    let th = theta_tilde(prec + 1);
    let p18 = TwoVar::from_q(&euler_power3(6, prec + 1));
    let phi10 = th.mul(&th).mul(&p18).shift(1, -1);
    let u = th.div_one_minus_zeta()?;
    let u2 = u.mul(&u).mul(&p18).shift(1, 0);
    let s = s_series(prec + 1);
    let phi12 = phi10.add_scaled(&s.mul(&phi10), 12).add_scaled(&u2, 12);
    let trim = |t: TwoVar| {
        let mut t = t;
        t.c.truncate(prec);
        t.prec = prec;
        t
    };
    let (phi10, phi12) = (trim(phi10), trim(phi12));
    let d = delta(prec);
    if phi10.at_zero().iter().any(|v| *v != 0) {
        return Err(Error::Validation("φ₁₀,₁(τ,0) ≠ 0".into()));
    }
    let want: Vec<Integer> = (0..prec).map(|n| Integer::from(d.int_coeff(n) * 12u32)).collect();
    if phi12.at_zero() != want {
        return Err(Error::Validation("φ₁₂,₁(τ,0) ≠ 12Δ".into()));
    }
    Ok((phi10, phi12))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(x: i64) -> Rational {
        Rational::from(x)
    }

    #[test]
    fn generator_first_coefficients() {
        let a = phi_10_1(4).unwrap();
        assert_eq!((a.c(3).unwrap(), a.c(4).unwrap()), (q(1), q(-2)));
        let b = phi_12_1(4).unwrap();
        assert_eq!((b.c(3).unwrap(), b.c(4).unwrap()), (q(1), q(10)));
        assert_eq!(b.c(0).unwrap(), q(0));
        assert!(a.plus_space_violations().is_empty());
    }

    #[test]
    fn products_match_jets() {
        let (p10, p12) = generators_from_products(12).unwrap();
        assert_eq!(p10.to_jacobi(10, "phi10_1").unwrap(), phi_10_1(12).unwrap());
        assert_eq!(p12.to_jacobi(12, "phi12_1").unwrap(), phi_12_1(12).unwrap());
    }

    #[test]
    fn dimensions() {
        for (l, d) in [(10, 1), (12, 1), (16, 2), (22, 3), (30, 4)] {
            let s = jacobi_cusp_basis(l, 200).unwrap();
            assert_eq!(s.dim(), d, "ℓ = {l}");
            let x = vec![q(3); d];
            let phi = s.combine(&x);
            assert_eq!(s.coordinates(phi.coeffs()).unwrap(), x);
        }
    }

    #[test]
    fn rank_and_inverse() {
        let m = vec![vec![q(1), q(2)], vec![q(3), q(4)]];
        assert_eq!(rank(&m), 2);
        let inv = invert(&m).unwrap();
        assert_eq!(inv[0][0], q(-2));
        assert_eq!(rank(&[vec![q(1), q(2)], vec![q(2), q(4)]]), 1);
    }
}
