//! Saito–Kurokawa lifts of index-1 Jacobi eigenforms: Kohnen T(p²), Maass
//! coefficients, V_q, restriction to z = 0 and the eigen-expansion of the
//! restriction.

use super::jacobi::{jacobi_cusp_basis, rank, Generator, JacobiForm, JacobiSpace};
use crate::arith::{self, gcd};
use crate::error::{Error, Result};
use crate::hp;
use crate::lfunctions::coeffs::Hecke;
use crate::lfunctions::lvalues::sym2_at_1_afe;
use crate::lfunctions::vfunc::{rankin_central_value, CentralValue, RsConfig, RsEvaluator};
use crate::lfunctions::{twisted_central_value, Estimate};
use crate::modforms::{eigenbasis, Eigenform, DEFAULT_PREC_BITS};
use rug::ops::Pow;
use rug::{Float, Integer, Rational};
use std::collections::BTreeMap;

/// Working precision for eigenvectors.
const WP: u32 = DEFAULT_PREC_BITS + 64;
/// Relative tolerance for T(p²) eigenvalue matches.
pub const MATCH_TOL: f64 = 1e-20;
/// Primes used to match lifts.
pub const MATCH_PRIMES: [u64; 3] = [2, 3, 5];

fn pow_int(p: u64, e: u32) -> Integer {
    Integer::from(p).pow(e)
}

/// (T(p²)c)(D) = c(p²D) + (−D/p) p^{ℓ−2} c(D) + p^{2ℓ−3} c(D/p²), for D ≤ d_max/p².
/// Only D ≡ 0, 3 (mod 4) are evaluated; the rest of the plus space is zero.
pub fn kohnen_tp2(c: &[Rational], weight: u32, p: u64) -> Result<Vec<Rational>> {
    if !arith::is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    if weight < 2 {
        return Err(Error::InvalidArgument(format!("weight {weight} too small")));
    }
    let p2 = (p * p) as usize;
    let out_max = (c.len() - 1) / p2;
    let mid = pow_int(p, weight - 2);
    let top = pow_int(p, 2 * weight - 3);
    let mut out = Vec::with_capacity(out_max + 1);
    for d in 0..=out_max {
        if d % 4 == 1 || d % 4 == 2 {
            out.push(Rational::new());
            continue;
        }
        let mut v = c[p2 * d].clone();
        let chi = arith::kronecker(-(d as i64), p);
        if chi != 0 {
            v += Rational::from(&c[d] * Integer::from(&mid * chi));
        }
        if d % p2 == 0 {
            v += Rational::from(&c[d / p2] * &top);
        }
        out.push(v);
    }
    Ok(out)
}

/// Matrix of T(p²) on the basis: T φ_i = Σ_j M[i][j] φ_j, validated on every
/// discriminant the table covers.
pub fn kohnen_matrix(space: &JacobiSpace, p: u64) -> Result<Vec<Vec<Rational>>> {
    let need = space.pivots.iter().max().copied().unwrap_or(0) * (p * p) as usize;
    if need > space.d_max() {
        return Err(Error::InsufficientPrecision { needed: need, available: space.d_max() });
    }
    space
        .forms
        .iter()
        .map(|f| space.coordinates(&kohnen_tp2(f.coeffs(), space.weight, p)?))
        .collect()
}

/// Characteristic polynomial det(xI − M), increasing degree, by Faddeev–LeVerrier.
pub fn charpoly_q(m: &[Vec<Rational>]) -> Vec<Rational> {
    let n = m.len();
    let mut coeffs = vec![Rational::new(); n + 1];
    coeffs[n] = Rational::from(1);
    let mut mk: Vec<Vec<Rational>> = vec![vec![Rational::new(); n]; n];
    for k in 1..=n {
        // M_k = M·(M_{k−1} + c_{n−k+1} I)
        let mut prev = mk.clone();
        for (i, row) in prev.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        mk = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut s = Rational::new();
                        for l in 0..n {
                            s += Rational::from(&m[i][l] * &prev[l][j]);
                        }
                        s
                    })
                    .collect()
            })
            .collect();
        let mut tr = Rational::new();
        for (i, row) in mk.iter().enumerate() {
            tr += &row[i];
        }
        coeffs[n - k] = -tr / Integer::from(k);
    }
    coeffs
}

fn to_float(x: &Rational) -> Float {
    Float::with_val(WP, x)
}

/// Saito–Kurokawa lift of f ∈ B_{2ℓ−2}, carried by its Jacobi eigenform.
#[derive(Clone, Debug)]
pub struct SkLift {
    pub weight: u32,
    pub f: Eigenform,
    pub space: JacobiSpace,
    /// Coordinates of the Jacobi eigenform in `space`.
    pub coords: Vec<Float>,
    /// Largest relative |Tv − a_f(p)v| over the matching primes.
    pub eigen_residual: f64,
}

impl SkLift {
    pub fn c(&self, d: i64) -> Result<Float> {
        let mut v = Float::with_val(WP, 0);
        for (x, f) in self.coords.iter().zip(&self.space.forms) {
            v += Float::with_val(WP, x * &to_float(&f.c(d)?));
        }
        Ok(v)
    }

    /// Relative size of the M_{ℓ−12} part of the coordinates.
    pub fn phi12_component(&self) -> f64 {
        let norm = |g: Option<Generator>| {
            self.coords
                .iter()
                .zip(&self.space.generators)
                .filter(|(_, gen)| g.map_or(true, |g| **gen == g))
                .map(|(x, _)| x.to_f64().abs())
                .fold(0.0, f64::max)
        };
        norm(Some(Generator::Phi12)) / norm(None)
    }
}

/// Null vector of Mᵀ − λ with one coordinate pinned to 1.
fn eigenvector(m: &[Vec<Rational>], lambda: &Float) -> Result<Vec<Float>> {
    let n = m.len();
    let a = |i: usize, j: usize| {
        let mut v = to_float(&m[j][i]);
        if i == j {
            v -= lambda;
        }
        v
    };
    if n == 1 {
        return Ok(vec![Float::with_val(WP, 1)]);
    }
    let mut best: Option<(f64, Vec<Float>)> = None;
    for pin in 0..n {
        let cols: Vec<usize> = (0..n).filter(|&j| j != pin).collect();
        let rows: Vec<Vec<Float>> = (0..n).map(|i| cols.iter().map(|&j| a(i, j)).collect()).collect();
        let rhs: Vec<Float> = (0..n).map(|i| -a(i, pin)).collect();
        let Ok((x, cond)) = hp::least_squares(&rows, &rhs) else { continue };
        let mut v = vec![Float::with_val(WP, 1); n];
        for (k, &j) in cols.iter().enumerate() {
            v[j] = x[k].clone();
        }
        if best.as_ref().map_or(true, |(c, _)| cond < *c) {
            best = Some((cond, v));
        }
    }
    best.map(|(_, v)| v).ok_or_else(|| Error::Validation("no eigenvector found".into()))
}

/// Relative residual |Mᵀv − λv| / (|λ|·|v|).
fn eigen_residual(m: &[Vec<Rational>], v: &[Float], lambda: &Float) -> f64 {
    let n = v.len();
    let mut worst = 0f64;
    let scale = lambda.to_f64().abs().max(1.0) * v.iter().map(|x| x.to_f64().abs()).fold(0.0, f64::max);
    for i in 0..n {
        let mut s = -Float::with_val(WP, lambda * &v[i]);
        for j in 0..n {
            s += Float::with_val(WP, &to_float(&m[j][i]) * &v[j]);
        }
        worst = worst.max(s.to_f64().abs() / scale);
    }
    worst
}

/// Default discriminant coverage for the basis used by `match_lifts`.
pub const LIFT_D_MAX: usize = 1200;

/// One lift per f ∈ B_{2ℓ−2}, matched through T(p²) for p = 2, 3, 5.
pub fn match_lifts(weight: u32) -> Result<Vec<SkLift>> {
    match_lifts_with(weight, LIFT_D_MAX, 8)
}

/// As `match_lifts` with explicit D coverage and f coefficient count.
pub fn match_lifts_with(weight: u32, d_max: usize, f_terms: usize) -> Result<Vec<SkLift>> {
    let space = jacobi_cusp_basis(weight, d_max)?;
    let fs = eigenbasis(2 * weight - 2, f_terms.max(5), DEFAULT_PREC_BITS)?;
    if fs.len() != space.dim() {
        return Err(Error::Validation(format!(
            "dim J^cusp_{{{weight},1}} = {} but dim S_{} = {}",
            space.dim(),
            2 * weight - 2,
            fs.len()
        )));
    }
    let mats: Vec<Vec<Vec<Rational>>> = MATCH_PRIMES.iter().map(|&p| kohnen_matrix(&space, p)).collect::<Result<_>>()?;
    for (i, f) in fs.iter().enumerate() {
        for g in &fs[i + 1..] {
            let gap = Float::with_val(WP, f.a(2) - g.a(2)).abs().to_f64();
            if gap <= MATCH_TOL * f.a(2).to_f64().abs().max(1.0) {
                return Err(Error::Ambiguous(format!("a(2) of {} and {} coincide", f.name(), g.name())));
            }
        }
    }
    let mut lifts = Vec::new();
    for f in fs {
        let mut v = eigenvector(&mats[0], f.a(2))?;
        let mut worst = 0f64;
        for (m, &p) in mats.iter().zip(&MATCH_PRIMES) {
            let r = eigen_residual(m, &v, f.a(p as usize));
            if r > MATCH_TOL {
                return Err(Error::Validation(format!("T({p}²) eigenvalue of the lift of {} misses a_f({p}) by {r:e}", f.name())));
            }
            worst = worst.max(r);
        }
        normalize(&space, &mut v)?;
        lifts.push(SkLift { weight, f, space: space.clone(), coords: v, eigen_residual: worst });
    }
    Ok(lifts)
}

/// Scale so the first nonzero c(D) with D ≥ 3 equals 1.
fn normalize(space: &JacobiSpace, v: &mut [Float]) -> Result<()> {
    for d in 3..=space.d_max() as i64 {
        let mut c = Float::with_val(WP, 0);
        for (x, f) in v.iter().zip(&space.forms) {
            c += Float::with_val(WP, x * &to_float(&f.c(d)?));
        }
        if c.clone().abs().to_f64() > 1e-30 {
            for x in v.iter_mut() {
                *x /= &c;
            }
            return Ok(());
        }
    }
    Err(Error::Validation("lift has no nonzero coefficient".into()))
}

/// Discriminants (D, d^{ℓ−1}) over d | (n, r, m), D = (4nm − r²)/d².
fn maass_terms(weight: u32, n: i64, r: i64, m: i64) -> Result<Vec<(i64, Integer)>> {
    if n < 0 || m < 0 || 4 * n * m - r * r < 0 {
        return Err(Error::InvalidArgument(format!("4nm − r² < 0 at ({n}, {r}, {m})")));
    }
    let g = gcd(gcd(n as u64, r.unsigned_abs()), m as u64);
    if g == 0 {
        return Ok(vec![(0, Integer::from(1))]);
    }
    Ok(arith::divisors(g)
        .into_iter()
        .map(|d| {
            let di = d as i64;
            ((4 * n * m - r * r) / (di * di), pow_int(d, weight - 1))
        })
        .collect())
}

/// A(n, r, m) of the lift of an index-1 form.
pub fn maass_exact(phi: &JacobiForm, n: i64, r: i64, m: i64) -> Result<Rational> {
    let mut s = Rational::new();
    for (d, w) in maass_terms(phi.weight, n, r, m)? {
        s += phi.c(d)? * w;
    }
    Ok(s)
}

pub fn maass_coefficient(lift: &SkLift, n: i64, r: i64, m: i64) -> Result<Float> {
    let mut s = Float::with_val(WP, 0);
    for (d, w) in maass_terms(lift.weight, n, r, m)? {
        s += lift.c(d)? * Float::with_val(WP, &w);
    }
    Ok(s)
}

/// Coefficients of φ|V_q for n ≤ n_max, indexed by (n, r).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VqTable {
    pub q: u64,
    pub weight: u32,
    pub coeffs: BTreeMap<(i64, i64), Rational>,
}

impl VqTable {
    pub fn get(&self, n: i64, r: i64) -> Option<&Rational> {
        self.coeffs.get(&(n, r))
    }

    /// Σ_r coefficient, i.e. (φ|V_q)(τ, 0) at qⁿ.
    pub fn at_zero(&self, n: i64) -> Rational {
        self.coeffs.range((n, i64::MIN)..=(n, i64::MAX)).map(|(_, v)| v).sum()
    }
}

/// φ|V_q = q^{ℓ−1} Σ_{ad=q} Σ_{b mod d} d^{−ℓ} φ((aτ+b)/d, az), expanded term by
/// term: the b-sum keeps n ≡ 0 (mod d) with weight d, and qⁿζʳ maps to
/// q^{an/d}ζ^{ar}.
pub fn vq_apply(phi: &JacobiForm, q: u64, n_max: i64) -> Result<VqTable> {
    if q == 0 {
        return Err(Error::InvalidArgument("q must be ≥ 1".into()));
    }
    let l = phi.weight;
    let qi = q as i64;
    let mut coeffs = BTreeMap::new();
    for big_n in 0..=n_max {
        let rm = arith::isqrt((4 * big_n * qi) as u64) as i64;
        for big_r in -rm..=rm {
            let mut v = Rational::new();
            for a in arith::divisors(q) {
                let (a, d) = (a as i64, qi / a as i64);
                // source (n, r) with an/d = N and ar = R
                if big_r % a != 0 || (big_n * d) % a != 0 {
                    continue;
                }
                let (n, r) = (big_n * d / a, big_r / a);
                let b_sum = if n % d == 0 { d } else { 0 };
                if b_sum == 0 {
                    continue;
                }
                let w = Rational::from((pow_int(q, l - 1) * b_sum, pow_int(d as u64, l)));
                v += phi.coeff(n, r)? * w;
            }
            coeffs.insert((big_n, big_r), v);
        }
    }
    Ok(VqTable { q, weight: l, coeffs })
}

/// b(n, m) = Σ_{r² ≤ 4nm} A(n, r, m) for 1 ≤ n, m ≤ N, with the vanishing
/// certificate from the M_{ℓ−12} component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictionData {
    pub n_max: usize,
    /// b[n−1][m−1].
    pub b: Vec<Vec<Rational>>,
    pub certified_vanishing: bool,
}

pub fn restriction_table(phi: &JacobiForm, n_max: usize) -> Result<Vec<Vec<Rational>>> {
    let mut b = vec![vec![Rational::new(); n_max]; n_max];
    for n in 1..=n_max as i64 {
        for m in n..=n_max as i64 {
            let rm = arith::isqrt((4 * n * m) as u64) as i64;
            let mut s = Rational::new();
            for r in -rm..=rm {
                s += maass_exact(phi, n, r, m)?;
            }
            b[(m - 1) as usize][(n - 1) as usize] = s.clone();
            b[(n - 1) as usize][(m - 1) as usize] = s;
        }
    }
    Ok(b)
}

/// Restriction of a form in `space`; the table and the certificate must agree.
pub fn restrict_z0(space: &JacobiSpace, phi: &JacobiForm, n_max: usize) -> Result<RestrictionData> {
    let x = space.coordinates(phi.coeffs())?;
    let certified_vanishing = x.iter().zip(&space.generators).all(|(xi, g)| *g == Generator::Phi10 || *xi == 0);
    let b = restriction_table(phi, n_max)?;
    let zero = b.iter().flatten().all(|v| *v == 0);
    if zero != certified_vanishing {
        return Err(Error::Validation(format!(
            "restriction table {} but certificate says {}",
            if zero { "vanishes" } else { "is nonzero" },
            if certified_vanishing { "vanishing" } else { "nonvanishing" }
        )));
    }
    Ok(RestrictionData { n_max, b, certified_vanishing })
}

/// b(n, m) of a lift, combined from the exact tables of the basis.
pub fn restriction_float(lift: &SkLift, n_max: usize) -> Result<Vec<Vec<Float>>> {
    let mut out = vec![vec![Float::with_val(WP, 0); n_max]; n_max];
    for (x, f) in lift.coords.iter().zip(&lift.space.forms) {
        let b = restriction_table(f, n_max)?;
        for (orow, brow) in out.iter_mut().zip(&b) {
            for (o, v) in orow.iter_mut().zip(brow) {
                *o += Float::with_val(WP, x * &to_float(v));
            }
        }
    }
    Ok(out)
}

/// (dimension of the vanishing subspace, dim M_{ℓ−10}).
pub fn nv1_census(weight: u32) -> Result<(usize, usize)> {
    let n_max = arith::dim_sk(weight as i64) + 1;
    let space = jacobi_cusp_basis(weight, (4 * n_max * n_max).max(64))?;
    let rows: Vec<Vec<Rational>> =
        space.forms.iter().map(|f| Ok(restriction_table(f, n_max)?.concat())).collect::<Result<_>>()?;
    let r = if rows.is_empty() { 0 } else { rank(&rows) };
    Ok((space.dim() - r, arith::dim_mk(weight as i64 - 10)))
}

/// Least-squares fit of b(n, m) by a_{g₁}(n)a_{g₂}(m) + a_{g₂}(n)a_{g₁}(m).
#[derive(Clone, Debug)]
pub struct IchinoExpansion {
    /// Names of the g ∈ B_ℓ, in fit order.
    pub g_names: Vec<String>,
    /// e_g for each g.
    pub diagonal: Vec<Float>,
    /// ((i, j), e_{g_i g_j}) for i < j.
    pub cross: Vec<((usize, usize), Float)>,
    /// max|cross| / max|diagonal|, 0 when everything vanishes.
    pub cross_relative: f64,
    /// Largest |fit − b| relative to max|b|.
    pub fit_residual: f64,
    pub condition: f64,
}

/// Condition estimates beyond this are reported as errors.
pub const MAX_CONDITION: f64 = 1e40;

pub fn ichino_diagonal_expansion(lift: &SkLift, n_max: usize) -> Result<IchinoExpansion> {
    let gs = eigenbasis(lift.weight, n_max, DEFAULT_PREC_BITS)?;
    if gs.is_empty() {
        return Err(Error::InvalidArgument(format!("S_{} is zero", lift.weight)));
    }
    if n_max < 2 * gs.len() {
        return Err(Error::InvalidArgument(format!("N = {n_max} below 2·dim S_{}", lift.weight)));
    }
    let b = restriction_float(lift, n_max)?;
    ichino_fit(&gs, &b)
}

/// The fit for a given eigenbasis and table.
pub fn ichino_fit(gs: &[Eigenform], b: &[Vec<Float>]) -> Result<IchinoExpansion> {
    let s = gs.len();
    let n_max = b.len();
    let mut pairs = Vec::new();
    for i in 0..s {
        for j in i..s {
            pairs.push((i, j));
        }
    }
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for n in 1..=n_max {
        for m in 1..=n_max {
            rows.push(
                pairs
                    .iter()
                    .map(|&(i, j)| {
                        let mut v = Float::with_val(WP, gs[i].a(n) * gs[j].a(m));
                        if i != j {
                            v += Float::with_val(WP, gs[j].a(n) * gs[i].a(m));
                        }
                        v
                    })
                    .collect::<Vec<_>>(),
            );
            rhs.push(b[n - 1][m - 1].clone());
        }
    }
    let bmax = rhs.iter().map(|x| x.to_f64().abs()).fold(0.0, f64::max);
    let (x, condition) = if bmax == 0.0 {
        (vec![Float::with_val(WP, 0); pairs.len()], 1.0)
    } else {
        // scale columns so the normal equations stay balanced
        let scales: Vec<Float> = (0..pairs.len())
            .map(|c| {
                let m = rows.iter().map(|r: &Vec<Float>| r[c].to_f64().abs()).fold(0.0, f64::max);
                Float::with_val(WP, m.max(1e-300))
            })
            .collect();
        let scaled: Vec<Vec<Float>> =
            rows.iter().map(|r| r.iter().zip(&scales).map(|(v, sc)| Float::with_val(WP, v / sc)).collect()).collect();
        let (y, cond) = hp::least_squares(&scaled, &rhs)?;
        (y.into_iter().zip(&scales).map(|(v, sc)| v / sc).collect(), cond)
    };
    if condition > MAX_CONDITION {
        return Err(Error::IllConditioned(condition));
    }
    let mut fit_residual = 0f64;
    for (r, t) in rows.iter().zip(&rhs) {
        let mut v = Float::with_val(WP, -t);
        for (a, xi) in r.iter().zip(&x) {
            v += Float::with_val(WP, a * xi);
        }
        fit_residual = fit_residual.max(v.to_f64().abs());
    }
    if bmax > 0.0 {
        fit_residual /= bmax;
    }
    let mut diagonal = Vec::new();
    let mut cross = Vec::new();
    for (&(i, j), v) in pairs.iter().zip(x) {
        if i == j {
            diagonal.push(v);
        } else {
            cross.push(((i, j), v));
        }
    }
    let dmax = diagonal.iter().map(|v| v.to_f64().abs()).fold(0.0, f64::max);
    let cmax = cross.iter().map(|(_, v)| v.to_f64().abs()).fold(0.0, f64::max);
    let cross_relative = if dmax == 0.0 { if cmax == 0.0 { 0.0 } else { f64::INFINITY } } else { cmax / dmax };
    Ok(IchinoExpansion {
        g_names: gs.iter().map(|g| g.name()).collect(),
        diagonal,
        cross,
        cross_relative,
        fit_residual,
        condition,
    })
}

/// e_{g}²/e_{g₀}² against the central values, for one f and one g ≠ g₀.
#[derive(Clone, Debug)]
pub struct IchinoRatio {
    pub f: String,
    pub g: String,
    pub g0: String,
    pub e_ratio: f64,
    /// [L(½, sym²g⊗f)/L(1, sym²g)²] / [same for g₀].
    pub l_ratio: f64,
    /// L(½, sym²g⊗f)/L(½, sym²g₀⊗f) without the norm factors.
    pub l_ratio_bare: f64,
    /// Relative error budget of `l_ratio`.
    pub budget: f64,
    pub cross_relative: f64,
}

/// Ichino's formula twice, for every lift of weight ℓ and every g after the first.
/// ⟨g, g⟩ is proportional to L(1, sym²g) at fixed weight, so
/// e_g² ∝ L(½, sym²g⊗f)/L(1, sym²g)².
pub fn ichino_ratio_check(weight: u32, n_max: usize, cfg: RsConfig) -> Result<Vec<IchinoRatio>> {
    let ev = RsEvaluator::new(weight - 1, cfg)?;
    let fs = eigenbasis(2 * weight - 2, ev.cutoff(), DEFAULT_PREC_BITS)?;
    let gs = eigenbasis(weight, ev.cutoff(), DEFAULT_PREC_BITS)?;
    if gs.len() < 2 {
        return Err(Error::InvalidArgument(format!("dim S_{weight} < 2 leaves no ratio")));
    }
    let sym2: Vec<Estimate> =
        gs.iter().map(|g| sym2_at_1_afe(&Hecke::from_eigenform(g), weight)).collect::<Result<_>>()?;
    let mut out = Vec::new();
    for lift in match_lifts(weight)? {
        let f = fs.iter().find(|f| f.label == lift.f.label).expect("same eigenbasis labels");
        let e = ichino_diagonal_expansion(&lift, n_max)?;
        let cv: Vec<CentralValue> = gs.iter().map(|g| rankin_central_value(f, g, &ev)).collect::<Result<_>>()?;
        let norm = |i: usize| cv[i].value / (sym2[i].value * sym2[i].value);
        let rel = |i: usize| cv[i].budget() / cv[i].value.abs() + 2.0 * sym2[i].err / sym2[i].value;
        for i in 1..gs.len() {
            let r = Float::with_val(WP, &e.diagonal[i] / &e.diagonal[0]).to_f64();
            out.push(IchinoRatio {
                f: f.name(),
                g: gs[i].name(),
                g0: gs[0].name(),
                e_ratio: r * r,
                l_ratio: norm(i) / norm(0),
                l_ratio_bare: cv[i].value / cv[0].value,
                budget: rel(i) + rel(0),
                cross_relative: e.cross_relative,
            });
        }
    }
    Ok(out)
}

/// Both sides of the Kohnen–Zagier proportionality in ratio form.
#[derive(Clone, Copy, Debug)]
pub struct KzRatio {
    /// |c(|D₁|)|² / |c(|D₂|)|².
    pub coefficients: f64,
    /// (|D₁|/|D₂|)^{ℓ−3/2} L(½, f⊗χ_{D₁}) / L(½, f⊗χ_{D₂}).
    pub l_values: f64,
    /// Relative error budget of `l_values`.
    pub budget: f64,
}

/// Coefficients of f used for the twisted L-values.
pub const KZ_TERMS: usize = 3000;

pub fn kz_ratio_test(lift: &SkLift, d1: i64, d2: i64) -> Result<KzRatio> {
    let f = eigenbasis(lift.f.weight, KZ_TERMS, DEFAULT_PREC_BITS)?
        .into_iter()
        .find(|g| g.label == lift.f.label)
        .ok_or_else(|| Error::Validation(format!("{} not found", lift.f.name())))?;
    kz_ratio_with(lift, &f, d1, d2)
}

/// As `kz_ratio_test` with a caller-supplied long coefficient table for f.
pub fn kz_ratio_with(lift: &SkLift, f: &Eigenform, d1: i64, d2: i64) -> Result<KzRatio> {
    let c1 = lift.c(-d1)?;
    let c2 = lift.c(-d2)?;
    if c2.is_zero() {
        return Err(Error::InvalidArgument(format!("c({}) = 0", -d2)));
    }
    let coefficients = Float::with_val(WP, (c1.clone() * &c1) / (c2.clone() * &c2)).to_f64();
    if d1 == d2 {
        return Ok(KzRatio { coefficients, l_values: 1.0, budget: 0.0 });
    }
    let l1 = twisted_central_value(f, d1)?;
    let l2 = twisted_central_value(f, d2)?;
    if l2.value <= 0.0 {
        return Err(Error::Validation(format!("L(½, f⊗χ_{d2}) = {} is not positive", l2.value)));
    }
    let e = lift.weight as f64 - 1.5;
    let l_values = (d1 as f64 / d2 as f64).powf(e) * l1.value / l2.value;
    let budget = l1.err / l1.value.abs() + l2.err / l2.value;
    Ok(KzRatio { coefficients, l_values, budget })
}

/// CSV `n,r,m,A` for n, m ≤ max, with a commented header.
pub fn sk_csv(lift: &SkLift, max: i64) -> Result<String> {
    let mut out = format!(
        "# ell={} f={} basis={} normalization=phi10_1(1,1)=1, first nonzero c(D)=1\nn,r,m,A\n",
        lift.weight,
        lift.f.name(),
        lift.space.labels().join(";")
    );
    for n in 1..=max {
        for m in 1..=max {
            let rm = arith::isqrt((4 * n * m) as u64) as i64;
            for r in -rm..=rm {
                let a = maass_coefficient(lift, n, r, m)?;
                out.push_str(&format!("{n},{r},{m},{}\n", a.to_string_radix(10, Some(25))));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sk_lift::jacobi::phi_12_1;

    #[test]
    fn weight_12_hecke() {
        let phi = phi_12_1(40).unwrap();
        let t = kohnen_tp2(phi.coeffs(), 12, 2).unwrap();
        for d in [3usize, 4, 7, 8, 11, 12, 15] {
            assert_eq!(t[d], Rational::from(-288) * &phi.coeffs()[d], "D = {d}");
        }
    }

    #[test]
    fn charpoly_small() {
        let m = vec![vec![Rational::from(2), Rational::from(1)], vec![Rational::from(1), Rational::from(2)]];
        let c = charpoly_q(&m);
        assert_eq!(c, vec![Rational::from(3), Rational::from(-4), Rational::from(1)]);
    }

    #[test]
    fn maass_terms_gcd() {
        let t = maass_terms(10, 2, 2, 2).unwrap();
        assert_eq!(t, vec![(12, Integer::from(1)), (3, Integer::from(512))]);
        assert!(maass_terms(10, 1, 3, 1).is_err());
    }
}
