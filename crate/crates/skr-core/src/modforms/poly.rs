//! Exact univariate polynomials over Q: characteristic polynomials and real
//! root isolation by Sturm sequences.

use crate::error::{Error, Result};
use rug::{Float, Integer, Rational};

/// Coefficients in increasing degree.
pub type Poly = Vec<Rational>;

fn trim(mut p: Poly) -> Poly {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
    p
}

pub fn degree(p: &Poly) -> usize {
    p.len().saturating_sub(1)
}

pub fn eval(p: &Poly, x: &Rational) -> Rational {
    let mut acc = Rational::new();
    for c in p.iter().rev() {
        acc *= x;
        acc += c;
    }
    acc
}

pub fn eval_float(p: &Poly, x: &Float) -> Float {
    let mut acc = Float::with_val(x.prec(), 0);
    for c in p.iter().rev() {
        acc *= x;
        acc += c;
    }
    acc
}

pub fn derivative(p: &Poly) -> Poly {
    if p.len() <= 1 {
        return vec![Rational::new()];
    }
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| Rational::from(c * i as u32))
            .collect(),
    )
}

/// Remainder of a by b.
pub fn rem(a: &Poly, b: &Poly) -> Poly {
    let mut r = a.clone();
    let db = degree(b);
    let lead = b.last().unwrap().clone();
    while r.len() > db && !(r.len() == 1 && r[0] == 0) {
        let dr = r.len() - 1;
        if dr < db {
            break;
        }
        let f = Rational::from(r.last().unwrap() / &lead);
        for (i, c) in b.iter().enumerate() {
            r[dr - db + i] -= Rational::from(&f * c);
        }
        r.pop();
        r = trim(r);
        if r.is_empty() {
            r.push(Rational::new());
        }
    }
    trim(r)
}

/// Characteristic polynomial det(xI − M) by Faddeev–LeVerrier.
pub fn charpoly(m: &[Vec<Integer>]) -> Vec<Integer> {
    let n = m.len();
    let mr: Vec<Vec<Rational>> = m
        .iter()
        .map(|row| row.iter().map(|x| Rational::from(x.clone())).collect())
        .collect();
    let mut coeffs = vec![Rational::new(); n + 1];
    coeffs[n] = Rational::from(1);
    let mut mk: Vec<Vec<Rational>> = vec![vec![Rational::new(); n]; n];
    for k in 1..=n {
        // M_k = M·M_{k−1} + c_{n−k+1} I
        let mut next = vec![vec![Rational::new(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = Rational::new();
                for l in 0..n {
                    s += Rational::from(&mr[i][l] * &mk[l][j]);
                }
                if i == j {
                    s += &coeffs[n - k + 1];
                }
                next[i][j] = s;
            }
        }
        mk = next;
        // c_{n−k} = −tr(M·M_k)/k
        let mut tr = Rational::new();
        for i in 0..n {
            for l in 0..n {
                tr += Rational::from(&mr[i][l] * &mk[l][i]);
            }
        }
        coeffs[n - k] = -tr / k as u32;
    }
    coeffs
        .into_iter()
        .map(|c| {
            assert_eq!(*c.denom(), 1, "characteristic polynomial of integer matrix");
            c.numer().clone()
        })
        .collect()
}

fn sturm_chain(p: &Poly) -> Vec<Poly> {
    let mut chain = vec![p.clone(), derivative(p)];
    loop {
        let n = chain.len();
        if degree(&chain[n - 1]) == 0 && chain[n - 1][0] == 0 {
            chain.pop();
            break;
        }
        if degree(&chain[n - 1]) == 0 {
            break;
        }
        let r = rem(&chain[n - 2], &chain[n - 1]);
        let neg: Poly = r.into_iter().map(|c| -c).collect();
        chain.push(neg);
    }
    chain
}

fn sign_changes(chain: &[Poly], x: &Rational) -> usize {
    let signs: Vec<i32> = chain
        .iter()
        .map(|p| eval(p, x).cmp0() as i32)
        .filter(|&s| s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// All real roots of a squarefree integer polynomial, in decreasing order,
/// to `prec_bits` bits after the binary point.
pub fn real_roots(p_int: &[Integer], prec_bits: u32) -> Result<Vec<Float>> {
    let p: Poly = trim(p_int.iter().map(|c| Rational::from(c.clone())).collect());
    let d = degree(&p);
    if d == 0 {
        return Ok(vec![]);
    }
    let chain = sturm_chain(&p);
    if degree(chain.last().unwrap()) != 0 {
        return Err(Error::RootIsolation("polynomial is not squarefree".into()));
    }
    // Cauchy bound
    let lead = p[d].clone().abs();
    let mut bound = Rational::from(1);
    for c in &p[..d] {
        let r = Rational::from(c.clone().abs() / &lead);
        if r > bound {
            bound = r;
        }
    }
    bound += 1;
    let count = |a: &Rational, b: &Rational| sign_changes(&chain, a) - sign_changes(&chain, b);
    let lo = Rational::from(-&bound);
    let mut stack = vec![(lo, bound)];
    let mut isolated = Vec::new();
    let mut steps = 0;
    while let Some((a, b)) = stack.pop() {
        steps += 1;
        if steps > 100_000 {
            return Err(Error::RootIsolation("bisection did not separate roots".into()));
        }
        match count(&a, &b) {
            0 => {}
            1 => isolated.push((a, b)),
            _ => {
                let m = Rational::from(&a + &b) / 2u32;
                // roots exactly at m are caught by the half-open convention
                stack.push((a, m.clone()));
                stack.push((m, b));
            }
        }
    }
    if isolated.len() != d {
        return Err(Error::RootIsolation(format!(
            "found {} real roots, expected {}",
            isolated.len(),
            d
        )));
    }
    let target = Rational::from((1, Integer::from(1) << prec_bits));
    let mut roots = Vec::new();
    for (mut a, mut b) in isolated {
        let sa = eval(&p, &b).cmp0();
        if sa == std::cmp::Ordering::Equal {
            roots.push(b);
            continue;
        }
        // sign-based bisection on the half-open interval (a, b]
        while Rational::from(&b - &a) > target {
            let m = Rational::from(&a + &b) / 2u32;
            let sm = eval(&p, &m).cmp0();
            if sm == std::cmp::Ordering::Equal {
                a = m.clone();
                b = m;
                break;
            }
            if sm == sa {
                b = m;
            } else {
                a = m;
            }
        }
        roots.push(Rational::from(&a + &b) / 2u32);
    }
    let prec = prec_bits + 64;
    let mut out: Vec<Float> = roots.into_iter().map(|r| Float::with_val(prec, &r)).collect();
    out.sort_by(|x, y| y.partial_cmp(x).unwrap());
    Ok(out)
}
