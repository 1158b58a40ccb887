//! Elementary arithmetic functions on machine integers.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn gcd_i(a: i64, b: i64) -> u64 {
    gcd(a.unsigned_abs(), b.unsigned_abs())
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: i64, m: i64) -> Option<i64> {
    if m == 1 {
        return Some(0);
    }
    let (mut r0, mut r1) = (a.rem_euclid(m), m);
    let (mut s0, mut s1) = (1i64, 0i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return None;
    }
    Some(s0.rem_euclid(m))
}

/// Smallest-prime-factor sieve on `0..=n`.
#[derive(Clone, Debug)]
pub struct Sieve {
    spf: Vec<u32>,
}

impl Sieve {
    pub fn new(n: usize) -> Self {
        let mut spf = vec![0u32; n + 1];
        for i in 2..=n {
            if spf[i] == 0 {
                let mut j = i;
                while j <= n {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
        }
        Sieve { spf }
    }

    pub fn limit(&self) -> usize {
        self.spf.len() - 1
    }

    pub fn is_prime(&self, n: usize) -> bool {
        n >= 2 && self.spf[n] as usize == n
    }

    pub fn primes(&self) -> impl Iterator<Item = usize> + '_ {
        (2..self.spf.len()).filter(move |&i| self.spf[i] as usize == i)
    }

    /// Factorization as (prime, exponent) pairs in increasing order.
    pub fn factor(&self, mut n: usize) -> Vec<(usize, u32)> {
        let mut out = Vec::new();
        while n > 1 {
            let p = self.spf[n] as usize;
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        out
    }
}

/// Factorization by trial division, for arguments outside any sieve.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factor(n) == vec![(n, 1)]
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    Sieve::new(n as usize).primes().map(|p| p as u64).collect()
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut ds = vec![1u64];
    for (p, e) in factor(n) {
        let len = ds.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                ds.push(ds[i] * pk);
            }
        }
    }
    ds.sort_unstable();
    ds
}

pub fn mobius(n: u64) -> i64 {
    let f = factor(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn euler_phi(n: u64) -> u64 {
    factor(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Number of divisors.
pub fn tau(n: u64) -> u64 {
    factor(n).iter().map(|&(_, e)| e as u64 + 1).product()
}

pub fn is_square(n: u64) -> bool {
    let r = isqrt(n);
    r * r == n
}

pub fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Kronecker symbol (a/n) for n > 0.
pub fn kronecker(a: i64, n: u64) -> i32 {
    if n == 0 {
        return if a.unsigned_abs() == 1 { 1 } else { 0 };
    }
    let mut n = n;
    let mut result = 1i32;
    let mut tz = 0;
    while n % 2 == 0 {
        n /= 2;
        tz += 1;
    }
    if tz > 0 {
        if a % 2 == 0 {
            return 0;
        }
        let r = a.rem_euclid(8);
        if tz % 2 == 1 && (r == 3 || r == 5) {
            result = -result;
        }
    }
    let mut a = a.rem_euclid(n as i64) as u64;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let r = n % 8;
            if r == 3 || r == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// True if D is a fundamental discriminant.
pub fn is_fundamental_discriminant(d: i64) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    let r = d.rem_euclid(4);
    let squarefree = |m: u64| factor(m).iter().all(|&(_, e)| e == 1);
    if r == 1 {
        squarefree(d.unsigned_abs())
    } else if r == 0 {
        let m = d / 4;
        let mr = m.rem_euclid(4);
        (mr == 2 || mr == 3) && squarefree(m.unsigned_abs())
    } else {
        false
    }
}

/// Dimension of M_k(SL2(Z)) for even k (0 for odd or negative k).
pub fn dim_mk(k: i64) -> usize {
    if k < 0 || k % 2 != 0 {
        return 0;
    }
    if k % 12 == 2 {
        (k / 12) as usize
    } else {
        (k / 12) as usize + 1
    }
}

/// Dimension of S_k(SL2(Z)).
pub fn dim_sk(k: i64) -> usize {
    if k < 12 {
        0
    } else {
        dim_mk(k) - 1
    }
}

/// Table of d_j(n) style multiplicative majorants: `f(p, e)` evaluated on all n ≤ limit.
pub fn multiplicative_table(sieve: &Sieve, limit: usize, f: impl Fn(usize, u32) -> f64) -> Vec<f64> {
    let mut out = vec![0.0; limit + 1];
    if limit >= 1 {
        out[1] = 1.0;
    }
    for n in 2..=limit {
        out[n] = sieve.factor(n).iter().map(|&(p, e)| f(p, e)).product();
    }
    out
}

pub fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r = 1u64;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(mobius(30), -1);
        assert_eq!(mobius(12), 0);
        assert_eq!(euler_phi(9), 6);
        assert_eq!(tau(12), 6);
        assert_eq!(inv_mod(3, 7), Some(5));
        assert_eq!(inv_mod(2, 4), None);
    }

    #[test]
    fn kronecker_matches_legendre() {
        for p in [3u64, 5, 7, 11, 13] {
            for a in -20i64..20 {
                let euler = {
                    let ar = a.rem_euclid(p as i64) as u64;
                    let mut r = 1u64;
                    for _ in 0..(p - 1) / 2 {
                        r = r * ar % p;
                    }
                    match r {
                        0 => 0,
                        1 => 1,
                        _ => -1,
                    }
                };
                assert_eq!(kronecker(a, p), euler, "a={a} p={p}");
            }
        }
        assert_eq!(kronecker(-3, 2), -1);
        assert_eq!(kronecker(-4, 3), -1);
        assert_eq!(kronecker(5, 2), -1);
        assert_eq!(kronecker(-7, 2), 1);
    }

    #[test]
    fn dimensions() {
        let dims: Vec<usize> = (0..=30).step_by(2).map(dim_sk).collect();
        assert_eq!(dims, vec![0, 0, 0, 0, 0, 0, 1, 0, 1, 1, 1, 1, 2, 1, 2, 2]);
        assert!(is_fundamental_discriminant(-3));
        assert!(is_fundamental_discriminant(-4));
        assert!(!is_fundamental_discriminant(-12));
        assert!(is_fundamental_discriminant(-8));
    }
}
