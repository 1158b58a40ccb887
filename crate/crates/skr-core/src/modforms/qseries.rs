use rug::integer::Order;
use rug::{Integer, Rational};

/// Truncated power series in q with exact rational coefficients, stored as
/// integer numerators over one common positive denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    num: Vec<Integer>,
    den: Integer,
}

/// Below this length products use the schoolbook loop.
const SCHOOLBOOK_CUTOFF: usize = 48;

impl QSeries {
    pub fn from_integers(num: Vec<Integer>) -> Self {
        QSeries { num, den: Integer::from(1) }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_integers(coeffs.iter().map(|&c| Integer::from(c)).collect())
    }

    pub fn from_parts(num: Vec<Integer>, den: Integer) -> Self {
        assert!(den > 0, "denominator must be positive");
        let mut s = QSeries { num, den };
        s.reduce();
        s
    }

    pub fn zero(prec: usize) -> Self {
        Self::from_integers(vec![Integer::new(); prec])
    }

    pub fn one(prec: usize) -> Self {
        let mut s = Self::zero(prec);
        if prec > 0 {
            s.num[0] = Integer::from(1);
        }
        s
    }

    /// The monomial q^j.
    pub fn monomial(j: usize, prec: usize) -> Self {
        let mut s = Self::zero(prec);
        if j < prec {
            s.num[j] = Integer::from(1);
        }
        s
    }

    /// Number of coefficients held.
    pub fn prec(&self) -> usize {
        self.num.len()
    }

    pub fn is_integral(&self) -> bool {
        self.den == 1
    }

    pub fn denominator(&self) -> &Integer {
        &self.den
    }

    pub fn numerators(&self) -> &[Integer] {
        &self.num
    }

    /// Integer coefficient; panics if the series is not integral.
    pub fn int_coeff(&self, n: usize) -> &Integer {
        assert!(self.is_integral(), "series has denominator {}", self.den);
        &self.num[n]
    }

    pub fn coeff(&self, n: usize) -> Rational {
        Rational::from((self.num[n].clone(), self.den.clone()))
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| *c == 0)
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.num.iter().position(|c| *c != 0)
    }

    fn reduce(&mut self) {
        if self.den == 1 {
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g == 1 {
                return;
            }
            g.gcd_mut(c);
        }
        if g != 1 {
            for c in &mut self.num {
                c.div_exact_mut(&g);
            }
            self.den.div_exact_mut(&g);
        }
    }

    pub fn truncate(&self, prec: usize) -> Self {
        assert!(prec <= self.prec(), "cannot extend precision");
        QSeries::from_parts(self.num[..prec].to_vec(), self.den.clone())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let (n, d) = (c.numer(), c.denom());
        let num = self.num.iter().map(|x| Integer::from(x * n)).collect();
        QSeries::from_parts(num, Integer::from(&self.den * d))
    }

    pub fn scale_int(&self, c: &Integer) -> Self {
        self.scale(&Rational::from(c.clone()))
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        let prec = self.prec().min(other.prec());
        let den = self.den.clone().lcm(&other.den);
        let fa = Integer::from(&den / &self.den);
        let fb = Integer::from(&den / &other.den);
        let num = (0..prec)
            .map(|i| {
                let a = Integer::from(&self.num[i] * &fa);
                let b = Integer::from(&other.num[i] * &fb);
                if negate {
                    a - b
                } else {
                    a + b
                }
            })
            .collect();
        QSeries::from_parts(num, den)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let prec = self.prec().min(other.prec());
        let num = mul_trunc(&self.num[..prec], &other.num[..prec], prec);
        QSeries::from_parts(num, Integer::from(&self.den * &other.den))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = QSeries::one(self.prec());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Multiply by q^j, keeping the precision.
    pub fn shift(&self, j: usize) -> Self {
        let prec = self.prec();
        let mut num = vec![Integer::new(); prec];
        for i in j..prec {
            num[i] = self.num[i - j].clone();
        }
        QSeries::from_parts(num, self.den.clone())
    }
}

/// First `prec` coefficients of the product of two integer polynomials.
pub fn mul_trunc(a: &[Integer], b: &[Integer], prec: usize) -> Vec<Integer> {
    let a = &a[..a.len().min(prec)];
    let b = &b[..b.len().min(prec)];
    if a.is_empty() || b.is_empty() {
        return vec![Integer::new(); prec];
    }
    if a.len().min(b.len()) <= SCHOOLBOOK_CUTOFF {
        let mut out = vec![Integer::new(); prec];
        for (i, x) in a.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(prec - i) {
                out[i + j] += x * y;
            }
        }
        return out;
    }
    kronecker_mul(a, b, prec)
}

/// Product by Kronecker substitution: pack both polynomials into single
/// integers with limb-aligned slots, multiply once with GMP, unpack signed
/// balanced digits.
fn kronecker_mul(a: &[Integer], b: &[Integer], prec: usize) -> Vec<Integer> {
    let bits = |v: &[Integer]| v.iter().map(|c| c.significant_bits()).max().unwrap_or(0);
    let len_bits = 64 - (a.len().min(b.len()) as u64).leading_zeros();
    let slot_bits = bits(a) + bits(b) + len_bits + 2;
    let limbs = (slot_bits as usize).div_ceil(64);

    let pack = |v: &[Integer]| -> Integer {
        let mut pos = vec![0u64; v.len() * limbs];
        let mut neg = vec![0u64; v.len() * limbs];
        let mut any_neg = false;
        for (i, c) in v.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            let digits = c.to_digits::<u64>(Order::Lsf);
            let target = if *c < 0 {
                any_neg = true;
                &mut neg
            } else {
                &mut pos
            };
            target[i * limbs..i * limbs + digits.len()].copy_from_slice(&digits);
        }
        let p = Integer::from_digits(&pos, Order::Lsf);
        if any_neg {
            p - Integer::from_digits(&neg, Order::Lsf)
        } else {
            p
        }
    };

    let prod = pack(a) * pack(b);
    let negative = prod < 0;
    let digits = prod.abs().to_digits::<u64>(Order::Lsf);
    let half = Integer::from(1) << (64 * limbs as u32 - 1);
    let full = Integer::from(1) << (64 * limbs as u32);
    let mut out = Vec::with_capacity(prec);
    let mut carry = false;
    for i in 0..prec {
        let lo = (i * limbs).min(digits.len());
        let hi = ((i + 1) * limbs).min(digits.len());
        let mut v = Integer::from_digits(&digits[lo..hi], Order::Lsf);
        if carry {
            v += 1;
        }
        carry = v >= half;
        if carry {
            v -= &full;
        }
        if negative {
            v = -v;
        }
        out.push(v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn schoolbook(a: &[Integer], b: &[Integer], prec: usize) -> Vec<Integer> {
        let mut out = vec![Integer::new(); prec];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                if i + j < prec {
                    out[i + j] += x * y;
                }
            }
        }
        out
    }

    #[test]
    fn kronecker_matches_schoolbook() {
        let mut state = 12345u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            state
        };
        for &(n, scale) in &[(60usize, 10u32), (200, 130), (97, 300)] {
            let mk = |next: &mut dyn FnMut() -> u64| -> Vec<Integer> {
                (0..n)
                    .map(|_| {
                        let mut v = Integer::from(next() >> 1) << scale;
                        v += next() >> 3;
                        if next() % 3 == 0 {
                            -v
                        } else {
                            v
                        }
                    })
                    .collect()
            };
            let a = mk(&mut next);
            let b = mk(&mut next);
            assert_eq!(kronecker_mul(&a, &b, n), schoolbook(&a, &b, n));
        }
    }

    #[test]
    fn rational_arithmetic_reduces() {
        let a = QSeries::from_i64(&[2, 4, 6]).scale(&Rational::from((1, 4)));
        assert_eq!(a.denominator(), &Integer::from(2));
        assert_eq!(a.coeff(1), Rational::from(1));
        let b = a.add(&a);
        assert!(b.is_integral());
        assert_eq!(b.numerators(), QSeries::from_i64(&[1, 2, 3]).numerators());
    }

    #[test]
    fn precision_is_minimum_of_inputs() {
        let a = QSeries::from_i64(&[1, 1, 1, 1]);
        let b = QSeries::from_i64(&[1, -1]);
        assert_eq!(a.mul(&b).prec(), 2);
        assert_eq!(a.add(&b).prec(), 2);
    }
}
