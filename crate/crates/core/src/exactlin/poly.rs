//! Integer polynomials, characteristic polynomials and sign-exact root
//! counting for real-rooted polynomials.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Inertia, IntMatrix};

/// Polynomial with integer coefficients, lowest degree first, no trailing
/// zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn one() -> Self {
        IntPolynomial::new(vec![BigInt::one()])
    }

    /// `x - root`
    pub fn linear(root: i64) -> Self {
        IntPolynomial::from_i64(&[-root, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn mul(&self, other: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || other.is_zero() {
            return IntPolynomial::new(Vec::new());
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }

    pub fn pow(&self, e: u64) -> IntPolynomial {
        (0..e).fold(IntPolynomial::one(), |acc, _| acc.mul(self))
    }

    /// Exact division over ℤ. Returns `None` unless `divisor` divides `self`
    /// with integral quotient and zero remainder.
    pub fn exact_div(&self, divisor: &IntPolynomial) -> Option<IntPolynomial> {
        let dd = divisor.degree()?;
        let lead = &divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        if rem.len() < divisor.coeffs.len() {
            return self.is_zero().then(|| IntPolynomial::new(Vec::new()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + dd];
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &q * d;
            }
            quot[k] = q;
        }
        rem.iter().all(Zero::is_zero).then(|| IntPolynomial::new(quot))
    }

    /// Root counts `(positive, zero, negative)` by Descartes' rule of signs.
    /// The counts are exact when every root is real; otherwise the positive
    /// and negative counts are upper bounds.
    pub fn real_root_signs(&self) -> Inertia {
        let zero = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        let rest = &self.coeffs[zero..];
        let changes = |flip: bool| {
            let mut prev: Option<bool> = None;
            let mut n = 0;
            for (i, c) in rest.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let mut pos = c.is_positive();
                if flip && i % 2 == 1 {
                    pos = !pos;
                }
                if prev.is_some_and(|p| p != pos) {
                    n += 1;
                }
                prev = Some(pos);
            }
            n
        };
        Inertia { positive: changes(false), zero, negative: changes(true) }
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            first = false;
            let a = c.abs();
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{a}x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{a}x^{i}")?,
            }
        }
        Ok(())
    }
}

/// `det(x·I − M)` by the Faddeev–LeVerrier recurrence, exact over ℤ.
pub fn characteristic_polynomial(m: &IntMatrix) -> IntPolynomial {
    assert!(m.is_square(), "characteristic polynomial of non-square matrix");
    let n = m.rows();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut aux = IntMatrix::zeros(n, n);
    for k in 1..=n {
        // aux = M·aux_{k-1} + c_{n-k+1}·I
        let mut next = m * &aux;
        for i in 0..n {
            next[(i, i)] += &coeffs[n - k + 1];
        }
        let prod = m * &next;
        let trace: BigInt = (0..n).map(|i| prod[(i, i)].clone()).sum();
        let (q, r) = trace.div_rem(&BigInt::from(k));
        debug_assert!(r.is_zero(), "Faddeev–LeVerrier division is exact over ℤ");
        coeffs[n - k] = -q;
        aux = next;
    }
    IntPolynomial::new(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charpoly_small() {
        let m = IntMatrix::from_rows(&[vec![0, 1], vec![1, -2]]);
        // x^2 + 2x - 1
        assert_eq!(characteristic_polynomial(&m), IntPolynomial::from_i64(&[-1, 2, 1]));
        let m = IntMatrix::from_rows(&[vec![2, 0, 0], vec![0, 3, 4], vec![0, 4, 9]]);
        // (x-2)(x^2 - 12x + 11) = (x-2)(x-1)(x-11)
        let expected = IntPolynomial::linear(2).mul(&IntPolynomial::linear(1)).mul(&IntPolynomial::linear(11));
        assert_eq!(characteristic_polynomial(&m), expected);
        assert_eq!(characteristic_polynomial(&IntMatrix::zeros(0, 0)), IntPolynomial::one());
    }

    #[test]
    fn division() {
        let a = IntPolynomial::linear(1).mul(&IntPolynomial::linear(-3)).mul(&IntPolynomial::from_i64(&[2, 0, 5]));
        let b = IntPolynomial::linear(-3);
        let q = a.exact_div(&b).unwrap();
        assert_eq!(q, IntPolynomial::linear(1).mul(&IntPolynomial::from_i64(&[2, 0, 5])));
        assert_eq!(a.exact_div(&IntPolynomial::linear(4)), None);
        assert_eq!(IntPolynomial::from_i64(&[1, 1]).exact_div(&IntPolynomial::from_i64(&[0, 2])), None);
    }

    #[test]
    fn descartes_on_real_rooted() {
        // roots 3, 1, 0, 0, -2
        let p = IntPolynomial::linear(3)
            .mul(&IntPolynomial::linear(1))
            .mul(&IntPolynomial::linear(0).pow(2))
            .mul(&IntPolynomial::linear(-2));
        assert_eq!(p.real_root_signs(), Inertia { positive: 2, zero: 2, negative: 1 });
        assert_eq!(IntPolynomial::one().real_root_signs(), Inertia { positive: 0, zero: 0, negative: 0 });
    }
}
