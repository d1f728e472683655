//! Dense univariate polynomials with arbitrary-precision integer coefficients.
//!
//! Just enough arithmetic for chromatic polynomials and Hilbert series; not a
//! general-purpose polynomial library.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Mul, Sub};

/// Polynomial in one variable, `coeffs[d]` = coefficient of degree `d`.
/// Trailing zeros are trimmed, so `deg` is honest; the zero polynomial has an
/// empty coefficient vector.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        let mut p = Poly { coeffs: vec![c] };
        p.trim();
        p
    }

    /// The monomial `c * t^d`.
    pub fn monomial(c: BigInt, d: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); d + 1];
        coeffs[d] = c;
        Poly { coeffs }
    }

    /// `t^d`.
    pub fn var_pow(d: usize) -> Self {
        Poly::monomial(BigInt::one(), d)
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the polynomial; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, d: usize) -> BigInt {
        self.coeffs.get(d).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len().max(rhs.coeffs.len())];
        for (d, c) in self.coeffs.iter().enumerate() {
            coeffs[d] += c;
        }
        for (d, c) in rhs.coeffs.iter().enumerate() {
            coeffs[d] += c;
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len().max(rhs.coeffs.len())];
        for (d, c) in self.coeffs.iter().enumerate() {
            coeffs[d] += c;
        }
        for (d, c) in rhs.coeffs.iter().enumerate() {
            coeffs[d] -= c;
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match d {
                0 => write!(f, "{c}")?,
                1 if c.is_one() => write!(f, "t")?,
                1 => write!(f, "{c}*t")?,
                _ if c.is_one() => write!(f, "t^{d}")?,
                _ => write!(f, "{c}*t^{d}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> Poly {
        Poly::from_coeffs(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn arithmetic() {
        let a = p(&[1, 2]); // 1 + 2t
        let b = p(&[0, 1, 3]); // t + 3t^2
        assert_eq!(&a + &b, p(&[1, 3, 3]));
        assert_eq!(&a - &a, Poly::zero());
        assert_eq!(&a * &b, p(&[0, 1, 5, 6]));
        assert_eq!(a.eval(&BigInt::from(10)), BigInt::from(21));
    }

    #[test]
    fn trim_and_degree() {
        assert_eq!(p(&[5, 0, 0]).degree(), Some(0));
        assert_eq!(Poly::zero().degree(), None);
        assert_eq!(Poly::var_pow(3).degree(), Some(3));
    }
}
