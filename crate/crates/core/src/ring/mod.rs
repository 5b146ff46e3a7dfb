//! Exact coefficient rings.
//!
//! Everything downstream is generic over [`Coeff`], so the same tau and
//! factorization code runs on big rationals (numeric mode) and on
//! [`MomentPoly`] (symbolic mode). There is no floating point anywhere.

mod frac;
mod laurent;
mod matrix;
mod multi;
mod poly;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use frac::Frac;
pub use laurent::LaurentPoly;
pub use matrix::{det_bareiss, det_cofactor, DenseMatrix, LaurentMatrix};
pub use multi::MultiLaurent;
pub use poly::{Family, MomentPoly, MomentSymbol, Monomial};

/// Exact rational number, always normalized with a positive denominator.
pub type Rational = num_rational::BigRational;

/// A commutative ring with unit whose elements can be compared exactly.
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// Image of a rational constant under the unit map.
    fn from_rational(r: &Rational) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(n)))
    }

    fn scale(&self, r: &Rational) -> Self {
        self.mul_ref(&Self::from_rational(r))
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }

    /// Determinant of a square matrix. Cofactor expansion unless the ring
    /// has something better.
    fn determinant(m: &DenseMatrix<Self>) -> Self {
        det_cofactor(m)
    }
}

/// A [`Coeff`] ring in which nonzero elements can be inverted.
pub trait Field: Coeff {
    /// `None` when `other` is zero.
    fn checked_div(&self, other: &Self) -> Option<Self>;
}

impl Coeff for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn determinant(m: &DenseMatrix<Self>) -> Self {
        det_bareiss(m)
    }
}

impl Field for Rational {
    fn checked_div(&self, other: &Self) -> Option<Self> {
        if Zero::is_zero(other) {
            None
        } else {
            Some(self / other)
        }
    }
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"n"` or `"p/q"`, rejecting zero denominators and whitespace.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let valid = |t: &str| {
        let digits = t.strip_prefix('-').unwrap_or(t);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid(num) {
        return None;
    }
    let num: BigInt = num.parse().ok()?;
    match den {
        None => Some(Rational::from_integer(num)),
        Some(d) => {
            if !valid(d) {
                return None;
            }
            let den: BigInt = d.parse().ok()?;
            if den.is_zero() {
                return None;
            }
            Some(Rational::new(num, den))
        }
    }
}

/// `"n"` for integers, `"p/q"` otherwise (sign on the numerator).
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub(crate) fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub(crate) fn is_negative(r: &Rational) -> bool {
    r.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_strings() {
        assert_eq!(parse_rational("3/6"), Some(rat(1, 2)));
        assert_eq!(parse_rational("-4"), Some(int(-4)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("1.5"), None);
        assert_eq!(parse_rational(""), None);
        assert_eq!(parse_rational("+2"), None);
        assert_eq!(format_rational(&rat(-6, 4)), "-3/2");
        assert_eq!(format_rational(&int(0)), "0");
    }

    #[test]
    fn pow_by_squaring() {
        assert_eq!(rat(2, 3).pow(5), rat(32, 243));
        assert_eq!(rat(2, 3).pow(0), int(1));
    }
}
