use std::fmt;

use super::{Coeff, Field, Rational};

/// Unreduced fraction over an integral domain.
///
/// Used to evaluate tau-rational expressions (connection matrix entries)
/// symbolically. Equality is by cross-multiplication, so no gcd is needed.
#[derive(Debug, Clone)]
pub struct Frac<R> {
    num: R,
    den: R,
}

impl<R: Coeff> Frac<R> {
    /// Panics on a zero denominator.
    pub fn new(num: R, den: R) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Frac { num, den }
    }

    pub fn from_ring(r: R) -> Self {
        Frac { num: r, den: R::one() }
    }

    pub fn numer(&self) -> &R {
        &self.num
    }

    pub fn denom(&self) -> &R {
        &self.den
    }
}

impl<R: Coeff> PartialEq for Frac<R> {
    fn eq(&self, other: &Self) -> bool {
        self.num.mul_ref(&other.den) == other.num.mul_ref(&self.den)
    }
}

impl<R: Coeff> Coeff for Frac<R> {
    fn zero() -> Self {
        Self::from_ring(R::zero())
    }
    fn one() -> Self {
        Self::from_ring(R::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add_ref(&self, other: &Self) -> Self {
        if self.den == other.den {
            return Frac {
                num: self.num.add_ref(&other.num),
                den: self.den.clone(),
            };
        }
        Frac {
            num: self.num.mul_ref(&other.den).add_ref(&other.num.mul_ref(&self.den)),
            den: self.den.mul_ref(&other.den),
        }
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }
    fn mul_ref(&self, other: &Self) -> Self {
        if self.num.is_zero() || other.num.is_zero() {
            return Self::zero();
        }
        Frac {
            num: self.num.mul_ref(&other.num),
            den: self.den.mul_ref(&other.den),
        }
    }
    fn neg_ref(&self) -> Self {
        Frac {
            num: self.num.neg_ref(),
            den: self.den.clone(),
        }
    }
    fn from_rational(r: &Rational) -> Self {
        Self::from_ring(R::from_rational(r))
    }
}

impl<R: Coeff> Field for Frac<R> {
    fn checked_div(&self, other: &Self) -> Option<Self> {
        if other.num.is_zero() {
            return None;
        }
        Some(Frac {
            num: self.num.mul_ref(&other.den),
            den: self.den.mul_ref(&other.num),
        })
    }
}

impl<R: Coeff> fmt::Display for Frac<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == R::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{int, MomentPoly, MomentSymbol};

    #[test]
    fn cross_multiplied_equality() {
        let c = |i| MomentPoly::symbol(MomentSymbol::c(i));
        let a = Frac::new(c(0).mul_ref(&c(1)), c(1).mul_ref(&c(2)));
        let b = Frac::new(c(0), c(2));
        assert_eq!(a, b);
        let sum = a.add_ref(&b.neg_ref());
        assert!(sum.is_zero());
        let q = Frac::from_ring(int(6)).checked_div(&Frac::from_ring(int(4))).unwrap();
        assert_eq!(q, Frac::new(int(3), int(2)));
        assert!(q.checked_div(&Frac::zero()).is_none());
    }
}
