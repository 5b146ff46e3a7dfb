use std::collections::BTreeMap;
use std::fmt;

use super::{Coeff, Rational};

/// Finite Laurent polynomial in `z` over a coefficient ring.
///
/// The zero polynomial is the empty map; no zero coefficient is ever stored.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentPoly<R> {
    coeffs: BTreeMap<i64, R>,
}

impl<R: Coeff> LaurentPoly<R> {
    pub fn new() -> Self {
        LaurentPoly {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(c: R) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * z^exp`.
    pub fn monomial(c: R, exp: i64) -> Self {
        let mut p = Self::new();
        p.add_term(exp, c);
        p
    }

    /// The variable `z`.
    pub fn z() -> Self {
        Self::monomial(R::one(), 1)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, R)>) -> Self {
        let mut p = Self::new();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Polynomial with `coeffs[i]` at `z^i`.
    pub fn from_coeffs(coeffs: &[R]) -> Self {
        Self::from_terms(coeffs.iter().cloned().enumerate().map(|(i, c)| (i as i64, c)))
    }

    pub fn add_term(&mut self, exp: i64, c: R) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().add_ref(&c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn coeff(&self, exp: i64) -> R {
        self.coeffs.get(&exp).cloned().unwrap_or_else(R::zero)
    }

    /// Coefficient of `z^-1`.
    pub fn residue(&self) -> R {
        self.coeff(-1)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &R)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// No negative powers of `z`.
    pub fn is_nonnegative(&self) -> bool {
        self.min_degree().map_or(true, |d| d >= 0)
    }

    /// Multiplies by `z^n`.
    pub fn shift(&self, n: i64) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e + n, c.clone())).collect(),
        }
    }

    pub fn scale_by(&self, c: &R) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(&e, a)| (e, a.mul_ref(c))))
    }

    pub fn map_coeffs<T: Coeff>(&self, f: impl Fn(&R) -> T) -> LaurentPoly<T> {
        LaurentPoly::from_terms(self.coeffs.iter().map(|(&e, c)| (e, f(c))))
    }

    /// Keeps the terms with exponent in `lo..=hi`.
    pub fn truncate(&self, lo: i64, hi: i64) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.range(lo..=hi).map(|(&e, c)| (e, c.clone())).collect(),
        }
    }

    /// Coefficients of `z^0..=z^max_degree`, for polynomials.
    pub fn dense_coeffs(&self) -> Option<Vec<R>> {
        if !self.is_nonnegative() {
            return None;
        }
        let top = match self.max_degree() {
            None => return Some(Vec::new()),
            Some(d) => d,
        };
        Some((0..=top).map(|e| self.coeff(e)).collect())
    }
}

impl<R: Coeff> Default for LaurentPoly<R> {
    fn default() -> Self {
        Self::new()
    }
}

impl<R: Coeff> Coeff for LaurentPoly<R> {
    fn zero() -> Self {
        Self::new()
    }
    fn one() -> Self {
        Self::constant(R::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&e, c) in &other.coeffs {
            out.add_term(e, c.clone());
        }
        out
    }
    fn sub_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&e, c) in &other.coeffs {
            out.add_term(e, c.neg_ref());
        }
        out
    }
    fn mul_ref(&self, other: &Self) -> Self {
        let mut out = Self::new();
        for (&ea, ca) in &self.coeffs {
            for (&eb, cb) in &other.coeffs {
                out.add_term(ea + eb, ca.mul_ref(cb));
            }
        }
        out
    }
    fn neg_ref(&self) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, c.neg_ref())).collect(),
        }
    }
    fn from_rational(r: &Rational) -> Self {
        Self::constant(R::from_rational(r))
    }
}

fn z_power(e: i64) -> String {
    match e {
        1 => "z".to_string(),
        _ => format!("z^{e}"),
    }
}

impl<R: Coeff> fmt::Display for LaurentPoly<R> {
    /// Descending powers, e.g. `z^3 - 3/2 z` or `(c_0 + c_1) z^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let one = R::one();
        let minus_one = one.neg_ref();
        for (n, (&e, c)) in self.coeffs.iter().rev().enumerate() {
            let text = c.to_string();
            let compound = text.contains(" + ") || text.contains(" - ");
            let (neg, body) = if !compound && text.starts_with('-') {
                (true, text[1..].to_string())
            } else {
                (false, text)
            };
            let body = if compound { format!("({body})") } else { body };
            let term = if e == 0 {
                body
            } else if *c == one || *c == minus_one {
                z_power(e)
            } else {
                format!("{body} {}", z_power(e))
            };
            match (n, neg) {
                (0, true) => write!(f, "-{term}")?,
                (0, false) => write!(f, "{term}")?,
                (_, true) => write!(f, " - {term}")?,
                (_, false) => write!(f, " + {term}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{int, rat, MomentPoly, MomentSymbol};

    fn p(terms: &[(i64, i64)]) -> LaurentPoly<Rational> {
        LaurentPoly::from_terms(terms.iter().map(|&(e, c)| (e, int(c))))
    }

    #[test]
    fn difference_of_squares() {
        let a = p(&[(1, 1), (0, 1)]);
        let b = p(&[(1, 1), (0, -1)]);
        assert_eq!(a.mul_ref(&b), p(&[(2, 1), (0, -1)]));
        assert!(a.mul_ref(&LaurentPoly::zero()).is_zero());
    }

    #[test]
    fn residue_reads_minus_one() {
        assert_eq!(p(&[(-1, 3), (0, 5)]).residue(), int(3));
        assert_eq!(p(&[(2, 1), (0, -1)]).residue(), int(0));
    }

    #[test]
    fn residue_of_shifted_series() {
        // sum_{i=0..3} c_i z^{-i-1} times z^2 has residue c_2
        let series = LaurentPoly::from_terms((0..4).map(|i| (-i - 1, MomentPoly::symbol(MomentSymbol::c(i)))));
        let prod = series.mul_ref(&LaurentPoly::monomial(MomentPoly::one(), 2));
        assert_eq!(prod.residue(), MomentPoly::symbol(MomentSymbol::c(2)));
    }

    #[test]
    fn shift_field_product_over_moments() {
        let c = |i| MomentPoly::symbol(MomentSymbol::c(i));
        let lin = |a: i64, b: i64| LaurentPoly::from_terms([(0, c(a)), (-1, c(b).neg_ref())]);
        let prod = lin(0, 1).mul_ref(&lin(2, 3));
        let expected = LaurentPoly::from_terms([
            (0, c(0).mul_ref(&c(2))),
            (-1, c(0).mul_ref(&c(3)).add_ref(&c(1).mul_ref(&c(2))).neg_ref()),
            (-2, c(1).mul_ref(&c(3))),
        ]);
        assert_eq!(prod, expected);
    }

    #[test]
    fn display_forms() {
        let h3 = LaurentPoly::from_terms([(3, int(1)), (1, rat(-3, 2))]);
        assert_eq!(h3.to_string(), "z^3 - 3/2 z");
        assert_eq!(p(&[(2, 1), (0, -1)]).to_string(), "z^2 - 1");
        assert_eq!(p(&[(1, -1), (-2, 4)]).to_string(), "-z + 4 z^-2");
        assert_eq!(LaurentPoly::<Rational>::zero().to_string(), "0");
        let c = |i| MomentPoly::symbol(MomentSymbol::c(i));
        let sym = LaurentPoly::from_terms([(-1, c(0).add_ref(&c(1))), (0, c(2).neg_ref())]);
        assert_eq!(sym.to_string(), "-c_2 + (c_0 + c_1) z^-1");
    }

    #[test]
    fn degrees_and_dense() {
        let a = p(&[(-2, 1), (3, 4)]);
        assert_eq!(a.min_degree(), Some(-2));
        assert_eq!(a.max_degree(), Some(3));
        assert!(!a.is_nonnegative());
        assert_eq!(a.dense_coeffs(), None);
        assert_eq!(p(&[(2, 1)]).dense_coeffs(), Some(vec![int(0), int(0), int(1)]));
    }
}
