use std::collections::BTreeMap;
use std::fmt;

use super::{format_rational, is_negative, Coeff, Rational};

/// Which generating series a moment belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    C,
    D,
    E,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::C => 'c',
            Family::D => 'd',
            Family::E => 'e',
        }
    }

    pub fn from_letter(s: &str) -> Option<Family> {
        match s {
            "c" | "C" => Some(Family::C),
            "d" | "D" => Some(Family::D),
            "e" | "E" => Some(Family::E),
            _ => None,
        }
    }
}

/// A formal moment variable such as `c_3` or `d_-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MomentSymbol {
    pub family: Family,
    pub index: i64,
}

impl MomentSymbol {
    pub fn new(family: Family, index: i64) -> Self {
        MomentSymbol { family, index }
    }

    pub fn c(index: i64) -> Self {
        Self::new(Family::C, index)
    }

    pub fn d(index: i64) -> Self {
        Self::new(Family::D, index)
    }

    pub fn e(index: i64) -> Self {
        Self::new(Family::E, index)
    }
}

impl fmt::Display for MomentSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.family.letter(), self.index)
    }
}

/// Product of symbols with positive exponents, sorted by symbol.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<(MomentSymbol, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn symbol(s: MomentSymbol) -> Self {
        Monomial(vec![(s, 1)])
    }

    pub fn from_factors(factors: impl IntoIterator<Item = (MomentSymbol, u32)>) -> Self {
        let mut merged: BTreeMap<MomentSymbol, u32> = BTreeMap::new();
        for (s, e) in factors {
            *merged.entry(s).or_insert(0) += e;
        }
        Monomial(merged.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn factors(&self) -> &[(MomentSymbol, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (n, (s, e)) in self.0.iter().enumerate() {
            if n > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Polynomial over the rationals in formal moment symbols.
///
/// Zero coefficients are never stored, so equality is structural.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MomentPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MomentPoly {
    pub fn constant(r: Rational) -> Self {
        let mut p = MomentPoly::default();
        p.add_term(Monomial::one(), r);
        p
    }

    pub fn symbol(s: MomentSymbol) -> Self {
        Self::monomial(Monomial::symbol(s), Coeff::one())
    }

    pub fn monomial(m: Monomial, coeff: Rational) -> Self {
        let mut p = MomentPoly::default();
        p.add_term(m, coeff);
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `m` (zero if absent).
    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Coeff::zero)
    }

    /// The rational constant, if this polynomial has no symbol-bearing term.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Coeff::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn symbols(&self) -> Vec<MomentSymbol> {
        let mut out: Vec<MomentSymbol> = self
            .terms
            .keys()
            .flat_map(|m| m.factors().iter().map(|&(s, _)| s))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if Coeff::is_zero(&c) {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = &*o.get() + &c;
                if Coeff::is_zero(&sum) {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// Evaluates the ring homomorphism determined by `image` on symbols.
    ///
    /// Each symbol is mapped once; products are formed in the target ring.
    pub fn eval_with<T: Coeff>(&self, mut image: impl FnMut(MomentSymbol) -> T) -> T {
        let mut cache: BTreeMap<MomentSymbol, T> = BTreeMap::new();
        let mut acc = T::zero();
        for (m, c) in &self.terms {
            let mut term = T::from_rational(c);
            for &(s, e) in m.factors() {
                let v = cache.entry(s).or_insert_with(|| image(s));
                term = term.mul_ref(&v.pow(e));
            }
            acc = acc.add_ref(&term);
        }
        acc
    }

    /// Substitutes rationals for every symbol.
    pub fn eval_rational(&self, image: impl FnMut(MomentSymbol) -> Rational) -> Rational {
        self.eval_with(image)
    }
}

impl Coeff for MomentPoly {
    fn zero() -> Self {
        MomentPoly::default()
    }
    fn one() -> Self {
        MomentPoly::constant(Coeff::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
    fn sub_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
    fn mul_ref(&self, other: &Self) -> Self {
        let mut out = MomentPoly::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
    fn neg_ref(&self) -> Self {
        MomentPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
    fn from_rational(r: &Rational) -> Self {
        MomentPoly::constant(r.clone())
    }
    fn scale(&self, r: &Rational) -> Self {
        if Coeff::is_zero(r) {
            return MomentPoly::default();
        }
        MomentPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * r)).collect(),
        }
    }
}

impl fmt::Display for MomentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Higher-degree terms first, ties in symbol order.
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| b.0.degree().cmp(&a.0.degree()).then_with(|| a.0.cmp(b.0)));
        for (n, (m, c)) in terms.into_iter().enumerate() {
            let neg = is_negative(c);
            let abs = if neg { -c } else { c.clone() };
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let unit = abs == Coeff::one();
            if m.is_one() {
                write!(f, "{}", format_rational(&abs))?;
            } else if unit {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", format_rational(&abs))?;
            }
        }
        Ok(())
    }
}
