//! Moment sequences `c_i`, `d_i`, `e_i`: the coefficients of the generating
//! series `C(z) = sum_i c_i z^(-i-1)` (and likewise `D`, `E`).
//!
//! A [`MomentSequence`] is either a finite window of exact rationals, a named
//! classical sequence, or a family of formal symbols. Numeric code reads it
//! through [`Numeric`], symbolic code through [`Symbolic`]; both implement
//! [`MomentSource`].

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{format_rational, parse_rational, Coeff, Family, MomentPoly, MomentSymbol, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedSequence {
    /// `c_i` = i-th Catalan number.
    Catalan,
    /// Moments of `exp(-z^2)` divided by `sqrt(pi)`: `c_2m = (2m-1)!!/2^m`.
    Hermite,
}

impl NamedSequence {
    pub fn name(self) -> &'static str {
        match self {
            NamedSequence::Catalan => "catalan",
            NamedSequence::Hermite => "hermite",
        }
    }

    fn value(self, i: i64) -> Rational {
        if i < 0 {
            return Coeff::zero();
        }
        match self {
            NamedSequence::Catalan => {
                let n = i as u64;
                let mut binom = BigUint::one();
                for j in 0..n {
                    binom = binom * BigUint::from(2 * n - j) / BigUint::from(j + 1);
                }
                Rational::from_integer(BigInt::from(binom / BigUint::from(n + 1)))
            }
            NamedSequence::Hermite => {
                if i % 2 == 1 {
                    return Coeff::zero();
                }
                let m = i / 2;
                let double_fact = (1..=m).fold(BigInt::one(), |acc, j| acc * BigInt::from(2 * j - 1));
                Rational::new(double_fact, BigInt::one() << (m as usize))
            }
        }
    }
}

/// Where a sequence can be nonzero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Support {
    /// Identically zero.
    Empty,
    /// Zero outside `lo..=hi`.
    Finite { lo: i64, hi: i64 },
    /// Nonzero at arbitrarily large indices.
    Unbounded,
}

#[derive(Debug, Clone, PartialEq)]
pub enum MomentSequence {
    /// `values[j]` is the moment at index `lo + j`; zero elsewhere.
    Window {
        lo: i64,
        values: Vec<Rational>,
    },
    Named(NamedSequence),
    /// The formal symbols of one family.
    Formal(Family),
}

impl MomentSequence {
    pub fn window(lo: i64, values: Vec<Rational>) -> Self {
        MomentSequence::Window { lo, values }
    }

    pub fn zero() -> Self {
        MomentSequence::Window {
            lo: 0,
            values: Vec::new(),
        }
    }

    pub fn catalan() -> Self {
        MomentSequence::Named(NamedSequence::Catalan)
    }

    pub fn hermite() -> Self {
        MomentSequence::Named(NamedSequence::Hermite)
    }

    pub fn formal(family: Family) -> Self {
        MomentSequence::Formal(family)
    }

    pub fn is_formal(&self) -> bool {
        matches!(self, MomentSequence::Formal(_))
    }

    /// The moment at `i` as a rational, `None` for formal sequences.
    pub fn get_rational(&self, i: i64) -> Option<Rational> {
        match self {
            MomentSequence::Window { lo, values } => Some(
                usize::try_from(i - lo)
                    .ok()
                    .and_then(|j| values.get(j).cloned())
                    .unwrap_or_else(Coeff::zero),
            ),
            MomentSequence::Named(n) => Some(n.value(i)),
            MomentSequence::Formal(_) => None,
        }
    }

    /// The moment at `i`; total for every kind of sequence.
    pub fn get(&self, i: i64) -> MomentPoly {
        match self {
            MomentSequence::Formal(f) => MomentPoly::symbol(MomentSymbol::new(*f, i)),
            _ => MomentPoly::constant(self.get_rational(i).expect("numeric sequence")),
        }
    }

    pub fn support(&self) -> Support {
        match self {
            MomentSequence::Window { lo, values } => {
                let first = values.iter().position(|v| !v.is_zero());
                let last = values.iter().rposition(|v| !v.is_zero());
                match (first, last) {
                    (Some(a), Some(b)) => Support::Finite {
                        lo: lo + a as i64,
                        hi: lo + b as i64,
                    },
                    _ => Support::Empty,
                }
            }
            MomentSequence::Named(_) | MomentSequence::Formal(_) => Support::Unbounded,
        }
    }

    pub fn is_identically_zero(&self) -> bool {
        self.support() == Support::Empty
    }

    /// Window holding this sequence's values on `lo..=hi`.
    ///
    /// For named sequences this is the truncated support used wherever
    /// finite support is required.
    pub fn truncated(&self, lo: i64, hi: i64) -> Result<MomentSequence> {
        if self.is_formal() {
            return Err(Error::Precondition("cannot truncate a formal sequence".into()));
        }
        let values = (lo..=hi).map(|i| self.get_rational(i).expect("numeric")).collect();
        Ok(MomentSequence::Window { lo, values })
    }

    /// Numeric view; fails for formal sequences.
    pub fn numeric(&self) -> Result<Numeric<'_>> {
        if self.is_formal() {
            return Err(Error::Precondition(
                "numeric evaluation requested on formal moments".into(),
            ));
        }
        Ok(Numeric(self))
    }

    pub fn symbolic(&self) -> Symbolic<'_> {
        Symbolic(self)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&MomentSpec::from(self)).expect("moment spec serializes")
    }
}

/// Read access to a moment sequence in some coefficient ring.
pub trait MomentSource {
    type Value: Coeff;
    fn moment(&self, i: i64) -> Self::Value;
    fn support(&self) -> Support;
}

/// Rational reading of a non-formal sequence.
#[derive(Debug, Clone, Copy)]
pub struct Numeric<'a>(&'a MomentSequence);

impl MomentSource for Numeric<'_> {
    type Value = Rational;
    fn moment(&self, i: i64) -> Rational {
        self.0.get_rational(i).expect("checked at construction")
    }
    fn support(&self) -> Support {
        self.0.support()
    }
}

/// Reading of any sequence in the ring of moment polynomials.
#[derive(Debug, Clone, Copy)]
pub struct Symbolic<'a>(&'a MomentSequence);

impl MomentSource for Symbolic<'_> {
    type Value = MomentPoly;
    fn moment(&self, i: i64) -> MomentPoly {
        self.0.get(i)
    }
    fn support(&self) -> Support {
        self.0.support()
    }
}

/// `C^(alpha)`: the series whose i-th moment is `c_{i + alpha}`.
#[derive(Debug, Clone, Copy)]
pub struct SeriesView<'a> {
    pub seq: &'a MomentSequence,
    pub shift: i64,
}

pub fn shifted(seq: &MomentSequence, alpha: i64) -> SeriesView<'_> {
    SeriesView { seq, shift: alpha }
}

impl<'a> SeriesView<'a> {
    pub fn view(&self, i: i64) -> MomentPoly {
        self.seq.get(i + self.shift)
    }

    pub fn shifted(&self, alpha: i64) -> SeriesView<'a> {
        SeriesView {
            seq: self.seq,
            shift: self.shift + alpha,
        }
    }
}

/// The three moment families of the GL3 construction. GL2 uses only `c`.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentFamilies {
    pub c: MomentSequence,
    pub d: MomentSequence,
    pub e: MomentSequence,
}

impl MomentFamilies {
    pub fn gl2(c: MomentSequence) -> Self {
        MomentFamilies {
            c,
            d: MomentSequence::zero(),
            e: MomentSequence::zero(),
        }
    }

    pub fn get(&self, family: Family) -> &MomentSequence {
        match family {
            Family::C => &self.c,
            Family::D => &self.d,
            Family::E => &self.e,
        }
    }

    /// Value of a symbol, `None` if its family is formal.
    pub fn value(&self, s: MomentSymbol) -> Option<Rational> {
        self.get(s.family).get_rational(s.index)
    }
}

/// JSON form of a moment sequence; rationals are strings `"p/q"` or `"n"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum MomentSpec {
    Window {
        lo: i64,
        values: Vec<String>,
    },
    Named {
        name: String,
    },
    /// Window on `lo..=hi` with numerators uniform in
    /// `[-max_abs_num, max_abs_num]` and denominators uniform in
    /// `[1, max_den]`, drawn from `ChaCha8Rng::seed_from_u64(seed)`.
    Random {
        seed: u64,
        lo: i64,
        hi: i64,
        max_abs_num: i64,
        max_den: i64,
    },
    Formal {
        family: String,
    },
}

impl From<&MomentSequence> for MomentSpec {
    fn from(seq: &MomentSequence) -> Self {
        match seq {
            MomentSequence::Window { lo, values } => MomentSpec::Window {
                lo: *lo,
                values: values.iter().map(format_rational).collect(),
            },
            MomentSequence::Named(n) => MomentSpec::Named {
                name: n.name().to_string(),
            },
            MomentSequence::Formal(f) => MomentSpec::Formal {
                family: f.letter().to_string(),
            },
        }
    }
}

pub fn build_moments(spec: &MomentSpec) -> Result<MomentSequence> {
    match spec {
        MomentSpec::Window { lo, values } => {
            let values = values
                .iter()
                .enumerate()
                .map(|(j, s)| {
                    parse_rational(s)
                        .ok_or_else(|| Error::parse(format!("values[{j}]"), format!("not a rational: {s:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(MomentSequence::Window { lo: *lo, values })
        }
        MomentSpec::Named { name } => match name.as_str() {
            "catalan" => Ok(MomentSequence::catalan()),
            "hermite" => Ok(MomentSequence::hermite()),
            other => Err(Error::parse("name", format!("unknown named sequence {other:?}"))),
        },
        MomentSpec::Random {
            seed,
            lo,
            hi,
            max_abs_num,
            max_den,
        } => {
            if hi < lo {
                return Err(Error::parse("hi", format!("hi = {hi} is below lo = {lo}")));
            }
            if *max_abs_num < 0 {
                return Err(Error::parse("max_abs_num", "must be nonnegative"));
            }
            if *max_den < 1 {
                return Err(Error::parse("max_den", "must be at least 1"));
            }
            Ok(random_window(*seed, *lo, *hi, *max_abs_num, *max_den))
        }
        MomentSpec::Formal { family } => Family::from_letter(family)
            .map(MomentSequence::Formal)
            .ok_or_else(|| Error::parse("family", format!("unknown family {family:?}"))),
    }
}

pub fn random_window(seed: u64, lo: i64, hi: i64, max_abs_num: i64, max_den: i64) -> MomentSequence {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values = (lo..=hi)
        .map(|_| {
            let num = rng.random_range(-max_abs_num..=max_abs_num);
            let den = rng.random_range(1..=max_den);
            Rational::new(BigInt::from(num), BigInt::from(den))
        })
        .collect();
    MomentSequence::Window { lo, values }
}

/// Parses a moment sequence from its JSON form.
pub fn parse_moments(json: &str) -> Result<MomentSequence> {
    let spec: MomentSpec = serde_json::from_str(json).map_err(|e| Error::parse("moments", e.to_string()))?;
    build_moments(&spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{int, rat};

    #[test]
    fn window_is_total() {
        let s = parse_moments(r#"{"kind":"window","lo":0,"values":["1","1","2","5"]}"#).unwrap();
        assert_eq!(s.get_rational(2), Some(int(2)));
        assert_eq!(s.get_rational(-1), Some(int(0)));
        assert_eq!(s.get_rational(4), Some(int(0)));
        assert_eq!(s.support(), Support::Finite { lo: 0, hi: 3 });
    }

    #[test]
    fn catalan_matches_convolution_recurrence() {
        // oracle: c_{n+1} = sum_j c_j c_{n-j}, c_0 = 1
        let mut oracle = vec![int(1)];
        for n in 0..12 {
            let next = (0..=n).fold(int(0), |acc, j| acc + &oracle[j] * &oracle[n - j]);
            oracle.push(next);
        }
        let s = MomentSequence::catalan();
        for (i, v) in oracle.iter().enumerate() {
            assert_eq!(s.get_rational(i as i64).as_ref(), Some(v));
        }
        let first: Vec<_> = (0..7).map(|i| s.get_rational(i).unwrap()).collect();
        assert_eq!(first, [1, 1, 2, 5, 14, 42, 132].map(int));
        assert_eq!(s.get_rational(-3), Some(int(0)));
    }

    #[test]
    fn hermite_matches_double_factorial_recurrence() {
        // oracle: c_0 = 1, c_{2m+2} = c_{2m} (2m+1)/2, odd moments vanish
        let s = MomentSequence::hermite();
        let mut even = int(1);
        for m in 0..8 {
            assert_eq!(s.get_rational(2 * m), Some(even.clone()));
            assert_eq!(s.get_rational(2 * m + 1), Some(int(0)));
            even = even * rat(2 * m + 1, 2);
        }
        assert_eq!(s.get_rational(6), Some(rat(15, 8)));
        assert_eq!(s.get_rational(-2), Some(int(0)));
    }

    #[test]
    fn parse_errors_name_the_field() {
        let err = parse_moments(r#"{"kind":"window","lo":0,"values":["1","x/2"]}"#).unwrap_err();
        assert!(
            matches!(&err, Error::Parse { field, .. } if field == "values[1]"),
            "{err}"
        );
        let err = parse_moments(r#"{"kind":"named","name":"legendre"}"#).unwrap_err();
        assert!(matches!(&err, Error::Parse { field, .. } if field == "name"), "{err}");
        assert!(parse_moments("{not json").is_err());
        assert!(parse_moments(r#"{"kind":"random","seed":1,"lo":3,"hi":1,"max_abs_num":2,"max_den":2}"#).is_err());
    }

    #[test]
    fn random_is_deterministic() {
        let spec = r#"{"kind":"random","seed":42,"lo":-2,"hi":4,"max_abs_num":5,"max_den":3}"#;
        let a = parse_moments(spec).unwrap();
        let b = parse_moments(spec).unwrap();
        assert_eq!(a, b);
        match &a {
            MomentSequence::Window { lo, values } => {
                assert_eq!(*lo, -2);
                assert_eq!(values.len(), 7);
            }
            _ => panic!("random builds a window"),
        }
        assert_ne!(a, random_window(43, -2, 4, 5, 3));
    }

    #[test]
    fn shift_views() {
        let cat = MomentSequence::catalan();
        assert_eq!(shifted(&cat, 2).view(0), MomentPoly::constant(int(2)));
        assert_eq!(shifted(&cat, 0).view(5), cat.get(5));
        let formal = MomentSequence::formal(Family::C);
        assert_eq!(shifted(&formal, 3).view(0), MomentPoly::symbol(MomentSymbol::c(3)));
    }

    #[test]
    fn truncation_of_named() {
        let t = MomentSequence::catalan().truncated(0, 6).unwrap();
        assert_eq!(t.get_rational(6), Some(int(132)));
        assert_eq!(t.get_rational(7), Some(int(0)));
        assert!(MomentSequence::formal(Family::C).truncated(0, 2).is_err());
    }
}
