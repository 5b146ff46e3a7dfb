//! GL2 tau-functions `tau_k^(alpha)`.
//!
//! For `k > 0` these are the `k x k` Hankel determinants
//! `det[c_{alpha+i+j}]`, with `tau_0 = 1` and `tau_k = 0` for `k < 0`. The
//! same values come out of the symmetrized residue formula
//! `(1/k!) Res_w prod_{i<j} (w_i - w_j)^2 prod_i C^(alpha)(w_i)`, and the
//! whole table obeys the Q-system
//! `tau_k^(a) tau_{k-2}^(a+2) = tau_{k-1}^(a+2) tau_{k-1}^(a) - (tau_{k-1}^(a+1))^2`.

use std::collections::{BTreeMap, HashMap};
use std::ops::RangeInclusive;

use crate::error::{Error, Result, TauIndex};
use crate::moments::MomentSource;
use crate::report::VerificationReport;
use crate::residue::iterated_residue;
use crate::ring::{factorial, Coeff, DenseMatrix, Field, MultiLaurent, Rational};

/// Largest `k` accepted by [`tau_residue`] unless overridden.
pub const DEFAULT_RESIDUE_BOUND: usize = 5;

/// `[c_{alpha+i+j}]_{0 <= i,j < k}`.
pub fn hankel_matrix<S: MomentSource>(k: usize, alpha: i64, src: &S) -> DenseMatrix<S::Value> {
    DenseMatrix::from_fn(k, k, |i, j| src.moment(alpha + (i + j) as i64))
}

pub fn tau_det<S: MomentSource>(k: i64, alpha: i64, src: &S) -> S::Value {
    match k {
        k if k < 0 => S::Value::zero(),
        0 => S::Value::one(),
        k => hankel_matrix(k as usize, alpha, src).det(),
    }
}

/// Tau by iterated residues, innermost variable `w_k` first.
///
/// Needs no finite support: each residue pairs a Laurent polynomial with
/// the full two-sided series, which only ever reads finitely many moments.
pub fn tau_residue<S: MomentSource>(k: i64, alpha: i64, src: &S, max_k: usize) -> Result<S::Value> {
    if k < 0 {
        return Ok(S::Value::zero());
    }
    let n = k as usize;
    if n > max_k {
        return Err(Error::Resource {
            what: format!("GL2 residue formula for tau_{k}^({alpha})"),
            requested: n,
            limit: max_k,
        });
    }
    let mut factors = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let d = MultiLaurent::difference(n, i, j);
            factors.push(d.mul_ref(&d));
        }
    }
    let order: Vec<usize> = (0..n).rev().collect();
    let raw = iterated_residue(n, factors, &order, |_, e| src.moment(alpha + e));
    let inv = Rational::new(1.into(), factorial(n));
    Ok(raw.scale(&inv))
}

/// Table of GL2 tau values keyed by `(k, alpha)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TauGridGL2<R> {
    entries: BTreeMap<(i64, i64), R>,
}

impl<R: Coeff> TauGridGL2<R> {
    pub fn new() -> Self {
        TauGridGL2 {
            entries: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, k: i64, alpha: i64, value: R) {
        self.entries.insert((k, alpha), value);
    }

    /// Stored value; `k < 0` and `k = 0` follow the boundary conventions.
    pub fn get(&self, k: i64, alpha: i64) -> Option<R> {
        match k {
            k if k < 0 => Some(R::zero()),
            0 => Some(R::one()),
            _ => self.entries.get(&(k, alpha)).cloned(),
        }
    }

    /// Stored entries in `(k, alpha)` order.
    pub fn entries(&self) -> impl Iterator<Item = ((i64, i64), &R)> {
        self.entries.iter().map(|(&key, v)| (key, v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl<R: Coeff> Default for TauGridGL2<R> {
    fn default() -> Self {
        Self::new()
    }
}

/// Determinant grid over `ks x alphas`.
pub fn tau_grid_det<S: MomentSource>(
    src: &S,
    ks: RangeInclusive<i64>,
    alphas: RangeInclusive<i64>,
) -> TauGridGL2<S::Value> {
    let mut grid = TauGridGL2::new();
    for k in ks {
        for alpha in alphas.clone() {
            grid.insert(k, alpha, tau_det(k, alpha, src));
        }
    }
    grid
}

/// Fills `k = 0..=k_max` by condensation from rows 0 and 1.
///
/// Lower rows are computed on a wider alpha window so every requested
/// entry is reachable; all computed entries are kept.
pub fn fill_grid_recurrence<S>(src: &S, k_max: i64, alphas: RangeInclusive<i64>) -> Result<TauGridGL2<S::Value>>
where
    S: MomentSource,
    S::Value: Field,
{
    let (a_lo, a_hi) = (*alphas.start(), *alphas.end());
    let mut grid = TauGridGL2::new();
    if k_max < 0 || a_hi < a_lo {
        return Ok(grid);
    }
    let top = |k: i64| a_hi + 2 * (k_max - k);
    for alpha in a_lo..=top(0) {
        grid.insert(0, alpha, S::Value::one());
    }
    for k in 1..=k_max {
        for alpha in a_lo..=top(k) {
            let value = if k == 1 {
                src.moment(alpha)
            } else {
                let t = |kk: i64, aa: i64| grid.get(kk, aa).expect("lower rows filled");
                let num = t(k - 1, alpha + 2)
                    .mul_ref(&t(k - 1, alpha))
                    .sub_ref(&t(k - 1, alpha + 1).pow(2));
                let den = t(k - 2, alpha + 2);
                num.checked_div(&den).ok_or_else(|| {
                    Error::degenerate(
                        TauIndex::Gl2 {
                            k: k - 2,
                            alpha: alpha + 2,
                        },
                        format!("denominator while filling tau_{k}^({alpha})"),
                    )
                })?
            };
            grid.insert(k, alpha, value);
        }
    }
    Ok(grid)
}

/// Memoized determinant lookup shared by the verification routines.
pub(crate) struct TauTable<'a, S: MomentSource> {
    src: &'a S,
    memo: HashMap<(i64, i64), S::Value>,
}

impl<'a, S: MomentSource> TauTable<'a, S> {
    pub(crate) fn new(src: &'a S) -> Self {
        TauTable {
            src,
            memo: HashMap::new(),
        }
    }

    pub(crate) fn get(&mut self, k: i64, alpha: i64) -> S::Value {
        if k <= 0 {
            return tau_det(k, alpha, self.src);
        }
        let src = self.src;
        self.memo
            .entry((k, alpha))
            .or_insert_with(|| tau_det(k, alpha, src))
            .clone()
    }
}

/// Checks the Q-system at every `(k, alpha)`, using determinant values.
pub fn verify_qsystem<S: MomentSource>(
    src: &S,
    ks: RangeInclusive<i64>,
    alphas: RangeInclusive<i64>,
) -> VerificationReport {
    let mut table = TauTable::new(src);
    let mut report = VerificationReport::new();
    for k in ks {
        for alpha in alphas.clone() {
            let (lhs, rhs) = qsystem_sides(&mut |kk, aa| table.get(kk, aa), k, alpha);
            report.record("qsystem", &[("k", k), ("alpha", alpha)], &lhs, &rhs);
        }
    }
    report
}

/// Both sides of the Q-system at `(k, alpha)`.
pub fn qsystem_sides<R: Coeff>(tau: &mut impl FnMut(i64, i64) -> R, k: i64, alpha: i64) -> (R, R) {
    let lhs = tau(k, alpha).mul_ref(&tau(k - 2, alpha + 2));
    let rhs = tau(k - 1, alpha + 2)
        .mul_ref(&tau(k - 1, alpha))
        .sub_ref(&tau(k - 1, alpha + 1).pow(2));
    (lhs, rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::MomentSequence;
    use crate::ring::{int, rat, Family, MomentPoly, MomentSymbol};

    #[test]
    fn boundary_values() {
        let cat = MomentSequence::catalan();
        let src = cat.numeric().unwrap();
        assert_eq!(tau_det(-2, 5, &src), int(0));
        assert_eq!(tau_det(0, -7, &src), int(1));
        assert_eq!(tau_residue(0, 3, &src, 5).unwrap(), int(1));
        assert_eq!(tau_residue(1, 3, &src, 5).unwrap(), int(5));
    }

    #[test]
    fn catalan_hankel_values() {
        let cat = MomentSequence::catalan();
        let src = cat.numeric().unwrap();
        assert_eq!(tau_det(3, 0, &src), int(1));
        assert_eq!(tau_det(3, 2, &src), int(4));
    }

    #[test]
    fn formal_k2_by_both_routes() {
        let formal = MomentSequence::formal(Family::C);
        let src = formal.symbolic();
        let c = |i| MomentPoly::symbol(MomentSymbol::c(i));
        for alpha in [-1, 0, 4] {
            let expected = c(alpha).mul_ref(&c(alpha + 2)).sub_ref(&c(alpha + 1).pow(2));
            assert_eq!(tau_det(2, alpha, &src), expected);
            assert_eq!(tau_residue(2, alpha, &src, 5).unwrap(), expected);
        }
    }

    #[test]
    fn residue_bound_is_enforced() {
        let cat = MomentSequence::catalan();
        let err = tau_residue(6, 0, &cat.numeric().unwrap(), 5).unwrap_err();
        assert!(matches!(
            err,
            Error::Resource {
                requested: 6,
                limit: 5,
                ..
            }
        ));
    }

    #[test]
    fn hermite_condensation() {
        let h = MomentSequence::hermite();
        let src = h.numeric().unwrap();
        let grid = fill_grid_recurrence(&src, 3, 0..=0).unwrap();
        assert_eq!(grid.get(1, 0), Some(int(1)));
        assert_eq!(grid.get(2, 0), Some(rat(1, 2)));
        assert_eq!(grid.get(3, 0), Some(rat(1, 4)));
        for ((k, alpha), v) in grid.entries() {
            assert_eq!(*v, tau_det(k, alpha, &src), "k={k} alpha={alpha}");
        }
        // odd moments vanish, so tau_1^(odd) sits in a denominator
        let err = fill_grid_recurrence(&src, 4, 0..=0).unwrap_err();
        assert!(matches!(err, Error::Degenerate { .. }));
    }

    #[test]
    fn all_zero_moments_degenerate() {
        let z = MomentSequence::zero();
        let src = z.numeric().unwrap();
        assert!(fill_grid_recurrence(&src, 2, 0..=0).is_ok());
        let err = fill_grid_recurrence(&src, 3, 0..=0).unwrap_err();
        assert_eq!(
            err,
            Error::degenerate(TauIndex::Gl2 { k: 1, alpha: 2 }, "denominator while filling tau_3^(0)")
        );
    }

    #[test]
    fn qsystem_examples() {
        let cat = MomentSequence::catalan();
        let src = cat.numeric().unwrap();
        let mut t = |k, a| tau_det(k, a, &src);
        assert_eq!(qsystem_sides(&mut t, 1, 7), (int(0), int(0)));
        assert_eq!(qsystem_sides(&mut t, 3, 0), (int(2), int(2)));
        let report = verify_qsystem(&src, 0..=6, 0..=2);
        assert_eq!(report.total(), 21);
        assert!(report.all_pass());
    }
}
