//! GL3 tau-functions `tau_{k,l}^(alpha,beta)` built from three moment
//! series `C`, `D`, `E`.
//!
//! The general value is a sum over kernels `(n_c, n_d, n_e)` with
//! `n_c + n_d = k`, `n_e + n_d = l` of iterated residues of
//! `prod C^(alpha-beta)(x_i) prod D^(alpha)(y_i) prod E^(beta)(z_i)` against
//!
//! ```text
//! (-1)^(n_d(n_d+1)/2) V(x)^2 V(y)^2 V(z)^2 prod (x_i - y_j) prod (y_i - z_j)
//!                     / prod (x_i - z_j)
//! ```
//!
//! where each `1/(x_i - z_j)` is expanded in nonnegative powers of `z_j`.
//! For finite-support windows the expansion is cut exactly where further
//! terms can only meet vanishing moments. When `E = 0` only the kernel
//! `(k - l, l, 0)` survives and the value is a signed block-Hankel
//! determinant.

use std::collections::{BTreeMap, HashMap};
use std::ops::RangeInclusive;

use crate::error::{Error, Result};
use crate::moments::{MomentFamilies, MomentSequence, MomentSource, Support};
use crate::report::VerificationReport;
use crate::residue::iterated_residue;
use crate::ring::{factorial, Coeff, DenseMatrix, MultiLaurent, Rational};

/// Largest number of residue variables `n_c + n_d + n_e` per kernel
/// accepted by [`tau3_residue`] unless overridden.
pub const DEFAULT_KERNEL_BOUND: usize = 5;

/// One summand of the GL3 residue formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KernelSpec {
    pub n_c: usize,
    pub n_d: usize,
    pub n_e: usize,
}

impl KernelSpec {
    /// `(-1)^(n_d (n_d + 1) / 2)`.
    pub fn sign(&self) -> i64 {
        if (self.n_d * (self.n_d + 1) / 2) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn variables(&self) -> usize {
        self.n_c + self.n_d + self.n_e
    }
}

/// All kernels contributing to `tau_{k,l}`: one per `n_d` in `0..=min(k, l)`.
pub fn kernel_specs(k: i64, l: i64) -> Vec<KernelSpec> {
    if k < 0 || l < 0 {
        return Vec::new();
    }
    (0..=k.min(l))
        .map(|n_d| KernelSpec {
            n_c: (k - n_d) as usize,
            n_d: n_d as usize,
            n_e: (l - n_d) as usize,
        })
        .collect()
}

fn finite_bounds(seq: &MomentSequence) -> Option<Option<(i64, i64)>> {
    match seq.support() {
        Support::Empty => Some(None),
        Support::Finite { lo, hi } => Some(Some((lo, hi))),
        Support::Unbounded => None,
    }
}

/// Tau by the residue formula.
///
/// `C` needs a finite lower support bound and `E` a finite upper one
/// whenever a kernel pairs `x`'s with `z`'s; otherwise any numeric
/// sequences are accepted.
pub fn tau3_residue(
    k: i64,
    l: i64,
    alpha: i64,
    beta: i64,
    c: &MomentSequence,
    d: &MomentSequence,
    e: &MomentSequence,
    max_vars: usize,
) -> Result<Rational> {
    let (cs, ds, es) = (c.numeric()?, d.numeric()?, e.numeric()?);
    let mut total = Rational::zero();
    for spec in kernel_specs(k, l) {
        let vanishes = (spec.n_c > 0 && c.is_identically_zero())
            || (spec.n_d > 0 && d.is_identically_zero())
            || (spec.n_e > 0 && e.is_identically_zero());
        if vanishes {
            continue;
        }
        if spec.variables() > max_vars {
            return Err(Error::Resource {
                what: format!(
                    "GL3 kernel (n_c, n_d, n_e) = ({}, {}, {}) for tau_{{{k},{l}}}",
                    spec.n_c, spec.n_d, spec.n_e
                ),
                requested: spec.variables(),
                limit: max_vars,
            });
        }
        let value = kernel_residue(spec, alpha, beta, c, &cs, &ds, e, &es)?;
        if value.is_zero() {
            continue;
        }
        let norm = factorial(spec.n_c) * factorial(spec.n_d) * factorial(spec.n_e);
        let weight = Rational::new(spec.sign().into(), norm);
        total = total.add_ref(&value.mul_ref(&weight));
    }
    Ok(total)
}

#[allow(clippy::too_many_arguments)]
fn kernel_residue<S: MomentSource<Value = Rational>>(
    spec: KernelSpec,
    alpha: i64,
    beta: i64,
    c: &MomentSequence,
    cs: &S,
    ds: &S,
    e: &MomentSequence,
    es: &S,
) -> Result<Rational> {
    let KernelSpec { n_c, n_d, n_e } = spec;
    let n = spec.variables();
    let x = |i: usize| i;
    let y = |i: usize| n_c + i;
    let z = |i: usize| n_c + n_d + i;

    let mut factors = Vec::new();
    for (count, var) in [(n_c, 0), (n_d, n_c), (n_e, n_c + n_d)] {
        for i in 0..count {
            for j in i + 1..count {
                let diff = MultiLaurent::difference(n, var + i, var + j);
                factors.push(diff.mul_ref(&diff));
            }
        }
    }
    for i in 0..n_c {
        for j in 0..n_d {
            factors.push(MultiLaurent::difference(n, x(i), y(j)));
        }
    }
    for i in 0..n_d {
        for j in 0..n_e {
            factors.push(MultiLaurent::difference(n, y(i), z(j)));
        }
    }
    if n_c > 0 && n_e > 0 {
        let (c_lo, e_hi) = match (finite_bounds(c), finite_bounds(e)) {
            (Some(None), _) | (_, Some(None)) => return Ok(Rational::zero()),
            (Some(Some((lo, _))), Some(Some((_, hi)))) => (lo, hi),
            _ => {
                return Err(Error::Precondition(
                    "the underline expansion needs finite support for C and E".into(),
                ))
            }
        };
        // x_i ends with exponent at most x_top - (m + n_e), which must still
        // reach c_lo; z_j ends with exponent at least m, which must stay
        // within e_hi.
        let x_top = (2 * (n_c as i64 - 1) + n_d as i64).max(0);
        let max_m = (x_top + alpha - beta - c_lo - n_e as i64).min(e_hi - beta);
        for i in 0..n_c {
            for j in 0..n_e {
                factors.push(MultiLaurent::geometric(n, x(i), z(j), max_m));
            }
        }
    }
    let mut order: Vec<usize> = (0..n_e).rev().map(z).collect();
    order.extend((0..n_d).rev().map(y));
    order.extend((0..n_c).rev().map(x));
    Ok(iterated_residue(n, factors, &order, |v, exp| {
        if v < n_c {
            cs.moment(alpha - beta + exp)
        } else if v < n_c + n_d {
            ds.moment(alpha + exp)
        } else {
            es.moment(beta + exp)
        }
    }))
}

/// `(-1)^(l(l+1)/2)`.
pub fn e0_sign(l: i64) -> i64 {
    if (l * (l + 1) / 2) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The `k x k` block-Hankel matrix of the `E = 0` closed form: columns
/// `j < l` hold `d_{alpha+i+j}`, columns `j >= l` hold `c_{alpha-beta+i+j-l}`.
pub fn e0_matrix<S: MomentSource>(k: usize, l: usize, alpha: i64, beta: i64, c: &S, d: &S) -> DenseMatrix<S::Value> {
    DenseMatrix::from_fn(k, k, |i, j| {
        if j < l {
            d.moment(alpha + (i + j) as i64)
        } else {
            c.moment(alpha - beta + (i + j - l) as i64)
        }
    })
}

/// Closed form of `tau_{k,l}` when `E = 0`.
pub fn tau3_e0_det<S: MomentSource>(k: i64, l: i64, alpha: i64, beta: i64, c: &S, d: &S) -> S::Value {
    if k < 0 || l < 0 || k < l {
        return S::Value::zero();
    }
    if k == 0 {
        return S::Value::one();
    }
    let det = e0_matrix(k as usize, l as usize, alpha, beta, c, d).det();
    if e0_sign(l) < 0 {
        det.neg_ref()
    } else {
        det
    }
}

/// How GL3 tau values are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tau3Method {
    /// Block-Hankel determinant; requires `E = 0`.
    E0Determinant,
    /// Residue formula with the given per-kernel variable bound.
    Residue { max_vars: usize },
}

impl Tau3Method {
    /// Determinant when `E` vanishes identically, residues otherwise.
    pub fn auto(families: &MomentFamilies, max_vars: usize) -> Self {
        if families.e.is_identically_zero() {
            Tau3Method::E0Determinant
        } else {
            Tau3Method::Residue { max_vars }
        }
    }
}

pub fn tau3(k: i64, l: i64, alpha: i64, beta: i64, families: &MomentFamilies, method: Tau3Method) -> Result<Rational> {
    if k < 0 || l < 0 {
        return Ok(Rational::zero());
    }
    match method {
        Tau3Method::E0Determinant => {
            if !families.e.is_identically_zero() {
                return Err(Error::Precondition(
                    "the E = 0 determinant was requested but E does not vanish".into(),
                ));
            }
            Ok(tau3_e0_det(
                k,
                l,
                alpha,
                beta,
                &families.c.numeric()?,
                &families.d.numeric()?,
            ))
        }
        Tau3Method::Residue { max_vars } => {
            tau3_residue(k, l, alpha, beta, &families.c, &families.d, &families.e, max_vars)
        }
    }
}

/// Memoized GL3 tau lookup.
pub struct Tau3Table<'a> {
    families: &'a MomentFamilies,
    method: Tau3Method,
    memo: HashMap<(i64, i64, i64, i64), Rational>,
}

impl<'a> Tau3Table<'a> {
    pub fn new(families: &'a MomentFamilies, method: Tau3Method) -> Self {
        Tau3Table {
            families,
            method,
            memo: HashMap::new(),
        }
    }

    pub fn get(&mut self, k: i64, l: i64, alpha: i64, beta: i64) -> Result<Rational> {
        if k < 0 || l < 0 {
            return Ok(Rational::zero());
        }
        if let Some(v) = self.memo.get(&(k, l, alpha, beta)) {
            return Ok(v.clone());
        }
        let v = tau3(k, l, alpha, beta, self.families, self.method)?;
        self.memo.insert((k, l, alpha, beta), v.clone());
        Ok(v)
    }
}

/// Table of GL3 tau values keyed by `(k, l, alpha, beta)`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TauGridGL3 {
    entries: BTreeMap<(i64, i64, i64, i64), Rational>,
}

impl TauGridGL3 {
    pub fn get(&self, k: i64, l: i64, alpha: i64, beta: i64) -> Option<Rational> {
        if k < 0 || l < 0 {
            return Some(Rational::zero());
        }
        self.entries.get(&(k, l, alpha, beta)).cloned()
    }

    pub fn entries(&self) -> impl Iterator<Item = ((i64, i64, i64, i64), &Rational)> {
        self.entries.iter().map(|(&key, v)| (key, v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

pub fn tau3_grid(
    families: &MomentFamilies,
    ks: RangeInclusive<i64>,
    ls: RangeInclusive<i64>,
    alphas: RangeInclusive<i64>,
    betas: RangeInclusive<i64>,
    method: Tau3Method,
) -> Result<TauGridGL3> {
    let mut table = Tau3Table::new(families, method);
    let mut grid = TauGridGL3::default();
    for k in ks {
        for l in ls.clone() {
            for alpha in alphas.clone() {
                for beta in betas.clone() {
                    let v = table.get(k, l, alpha, beta)?;
                    grid.entries.insert((k, l, alpha, beta), v);
                }
            }
        }
    }
    Ok(grid)
}

/// Both sides of relation `which` (1 to 4) at `(k, l, alpha, beta)`,
/// evaluated exactly as the relations are stated.
pub fn gl3_relation_sides<R: Coeff>(
    tau: &mut impl FnMut(i64, i64, i64, i64) -> Result<R>,
    which: u8,
    k: i64,
    l: i64,
    a: i64,
    b: i64,
) -> Result<(R, R)> {
    Ok(match which {
        1 => {
            let lhs = tau(k, l, a + 1, b)?.pow(2);
            let rhs = tau(k, l, a, b)?
                .mul_ref(&tau(k, l, a + 2, b)?)
                .add_ref(&tau(k + 1, l + 1, a, b)?.mul_ref(&tau(k - 1, l - 1, a + 2, b)?))
                .sub_ref(&tau(k + 1, l, a, b)?.mul_ref(&tau(k - 1, l, a + 2, b)?));
            (lhs, rhs)
        }
        2 => {
            let lhs = tau(k, l, a + 1, b)?.mul_ref(&tau(k, l - 1, a + 2, b)?);
            let rhs = tau(k - 1, l - 1, a + 2, b)?
                .mul_ref(&tau(k + 1, l, a + 1, b)?)
                .add_ref(&tau(k, l - 1, a + 1, b)?.mul_ref(&tau(k, l, a + 2, b)?));
            (lhs, rhs)
        }
        3 => {
            let lhs = tau(k, l, a, b + 1)?.pow(2);
            let rhs = tau(k, l, a, b)?
                .mul_ref(&tau(k, l, a, b + 2)?)
                .sub_ref(&tau(k, l - 1, a, b + 2)?.mul_ref(&tau(k, l + 1, a, b)?))
                .sub_ref(&tau(k + 1, l, a, b + 2)?.mul_ref(&tau(k - 1, l, a, b)?));
            (lhs, rhs)
        }
        4 => {
            let lhs = tau(k - 1, l, a, b + 1)?.mul_ref(&tau(k, l + 1, a, b)?);
            let rhs = tau(k - 1, l, a, b)?
                .mul_ref(&tau(k, l + 1, a, b + 1)?)
                .add_ref(&tau(k - 1, l + 1, a, b)?.mul_ref(&tau(k, l, a, b + 1)?));
            (lhs, rhs)
        }
        _ => return Err(Error::Precondition(format!("there is no GL3 relation {which}"))),
    })
}

/// Checks relations (1)-(4) at every instance, in instance order.
pub fn verify_gl3_relations(
    families: &MomentFamilies,
    ks: RangeInclusive<i64>,
    ls: RangeInclusive<i64>,
    alphas: RangeInclusive<i64>,
    betas: RangeInclusive<i64>,
    method: Tau3Method,
) -> Result<VerificationReport> {
    let mut table = Tau3Table::new(families, method);
    let mut report = VerificationReport::new();
    for k in ks {
        for l in ls.clone() {
            for alpha in alphas.clone() {
                for beta in betas.clone() {
                    for which in 1..=4u8 {
                        let (lhs, rhs) = gl3_relation_sides(
                            &mut |kk, ll, aa, bb| table.get(kk, ll, aa, bb),
                            which,
                            k,
                            l,
                            alpha,
                            beta,
                        )?;
                        report.record(
                            &format!("gl3-relation-{which}"),
                            &[("k", k), ("l", l), ("alpha", alpha), ("beta", beta)],
                            &lhs,
                            &rhs,
                        );
                    }
                }
            }
        }
    }
    Ok(report)
}
