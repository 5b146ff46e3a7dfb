use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{Coeff, LaurentPoly, Rational};
use crate::error::{Error, Result};

/// Small dense row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Coeff> DenseMatrix<R> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        DenseMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        DenseMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn map<T: Coeff>(&self, f: impl Fn(&R) -> T) -> DenseMatrix<T> {
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Deletes row `i` and column `j`.
    pub fn minor(&self, i: usize, j: usize) -> Self {
        Self::from_fn(self.rows - 1, self.cols - 1, |a, b| {
            let r = if a < i { a } else { a + 1 };
            let c = if b < j { b } else { b + 1 };
            self.get(r, c).clone()
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                left: self.cols,
                right: other.rows,
            });
        }
        Ok(Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(R::zero(), |acc, t| {
                acc.add_ref(&self.get(i, t).mul_ref(other.get(t, j)))
            })
        }))
    }

    /// Determinant via the ring's preferred method.
    ///
    /// Panics if the matrix is not square.
    pub fn det(&self) -> R {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        R::determinant(self)
    }
}

/// Laplace expansion along rows, memoized on the set of used columns.
///
/// Works over any commutative ring; cost is `O(2^n n)` ring operations.
pub fn det_cofactor<R: Coeff>(m: &DenseMatrix<R>) -> R {
    assert_eq!(m.rows(), m.cols(), "determinant of a non-square matrix");
    let n = m.rows();
    if n == 0 {
        return R::one();
    }
    assert!(n < 32, "cofactor expansion limited to n < 32");
    // memo[mask] = det of rows popcount(mask).. against columns not in mask
    let mut memo: HashMap<u32, R> = HashMap::new();
    fn go<R: Coeff>(m: &DenseMatrix<R>, mask: u32, memo: &mut HashMap<u32, R>) -> R {
        let n = m.rows();
        let row = mask.count_ones() as usize;
        if row == n {
            return R::one();
        }
        if let Some(v) = memo.get(&mask) {
            return v.clone();
        }
        let mut acc = R::zero();
        let mut free_before = 0;
        for j in 0..n {
            if mask & (1 << j) != 0 {
                continue;
            }
            let a = m.get(row, j);
            if !a.is_zero() {
                let sub = go(m, mask | (1 << j), memo);
                let term = a.mul_ref(&sub);
                acc = if free_before % 2 == 0 {
                    acc.add_ref(&term)
                } else {
                    acc.sub_ref(&term)
                };
            }
            free_before += 1;
        }
        memo.insert(mask, acc.clone());
        acc
    }
    go(m, 0, &mut memo)
}

/// Fraction-free (Bareiss) determinant of a rational matrix.
///
/// Each row is first scaled to integers by the lcm of its denominators; the
/// elimination then runs over `BigInt` with exact divisions only.
pub fn det_bareiss(m: &DenseMatrix<Rational>) -> Rational {
    assert_eq!(m.rows(), m.cols(), "determinant of a non-square matrix");
    let n = m.rows();
    if n == 0 {
        return <Rational as One>::one();
    }
    let mut scale = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let l = (0..n).fold(BigInt::one(), |acc, j| acc.lcm(m.get(i, j).denom()));
            scale *= &l;
            (0..n)
                .map(|j| {
                    let x = m.get(i, j);
                    x.numer() * (&l / x.denom())
                })
                .collect()
        })
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return <Rational as Zero>::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    Rational::new(sign * &a[n - 1][n - 1], scale)
}

/// Square matrix of Laurent polynomials (dimension 2 or 3 in practice).
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentMatrix<R> {
    n: usize,
    entries: Vec<LaurentPoly<R>>,
}

impl<R: Coeff> LaurentMatrix<R> {
    pub fn from_rows(rows: Vec<Vec<LaurentPoly<R>>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        LaurentMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> LaurentPoly<R>) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        LaurentMatrix { n, entries }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| {
            if i == j {
                LaurentPoly::one()
            } else {
                LaurentPoly::zero()
            }
        })
    }

    /// `diag(z^p_0, z^p_1, ...)`.
    pub fn diagonal_powers(powers: &[i64]) -> Self {
        Self::from_fn(powers.len(), |i, j| {
            if i == j {
                LaurentPoly::monomial(R::one(), powers[i])
            } else {
                LaurentPoly::zero()
            }
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly<R> {
        &self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &LaurentPoly<R>)> {
        self.entries
            .iter()
            .enumerate()
            .map(move |(idx, p)| (idx / self.n, idx % self.n, p))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let n = self.n;
        Ok(Self::from_fn(n, |i, j| {
            (0..n).fold(LaurentPoly::zero(), |acc, t| {
                acc.add_ref(&self.get(i, t).mul_ref(other.get(t, j)))
            })
        }))
    }

    pub fn scale_by(&self, c: &R) -> Self {
        LaurentMatrix {
            n: self.n,
            entries: self.entries.iter().map(|p| p.scale_by(c)).collect(),
        }
    }

    pub fn map_coeffs<T: Coeff>(&self, f: impl Fn(&R) -> T) -> LaurentMatrix<T> {
        LaurentMatrix {
            n: self.n,
            entries: self.entries.iter().map(|p| p.map_coeffs(&f)).collect(),
        }
    }

    pub fn det(&self) -> LaurentPoly<R> {
        let dense = DenseMatrix::from_fn(self.n, self.n, |i, j| self.get(i, j).clone());
        det_cofactor(&dense)
    }

    /// Smallest exponent of `z` over all entries; `None` for the zero matrix.
    pub fn min_degree(&self) -> Option<i64> {
        self.entries.iter().filter_map(LaurentPoly::min_degree).min()
    }

    /// No entry has a negative power of `z`.
    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().all(LaurentPoly::is_nonnegative)
    }
}

impl<R: Coeff> fmt::Display for LaurentMatrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.n {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}
