use std::collections::BTreeMap;

use super::Coeff;

/// Laurent polynomial in a fixed number of variables `w_0, ..., w_{n-1}`.
///
/// This is the workspace for iterated residues: integrands are products of
/// such polynomials against one-variable generating series, and each
/// residue eliminates one variable.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiLaurent<R> {
    nvars: usize,
    terms: BTreeMap<Vec<i32>, R>,
}

impl<R: Coeff> MultiLaurent<R> {
    pub fn zero(nvars: usize) -> Self {
        MultiLaurent {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: R) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, R::one())
    }

    pub fn monomial(nvars: usize, exps: Vec<i32>, c: R) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut p = Self::zero(nvars);
        p.add_term(exps, c);
        p
    }

    /// `w_i - w_j`.
    pub fn difference(nvars: usize, i: usize, j: usize) -> Self {
        let mut p = Self::zero(nvars);
        let mut a = vec![0; nvars];
        a[i] = 1;
        p.add_term(a, R::one());
        let mut b = vec![0; nvars];
        b[j] = 1;
        p.add_term(b, R::one().neg_ref());
        p
    }

    /// `sum_{m=0}^{max_m} w_small^m w_big^(-m-1)`: the expansion of
    /// `1/(w_big - w_small)` in positive powers of `w_small`, truncated.
    pub fn geometric(nvars: usize, big: usize, small: usize, max_m: i64) -> Self {
        let mut p = Self::zero(nvars);
        for m in 0..=max_m {
            let mut e = vec![0; nvars];
            e[small] = m as i32;
            e[big] = -(m as i32) - 1;
            p.add_term(e, R::one());
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i32], &R)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    fn add_term(&mut self, exps: Vec<i32>, c: R) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
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

    /// Whether some term carries a nonzero power of `w_v`.
    pub fn involves(&self, v: usize) -> bool {
        self.terms.keys().any(|e| e[v] != 0)
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<i32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca.mul_ref(cb));
            }
        }
        out
    }

    /// `Res_{w_v} (P * S(w_v))` where `S(w) = sum_i s_i w^(-i-1)`.
    ///
    /// A term `a * w_v^e` pairs with `s_e`; the result no longer involves
    /// `w_v`. `series` is queried only at exponents present in `P`.
    pub fn residue_against(&self, v: usize, series: impl Fn(i64) -> R) -> Self {
        let mut cache: BTreeMap<i32, R> = BTreeMap::new();
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let s = cache.entry(e[v]).or_insert_with(|| series(e[v] as i64));
            if s.is_zero() {
                continue;
            }
            let mut rest = e.clone();
            rest[v] = 0;
            out.add_term(rest, c.mul_ref(s));
        }
        out
    }

    /// Drops every term for which `keep` is false.
    pub fn retain(&mut self, mut keep: impl FnMut(&[i32]) -> bool) {
        self.terms.retain(|e, _| keep(e));
    }

    pub fn constant_term(&self) -> R {
        self.terms.get(&vec![0; self.nvars]).cloned().unwrap_or_else(R::zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{int, Rational};

    #[test]
    fn squared_difference_residues() {
        // Res_w1 Res_w2 (w1 - w2)^2 C(w1) C(w2) = 2 c0 c2 - 2 c1^2
        let d = MultiLaurent::<Rational>::difference(2, 0, 1);
        let p = d.mul_ref(&d);
        let c = |i: i64| int([3, 1, 4][i as usize]);
        let series = |i: i64| if (0..3).contains(&i) { c(i) } else { int(0) };
        let r = p.residue_against(1, series).residue_against(0, series);
        assert_eq!(r.constant_term(), int(2 * 3 * 4 - 2));
    }

    #[test]
    fn geometric_pairs_negative_indices() {
        // Res_x Res_z C(x) E(z) / (x - z) = sum_m c_{-1-m} e_m
        let g = MultiLaurent::<Rational>::geometric(2, 0, 1, 5);
        let e = |i: i64| if i == 0 { int(2) } else { int(0) };
        let c = |i: i64| if i == -1 { int(3) } else { int(0) };
        let r = g.residue_against(1, e).residue_against(0, c);
        assert_eq!(r.constant_term(), int(6));
        assert!(g.involves(0) && g.involves(1));
    }
}
