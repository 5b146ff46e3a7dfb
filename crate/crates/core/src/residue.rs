//! Iterated residue extraction.
//!
//! An integrand is a product of [`MultiLaurent`] factors times one
//! generating series per variable. Variables are eliminated one at a time:
//! before eliminating `w_v`, every not-yet-used factor involving `w_v` is
//! multiplied in, then the single-variable residue against the series of
//! `w_v` is taken. Factors that only involve later variables stay out of
//! the product until needed, which keeps intermediate sizes small.

use crate::ring::{Coeff, MultiLaurent};

/// `Res_{w_order[last]} ... Res_{w_order[0]}` of `prod(factors) * prod_v S_v(w_v)`.
///
/// `order` lists the variables innermost first. `series(v, e)` is the
/// moment that pairs with `w_v^e`, i.e. the coefficient `s_e` of
/// `S_v(w) = sum_i s_i w^(-i-1)`.
pub(crate) fn iterated_residue<R: Coeff>(
    nvars: usize,
    factors: Vec<MultiLaurent<R>>,
    order: &[usize],
    series: impl Fn(usize, i64) -> R,
) -> R {
    assert_eq!(order.len(), nvars, "every variable is eliminated exactly once");
    let position = |v: usize| order.iter().position(|&o| o == v).expect("variable in order");
    let mut pending: Vec<Vec<MultiLaurent<R>>> = vec![Vec::new(); nvars];
    let mut acc = MultiLaurent::one(nvars);
    for f in factors {
        match (0..nvars).filter(|&v| f.involves(v)).map(position).min() {
            Some(step) => pending[step].push(f),
            None => acc = acc.mul_ref(&f),
        }
    }
    for (step, &v) in order.iter().enumerate() {
        for f in pending[step].drain(..) {
            acc = acc.mul_ref(&f);
            if acc.is_zero() {
                return R::zero();
            }
        }
        acc = acc.residue_against(v, |e| series(v, e));
        if acc.is_zero() {
            return R::zero();
        }
    }
    acc.constant_term()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{int, Rational};

    #[test]
    fn product_of_independent_series() {
        // Res_x Res_y (x y^2) C(x) D(y) = c_1 d_2
        let f = MultiLaurent::<Rational>::monomial(2, vec![1, 2], int(1));
        let r = iterated_residue(
            2,
            vec![f],
            &[1, 0],
            |v, e| {
                if v == 0 {
                    int(10 + e)
                } else {
                    int(100 + e)
                }
            },
        );
        assert_eq!(r, int(11 * 102));
    }

    #[test]
    fn no_variables() {
        let r = iterated_residue::<Rational>(0, vec![], &[], |_, _| int(0));
        assert_eq!(r, int(1));
    }
}
