//! Orthogonal polynomials from tau-functions.
//!
//! `p_k^(alpha) = z^k S^+ tau_k^(alpha) / tau_k^(alpha)` is monic of degree
//! `k` and orthogonal for the Hankel form `<z^a, z^b> = c_{alpha+a+b}`. In
//! the GL3 case with `E = 0`, `p_{k,l}^(alpha,beta)` satisfies `k - l`
//! conditions against `C^(alpha-beta)` and `l` against `D^(alpha)`: a type
//! II multiple orthogonal polynomial.

use std::fmt;

use crate::error::{Error, Result, TauIndex};
use crate::factorization::{bordered_tau3_poly, bordered_tau_poly};
use crate::moments::MomentSequence;
use crate::report::VerificationReport;
use crate::ring::{Coeff, Field, LaurentPoly, Rational};
use crate::tau_gl2::tau_det;
use crate::tau_gl3::tau3_e0_det;

/// `<z^a, z^b> = seq[offset + a + b]`.
#[derive(Debug, Clone, Copy)]
pub struct HankelForm<'a> {
    pub seq: &'a MomentSequence,
    pub offset: i64,
}

impl<'a> HankelForm<'a> {
    pub fn new(seq: &'a MomentSequence, offset: i64) -> Self {
        HankelForm { seq, offset }
    }

    fn moment(&self, i: i64) -> Result<Rational> {
        self.seq
            .get_rational(self.offset + i)
            .ok_or_else(|| Error::Precondition("bilinear form over formal moments".into()))
    }
}

/// `<f, g>` for polynomials `f`, `g`.
pub fn form_eval(form: &HankelForm<'_>, f: &LaurentPoly<Rational>, g: &LaurentPoly<Rational>) -> Result<Rational> {
    if !f.is_nonnegative() || !g.is_nonnegative() {
        return Err(Error::Precondition(
            "the moment form is only defined on polynomials".into(),
        ));
    }
    let mut acc = Rational::zero();
    for (a, fa) in f.terms() {
        for (b, gb) in g.terms() {
            acc = acc.add_ref(&fa.mul_ref(gb).mul_ref(&form.moment(a + b)?));
        }
    }
    Ok(acc)
}

/// Polynomial of exact degree `k` with leading coefficient 1.
#[derive(Debug, Clone, PartialEq)]
pub struct MonicPolynomial {
    poly: LaurentPoly<Rational>,
}

impl MonicPolynomial {
    pub fn new(poly: LaurentPoly<Rational>) -> Result<Self> {
        let top = poly.max_degree();
        if !poly.is_nonnegative() || top.map(|d| poly.coeff(d)) != Some(Rational::one()) {
            return Err(Error::Precondition(format!("{poly} is not a monic polynomial")));
        }
        Ok(MonicPolynomial { poly })
    }

    pub fn one() -> Self {
        MonicPolynomial {
            poly: LaurentPoly::one(),
        }
    }

    pub fn degree(&self) -> usize {
        self.poly.max_degree().expect("monic polynomials are nonzero") as usize
    }

    /// Coefficients of `z^0..=z^degree`.
    pub fn coeffs(&self) -> Vec<Rational> {
        self.poly.dense_coeffs().expect("polynomial")
    }

    pub fn as_laurent(&self) -> &LaurentPoly<Rational> {
        &self.poly
    }
}

impl fmt::Display for MonicPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}

fn normalize(poly: LaurentPoly<Rational>, tau: &Rational, index: TauIndex) -> Result<MonicPolynomial> {
    let inv = Rational::one()
        .checked_div(tau)
        .ok_or_else(|| Error::degenerate(index, "normalization of an orthogonal polynomial"))?;
    MonicPolynomial::new(poly.scale_by(&inv))
}

/// `p_k^(alpha)` from the bordered Hankel determinant.
pub fn monic_op(k: usize, alpha: i64, seq: &MomentSequence) -> Result<MonicPolynomial> {
    let src = seq.numeric()?;
    let tau = tau_det(k as i64, alpha, &src);
    normalize(
        bordered_tau_poly(k, alpha, &src),
        &tau,
        TauIndex::Gl2 { k: k as i64, alpha },
    )
}

/// Monic Gram-Schmidt on `1, z, ..., z^max_degree`; independent of any
/// determinant formula.
pub fn gram_schmidt_monic(form: &HankelForm<'_>, max_degree: usize) -> Result<Vec<MonicPolynomial>> {
    let mut basis: Vec<(LaurentPoly<Rational>, Rational)> = Vec::new();
    let mut out = Vec::new();
    for n in 0..=max_degree {
        let zn = LaurentPoly::monomial(Rational::one(), n as i64);
        let mut p = zn.clone();
        for (j, (q, norm)) in basis.iter().enumerate() {
            let coeff = form_eval(form, &zn, q)?.checked_div(norm).ok_or_else(|| {
                Error::degenerate(
                    TauIndex::Gl2 {
                        k: j as i64 + 1,
                        alpha: form.offset,
                    },
                    "zero norm during Gram-Schmidt",
                )
            })?;
            p = p.sub_ref(&q.scale_by(&coeff));
        }
        let norm = form_eval(form, &p, &p)?;
        out.push(MonicPolynomial::new(p.clone())?);
        basis.push((p, norm));
    }
    Ok(out)
}

fn norms_and_polys(seq: &MomentSequence, alpha: i64, max_k: usize) -> Result<(Vec<MonicPolynomial>, Vec<Rational>)> {
    let form = HankelForm::new(seq, alpha);
    let polys = (0..=max_k)
        .map(|k| monic_op(k, alpha, seq))
        .collect::<Result<Vec<_>>>()?;
    let norms = polys
        .iter()
        .map(|p| form_eval(&form, p.as_laurent(), p.as_laurent()))
        .collect::<Result<Vec<_>>>()?;
    Ok((polys, norms))
}

/// Checks `p_0..p_max_k` against the Gram-Schmidt oracle, pairwise
/// orthogonality, and `<p_k, p_k> = tau_{k+1} / tau_k`.
pub fn verify_orthogonality(seq: &MomentSequence, alpha: i64, max_k: usize) -> Result<VerificationReport> {
    let form = HankelForm::new(seq, alpha);
    let src = seq.numeric()?;
    let (polys, norms) = norms_and_polys(seq, alpha, max_k)?;
    let oracle = gram_schmidt_monic(&form, max_k)?;
    let mut report = VerificationReport::new();
    for (k, p) in polys.iter().enumerate() {
        let inst = [("k", k as i64), ("alpha", alpha)];
        report.record("gram-schmidt", &inst, p, &oracle[k]);
        for (j, q) in polys.iter().enumerate().take(k) {
            let ip = form_eval(&form, q.as_laurent(), p.as_laurent())?;
            report.record(
                "orthogonal",
                &[("j", j as i64), ("k", k as i64), ("alpha", alpha)],
                &ip,
                &Rational::zero(),
            );
        }
        let ratio = tau_det(k as i64 + 1, alpha, &src)
            .checked_div(&tau_det(k as i64, alpha, &src))
            .expect("tau_k nonzero since p_k exists");
        report.record("norm", &inst, &norms[k], &ratio);
    }
    Ok(report)
}

/// `(a_k, b_k)` for `k = 0..=max_k` with `z p_k = p_{k+1} + a_k p_k + b_k p_{k-1}`,
/// computed from inner products; `b_0 = 0`.
pub fn recurrence_coeffs(seq: &MomentSequence, alpha: i64, max_k: usize) -> Result<Vec<(Rational, Rational)>> {
    let form = HankelForm::new(seq, alpha);
    let (polys, norms) = norms_and_polys(seq, alpha, max_k)?;
    let mut out = Vec::with_capacity(max_k + 1);
    for (k, p) in polys.iter().enumerate() {
        let zero_norm = || {
            Error::degenerate(
                TauIndex::Gl2 { k: k as i64 + 1, alpha },
                "zero norm in the three-term recurrence",
            )
        };
        let zp = p.as_laurent().shift(1);
        let a = form_eval(&form, &zp, p.as_laurent())?
            .checked_div(&norms[k])
            .ok_or_else(zero_norm)?;
        let b = if k == 0 {
            Rational::zero()
        } else {
            norms[k].checked_div(&norms[k - 1]).expect("earlier norms nonzero")
        };
        out.push((a, b));
    }
    Ok(out)
}

/// `p_0, ..., p_n` generated by the three-term recurrence; needs
/// `coeffs.len() >= n`.
pub fn polys_from_recurrence(coeffs: &[(Rational, Rational)], n: usize) -> Vec<MonicPolynomial> {
    let mut prev = LaurentPoly::<Rational>::zero();
    let mut cur = LaurentPoly::<Rational>::one();
    let mut out = vec![MonicPolynomial::one()];
    for (a, b) in coeffs.iter().take(n) {
        let next = cur.shift(1).sub_ref(&cur.scale_by(a)).sub_ref(&prev.scale_by(b));
        out.push(MonicPolynomial::new(next.clone()).expect("recurrence keeps monicity"));
        prev = cur;
        cur = next;
    }
    out
}

/// `p_{k,l}^(alpha,beta)` for `E = 0`, from the bordered block-Hankel
/// determinant.
pub fn mop_type2(
    k: usize,
    l: usize,
    alpha: i64,
    beta: i64,
    c: &MomentSequence,
    d: &MomentSequence,
) -> Result<MonicPolynomial> {
    let (cs, ds) = (c.numeric()?, d.numeric()?);
    let poly = bordered_tau3_poly(k, l, alpha, beta, &cs, &ds)?;
    let (ki, li) = (k as i64, l as i64);
    let tau = tau3_e0_det(ki, li, alpha, beta, &cs, &ds);
    normalize(
        poly,
        &tau,
        TauIndex::Gl3 {
            k: ki,
            l: li,
            alpha,
            beta,
        },
    )
}

/// `<p_{k,l}, z^n>_C = 0` for `n < k - l` (form offset `alpha - beta`) and
/// `<p_{k,l}, z^n>_D = 0` for `n < l` (offset `alpha`).
pub fn verify_mop(
    k: usize,
    l: usize,
    alpha: i64,
    beta: i64,
    c: &MomentSequence,
    d: &MomentSequence,
) -> Result<VerificationReport> {
    let p = mop_type2(k, l, alpha, beta, c, d)?;
    let forms = [
        ("mop-c", HankelForm::new(c, alpha - beta), k - l),
        ("mop-d", HankelForm::new(d, alpha), l),
    ];
    let mut report = VerificationReport::new();
    for (name, form, count) in forms {
        for n in 0..count {
            let zn = LaurentPoly::monomial(Rational::one(), n as i64);
            let inst = [
                ("k", k as i64),
                ("l", l as i64),
                ("alpha", alpha),
                ("beta", beta),
                ("n", n as i64),
            ];
            report.record(name, &inst, &form_eval(&form, p.as_laurent(), &zn)?, &Rational::zero());
        }
    }
    Ok(report)
}
