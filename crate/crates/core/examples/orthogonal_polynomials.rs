//! Monic orthogonal polynomials from moments, and their recurrence.

use tauq::orthopoly::{gram_schmidt_monic, monic_op, recurrence_coeffs, verify_orthogonality, HankelForm};
use tauq::ring::format_rational;
use tauq::{MomentSequence, Result};

fn main() -> Result<()> {
    let hermite = MomentSequence::hermite();
    for k in 0..=5 {
        println!("p_{k} = {}", monic_op(k, 0, &hermite)?);
    }
    for (k, (a, b)) in recurrence_coeffs(&hermite, 0, 5)?.iter().enumerate() {
        println!("a_{k} = {}, b_{k} = {}", format_rational(a), format_rational(b));
    }

    // Gram-Schmidt is an independent route to the same polynomials
    let catalan = MomentSequence::catalan();
    let gs = gram_schmidt_monic(&HankelForm::new(&catalan, 0), 4)?;
    for (k, p) in gs.iter().enumerate() {
        assert_eq!(*p, monic_op(k, 0, &catalan)?);
        println!("catalan p_{k} = {p}");
    }

    let report = verify_orthogonality(&catalan, 0, 6)?;
    println!("catalan orthogonality: {}", report.summary_line());
    Ok(())
}
