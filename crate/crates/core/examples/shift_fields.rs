//! Shift fields S^+ and S^-, shifted taus, and Baker functions.

use tauq::factorization::{
    apply_shift, baker_gl2, bordered_tau_poly, g_minus_gl2, window_matrix_gl3, ShiftEndomorphism, ShiftedSource,
};
use tauq::ring::Family;
use tauq::tau_gl2::tau_det;
use tauq::{MomentSequence, Rational, Result};

fn main() -> Result<()> {
    let formal = MomentSequence::formal(Family::C);
    let tau2 = tau_det(2, 0, &formal.symbolic());
    let plus = apply_shift(&ShiftEndomorphism::plus(Family::C), &tau2);
    println!("S+ tau_2 = {plus}");
    let minus = apply_shift(&ShiftEndomorphism::minus(Family::C, 2), &tau2);
    println!("S- tau_2 (depth 2), {} terms", minus.len());

    let catalan = MomentSequence::catalan().truncated(0, 12)?;
    let src = catalan.numeric()?;
    let plus_src = ShiftedSource::plus(&src)?;
    println!("S+ tau_3^(0) = {}", tau_det(3, 0, &plus_src));
    // S^- sums over the whole window; only the leading terms are exact
    // for the untruncated sequence
    let minus_src = ShiftedSource::minus(&src)?;
    println!("S- tau_2^(0) = {} + ...", tau_det(2, 0, &minus_src).truncate(-4, 0));

    // the monic orthogonal polynomial is a bordered determinant
    println!("bordered tau_2^(0) = {}", bordered_tau_poly(2, 0, &src));

    let g = g_minus_gl2(2, 0, &src)?;
    println!("g_-(2) first row = {}, {}", g.get(0, 0), g.get(0, 1));
    let psi = baker_gl2(2, 0, &src)?;
    println!("Psi(2) first row = {}, {}", psi.get(0, 0), psi.get(0, 1));

    let linear = MomentSequence::window(0, (1..=12).map(|i| Rational::from_integer(i.into())).collect());
    let w = window_matrix_gl3(2, 1, 0, 0, &src, &linear.numeric()?)?;
    println!("GL3 window (2,1) = {w}");
    Ok(())
}
