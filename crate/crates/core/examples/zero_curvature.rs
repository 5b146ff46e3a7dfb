//! Connection matrices V, W, U and the zero-curvature identities.

use tauq::factorization::{connection_matrices_gl2, induction_replay, window_matrix_gl2, zero_curvature_numeric};
use tauq::tau_gl2::tau_det;
use tauq::{MomentSequence, Result};

fn main() -> Result<()> {
    let catalan = MomentSequence::catalan();
    let src = catalan.numeric()?;
    let mut tau = |k, a| tau_det(k, a, &src);

    let m = connection_matrices_gl2(&mut tau, 1, 1)?;
    println!("V_1^(1) = {}", m.v);
    println!("W_1^(1) = {}", m.w);
    println!("U_1^(1) = {}", m.u);

    for alpha in 1..=2 {
        for k in 0..=3 {
            let report = zero_curvature_numeric(&catalan, k, alpha)?;
            println!("k={k} alpha={alpha}: {}", report.summary_line());
        }
    }

    // the scalar identity telescopes back to tau_{-1} = 0, tau_0 = 1
    let report = induction_replay(&mut tau, 1, 5)?;
    println!("induction replay: {}", report.summary_line());

    // a window is the ordered product U_0 ... U_{k-1}
    let window = window_matrix_gl2(3, 0, &catalan.truncated(0, 12)?.numeric()?)?;
    println!("window_3^(0) = {window}");
    println!("det = {}", window.det());

    // tau_{k+1}^(-1) = 0 at k = 0 puts a zero in a denominator
    match zero_curvature_numeric(&catalan, 0, 0) {
        Err(e) => println!("alpha = 0, k = 0: {e}"),
        Ok(r) => println!("alpha = 0, k = 0: {}", r.summary_line()),
    }
    Ok(())
}
