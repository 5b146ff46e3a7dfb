//! Hankel tau tables and the Q-system they satisfy.
//!
//! Run with `cargo run --example qsystem`.

use tauq::moments::random_window;
use tauq::ring::format_rational;
use tauq::tau_gl2::{fill_grid_recurrence, tau_det, verify_qsystem};
use tauq::{MomentSequence, Result};

fn main() -> Result<()> {
    let catalan = MomentSequence::catalan();
    let src = catalan.numeric()?;

    println!("catalan tau_k^(alpha), k = 0..6 down, alpha = 0..3 across");
    for k in 0..=6 {
        let row: Vec<String> = (0..=3).map(|a| format_rational(&tau_det(k, a, &src))).collect();
        println!("  k={k}: {}", row.join("  "));
    }

    // condensation only needs rows 0 and 1
    let grid = fill_grid_recurrence(&src, 6, 0..=3)?;
    let agree = grid.entries().all(|((k, a), v)| *v == tau_det(k, a, &src));
    println!("condensation fill agrees with determinants: {agree}");

    let report = verify_qsystem(&src, 0..=6, -2..=2);
    println!("catalan Q-system: {}", report.summary_line());

    let random = random_window(7, -3, 10, 5, 3);
    let report = verify_qsystem(&random.numeric()?, 0..=6, -2..=2);
    println!("random window Q-system: {}", report.summary_line());

    // as a polynomial identity in the moments
    let formal = MomentSequence::formal(tauq::ring::Family::C);
    println!("tau_2^(0) = {}", tau_det(2, 0, &formal.symbolic()));
    let report = verify_qsystem(&formal.symbolic(), 0..=4, 0..=0);
    println!("formal Q-system: {}", report.summary_line());
    Ok(())
}
