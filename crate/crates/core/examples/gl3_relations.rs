//! Two-parameter GL3 tau tables and the four bilinear relations.

use tauq::moments::random_window;
use tauq::tau_gl3::{tau3_grid, verify_gl3_relations, Tau3Method, DEFAULT_KERNEL_BOUND};
use tauq::{MomentFamilies, MomentSequence, Rational, Result};

fn main() -> Result<()> {
    let linear = MomentSequence::window(0, (1..=12).map(|i| Rational::from_integer(i.into())).collect());
    let families = MomentFamilies {
        c: MomentSequence::catalan(),
        d: linear,
        e: MomentSequence::zero(),
    };
    let method = Tau3Method::auto(&families, DEFAULT_KERNEL_BOUND);
    let grid = tau3_grid(&families, 0..=3, 0..=2, 0..=0, 0..=0, method)?;
    for ((k, l, a, b), v) in grid.entries() {
        println!("tau_{{{k},{l}}}^({a},{b}) = {v}");
    }

    let report = verify_gl3_relations(&families, 0..=3, 0..=3, 0..=1, 0..=1, method)?;
    println!("E = 0: {}", report.summary_line());

    let with_e = MomentFamilies {
        c: random_window(42, -2, 4, 3, 2),
        d: random_window(43, -2, 4, 3, 2),
        e: random_window(44, -2, 4, 3, 2),
    };
    let method = Tau3Method::Residue { max_vars: 8 };
    let report = verify_gl3_relations(&with_e, 0..=2, 0..=2, 0..=0, 0..=0, method)?;
    println!("E != 0: {}", report.summary_line());
    Ok(())
}
