//! The same tau values from determinants and from iterated residues.

use tauq::moments::random_window;
use tauq::ring::Family;
use tauq::tau_gl2::{tau_det, tau_residue, DEFAULT_RESIDUE_BOUND};
use tauq::tau_gl3::{kernel_specs, tau3_e0_det, tau3_residue};
use tauq::{MomentSequence, Result};

fn main() -> Result<()> {
    let formal = MomentSequence::formal(Family::C);
    let sym = formal.symbolic();
    for k in 1..=3 {
        let r = tau_residue(k, 0, &sym, DEFAULT_RESIDUE_BOUND)?;
        println!("tau_{k}^(0) = {r}");
        assert_eq!(r, tau_det(k, 0, &sym));
    }

    // GL3: the residue formula is a signed sum over kernels
    for spec in kernel_specs(2, 1) {
        println!("kernel {spec:?}");
    }
    let c = random_window(3, -2, 8, 4, 3);
    let d = random_window(4, -2, 8, 4, 3);
    let (cs, ds) = (c.numeric()?, d.numeric()?);
    for (k, l) in [(1, 0), (1, 1), (2, 1), (3, 2)] {
        let det = tau3_e0_det(k, l, 0, 0, &cs, &ds);
        let res = tau3_residue(k, l, 0, 0, &c, &d, &MomentSequence::zero(), 6)?;
        println!("tau_{{{k},{l}}}: determinant {det}, residue {res}");
    }

    // E != 0 pairs C with E, which needs both supports finite
    let e = random_window(5, 0, 3, 4, 3);
    let v = tau3_residue(2, 1, 0, 0, &c, &d, &e, 6)?;
    println!("with E != 0: tau_{{2,1}} = {v}");
    Ok(())
}
