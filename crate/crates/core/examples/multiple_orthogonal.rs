//! Type II multiple orthogonal polynomials for two moment functionals.

use tauq::orthopoly::{mop_type2, verify_mop};
use tauq::{MomentSequence, Rational, Result};

fn main() -> Result<()> {
    let c = MomentSequence::catalan();
    let d = MomentSequence::window(0, (1..=12).map(|i| Rational::from_integer(i.into())).collect());

    for k in 0..=3 {
        for l in 0..=k.min(2) {
            let p = mop_type2(k, l, 0, 0, &c, &d)?;
            let report = verify_mop(k, l, 0, 0, &c, &d)?;
            println!("p_{{{k},{l}}} = {p}    ({})", report.summary_line());
        }
    }

    // d_i = i + 1 makes the l = 3 block singular
    match mop_type2(3, 3, 0, 0, &c, &d) {
        Err(e) => println!("p_{{3,3}}: {e}"),
        Ok(p) => println!("p_{{3,3}} = {p}"),
    }
    Ok(())
}
