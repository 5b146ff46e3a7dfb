//! Exact tau-functions of GL2 and GL3 type computed from moment sequences.
//!
//! * [`tau_gl2`]: Hankel-determinant tau-functions, the residue formula,
//!   condensation and the Q-system.
//! * [`tau_gl3`]: the three-series generalization, its residue formula,
//!   the `E = 0` determinant and the four GL3 difference relations.
//! * [`factorization`]: shift fields, Birkhoff factors, connection
//!   matrices and the zero-curvature equations.
//! * [`orthopoly`]: orthogonal and type II multiple orthogonal polynomials.
//!
//! All arithmetic is exact, over big rationals or over formal moment
//! polynomials. See `examples/` for one program per capability.

pub mod cli;
pub mod error;
pub mod factorization;
pub mod moments;
pub mod orthopoly;
pub mod report;
mod residue;
pub mod ring;
pub mod tau_gl2;
pub mod tau_gl3;

pub use error::{Error, Result, TauIndex};
pub use moments::{MomentFamilies, MomentSequence, MomentSource};
pub use report::VerificationReport;
pub use ring::{Coeff, Field, LaurentMatrix, LaurentPoly, MomentPoly, Rational};
