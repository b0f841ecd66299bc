//! Exact rational scalars, dense matrices and univariate polynomials.
//!
//! Every decision in this crate (ranks, determinants, existence of real
//! roots) is made here over the rationals; nothing in this module rounds.

mod matrix;
mod pencil;
mod poly;
mod rational;

pub use matrix::Matrix;
pub use pencil::{cofactor_coefficient, count_real_roots, pencil_coeffs, PencilPoly, RootCount};
pub use poly::{interpolate, Poly, SturmSequence};
pub use rational::{dot, format_rational, int, parse_rational, rat, to_f64, Rational};
