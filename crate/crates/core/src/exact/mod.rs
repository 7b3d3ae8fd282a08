//! Exact arithmetic: rationals, dense matrices, and uni/multivariate
//! polynomials over the rationals.

mod matrix;
mod multipoly;
mod poly;
mod rat;

pub use matrix::{AffineSolution, ExactMatrix, LinalgError};
pub use multipoly::{Monomial, MultiPoly};
pub use poly::UniPoly;
pub use rat::{
    binom_int, factorial, int, parse_rat, pow_int, rat, rat_frac, Factorials, Int, Rat,
};
