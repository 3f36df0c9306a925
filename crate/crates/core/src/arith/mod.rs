//! Exact arithmetic: rationals, recursive-dense polynomials and their text form.

mod poly;
mod rational;
mod text;

pub use poly::MPoly;
pub use rational::{bitlength, parse_rational, rat, rat_bitsize, ratio, Rational};
pub use text::parse_poly;
