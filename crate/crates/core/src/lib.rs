//! Reconstruction of zero-dimensional triangular sets from their primary
//! components by multivariate Hermite-style interpolation.
//!
//! The crate is organised bottom-up:
//!
//! - [`arith`]: exact rationals and recursive-dense multivariate polynomials.
//! - [`triset`]: triangular sets and normal forms modulo them.
//! - [`primary`]: primary components in shifted-basis form, prefix-tree
//!   families of them, local inversion and a seeded generator.
//! - [`interp`]: branch products, orthogonal idempotents, the monic family
//!   `T`, the non-monic family `N`, the cofactors `F`, and exact verification.
//! - [`height`]: coefficient heights and the dominating-term indicators.
//! - [`cli`]: the command-line surface used by the `triangular` binary.
//!
//! ```
//! use triangular::{interp, primary::PrimaryFamily, arith::rat};
//!
//! let family = PrimaryFamily::radical(2, &[
//!     vec![rat(0), rat(0)], vec![rat(0), rat(1)],
//!     vec![rat(1), rat(2)], vec![rat(1), rat(3)],
//! ]).unwrap();
//! let result = interp::reconstruct(&family).unwrap();
//! assert_eq!(result.t.get(2).to_string(), "x2^2 - (4*x1 + 1)*x2 + 6*x1");
//! ```

pub mod arith;
pub mod cli;
mod error;
pub mod height;
pub mod interp;
pub mod primary;
pub mod triset;

pub use arith::{MPoly, Rational};
pub use error::{Error, Result};

pub use interp::{reconstruct, Reconstruction};
pub use primary::{GenSpec, PrimaryComponent, PrimaryFamily};
pub use triset::TriangularSet;
