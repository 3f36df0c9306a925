use thiserror::Error;

use crate::primary::FamilyViolation;
use crate::triset::TrisetViolation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("not a triangular set: {}", join(.0))]
    NotTriangular(Vec<TrisetViolation>),

    #[error("invalid primary family: {}", join(.0))]
    InvalidFamily(Vec<FamilyViolation>),

    #[error("polynomial is not of primary shape: {0}")]
    Shape(String),

    #[error("not a unit in the local quotient: value {0}")]
    NonUnit(String),

    #[error("Newton inversion did not converge after {0} steps")]
    NoConvergence(usize),

    #[error("polynomial involves x{var}, beyond the {len} variables of the modulus")]
    OutOfScope { var: usize, len: usize },

    #[error("unsatisfiable generator spec: {0}")]
    Unsatisfiable(String),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn join<T: std::fmt::Display>(items: &[T]) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}
