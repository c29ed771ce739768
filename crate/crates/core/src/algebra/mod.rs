//! Exact field arithmetic and sparse multivariate polynomials.

mod field;
mod point;
mod poly;

pub use field::{is_prime, parse_rational, sqrt_mod_p, Field, Fp, Modulus, Rationals, Q};
pub use point::{Point, ProjCoord};
pub use poly::{Exponent, Homog, MPoly};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: String, right: String },
    #[error("variable count mismatch: {left} vs {right}")]
    VarCountMismatch { left: usize, right: usize },
    #[error("exponent {exponent:?} exceeds declared degree {declared:?}")]
    ExceedsDeclared { exponent: Vec<u32>, declared: Vec<u32> },
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("point has {got} coordinates, expected {expected}")]
    PointLength { expected: usize, got: usize },
    #[error("{0} is not an odd prime below 2^63")]
    InvalidModulus(u64),
    #[error("{0}")]
    ScalarParse(String),
}
