//! Exact complex-rational arithmetic and its floating-point shadow.

mod matrix;
mod scalar;

pub use matrix::{first_nonpositive_minor, is_hermitian_positive, FMatrix, Matrix};
pub use scalar::Scalar;

/// Centralized tolerance policy for the float shadow.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Tolerance {
    /// Absolute tolerance for evaluating relations at classical points.
    pub relation: f64,
    /// Max-norm tolerance for factorization reconstruction.
    pub factorization: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            relation: 1e-9,
            factorization: 1e-8,
        }
    }
}
