//! Floating-point cross-checks: classical points, Cholesky factors and the
//! spectral data of the interval.

mod points;
mod trig;

use num_complex::Complex64;

use crate::arith::FMatrix;
use crate::error::{Error, Result};

pub use points::{
    candidate_points, classical_points, eval_at_point, eval_at_points, falsify, legs,
    random_unitary, signed_permutations, ClassicalPoint, PointStrategy, Witness, RELATION_TOL,
};
pub use trig::{
    gauss_legendre, verify_segments_eigenbasis, EigenEntry, EigenReport, PiPoly, TrigPoly,
};

/// Reconstruction tolerance for factorizations.
pub const FACTOR_TOL: f64 = 1e-8;

/// A factor `p` with `pᵗ p̄ = s`: the transpose of the lower Cholesky factor
/// of `s = L L†`.
pub fn cholesky_oracle(s: &FMatrix) -> Result<FMatrix> {
    let n = s.rows();
    if s.cols() != n {
        return Err(Error::Shape("cholesky needs a square matrix".into()));
    }
    if s.max_abs_diff(&s.adjoint()) > FACTOR_TOL {
        return Err(Error::NotPositiveDefinite);
    }
    let mut l = FMatrix::zeros(n, n);
    for j in 0..n {
        let mut diag = s[(j, j)].re;
        for k in 0..j {
            diag -= l[(j, k)].norm_sqr();
        }
        if diag.is_nan() || diag <= 0.0 {
            return Err(Error::NotPositiveDefinite);
        }
        let djj = diag.sqrt();
        l[(j, j)] = Complex64::new(djj, 0.0);
        for i in j + 1..n {
            let mut x = s[(i, j)];
            for k in 0..j {
                x -= l[(i, k)] * l[(j, k)].conj();
            }
            l[(i, j)] = x / djj;
        }
    }
    Ok(l.transpose())
}

/// `pᵗ p̄`, the matrix a change-of-basis factor reconstructs.
pub fn reconstruct_s(p: &FMatrix) -> FMatrix {
    p.transpose().mul(&p.conj()).expect("square")
}
