use num_complex::Complex64;

use super::FiltrationSpec;
use crate::arith::{FMatrix, Matrix};
use crate::error::{Error, Result};

/// `T[m][n] = τ(⟨ε_m|ε_n⟩_A)` over the whole module basis.
pub fn gram_tau(spec: &FiltrationSpec) -> Matrix {
    let rows = (0..spec.module_dim)
        .map(|m| {
            (0..spec.module_dim)
                .map(|n| spec.algebra.tau(spec.inner(m, n)))
                .collect()
        })
        .collect();
    Matrix::from_rows(rows).expect("square")
}

/// `s[j][k] = τ(⟨J e_ij | J e_ik⟩_A)` for block position `i`, exactly.
///
/// With `J ε_n = Σ_m j[m][n] ε_m` (antilinear) this is `(j† T j)` restricted
/// to the block.
pub fn compute_s(spec: &FiltrationSpec, i: usize) -> Result<Matrix> {
    let block = spec.block(i)?;
    let t = gram_tau(spec);
    let jt = spec.j_matrix.clone();
    let full = jt.adjoint().mul(&t)?.mul(&jt)?;
    let rows = block
        .iter()
        .map(|&a| block.iter().map(|&b| full[(a, b)].clone()).collect())
        .collect();
    Matrix::from_rows(rows)
}

/// Left-orthonormal basis of a block in floating point.
#[derive(Clone, Debug)]
pub struct LeftBasis {
    /// `e_ij = Σ_k p[k][j] f_ik`.
    pub p: FMatrix,
    /// Column `k` holds the coordinates of `f_ik` over the `e_ij`.
    pub f_coords: FMatrix,
}

/// Modified Gram–Schmidt of the block basis under the left product
/// `(ξ|η) = τ(⟨Jξ|Jη⟩_A)`, which is linear in `ξ`.
pub fn compute_left_basis_float(spec: &FiltrationSpec, i: usize) -> Result<LeftBasis> {
    let s = compute_s(spec, i)?.to_f64();
    let d = s.rows();
    // (x|y) = Σ x_j s[j][k] conj(y_k)
    let ip = |x: &[Complex64], y: &[Complex64]| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..d {
            for k in 0..d {
                acc += x[j] * s[(j, k)] * y[k].conj();
            }
        }
        acc
    };
    let mut fs: Vec<Vec<Complex64>> = Vec::with_capacity(d);
    for j in 0..d {
        let mut v = vec![Complex64::new(0.0, 0.0); d];
        v[j] = Complex64::new(1.0, 0.0);
        for f in &fs {
            let c = ip(&v, f);
            for (vi, fi) in v.iter_mut().zip(f) {
                *vi -= c * fi;
            }
        }
        let norm2 = ip(&v, &v).re;
        if norm2.is_nan() || norm2 <= 1e-14 {
            return Err(Error::NotPositiveDefinite);
        }
        let n = norm2.sqrt();
        fs.push(v.into_iter().map(|x| x / n).collect());
    }
    let f_coords =
        FMatrix::from_rows((0..d).map(|r| (0..d).map(|k| fs[k][r]).collect()).collect())?;
    // p[k][j] = (e_j | f_k)
    let p = FMatrix::from_rows(
        (0..d)
            .map(|k| {
                (0..d)
                    .map(|j| {
                        let mut e = vec![Complex64::new(0.0, 0.0); d];
                        e[j] = Complex64::new(1.0, 0.0);
                        ip(&e, &fs[k])
                    })
                    .collect()
            })
            .collect(),
    )?;
    Ok(LeftBasis { p, f_coords })
}
