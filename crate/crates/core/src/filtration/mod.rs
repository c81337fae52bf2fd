//! Finite Hilbert modules with an orthogonal filtration.
//!
//! Everything is given in coordinates. Algebra elements are vectors over the
//! basis `a_r`, module vectors are vectors over the basis `ε_m`, and the
//! filtration blocks partition the module basis. Truncated examples are not
//! closed under products: undefined structure-constant or action entries are
//! `None` (JSON `null`), and identities are checked wherever every product
//! involved is defined.

mod derived;
mod validate;

use serde::{Deserialize, Serialize};

use crate::arith::{Matrix, Scalar};
use crate::error::{Error, Result};

pub use derived::{compute_left_basis_float, compute_s, gram_tau, LeftBasis};
pub use validate::{validate, CheckResult, ValidationReport};

/// Coordinates over a basis.
pub type Coords = Vec<Scalar>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraData {
    pub dim: usize,
    /// `struct_consts[r][s]` holds the coordinates of `a_r a_s`, or `None`
    /// when the product leaves the truncation.
    pub struct_consts: Vec<Vec<Option<Coords>>>,
    /// `(a_r)* = Σ_t star_matrix[t][r] a_t`; the star is antilinear.
    pub star_matrix: Matrix,
    pub unit_vector: Coords,
    pub trace_vector: Coords,
}

impl AlgebraData {
    pub fn basis_vector(&self, r: usize) -> Coords {
        unit_coords(self.dim, r)
    }

    /// `x y`, or `None` when some needed product is undefined.
    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Option<Coords> {
        let mut out = vec![Scalar::zero(); self.dim];
        for (r, xr) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (s, ys) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let prod = self.struct_consts[r][s].as_ref()?;
                let f = xr * ys;
                axpy(&mut out, &f, prod);
            }
        }
        Some(out)
    }

    pub fn star(&self, x: &[Scalar]) -> Coords {
        let mut out = vec![Scalar::zero(); self.dim];
        for (r, xr) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let f = xr.conj();
            for (t, o) in out.iter_mut().enumerate() {
                *o += &(&f * &self.star_matrix[(t, r)]);
            }
        }
        out
    }

    pub fn tau(&self, x: &[Scalar]) -> Scalar {
        x.iter().zip(&self.trace_vector).map(|(a, b)| a * b).sum()
    }

    /// Star image of a basis element.
    pub fn star_basis(&self, r: usize) -> Coords {
        (0..self.dim)
            .map(|t| self.star_matrix[(t, r)].clone())
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FiltrationSpec {
    pub algebra: AlgebraData,
    pub module_dim: usize,
    /// Each block lists module-basis indices (0-based); blocks partition the
    /// module basis.
    pub blocks: Vec<Vec<usize>>,
    /// Index-set labels of the blocks (defaults to `0, 1, …`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub block_labels: Option<Vec<i32>>,
    /// `inner_tensor[m][n]` holds the algebra coordinates of `⟨ε_m|ε_n⟩_A`.
    pub inner_tensor: Vec<Vec<Coords>>,
    /// `action_tensor[m][r]` holds the module coordinates of `ε_m·a_r`, or
    /// `None` outside the truncation.
    pub action_tensor: Vec<Vec<Option<Coords>>>,
    /// `J(Σ x_n ε_n) = Σ_{m,n} j_matrix[m][n] conj(x_n) ε_m`.
    pub j_matrix: Matrix,
    pub xi0: Coords,
}

impl FiltrationSpec {
    pub fn from_json(s: &str) -> Result<FiltrationSpec> {
        let spec: FiltrationSpec = serde_json::from_str(s)?;
        spec.check_shapes()?;
        Ok(spec)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }

    pub fn label(&self, block: usize) -> i32 {
        match &self.block_labels {
            Some(l) => l[block],
            None => block as i32,
        }
    }

    pub fn labels(&self) -> Vec<i32> {
        (0..self.blocks.len()).map(|b| self.label(b)).collect()
    }

    /// Position of the block with the given label.
    pub fn block_position(&self, label: i32) -> Option<usize> {
        (0..self.blocks.len()).find(|&b| self.label(b) == label)
    }

    pub fn block(&self, i: usize) -> Result<&[usize]> {
        self.blocks
            .get(i)
            .map(Vec::as_slice)
            .ok_or(Error::UnknownBlock(i))
    }

    pub fn inner(&self, m: usize, n: usize) -> &[Scalar] {
        &self.inner_tensor[m][n]
    }

    /// `⟨x|y⟩_A` for module coordinate vectors (antilinear in `x`).
    pub fn inner_vec(&self, x: &[Scalar], y: &[Scalar]) -> Coords {
        let mut out = vec![Scalar::zero(); self.algebra.dim];
        for (m, xm) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (n, yn) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                axpy(&mut out, &(&xm.conj() * yn), &self.inner_tensor[m][n]);
            }
        }
        out
    }

    /// Module coordinates of `J ε_n`.
    pub fn j_basis(&self, n: usize) -> Coords {
        (0..self.module_dim)
            .map(|m| self.j_matrix[(m, n)].clone())
            .collect()
    }

    /// Structural consistency of all dimensions; a failure here is a
    /// malformed input rather than a failed invariant.
    pub fn check_shapes(&self) -> Result<()> {
        let a = &self.algebra;
        let na = a.dim;
        let ne = self.module_dim;
        let bad = |what: &str| Err(Error::Shape(what.to_string()));
        if a.struct_consts.len() != na
            || a.struct_consts
                .iter()
                .any(|row| row.len() != na || row.iter().flatten().any(|c| c.len() != na))
        {
            return bad("struct_consts must be dim × dim × dim");
        }
        if a.star_matrix.rows() != na || a.star_matrix.cols() != na {
            return bad("star_matrix must be dim × dim");
        }
        if a.unit_vector.len() != na || a.trace_vector.len() != na {
            return bad("unit_vector and trace_vector need dim entries");
        }
        if self.inner_tensor.len() != ne
            || self
                .inner_tensor
                .iter()
                .any(|row| row.len() != ne || row.iter().any(|c| c.len() != na))
        {
            return bad("inner_tensor must be module_dim × module_dim × dim");
        }
        if self.action_tensor.len() != ne
            || self
                .action_tensor
                .iter()
                .any(|row| row.len() != na || row.iter().flatten().any(|c| c.len() != ne))
        {
            return bad("action_tensor must be module_dim × dim × module_dim");
        }
        if self.j_matrix.rows() != ne || self.j_matrix.cols() != ne {
            return bad("j_matrix must be module_dim × module_dim");
        }
        if self.xi0.len() != ne {
            return bad("xi0 needs module_dim entries");
        }
        if let Some(l) = &self.block_labels {
            if l.len() != self.blocks.len() {
                return bad("one label per block");
            }
        }
        if self.blocks.iter().flatten().any(|&m| m >= ne) {
            return bad("block index out of range");
        }
        Ok(())
    }
}

pub(crate) fn unit_coords(n: usize, k: usize) -> Coords {
    let mut v = vec![Scalar::zero(); n];
    v[k] = Scalar::one();
    v
}

/// `out += f · x`
pub(crate) fn axpy(out: &mut [Scalar], f: &Scalar, x: &[Scalar]) {
    for (o, xi) in out.iter_mut().zip(x) {
        if !xi.is_zero() {
            *o += &(f * xi);
        }
    }
}
