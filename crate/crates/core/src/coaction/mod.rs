//! Coaction certificates and their verification.
//!
//! Every axiom of a filtration-preserving coaction is expanded on the
//! algebra and module bases into finitely many polynomial identities over
//! the target presentation, each certified by ideal membership.

mod expand;
mod verify;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::filtration::FiltrationSpec;
use crate::ncalg::{NcPoly, PolyMatrix, Presentation};
use crate::rewrite::RewriteConfig;

pub use expand::{expand_coaction, expand_corep_unitarity, expand_filtration, Expansion, Identity};
pub use verify::{
    check_group_like, check_morphism, check_subalgebra_preserved, subalgebra_obstructions,
    verify_all, verify_coaction, verify_corep_unitarity, verify_filtration_axioms, NumericCheck,
    Verifier,
};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoactionCertificate {
    pub target: Presentation,
    /// `α(a_r) = Σ_s a_s ⊗ alpha_matrix[s][r]`.
    pub alpha_matrix: PolyMatrix,
    /// `β(e_ij) = Σ_k e_ik ⊗ beta_blocks[i][k][j]`.
    pub beta_blocks: Vec<PolyMatrix>,
    pub rewrite_cfg: RewriteConfig,
}

impl CoactionCertificate {
    pub fn from_json(s: &str) -> Result<CoactionCertificate> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    /// The β matrices must match the block sizes; this is the axiom
    /// `β(V_i) ⊂ V_i ⊙ Q`.
    pub fn check_shapes(&self, spec: &FiltrationSpec) -> Result<()> {
        let na = spec.algebra.dim;
        if self.alpha_matrix.len() != na || self.alpha_matrix.iter().any(|r| r.len() != na) {
            return Err(Error::Shape(format!("alpha_matrix must be {na} × {na}")));
        }
        if self.beta_blocks.len() != spec.blocks.len() {
            return Err(Error::Shape(format!(
                "{} beta blocks for {} filtration blocks",
                self.beta_blocks.len(),
                spec.blocks.len()
            )));
        }
        for (i, (b, blk)) in self.beta_blocks.iter().zip(&spec.blocks).enumerate() {
            let d = blk.len();
            if b.len() != d || b.iter().any(|r| r.len() != d) {
                return Err(Error::Shape(format!(
                    "beta block {} must be {d} × {d}",
                    spec.label(i)
                )));
            }
        }
        let letters: std::collections::BTreeSet<_> = self.target.letters().into_iter().collect();
        let used = self
            .alpha_matrix
            .iter()
            .chain(self.beta_blocks.iter().flatten())
            .flatten()
            .flat_map(|p| p.letters());
        for g in used {
            if !letters.contains(&g.unstarred()) && !letters.contains(&g) {
                return Err(Error::MissingGenerator(g.to_string()));
            }
        }
        Ok(())
    }

    /// β on the whole module basis: `β(ε_m) = Σ_n ε_n ⊗ B[n][m]`.
    pub fn beta_full(&self, spec: &FiltrationSpec) -> PolyMatrix {
        let ne = spec.module_dim;
        let mut b = vec![vec![NcPoly::zero(); ne]; ne];
        for (blk, v) in spec.blocks.iter().zip(&self.beta_blocks) {
            for (k, &n) in blk.iter().enumerate() {
                for (j, &m) in blk.iter().enumerate() {
                    b[n][m] = v[k][j].clone();
                }
            }
        }
        b
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum AxiomStatus {
    Proven,
    Inconclusive,
    RefutedNumerically,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomEntry {
    pub status: AxiomStatus,
    /// Number of polynomial identities checked.
    pub identities: usize,
    pub proven: usize,
    /// Instances left out because a product leaves the truncation.
    pub skipped: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    /// SHA-256 over the labels and trace digests of all identities.
    pub digest: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub axioms: BTreeMap<String, AxiomEntry>,
}

impl AxiomReport {
    /// Worst status over all axioms (Proven for an empty report).
    pub fn overall(&self) -> AxiomStatus {
        let statuses: Vec<_> = self.axioms.values().map(|e| e.status).collect();
        if statuses.contains(&AxiomStatus::RefutedNumerically) {
            AxiomStatus::RefutedNumerically
        } else if statuses.contains(&AxiomStatus::Inconclusive) {
            AxiomStatus::Inconclusive
        } else {
            AxiomStatus::Proven
        }
    }

    pub fn all_proven(&self) -> bool {
        self.overall() == AxiomStatus::Proven
    }

    pub fn merge(&mut self, other: AxiomReport) {
        self.axioms.extend(other.axioms);
    }

    pub fn status(&self, axiom: &str) -> Option<AxiomStatus> {
        self.axioms.get(axiom).map(|e| e.status)
    }
}

#[cfg(test)]
mod tests;
