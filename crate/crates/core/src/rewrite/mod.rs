//! Degree-truncated noncommutative Gröbner completion and ideal-membership
//! certificates.
//!
//! Rules are monic under deg-lex order. Starred letters are independent
//! letters; the star image of every input relation is added to the input.
//! Polynomials in tensor legs are reduced leg by leg with the same rules.

mod engine;
mod replay;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::arith::Scalar;
use crate::error::Result;
use crate::ncalg::{NcPoly, Word};

pub use engine::{Completion, Prover, RewriteSystem, Rule, StepOutcome};
pub use replay::{audit, replay};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RewriteConfig {
    /// Word-length bound D.
    pub max_degree: usize,
    /// Cap on processed completion tasks (inputs and critical pairs).
    pub max_passes: usize,
}

impl RewriteConfig {
    pub fn new(max_degree: usize) -> RewriteConfig {
        RewriteConfig {
            max_degree,
            ..Default::default()
        }
    }
}

impl Default for RewriteConfig {
    fn default() -> Self {
        RewriteConfig {
            max_degree: 6,
            max_passes: 500_000,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Status {
    Proven,
    Inconclusive,
}

/// One reduction step: subtract `coeff · l · R · r` where `R` is the rule
/// polynomial placed in leg `slot` and `word = l · lead(R) · r` with the lead
/// starting at letter `pos`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Step {
    pub rule: usize,
    pub slot: u8,
    pub word: Word,
    pub pos: usize,
    pub coeff: Scalar,
}

/// Where a rule came from, replayable against earlier rules.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Origin {
    /// Input relation by index into [`RewriteSystem::inputs`].
    Input(usize),
    /// Overlap of `left` and `right` on `overlap` letters.
    Overlap {
        left: usize,
        right: usize,
        overlap: usize,
    },
    /// A retired rule reprocessed after a smaller lead appeared inside its own.
    Requeue(usize),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MembershipCertificate {
    pub status: Status,
    pub reduction_trace: Vec<Step>,
    pub normal_form: NcPoly,
    pub basis_size: usize,
    pub degree_reached: usize,
}

impl MembershipCertificate {
    /// SHA-256 over the status and trace, hex encoded.
    pub fn digest(&self) -> String {
        let body =
            serde_json::to_vec(&(&self.status, &self.reduction_trace)).expect("trace serializes");
        hex(&Sha256::digest(body))
    }

    pub fn is_proven(&self) -> bool {
        self.status == Status::Proven
    }
}

pub(crate) fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// Runs completion on `relations` until the critical-pair queue is empty or
/// the pass cap is hit.
pub fn complete(relations: &[NcPoly], cfg: RewriteConfig) -> Result<RewriteSystem> {
    let mut c = Completion::new(relations, cfg)?;
    c.run();
    Ok(c.into_system())
}

/// Does `target` lie in the ideal generated by `sources`? Completion stops as
/// soon as the target reduces to zero.
pub fn implies(
    sources: &[NcPoly],
    target: &NcPoly,
    cfg: RewriteConfig,
) -> Result<MembershipCertificate> {
    Prover::new(sources, cfg)?.prove(target)
}

#[cfg(test)]
mod tests;
