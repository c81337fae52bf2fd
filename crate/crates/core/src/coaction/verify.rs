use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::arith::{Matrix, Scalar};
use crate::error::{Error, Result};
use crate::filtration::{Coords, FiltrationSpec};
use crate::ncalg::{check_star_compatible, substitute, Generator, NcPoly, Presentation};
use crate::numeric::{classical_points, falsify, ClassicalPoint, PointStrategy, RELATION_TOL};
use crate::rewrite::{hex, MembershipCertificate, Prover, RewriteConfig};

use super::expand::{
    expand_coaction, expand_corep_unitarity, expand_filtration, Expansion, Identity,
};
use super::{AxiomEntry, AxiomReport, AxiomStatus, CoactionCertificate};

/// Numeric refutation settings for identities left unproven.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NumericCheck {
    pub tolerance: f64,
    pub strategy: PointStrategy,
}

impl Default for NumericCheck {
    fn default() -> Self {
        NumericCheck {
            tolerance: RELATION_TOL,
            strategy: PointStrategy::default(),
        }
    }
}

/// Proves identities in one target presentation, sharing a single lazy
/// completion, and optionally refutes the unproven ones at classical points.
pub struct Verifier {
    prover: Prover,
    numeric: Option<(f64, Vec<ClassicalPoint>)>,
}

const WITNESS_CHARS: usize = 240;

fn clip(s: String) -> String {
    if s.chars().count() <= WITNESS_CHARS {
        s
    } else {
        let head: String = s.chars().take(WITNESS_CHARS).collect();
        format!("{head}…")
    }
}

impl Verifier {
    pub fn new(
        target: &Presentation,
        cfg: RewriteConfig,
        numeric: Option<&NumericCheck>,
    ) -> Result<Verifier> {
        let numeric = numeric.map(|n| {
            (
                n.tolerance,
                classical_points(target, &n.strategy, n.tolerance),
            )
        });
        Ok(Verifier {
            prover: Prover::new(&target.relations, cfg)?,
            numeric,
        })
    }

    pub fn prove(&mut self, poly: &NcPoly) -> Result<MembershipCertificate> {
        self.prover.prove(poly)
    }

    /// Certifies every identity of an expansion. Degree overflow leaves the
    /// identity unproven rather than failing the run.
    pub fn check(&mut self, exp: &Expansion) -> AxiomEntry {
        let mut hasher = Sha256::new();
        let mut proven = 0;
        let mut unproven: Vec<(&Identity, String)> = Vec::new();
        for id in &exp.identities {
            let line = match self.prover.prove(&id.poly) {
                Ok(cert) if cert.is_proven() => {
                    proven += 1;
                    cert.digest()
                }
                Ok(cert) => {
                    unproven.push((id, format!("normal form {}", cert.normal_form)));
                    cert.digest()
                }
                Err(e) => {
                    unproven.push((id, e.to_string()));
                    "error".to_string()
                }
            };
            hasher.update(id.label.as_bytes());
            hasher.update(b"\t");
            hasher.update(line.as_bytes());
            hasher.update(b"\n");
        }
        let mut status = AxiomStatus::Proven;
        let mut witness = None;
        if let Some((id, why)) = unproven.first() {
            status = AxiomStatus::Inconclusive;
            witness = Some(clip(format!("{}: {why}", id.label)));
        }
        if let Some((tol, points)) = &self.numeric {
            for (id, _) in &unproven {
                if let Ok(Some(w)) = falsify(std::slice::from_ref(&id.poly), points, *tol) {
                    status = AxiomStatus::RefutedNumerically;
                    witness = Some(clip(format!("{}: {}", id.label, w)));
                    break;
                }
            }
        }
        AxiomEntry {
            status,
            identities: exp.identities.len(),
            proven,
            skipped: exp.skipped,
            witness,
            digest: hex(&hasher.finalize()),
        }
    }

    pub fn check_all(&mut self, exps: &[Expansion]) -> AxiomReport {
        AxiomReport {
            axioms: exps
                .iter()
                .map(|e| (e.axiom.clone(), self.check(e)))
                .collect(),
        }
    }
}

/// Axioms (a)–(g): α is a coaction and β a compatible module map with the
/// algebraic density witnesses.
pub fn verify_coaction(spec: &FiltrationSpec, cert: &CoactionCertificate) -> Result<AxiomReport> {
    cert.check_shapes(spec)?;
    let mut v = Verifier::new(&cert.target, cert.rewrite_cfg, None)?;
    Ok(v.check_all(&expand_coaction(spec, cert)?))
}

/// Axioms (h)–(j): τ-preservation, J-equivariance and the fixed vector.
pub fn verify_filtration_axioms(
    spec: &FiltrationSpec,
    cert: &CoactionCertificate,
) -> Result<AxiomReport> {
    cert.check_shapes(spec)?;
    let mut v = Verifier::new(&cert.target, cert.rewrite_cfg, None)?;
    Ok(v.check_all(&expand_filtration(spec, cert)))
}

/// `v⁽ⁱ⁾` unitary with `v⁽ⁱ⁾ᵗ s⁽ⁱ⁾ v̄⁽ⁱ⁾ (s⁽ⁱ⁾)⁻¹ = I` in the target.
pub fn verify_corep_unitarity(
    spec: &FiltrationSpec,
    cert: &CoactionCertificate,
) -> Result<AxiomReport> {
    cert.check_shapes(spec)?;
    let mut v = Verifier::new(&cert.target, cert.rewrite_cfg, None)?;
    Ok(v.check_all(&expand_corep_unitarity(spec, cert)?))
}

/// Everything above in one completion, with optional numeric refutation.
pub fn verify_all(
    spec: &FiltrationSpec,
    cert: &CoactionCertificate,
    numeric: Option<&NumericCheck>,
) -> Result<AxiomReport> {
    cert.check_shapes(spec)?;
    let mut exps = expand_coaction(spec, cert)?;
    exps.extend(expand_filtration(spec, cert));
    exps.extend(expand_corep_unitarity(spec, cert)?);
    let mut v = Verifier::new(&cert.target, cert.rewrite_cfg, numeric)?;
    Ok(v.check_all(&exps))
}

/// `μ ⊗ μ` on tensor legs 1 and 2.
fn tensor_assignment(assignment: &BTreeMap<Generator, NcPoly>) -> BTreeMap<Generator, NcPoly> {
    let mut out = BTreeMap::new();
    for (g, img) in assignment {
        for slot in [1u8, 2] {
            out.insert(g.with_slot(slot), img.in_slot(slot));
        }
    }
    out
}

/// Certifies that `μ` (given on generators) extends to a morphism of
/// Woronowicz algebras: Δ-compatibility on generators (termwise, or else
/// modulo the target relations in the tensor square) and one membership
/// certificate per source relation.
pub fn check_morphism(
    source: &Presentation,
    target: &Presentation,
    assignment: &BTreeMap<Generator, NcPoly>,
    cfg: RewriteConfig,
) -> Result<Vec<MembershipCertificate>> {
    check_star_compatible(assignment)?;
    let doubled = tensor_assignment(assignment);
    let mut prover = Prover::new(&target.relations, cfg)?;
    for g in source.generators() {
        let image = substitute(&NcPoly::gen(g), assignment)?;
        if !source.comul.contains_key(&g) {
            continue;
        }
        let lhs = target.comul_of(&image)?;
        let rhs = substitute(&source.comul_letter(g)?, &doubled)?;
        if lhs != rhs {
            let cert = prover.prove(&(&lhs - &rhs))?;
            if !cert.is_proven() {
                return Err(Error::IncompatibleAssignment(format!(
                    "Δ({g}) is not carried to Δ of its image"
                )));
            }
        }
    }
    source
        .relations
        .iter()
        .map(|r| prover.prove(&substitute(r, assignment)?))
        .collect()
}

fn in_span(rank: usize, rows: &[Coords], v: &[Scalar]) -> bool {
    let mut ext = rows.to_vec();
    ext.push(v.to_vec());
    Matrix::from_rows(ext).is_ok_and(|m| m.rank() == rank)
}

/// The subalgebra must contain the unit and be closed under star and under
/// every product defined in the truncation.
fn check_subalgebra(spec: &FiltrationSpec, sub: &[Coords]) -> Result<()> {
    let alg = &spec.algebra;
    if sub.iter().any(|b| b.len() != alg.dim) {
        return Err(Error::Shape("subalgebra vectors need dim entries".into()));
    }
    let rank = if sub.is_empty() {
        0
    } else {
        Matrix::from_rows(sub.to_vec())?.rank()
    };
    if !in_span(rank, sub, &alg.unit_vector) {
        return Err(Error::NotSubalgebra("unit not contained".into()));
    }
    for (k, b) in sub.iter().enumerate() {
        if !in_span(rank, sub, &alg.star(b)) {
            return Err(Error::NotSubalgebra(format!(
                "star of element {k} not contained"
            )));
        }
        for (l, c) in sub.iter().enumerate() {
            if let Some(p) = alg.mul(b, c) {
                if !in_span(rank, sub, &p) {
                    return Err(Error::NotSubalgebra(format!(
                        "product of elements {k} and {l} not contained"
                    )));
                }
            }
        }
    }
    Ok(())
}

fn subalgebra_expansion(
    spec: &FiltrationSpec,
    cert: &CoactionCertificate,
    sub: &[Coords],
) -> Result<Expansion> {
    cert.check_shapes(spec)?;
    check_subalgebra(spec, sub)?;
    let n = spec.algebra.dim;
    let annihilators = if sub.is_empty() {
        (0..n)
            .map(|k| crate::filtration::unit_coords(n, k))
            .collect()
    } else {
        Matrix::from_rows(sub.to_vec())?.null_space()
    };
    let alpha = &cert.alpha_matrix;
    let mut identities = Vec::new();
    for (k, b) in sub.iter().enumerate() {
        // coefficient of a_t in α(b)
        let coeffs: Vec<NcPoly> = (0..n)
            .map(|t| {
                let mut p = NcPoly::zero();
                for (r, br) in b.iter().enumerate() {
                    if !br.is_zero() {
                        p.add_assign_scaled(&alpha[t][r], br);
                    }
                }
                p
            })
            .collect();
        for (f, phi) in annihilators.iter().enumerate() {
            let mut p = NcPoly::zero();
            for (t, c) in phi.iter().enumerate() {
                if !c.is_zero() {
                    p.add_assign_scaled(&coeffs[t], c);
                }
            }
            identities.push(Identity {
                label: format!("element {k} functional {f}"),
                poly: p,
            });
        }
    }
    Ok(Expansion {
        axiom: "subalgebra_preserved".into(),
        identities,
        skipped: 0,
    })
}

/// The nonzero coefficients of `α(b)` outside `B ⊗ Q`, for `b` running over
/// the subalgebra basis; `α(B) ⊂ B ⊗ Q` holds exactly when they vanish.
pub fn subalgebra_obstructions(
    spec: &FiltrationSpec,
    cert: &CoactionCertificate,
    sub: &[Coords],
) -> Result<Vec<NcPoly>> {
    Ok(subalgebra_expansion(spec, cert, sub)?
        .identities
        .into_iter()
        .map(|i| i.poly)
        .filter(|p| !p.is_zero())
        .collect())
}

/// Checks `α(B) ⊂ B ⊗ Q` for the subalgebra spanned by `sub`.
pub fn check_subalgebra_preserved(
    spec: &FiltrationSpec,
    cert: &CoactionCertificate,
    sub: &[Coords],
    numeric: Option<&NumericCheck>,
) -> Result<AxiomReport> {
    let exp = subalgebra_expansion(spec, cert, sub)?;
    let mut v = Verifier::new(&cert.target, cert.rewrite_cfg, numeric)?;
    Ok(v.check_all(&[exp]))
}

/// `ω² = 1`, `ω* = ω` and `Δ(ω) = ω ⊗ ω` in the target.
pub fn check_group_like(
    target: &Presentation,
    omega: &NcPoly,
    cfg: RewriteConfig,
    numeric: Option<&NumericCheck>,
) -> Result<AxiomReport> {
    let one = |axiom: &str, poly: NcPoly| Expansion {
        axiom: axiom.into(),
        identities: vec![Identity {
            label: axiom.into(),
            poly,
        }],
        skipped: 0,
    };
    let exps = [
        one("omega.square", &(omega * omega) - &NcPoly::one()),
        one("omega.self_adjoint", &omega.star() - omega),
        one(
            "omega.group_like",
            &target.comul_of(omega)? - &(&omega.in_slot(1) * &omega.in_slot(2)),
        ),
    ];
    let mut v = Verifier::new(target, cfg, numeric)?;
    Ok(v.check_all(&exps))
}
