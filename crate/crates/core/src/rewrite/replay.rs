//! Trace replay using plain polynomial arithmetic only.

use super::{Origin, Step};
use crate::error::{Error, Result};
use crate::ncalg::{NcPoly, Word};

use super::RewriteSystem;

/// Applies a trace to `input`: subtracts `coeff · l · R · r` for every step,
/// where `R = rule_poly(step.rule)` is placed in the step's tensor leg.
/// Each step is checked to really rewrite its recorded word.
pub fn replay(
    input: &NcPoly,
    trace: &[Step],
    rule_poly: impl Fn(usize) -> Option<NcPoly>,
) -> Result<NcPoly> {
    let mut acc = input.clone();
    for (k, st) in trace.iter().enumerate() {
        let r = rule_poly(st.rule)
            .ok_or_else(|| Error::Audit(format!("step {k}: unknown rule {}", st.rule)))?;
        let lead = r
            .leading()
            .ok_or_else(|| Error::Audit(format!("step {k}: zero rule")))?
            .0
            .clone();
        let letters = st.word.letters();
        let end = st.pos + lead.len();
        if end > letters.len()
            || letters[st.pos..end]
                .iter()
                .zip(lead.letters())
                .any(|(a, b)| *a != b.with_slot(st.slot))
        {
            return Err(Error::Audit(format!(
                "step {k}: rule {} does not match {} at {}",
                st.rule, st.word, st.pos
            )));
        }
        if acc.coeff(&st.word) != Some(&st.coeff) {
            return Err(Error::Audit(format!(
                "step {k}: coefficient of {} is not {}",
                st.word, st.coeff
            )));
        }
        let left = NcPoly::word(Word::from_letters(letters[..st.pos].to_vec()));
        let right = NcPoly::word(Word::from_letters(letters[end..].to_vec()));
        let term = &(&left * &r.in_slot(st.slot)) * &right;
        acc = &acc - &term.scale(&st.coeff);
    }
    Ok(acc)
}

/// Re-derives every rule of `sys` from its origin and the rules before it,
/// and checks that every input relation is one of `sources` or the star of
/// one. Together with [`replay`] of a certificate trace this shows ideal
/// membership without trusting the completion code.
pub fn audit(sys: &RewriteSystem, sources: &[NcPoly]) -> Result<()> {
    let monic_sources: Vec<NcPoly> = sources.iter().map(NcPoly::monic).collect();
    for (k, p) in sys.inputs().iter().enumerate() {
        let m = p.monic();
        let sm = p.star().monic();
        if !monic_sources.iter().any(|s| *s == m || *s == sm) {
            return Err(Error::Audit(format!("input {k} is not a source relation")));
        }
    }
    let rules = sys.rules();
    let polys: Vec<NcPoly> = rules.iter().map(|r| r.poly()).collect();
    for (k, rule) in rules.iter().enumerate() {
        let earlier = |j: usize| (j < k).then(|| polys[j].clone());
        let start = match &rule.origin {
            Origin::Input(i) => sys
                .inputs()
                .get(*i)
                .cloned()
                .ok_or_else(|| Error::Audit(format!("rule {k}: unknown input {i}")))?,
            Origin::Requeue(j) => {
                earlier(*j).ok_or_else(|| Error::Audit(format!("rule {k}: bad requeue {j}")))?
            }
            Origin::Overlap {
                left,
                right,
                overlap,
            } => {
                let (a, b) = match (earlier(*left), earlier(*right)) {
                    (Some(a), Some(b)) => (a, b),
                    _ => return Err(Error::Audit(format!("rule {k}: bad overlap parents"))),
                };
                let la = a.leading().expect("rule").0.letters().to_vec();
                let lb = b.leading().expect("rule").0.letters().to_vec();
                if *overlap == 0
                    || *overlap > la.len().min(lb.len())
                    || la[la.len() - overlap..] != lb[..*overlap]
                {
                    return Err(Error::Audit(format!("rule {k}: leads do not overlap")));
                }
                let head = NcPoly::word(Word::from_letters(la[..la.len() - overlap].to_vec()));
                let tail = NcPoly::word(Word::from_letters(lb[*overlap..].to_vec()));
                &(&a * &tail) - &(&head * &b)
            }
        };
        let rest = replay(&start, &rule.derivation, earlier)?;
        if rest.is_zero() || rest.monic() != polys[k] {
            return Err(Error::Audit(format!("rule {k} does not replay")));
        }
    }
    Ok(())
}
