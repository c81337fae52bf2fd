use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{MembershipCertificate, Origin, RewriteConfig, Status, Step};
use crate::arith::Scalar;
use crate::error::{Error, Result};
use crate::ncalg::{Generator, NcPoly, Word};

#[derive(Clone, Debug, PartialEq)]
pub struct Rule {
    pub lead: Word,
    /// What `lead` rewrites to; every term is smaller than `lead`.
    pub rhs: NcPoly,
    pub origin: Origin,
    /// Reduction of the origin polynomial down to this rule (before scaling).
    pub derivation: Vec<Step>,
    pub active: bool,
}

impl Rule {
    /// The monic relation `lead − rhs`.
    pub fn poly(&self) -> NcPoly {
        &NcPoly::word(self.lead.clone()) - &self.rhs
    }
}

/// A (possibly partial) set of reduction rules together with the input
/// relations and full rule history.
#[derive(Clone, Debug)]
pub struct RewriteSystem {
    inputs: Vec<NcPoly>,
    rules: Vec<Rule>,
    index: HashMap<Vec<Generator>, usize>,
    cfg: RewriteConfig,
    complete: bool,
    passes: usize,
    degree_reached: usize,
}

impl RewriteSystem {
    pub fn config(&self) -> RewriteConfig {
        self.cfg
    }

    /// Input relations after adding star images and removing duplicates.
    pub fn inputs(&self) -> &[NcPoly] {
        &self.inputs
    }

    /// Every rule ever admitted, retired ones included; ids are indices.
    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn active_rules(&self) -> impl Iterator<Item = (usize, &Rule)> {
        self.rules.iter().enumerate().filter(|(_, r)| r.active)
    }

    pub fn basis_size(&self) -> usize {
        self.index.len()
    }

    /// True when the critical-pair queue was exhausted within the pass cap.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn passes(&self) -> usize {
        self.passes
    }

    pub fn degree_reached(&self) -> usize {
        self.degree_reached
    }

    /// Active rule with the given lead, if any.
    pub fn rule_for(&self, lead: &Word) -> Option<&Rule> {
        self.index.get(lead.letters()).map(|&k| &self.rules[k])
    }

    fn check_degree(&self, p: &NcPoly) -> Result<()> {
        let degree = p.leg_degree();
        if degree > self.cfg.max_degree {
            return Err(Error::DegreeOverflow {
                degree,
                bound: self.cfg.max_degree,
            });
        }
        Ok(())
    }

    /// Normal form of `p` with a certificate (Proven iff the normal form is 0).
    pub fn reduce(&self, p: &NcPoly) -> Result<(NcPoly, MembershipCertificate)> {
        self.check_degree(p)?;
        let mut trace = Vec::new();
        let nf = self.reduce_fast(p, &mut trace);
        let cert = self.certificate(trace, nf.clone());
        Ok((nf, cert))
    }

    /// Normal form choosing a random redex at every step.
    pub fn reduce_randomized(&self, p: &NcPoly, seed: u64) -> NcPoly {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut trace = Vec::new();
        self.reduce_with(p, &mut trace, false, |ms| {
            (!ms.is_empty()).then(|| ms[rng.gen_range(0..ms.len())])
        })
    }

    fn certificate(&self, trace: Vec<Step>, nf: NcPoly) -> MembershipCertificate {
        MembershipCertificate {
            status: if nf.is_zero() {
                Status::Proven
            } else {
                Status::Inconclusive
            },
            reduction_trace: trace,
            normal_form: nf,
            basis_size: self.basis_size(),
            degree_reached: self.degree_reached,
        }
    }

    /// All redexes `(rule, slot, pos, len)` of a word, leftmost first, then
    /// shortest first. With `first_only` the scan stops at the first hit.
    fn redexes(&self, w: &Word, first_only: bool) -> Vec<Redex> {
        let mut out = Vec::new();
        if self.index.is_empty() {
            return out;
        }
        let letters = w.letters();
        let mut base: Vec<Generator> = Vec::new();
        for (slot, range) in w.slot_segments() {
            let seg: &[Generator] = if slot == 0 {
                &letters[range.clone()]
            } else {
                base.clear();
                base.extend(letters[range.clone()].iter().map(|g| g.base()));
                &base
            };
            for i in 0..seg.len() {
                for j in i + 1..=seg.len().min(i + self.cfg.max_degree) {
                    if let Some(&rule) = self.index.get(&seg[i..j]) {
                        out.push(Redex {
                            rule,
                            slot,
                            pos: range.start + i,
                            len: j - i,
                        });
                        if first_only {
                            return out;
                        }
                    }
                }
            }
        }
        out
    }

    fn reduce_with(
        &self,
        p: &NcPoly,
        trace: &mut Vec<Step>,
        first_only: bool,
        mut choose: impl FnMut(&[Redex]) -> Option<Redex>,
    ) -> NcPoly {
        let mut work = p.clone().into_terms();
        let mut done = BTreeMap::new();
        while let Some((w, c)) = work.pop_last() {
            let Some(rx) = choose(&self.redexes(&w, first_only)) else {
                done.insert(w, c);
                continue;
            };
            let letters = w.letters();
            for (tw, tc) in self.rules[rx.rule].rhs.terms() {
                let mut v = Vec::with_capacity(letters.len() - rx.len + tw.len());
                v.extend_from_slice(&letters[..rx.pos]);
                v.extend(tw.letters().iter().map(|g| g.with_slot(rx.slot)));
                v.extend_from_slice(&letters[rx.pos + rx.len..]);
                add_to(&mut work, Word::from_canonical(v), tc * &c);
            }
            trace.push(Step {
                rule: rx.rule,
                slot: rx.slot,
                word: w,
                pos: rx.pos,
                coeff: c,
            });
        }
        NcPoly::from_terms(done)
    }

    fn reduce_fast(&self, p: &NcPoly, trace: &mut Vec<Step>) -> NcPoly {
        self.reduce_with(p, trace, true, |ms| ms.first().copied())
    }

    fn divides_some_term(&self, lead: &Word, p: &NcPoly) -> bool {
        let l = lead.letters();
        p.terms().any(|(w, _)| {
            let letters = w.letters();
            w.slot_segments().into_iter().any(|(_, r)| {
                letters[r]
                    .windows(l.len())
                    .any(|win| win.iter().zip(l).all(|(a, b)| a.base() == *b))
            })
        })
    }
}

#[derive(Clone, Copy, Debug)]
struct Redex {
    rule: usize,
    slot: u8,
    pos: usize,
    len: usize,
}

fn add_to(map: &mut BTreeMap<Word, Scalar>, w: Word, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match map.entry(w) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += &c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

fn contains(hay: &[Generator], needle: &[Generator]) -> bool {
    hay.windows(needle.len()).any(|w| w == needle)
}

#[derive(Clone, Debug)]
enum Task {
    Input(usize),
    Pair {
        left: usize,
        right: usize,
        overlap: usize,
    },
    Requeue(usize),
}

/// Outcome of one completion step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepOutcome {
    /// A task was processed; the id of the admitted rule, if any.
    Processed(Option<usize>),
    /// The queue is empty: the system is complete up to the degree bound.
    Exhausted,
    /// The pass cap was reached.
    Budget,
}

/// Incremental completion: tasks are processed smallest word first (deg-lex),
/// ties broken by creation order.
#[derive(Clone, Debug)]
pub struct Completion {
    sys: RewriteSystem,
    queue: BinaryHeap<Reverse<(Word, u64)>>,
    tasks: HashMap<u64, Task>,
    seq: u64,
}

impl Completion {
    pub fn new(relations: &[NcPoly], cfg: RewriteConfig) -> Result<Completion> {
        let mut inputs: Vec<NcPoly> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for r in relations {
            if r.is_zero() {
                continue;
            }
            if r.letters().iter().any(|g| g.slot() != 0) {
                return Err(Error::InvalidSpec(format!("tensored relation {r}")));
            }
            let degree = r.degree();
            if degree > cfg.max_degree {
                return Err(Error::DegreeOverflow {
                    degree,
                    bound: cfg.max_degree,
                });
            }
            for p in [r.clone(), r.star()] {
                if seen.insert(p.monic()) {
                    inputs.push(p);
                }
            }
        }
        let mut c = Completion {
            sys: RewriteSystem {
                inputs,
                rules: Vec::new(),
                index: HashMap::new(),
                cfg,
                complete: false,
                passes: 0,
                degree_reached: 0,
            },
            queue: BinaryHeap::new(),
            tasks: HashMap::new(),
            seq: 0,
        };
        for k in 0..c.sys.inputs.len() {
            let key = c.sys.inputs[k].leading().expect("nonzero").0.clone();
            c.push(key, Task::Input(k));
        }
        Ok(c)
    }

    pub fn system(&self) -> &RewriteSystem {
        &self.sys
    }

    pub fn into_system(self) -> RewriteSystem {
        self.sys
    }

    fn push(&mut self, key: Word, task: Task) {
        self.tasks.insert(self.seq, task);
        self.queue.push(Reverse((key, self.seq)));
        self.seq += 1;
    }

    /// Processes tasks until the queue empties or the cap is hit.
    pub fn run(&mut self) {
        while let StepOutcome::Processed(_) = self.step() {}
    }

    /// Processes tasks until a rule is admitted or completion stops.
    pub fn step_until_rule(&mut self) -> StepOutcome {
        loop {
            match self.step() {
                StepOutcome::Processed(None) => continue,
                other => return other,
            }
        }
    }

    pub fn step(&mut self) -> StepOutcome {
        if self.queue.is_empty() {
            self.sys.complete = true;
            return StepOutcome::Exhausted;
        }
        if self.sys.passes >= self.sys.cfg.max_passes {
            return StepOutcome::Budget;
        }
        let Reverse((key, id)) = self.queue.pop().expect("nonempty");
        let task = self.tasks.remove(&id).expect("queued task");
        self.sys.passes += 1;
        self.sys.degree_reached = self.sys.degree_reached.max(key.len());
        let (start, origin) = match task {
            Task::Input(k) => (self.sys.inputs[k].clone(), Origin::Input(k)),
            Task::Requeue(k) => (self.sys.rules[k].poly(), Origin::Requeue(k)),
            Task::Pair {
                left,
                right,
                overlap,
            } => {
                let (a, b) = (&self.sys.rules[left], &self.sys.rules[right]);
                if !a.active || !b.active {
                    return StepOutcome::Processed(None);
                }
                let la = a.lead.letters();
                let lb = b.lead.letters();
                let b_tail = Word::from_canonical(lb[overlap..].to_vec());
                let a_head = Word::from_canonical(la[..la.len() - overlap].to_vec());
                let s = &(&NcPoly::word(a_head) * &b.rhs) - &(&a.rhs * &NcPoly::word(b_tail));
                (
                    s,
                    Origin::Overlap {
                        left,
                        right,
                        overlap,
                    },
                )
            }
        };
        let mut derivation = Vec::new();
        let reduced = self.sys.reduce_fast(&start, &mut derivation);
        if reduced.is_zero() {
            return StepOutcome::Processed(None);
        }
        StepOutcome::Processed(Some(self.admit(reduced, origin, derivation)))
    }

    fn admit(&mut self, p: NcPoly, origin: Origin, derivation: Vec<Step>) -> usize {
        let monic = p.monic();
        let mut terms = monic.into_terms();
        let (lead, _) = terms.pop_last().expect("nonzero");
        let rhs = -&NcPoly::from_terms(terms);
        let id = self.sys.rules.len();
        let lead_letters = lead.letters().to_vec();
        let retired: Vec<usize> = self
            .sys
            .active_rules()
            .filter(|(_, r)| contains(r.lead.letters(), &lead_letters))
            .map(|(k, _)| k)
            .collect();
        for k in retired {
            self.sys.rules[k].active = false;
            self.sys.index.remove(self.sys.rules[k].lead.letters());
            let key = self.sys.rules[k].lead.clone();
            self.push(key, Task::Requeue(k));
        }
        self.sys.rules.push(Rule {
            lead: lead.clone(),
            rhs,
            origin,
            derivation,
            active: true,
        });
        self.sys.index.insert(lead_letters.clone(), id);

        let bound = self.sys.cfg.max_degree;
        let mut pairs = Vec::new();
        for (k, r) in self.sys.active_rules() {
            let other = r.lead.letters();
            // new lead followed by the other, then the other followed by the new one
            let orders = [
                (id, k, &lead_letters[..], other),
                (k, id, other, &lead_letters[..]),
            ];
            for (dir, (left, right, a, b)) in orders.into_iter().enumerate() {
                if k == id && dir == 1 {
                    continue;
                }
                for ov in 1..a.len().min(b.len()) {
                    if a.len() + b.len() - ov > bound {
                        continue;
                    }
                    if a[a.len() - ov..] == b[..ov] {
                        let mut w = a.to_vec();
                        w.extend_from_slice(&b[ov..]);
                        pairs.push((Word::from_canonical(w), left, right, ov));
                    }
                }
            }
        }
        for (w, left, right, overlap) in pairs {
            self.push(
                w,
                Task::Pair {
                    left,
                    right,
                    overlap,
                },
            );
        }
        id
    }
}

/// Lazily completing membership prover: completion only advances while the
/// current target is not yet reduced to zero.
#[derive(Clone, Debug)]
pub struct Prover {
    completion: Completion,
}

impl Prover {
    pub fn new(sources: &[NcPoly], cfg: RewriteConfig) -> Result<Prover> {
        Ok(Prover {
            completion: Completion::new(sources, cfg)?,
        })
    }

    pub fn system(&self) -> &RewriteSystem {
        self.completion.system()
    }

    pub fn into_system(self) -> RewriteSystem {
        self.completion.into_system()
    }

    pub fn prove(&mut self, target: &NcPoly) -> Result<MembershipCertificate> {
        self.completion.sys.check_degree(target)?;
        let mut trace = Vec::new();
        let mut nf = self.completion.sys.reduce_fast(target, &mut trace);
        while !nf.is_zero() {
            match self.completion.step_until_rule() {
                StepOutcome::Processed(Some(id)) => {
                    let lead = self.completion.sys.rules[id].lead.clone();
                    if self.completion.sys.rules[id].active
                        && self.completion.sys.divides_some_term(&lead, &nf)
                    {
                        nf = self.completion.sys.reduce_fast(&nf, &mut trace);
                    }
                }
                _ => break,
            }
        }
        Ok(self.completion.sys.certificate(trace, nf))
    }

    /// Proves every target, sharing one completion.
    pub fn prove_all(&mut self, targets: &[NcPoly]) -> Result<Vec<MembershipCertificate>> {
        targets.iter().map(|t| self.prove(t)).collect()
    }
}
