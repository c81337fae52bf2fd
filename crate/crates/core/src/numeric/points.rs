use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ncalg::{FamilyShape, Generator, NcPoly, Presentation};

/// Relation tolerance for classical points.
pub const RELATION_TOL: f64 = 1e-9;

/// Enumerating more family combinations than this switches to sampling.
const MAX_COMBINATIONS: usize = 50_000;

/// One scalar per generator: a character of the presented algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassicalPoint {
    families: Vec<(FamilyShape, Vec<Vec<Complex64>>)>,
    values: BTreeMap<Generator, Complex64>,
}

impl ClassicalPoint {
    pub fn new(families: Vec<(FamilyShape, Vec<Vec<Complex64>>)>) -> Result<ClassicalPoint> {
        let mut values = BTreeMap::new();
        for (f, m) in &families {
            if m.len() != usize::from(f.rows) || m.iter().any(|r| r.len() != usize::from(f.cols)) {
                return Err(Error::Shape(format!(
                    "point matrix for {}[{}]",
                    f.label, f.block
                )));
            }
            for (i, row) in m.iter().enumerate() {
                for (j, &x) in row.iter().enumerate() {
                    values.insert(f.generator(i as u16 + 1, j as u16 + 1).base(), x);
                }
            }
        }
        Ok(ClassicalPoint { families, values })
    }

    /// Value of a letter (starred letters conjugate, slots are ignored).
    pub fn value(&self, g: Generator) -> Result<Complex64> {
        let base = g.base();
        let x = self
            .values
            .get(&base.unstarred())
            .ok_or_else(|| Error::MissingGenerator(base.to_string()))?;
        Ok(if base.is_starred() { x.conj() } else { *x })
    }

    pub fn matrix(&self, label: &str, block: i32) -> Option<&Vec<Vec<Complex64>>> {
        self.families
            .iter()
            .find(|(f, _)| f.label == label && f.block == block)
            .map(|(_, m)| m)
    }
}

fn fmt_c(x: Complex64) -> String {
    let r = |v: f64| {
        if (v - v.round()).abs() < 1e-12 {
            format!("{}", v.round() as i64)
        } else {
            format!("{v:.6}")
        }
    };
    if x.im.abs() < 1e-12 {
        r(x.re)
    } else {
        format!("{}{:+}i", r(x.re), x.im)
    }
}

impl fmt::Display for ClassicalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = self.families.iter().map(|(fam, m)| {
            let rows = m
                .iter()
                .map(|row| format!("[{}]", row.iter().map(|&x| fmt_c(x)).join(",")))
                .join(",");
            format!("{}[{}]=[{rows}]", fam.label, fam.block)
        });
        write!(f, "{}", parts.format(" "))
    }
}

/// Evaluates a polynomial at one point (all tensor legs at the same point).
pub fn eval_at_point(poly: &NcPoly, point: &ClassicalPoint) -> Result<Complex64> {
    eval_at_points(poly, &[point])
}

/// Evaluates a tensor polynomial with leg `k ≥ 1` at `points[k - 1]`
/// (untensored letters use `points[0]`).
pub fn eval_at_points(poly: &NcPoly, points: &[&ClassicalPoint]) -> Result<Complex64> {
    let mut total = Complex64::new(0.0, 0.0);
    for (w, c) in poly.terms() {
        let mut acc = c.to_f64();
        for &g in w.letters() {
            let k = usize::from(g.slot().max(1)) - 1;
            let pt = points.get(k).ok_or_else(|| {
                Error::InvalidParams(format!("no point for tensor leg {}", k + 1))
            })?;
            acc *= pt.value(g)?;
        }
        total += acc;
    }
    Ok(total)
}

/// Number of tensor legs a polynomial uses (at least one).
pub fn legs(poly: &NcPoly) -> usize {
    poly.terms()
        .map(|(w, _)| usize::from(w.max_slot()))
        .max()
        .unwrap_or(0)
        .max(1)
}

/// How candidate points are generated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PointStrategy {
    /// Signed permutation matrices for families of size ≤ 3, seeded random
    /// unitaries for larger ones.
    Exhaustive { seed: u64, samples: usize },
    /// Seeded random unitaries for every family.
    RandomUnitaries { seed: u64, samples: usize },
}

impl Default for PointStrategy {
    fn default() -> Self {
        PointStrategy::Exhaustive {
            seed: 0x5eed,
            samples: 64,
        }
    }
}

/// All `d × d` signed permutation matrices, in lexicographic order of the
/// permutation and then of the signs (sign bit 0 meaning +1).
pub fn signed_permutations(d: usize) -> Vec<Vec<Vec<Complex64>>> {
    let mut out = Vec::new();
    for perm in (0..d).permutations(d) {
        for signs in 0..(1u32 << d) {
            let mut m = vec![vec![Complex64::new(0.0, 0.0); d]; d];
            for (i, &j) in perm.iter().enumerate() {
                let s = if signs >> i & 1 == 1 { -1.0 } else { 1.0 };
                m[i][j] = Complex64::new(s, 0.0);
            }
            out.push(m);
        }
    }
    out
}

/// A Haar-like random unitary from the QR decomposition of a complex
/// Gaussian matrix.
pub fn random_unitary(d: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<Complex64>> {
    let mut cols: Vec<Vec<Complex64>> = (0..d)
        .map(|_| {
            (0..d)
                .map(|_| {
                    let re: f64 = StandardNormal.sample(rng);
                    let im: f64 = StandardNormal.sample(rng);
                    Complex64::new(re, im)
                })
                .collect()
        })
        .collect();
    for k in 0..d {
        for j in 0..k {
            let c: Complex64 = (0..d).map(|i| cols[j][i].conj() * cols[k][i]).sum();
            for i in 0..d {
                let x = cols[j][i];
                cols[k][i] -= c * x;
            }
        }
        let n = cols[k].iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        for x in &mut cols[k] {
            *x /= n;
        }
    }
    (0..d)
        .map(|i| (0..d).map(|j| cols[j][i]).collect())
        .collect()
}

fn family_candidates(
    fam: &FamilyShape,
    strategy: &PointStrategy,
    rng: &mut ChaCha8Rng,
) -> Vec<Vec<Vec<Complex64>>> {
    let d = usize::from(fam.rows);
    let square = fam.rows == fam.cols;
    match strategy {
        PointStrategy::Exhaustive { samples, .. } if !(square && d <= 3) => {
            (0..*samples).map(|_| random_unitary(d, rng)).collect()
        }
        PointStrategy::Exhaustive { .. } => signed_permutations(d),
        PointStrategy::RandomUnitaries { samples, .. } => {
            (0..*samples).map(|_| random_unitary(d, rng)).collect()
        }
    }
}

/// Candidate points for all families of `p`, without filtering by the
/// relations.
pub fn candidate_points(p: &Presentation, strategy: &PointStrategy) -> Vec<ClassicalPoint> {
    let seed = match strategy {
        PointStrategy::Exhaustive { seed, .. } | PointStrategy::RandomUnitaries { seed, .. } => {
            *seed
        }
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fams: Vec<&FamilyShape> = p.families.iter().filter(|f| f.slot == 0).collect();
    let per: Vec<Vec<Vec<Vec<Complex64>>>> = fams
        .iter()
        .map(|f| family_candidates(f, strategy, &mut rng))
        .collect();
    let total = per
        .iter()
        .map(Vec::len)
        .try_fold(1usize, usize::checked_mul);
    let build = |choice: Vec<&Vec<Vec<Complex64>>>| {
        ClassicalPoint::new(
            fams.iter()
                .zip(choice)
                .map(|(f, m)| ((*f).clone(), m.clone()))
                .collect(),
        )
        .expect("candidate shapes match")
    };
    if fams.is_empty() {
        return vec![build(Vec::new())];
    }
    match total {
        Some(n) if n <= MAX_COMBINATIONS => per
            .iter()
            .map(|c| c.iter())
            .multi_cartesian_product()
            .map(build)
            .collect(),
        _ => {
            use rand::Rng;
            (0..MAX_COMBINATIONS)
                .map(|_| build(per.iter().map(|c| &c[rng.gen_range(0..c.len())]).collect()))
                .collect()
        }
    }
}

/// Candidates at which every relation of `p` vanishes within `tol`.
pub fn classical_points(
    p: &Presentation,
    strategy: &PointStrategy,
    tol: f64,
) -> Vec<ClassicalPoint> {
    candidate_points(p, strategy)
        .into_iter()
        .filter(|pt| {
            p.relations
                .iter()
                .all(|r| eval_at_point(r, pt).is_ok_and(|v| v.norm() < tol))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub relation: usize,
    /// One point per tensor leg.
    pub points: Vec<ClassicalPoint>,
    pub value: Complex64,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "relation {} evaluates to {} at {}",
            self.relation,
            fmt_c(self.value),
            self.points.iter().join(" | ")
        )
    }
}

/// The first relation and point tuple (in enumeration order) where a relation
/// exceeds `tol`. Tensor relations are tried on all tuples of points.
/// Letters the points do not assign are an error.
pub fn falsify(
    relations: &[NcPoly],
    points: &[ClassicalPoint],
    tol: f64,
) -> Result<Option<Witness>> {
    for (k, r) in relations.iter().enumerate() {
        let n = legs(r);
        for tuple in (0..n).map(|_| points.iter()).multi_cartesian_product() {
            let v = eval_at_points(r, &tuple)?;
            if v.norm() > tol {
                return Ok(Some(Witness {
                    relation: k,
                    points: tuple.into_iter().cloned().collect(),
                    value: v,
                }));
            }
        }
    }
    Ok(None)
}
