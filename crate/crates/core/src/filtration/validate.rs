use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{unit_coords, Coords, FiltrationSpec};
use crate::arith::{first_nonpositive_minor, Matrix, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckResult {
    fn pass() -> CheckResult {
        CheckResult {
            passed: true,
            witness: None,
        }
    }

    fn fail(witness: String) -> CheckResult {
        CheckResult {
            passed: false,
            witness: Some(witness),
        }
    }

    fn from(r: std::result::Result<(), String>) -> CheckResult {
        r.map_or_else(CheckResult::fail, |()| CheckResult::pass())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub checks: BTreeMap<String, CheckResult>,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.values().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = (&String, &CheckResult)> {
        self.checks.iter().filter(|(_, c)| !c.passed)
    }
}

type Check = std::result::Result<(), String>;

fn fmt_coords(x: &[Scalar]) -> String {
    let parts: Vec<String> = x.iter().map(Scalar::to_string).collect();
    format!("[{}]", parts.join(", "))
}

/// Runs every invariant check. Shape errors are reported as a single failed
/// `shape` entry.
pub fn validate(spec: &FiltrationSpec) -> ValidationReport {
    let mut report = ValidationReport::default();
    if let Err(e) = spec.check_shapes() {
        report
            .checks
            .insert("shape".into(), CheckResult::fail(e.to_string()));
        return report;
    }
    let checks: [(&str, fn(&FiltrationSpec) -> Check); 16] = [
        ("blocks.partition", blocks_partition),
        ("algebra.associativity", associativity),
        ("algebra.unit", unit),
        ("algebra.star_involution", star_involution),
        ("algebra.star_antimultiplicative", star_antimultiplicative),
        ("algebra.trace_unit_positive", trace_unit),
        ("algebra.trace_star", trace_star),
        ("algebra.faithful", faithful),
        ("module.hermitian", hermitian),
        ("module.a_linear", a_linear),
        ("module.action_associative", action_associative),
        ("module.positive", positive),
        ("module.block_orthonormal", block_orthonormal),
        ("module.cross_block_orthogonal", cross_block),
        ("module.j_invertible", j_invertible),
        ("module.fullness", fullness),
    ];
    for (name, f) in checks {
        report
            .checks
            .insert(name.into(), CheckResult::from(f(spec)));
    }
    report
}

fn blocks_partition(spec: &FiltrationSpec) -> Check {
    let mut seen = vec![0usize; spec.module_dim];
    for (i, b) in spec.blocks.iter().enumerate() {
        if b.is_empty() {
            return Err(format!("block {} is empty", spec.label(i)));
        }
        for &m in b {
            seen[m] += 1;
        }
    }
    match seen.iter().position(|&c| c != 1) {
        Some(m) => Err(format!("basis vector {m} lies in {} blocks", seen[m])),
        None => Ok(()),
    }
}

fn associativity(spec: &FiltrationSpec) -> Check {
    let a = &spec.algebra;
    for r in 0..a.dim {
        for s in 0..a.dim {
            let Some(rs) = &a.struct_consts[r][s] else {
                continue;
            };
            for t in 0..a.dim {
                let left = a.mul(rs, &a.basis_vector(t));
                let right = a.struct_consts[s][t]
                    .as_ref()
                    .and_then(|st| a.mul(&a.basis_vector(r), st));
                if let (Some(l), Some(rr)) = (left, right) {
                    if l != rr {
                        return Err(format!(
                            "(a{r} a{s}) a{t} = {} but a{r} (a{s} a{t}) = {}",
                            fmt_coords(&l),
                            fmt_coords(&rr)
                        ));
                    }
                }
            }
        }
    }
    Ok(())
}

fn unit(spec: &FiltrationSpec) -> Check {
    let a = &spec.algebra;
    for r in 0..a.dim {
        let e = a.basis_vector(r);
        for (side, p) in [
            ("1 a", a.mul(&a.unit_vector, &e)),
            ("a 1", a.mul(&e, &a.unit_vector)),
        ] {
            match p {
                Some(x) if x == e => {}
                Some(x) => return Err(format!("{side}{r} = {}", fmt_coords(&x))),
                None => return Err(format!("{side}{r} is undefined")),
            }
        }
    }
    Ok(())
}

fn star_involution(spec: &FiltrationSpec) -> Check {
    let a = &spec.algebra;
    for r in 0..a.dim {
        let back = a.star(&a.star_basis(r));
        if back != a.basis_vector(r) {
            return Err(format!("a{r}** = {}", fmt_coords(&back)));
        }
    }
    Ok(())
}

fn star_antimultiplicative(spec: &FiltrationSpec) -> Check {
    let a = &spec.algebra;
    for r in 0..a.dim {
        for s in 0..a.dim {
            let Some(rs) = &a.struct_consts[r][s] else {
                continue;
            };
            if let Some(rhs) = a.mul(&a.star_basis(s), &a.star_basis(r)) {
                let lhs = a.star(rs);
                if lhs != rhs {
                    return Err(format!(
                        "(a{r} a{s})* = {} but a{s}* a{r}* = {}",
                        fmt_coords(&lhs),
                        fmt_coords(&rhs)
                    ));
                }
            }
        }
    }
    Ok(())
}

fn trace_unit(spec: &FiltrationSpec) -> Check {
    let t = spec.algebra.tau(&spec.algebra.unit_vector);
    if t.is_positive_real() {
        Ok(())
    } else {
        Err(format!("τ(1) = {t}"))
    }
}

fn trace_star(spec: &FiltrationSpec) -> Check {
    let a = &spec.algebra;
    for r in 0..a.dim {
        let lhs = a.tau(&a.star_basis(r));
        if lhs != a.trace_vector[r].conj() {
            return Err(format!(
                "τ(a{r}*) = {lhs}, conj τ(a{r}) = {}",
                a.trace_vector[r].conj()
            ));
        }
    }
    Ok(())
}

/// Largest initial-greedy set of basis elements whose pairwise products
/// `a_r* a_s` are all defined.
pub(crate) fn closed_core(spec: &FiltrationSpec) -> Vec<usize> {
    let a = &spec.algebra;
    let mut core: Vec<usize> = Vec::new();
    for r in 0..a.dim {
        let ok = core.iter().chain(std::iter::once(&r)).all(|&s| {
            a.mul(&a.star_basis(r), &a.basis_vector(s)).is_some()
                && a.mul(&a.star_basis(s), &a.basis_vector(r)).is_some()
        });
        if ok {
            core.push(r);
        }
    }
    core
}

fn faithful(spec: &FiltrationSpec) -> Check {
    let a = &spec.algebra;
    let core = closed_core(spec);
    let rows: Vec<Vec<Scalar>> = core
        .iter()
        .map(|&r| {
            core.iter()
                .map(|&s| {
                    let p = a
                        .mul(&a.star_basis(r), &a.basis_vector(s))
                        .expect("closed core");
                    a.tau(&p)
                })
                .collect()
        })
        .collect();
    let g = Matrix::from_rows(rows).expect("square");
    if !g.is_hermitian() {
        return Err("Gram matrix τ(a_r* a_s) is not Hermitian".into());
    }
    match first_nonpositive_minor(&g) {
        Some((k, v)) => Err(format!(
            "leading minor of size {k} of the Gram matrix τ(a_r* a_s) on basis {core:?} is {v}"
        )),
        None => Ok(()),
    }
}

fn hermitian(spec: &FiltrationSpec) -> Check {
    let a = &spec.algebra;
    for m in 0..spec.module_dim {
        for n in 0..spec.module_dim {
            let want = a.star(spec.inner(m, n));
            if spec.inner(n, m) != want.as_slice() {
                return Err(format!("⟨ε{n}|ε{m}⟩ ≠ ⟨ε{m}|ε{n}⟩*"));
            }
        }
    }
    Ok(())
}

fn a_linear(spec: &FiltrationSpec) -> Check {
    let a = &spec.algebra;
    for m in 0..spec.module_dim {
        for n in 0..spec.module_dim {
            for r in 0..a.dim {
                let Some(nr) = &spec.action_tensor[n][r] else {
                    continue;
                };
                let Some(rhs) = a.mul(spec.inner(m, n), &a.basis_vector(r)) else {
                    continue;
                };
                let lhs = spec.inner_vec(&unit_coords(spec.module_dim, m), nr);
                if lhs != rhs {
                    return Err(format!(
                        "⟨ε{m}|ε{n}·a{r}⟩ = {} but ⟨ε{m}|ε{n}⟩a{r} = {}",
                        fmt_coords(&lhs),
                        fmt_coords(&rhs)
                    ));
                }
            }
        }
    }
    Ok(())
}

/// `x · a` for module coordinates, if defined.
pub(crate) fn act(spec: &FiltrationSpec, x: &[Scalar], y: &[Scalar]) -> Option<Coords> {
    let mut out = vec![Scalar::zero(); spec.module_dim];
    for (m, xm) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        for (r, yr) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let v = spec.action_tensor[m][r].as_ref()?;
            super::axpy(&mut out, &(xm * yr), v);
        }
    }
    Some(out)
}

fn action_associative(spec: &FiltrationSpec) -> Check {
    let a = &spec.algebra;
    for m in 0..spec.module_dim {
        let e = unit_coords(spec.module_dim, m);
        match act(spec, &e, &a.unit_vector) {
            Some(x) if x == e => {}
            _ => return Err(format!("ε{m}·1 ≠ ε{m}")),
        }
        for r in 0..a.dim {
            let Some(mr) = &spec.action_tensor[m][r] else {
                continue;
            };
            for s in 0..a.dim {
                let left = act(spec, mr, &a.basis_vector(s));
                let right = a.struct_consts[r][s]
                    .as_ref()
                    .and_then(|rs| act(spec, &e, rs));
                if let (Some(l), Some(rr)) = (left, right) {
                    if l != rr {
                        return Err(format!("(ε{m}·a{r})·a{s} ≠ ε{m}·(a{r}a{s})"));
                    }
                }
            }
        }
    }
    Ok(())
}

fn positive(spec: &FiltrationSpec) -> Check {
    let t = super::gram_tau(spec);
    if !t.is_hermitian() {
        return Err("τ-Gram is not Hermitian".into());
    }
    match first_nonpositive_minor(&t) {
        Some((k, v)) => Err(format!("leading minor of size {k} of the τ-Gram is {v}")),
        None => Ok(()),
    }
}

fn block_orthonormal(spec: &FiltrationSpec) -> Check {
    let t = super::gram_tau(spec);
    for (i, b) in spec.blocks.iter().enumerate() {
        for (j, &m) in b.iter().enumerate() {
            for (k, &n) in b.iter().enumerate() {
                let want = Scalar::from_int(i64::from(j == k));
                if t[(m, n)] != want {
                    return Err(format!(
                        "block {} entry ({j}, {k}): τ⟨ε{m}|ε{n}⟩ = {}",
                        spec.label(i),
                        t[(m, n)]
                    ));
                }
            }
        }
    }
    Ok(())
}

fn cross_block(spec: &FiltrationSpec) -> Check {
    let t = super::gram_tau(spec);
    for (i, bi) in spec.blocks.iter().enumerate() {
        for (j, bj) in spec.blocks.iter().enumerate() {
            if i == j {
                continue;
            }
            for &m in bi {
                for &n in bj {
                    if !t[(m, n)].is_zero() {
                        return Err(format!(
                            "blocks ({}, {}) entry (ε{m}, ε{n}): τ⟨ε{m}|ε{n}⟩ = {}",
                            spec.label(i),
                            spec.label(j),
                            t[(m, n)]
                        ));
                    }
                }
            }
        }
    }
    Ok(())
}

fn j_invertible(spec: &FiltrationSpec) -> Check {
    let r = spec.j_matrix.rank();
    if r == spec.module_dim {
        Ok(())
    } else {
        Err(format!("rank of j_matrix is {r} < {}", spec.module_dim))
    }
}

fn fullness(spec: &FiltrationSpec) -> Check {
    let rows: Vec<Vec<Scalar>> = spec.inner_tensor.iter().flatten().cloned().collect();
    let r = if rows.is_empty() {
        0
    } else {
        Matrix::from_rows(rows).expect("uniform").rank()
    };
    if r == spec.algebra.dim {
        Ok(())
    } else {
        Err(format!(
            "inner products span rank {r} < {}",
            spec.algebra.dim
        ))
    }
}
