use crate::arith::{Matrix, Scalar};
use crate::error::Result;
use crate::filtration::{compute_s, FiltrationSpec};
use crate::ncalg::{
    poly_matmul, poly_transpose, scalar_to_poly_matrix, unitarity_relations, NcPoly, PolyMatrix,
};

use super::CoactionCertificate;

/// One polynomial that must vanish in the target.
#[derive(Clone, Debug, PartialEq)]
pub struct Identity {
    pub label: String,
    pub poly: NcPoly,
}

/// All identities of one axiom.
#[derive(Clone, Debug, PartialEq)]
pub struct Expansion {
    pub axiom: String,
    pub identities: Vec<Identity>,
    /// Instances dropped because some product is undefined in the truncation.
    pub skipped: usize,
}

impl Expansion {
    pub fn new(axiom: &str) -> Expansion {
        Expansion {
            axiom: axiom.to_string(),
            identities: Vec::new(),
            skipped: 0,
        }
    }

    pub fn push(&mut self, label: String, poly: NcPoly) {
        self.identities.push(Identity { label, poly });
    }
}

fn lin<'a>(terms: impl IntoIterator<Item = (&'a Scalar, &'a NcPoly)>) -> NcPoly {
    let mut out = NcPoly::zero();
    for (c, p) in terms {
        if !c.is_zero() && !p.is_zero() {
            out.add_assign_scaled(p, c);
        }
    }
    out
}

fn konst(c: &Scalar) -> NcPoly {
    NcPoly::constant(c.clone())
}

fn nonzero_rows(m: &PolyMatrix, col: usize) -> Vec<usize> {
    (0..m.len()).filter(|&r| !m[r][col].is_zero()).collect()
}

/// Axioms (a)–(g) of a coaction on the module.
pub fn expand_coaction(
    spec: &FiltrationSpec,
    cert: &CoactionCertificate,
) -> Result<Vec<Expansion>> {
    let alpha = &cert.alpha_matrix;
    let beta = cert.beta_full(spec);
    Ok(vec![
        multiplicative(spec, alpha),
        star(spec, alpha),
        unit(spec, alpha),
        inner_product(spec, alpha, &beta),
        module_map(spec, alpha, &beta),
        coassociative("f.coassociative_alpha", alpha, cert)?,
        coassociative("f.coassociative_beta", &beta, cert)?,
        density_beta(spec, cert),
        density_alpha(spec, cert)?,
    ])
}

/// Axioms (h)–(j) of a filtration-preserving coaction.
pub fn expand_filtration(spec: &FiltrationSpec, cert: &CoactionCertificate) -> Vec<Expansion> {
    let beta = cert.beta_full(spec);
    vec![
        trace(spec, &cert.alpha_matrix),
        j_equivariance(spec, &beta),
        xi0_fixed(spec, &beta),
    ]
}

/// Unitarity and the twisted relations of every `v⁽ⁱ⁾`.
pub fn expand_corep_unitarity(
    spec: &FiltrationSpec,
    cert: &CoactionCertificate,
) -> Result<Vec<Expansion>> {
    let names = ["vv*", "v*v", "v^t s vbar s^-1", "s vbar s^-1 v^t"];
    let mut out: Vec<Expansion> = names
        .iter()
        .map(|n| Expansion::new(&format!("corep.{n}")))
        .collect();
    for (i, v) in cert.beta_blocks.iter().enumerate() {
        let s = compute_s(spec, i)?;
        let rels = unitarity_relations(v, &s)?;
        let d = v.len();
        for (exp, family) in out.iter_mut().zip(rels) {
            for (k, poly) in family.into_iter().enumerate() {
                exp.push(
                    format!("block {} ({},{})", spec.label(i), k / d, k % d),
                    poly,
                );
            }
        }
    }
    Ok(out)
}

// α(a_r)α(a_s) = α(a_r a_s), coefficient of a_t.
fn multiplicative(spec: &FiltrationSpec, alpha: &PolyMatrix) -> Expansion {
    let alg = &spec.algebra;
    let n = alg.dim;
    let mut exp = Expansion::new("a.multiplicative");
    for r in 0..n {
        let pr = nonzero_rows(alpha, r);
        for s in 0..n {
            let Some(crs) = &alg.struct_consts[r][s] else {
                exp.skipped += 1;
                continue;
            };
            let qs = nonzero_rows(alpha, s);
            let defined = pr
                .iter()
                .all(|&p| qs.iter().all(|&q| alg.struct_consts[p][q].is_some()));
            if !defined {
                exp.skipped += 1;
                continue;
            }
            let mut lhs = vec![NcPoly::zero(); n];
            for &p in &pr {
                for &q in &qs {
                    let prod = &alpha[p][r] * &alpha[q][s];
                    let c = alg.struct_consts[p][q].as_ref().expect("checked");
                    for (t, ct) in c.iter().enumerate() {
                        if !ct.is_zero() {
                            lhs[t].add_assign_scaled(&prod, ct);
                        }
                    }
                }
            }
            for (t, l) in lhs.into_iter().enumerate() {
                let rhs = lin(crs.iter().zip(&alpha[t]));
                exp.push(format!("a{r}*a{s} @a{t}"), &l - &rhs);
            }
        }
    }
    exp
}

// α(a_r*) = α(a_r)*, coefficient of a_u.
fn star(spec: &FiltrationSpec, alpha: &PolyMatrix) -> Expansion {
    let alg = &spec.algebra;
    let n = alg.dim;
    let mut exp = Expansion::new("b.star");
    for r in 0..n {
        let sr = alg.star_basis(r);
        for u in 0..n {
            let lhs = lin(sr.iter().zip(&alpha[u]));
            let su = alg.star_basis(u);
            let col: Vec<NcPoly> = (0..n).map(|s| alpha[s][r].star()).collect();
            let rhs = lin(su.iter().zip(&col));
            exp.push(format!("a{r} @a{u}"), &lhs - &rhs);
        }
    }
    exp
}

fn unit(spec: &FiltrationSpec, alpha: &PolyMatrix) -> Expansion {
    let alg = &spec.algebra;
    let mut exp = Expansion::new("c.unit");
    for u in 0..alg.dim {
        let lhs = lin(alg.unit_vector.iter().zip(&alpha[u]));
        exp.push(format!("@a{u}"), &lhs - &konst(&alg.unit_vector[u]));
    }
    exp
}

// ⟨β(ε_m)|β(ε_n)⟩ = α(⟨ε_m|ε_n⟩), coefficient of a_t.
fn inner_product(spec: &FiltrationSpec, alpha: &PolyMatrix, beta: &PolyMatrix) -> Expansion {
    let na = spec.algebra.dim;
    let ne = spec.module_dim;
    let mut exp = Expansion::new("d.inner_product");
    for m in 0..ne {
        let pm = nonzero_rows(beta, m);
        for n in 0..ne {
            let qn = nonzero_rows(beta, n);
            let mut lhs = vec![NcPoly::zero(); na];
            for &p in &pm {
                let left = beta[p][m].star();
                for &q in &qn {
                    let prod = &left * &beta[q][n];
                    for (t, c) in spec.inner(p, q).iter().enumerate() {
                        if !c.is_zero() {
                            lhs[t].add_assign_scaled(&prod, c);
                        }
                    }
                }
            }
            let h = spec.inner(m, n);
            for (t, l) in lhs.into_iter().enumerate() {
                let rhs = lin(h.iter().zip(&alpha[t]));
                exp.push(format!("e{m},e{n} @a{t}"), &l - &rhs);
            }
        }
    }
    exp
}

// β(ε_m·a_r) = β(ε_m)α(a_r), coefficient of ε_p.
fn module_map(spec: &FiltrationSpec, alpha: &PolyMatrix, beta: &PolyMatrix) -> Expansion {
    let na = spec.algebra.dim;
    let ne = spec.module_dim;
    let g = &spec.action_tensor;
    let mut exp = Expansion::new("e.module_map");
    for m in 0..ne {
        let qm = nonzero_rows(beta, m);
        for r in 0..na {
            let Some(gmr) = &g[m][r] else {
                exp.skipped += 1;
                continue;
            };
            let sr = nonzero_rows(alpha, r);
            if !qm.iter().all(|&q| sr.iter().all(|&s| g[q][s].is_some())) {
                exp.skipped += 1;
                continue;
            }
            let mut rhs = vec![NcPoly::zero(); ne];
            for &q in &qm {
                for &s in &sr {
                    let prod = &beta[q][m] * &alpha[s][r];
                    let c = g[q][s].as_ref().expect("checked");
                    for (p, cp) in c.iter().enumerate() {
                        if !cp.is_zero() {
                            rhs[p].add_assign_scaled(&prod, cp);
                        }
                    }
                }
            }
            for (p, rp) in rhs.into_iter().enumerate() {
                let lhs = lin(gmr.iter().zip(&beta[p]));
                exp.push(format!("e{m}*a{r} @e{p}"), &lhs - &rp);
            }
        }
    }
    exp
}

// Σ_s M[t][s]⊗M[s][r] = Δ(M[t][r]).
fn coassociative(axiom: &str, m: &PolyMatrix, cert: &CoactionCertificate) -> Result<Expansion> {
    let mut exp = Expansion::new(axiom);
    let n = m.len();
    for t in 0..n {
        for r in 0..n {
            let lhs: NcPoly = (0..n)
                .filter(|&s| !m[t][s].is_zero() && !m[s][r].is_zero())
                .map(|s| &m[t][s].in_slot(1) * &m[s][r].in_slot(2))
                .sum();
            let rhs = cert.target.comul_of(&m[t][r])?;
            exp.push(format!("({t},{r})"), &lhs - &rhs);
        }
    }
    Ok(exp)
}

// Σ_k β(e_ik)(1⊗v*_jk) = e_ij⊗1, coefficient of e_il.
fn density_beta(spec: &FiltrationSpec, cert: &CoactionCertificate) -> Expansion {
    let mut exp = Expansion::new("g.density_beta");
    for (i, v) in cert.beta_blocks.iter().enumerate() {
        let d = v.len();
        for j in 0..d {
            for l in 0..d {
                let mut p: NcPoly = (0..d).map(|k| &v[l][k] * &v[j][k].star()).sum();
                if l == j {
                    p = &p - &NcPoly::one();
                }
                exp.push(format!("block {} j={j} @{l}", spec.label(i)), p);
            }
        }
    }
    exp
}

/// `x = s⁻¹ vᵗ s`, the inverse of `v̄` in the target.
fn twisted_inverse(v: &PolyMatrix, s: &Matrix) -> Result<PolyMatrix> {
    let sinv = scalar_to_poly_matrix(&s.inverse()?);
    Ok(poly_matmul(
        &poly_matmul(&sinv, &poly_transpose(v)),
        &scalar_to_poly_matrix(s),
    ))
}

// Σ_{k,l} α(⟨e_ik|e_jl⟩)(1 ⊗ v⁽ʲ⁾*_nl x⁽ⁱ⁾_km) = ⟨e_im|e_jn⟩⊗1, coefficient of a_t.
fn density_alpha(spec: &FiltrationSpec, cert: &CoactionCertificate) -> Result<Expansion> {
    let na = spec.algebra.dim;
    let alpha = &cert.alpha_matrix;
    let mut exp = Expansion::new("g.density_alpha");
    let xs: Vec<PolyMatrix> = cert
        .beta_blocks
        .iter()
        .enumerate()
        .map(|(i, v)| twisted_inverse(v, &compute_s(spec, i)?))
        .collect::<Result<_>>()?;
    for (i, bi) in spec.blocks.iter().enumerate() {
        for (j, bj) in spec.blocks.iter().enumerate() {
            let vj = &cert.beta_blocks[j];
            // a_kl[t] = Σ_r h[e_ik][e_jl][r] α[t][r]
            let a: Vec<Vec<Vec<NcPoly>>> = bi
                .iter()
                .map(|&ek| {
                    bj.iter()
                        .map(|&el| {
                            let h = spec.inner(ek, el);
                            (0..na).map(|t| lin(h.iter().zip(&alpha[t]))).collect()
                        })
                        .collect()
                })
                .collect();
            for (m, &em) in bi.iter().enumerate() {
                for (n, &en) in bj.iter().enumerate() {
                    let h = spec.inner(em, en);
                    for t in 0..na {
                        let mut p = NcPoly::zero();
                        for k in 0..bi.len() {
                            if xs[i][k][m].is_zero() {
                                continue;
                            }
                            for l in 0..bj.len() {
                                if a[k][l][t].is_zero() || vj[n][l].is_zero() {
                                    continue;
                                }
                                p = &p + &(&(&a[k][l][t] * &vj[n][l].star()) * &xs[i][k][m]);
                            }
                        }
                        let p = &p - &konst(&h[t]);
                        exp.push(
                            format!("blocks {},{} ({m},{n}) @a{t}", spec.label(i), spec.label(j)),
                            p,
                        );
                    }
                }
            }
        }
    }
    Ok(exp)
}

// (τ⊗id)α(a_r) = τ(a_r)1.
fn trace(spec: &FiltrationSpec, alpha: &PolyMatrix) -> Expansion {
    let alg = &spec.algebra;
    let mut exp = Expansion::new("h.trace");
    for r in 0..alg.dim {
        let col: Vec<NcPoly> = alpha.iter().map(|row| row[r].clone()).collect();
        let lhs = lin(alg.trace_vector.iter().zip(&col));
        exp.push(format!("a{r}"), &lhs - &konst(&alg.trace_vector[r]));
    }
    exp
}

// (J⊗*)β(ε_m) = β(Jε_m), coefficient of ε_n.
fn j_equivariance(spec: &FiltrationSpec, beta: &PolyMatrix) -> Expansion {
    let ne = spec.module_dim;
    let jm = &spec.j_matrix;
    let mut exp = Expansion::new("i.j_equivariance");
    for m in 0..ne {
        let starred: Vec<NcPoly> = (0..ne).map(|p| beta[p][m].star()).collect();
        let jcol = spec.j_basis(m);
        for n in 0..ne {
            let lhs = lin(jm.row(n).iter().zip(&starred));
            let rhs = lin(jcol.iter().zip(&beta[n]));
            exp.push(format!("e{m} @e{n}"), &lhs - &rhs);
        }
    }
    exp
}

// β(ξ₀) = ξ₀⊗1, coefficient of ε_p.
fn xi0_fixed(spec: &FiltrationSpec, beta: &PolyMatrix) -> Expansion {
    let mut exp = Expansion::new("j.xi0_fixed");
    for p in 0..spec.module_dim {
        let lhs = lin(spec.xi0.iter().zip(&beta[p]));
        exp.push(format!("@e{p}"), &lhs - &konst(&spec.xi0[p]));
    }
    exp
}
