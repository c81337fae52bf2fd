use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{Matrix, Scalar};
use crate::coaction::{expand_coaction, expand_filtration, CoactionCertificate};
use crate::error::{Error, Result};
use crate::filtration::{compute_s, AlgebraData, Coords, FiltrationSpec};
use crate::ncalg::{build_au, free_product, FamilyShape, NcPoly, PolyMatrix, Presentation};
use crate::rewrite::RewriteConfig;

use super::presentations::{
    free_orthogonal, hyperoctahedral, permutation_times_z2, quantum_permutation,
};

fn zeros(n: usize) -> Coords {
    vec![Scalar::zero(); n]
}

fn unit(n: usize, k: usize) -> Coords {
    let mut v = zeros(n);
    v[k] = Scalar::one();
    v
}

fn half() -> Scalar {
    Scalar::from_ratio(1, 2)
}

/// The identity coaction matrix: `α(a_r) = a_r ⊗ 1`.
fn identity_poly_matrix(n: usize) -> PolyMatrix {
    (0..n)
        .map(|r| {
            (0..n)
                .map(|c| {
                    if r == c {
                        NcPoly::one()
                    } else {
                        NcPoly::zero()
                    }
                })
                .collect()
        })
        .collect()
}

/// The trivial coaction of `ℂ` on any spec.
pub fn trivial_certificate(spec: &FiltrationSpec) -> CoactionCertificate {
    CoactionCertificate {
        target: Presentation::scalar(),
        alpha_matrix: identity_poly_matrix(spec.algebra.dim),
        beta_blocks: spec
            .blocks
            .iter()
            .map(|b| identity_poly_matrix(b.len()))
            .collect(),
        rewrite_cfg: RewriteConfig::new(2),
    }
}

/// `A = ℂ`, `E = ℂⁿ` with one block, `J = P` and `ξ₀ = 0`, together with the
/// `A_o(P)` certificate `β(e_j) = Σ_k e_k ⊗ u_kj`.
pub fn free_orthogonal_spec(
    p: &Matrix,
) -> Result<(FiltrationSpec, Presentation, CoactionCertificate)> {
    let target = free_orthogonal(p)?;
    let n = p.rows();
    let algebra = AlgebraData {
        dim: 1,
        struct_consts: vec![vec![Some(vec![Scalar::one()])]],
        star_matrix: Matrix::identity(1),
        unit_vector: vec![Scalar::one()],
        trace_vector: vec![Scalar::one()],
    };
    let spec = FiltrationSpec {
        algebra,
        module_dim: n,
        blocks: vec![(0..n).collect()],
        block_labels: None,
        inner_tensor: (0..n)
            .map(|m| {
                (0..n)
                    .map(|k| vec![Scalar::from_int(i64::from(m == k))])
                    .collect()
            })
            .collect(),
        action_tensor: (0..n).map(|m| vec![Some(unit(n, m))]).collect(),
        j_matrix: p.clone(),
        xi0: zeros(n),
    };
    let cert = CoactionCertificate {
        target: target.clone(),
        alpha_matrix: identity_poly_matrix(1),
        beta_blocks: vec![target.families[0].matrix()],
        rewrite_cfg: RewriteConfig::new(4),
    };
    Ok((spec, target, cert))
}

/// `E = A` with `⟨a|b⟩ = a*b`, right multiplication, `J = *` and
/// `ξ₀ = 1`. Blocks are index lists over the algebra basis.
pub fn cstar_filtration_spec(alg: &AlgebraData, blocks: Vec<Vec<usize>>) -> Result<FiltrationSpec> {
    let n = alg.dim;
    let mut inner = Vec::with_capacity(n);
    for m in 0..n {
        let am = alg.star_basis(m);
        let mut row = Vec::with_capacity(n);
        for k in 0..n {
            let p = alg.mul(&am, &alg.basis_vector(k)).ok_or_else(|| {
                Error::InvalidSpec(format!("a{m}* a{k} is outside the truncation"))
            })?;
            row.push(p);
        }
        inner.push(row);
    }
    let spec = FiltrationSpec {
        algebra: alg.clone(),
        module_dim: n,
        blocks,
        block_labels: None,
        inner_tensor: inner,
        action_tensor: alg.struct_consts.clone(),
        j_matrix: alg.star_matrix.clone(),
        xi0: alg.unit_vector.clone(),
    };
    spec.check_shapes()?;
    let report = crate::filtration::validate(&spec);
    if let Some((name, r)) = report.failures().next() {
        return Err(Error::InvalidSpec(format!(
            "{name}: {}",
            r.witness.clone().unwrap_or_default()
        )));
    }
    Ok(spec)
}

/// Functions on two points in the basis `a₀ = 1`, `a₁ = (1, −1)`, with the
/// normalized counting measure.
pub fn two_point_algebra() -> AlgebraData {
    let one = vec![Scalar::one(), Scalar::zero()];
    let flip = vec![Scalar::zero(), Scalar::one()];
    AlgebraData {
        dim: 2,
        struct_consts: vec![
            vec![Some(one.clone()), Some(flip.clone())],
            vec![Some(flip), Some(one)],
        ],
        star_matrix: Matrix::identity(2),
        unit_vector: vec![Scalar::one(), Scalar::zero()],
        trace_vector: vec![Scalar::one(), Scalar::zero()],
    }
}

/// The two-point spec with blocks `{1}` and `{(1, −1)}` and the `A_s(2)`
/// certificate `α(δ_i) = Σ_k δ_k ⊗ v_ki`, which reads `α(a₀) = a₀ ⊗ 1`,
/// `α(a₁) = a₁ ⊗ (v₁₁ − v₁₂)` in this basis.
pub fn two_point_spec() -> Result<(FiltrationSpec, CoactionCertificate)> {
    let spec = cstar_filtration_spec(&two_point_algebra(), vec![vec![0], vec![1]])?;
    let target = quantum_permutation(2)?;
    let v = target.families[0].matrix();
    let flip = &v[0][0] - &v[0][1];
    let alpha = vec![
        vec![NcPoly::one(), NcPoly::zero()],
        vec![NcPoly::zero(), flip.clone()],
    ];
    let cert = CoactionCertificate {
        target,
        alpha_matrix: alpha,
        beta_blocks: vec![vec![vec![NcPoly::one()]], vec![vec![flip]]],
        rewrite_cfg: RewriteConfig::new(4),
    };
    Ok((spec, cert))
}

/// Parameters of `d` disjoint segments truncated at Fourier index `N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegmentsParams {
    pub d: usize,
    #[serde(rename = "N")]
    pub n: usize,
}

impl SegmentsParams {
    pub fn new(d: usize, n: usize) -> Result<SegmentsParams> {
        if d == 0 || n == 0 {
            return Err(Error::InvalidParams("segments need d ≥ 1 and N ≥ 1".into()));
        }
        Ok(SegmentsParams { d, n })
    }

    pub fn algebra_dim(&self) -> usize {
        (2 * self.n + 1) * self.d
    }

    pub fn module_dim(&self) -> usize {
        (2 * self.n + 1) * self.d
    }

    /// Index of `cos(πn·) e_i` (`0 ≤ n ≤ 2N`, `0 ≤ i < d`).
    pub fn a(&self, n: usize, i: usize) -> usize {
        n * self.d + i
    }

    /// Index of `e_{ni}` (`|n| ≤ N`, `0 ≤ i < d`).
    pub fn e(&self, n: i64, i: usize) -> usize {
        (n + self.n as i64) as usize * self.d + i
    }
}

/// `r(n) = 2` for even `n` and `1` for odd `n`.
pub fn r(n: i64) -> u32 {
    if n.rem_euclid(2) == 0 {
        2
    } else {
        1
    }
}

/// The segments spec: `A` spanned by `cos(πn·) e_i` for `0 ≤ n ≤ 2N`,
/// `E` spanned by `e_{ni} = (sin(πn·), cos(πn·)) e_i` for `|n| ≤ N` with
/// blocks `V_n`, `τ(cos(πn·) e_i) = δ_{n0}`, `J` the complex conjugation
/// and `ξ₀ = Σ_i e_{0i}`.
pub fn segments_filtration(p: SegmentsParams) -> FiltrationSpec {
    let (d, big_n) = (p.d, p.n as i64);
    let na = p.algebra_dim();
    let ne = p.module_dim();
    let top = 2 * p.n;
    let mut sc = vec![vec![None; na]; na];
    for n in 0..=top {
        for m in 0..=top {
            for i in 0..d {
                for j in 0..d {
                    let mut c = zeros(na);
                    if i == j {
                        if n + m > top {
                            continue;
                        }
                        c[p.a(n.abs_diff(m), i)] += &half();
                        c[p.a(n + m, i)] += &half();
                    }
                    sc[p.a(n, i)][p.a(m, j)] = Some(c);
                }
            }
        }
    }
    let mut unit_vector = zeros(na);
    let mut trace_vector = zeros(na);
    for i in 0..d {
        unit_vector[p.a(0, i)] = Scalar::one();
        trace_vector[p.a(0, i)] = Scalar::one();
    }
    let algebra = AlgebraData {
        dim: na,
        struct_consts: sc,
        star_matrix: Matrix::identity(na),
        unit_vector,
        trace_vector,
    };
    let mut inner = vec![vec![zeros(na); ne]; ne];
    let mut action = vec![vec![None; na]; ne];
    for n in -big_n..=big_n {
        for i in 0..d {
            for m in -big_n..=big_n {
                inner[p.e(n, i)][p.e(m, i)][p.a(n.abs_diff(m) as usize, i)] = Scalar::one();
            }
            // e_n · cos(πm·) = ½ e_{n+m} + ½ e_{n−m}
            for m in 0..=top as i64 {
                for j in 0..d {
                    let slot = &mut action[p.e(n, i)][p.a(m as usize, j)];
                    if i != j {
                        *slot = Some(zeros(ne));
                    } else if (n + m).abs() <= big_n && (n - m).abs() <= big_n {
                        let mut c = zeros(ne);
                        c[p.e(n + m, i)] += &half();
                        c[p.e(n - m, i)] += &half();
                        *slot = Some(c);
                    }
                }
            }
        }
    }
    let mut xi0 = zeros(ne);
    for i in 0..d {
        xi0[p.e(0, i)] = Scalar::one();
    }
    FiltrationSpec {
        algebra,
        module_dim: ne,
        blocks: (-big_n..=big_n)
            .map(|n| (0..d).map(|i| p.e(n, i)).collect())
            .collect(),
        block_labels: Some((-big_n..=big_n).map(|n| n as i32).collect()),
        inner_tensor: inner,
        action_tensor: action,
        j_matrix: Matrix::identity(ne),
        xi0,
    }
}

/// The certificate with `α(cos(πn·) e_i) = Σ_k cos(πn·) e_k ⊗ f(n, k, i)`
/// and `β(e_{ni}) = Σ_k e_{nk} ⊗ f(n, k, i)`.
fn diagonal_certificate(
    p: SegmentsParams,
    target: Presentation,
    cfg: RewriteConfig,
    f: impl Fn(i64, usize, usize) -> NcPoly,
) -> CoactionCertificate {
    let (d, big_n) = (p.d, p.n as i64);
    let na = p.algebra_dim();
    let mut alpha = vec![vec![NcPoly::zero(); na]; na];
    for n in 0..=2 * big_n {
        for k in 0..d {
            for i in 0..d {
                alpha[p.a(n as usize, k)][p.a(n as usize, i)] = f(n, k, i);
            }
        }
    }
    let beta = (-big_n..=big_n)
        .map(|n| {
            (0..d)
                .map(|k| (0..d).map(|i| f(n, k, i)).collect())
                .collect()
        })
        .collect();
    CoactionCertificate {
        target,
        alpha_matrix: alpha,
        beta_blocks: beta,
        rewrite_cfg: cfg,
    }
}

/// Segments together with the `A_h(d)` certificate (`u_ki^{r(n)}`) and the
/// `A_s(d) ⊗ C(ℤ₂)` certificate (`v_ki z^{[n odd]}`).
pub fn segments_spec(
    p: SegmentsParams,
) -> Result<(FiltrationSpec, CoactionCertificate, CoactionCertificate)> {
    Ok((
        segments_filtration(p),
        segments_hyper(p)?,
        segments_quotient(p)?,
    ))
}

pub fn segments_hyper(p: SegmentsParams) -> Result<CoactionCertificate> {
    let target = hyperoctahedral(p.d)?;
    let u = target.families[0].matrix();
    Ok(diagonal_certificate(
        p,
        target,
        RewriteConfig::new(6),
        |n, k, i| u[k][i].pow(r(n)),
    ))
}

pub fn segments_quotient(p: SegmentsParams) -> Result<CoactionCertificate> {
    let target = permutation_times_z2(p.d)?;
    let v = target.families[0].matrix();
    let z = target.families[1].matrix()[0][0].clone();
    Ok(diagonal_certificate(
        p,
        target,
        RewriteConfig::new(6),
        |n, k, i| {
            if n.rem_euclid(2) == 1 {
                &v[k][i] * &z
            } else {
                v[k][i].clone()
            }
        },
    ))
}

/// `A_s(d)` permuting the segments without reflecting them.
pub fn segments_permutation(p: SegmentsParams) -> Result<CoactionCertificate> {
    let target = quantum_permutation(p.d)?;
    let v = target.families[0].matrix();
    Ok(diagonal_certificate(
        p,
        target,
        RewriteConfig::new(6),
        |_, k, i| v[k][i].clone(),
    ))
}

/// Which endpoint values of the segments are identified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Gluing {
    /// `f_i(0) = f_j(0)` and `f_i(1) = f_j(1)`.
    BothEnds,
    /// `f_i(0) = f_j(0) = f_i(1) = f_j(1)`.
    AllEndpoints,
    /// `f_i(0) = f_j(0)`.
    ZeroEnd,
}

/// Basis of the glued subalgebra inside the truncated algebra: the null
/// space of the endpoint constraints.
pub fn segments_subalgebra(p: SegmentsParams, gluing: Gluing) -> Vec<Coords> {
    let na = p.algebra_dim();
    // ev(x, i) for x ∈ {0, 1}: cos(πn·0) = 1, cos(πn·1) = (−1)ⁿ
    let ev = |x: usize, i: usize| -> Coords {
        let mut v = zeros(na);
        for n in 0..=2 * p.n {
            let sign = if x == 1 && n % 2 == 1 { -1 } else { 1 };
            v[p.a(n, i)] = Scalar::from_int(sign);
        }
        v
    };
    let diff = |a: Coords, b: Coords| -> Coords { a.iter().zip(&b).map(|(x, y)| x - y).collect() };
    let mut constraints = Vec::new();
    for i in 1..p.d {
        match gluing {
            Gluing::BothEnds => {
                constraints.push(diff(ev(0, i), ev(0, 0)));
                constraints.push(diff(ev(1, i), ev(1, 0)));
            }
            Gluing::ZeroEnd => constraints.push(diff(ev(0, i), ev(0, 0))),
            Gluing::AllEndpoints => {}
        }
    }
    if gluing == Gluing::AllEndpoints {
        for i in 0..p.d {
            constraints.push(diff(ev(0, i), ev(0, 0)));
            constraints.push(diff(ev(1, i), ev(0, 0)));
        }
        constraints.retain(|c| c.iter().any(|x| !x.is_zero()));
    }
    if constraints.is_empty() {
        return (0..na).map(|k| unit(na, k)).collect();
    }
    Matrix::from_rows(constraints)
        .expect("uniform rows")
        .null_space()
}

/// Symbolic certificate over the free product of `A_u(s⁽ⁱ⁾)` with one
/// generic family `v[label]` per block; `α` is obtained from `β` through
/// inner products, `α(⟨ξ|η⟩) = ⟨β(ξ)|β(η)⟩`.
pub fn symbolic_certificate(
    spec: &FiltrationSpec,
    cfg: RewriteConfig,
) -> Result<CoactionCertificate> {
    let mut parts = Vec::new();
    for (i, _) in spec.blocks.iter().enumerate() {
        let s = compute_s(spec, i)?;
        parts.push(build_au(&s, "v", spec.label(i))?);
    }
    let target = free_product(&parts)?;
    let beta_blocks: Vec<PolyMatrix> = target.families.iter().map(FamilyShape::matrix).collect();
    let skeleton = CoactionCertificate {
        target: target.clone(),
        alpha_matrix: Vec::new(),
        beta_blocks,
        rewrite_cfg: cfg,
    };
    let b = skeleton.beta_full(spec);
    let na = spec.algebra.dim;
    // greedy spanning set of inner products
    let mut chosen: Vec<(usize, usize)> = Vec::new();
    let mut rows: Vec<Coords> = Vec::new();
    'outer: for m in 0..spec.module_dim {
        for n in 0..spec.module_dim {
            let h = spec.inner(m, n).to_vec();
            let mut trial = rows.clone();
            trial.push(h.clone());
            if Matrix::from_rows(trial)?.rank() > rows.len() {
                rows.push(h);
                chosen.push((m, n));
                if rows.len() == na {
                    break 'outer;
                }
            }
        }
    }
    if rows.len() < na {
        return Err(Error::InvalidSpec(
            "inner products do not span the algebra".into(),
        ));
    }
    let minv = Matrix::from_rows(rows)?.inverse()?;
    // ⟨β(ε_m)|β(ε_n)⟩ coefficients on a_t
    let image = |m: usize, n: usize| -> Vec<NcPoly> {
        let mut out = vec![NcPoly::zero(); na];
        for p in 0..spec.module_dim {
            if b[p][m].is_zero() {
                continue;
            }
            let left = b[p][m].star();
            for q in 0..spec.module_dim {
                if b[q][n].is_zero() {
                    continue;
                }
                let prod = &left * &b[q][n];
                for (t, c) in spec.inner(p, q).iter().enumerate() {
                    if !c.is_zero() {
                        out[t].add_assign_scaled(&prod, c);
                    }
                }
            }
        }
        out
    };
    let images: Vec<Vec<NcPoly>> = chosen.iter().map(|&(m, n)| image(m, n)).collect();
    let mut alpha = vec![vec![NcPoly::zero(); na]; na];
    for r in 0..na {
        for (j, img) in images.iter().enumerate() {
            let c = &minv[(r, j)];
            if c.is_zero() {
                continue;
            }
            for t in 0..na {
                alpha[t][r].add_assign_scaled(&img[t], c);
            }
        }
    }
    Ok(CoactionCertificate {
        alpha_matrix: alpha,
        ..skeleton
    })
}

/// A random valid spec: `A` the functions on `k` points with weights
/// `τ(δ_p) = 1/c_p²`, `E = A^m` with the τ-orthonormal basis `c_p δ_p e_l`,
/// a random block partition and a random invertible `J` with Gaussian
/// integer entries. `n_E = k m ≤ 6`.
pub fn random_spec(seed: u64) -> FiltrationSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = rng.gen_range(1..=3usize);
    let m = rng.gen_range(1..=6 / k);
    let ne = k * m;
    let c: Vec<i64> = (0..k).map(|_| rng.gen_range(1..=3)).collect();
    let mut sc = vec![vec![None; k]; k];
    for p in 0..k {
        for q in 0..k {
            sc[p][q] = Some(if p == q { unit(k, p) } else { zeros(k) });
        }
    }
    let algebra = AlgebraData {
        dim: k,
        struct_consts: sc,
        star_matrix: Matrix::identity(k),
        unit_vector: vec![Scalar::one(); k],
        trace_vector: c.iter().map(|&cp| Scalar::from_ratio(1, cp * cp)).collect(),
    };
    // module index x = l k + p
    let point = |x: usize| x % k;
    let inner = (0..ne)
        .map(|x| {
            (0..ne)
                .map(|y| {
                    let mut h = zeros(k);
                    if x == y {
                        let cp = c[point(x)];
                        h[point(x)] = Scalar::from_int(cp * cp);
                    }
                    h
                })
                .collect()
        })
        .collect();
    let action = (0..ne)
        .map(|x| {
            (0..k)
                .map(|q| {
                    Some(if point(x) == q {
                        unit(ne, x)
                    } else {
                        zeros(ne)
                    })
                })
                .collect()
        })
        .collect();
    let mut order: Vec<usize> = (0..ne).collect();
    for i in (1..ne).rev() {
        order.swap(i, rng.gen_range(0..=i));
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for x in order {
        if blocks.is_empty() || rng.gen_bool(0.4) {
            blocks.push(vec![x]);
        } else {
            let b = rng.gen_range(0..blocks.len());
            blocks[b].push(x);
        }
    }
    for b in &mut blocks {
        b.sort_unstable();
    }
    blocks.sort();
    let j = loop {
        let rows = (0..ne)
            .map(|_| {
                (0..ne)
                    .map(|_| {
                        Scalar::complex((rng.gen_range(-3..=3), 1), (rng.gen_range(-3..=3), 1))
                    })
                    .collect()
            })
            .collect();
        let j = Matrix::from_rows(rows).expect("square");
        if j.rank() == ne {
            break j;
        }
    };
    FiltrationSpec {
        algebra,
        module_dim: ne,
        blocks,
        block_labels: None,
        inner_tensor: inner,
        action_tensor: action,
        j_matrix: j,
        xi0: zeros(ne),
    }
}

/// `v⁽ⁱ⁾` as an assignment for the morphism `A_u(s⁽ⁱ⁾) → target`.
pub fn corep_assignment(
    spec: &FiltrationSpec,
    cert: &CoactionCertificate,
    block: usize,
) -> Result<(
    Presentation,
    std::collections::BTreeMap<crate::ncalg::Generator, NcPoly>,
)> {
    let s = compute_s(spec, block)?;
    let source = build_au(&s, "u", 0)?;
    let fam = &source.families[0];
    let v = cert
        .beta_blocks
        .get(block)
        .ok_or(Error::UnknownBlock(block))?;
    let mut map = std::collections::BTreeMap::new();
    for (i, row) in v.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            map.insert(fam.generator(i as u16 + 1, j as u16 + 1), x.clone());
        }
    }
    Ok((source, map))
}

/// The free product of the `A_u(s⁽ⁱ⁾)` together with the relations that
/// axioms (d), (e), (h), (i) and (j) impose on the symbolic certificate.
pub fn universal_presentation(spec: &FiltrationSpec, cfg: RewriteConfig) -> Result<Presentation> {
    const AXIOMS: [&str; 5] = [
        "d.inner_product",
        "e.module_map",
        "h.trace",
        "i.j_equivariance",
        "j.xi0_fixed",
    ];
    let cert = symbolic_certificate(spec, cfg)?;
    let mut exps = expand_coaction(spec, &cert)?;
    exps.extend(expand_filtration(spec, &cert));
    let mut target = cert.target;
    let mut seen: Vec<NcPoly> = target.relations.iter().map(NcPoly::monic).collect();
    for id in exps
        .into_iter()
        .filter(|e| AXIOMS.contains(&e.axiom.as_str()))
        .flat_map(|e| e.identities)
    {
        let key = id.poly.monic();
        if !id.poly.is_zero() && !seen.contains(&key) {
            seen.push(key);
            target.relations.push(id.poly);
        }
    }
    target.name = "U".into();
    Ok(target)
}
