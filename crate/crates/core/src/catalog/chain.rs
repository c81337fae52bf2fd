use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::coaction::{subalgebra_obstructions, AxiomReport, Expansion, Verifier};
use crate::error::Result;
use crate::ncalg::{
    minus_identity_entries, poly_adjoint, poly_matmul, FamilyShape, NcPoly, Presentation,
};
use crate::rewrite::RewriteConfig;

use super::specs::{
    r, segments_filtration, segments_hyper, segments_subalgebra, Gluing, SegmentsParams,
};

/// Blocks `|n| ≤ WINDOW` enter the chain derivation.
pub const WINDOW: i64 = 2;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainReport {
    pub d: usize,
    pub window: i64,
    pub degree: usize,
    pub source_relations: usize,
    pub links: AxiomReport,
}

impl ChainReport {
    pub fn all_proven(&self) -> bool {
        self.links.all_proven()
    }
}

/// The relations a filtration-preserving coaction on segments forces on the
/// matrices `v⁽ⁿ⁾` (family `v[n]`, `|n| ≤ 2`): self-adjointness, unitarity,
/// `v⁽ⁿ⁾_ki v⁽ᵐ⁾_kj = 0` for `i ≠ j`, the `|n − m|` relations
/// `v⁽ⁿ⁾_ki v⁽ᵐ⁾_ki = v⁽ⁿ'⁾_ki v⁽ᵐ'⁾_ki`, and `v⁽⁰⁾_ki² = v⁽⁰⁾_ki`.
pub fn w_chain_presentation(d: usize) -> Result<Presentation> {
    let du = u16::try_from(d).map_err(|_| crate::Error::InvalidParams("d too large".into()))?;
    let fams: BTreeMap<i64, FamilyShape> = (-WINDOW..=WINDOW)
        .map(|n| Ok((n, FamilyShape::new("v", n as i32, du, du)?)))
        .collect::<Result<_>>()?;
    let mats: BTreeMap<i64, Vec<Vec<NcPoly>>> =
        fams.iter().map(|(&n, f)| (n, f.matrix())).collect();
    let mut rels = Vec::new();
    for m in mats.values() {
        rels.extend(m.iter().flatten().map(|x| x - &x.star()));
        let adj = poly_adjoint(m);
        rels.extend(minus_identity_entries(&poly_matmul(m, &adj)));
        rels.extend(minus_identity_entries(&poly_matmul(&adj, m)));
    }
    let pairs: Vec<(i64, i64)> = (-WINDOW..=WINDOW)
        .flat_map(|n| (-WINDOW..=WINDOW).map(move |m| (n, m)))
        .collect();
    for k in 0..d {
        for i in 0..d {
            for j in 0..d {
                if i != j {
                    for &(n, m) in &pairs {
                        rels.push(&mats[&n][k][i] * &mats[&m][k][j]);
                    }
                }
            }
            let mut first: BTreeMap<i64, (i64, i64)> = BTreeMap::new();
            for &(n, m) in &pairs {
                let dist = (n - m).abs();
                match first.get(&dist) {
                    None => {
                        first.insert(dist, (n, m));
                    }
                    Some(&(n0, m0)) => rels.push(
                        &(&mats[&n][k][i] * &mats[&m][k][i])
                            - &(&mats[&n0][k][i] * &mats[&m0][k][i]),
                    ),
                }
            }
            let v = &mats[&0][k][i];
            rels.push(&(v * v) - v);
        }
    }
    Ok(Presentation {
        name: format!("segments coaction relations (d={d})"),
        families: fams.into_values().collect(),
        relations: rels,
        ..Default::default()
    })
}

/// Certifies the chain `v⁽ⁿ⁾ = v⁽⁻ⁿ⁾`, `v⁽ⁿ⁺¹⁾ = v⁽ⁿ⁾ w`, `w² = v` and
/// `v⁽ⁿ⁾ = w^{r(n)}` entrywise, with `v = v⁽⁰⁾` and `w = v⁽¹⁾`.
pub fn derive_w_chain(d: usize, cfg: RewriteConfig) -> Result<ChainReport> {
    let pres = w_chain_presentation(d)?;
    let mats: BTreeMap<i64, Vec<Vec<NcPoly>>> = pres
        .families
        .iter()
        .map(|f| (i64::from(f.block), f.matrix()))
        .collect();
    let (v, w) = (&mats[&0], &mats[&1]);
    let mut symmetric = Expansion::new("chain.symmetric");
    let mut step = Expansion::new("chain.step");
    let mut square = Expansion::new("chain.square");
    let mut powers = Expansion::new("chain.powers");
    for i in 0..d {
        for j in 0..d {
            let at = |n: i64| &mats[&n][i][j];
            for n in 1..=WINDOW {
                symmetric.push(format!("n={n} ({i},{j})"), at(n) - at(-n));
            }
            for n in -WINDOW..WINDOW {
                step.push(format!("n={n} ({i},{j})"), at(n + 1) - &(at(n) * &w[i][j]));
            }
            square.push(format!("({i},{j})"), &(&w[i][j] * &w[i][j]) - &v[i][j]);
            for n in -WINDOW..=WINDOW {
                powers.push(format!("n={n} ({i},{j})"), at(n) - &w[i][j].pow(r(n)));
            }
        }
    }
    let mut verifier = Verifier::new(&pres, cfg, None)?;
    let links = verifier.check_all(&[symmetric, step, square, powers]);
    Ok(ChainReport {
        d,
        window: WINDOW,
        degree: cfg.max_degree,
        source_relations: pres.relations.len(),
        links,
    })
}

/// `A_h(d)` together with the conditions `α(B) ⊂ B ⊗ A_h(d)` for the
/// segments glued at both ends, closed under the antipode.
pub fn b_context(d: usize, n: usize) -> Result<Presentation> {
    let p = SegmentsParams::new(d, n)?;
    let spec = segments_filtration(p);
    let cert = segments_hyper(p)?;
    let sub = segments_subalgebra(p, Gluing::BothEnds);
    let mut target = cert.target.clone();
    let mut seen: Vec<NcPoly> = target.relations.iter().map(NcPoly::monic).collect();
    for obs in subalgebra_obstructions(&spec, &cert, &sub)? {
        for rel in [target.antipode_of(&obs)?, obs] {
            let key = rel.monic();
            if !rel.is_zero() && !seen.contains(&key) {
                seen.push(key);
                target.relations.push(rel);
            }
        }
    }
    target.name = format!("A_h({d}) on B");
    Ok(target)
}

/// `ω = Σ_k u_{k1}`.
pub fn omega(d: usize) -> NcPoly {
    let fam = FamilyShape::new("u", 0, d as u16, d as u16).expect("valid family");
    (1..=d as u16)
        .map(|k| NcPoly::gen(fam.generator(k, 1)))
        .sum()
}
