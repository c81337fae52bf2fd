//! Woronowicz presentations: generator families, relations, and the
//! generator-level coalgebra data Δ, ε, S.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::poly::NcPoly;
use super::word::{Generator, Label, Word};
use crate::arith::{is_hermitian_positive, Matrix, Scalar};
use crate::error::{Error, Result};

/// Shape of one generator family: a `rows × cols` matrix of letters.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FamilyShape {
    pub label: String,
    pub block: i32,
    pub rows: u16,
    pub cols: u16,
    #[serde(default, skip_serializing_if = "is_zero_slot")]
    pub slot: u8,
}

fn is_zero_slot(s: &u8) -> bool {
    *s == 0
}

impl FamilyShape {
    pub fn new(label: &str, block: i32, rows: u16, cols: u16) -> Result<FamilyShape> {
        Label::new(label)?;
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidParams(format!(
                "empty family {label}[{block}]"
            )));
        }
        Ok(FamilyShape {
            label: label.to_string(),
            block,
            rows,
            cols,
            slot: 0,
        })
    }

    pub fn key(&self) -> (String, i32, u8) {
        (self.label.clone(), self.block, self.slot)
    }

    pub fn generator(&self, row: u16, col: u16) -> Generator {
        Generator::new(
            Label::new(&self.label).expect("validated label"),
            self.block,
            row,
            col,
        )
        .expect("validated indices")
        .with_slot(self.slot)
    }

    /// Unstarred generators in row-major order.
    pub fn generators(&self) -> Vec<Generator> {
        (1..=self.rows)
            .flat_map(|r| (1..=self.cols).map(move |c| (r, c)))
            .map(|(r, c)| self.generator(r, c))
            .collect()
    }

    /// The generator matrix as polynomials.
    pub fn matrix(&self) -> Vec<Vec<NcPoly>> {
        (1..=self.rows)
            .map(|r| {
                (1..=self.cols)
                    .map(|c| NcPoly::gen(self.generator(r, c)))
                    .collect()
            })
            .collect()
    }
}

/// A Woronowicz C*-algebra given by generators and relations.
///
/// `comul` holds Δ of every unstarred generator as a polynomial in tensor
/// legs 1 and 2; `counit` holds ε of every unstarred generator; `antipode`
/// holds S of every letter, starred letters included.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Presentation {
    pub name: String,
    pub families: Vec<FamilyShape>,
    pub relations: Vec<NcPoly>,
    pub comul: BTreeMap<Generator, NcPoly>,
    pub counit: BTreeMap<Generator, Scalar>,
    pub antipode: BTreeMap<Generator, NcPoly>,
}

#[derive(Serialize, Deserialize)]
struct PresentationDoc {
    name: String,
    families: Vec<FamilyShape>,
    relations: Vec<NcPoly>,
    comul: BTreeMap<String, NcPoly>,
    counit: BTreeMap<String, Scalar>,
    antipode: BTreeMap<String, NcPoly>,
}

fn keyed<V: Clone>(m: &BTreeMap<Generator, V>) -> BTreeMap<String, V> {
    m.iter().map(|(g, v)| (g.to_string(), v.clone())).collect()
}

fn unkeyed<V>(m: BTreeMap<String, V>) -> Result<BTreeMap<Generator, V>> {
    m.into_iter()
        .map(|(k, v)| Ok((Generator::parse(&k)?, v)))
        .collect()
}

impl Serialize for Presentation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PresentationDoc {
            name: self.name.clone(),
            families: self.families.clone(),
            relations: self.relations.clone(),
            comul: keyed(&self.comul),
            counit: keyed(&self.counit),
            antipode: keyed(&self.antipode),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Presentation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = PresentationDoc::deserialize(d)?;
        let conv = |e: Error| serde::de::Error::custom(e.to_string());
        Ok(Presentation {
            name: doc.name,
            families: doc.families,
            relations: doc.relations,
            comul: unkeyed(doc.comul).map_err(conv)?,
            counit: unkeyed(doc.counit).map_err(conv)?,
            antipode: unkeyed(doc.antipode).map_err(conv)?,
        })
    }
}

/// Matrix helpers over polynomial entries.
pub type PolyMatrix = Vec<Vec<NcPoly>>;

pub fn poly_matmul(a: &PolyMatrix, b: &PolyMatrix) -> PolyMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|c| (0..inner).map(|k| &row[k] * &b[k][c]).sum())
                .collect()
        })
        .collect()
}

pub fn scalar_to_poly_matrix(m: &Matrix) -> PolyMatrix {
    (0..m.rows())
        .map(|r| {
            (0..m.cols())
                .map(|c| NcPoly::constant(m[(r, c)].clone()))
                .collect()
        })
        .collect()
}

pub fn poly_transpose(a: &PolyMatrix) -> PolyMatrix {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols)
        .map(|c| a.iter().map(|row| row[c].clone()).collect())
        .collect()
}

/// Entrywise star (the matrix written ū).
pub fn poly_bar(a: &PolyMatrix) -> PolyMatrix {
    a.iter()
        .map(|row| row.iter().map(NcPoly::star).collect())
        .collect()
}

/// Conjugate transpose (the matrix written u*).
pub fn poly_adjoint(a: &PolyMatrix) -> PolyMatrix {
    poly_transpose(&poly_bar(a))
}

/// Entries of `a - I` in row-major order.
pub fn minus_identity_entries(a: &PolyMatrix) -> Vec<NcPoly> {
    let mut out = Vec::new();
    for (r, row) in a.iter().enumerate() {
        for (c, x) in row.iter().enumerate() {
            if r == c {
                out.push(x - &NcPoly::one());
            } else {
                out.push(x.clone());
            }
        }
    }
    out
}

/// The four matrix identities stating that `v` is unitary and satisfies the
/// twisted relations `vᵗ s v̄ s⁻¹ = s v̄ s⁻¹ vᵗ = I`, as entrywise polynomials
/// (each asserted to vanish), in the order `vv*`, `v*v`, `vᵗsv̄s⁻¹`, `sv̄s⁻¹vᵗ`.
pub fn unitarity_relations(v: &PolyMatrix, s: &Matrix) -> Result<[Vec<NcPoly>; 4]> {
    let s_inv = s.inverse()?;
    let sp = scalar_to_poly_matrix(s);
    let sip = scalar_to_poly_matrix(&s_inv);
    let vt = poly_transpose(v);
    let vbar = poly_bar(v);
    let vadj = poly_adjoint(v);
    let twisted_left = poly_matmul(&poly_matmul(&poly_matmul(&vt, &sp), &vbar), &sip);
    let twisted_right = poly_matmul(&poly_matmul(&poly_matmul(&sp, &vbar), &sip), &vt);
    Ok([
        minus_identity_entries(&poly_matmul(v, &vadj)),
        minus_identity_entries(&poly_matmul(&vadj, v)),
        minus_identity_entries(&twisted_left),
        minus_identity_entries(&twisted_right),
    ])
}

impl Presentation {
    pub fn from_json(s: &str) -> Result<Presentation> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("presentation serializes")
    }

    /// The one-dimensional presentation ℂ (no generators).
    pub fn scalar() -> Presentation {
        Presentation {
            name: "C".into(),
            ..Default::default()
        }
    }

    pub fn family(&self, label: &str, block: i32) -> Option<&FamilyShape> {
        self.families
            .iter()
            .find(|f| f.label == label && f.block == block && f.slot == 0)
    }

    /// All unstarred generators, family by family.
    pub fn generators(&self) -> Vec<Generator> {
        self.families
            .iter()
            .flat_map(FamilyShape::generators)
            .collect()
    }

    /// All letters: generators and their stars.
    pub fn letters(&self) -> Vec<Generator> {
        self.generators()
            .into_iter()
            .flat_map(|g| [g, g.star()])
            .collect()
    }

    /// Installs the standard multiplicative-matrix coalgebra data on a square
    /// family: Δ(u_ij) = Σ_k u_ik ⊗ u_kj, ε(u_ij) = δ_ij.
    pub fn set_multiplicative(&mut self, fam: &FamilyShape) {
        let n = fam.rows;
        for i in 1..=n {
            for j in 1..=n {
                let g = fam.generator(i, j);
                let delta = (1..=n)
                    .map(|k| {
                        NcPoly::word(Word::from_letters(vec![
                            fam.generator(i, k).with_slot(1),
                            fam.generator(k, j).with_slot(2),
                        ]))
                    })
                    .sum();
                self.comul.insert(g, delta);
                self.counit.insert(g, Scalar::from_int(i64::from(i == j)));
            }
        }
    }

    /// Δ(g) for any letter (starred letters via Δ(g*) = Δ(g)*).
    pub fn comul_letter(&self, g: Generator) -> Result<NcPoly> {
        let base = g.base();
        let img = self
            .comul
            .get(&base.unstarred())
            .ok_or_else(|| Error::MissingGenerator(base.to_string()))?;
        Ok(if base.is_starred() {
            img.star()
        } else {
            img.clone()
        })
    }

    /// Applies Δ to an untensored polynomial, landing in legs 1 and 2.
    pub fn comul_of(&self, p: &NcPoly) -> Result<NcPoly> {
        self.comul_at(p, 0)
    }

    /// Applies Δ to tensor leg `k` of `p` (leg 0 meaning an untensored
    /// polynomial). Legs after `k` shift up by one.
    pub fn comul_at(&self, p: &NcPoly, k: u8) -> Result<NcPoly> {
        let mut cache: BTreeMap<Generator, NcPoly> = BTreeMap::new();
        let mut out = NcPoly::zero();
        for (w, c) in p.terms() {
            let mut acc = NcPoly::one();
            for &g in w.letters() {
                let img = match g.slot() {
                    s if s == k => {
                        if !cache.contains_key(&g) {
                            let d = self.comul_letter(g)?;
                            let d = if k == 0 {
                                d
                            } else {
                                d.map_letters(|h| h.with_slot(h.slot() + k - 1))
                            };
                            cache.insert(g, d);
                        }
                        cache[&g].clone()
                    }
                    s if s > k => NcPoly::gen(g.with_slot(s + 1)),
                    _ => NcPoly::gen(g),
                };
                acc = &acc * &img;
            }
            out.add_assign_scaled(&acc, c);
        }
        Ok(out)
    }

    /// ε extended as a *-homomorphism to ℂ.
    pub fn counit_of(&self, p: &NcPoly) -> Result<Scalar> {
        let mut total = Scalar::zero();
        for (w, c) in p.terms() {
            let mut acc = c.clone();
            for &g in w.letters() {
                let e = self
                    .counit
                    .get(&g.unstarred())
                    .ok_or_else(|| Error::MissingGenerator(g.to_string()))?;
                acc *= &if g.is_starred() { e.conj() } else { e.clone() };
            }
            total += &acc;
        }
        Ok(total)
    }

    /// S extended as a linear antimultiplicative map.
    pub fn antipode_of(&self, p: &NcPoly) -> Result<NcPoly> {
        let mut out = NcPoly::zero();
        for (w, c) in p.terms() {
            let mut acc = NcPoly::one();
            for &g in w.letters().iter().rev() {
                let img = self
                    .antipode
                    .get(&g)
                    .ok_or_else(|| Error::MissingGenerator(g.to_string()))?;
                acc = &acc * img;
            }
            out.add_assign_scaled(&acc, c);
        }
        Ok(out)
    }

    /// Generators whose Δ fails exact coassociativity `(Δ⊗id)Δ = (id⊗Δ)Δ`.
    pub fn coassociativity_failures(&self) -> Result<Vec<Generator>> {
        let mut bad = Vec::new();
        for g in self.generators() {
            let d = self.comul_letter(g)?;
            let left = self.comul_at(&d, 1)?;
            let right = self.comul_at(&d, 2)?;
            if left != right {
                bad.push(g);
            }
        }
        Ok(bad)
    }

    /// Relations killed by ε (should be all of them).
    pub fn counit_failures(&self) -> Result<Vec<usize>> {
        let mut bad = Vec::new();
        for (k, r) in self.relations.iter().enumerate() {
            if !self.counit_of(r)?.is_zero() {
                bad.push(k);
            }
        }
        Ok(bad)
    }

    fn check_new_families(&self, other: &Presentation) -> Result<()> {
        let mine: BTreeSet<_> = self.families.iter().map(FamilyShape::key).collect();
        for f in &other.families {
            if mine.contains(&f.key()) {
                return Err(Error::LabelCollision(format!("{}[{}]", f.label, f.block)));
            }
        }
        Ok(())
    }

    fn absorb(&mut self, other: &Presentation) {
        self.families.extend(other.families.iter().cloned());
        self.relations.extend(other.relations.iter().cloned());
        self.comul
            .extend(other.comul.iter().map(|(k, v)| (*k, v.clone())));
        self.counit
            .extend(other.counit.iter().map(|(k, v)| (*k, v.clone())));
        self.antipode
            .extend(other.antipode.iter().map(|(k, v)| (*k, v.clone())));
    }

    /// Commutators `[g, h]` between all letters of `a` and all letters of `b`.
    fn cross_commutators(a: &[Generator], b: &[Generator]) -> Vec<NcPoly> {
        let mut out = Vec::new();
        for &g in a {
            for &h in b {
                let gh = NcPoly::word(Word::from_letters(vec![g, h]));
                let hg = NcPoly::word(Word::from_letters(vec![h, g]));
                let c = &gh - &hg;
                if !c.is_zero() {
                    out.push(c);
                }
            }
        }
        out
    }

    /// Algebraic tensor product on a shared untensored alphabet: union of both
    /// presentations plus cross-commutation relations.
    pub fn tensor_product(&self, other: &Presentation) -> Result<Presentation> {
        self.check_new_families(other)?;
        let mut out = self.clone();
        out.name = format!("{} (x) {}", self.name, other.name);
        out.absorb(other);
        out.relations
            .extend(Self::cross_commutators(&self.letters(), &other.letters()));
        Ok(out)
    }

    /// The presentation of Q ⊗ Q on the doubled alphabet (legs 1 and 2).
    /// Cross-leg commutation is built into canonical tensor words.
    pub fn tensor_square(&self) -> Presentation {
        let mut out = Presentation {
            name: format!("{} (x) {}", self.name, self.name),
            ..Default::default()
        };
        for slot in [1u8, 2] {
            for f in &self.families {
                out.families.push(FamilyShape { slot, ..f.clone() });
            }
            out.relations
                .extend(self.relations.iter().map(|r| r.in_slot(slot)));
        }
        out
    }
}

/// Free product of presentations: generators and relations united, coalgebra
/// data defined familywise.
pub fn free_product(ps: &[Presentation]) -> Result<Presentation> {
    let mut out = Presentation::default();
    for p in ps {
        out.check_new_families(p)?;
        out.absorb(p);
    }
    out.name = ps
        .iter()
        .map(|p| p.name.as_str())
        .collect::<Vec<_>>()
        .join(" * ");
    Ok(out)
}

/// The universal algebra A_u(s): one `d × d` unitary multiplicative family
/// `label[block]` with `uᵗ s ū s⁻¹ = s ū s⁻¹ uᵗ = I`.
///
/// Relations come in the order uu*, u*u, uᵗsūs⁻¹, sūs⁻¹uᵗ, each as `d²`
/// entrywise polynomials. Conventions: ε(u) = I, S(u_ij) = u_ji*,
/// S(u_ij*) = (s⁻¹ uᵗ s)_ij.
pub fn build_au(s: &Matrix, label: &str, block: i32) -> Result<Presentation> {
    if !is_hermitian_positive(s) {
        return Err(Error::InvalidParams(
            "A_u(s) needs s Hermitian positive-definite".into(),
        ));
    }
    let d = u16::try_from(s.rows()).map_err(|_| Error::InvalidParams("dimension".into()))?;
    let fam = FamilyShape::new(label, block, d, d)?;
    let u = fam.matrix();
    let rels = unitarity_relations(&u, s)?;
    let mut p = Presentation {
        name: format!("A_u(s)[{label}{block}]"),
        families: vec![fam.clone()],
        relations: rels.into_iter().flatten().collect(),
        ..Default::default()
    };
    p.set_multiplicative(&fam);
    let s_inv = s.inverse()?;
    // x = s⁻¹ uᵗ s is the inverse of ū
    let x = poly_matmul(
        &poly_matmul(&scalar_to_poly_matrix(&s_inv), &poly_transpose(&u)),
        &scalar_to_poly_matrix(s),
    );
    for i in 1..=d {
        for j in 1..=d {
            let g = fam.generator(i, j);
            p.antipode
                .insert(g, NcPoly::gen(fam.generator(j, i).star()));
            p.antipode
                .insert(g.star(), x[usize::from(i - 1)][usize::from(j - 1)].clone());
        }
    }
    Ok(p)
}

/// Substitutes generator images. Starred letters without an explicit image
/// map to the star of the unstarred image.
pub fn substitute(poly: &NcPoly, assignment: &BTreeMap<Generator, NcPoly>) -> Result<NcPoly> {
    let image = |g: Generator| -> Result<NcPoly> {
        if let Some(p) = assignment.get(&g) {
            return Ok(p.clone());
        }
        if let Some(p) = assignment.get(&g.star()) {
            return Ok(p.star());
        }
        Err(Error::MissingGenerator(g.to_string()))
    };
    let mut cache: BTreeMap<Generator, NcPoly> = BTreeMap::new();
    let mut out = NcPoly::zero();
    for (w, c) in poly.terms() {
        let mut acc = NcPoly::one();
        for &g in w.letters() {
            if !cache.contains_key(&g) {
                cache.insert(g, image(g)?);
            }
            acc = &acc * &cache[&g];
        }
        out.add_assign_scaled(&acc, c);
    }
    Ok(out)
}

/// An assignment is star-compatible when every explicitly given starred image
/// is the star of the unstarred image.
pub fn check_star_compatible(assignment: &BTreeMap<Generator, NcPoly>) -> Result<()> {
    for (g, p) in assignment {
        if g.is_starred() {
            if let Some(q) = assignment.get(&g.star()) {
                if *p != q.star() {
                    return Err(Error::IncompatibleAssignment(format!(
                        "image of {g} is not the star of the image of {}",
                        g.star()
                    )));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle() -> Presentation {
        build_au(&Matrix::identity(1), "u", 0).unwrap()
    }

    #[test]
    fn circle_relations() {
        let c = circle();
        assert_eq!(c.relations.len(), 4);
        let uus = NcPoly::parse("u[0;1,1] u*[0;1,1] - 1").unwrap();
        let usu = NcPoly::parse("u*[0;1,1] u[0;1,1] - 1").unwrap();
        assert_eq!(c.relations, vec![uus.clone(), usu.clone(), uus, usu]);
    }

    #[test]
    fn au_identity_relation_count() {
        for d in 1..=3 {
            let p = build_au(&Matrix::identity(d), "u", 0).unwrap();
            assert_eq!(p.relations.len(), 4 * d * d);
        }
        assert!(build_au(&Matrix::from_ints(&[&[1, 2], &[2, 1]]).unwrap(), "u", 0).is_err());
    }

    #[test]
    fn au_diag_snapshot() {
        // s = diag(4,1): entry (1,2) of uᵗ s ū s⁻¹ − I is
        // Σ_k u_k1 s_kk ū_k2 s⁻¹_22 = 4 u11 u12* + u21 u22*.
        let s = Matrix::diag(&[Scalar::from_int(4), Scalar::one()]);
        let p = build_au(&s, "u", 0).unwrap();
        let twisted_left = &p.relations[8..12];
        assert_eq!(
            twisted_left[1],
            NcPoly::parse("4 u[0;1,1] u*[0;1,2] + u[0;2,1] u*[0;2,2]").unwrap()
        );
        // entry (2,1): Σ_k u_k2 s_kk ū_k1 s⁻¹_11 = 1/4 (4 u12 u11* + u22 u21*)
        assert_eq!(
            twisted_left[2],
            NcPoly::parse("u[0;1,2] u*[0;1,1] + 1/4 u[0;2,2] u*[0;2,1]").unwrap()
        );
        // entry (1,1) of s ū s⁻¹ uᵗ − I: Σ_k s_11 ū_1k s⁻¹_kk u_1k − 1
        assert_eq!(
            p.relations[12],
            NcPoly::parse("u*[0;1,1] u[0;1,1] + 4 u*[0;1,2] u[0;1,2] - 1").unwrap()
        );
    }

    #[test]
    fn coalgebra_data() {
        let p = build_au(&Matrix::identity(2), "u", 0).unwrap();
        assert!(p.coassociativity_failures().unwrap().is_empty());
        assert!(p.counit_failures().unwrap().is_empty());
        let u11 = Generator::entry("u", 0, 1, 1);
        let d = p.comul_letter(u11).unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d.leg_degree(), 1);
        // (Δ⊗id)Δ(u11) has 4 terms in the tensor cube
        let cube = p.comul_at(&d, 1).unwrap();
        assert_eq!(cube.len(), 4);
        assert_eq!(cube, p.comul_at(&d, 2).unwrap());
        assert_eq!(
            p.comul_letter(u11.star()).unwrap(),
            NcPoly::parse("u*[0;1,1]@1 u*[0;1,1]@2 + u*[0;1,2]@1 u*[0;2,1]@2").unwrap()
        );
    }

    #[test]
    fn free_and_tensor_products() {
        let a = circle();
        assert_eq!(free_product(std::slice::from_ref(&a)).unwrap(), a);
        let b = build_au(&Matrix::identity(1), "u", 1).unwrap();
        let ab = free_product(&[a.clone(), b]).unwrap();
        assert_eq!(ab.relations.len(), 8);
        assert_eq!(ab.generators().len(), 2);
        assert!(matches!(
            free_product(&[a.clone(), a.clone()]),
            Err(Error::LabelCollision(_))
        ));
        let sq = a.tensor_square();
        assert_eq!(sq.generators().len(), 2);
        assert_eq!(sq.relations.len(), 8);
    }

    #[test]
    fn substitution() {
        let p = build_au(&Matrix::identity(2), "u", 0).unwrap();
        let ident: BTreeMap<_, _> = p
            .generators()
            .into_iter()
            .map(|g| (g, NcPoly::gen(g)))
            .collect();
        for r in &p.relations {
            assert_eq!(&substitute(r, &ident).unwrap(), r);
        }
        // counit as substitution u_ij -> δ_ij kills every relation
        let eps: BTreeMap<_, _> = p
            .generators()
            .into_iter()
            .map(|g| {
                (
                    g,
                    NcPoly::constant(Scalar::from_int(i64::from(g.row() == g.col()))),
                )
            })
            .collect();
        for r in &p.relations {
            assert!(substitute(r, &eps).unwrap().is_zero());
        }
        let partial: BTreeMap<_, _> = ident.iter().take(1).map(|(k, v)| (*k, v.clone())).collect();
        assert!(matches!(
            substitute(&p.relations[0], &partial),
            Err(Error::MissingGenerator(_))
        ));
        // substitution commutes with star
        let x = NcPoly::parse("(1+i) u[0;1,2] u*[0;2,2] + 3").unwrap();
        let swap: BTreeMap<_, _> = p
            .generators()
            .into_iter()
            .map(|g| (g, NcPoly::gen(Generator::entry("u", 0, g.col(), g.row()))))
            .collect();
        assert_eq!(
            substitute(&x.star(), &swap).unwrap(),
            substitute(&x, &swap).unwrap().star()
        );
    }

    #[test]
    fn json_round_trip() {
        let p = build_au(
            &Matrix::diag(&[Scalar::from_int(4), Scalar::one()]),
            "u",
            -1,
        )
        .unwrap();
        let js = serde_json::to_string(&p).unwrap();
        let back: Presentation = serde_json::from_str(&js).unwrap();
        assert_eq!(back, p);
        assert_eq!(serde_json::to_string(&back).unwrap(), js);
    }

    #[test]
    fn star_compatibility() {
        let g = Generator::entry("u", 0, 1, 1);
        let mut a = BTreeMap::new();
        a.insert(g, NcPoly::gen(g));
        a.insert(g.star(), NcPoly::gen(g));
        assert!(check_star_compatible(&a).is_err());
        a.insert(g.star(), NcPoly::gen(g.star()));
        assert!(check_star_compatible(&a).is_ok());
    }
}
