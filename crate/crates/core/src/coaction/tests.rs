use std::collections::BTreeMap;

use super::*;
use crate::arith::Matrix;
use crate::catalog::{
    b_context, c_z2, corep_assignment, free_orthogonal_spec, hyperoctahedral, omega,
    quantum_permutation, random_spec, segments_filtration, segments_hyper, segments_permutation,
    segments_quotient, segments_subalgebra, swap2, trivial_certificate, two_point_spec, Gluing,
    SegmentsParams,
};
use crate::filtration::Coords;
use crate::ncalg::{Generator, NcPoly};
use crate::numeric::{eval_at_point, ClassicalPoint};
use crate::rewrite::RewriteConfig;
use crate::Scalar;

fn seg() -> SegmentsParams {
    SegmentsParams::new(2, 2).unwrap()
}

fn u(i: u16, j: u16) -> NcPoly {
    NcPoly::gen(Generator::entry("u", 0, i, j))
}

fn assert_all_proven(r: &AxiomReport) {
    for (k, e) in &r.axioms {
        assert_eq!(e.status, AxiomStatus::Proven, "{k}: {:?}", e.witness);
        assert_eq!(e.proven, e.identities, "{k}");
    }
}

#[test]
fn trivial_certificate_on_any_spec() {
    for spec in [
        segments_filtration(seg()),
        random_spec(3),
        two_point_spec().unwrap().0,
    ] {
        let cert = trivial_certificate(&spec);
        let r = verify_all(&spec, &cert, None).unwrap();
        assert_all_proven(&r);
        assert!(r.all_proven());
    }
}

#[test]
fn trivial_inner_product_identities_vanish() {
    let spec = segments_filtration(seg());
    let exps = expand_coaction(&spec, &trivial_certificate(&spec)).unwrap();
    let d = exps.iter().find(|e| e.axiom == "d.inner_product").unwrap();
    assert!(!d.identities.is_empty());
    assert!(d.identities.iter().all(|i| i.poly.is_zero()));
}

#[test]
fn free_orthogonal_certificates() {
    for p in [Matrix::identity(2), swap2()] {
        let (spec, _, cert) = free_orthogonal_spec(&p).unwrap();
        let mut r = verify_coaction(&spec, &cert).unwrap();
        r.merge(verify_filtration_axioms(&spec, &cert).unwrap());
        assert_all_proven(&r);
    }
}

#[test]
fn j_equivariance_is_p_ubar_minus_u_p() {
    let p = swap2();
    let (spec, _, cert) = free_orthogonal_spec(&p).unwrap();
    let exps = expand_filtration(&spec, &cert);
    let j = exps.iter().find(|e| e.axiom == "i.j_equivariance").unwrap();
    // entry (n, m) is labelled "e{m} @e{n}"
    for id in &j.identities {
        let (m, n) = id
            .label
            .split_once(" @e")
            .map(|(a, b)| (a[1..].parse::<u16>().unwrap(), b.parse::<u16>().unwrap()))
            .unwrap();
        let (m, n) = (m + 1, n + 1);
        let other = |k: u16| 3 - k;
        let want = &u(other(n), m).star() - &u(n, other(m));
        assert_eq!(id.poly, want, "{}", id.label);
    }
}

#[test]
fn identity_p_gives_self_adjoint_entries() {
    let (spec, _, cert) = free_orthogonal_spec(&Matrix::identity(2)).unwrap();
    let exps = expand_filtration(&spec, &cert);
    let j = exps.iter().find(|e| e.axiom == "i.j_equivariance").unwrap();
    for id in &j.identities {
        assert_eq!(id.poly.len(), 2);
        assert_eq!(id.poly.star(), -&id.poly);
    }
}

#[test]
fn segments_certificates() {
    let spec = segments_filtration(seg());
    for cert in [
        segments_hyper(seg()).unwrap(),
        segments_quotient(seg()).unwrap(),
    ] {
        assert_all_proven(&verify_all(&spec, &cert, None).unwrap());
    }
}

#[test]
fn dropped_relation_is_inconclusive() {
    let spec = segments_filtration(seg());
    let mut cert = segments_hyper(seg()).unwrap();
    cert.target.relations.remove(0);
    let r = verify_all(&spec, &cert, None).unwrap();
    assert_eq!(r.overall(), AxiomStatus::Inconclusive);
    let bad = r
        .axioms
        .values()
        .find(|e| e.status != AxiomStatus::Proven)
        .unwrap();
    assert!(bad.witness.as_ref().unwrap().contains("normal form"));
}

#[test]
fn shape_mismatch_is_an_error() {
    let spec = segments_filtration(seg());
    let mut cert = segments_hyper(seg()).unwrap();
    cert.beta_blocks[0].pop();
    assert!(matches!(
        verify_coaction(&spec, &cert),
        Err(crate::Error::Shape(_))
    ));
    let mut cert = segments_hyper(seg()).unwrap();
    cert.beta_blocks[0][0][0] = NcPoly::gen(Generator::entry("q", 0, 1, 1));
    assert!(matches!(
        verify_coaction(&spec, &cert),
        Err(crate::Error::MissingGenerator(_))
    ));
}

#[test]
fn certificate_json_round_trip() {
    let cert = segments_quotient(seg()).unwrap();
    let text = cert.to_json();
    let back = CoactionCertificate::from_json(&text).unwrap();
    assert_eq!(back, cert);
    assert_eq!(back.to_json(), text);
}

#[test]
fn reports_are_deterministic() {
    let spec = segments_filtration(seg());
    let cert = segments_hyper(seg()).unwrap();
    let a = serde_json::to_string(&verify_all(&spec, &cert, None).unwrap()).unwrap();
    let b = serde_json::to_string(&verify_all(&spec, &cert, None).unwrap()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn corepresentation_morphisms() {
    let (spec, _, cert) = free_orthogonal_spec(&swap2()).unwrap();
    let (src, map) = corep_assignment(&spec, &cert, 0).unwrap();
    let certs = check_morphism(&src, &cert.target, &map, RewriteConfig::new(4)).unwrap();
    assert_eq!(certs.len(), src.relations.len());
    assert!(certs.iter().all(|c| c.is_proven()));
}

#[test]
fn identity_morphism() {
    let h = hyperoctahedral(2).unwrap();
    let map = h
        .generators()
        .into_iter()
        .map(|g| (g, NcPoly::gen(g)))
        .collect();
    let certs = check_morphism(&h, &h, &map, RewriteConfig::new(4)).unwrap();
    assert!(certs.iter().all(|c| c.is_proven()));
}

#[test]
fn squares_into_hyperoctahedral() {
    let s = quantum_permutation(2).unwrap();
    let h = hyperoctahedral(2).unwrap();
    let map: BTreeMap<_, _> = s.families[0]
        .generators()
        .into_iter()
        .zip(h.families[0].generators())
        .map(|(v, g)| (v, NcPoly::gen(g).pow(2)))
        .collect();
    let certs = check_morphism(&s, &h, &map, RewriteConfig::new(6)).unwrap();
    assert!(certs.iter().all(|c| c.is_proven()));
}

#[test]
fn non_multiplicative_assignment_rejected() {
    let h = hyperoctahedral(2).unwrap();
    let map = h
        .generators()
        .into_iter()
        .map(|g| (g, NcPoly::gen(Generator::entry("u", 0, g.col(), g.row()))))
        .collect();
    assert!(matches!(
        check_morphism(&h, &h, &map, RewriteConfig::new(4)),
        Err(crate::Error::IncompatibleAssignment(_))
    ));
}

#[test]
fn full_algebra_is_vacuous() {
    let spec = segments_filtration(seg());
    let n = spec.algebra.dim;
    let full: Vec<Coords> = (0..n).map(|k| spec.algebra.basis_vector(k)).collect();
    let r =
        check_subalgebra_preserved(&spec, &segments_hyper(seg()).unwrap(), &full, None).unwrap();
    assert_all_proven(&r);
}

#[test]
fn non_subalgebra_rejected() {
    let spec = segments_filtration(seg());
    let sub = vec![spec.algebra.basis_vector(2)];
    assert!(matches!(
        check_subalgebra_preserved(&spec, &segments_hyper(seg()).unwrap(), &sub, None),
        Err(crate::Error::NotSubalgebra(_))
    ));
}

#[test]
fn gluing_at_both_ends() {
    let spec = segments_filtration(seg());
    let b = segments_subalgebra(seg(), Gluing::BothEnds);
    let quotient = segments_quotient(seg()).unwrap();
    assert_all_proven(&check_subalgebra_preserved(&spec, &quotient, &b, None).unwrap());

    let hyper = segments_hyper(seg()).unwrap();
    let symbolic = check_subalgebra_preserved(&spec, &hyper, &b, None).unwrap();
    assert_eq!(symbolic.overall(), AxiomStatus::Inconclusive);
    let numeric =
        check_subalgebra_preserved(&spec, &hyper, &b, Some(&NumericCheck::default())).unwrap();
    assert_eq!(numeric.overall(), AxiomStatus::RefutedNumerically);
}

#[test]
fn obstruction_is_a_sum_difference() {
    let spec = segments_filtration(seg());
    let b = segments_subalgebra(seg(), Gluing::BothEnds);
    let obs = subalgebra_obstructions(&spec, &segments_hyper(seg()).unwrap(), &b).unwrap();
    assert!(!obs.is_empty());
    let fam = hyperoctahedral(2).unwrap().families[0].clone();
    let one = num_complex::Complex64::new(1.0, 0.0);
    let zero = num_complex::Complex64::new(0.0, 0.0);
    let diag = ClassicalPoint::new(vec![(fam, vec![vec![one, zero], vec![zero, -one]])]).unwrap();
    assert!(obs
        .iter()
        .any(|p| eval_at_point(p, &diag).unwrap().norm() > 0.5));
}

#[test]
fn other_gluings() {
    let spec = segments_filtration(seg());
    let hyper = segments_hyper(seg()).unwrap();
    let c = segments_subalgebra(seg(), Gluing::AllEndpoints);
    assert_all_proven(&check_subalgebra_preserved(&spec, &hyper, &c, None).unwrap());
    let permutation = segments_permutation(seg()).unwrap();
    let d = segments_subalgebra(seg(), Gluing::ZeroEnd);
    assert_all_proven(&check_subalgebra_preserved(&spec, &permutation, &d, None).unwrap());
}

#[test]
fn group_like_elements() {
    let cfg = RewriteConfig::new(6);
    assert_all_proven(
        &check_group_like(&hyperoctahedral(2).unwrap(), &NcPoly::one(), cfg, None).unwrap(),
    );
    let z = c_z2();
    let zg = NcPoly::gen(z.families[0].generator(1, 1));
    assert_all_proven(&check_group_like(&z, &zg, cfg, None).unwrap());
    let ctx = b_context(2, 2).unwrap();
    assert_all_proven(&check_group_like(&ctx, &omega(2), cfg, None).unwrap());
    let plain = check_group_like(&hyperoctahedral(2).unwrap(), &omega(2), cfg, None).unwrap();
    assert_eq!(
        plain.status("omega.group_like"),
        Some(AxiomStatus::Inconclusive)
    );
}

#[test]
fn two_point_permutation_certificate() {
    let (spec, cert) = two_point_spec().unwrap();
    assert_all_proven(&verify_all(&spec, &cert, None).unwrap());
    let mut broken = cert.clone();
    broken.alpha_matrix[1][1] = &broken.alpha_matrix[1][1] + &NcPoly::constant(Scalar::one());
    let r = verify_all(&spec, &broken, Some(&NumericCheck::default())).unwrap();
    assert_eq!(r.overall(), AxiomStatus::RefutedNumerically);
}
