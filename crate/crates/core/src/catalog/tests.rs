use super::*;
use crate::coaction::AxiomStatus;
use crate::filtration::validate;
use crate::ncalg::{Generator, NcPoly};
use crate::rewrite::{Prover, RewriteConfig};

fn u(i: u16, j: u16) -> NcPoly {
    NcPoly::gen(Generator::entry("u", 0, i, j))
}

fn presentations() -> Vec<Presentation> {
    vec![
        hyperoctahedral(1).unwrap(),
        hyperoctahedral(2).unwrap(),
        quantum_permutation(2).unwrap(),
        quantum_permutation(3).unwrap(),
        c_z2(),
        permutation_times_z2(2).unwrap(),
        free_orthogonal(&Matrix::identity(2)).unwrap(),
        free_orthogonal(&swap2()).unwrap(),
        universal_unitary(&Matrix::from_ints(&[&[2, 0], &[0, 1]]).unwrap()).unwrap(),
    ]
}

#[test]
fn coalgebra_tables_are_consistent() {
    for p in presentations() {
        assert!(
            p.coassociativity_failures().unwrap().is_empty(),
            "{}",
            p.name
        );
        assert!(p.counit_failures().unwrap().is_empty(), "{}", p.name);
    }
}

#[test]
fn antipode_preserves_the_ideal() {
    for p in presentations() {
        let mut prover = Prover::new(&p.relations, RewriteConfig::new(4)).unwrap();
        for r in &p.relations {
            let s = p.antipode_of(r).unwrap();
            assert!(
                prover.prove(&s).unwrap().is_proven(),
                "{}: S({r}) = {s}",
                p.name
            );
        }
    }
}

#[test]
fn relation_counts() {
    // 4 projections, 2 row sums, 2 column sums, 4 star relations
    assert_eq!(quantum_permutation(2).unwrap().relations.len(), 12);
    // 1 star relation, row and column sums of squares
    let h1 = hyperoctahedral(1).unwrap();
    assert_eq!(h1.relations.len(), 3);
    let mut prover = Prover::new(&h1.relations, RewriteConfig::new(4)).unwrap();
    assert!(prover
        .prove(&(&(&u(1, 1) * &u(1, 1)) - &NcPoly::one()))
        .unwrap()
        .is_proven());
}

#[test]
fn hyperoctahedral_cubes_reduce() {
    let h = hyperoctahedral(2).unwrap();
    let mut prover = Prover::new(&h.relations, RewriteConfig::new(6)).unwrap();
    for (i, j) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
        let cube = &u(i, j).pow(3) - &u(i, j);
        assert!(prover.prove(&cube).unwrap().is_proven());
    }
}

#[test]
fn free_orthogonal_needs_proportional_conjugate() {
    let p = Matrix::from_ints(&[&[1, 1], &[0, 1]]).unwrap();
    assert!(matches!(free_orthogonal(&p), Err(Error::InvalidParams(_))));
    let singular = Matrix::from_ints(&[&[1, 1], &[1, 1]]).unwrap();
    assert!(free_orthogonal_spec(&singular).is_err());
}

#[test]
fn free_orthogonal_identity_relations() {
    let p = free_orthogonal(&Matrix::identity(2)).unwrap();
    // u = ū entrywise
    for (i, j) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
        let r = &u(i, j) - &u(i, j).star();
        assert!(p.relations.contains(&r) || p.relations.contains(&-&r));
    }
}

#[test]
fn segments_shapes() {
    let p = SegmentsParams::new(2, 2).unwrap();
    let spec = segments_filtration(p);
    assert_eq!(spec.algebra.dim, 10);
    assert_eq!(spec.module_dim, 10);
    assert_eq!(spec.labels(), vec![-2, -1, 0, 1, 2]);
    assert!(validate(&spec).all_passed());
    assert!(SegmentsParams::new(0, 2).is_err());
    assert!(SegmentsParams::new(2, 0).is_err());
}

#[test]
fn segments_products() {
    let p = SegmentsParams::new(1, 2).unwrap();
    let a = segments_filtration(p).algebra;
    // cos(π·) cos(3π·) = ½ cos(2π·) + ½ cos(4π·)
    let prod = a.struct_consts[p.a(1, 0)][p.a(3, 0)].clone().unwrap();
    assert_eq!(prod[p.a(2, 0)], Scalar::from_ratio(1, 2));
    assert_eq!(prod[p.a(4, 0)], Scalar::from_ratio(1, 2));
    assert!(a.struct_consts[p.a(2, 0)][p.a(3, 0)].is_none());
}

#[test]
fn segments_hyper_powers() {
    let p = SegmentsParams::new(2, 2).unwrap();
    let cert = segments_hyper(p).unwrap();
    for n in -2i64..=2 {
        let block = (n + 2) as usize;
        assert_eq!(cert.beta_blocks[block][0][1], u(1, 2).pow(r(n)));
    }
    assert_eq!(cert.alpha_matrix[p.a(3, 1)][p.a(3, 0)], u(2, 1));
    assert!(cert.alpha_matrix[p.a(3, 1)][p.a(2, 0)].is_zero());
}

#[test]
fn r_of_n() {
    assert_eq!([-2, -1, 0, 1, 2].map(r), [2, 1, 2, 1, 2]);
}

#[test]
fn subalgebra_dimensions() {
    let p = SegmentsParams::new(2, 2).unwrap();
    assert_eq!(segments_subalgebra(p, Gluing::BothEnds).len(), 8);
    assert_eq!(segments_subalgebra(p, Gluing::ZeroEnd).len(), 9);
    assert_eq!(segments_subalgebra(p, Gluing::AllEndpoints).len(), 7);
}

#[test]
fn w_chain() {
    let pres = w_chain_presentation(2).unwrap();
    assert_eq!(pres.families.len(), 5);
    let report = derive_w_chain(2, RewriteConfig::new(6)).unwrap();
    assert!(report.all_proven(), "{:?}", report.links);
    assert_eq!(report.source_relations, pres.relations.len());
    assert_eq!(
        report.links.status("chain.powers"),
        Some(AxiomStatus::Proven)
    );
    assert!(derive_w_chain(3, RewriteConfig::new(6))
        .unwrap()
        .all_proven());
}

#[test]
fn symbolic_certificate_verifies() {
    let (spec, cert) = two_point_spec().unwrap();
    let sym = symbolic_certificate(&spec, cert.rewrite_cfg).unwrap();
    assert_eq!(sym.target.families.len(), spec.blocks.len());
    let generic = crate::coaction::verify_coaction(&spec, &sym).unwrap();
    assert_eq!(
        generic.status("d.inner_product"),
        Some(AxiomStatus::Inconclusive)
    );
    let universal = universal_presentation(&spec, cert.rewrite_cfg).unwrap();
    assert!(universal.relations.len() > sym.target.relations.len());
    let sym = crate::coaction::CoactionCertificate {
        target: universal,
        ..sym
    };
    let r = crate::coaction::verify_coaction(&spec, &sym).unwrap();
    assert_eq!(r.status("d.inner_product"), Some(AxiomStatus::Proven));
    assert_eq!(r.status("e.module_map"), Some(AxiomStatus::Proven));
}

#[test]
fn uri_resolution() {
    let seg = resolve("catalog:segments?d=2&N=1").unwrap();
    assert_eq!(seg.spec().unwrap().blocks.len(), 3);
    assert!(seg.certificate().is_none());
    let hyper = resolve("segments/hyper?d=2&N=2").unwrap();
    assert_eq!(hyper.presentation().unwrap().name, "A_h(2)");
    let fo = resolve("catalog:free-orthogonal?P=0,1;1,0").unwrap();
    assert_eq!(fo.spec().unwrap().j_matrix, swap2());
    assert_eq!(
        resolve("A_s(x)C(Z2)?d=2")
            .unwrap()
            .presentation()
            .unwrap()
            .families
            .len(),
        2
    );
    assert!(matches!(resolve("catalog:nothing"), Err(Error::Parse(_))));
    assert!(matches!(resolve("segments?d"), Err(Error::Parse(_))));
    assert!(matches!(resolve("segments?d=x"), Err(Error::Parse(_))));
}

#[test]
fn every_listed_entry_resolves() {
    for (pattern, _) in list() {
        let uri = pattern
            .replace("d=", "d=2")
            .replace("N=", "N=2")
            .replace("P=", "P=1,0;0,1")
            .replace("s=", "s=2,0;0,1");
        let obj = resolve(&uri).unwrap_or_else(|e| panic!("{uri}: {e}"));
        assert!(!obj.to_json().is_empty());
    }
}

#[test]
fn parse_matrix_accepts_gaussian_rationals() {
    let m = parse_matrix("1/2,i;0,-1").unwrap();
    assert_eq!(m[(0, 1)], Scalar::i());
    assert_eq!(m[(0, 0)], Scalar::from_ratio(1, 2));
    assert!(parse_matrix("1,2;3").is_err());
}
