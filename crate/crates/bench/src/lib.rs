//! Fixtures shared by the benchmarks.

use qsym_core::catalog::{self, CatalogObject};
use qsym_core::coaction::CoactionCertificate;
use qsym_core::filtration::FiltrationSpec;
use qsym_core::{NcPoly, Presentation};

pub fn hyperoctahedral(d: usize) -> Presentation {
    catalog::hyperoctahedral(d).expect("catalog presentation")
}

/// Spec and certificate behind a catalog URI.
pub fn certified(uri: &str) -> (FiltrationSpec, CoactionCertificate) {
    match catalog::resolve(uri).expect("catalog entry") {
        CatalogObject::Certificate { spec, certificate } => (spec, certificate),
        _ => panic!("{uri} carries no certificate"),
    }
}

/// `u_ij³ − u_ij` for every entry of the first family.
pub fn cubes(p: &Presentation) -> Vec<NcPoly> {
    p.families[0]
        .generators()
        .into_iter()
        .map(|g| &NcPoly::gen(g).pow(3) - &NcPoly::gen(g))
        .collect()
}
