//! Catalog exports compared byte-for-byte against committed files.
//! Run with `QSYM_BLESS=1` to rewrite them.

use std::path::PathBuf;

use qsym_core::catalog;
use qsym_core::coaction::CoactionCertificate;
use qsym_core::filtration::FiltrationSpec;
use qsym_core::Presentation;

const ENTRIES: [(&str, &str); 9] = [
    ("segments?d=2&N=2", "segments_d2_n2"),
    ("segments/hyper?d=2&N=2", "segments_hyper_d2_n2"),
    ("segments/quotient?d=2&N=2", "segments_quotient_d2_n2"),
    ("free-orthogonal?P=0,1;1,0", "free_orthogonal_swap"),
    ("two-point", "two_point"),
    ("two-point/permutation", "two_point_permutation"),
    ("A_h?d=2", "hyperoctahedral_2"),
    ("A_s(x)C(Z2)?d=2", "permutation_times_z2_2"),
    ("w-chain?d=2", "w_chain_2"),
];

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{name}.json"))
}

#[test]
fn catalog_exports_match_goldens() {
    let bless = std::env::var_os("QSYM_BLESS").is_some();
    let mut stale = Vec::new();
    for (uri, name) in ENTRIES {
        let text = catalog::resolve(uri).unwrap().to_json() + "\n";
        let path = golden_path(name);
        if bless {
            std::fs::write(&path, &text).unwrap();
            continue;
        }
        let want =
            std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        if want != text {
            stale.push(uri);
        }
    }
    assert!(stale.is_empty(), "exports differ from goldens: {stale:?}");
}

#[test]
fn goldens_load_back() {
    for (uri, name) in ENTRIES {
        let text = std::fs::read_to_string(golden_path(name)).unwrap();
        let obj = catalog::resolve(uri).unwrap();
        match (obj.spec(), obj.certificate()) {
            (_, Some(cert)) => assert_eq!(&CoactionCertificate::from_json(&text).unwrap(), cert),
            (Some(spec), None) => assert_eq!(&FiltrationSpec::from_json(&text).unwrap(), spec),
            (None, None) => assert_eq!(
                &Presentation::from_json(&text).unwrap(),
                obj.presentation().unwrap()
            ),
        }
    }
}
