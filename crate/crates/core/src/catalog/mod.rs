//! Built-in specs, presentations and certificates, addressed by
//! `catalog:` URIs such as `catalog:segments/hyper?d=2&N=2`.

mod chain;
mod presentations;
mod specs;

use std::collections::BTreeMap;

use crate::arith::{Matrix, Scalar};
use crate::coaction::CoactionCertificate;
use crate::error::{Error, Result};
use crate::filtration::FiltrationSpec;
use crate::ncalg::Presentation;

pub use chain::{b_context, derive_w_chain, omega, w_chain_presentation, ChainReport, WINDOW};
pub use presentations::{
    c_z2, free_orthogonal, hyperoctahedral, permutation_times_z2, quantum_permutation, swap2,
    universal_unitary,
};
pub use specs::{
    corep_assignment, cstar_filtration_spec, free_orthogonal_spec, r, random_spec,
    segments_filtration, segments_hyper, segments_permutation, segments_quotient, segments_spec,
    segments_subalgebra, symbolic_certificate, trivial_certificate, two_point_algebra,
    two_point_spec, universal_presentation, Gluing, SegmentsParams,
};

pub const SCHEME: &str = "catalog:";

/// What a catalog URI resolves to.
#[derive(Clone, Debug)]
pub enum CatalogObject {
    Spec(FiltrationSpec),
    Certificate {
        spec: FiltrationSpec,
        certificate: CoactionCertificate,
    },
    Presentation(Presentation),
}

impl CatalogObject {
    pub fn spec(&self) -> Option<&FiltrationSpec> {
        match self {
            CatalogObject::Spec(s) | CatalogObject::Certificate { spec: s, .. } => Some(s),
            CatalogObject::Presentation(_) => None,
        }
    }

    pub fn certificate(&self) -> Option<&CoactionCertificate> {
        match self {
            CatalogObject::Certificate { certificate, .. } => Some(certificate),
            _ => None,
        }
    }

    pub fn presentation(&self) -> Option<&Presentation> {
        match self {
            CatalogObject::Presentation(p) => Some(p),
            CatalogObject::Certificate { certificate, .. } => Some(&certificate.target),
            CatalogObject::Spec(_) => None,
        }
    }

    /// JSON in the format of the object's own module.
    pub fn to_json(&self) -> String {
        match self {
            CatalogObject::Spec(s) => s.to_json(),
            CatalogObject::Certificate { certificate, .. } => certificate.to_json(),
            CatalogObject::Presentation(p) => p.to_json(),
        }
    }
}

/// Catalog entries: URI pattern and description.
pub fn list() -> Vec<(&'static str, &'static str)> {
    vec![
        ("segments?d=&N=", "d segments truncated at Fourier index N"),
        ("segments/hyper?d=&N=", "segments with the A_h(d) coaction"),
        (
            "segments/quotient?d=&N=",
            "segments with the A_s(d) ⊗ C(Z2) coaction",
        ),
        (
            "segments/permutation?d=&N=",
            "segments with the A_s(d) coaction",
        ),
        (
            "free-orthogonal?P=",
            "ℂⁿ with J = P and the A_o(P) coaction (P rows split by ';')",
        ),
        ("two-point", "functions on two points"),
        (
            "two-point/permutation",
            "two points with the A_s(2) coaction",
        ),
        ("A_h?d=", "hyperoctahedral quantum group"),
        ("A_s?d=", "quantum permutation group"),
        ("C(Z2)", "functions on Z2"),
        ("A_s(x)C(Z2)?d=", "A_s(d) ⊗ C(Z2)"),
        ("A_o?P=", "free orthogonal quantum group"),
        ("A_u?s=", "universal unitary quantum group"),
        (
            "A_h/B?d=&N=",
            "A_h(d) with the gluing conditions of segments",
        ),
        ("w-chain?d=", "relations forced by a coaction on segments"),
    ]
}

fn parse_params(query: &str) -> Result<BTreeMap<String, String>> {
    query
        .split('&')
        .filter(|kv| !kv.is_empty())
        .map(|kv| {
            kv.split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| Error::Parse(format!("catalog parameter `{kv}` lacks `=`")))
        })
        .collect()
}

fn usize_param(params: &BTreeMap<String, String>, key: &str, default: usize) -> Result<usize> {
    match params.get(key) {
        None => Ok(default),
        Some(v) => v
            .parse()
            .map_err(|_| Error::Parse(format!("catalog parameter {key}=`{v}` is not a count"))),
    }
}

/// `1,0;0,1` → the identity.
pub fn parse_matrix(s: &str) -> Result<Matrix> {
    let rows = s
        .split(';')
        .map(|row| {
            row.split(',')
                .map(Scalar::parse)
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(rows)
}

fn matrix_param(params: &BTreeMap<String, String>, key: &str) -> Result<Matrix> {
    params
        .get(key)
        .map_or_else(|| Ok(Matrix::identity(2)), |v| parse_matrix(v))
}

/// Resolves a catalog URI (with or without the `catalog:` scheme).
pub fn resolve(uri: &str) -> Result<CatalogObject> {
    let body = uri.strip_prefix(SCHEME).unwrap_or(uri);
    let (path, query) = body.split_once('?').unwrap_or((body, ""));
    let params = parse_params(query)?;
    let segs = || SegmentsParams::new(usize_param(&params, "d", 2)?, usize_param(&params, "N", 2)?);
    let with_spec =
        |spec: FiltrationSpec, certificate| CatalogObject::Certificate { spec, certificate };
    Ok(match path {
        "segments" => CatalogObject::Spec(segments_filtration(segs()?)),
        "segments/hyper" => with_spec(segments_filtration(segs()?), segments_hyper(segs()?)?),
        "segments/quotient" => with_spec(segments_filtration(segs()?), segments_quotient(segs()?)?),
        "segments/permutation" => {
            with_spec(segments_filtration(segs()?), segments_permutation(segs()?)?)
        }
        "free-orthogonal" => {
            let (spec, _, cert) = free_orthogonal_spec(&matrix_param(&params, "P")?)?;
            with_spec(spec, cert)
        }
        "two-point" => CatalogObject::Spec(two_point_spec()?.0),
        "two-point/permutation" => {
            let (spec, cert) = two_point_spec()?;
            with_spec(spec, cert)
        }
        "A_h" => CatalogObject::Presentation(hyperoctahedral(usize_param(&params, "d", 2)?)?),
        "A_s" => CatalogObject::Presentation(quantum_permutation(usize_param(&params, "d", 2)?)?),
        "C(Z2)" => CatalogObject::Presentation(c_z2()),
        "A_s(x)C(Z2)" => {
            CatalogObject::Presentation(permutation_times_z2(usize_param(&params, "d", 2)?)?)
        }
        "A_o" => CatalogObject::Presentation(free_orthogonal(&matrix_param(&params, "P")?)?),
        "A_u" => CatalogObject::Presentation(universal_unitary(&matrix_param(&params, "s")?)?),
        "A_h/B" => {
            let p = segs()?;
            CatalogObject::Presentation(b_context(p.d, p.n)?)
        }
        "w-chain" => {
            CatalogObject::Presentation(w_chain_presentation(usize_param(&params, "d", 2)?)?)
        }
        other => return Err(Error::Parse(format!("unknown catalog entry `{other}`"))),
    })
}

#[cfg(test)]
mod tests;
