//! Free *-algebra polynomials and Woronowicz presentations.

mod poly;
mod presentation;
mod word;

pub use poly::NcPoly;
pub use presentation::{
    build_au, check_star_compatible, free_product, minus_identity_entries, poly_adjoint, poly_bar,
    poly_matmul, poly_transpose, scalar_to_poly_matrix, substitute, unitarity_relations,
    FamilyShape, PolyMatrix, Presentation,
};
pub use word::{Generator, Label, Word};
