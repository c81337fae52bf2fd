//! Quantum symmetry workbench for Hilbert modules with orthogonal filtrations.
//!
//! The crate represents finite (truncated) Hilbert modules equipped with an
//! orthogonal filtration, emits presentations of their universal quantum
//! symmetry objects, and verifies candidate filtration-preserving coactions
//! symbolically (noncommutative Gröbner rewriting) or refutes them
//! numerically (classical points).

#![allow(clippy::needless_range_loop)]

pub mod arith;
pub mod catalog;
pub mod coaction;
pub mod error;
pub mod filtration;
pub mod ncalg;
pub mod numeric;
pub mod rewrite;

pub use arith::{Matrix, Scalar};
pub use error::{Error, Result};
pub use ncalg::{Generator, NcPoly, Presentation, Word};
