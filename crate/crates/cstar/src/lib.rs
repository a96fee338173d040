//! Index bookkeeping, spectral-sequence bounds and quantum-algebra checks
//! for symplectic manifolds with a Hamiltonian circle action.
//!
//! The pipeline starts from a [`manifold::ManifoldData`] description of the
//! fixed locus (weights, Betti numbers, attraction graph) and derives slope
//! indices, Floer cohomology ranks, rank bounds for the filtration of
//! ordinary cohomology, and page-one approximations of the associated
//! spectral sequence. [`qalg`] works independently on presented quantum
//! algebras over rational functions in one variable.

pub mod bounds;
pub mod error;
pub mod graph;
pub mod indices;
pub mod manifold;
pub mod numerics;
pub mod qalg;
pub mod ssapprox;

pub use error::{Error, Result};

/// Quote a CSV field when it contains a separator, quote or newline.
pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
