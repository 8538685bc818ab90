//! Construction, enumeration, and certification of selfadjoint solutions of
//! the algebraic Riccati equation
//!
//! ```text
//! A*X + XA + XBX - C = 0
//! ```
//!
//! through invariant subspaces of the Hamiltonian block matrix
//! `T = [[A, B], [C, -A*]]`. Selfadjoint solutions correspond to invariant
//! graph subspaces that are hypermaximal neutral for one indefinite inner
//! product on the doubled space; a second indefinite inner product sorts the
//! solutions by definiteness. The crate provides the dense complex kernel,
//! spectral analysis with Jordan chains and Riesz projections, the two Krein
//! forms, structural validation of Hamiltonians, sc-set enumeration of
//! invariant subspaces, solution extraction and certification, and model
//! generators that exercise the unbounded-operator phenomenology at desk
//! scale.

pub mod error;
pub mod hamiltonian;
pub mod json;
pub mod krein;
pub mod linalg;
pub mod matrix;
pub mod models;
pub mod quad;
pub mod riccati;
pub mod rng;
pub mod spectral;
pub mod subspaces;
pub mod tol;

pub use error::{
    HamiltonianError, KreinError, LinalgError, ModelError, RiccatiError, SpectralError,
    SubspaceError,
};
pub use matrix::{C64, ComplexMatrix};
pub use tol::Tolerances;
