//! Integer exponent matrices and the monomial-map bridge.
//!
//! A square integer matrix acts on the torus inside `P^n` as a monomial map;
//! clearing denominators turns it into a reduced rational self-map. The
//! spectral radii of the exterior powers of the matrix are the exact
//! dynamical degrees of that map — an external standard fact used here as a
//! cross-check oracle, not re-proved.

mod matrix;
mod projective;
mod random;
mod spectral;
pub mod unipoly;

pub use matrix::IntMatrix;
pub use projective::{clearing_degree, clearing_degree_big, linear_map, to_projective};
pub use random::{random_unimodular, RandomMatrixSpec};
pub use spectral::{char_poly, lambda_profile, spectral_radius, SpectralEstimate, SpectralMethod};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("matrix dimension must be at least 1")]
    EmptyMatrix,
    #[error("entry list has wrong length for the stated dimension")]
    BadEntryCount,
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not unimodular (det = {det})")]
    NotUnimodular { det: String },
    #[error("exterior power index {p} out of range 0..={n}")]
    POutOfRange { p: usize, n: usize },
    #[error("spectral computation did not converge: {0}")]
    SpectralNonConvergence(String),
    #[error(transparent)]
    Map(#[from] crate::projmap::MapError),
    #[error(transparent)]
    Poly(#[from] crate::polyring::PolyError),
}
