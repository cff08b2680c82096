//! Builders for the reference family of birational maps.
//!
//! Every construction ships as a [`NamedConstruction`]: the reduced map, a
//! structured inverse (kept as a composition chain when expanding it
//! symbolically is hopeless), and a machine-checked inverse certificate.
//! Construction fails if the certificate does not pass — there is no way to
//! obtain an uncertified named map.

mod bmatrix;
mod builders;
mod named;

pub use bmatrix::alternating_sign_matrix;
pub use builders::{
    bdjk_map, bdjk_variant_a, conjugate, cremona_involution, product_construction, segre_slice_phi,
    identity_construction, step_map_h, sug_variant_a, tower, toy_exponent_matrix,
};
pub use named::{construction_to_doc, ConstructionDoc, NamedConstruction};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BuildError {
    #[error("exponent matrix must be unimodular (det = {det})")]
    NotUnimodular { det: String },
    #[error("the alternating-sign linear change is singular at size {size}")]
    SingularChange { size: usize },
    #[error("inverse certificate failed for {name}: {detail}")]
    CertificateFailed { name: String, detail: String },
    #[error("tower step to dimension {dim} failed: {cause}")]
    TowerStep { dim: usize, cause: String },
    #[error("tower target dimension {target} below base dimension {base}")]
    TowerBelowBase { target: usize, base: usize },
    #[error(transparent)]
    Matrix(#[from] crate::monomial::MatrixError),
    #[error(transparent)]
    Poly(#[from] crate::polyring::PolyError),
    #[error(transparent)]
    Map(#[from] crate::projmap::MapError),
    #[error(transparent)]
    DynDeg(#[from] crate::dyndeg::DynDegError),
}
