//! Rational maps between products of projective spaces.
//!
//! A map is stored in *canonical reduced form*: per target block one group of
//! components, every group gcd-reduced with integer content 1 and a positive
//! leading coefficient on its first nonzero component. Composition reduces
//! eagerly, so degrees read off a composed map are degrees of the reduced
//! representative.

mod certify;
mod degseq;
mod map;
mod serial;

pub use certify::{certify_inverse, certify_pair, CertOutcome, CertificateTree, MapExpr};
pub use degseq::{iterate_degrees, DegreeEntry, DegreeSequence, IterationStop};
pub use map::RationalMap;
pub use serial::{map_from_doc, map_to_doc, MapDoc};

use crate::polyring::PolyError;
use thiserror::Error;

/// Errors from the rational-map layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("source/target shapes do not match")]
    ShapeMismatch,
    #[error("group {group} has a wrong number of components: expected {expected}, got {got}")]
    GroupSize {
        group: usize,
        expected: usize,
        got: usize,
    },
    #[error("all components of group {group} are zero")]
    ZeroGroup { group: usize },
    #[error("components of group {group} have incoherent multidegrees")]
    DegreeIncoherent { group: usize },
    #[error("composition collapsed: every component of group {group} vanished")]
    ComposeCollapse { group: usize },
    #[error("map is not a self-map")]
    NotSelfMap,
    #[error("stored map is not in canonical reduced form")]
    NotCanonical,
    #[error("map document is malformed: {0}")]
    BadDocument(String),
}
