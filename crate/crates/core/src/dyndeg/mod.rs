//! Dynamical-degree profiles, identity checkers and the certified root.
//!
//! The per-`p` dynamical degrees of a map form a *profile*. Entries carry
//! their provenance: exactly computed from the monomial oracle, estimated
//! from a degree sequence, or a cited symbol handled by interval arithmetic
//! (the first dynamical degree `λ` of the reference map is only known to lie
//! in `[291, 669]`; the second is the certified root `a` of a degree-9
//! integer polynomial). Identity checkers exercise the duality, conjugacy and
//! product laws on the exactly computable monomial family.

mod checks;
mod interval;
mod lambda1;
mod profile;
mod root;

pub use checks::{
    check_conjugacy, check_duality, check_oracle_growth, check_product, CheckReport, CheckRow,
    GrowthReport,
};
pub use interval::Interval;
pub use lambda1::{lambda1_report, Lambda1Report};
pub use profile::{
    identity_profile, max_merge_profile, monomial_dyndeg_profile, tower_profile, DegreeValue,
    DynDegProfile, ProfileEntry, SymbolicDegree,
};
pub use root::{root_a, RootCertificate, ROOT_A_COEFFS};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DynDegError {
    #[error("no sign change over the seed bracket ({lo}, {hi}); transcription error suspected")]
    NoSignChange { lo: i64, hi: i64 },
    #[error("tower profiles need dimension at least 6, got {0}")]
    DimensionTooSmall(usize),
    #[error("profiles have incompatible kinds or dimensions")]
    IncompatibleProfiles,
    #[error("cannot decide max symbolically: {0} vs {1} have overlapping intervals")]
    AmbiguousMax(String, String),
    #[error(transparent)]
    Matrix(#[from] crate::monomial::MatrixError),
    #[error(transparent)]
    Map(#[from] crate::projmap::MapError),
}
