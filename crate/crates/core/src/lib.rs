//! Exact computer algebra for birational self-maps of projective spaces and
//! products of projective spaces.
//!
//! The crate is organized bottom-up:
//!
//! * [`polyring`] — sparse multihomogeneous polynomials over arbitrary-precision
//!   integers, with content extraction, exact division and multivariate GCD.
//! * [`projmap`] — rational maps between products of projective spaces:
//!   normalization to canonical reduced form, composition with cancellation,
//!   inverse certificates and degree sequences of iterates.
//! * [`monomial`] — integer exponent matrices: determinants, exterior powers,
//!   spectral radii, and the clearing construction turning a matrix into a
//!   monomial self-map of projective space.
//! * [`dyndeg`] — dynamical-degree profiles, identity checkers for the
//!   duality / product / conjugacy laws, interval arithmetic over cited
//!   symbols, and the certified real-root bracket for the degree-9 companion
//!   polynomial.
//! * [`constructions`] — builders for the reference family of birational maps
//!   (twisted Cremona involutions, the Segre-slice correspondence, the
//!   dimension-raising step map and the induction tower), each shipped with a
//!   machine-checked inverse certificate.

pub mod constructions;
pub mod dyndeg;
pub mod limits;
pub mod monomial;
pub mod polyring;
pub mod projmap;

pub use limits::Limits;
