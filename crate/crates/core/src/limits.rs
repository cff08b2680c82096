//! Resource guards for operations whose output size is data-dependent.
//!
//! Compositions of rational maps can blow up combinatorially. Every operation
//! that multiplies or substitutes polynomials takes a [`Limits`] value and
//! fails loudly (never thrashes) once a ceiling would be exceeded.

/// Ceilings for a single polynomial operation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of stored terms in any produced polynomial.
    pub max_terms: usize,
    /// Maximum total degree (summed over variable blocks) of any produced
    /// polynomial.
    pub max_degree: u32,
}

impl Limits {
    pub const fn new(max_terms: usize, max_degree: u32) -> Self {
        Limits {
            max_terms,
            max_degree,
        }
    }

    /// Generous defaults for interactive use: 5·10⁶ terms, total degree 10⁵.
    pub const DESK: Limits = Limits::new(5_000_000, 100_000);
}

impl Default for Limits {
    fn default() -> Self {
        Limits::DESK
    }
}
