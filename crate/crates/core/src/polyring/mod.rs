//! Sparse multihomogeneous polynomials over arbitrary-precision integers.
//!
//! Variables are grouped into *blocks*, one block per projective factor of the
//! ambient space: a polynomial over `P^3 × P^1` has one block of four
//! variables and one block of two. Every stored polynomial is homogeneous in
//! each block separately; the per-block degrees form its *multidegree*.
//!
//! Values are immutable after construction and all operations are pure
//! functions, so polynomials can be shared freely across threads.

mod gcd;
mod monomial;
mod parse;
mod poly;
mod serial;

pub use gcd::{gcd, gcd_many, reduce_by_gcd};
pub use monomial::Monomial;
pub use parse::parse_poly;
pub use poly::Polynomial;
pub use serial::{poly_from_terms_doc, poly_to_terms_doc, TermDoc};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Shape of the ambient product of projective spaces: one entry per factor,
/// holding the *coordinate count* of that factor (`n + 1` for `P^n`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BlockShape(Vec<usize>);

impl BlockShape {
    pub fn new(blocks: Vec<usize>) -> Result<Self, PolyError> {
        if blocks.is_empty() || blocks.iter().any(|&b| b == 0) {
            return Err(PolyError::BadShape);
        }
        Ok(BlockShape(blocks))
    }

    /// Shape of a single `P^n` factor (`n + 1` coordinates).
    pub fn projective(n: usize) -> Self {
        BlockShape(vec![n + 1])
    }

    pub fn blocks(&self) -> &[usize] {
        &self.0
    }

    pub fn num_blocks(&self) -> usize {
        self.0.len()
    }

    /// Total number of coordinates across all blocks.
    pub fn num_coords(&self) -> usize {
        self.0.iter().sum()
    }

    /// Half-open coordinate range of block `b` in the flat coordinate order.
    pub fn block_range(&self, b: usize) -> std::ops::Range<usize> {
        let start: usize = self.0[..b].iter().sum();
        start..start + self.0[b]
    }

    /// Block containing flat coordinate `i`.
    pub fn block_of(&self, i: usize) -> usize {
        let mut acc = 0;
        for (b, &len) in self.0.iter().enumerate() {
            acc += len;
            if i < acc {
                return b;
            }
        }
        panic!("coordinate {i} out of range for shape {:?}", self.0);
    }

    /// Concatenation of two shapes (ambient space of a product of maps).
    pub fn concat(&self, other: &BlockShape) -> BlockShape {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        BlockShape(v)
    }
}

/// Errors from the polynomial layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("block shape must be nonempty with positive entries")]
    BadShape,
    #[error("operands live over different block shapes")]
    ShapeMismatch,
    #[error("multidegree mismatch: {left:?} vs {right:?}")]
    MultidegreeMismatch { left: Vec<u32>, right: Vec<u32> },
    #[error("term is not homogeneous of the polynomial's multidegree")]
    NotMultihomogeneous,
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("term ceiling exceeded: needed more than {limit} terms")]
    TermLimit { limit: usize },
    #[error("degree ceiling exceeded: {attempted} > {limit}")]
    DegreeLimit { limit: u32, attempted: u64 },
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("substitution needs {expected} images, got {got}")]
    WrongImageCount { expected: usize, got: usize },
    #[error("images of block {block} have incoherent multidegrees")]
    IncoherentImages { block: usize },
    #[error("parse error: {0}")]
    Parse(String),
}
