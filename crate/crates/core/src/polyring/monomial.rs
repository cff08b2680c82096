//! Exponent vectors.

use super::{BlockShape, PolyError};
use std::cmp::Ordering;

/// A monomial: one nonnegative exponent per coordinate, stored flat in block
/// order. The block structure itself lives in the owning polynomial's
/// [`BlockShape`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Box<[u32]>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial {
            exps: exps.into_boxed_slice(),
        }
    }

    /// The constant monomial (all exponents zero) for `n` coordinates.
    pub fn one(n: usize) -> Self {
        Monomial {
            exps: vec![0; n].into_boxed_slice(),
        }
    }

    /// Single variable `coord^1` among `n` coordinates.
    pub fn variable(n: usize, coord: usize) -> Self {
        let mut exps = vec![0; n];
        exps[coord] = 1;
        Monomial::new(exps)
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    /// Per-block degree vector under `shape`.
    pub fn multidegree(&self, shape: &BlockShape) -> Vec<u32> {
        shape
            .blocks()
            .iter()
            .scan(0usize, |start, &len| {
                let s = *start;
                *start += len;
                Some(self.exps[s..s + len].iter().sum())
            })
            .collect()
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial, PolyError> {
        debug_assert_eq!(self.len(), other.len());
        let mut exps = Vec::with_capacity(self.len());
        for (&a, &b) in self.exps.iter().zip(other.exps.iter()) {
            exps.push(a.checked_add(b).ok_or(PolyError::ExponentOverflow)?);
        }
        Ok(Monomial::new(exps))
    }

    /// Exponentwise division; `None` when `other` does not divide `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        debug_assert_eq!(self.len(), other.len());
        let mut exps = Vec::with_capacity(self.len());
        for (&a, &b) in self.exps.iter().zip(other.exps.iter()) {
            exps.push(a.checked_sub(b)?);
        }
        Some(Monomial::new(exps))
    }

    /// Exponentwise minimum (the gcd of two monomials).
    pub fn min(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.len(), other.len());
        Monomial::new(
            self.exps
                .iter()
                .zip(other.exps.iter())
                .map(|(&a, &b)| a.min(b))
                .collect(),
        )
    }

    pub fn pow(&self, k: u32) -> Result<Monomial, PolyError> {
        let mut exps = Vec::with_capacity(self.len());
        for &e in self.exps.iter() {
            exps.push(e.checked_mul(k).ok_or(PolyError::ExponentOverflow)?);
        }
        Ok(Monomial::new(exps))
    }

    /// Graded-lexicographic comparison block by block: inside each block the
    /// block degree decides first, then the exponent vector lexicographically
    /// (earlier coordinates weigh more). This is the canonical term order.
    pub fn cmp_grlex(&self, other: &Monomial, shape: &BlockShape) -> Ordering {
        debug_assert_eq!(self.len(), other.len());
        let mut start = 0;
        for &len in shape.blocks() {
            let a = &self.exps[start..start + len];
            let b = &other.exps[start..start + len];
            let da: u64 = a.iter().map(|&e| e as u64).sum();
            let db: u64 = b.iter().map(|&e| e as u64).sum();
            match da.cmp(&db).then_with(|| a.cmp(b)) {
                Ordering::Equal => {}
                ord => return ord,
            }
            start += len;
        }
        Ordering::Equal
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grlex_orders_by_degree_then_lex() {
        let shape = BlockShape::new(vec![3]).unwrap();
        let x0x1 = Monomial::new(vec![1, 1, 0]);
        let x2sq = Monomial::new(vec![0, 0, 2]);
        let x0 = Monomial::new(vec![1, 0, 0]);
        assert_eq!(x0x1.cmp_grlex(&x2sq, &shape), Ordering::Greater);
        assert_eq!(x0.cmp_grlex(&x0x1, &shape), Ordering::Less);
        assert_eq!(x0.cmp_grlex(&x0, &shape), Ordering::Equal);
    }

    #[test]
    fn grlex_respects_block_order() {
        let shape = BlockShape::new(vec![2, 2]).unwrap();
        // x0*y1 vs x1*y0: block 0 decides (x0 > x1 lexicographically).
        let a = Monomial::new(vec![1, 0, 0, 1]);
        let b = Monomial::new(vec![0, 1, 1, 0]);
        assert_eq!(a.cmp_grlex(&b, &shape), Ordering::Greater);
    }

    #[test]
    fn division_and_gcd() {
        let a = Monomial::new(vec![3, 1]);
        let b = Monomial::new(vec![1, 1]);
        assert_eq!(a.checked_div(&b), Some(Monomial::new(vec![2, 0])));
        assert_eq!(b.checked_div(&a), None);
        assert_eq!(a.min(&b), b);
    }
}
