//! Canonical text serialization of polynomials.
//!
//! A polynomial serializes as its term list in canonical order (leading term
//! first); each term is `[decimal coefficient string, one exponent array per
//! block]`. The ordering makes serialize → deserialize → serialize
//! byte-stable, which the map file format relies on.

use super::{BlockShape, Monomial, PolyError, Polynomial};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::str::FromStr;

/// One serialized term: decimal coefficient plus per-block exponent arrays.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TermDoc(pub String, pub Vec<Vec<u32>>);

pub fn poly_to_terms_doc(p: &Polynomial) -> Vec<TermDoc> {
    let shape = p.shape();
    p.terms()
        .iter()
        .map(|(m, c)| {
            let blocks = (0..shape.num_blocks())
                .map(|b| m.exps()[shape.block_range(b)].to_vec())
                .collect();
            TermDoc(c.to_string(), blocks)
        })
        .collect()
}

pub fn poly_from_terms_doc(shape: &BlockShape, doc: &[TermDoc]) -> Result<Polynomial, PolyError> {
    let mut terms = Vec::with_capacity(doc.len());
    for TermDoc(coeff, blocks) in doc {
        if blocks.len() != shape.num_blocks() {
            return Err(PolyError::ShapeMismatch);
        }
        let mut exps = Vec::with_capacity(shape.num_coords());
        for (b, arr) in blocks.iter().enumerate() {
            if arr.len() != shape.blocks()[b] {
                return Err(PolyError::ShapeMismatch);
            }
            exps.extend_from_slice(arr);
        }
        let c = BigInt::from_str(coeff)
            .map_err(|e| PolyError::Parse(format!("bad coefficient {coeff:?}: {e}")))?;
        terms.push((Monomial::new(exps), c));
    }
    let p = Polynomial::from_terms(shape.clone(), terms)?;
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_poly;

    #[test]
    fn roundtrip_is_byte_stable() {
        let shape = BlockShape::new(vec![4, 2]).unwrap();
        let p = parse_poly(&shape, "3*x0^2*y0 - x1*x3*y1 + 7*x2^2*y0").unwrap();
        let doc = poly_to_terms_doc(&p);
        let json1 = serde_json::to_string(&doc).unwrap();
        let q = poly_from_terms_doc(&shape, &doc).unwrap();
        assert_eq!(p, q);
        let json2 = serde_json::to_string(&poly_to_terms_doc(&q)).unwrap();
        assert_eq!(json1, json2);
    }

    #[test]
    fn rejects_malformed_exponent_blocks() {
        let shape = BlockShape::new(vec![2]).unwrap();
        let doc = vec![TermDoc("1".into(), vec![vec![1, 0, 0]])];
        assert!(poly_from_terms_doc(&shape, &doc).is_err());
    }
}
