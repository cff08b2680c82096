//! The map file format.
//!
//! A single document holds the source blocks, target blocks and the groups of
//! canonically serialized polynomials. Canonical term order makes the
//! serialize → load → serialize round trip byte-stable.

use super::{MapError, RationalMap};
use crate::limits::Limits;
use crate::polyring::{poly_from_terms_doc, poly_to_terms_doc, BlockShape, TermDoc};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct MapDoc {
    pub kind: String,
    /// Coordinate count per source block.
    pub source: Vec<usize>,
    /// Coordinate count per target block.
    pub target: Vec<usize>,
    /// One group per target block; each component a canonical term list.
    pub groups: Vec<Vec<Vec<TermDoc>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

pub fn map_to_doc(map: &RationalMap, provenance: Option<String>) -> MapDoc {
    MapDoc {
        kind: "rational-map".into(),
        source: map.source().blocks().to_vec(),
        target: map.target().blocks().to_vec(),
        groups: map
            .groups()
            .iter()
            .map(|g| g.iter().map(poly_to_terms_doc).collect())
            .collect(),
        provenance,
    }
}

/// Load a map document, validating that the stored groups are already in
/// canonical reduced form (the format stores reduced maps only).
pub fn map_from_doc(doc: &MapDoc, limits: &Limits) -> Result<RationalMap, MapError> {
    if doc.kind != "rational-map" {
        return Err(MapError::BadDocument(format!(
            "unexpected document kind {:?}",
            doc.kind
        )));
    }
    let source = BlockShape::new(doc.source.clone()).map_err(MapError::Poly)?;
    let target = BlockShape::new(doc.target.clone()).map_err(MapError::Poly)?;
    let mut groups = Vec::with_capacity(doc.groups.len());
    for g in &doc.groups {
        let comps = g
            .iter()
            .map(|terms| poly_from_terms_doc(&source, terms))
            .collect::<Result<Vec<_>, _>>()?;
        groups.push(comps);
    }
    let map = RationalMap::new(source, target, groups, limits)?;
    // Reject documents whose stored form differs from the canonical one.
    let roundtrip = map_to_doc(&map, None);
    if roundtrip.groups != doc.groups {
        return Err(MapError::NotCanonical);
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_poly;

    const L: Limits = Limits::DESK;

    #[test]
    fn document_roundtrip_byte_stable() {
        let s = BlockShape::new(vec![3]).unwrap();
        let m = RationalMap::new(
            s.clone(),
            s.clone(),
            vec![vec![
                parse_poly(&s, "x1*x2").unwrap(),
                parse_poly(&s, "x0*x2").unwrap(),
                parse_poly(&s, "x0*x1").unwrap(),
            ]],
            &L,
        )
        .unwrap();
        let doc = map_to_doc(&m, Some("standard involution".into()));
        let json1 = serde_json::to_string_pretty(&doc).unwrap();
        let loaded = map_from_doc(&doc, &L).unwrap();
        assert_eq!(loaded, m);
        let json2 =
            serde_json::to_string_pretty(&map_to_doc(&loaded, Some("standard involution".into())))
                .unwrap();
        assert_eq!(json1, json2);
    }

    #[test]
    fn non_canonical_document_rejected() {
        let s = BlockShape::new(vec![2]).unwrap();
        let m = RationalMap::new(
            s.clone(),
            s.clone(),
            vec![vec![
                parse_poly(&s, "x0").unwrap(),
                parse_poly(&s, "x1").unwrap(),
            ]],
            &L,
        )
        .unwrap();
        let mut doc = map_to_doc(&m, None);
        // Scale one group by 2: still the same projective map, but not the
        // canonical representative.
        for comp in doc.groups[0].iter_mut() {
            for term in comp.iter_mut() {
                let v: i64 = term.0.parse().unwrap();
                term.0 = (2 * v).to_string();
            }
        }
        assert!(matches!(
            map_from_doc(&doc, &L),
            Err(MapError::NotCanonical)
        ));
    }
}
