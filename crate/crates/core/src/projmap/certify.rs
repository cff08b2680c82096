//! Inverse certificates.
//!
//! `certify_inverse(f, g)` checks both reduced compositions against the
//! identity directly. For maps that only exist as compositions of factors —
//! where expanding `f ∘ g` symbolically is hopeless — [`MapExpr`] keeps the
//! factored structure and [`certify_pair`] telescopes instead: when every
//! factor of `f` meets its mirror factor of `g` in an identity composition,
//! associativity of composition of dominant maps collapses the whole product.
//! Product maps certify blockwise for the same reason. Every leaf check is an
//! exact symbolic computation.

use super::{MapError, RationalMap};
use crate::limits::Limits;
use serde::Serialize;

/// Outcome of one identity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum CertOutcome {
    Verified,
    /// Composition succeeded but is not the identity.
    Failed { reason: String },
    /// Composition itself failed (collapse or guard); reported as a
    /// certificate failure with the cause attached.
    Error { cause: String },
}

impl CertOutcome {
    pub fn ok(&self) -> bool {
        matches!(self, CertOutcome::Verified)
    }
}

/// A two-sided inverse certificate for a pair `(f, g)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum CertificateTree {
    /// Both reduced compositions compared to the identity directly.
    Direct {
        forward: CertOutcome,
        backward: CertOutcome,
    },
    /// Factorwise telescope: pair `i` matches factor `i` of `f` with factor
    /// `len−1−i` of `g`.
    Chain { pairs: Vec<CertificateTree> },
    /// Blockwise certificates of a product map.
    Product { blocks: Vec<CertificateTree> },
    /// Structural mismatch that prevented certification.
    Mismatch { reason: String },
}

impl CertificateTree {
    pub fn pass(&self) -> bool {
        match self {
            CertificateTree::Direct { forward, backward } => forward.ok() && backward.ok(),
            CertificateTree::Chain { pairs } => pairs.iter().all(|p| p.pass()),
            CertificateTree::Product { blocks } => blocks.iter().all(|b| b.pass()),
            CertificateTree::Mismatch { .. } => false,
        }
    }

    /// Human-readable route description ("direct", "chain(4)", …).
    pub fn route(&self) -> String {
        match self {
            CertificateTree::Direct { .. } => "direct".into(),
            CertificateTree::Chain { pairs } => format!("chain({})", pairs.len()),
            CertificateTree::Product { blocks } => format!("product({})", blocks.len()),
            CertificateTree::Mismatch { .. } => "mismatch".into(),
        }
    }
}

/// Direct certificate: `f ∘ g` equals the identity of `g`'s source and
/// `g ∘ f` equals the identity of `f`'s source, as reduced maps.
pub fn certify_inverse(f: &RationalMap, g: &RationalMap, limits: &Limits) -> CertificateTree {
    CertificateTree::Direct {
        forward: check_identity(f, g, limits),
        backward: check_identity(g, f, limits),
    }
}

fn check_identity(outer: &RationalMap, inner: &RationalMap, limits: &Limits) -> CertOutcome {
    if outer.source() != inner.target() || outer.target() != inner.source() {
        return CertOutcome::Error {
            cause: "shapes do not chain".into(),
        };
    }
    // Projective equality against the identity is checked on the raw
    // composite; canonical reduction would only cancel a common factor that
    // the cross products ignore anyway.
    match outer.composes_to_identity(inner, limits) {
        Ok(true) => CertOutcome::Verified,
        Ok(false) => CertOutcome::Failed {
            reason: "composition is not the identity".into(),
        },
        Err(e) => CertOutcome::Error {
            cause: e.to_string(),
        },
    }
}

/// A rational map kept in structured (possibly unexpanded) form.
///
/// `Chain` factors are listed in application order: `factors[0]` acts first.
#[derive(Clone, Debug)]
pub enum MapExpr {
    Atom(RationalMap),
    Chain(Vec<MapExpr>),
    Product(Vec<MapExpr>),
}

impl MapExpr {
    pub fn source(&self) -> crate::polyring::BlockShape {
        match self {
            MapExpr::Atom(m) => m.source().clone(),
            MapExpr::Chain(fs) => fs.first().expect("nonempty chain").source(),
            MapExpr::Product(fs) => {
                let mut it = fs.iter();
                let mut s = it.next().expect("nonempty product").source();
                for f in it {
                    s = s.concat(&f.source());
                }
                s
            }
        }
    }

    pub fn target(&self) -> crate::polyring::BlockShape {
        match self {
            MapExpr::Atom(m) => m.target().clone(),
            MapExpr::Chain(fs) => fs.last().expect("nonempty chain").target(),
            MapExpr::Product(fs) => {
                let mut it = fs.iter();
                let mut s = it.next().expect("nonempty product").target();
                for f in it {
                    s = s.concat(&f.target());
                }
                s
            }
        }
    }

    /// Expand to a single reduced map. May be expensive; guarded by `limits`.
    pub fn collapse(&self, limits: &Limits) -> Result<RationalMap, MapError> {
        match self {
            MapExpr::Atom(m) => Ok(m.clone()),
            MapExpr::Chain(fs) => {
                let mut acc: Option<RationalMap> = None;
                for f in fs {
                    let m = f.collapse(limits)?;
                    acc = Some(match acc {
                        None => m,
                        Some(prev) => m.compose(&prev, limits)?,
                    });
                }
                Ok(acc.expect("nonempty chain"))
            }
            MapExpr::Product(fs) => {
                let mut acc: Option<RationalMap> = None;
                for f in fs {
                    let m = f.collapse(limits)?;
                    acc = Some(match acc {
                        None => m,
                        Some(prev) => prev.product(&m)?,
                    });
                }
                Ok(acc.expect("nonempty product"))
            }
        }
    }

    /// Number of atomic factors (diagnostic).
    pub fn num_atoms(&self) -> usize {
        match self {
            MapExpr::Atom(_) => 1,
            MapExpr::Chain(fs) | MapExpr::Product(fs) => fs.iter().map(|f| f.num_atoms()).sum(),
        }
    }
}

/// Structural two-sided certificate for `(f, g)`.
///
/// Chains of equal length telescope pairwise; products certify blockwise;
/// atom pairs run the direct certificate. A structural mismatch falls back to
/// collapsing both sides (which may trip guards; that is reported, never
/// silently wrong).
pub fn certify_pair(f: &MapExpr, g: &MapExpr, limits: &Limits) -> CertificateTree {
    match (f, g) {
        (MapExpr::Atom(a), MapExpr::Atom(b)) => certify_inverse(a, b, limits),
        (MapExpr::Chain(fs), MapExpr::Chain(gs)) if fs.len() == gs.len() => {
            let pairs = fs
                .iter()
                .zip(gs.iter().rev())
                .map(|(fi, gi)| certify_pair(fi, gi, limits))
                .collect();
            CertificateTree::Chain { pairs }
        }
        (MapExpr::Product(fs), MapExpr::Product(gs)) if fs.len() == gs.len() => {
            let blocks = fs
                .iter()
                .zip(gs.iter())
                .map(|(fi, gi)| certify_pair(fi, gi, limits))
                .collect();
            CertificateTree::Product { blocks }
        }
        _ => match (f.collapse(limits), g.collapse(limits)) {
            (Ok(a), Ok(b)) => certify_inverse(&a, &b, limits),
            (Err(e), _) | (_, Err(e)) => CertificateTree::Mismatch {
                reason: format!("cannot collapse structurally mismatched pair: {e}"),
            },
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse_poly, BlockShape};
    use crate::polyring::Polynomial;

    const L: Limits = Limits::DESK;

    fn shape(blocks: &[usize]) -> BlockShape {
        BlockShape::new(blocks.to_vec()).unwrap()
    }

    fn involution(n: usize) -> RationalMap {
        let s = shape(&[n + 1]);
        let group = (0..=n)
            .map(|i| {
                let mut m = Polynomial::one(s.clone());
                for j in 0..=n {
                    if j != i {
                        m = m.mul(&Polynomial::variable(s.clone(), j), &L).unwrap();
                    }
                }
                m
            })
            .collect();
        RationalMap::new(s.clone(), s, vec![group], &L).unwrap()
    }

    #[test]
    fn involution_is_self_inverse() {
        let c = involution(3);
        let cert = certify_inverse(&c, &c, &L);
        assert!(cert.pass(), "{cert:?}");
    }

    #[test]
    fn swap_is_not_inverse_of_identity() {
        let s = shape(&[4]);
        let id = RationalMap::identity(&s);
        let swap = RationalMap::new(
            s.clone(),
            s.clone(),
            vec![vec![
                parse_poly(&s, "x1").unwrap(),
                parse_poly(&s, "x0").unwrap(),
                parse_poly(&s, "x2").unwrap(),
                parse_poly(&s, "x3").unwrap(),
            ]],
            &L,
        )
        .unwrap();
        let cert = certify_inverse(&id, &swap, &L);
        assert!(!cert.pass());
    }

    #[test]
    fn chain_certificate_telescopes() {
        let c = involution(2);
        let id = RationalMap::identity(&shape(&[3]));
        let f = MapExpr::Chain(vec![
            MapExpr::Atom(c.clone()),
            MapExpr::Atom(id.clone()),
            MapExpr::Atom(c.clone()),
        ]);
        let g = MapExpr::Chain(vec![
            MapExpr::Atom(c.clone()),
            MapExpr::Atom(id),
            MapExpr::Atom(c),
        ]);
        let cert = certify_pair(&f, &g, &L);
        assert!(cert.pass(), "{cert:?}");
        assert_eq!(cert.route(), "chain(3)");
    }

    #[test]
    fn product_certificate_goes_blockwise() {
        let c = involution(2);
        let f = MapExpr::Product(vec![MapExpr::Atom(c.clone()), MapExpr::Atom(c.clone())]);
        let cert = certify_pair(&f, &f, &L);
        assert!(cert.pass());
        assert_eq!(cert.route(), "product(2)");
    }
}
