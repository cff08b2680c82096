//! Named constructions: a map, its structured inverse and a passing
//! certificate, bundled at construction time.

use super::BuildError;
use crate::dyndeg::DynDegProfile;
use crate::limits::Limits;
use crate::projmap::{certify_pair, map_to_doc, CertificateTree, MapDoc, MapExpr, RationalMap};
use serde::Serialize;

/// A reference map with a certified inverse.
///
/// The inverse is kept in structured form ([`MapExpr`]): for the published
/// exponent matrices the closed-form inverse factors compose to degrees far
/// beyond symbolic expansion, so the certificate telescopes over the factor
/// pairs instead of expanding. `inverse_map` is populated whenever the
/// expansion is actually feasible.
#[derive(Clone, Debug)]
pub struct NamedConstruction {
    pub name: String,
    /// The reduced forward map.
    pub map: RationalMap,
    /// Structured forward form (factors kept for telescoping certificates).
    pub forward: MapExpr,
    /// Structured inverse.
    pub inverse: MapExpr,
    /// Expanded inverse, when feasible.
    pub inverse_map: Option<RationalMap>,
    pub certificate: CertificateTree,
    /// Where the construction comes from, in plain words.
    pub provenance: String,
    /// Expected symbolic profile, for the tower family.
    pub expected_profile: Option<DynDegProfile>,
}

impl NamedConstruction {
    /// Assemble and certify; fails unless the certificate passes.
    pub fn certified(
        name: impl Into<String>,
        map: RationalMap,
        forward: MapExpr,
        inverse: MapExpr,
        inverse_map: Option<RationalMap>,
        provenance: impl Into<String>,
        limits: &Limits,
    ) -> Result<Self, BuildError> {
        let name = name.into();
        let certificate = certify_pair(&forward, &inverse, limits);
        if !certificate.pass() {
            return Err(BuildError::CertificateFailed {
                name,
                detail: format!("{certificate:?}"),
            });
        }
        Ok(NamedConstruction {
            name,
            map,
            forward,
            inverse,
            inverse_map,
            certificate,
            provenance: provenance.into(),
            expected_profile: None,
        })
    }

    pub fn with_profile(mut self, profile: DynDegProfile) -> Self {
        self.expected_profile = Some(profile);
        self
    }

    /// Degree of the forward map (single-block sources only).
    pub fn degree(&self) -> Option<u64> {
        self.map.scalar_degree()
    }
}

/// Exported form: the forward map document, the inverse (expanded or as an
/// ordered factor list in application order), and the certificate verdict.
#[derive(Clone, Debug, Serialize)]
pub struct ConstructionDoc {
    pub name: String,
    pub provenance: String,
    pub map: MapDoc,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inverse: Option<MapDoc>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub inverse_factors: Vec<MapDoc>,
    pub certificate_route: String,
    pub certificate_pass: bool,
}

pub fn construction_to_doc(c: &NamedConstruction) -> ConstructionDoc {
    fn atoms(expr: &MapExpr, out: &mut Vec<MapDoc>) {
        match expr {
            MapExpr::Atom(m) => out.push(map_to_doc(m, None)),
            MapExpr::Chain(fs) | MapExpr::Product(fs) => {
                for f in fs {
                    atoms(f, out);
                }
            }
        }
    }
    let inverse = c.inverse_map.as_ref().map(|m| map_to_doc(m, None));
    let mut inverse_factors = Vec::new();
    if inverse.is_none() {
        atoms(&c.inverse, &mut inverse_factors);
    }
    ConstructionDoc {
        name: c.name.clone(),
        provenance: c.provenance.clone(),
        map: map_to_doc(&c.map, Some(c.provenance.clone())),
        inverse,
        inverse_factors,
        certificate_route: c.certificate.route(),
        certificate_pass: c.certificate.pass(),
    }
}
