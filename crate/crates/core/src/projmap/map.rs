//! The canonical rational-map type: normalization, composition, equality,
//! products and point evaluation.

use super::MapError;
use crate::limits::Limits;
use crate::polyring::{reduce_by_gcd, BlockShape, Monomial, Polynomial};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A rational map between products of projective spaces, in canonical
/// reduced form.
///
/// For each target block the map carries one *group* of components, as many
/// as that block has coordinates. Within a group all nonzero components share
/// one source multidegree, the gcd of the components is 1, the integer
/// content is 1, and the first nonzero component has a positive leading
/// coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMap {
    source: BlockShape,
    target: BlockShape,
    groups: Vec<Vec<Polynomial>>,
}

impl RationalMap {
    /// Normalize raw component groups into canonical reduced form.
    pub fn new(
        source: BlockShape,
        target: BlockShape,
        groups: Vec<Vec<Polynomial>>,
        limits: &Limits,
    ) -> Result<Self, MapError> {
        RationalMap::new_with_candidates(source, target, groups, &[], limits)
    }

    /// Normalization seeded with likely common factors (used by composition).
    pub(crate) fn new_with_candidates(
        source: BlockShape,
        target: BlockShape,
        groups: Vec<Vec<Polynomial>>,
        candidates: &[Polynomial],
        limits: &Limits,
    ) -> Result<Self, MapError> {
        if groups.len() != target.num_blocks() {
            return Err(MapError::ShapeMismatch);
        }
        let mut canonical = Vec::with_capacity(groups.len());
        for (g, comps) in groups.into_iter().enumerate() {
            let expected = target.blocks()[g];
            if comps.len() != expected {
                return Err(MapError::GroupSize {
                    group: g,
                    expected,
                    got: comps.len(),
                });
            }
            for c in &comps {
                if c.shape() != &source {
                    return Err(MapError::ShapeMismatch);
                }
            }
            if comps.iter().all(|c| c.is_zero()) {
                return Err(MapError::ZeroGroup { group: g });
            }
            let mut deg: Option<&[u32]> = None;
            for c in comps.iter().filter(|c| !c.is_zero()) {
                let d = c.multidegree()?;
                match deg {
                    None => deg = Some(d),
                    Some(prev) if prev == d => {}
                    Some(_) => return Err(MapError::DegreeIncoherent { group: g }),
                }
            }
            let mut reduced = reduce_by_gcd(&comps, candidates, limits)?;
            // Sign convention: first nonzero component leads positively.
            let lead_neg = reduced
                .iter()
                .find(|c| !c.is_zero())
                .and_then(|c| c.leading())
                .map(|(_, c)| c.is_negative())
                .unwrap_or(false);
            if lead_neg {
                for c in reduced.iter_mut() {
                    *c = c.neg();
                }
            }
            canonical.push(reduced);
        }
        Ok(RationalMap {
            source,
            target,
            groups: canonical,
        })
    }

    /// The identity self-map of `shape`.
    pub fn identity(shape: &BlockShape) -> Self {
        let groups = (0..shape.num_blocks())
            .map(|b| {
                shape
                    .block_range(b)
                    .map(|i| Polynomial::variable(shape.clone(), i))
                    .collect()
            })
            .collect();
        RationalMap {
            source: shape.clone(),
            target: shape.clone(),
            groups,
        }
    }

    pub fn source(&self) -> &BlockShape {
        &self.source
    }

    pub fn target(&self) -> &BlockShape {
        &self.target
    }

    pub fn groups(&self) -> &[Vec<Polynomial>] {
        &self.groups
    }

    /// All components flattened in target-coordinate order.
    pub fn components(&self) -> impl Iterator<Item = &Polynomial> {
        self.groups.iter().flatten()
    }

    pub fn is_self_map(&self) -> bool {
        self.source == self.target
    }

    /// Per-group multidegree over the source blocks.
    pub fn group_degrees(&self) -> Result<Vec<Vec<u32>>, MapError> {
        self.groups
            .iter()
            .map(|g| {
                let c = g.iter().find(|c| !c.is_zero()).expect("reduced group");
                Ok(c.multidegree()?.to_vec())
            })
            .collect()
    }

    /// Scalar degree for maps between single-block spaces.
    pub fn scalar_degree(&self) -> Option<u64> {
        if self.source.num_blocks() != 1 || self.target.num_blocks() != 1 {
            return None;
        }
        let c = self.groups[0].iter().find(|c| !c.is_zero())?;
        c.total_degree().ok()
    }

    /// Largest component term count (size diagnostic).
    pub fn max_component_terms(&self) -> usize {
        self.components().map(|c| c.num_terms()).max().unwrap_or(0)
    }

    /// Verify the canonical-form invariants without re-normalizing. Used when
    /// loading maps from files.
    pub fn validate(&self, limits: &Limits) -> Result<(), MapError> {
        for c in self.components() {
            c.validate()?;
        }
        let again = RationalMap::new(
            self.source.clone(),
            self.target.clone(),
            self.groups.clone(),
            limits,
        )?;
        if &again != self {
            return Err(MapError::NotCanonical);
        }
        Ok(())
    }

    /// Raw composition: substituted component groups, collapse-checked but
    /// not reduced. A valid (non-canonical) representative of `self ∘ inner`.
    pub(crate) fn compose_raw(
        &self,
        inner: &RationalMap,
        limits: &Limits,
    ) -> Result<Vec<Vec<Polynomial>>, MapError> {
        if self.source != inner.target {
            return Err(MapError::ShapeMismatch);
        }
        let images: Vec<Polynomial> = inner.components().cloned().collect();
        let mut groups = Vec::with_capacity(self.groups.len());
        for (g, comps) in self.groups.iter().enumerate() {
            let mut out = Vec::with_capacity(comps.len());
            for c in comps {
                out.push(c.substitute(&images, limits)?);
            }
            if out.iter().all(|c| c.is_zero()) {
                return Err(MapError::ComposeCollapse { group: g });
            }
            groups.push(out);
        }
        Ok(groups)
    }

    /// Composition `self ∘ inner`, normalized, with common factors cancelled.
    ///
    /// Fails with [`MapError::ComposeCollapse`] when a whole group vanishes,
    /// i.e. the image of `inner` lies inside the indeterminacy locus of
    /// `self`.
    pub fn compose(&self, inner: &RationalMap, limits: &Limits) -> Result<RationalMap, MapError> {
        let groups = self.compose_raw(inner, limits)?;
        // Likely common factors: the substituted components of the inner map.
        let images: Vec<Polynomial> = inner.components().cloned().collect();
        RationalMap::new_with_candidates(
            inner.source.clone(),
            self.target.clone(),
            groups,
            &images,
            limits,
        )
        .map_err(|e| match e {
            MapError::ZeroGroup { group } => MapError::ComposeCollapse { group },
            other => other,
        })
    }

    /// Does `self ∘ inner` equal the identity of `inner`'s source? Works on
    /// the raw (unreduced) composite: projective equality by cross products
    /// never needs the canonical representative.
    pub fn composes_to_identity(
        &self,
        inner: &RationalMap,
        limits: &Limits,
    ) -> Result<bool, MapError> {
        if self.target != inner.source {
            return Ok(false);
        }
        let groups = self.compose_raw(inner, limits)?;
        let shape = &inner.source;
        let zero = Polynomial::zero(shape.clone());
        for (b, comps) in groups.iter().enumerate() {
            let range = shape.block_range(b);
            for (i, ci) in comps.iter().enumerate() {
                for (j, cj) in comps.iter().enumerate().skip(i + 1) {
                    let xi = Monomial::variable(shape.num_coords(), range.start + i);
                    let xj = Monomial::variable(shape.num_coords(), range.start + j);
                    let lhs = ci.mul_term(&xj, &BigInt::from(1))?;
                    let rhs = cj.mul_term(&xi, &BigInt::from(1))?;
                    if lhs.sub(&rhs)? != zero {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Projective equality: same shapes and all pairwise cross products
    /// `f_i·g_j − f_j·g_i` vanish within each target block.
    pub fn equal(&self, other: &RationalMap, limits: &Limits) -> Result<bool, MapError> {
        if self.source != other.source || self.target != other.target {
            return Ok(false);
        }
        for (ga, gb) in self.groups.iter().zip(&other.groups) {
            for i in 0..ga.len() {
                for j in (i + 1)..ga.len() {
                    let lhs = ga[i].mul(&gb[j], limits)?;
                    let rhs = ga[j].mul(&gb[i], limits)?;
                    if lhs.sub(&rhs)? != Polynomial::zero(self.source.clone()) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Product map on the concatenated shapes: `self` acting on the first
    /// blocks, `other` on the rest.
    pub fn product(&self, other: &RationalMap) -> Result<RationalMap, MapError> {
        let source = self.source.concat(&other.source);
        let target = self.target.concat(&other.target);
        let mut groups = Vec::with_capacity(self.groups.len() + other.groups.len());
        for g in &self.groups {
            groups.push(
                g.iter()
                    .map(|c| c.embed(&source, 0))
                    .collect::<Result<Vec<_>, _>>()?,
            );
        }
        let off = self.source.num_blocks();
        for g in &other.groups {
            groups.push(
                g.iter()
                    .map(|c| c.embed(&source, off))
                    .collect::<Result<Vec<_>, _>>()?,
            );
        }
        Ok(RationalMap {
            source,
            target,
            groups,
        })
    }

    /// Evaluate at an integer point (one coordinate tuple per source block);
    /// returns one integer tuple per target block, with common integer
    /// factors of each tuple removed.
    pub fn evaluate(&self, point: &[Vec<BigInt>]) -> Result<Vec<Vec<BigInt>>, MapError> {
        if point.len() != self.source.num_blocks() {
            return Err(MapError::ShapeMismatch);
        }
        let flat: Vec<BigInt> = point.iter().flatten().cloned().collect();
        if flat.len() != self.source.num_coords() {
            return Err(MapError::ShapeMismatch);
        }
        let mut out = Vec::with_capacity(self.groups.len());
        for g in &self.groups {
            let mut vals = Vec::with_capacity(g.len());
            for c in g {
                vals.push(c.eval_bigint(&flat)?);
            }
            let mut content = BigInt::zero();
            for v in &vals {
                content = content.gcd(v);
            }
            if !content.is_zero() && !content.is_one() {
                for v in vals.iter_mut() {
                    *v = &*v / &content;
                }
            }
            out.push(vals);
        }
        Ok(out)
    }
}

impl std::fmt::Display for RationalMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, g) in self.groups.iter().enumerate() {
            if i > 0 {
                write!(f, " × ")?;
            }
            write!(f, "[")?;
            for (j, c) in g.iter().enumerate() {
                if j > 0 {
                    write!(f, " : ")?;
                }
                write!(f, "{c}")?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_poly;

    const L: Limits = Limits::DESK;

    fn shape(blocks: &[usize]) -> BlockShape {
        BlockShape::new(blocks.to_vec()).unwrap()
    }

    fn map1(blocks: usize, comps: &[&str]) -> RationalMap {
        let s = shape(&[blocks]);
        let group = comps.iter().map(|c| parse_poly(&s, c).unwrap()).collect();
        RationalMap::new(s.clone(), s, vec![group], &L).unwrap()
    }

    /// The standard Cremona involution of `P^n` (degree-`n` monomial map).
    fn cremona_involution(n: usize) -> RationalMap {
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
    fn normalize_strips_monomial_content() {
        let m = map1(3, &["x0*x1", "x0*x2", "x0^2"]);
        assert_eq!(m, map1(3, &["x1", "x2", "x0"]));
        assert_eq!(m.scalar_degree(), Some(1));
    }

    #[test]
    fn normalize_keeps_reduced_involution() {
        let m = map1(3, &["x1*x2", "x0*x2", "x0*x1"]);
        assert_eq!(m.scalar_degree(), Some(2));
        assert_eq!(m, cremona_involution(2));
    }

    #[test]
    fn normalize_strips_integer_content() {
        let m = map1(3, &["2*x0", "2*x1", "2*x2"]);
        assert_eq!(m, RationalMap::identity(&shape(&[3])));
    }

    #[test]
    fn normalize_rejects_zero_group() {
        let s = shape(&[2]);
        let z = Polynomial::zero(s.clone());
        let r = RationalMap::new(s.clone(), s, vec![vec![z.clone(), z]], &L);
        assert!(matches!(r, Err(MapError::ZeroGroup { group: 0 })));
    }

    #[test]
    fn involution_composes_to_identity() {
        for n in 2..=3 {
            let c = cremona_involution(n);
            let sq = c.compose(&c, &L).unwrap();
            assert_eq!(sq, RationalMap::identity(&shape(&[n + 1])));
        }
    }

    #[test]
    fn equality_is_projective() {
        let a = map1(2, &["x0", "x1"]);
        let b = map1(2, &["2*x0", "2*x1"]);
        let c = map1(2, &["x1", "x0"]);
        assert!(a.equal(&b, &L).unwrap());
        assert!(!a.equal(&c, &L).unwrap());
    }

    #[test]
    fn product_concatenates_groups() {
        let c = cremona_involution(2);
        let id1 = RationalMap::identity(&shape(&[2]));
        let prod = c.product(&id1).unwrap();
        assert_eq!(prod.source(), &shape(&[3, 2]));
        assert_eq!(prod.group_degrees().unwrap(), vec![vec![2, 0], vec![0, 1]]);
    }

    #[test]
    fn evaluation_clears_common_integer_factor() {
        let m = map1(2, &["2*x0", "2*x1"]);
        // already reduced to [x0 : x1]
        let v = m.evaluate(&[vec![BigInt::from(3), BigInt::from(6)]]).unwrap();
        assert_eq!(v, vec![vec![BigInt::from(1), BigInt::from(2)]]);
    }

    #[test]
    fn compose_collapse_detected() {
        // The constant map to [1 : 0 : 0] lands inside the indeterminacy
        // locus of the standard involution, so the composition collapses.
        let s = shape(&[3]);
        let z = Polynomial::zero(s.clone());
        let g = RationalMap::new(
            s.clone(),
            s.clone(),
            vec![vec![parse_poly(&s, "x0^2").unwrap(), z.clone(), z]],
            &L,
        )
        .unwrap();
        let f = cremona_involution(2);
        assert!(matches!(
            f.compose(&g, &L),
            Err(MapError::ComposeCollapse { .. })
        ));
    }
}
