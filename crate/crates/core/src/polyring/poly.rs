//! The sparse polynomial type and its ring operations.

use super::{BlockShape, Monomial, PolyError};
use crate::limits::Limits;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;
use std::fmt;

/// A multihomogeneous polynomial with integer coefficients.
///
/// Invariants:
/// * no stored zero coefficient;
/// * terms are kept in canonical order (graded-lex per block, leading first);
/// * every term has the same per-block degree vector, the *multidegree*;
/// * the zero polynomial has no terms and no multidegree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    shape: BlockShape,
    multidegree: Option<Vec<u32>>,
    terms: Vec<(Monomial, BigInt)>,
}

impl Polynomial {
    pub fn zero(shape: BlockShape) -> Self {
        Polynomial {
            shape,
            multidegree: None,
            terms: Vec::new(),
        }
    }

    pub fn one(shape: BlockShape) -> Self {
        Polynomial::constant(shape, BigInt::one())
    }

    pub fn constant(shape: BlockShape, c: BigInt) -> Self {
        if c.is_zero() {
            return Polynomial::zero(shape);
        }
        let n = shape.num_coords();
        let k = shape.num_blocks();
        Polynomial {
            shape,
            multidegree: Some(vec![0; k]),
            terms: vec![(Monomial::one(n), c)],
        }
    }

    /// The coordinate variable `coord` (flat index) as a polynomial.
    pub fn variable(shape: BlockShape, coord: usize) -> Self {
        let n = shape.num_coords();
        let block = shape.block_of(coord);
        let mut deg = vec![0; shape.num_blocks()];
        deg[block] = 1;
        Polynomial {
            multidegree: Some(deg),
            terms: vec![(Monomial::variable(n, coord), BigInt::one())],
            shape,
        }
    }

    /// A single term `c · m`. Errors on a zero coefficient only through the
    /// zero polynomial convention (a zero `c` yields zero).
    pub fn from_monomial(shape: BlockShape, m: Monomial, c: BigInt) -> Result<Self, PolyError> {
        Polynomial::from_terms(shape, vec![(m, c)])
    }

    /// Build from raw terms: combines duplicates, strips zeros, sorts into
    /// canonical order and checks multihomogeneity.
    pub fn from_terms(
        shape: BlockShape,
        terms: Vec<(Monomial, BigInt)>,
    ) -> Result<Self, PolyError> {
        let n = shape.num_coords();
        let mut acc: HashMap<Monomial, BigInt> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            if m.len() != n {
                return Err(PolyError::ShapeMismatch);
            }
            if c.is_zero() {
                continue;
            }
            match acc.entry(m) {
                std::collections::hash_map::Entry::Occupied(mut e) => {
                    *e.get_mut() += c;
                    if e.get().is_zero() {
                        e.remove();
                    }
                }
                std::collections::hash_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
            }
        }
        Polynomial::from_map(shape, acc)
    }

    /// Internal constructor from an accumulator map; validates homogeneity.
    pub(crate) fn from_map(
        shape: BlockShape,
        acc: HashMap<Monomial, BigInt>,
    ) -> Result<Self, PolyError> {
        let mut terms: Vec<(Monomial, BigInt)> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if terms.is_empty() {
            return Ok(Polynomial::zero(shape));
        }
        terms.sort_unstable_by(|(a, _), (b, _)| b.cmp_grlex(a, &shape));
        let deg = terms[0].0.multidegree(&shape);
        for (m, _) in &terms[1..] {
            if m.multidegree(&shape) != deg {
                return Err(PolyError::NotMultihomogeneous);
            }
        }
        Ok(Polynomial {
            shape,
            multidegree: Some(deg),
            terms,
        })
    }

    pub fn shape(&self) -> &BlockShape {
        &self.shape
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.is_zero() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical order, leading term first.
    pub fn terms(&self) -> &[(Monomial, BigInt)] {
        &self.terms
    }

    /// Leading term (first in canonical order). `None` for zero.
    pub fn leading(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    /// Per-block degree vector. Errors on the zero polynomial, whose
    /// multidegree is undefined.
    pub fn multidegree(&self) -> Result<&[u32], PolyError> {
        self.multidegree
            .as_deref()
            .ok_or(PolyError::ZeroPolynomial)
    }

    /// Total degree summed over blocks. Errors on zero.
    pub fn total_degree(&self) -> Result<u64, PolyError> {
        Ok(self.multidegree()?.iter().map(|&d| d as u64).sum())
    }

    /// Exact check of the stored multidegree against every term. Used by
    /// tests and deserialization; construction keeps it true.
    pub fn validate(&self) -> Result<(), PolyError> {
        match (&self.multidegree, self.terms.is_empty()) {
            (None, true) => Ok(()),
            (None, false) | (Some(_), true) => Err(PolyError::NotMultihomogeneous),
            (Some(deg), false) => {
                for (m, c) in &self.terms {
                    if c.is_zero() || m.len() != self.shape.num_coords() {
                        return Err(PolyError::NotMultihomogeneous);
                    }
                    if &m.multidegree(&self.shape) != deg {
                        return Err(PolyError::NotMultihomogeneous);
                    }
                }
                for w in self.terms.windows(2) {
                    if w[0].0.cmp_grlex(&w[1].0, &self.shape) != std::cmp::Ordering::Greater {
                        return Err(PolyError::NotMultihomogeneous);
                    }
                }
                Ok(())
            }
        }
    }

    fn check_same_shape(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.shape != other.shape {
            return Err(PolyError::ShapeMismatch);
        }
        Ok(())
    }

    /// Termwise sum. Requires equal multidegrees unless one operand is zero.
    pub fn add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_same_shape(other)?;
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        let (da, db) = (self.multidegree()?, other.multidegree()?);
        if da != db {
            return Err(PolyError::MultidegreeMismatch {
                left: da.to_vec(),
                right: db.to_vec(),
            });
        }
        // Merge of two canonically sorted term lists.
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match ma.cmp_grlex(mb, &self.shape) {
                std::cmp::Ordering::Greater => {
                    terms.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    terms.push((mb.clone(), cb.clone()));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = ca + cb;
                    if !c.is_zero() {
                        terms.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend_from_slice(&self.terms[i..]);
        terms.extend(other.terms[j..].iter().cloned());
        if terms.is_empty() {
            return Ok(Polynomial::zero(self.shape.clone()));
        }
        Ok(Polynomial {
            shape: self.shape.clone(),
            multidegree: self.multidegree.clone(),
            terms,
        })
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            shape: self.shape.clone(),
            multidegree: self.multidegree.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.shape.clone());
        }
        Polynomial {
            shape: self.shape.clone(),
            multidegree: self.multidegree.clone(),
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    /// Multiply by a single term `c · m` (order preserved, no re-sort).
    pub fn mul_term(&self, m: &Monomial, c: &BigInt) -> Result<Polynomial, PolyError> {
        if c.is_zero() || self.is_zero() {
            return Ok(Polynomial::zero(self.shape.clone()));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (tm, tc) in &self.terms {
            terms.push((tm.checked_mul(m)?, tc * c));
        }
        let deg = {
            let d = self.multidegree()?;
            let md = m.multidegree(&self.shape);
            d.iter().zip(md).map(|(&a, b)| a + b).collect()
        };
        Ok(Polynomial {
            shape: self.shape.clone(),
            multidegree: Some(deg),
            terms,
        })
    }

    /// Exact product, guarded by `limits`.
    pub fn mul(&self, other: &Polynomial, limits: &Limits) -> Result<Polynomial, PolyError> {
        self.check_same_shape(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(self.shape.clone()));
        }
        let deg: Vec<u32> = self
            .multidegree()?
            .iter()
            .zip(other.multidegree()?)
            .map(|(&a, &b)| a.checked_add(b).ok_or(PolyError::ExponentOverflow))
            .collect::<Result<_, _>>()?;
        let total: u64 = deg.iter().map(|&d| d as u64).sum();
        if total > limits.max_degree as u64 {
            return Err(PolyError::DegreeLimit {
                limit: limits.max_degree,
                attempted: total,
            });
        }
        // Single-term fast path.
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].0, &other.terms[0].1);
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        let (small, big) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        if let Some(bits) = pack_bits(self.shape.num_coords(), total) {
            return mul_packed(small, big, deg, bits, limits);
        }
        let mut acc: HashMap<Monomial, BigInt> =
            HashMap::with_capacity(big.terms.len().saturating_mul(2));
        for (ms, cs) in &small.terms {
            for (mb, cb) in &big.terms {
                let m = ms.checked_mul(mb)?;
                let c = cs * cb;
                match acc.entry(m) {
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        *e.get_mut() += c;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                }
            }
            if acc.len() > limits.max_terms {
                return Err(PolyError::TermLimit {
                    limit: limits.max_terms,
                });
            }
        }
        let mut terms: Vec<(Monomial, BigInt)> = acc.into_iter().collect();
        if terms.is_empty() {
            return Ok(Polynomial::zero(self.shape.clone()));
        }
        terms.sort_unstable_by(|(a, _), (b, _)| b.cmp_grlex(a, &self.shape));
        Ok(Polynomial {
            shape: self.shape.clone(),
            multidegree: Some(deg),
            terms,
        })
    }

    pub fn pow(&self, k: u32, limits: &Limits) -> Result<Polynomial, PolyError> {
        if k == 0 {
            return Ok(Polynomial::one(self.shape.clone()));
        }
        // Single-term fast path: exponent scaling.
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return Polynomial::from_monomial(self.shape.clone(), m.pow(k)?, c.pow(k));
        }
        let mut result: Option<Polynomial> = None;
        let mut base = self.clone();
        let mut e = k;
        loop {
            if e & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => r.mul(&base, limits)?,
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = base.mul(&base, limits)?;
        }
        Ok(result.expect("k > 0"))
    }

    /// Signed integer content: gcd of all coefficients, carrying the sign of
    /// the leading coefficient. Errors on zero.
    pub fn content(&self) -> Result<BigInt, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        if self.terms[0].1.is_negative() {
            g = -g;
        }
        Ok(g)
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Result<Monomial, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let mut m = self.terms[0].0.clone();
        for (t, _) in &self.terms[1..] {
            if m.is_one() {
                break;
            }
            m = m.min(t);
        }
        Ok(m)
    }

    /// Split `p = c · m · q` with `c` the signed integer content, `m` the
    /// monomial content and `q` primitive (integer content 1, monomial
    /// content 1, positive leading coefficient).
    pub fn content_and_primitive(&self) -> Result<(BigInt, Monomial, Polynomial), PolyError> {
        let c = self.content()?;
        let m = self.monomial_content()?;
        let deg: Vec<u32> = self
            .multidegree()?
            .iter()
            .zip(m.multidegree(&self.shape))
            .map(|(&d, dm)| d - dm)
            .collect();
        let terms = self
            .terms
            .iter()
            .map(|(tm, tc)| {
                let q = tm.checked_div(&m).expect("monomial content divides");
                (q, tc / &c)
            })
            .collect();
        Ok((
            c,
            m,
            Polynomial {
                shape: self.shape.clone(),
                multidegree: Some(deg),
                terms,
            },
        ))
    }

    /// Primitive part only (drops content and sign).
    pub fn primitive_part(&self) -> Result<Polynomial, PolyError> {
        Ok(self.content_and_primitive()?.2)
    }

    /// Exact division: `Some(q)` with `self = q · d`, or `None` when `d` does
    /// not divide `self`. Division by zero is `None`.
    pub fn divide_exact(&self, d: &Polynomial, limits: &Limits) -> Option<Polynomial> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Polynomial::zero(self.shape.clone()));
        }
        if self.shape != d.shape {
            return None;
        }
        // Degree screen.
        let qdeg: Vec<u32> = {
            let sd = self.multidegree.as_ref()?;
            let dd = d.multidegree.as_ref()?;
            let mut q = Vec::with_capacity(sd.len());
            for (&a, &b) in sd.iter().zip(dd) {
                q.push(a.checked_sub(b)?);
            }
            q
        };
        let total: u64 = self
            .multidegree
            .as_ref()?
            .iter()
            .map(|&d| d as u64)
            .sum();
        if let Some(bits) = pack_bits_guarded(self.shape.num_coords(), total) {
            return self.divide_packed(d, qdeg, bits, limits);
        }
        let (dm, dc) = (&d.terms[0].0, &d.terms[0].1);
        let mut rem = self.clone();
        let mut quot: Vec<(Monomial, BigInt)> = Vec::new();
        while !rem.is_zero() {
            let (lm, lc) = {
                let (m, c) = rem.leading().expect("nonzero");
                (m.clone(), c.clone())
            };
            let qm = lm.checked_div(dm)?;
            let (qc, r) = lc.div_rem(dc);
            if !r.is_zero() {
                return None;
            }
            // rem -= (qc · qm) · d
            let t = d.mul_term(&qm, &qc).ok()?;
            rem = rem.sub(&t).ok()?;
            quot.push((qm, qc));
            if quot.len() > limits.max_terms {
                return None;
            }
        }
        Polynomial::from_terms(self.shape.clone(), quot).ok()
    }

    /// Ordered-map long division with packed exponent keys: each quotient
    /// step touches only the divisor's support instead of rebuilding the
    /// whole remainder.
    fn divide_packed(
        &self,
        d: &Polynomial,
        qdeg: Vec<u32>,
        bits: u32,
        limits: &Limits,
    ) -> Option<Polynomial> {
        let n = self.shape.num_coords();
        // Guard bit at the top of each field detects per-field borrow.
        let mut guard: u128 = 0;
        for _ in 0..n {
            guard = (guard << bits) | (1u128 << (bits - 1));
        }
        let mut rem: std::collections::BTreeMap<u128, BigInt> = self
            .terms
            .iter()
            .map(|(m, c)| (pack_monomial(m, bits), c.clone()))
            .collect();
        let dpacked: Vec<(u128, BigInt)> = d
            .terms
            .iter()
            .map(|(m, c)| (pack_monomial(m, bits), c.clone()))
            .collect();
        let (dk, dc) = (&dpacked[0].0, &dpacked[0].1);
        let mut quot: Vec<(u128, BigInt)> = Vec::new();
        while let Some((&rk, _)) = rem.last_key_value() {
            let diff = (rk | guard).wrapping_sub(*dk);
            if diff & guard != guard {
                return None;
            }
            let qk = diff ^ guard;
            let rc = rem.remove(&rk).expect("present");
            let (qc, r) = rc.div_rem(dc);
            if !r.is_zero() {
                return None;
            }
            for (dki, dci) in &dpacked[1..] {
                let key = qk + dki;
                match rem.entry(key) {
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() -= &qc * dci;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(-(&qc * dci));
                    }
                }
            }
            quot.push((qk, qc));
            if quot.len() > limits.max_terms {
                return None;
            }
        }
        let terms: Vec<(Monomial, BigInt)> = quot
            .into_iter()
            .map(|(k, c)| (unpack_monomial(k, bits, n), c))
            .collect();
        debug_assert!(terms
            .windows(2)
            .all(|w| w[0].0.cmp_grlex(&w[1].0, &self.shape) == std::cmp::Ordering::Greater));
        Some(Polynomial {
            shape: self.shape.clone(),
            multidegree: Some(qdeg),
            terms,
        })
    }

    /// Evaluate at integer coordinates (one value per flat coordinate).
    pub fn eval_bigint(&self, point: &[BigInt]) -> Result<BigInt, PolyError> {
        if point.len() != self.shape.num_coords() {
            return Err(PolyError::WrongImageCount {
                expected: self.shape.num_coords(),
                got: point.len(),
            });
        }
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    v *= point[i].pow(e);
                }
            }
            acc += v;
        }
        Ok(acc)
    }

    /// Exact substitution: replace coordinate `i` by `images[i]` everywhere.
    ///
    /// All images must share one shape, and within each source block the
    /// nonzero images must share one multidegree (so the result is again
    /// multihomogeneous). The result may be zero.
    pub fn substitute(
        &self,
        images: &[Polynomial],
        limits: &Limits,
    ) -> Result<Polynomial, PolyError> {
        let n = self.shape.num_coords();
        if images.len() != n {
            return Err(PolyError::WrongImageCount {
                expected: n,
                got: images.len(),
            });
        }
        let target = images
            .first()
            .map(|p| p.shape().clone())
            .ok_or(PolyError::BadShape)?;
        for im in images {
            if im.shape() != &target {
                return Err(PolyError::ShapeMismatch);
            }
        }
        // Per-source-block image multidegree (from any nonzero image).
        let mut block_deg: Vec<Option<Vec<u32>>> = vec![None; self.shape.num_blocks()];
        for b in 0..self.shape.num_blocks() {
            for i in self.shape.block_range(b) {
                if images[i].is_zero() {
                    continue;
                }
                let d = images[i].multidegree()?.to_vec();
                match &block_deg[b] {
                    None => block_deg[b] = Some(d),
                    Some(prev) => {
                        if prev != &d {
                            return Err(PolyError::IncoherentImages { block: b });
                        }
                    }
                }
            }
        }
        if self.is_zero() {
            return Ok(Polynomial::zero(target));
        }
        // Result degree screen: sum over blocks of (source block degree) ×
        // (image multidegree of that block).
        let sdeg = self.multidegree()?;
        let mut total: u64 = 0;
        for (b, d) in sdeg.iter().enumerate() {
            if *d == 0 {
                continue;
            }
            if let Some(e) = &block_deg[b] {
                total += *d as u64 * e.iter().map(|&x| x as u64).sum::<u64>();
            }
        }
        if total > limits.max_degree as u64 {
            return Err(PolyError::DegreeLimit {
                limit: limits.max_degree,
                attempted: total,
            });
        }

        let mut cache = PowerCache::new(images.len());
        subst_horner(&self.terms, images, &target, &mut cache, limits)
    }

    /// Re-embed into a larger shape whose blocks `offset..offset+k` are this
    /// polynomial's blocks; all other coordinates get exponent zero.
    pub fn embed(&self, target: &BlockShape, block_offset: usize) -> Result<Polynomial, PolyError> {
        let own = self.shape.blocks();
        if target.blocks()[block_offset..block_offset + own.len()] != *own {
            return Err(PolyError::ShapeMismatch);
        }
        let coord_offset: usize = target.blocks()[..block_offset].iter().sum();
        let n = target.num_coords();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; n];
            exps[coord_offset..coord_offset + m.len()].copy_from_slice(m.exps());
            terms.push((Monomial::new(exps), c.clone()));
        }
        let deg = self.multidegree.as_ref().map(|d| {
            let mut v = vec![0u32; target.num_blocks()];
            v[block_offset..block_offset + d.len()].copy_from_slice(d);
            v
        });
        Ok(Polynomial {
            shape: target.clone(),
            multidegree: deg,
            terms,
        })
    }

    /// Degree in a single flat coordinate.
    pub fn degree_in(&self, coord: usize) -> u32 {
        self.terms
            .iter()
            .map(|(m, _)| m.exps()[coord])
            .max()
            .unwrap_or(0)
    }

    /// Flat coordinates that actually occur.
    pub fn support_vars(&self) -> Vec<usize> {
        let n = self.shape.num_coords();
        let mut seen = vec![false; n];
        for (m, _) in &self.terms {
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    seen[i] = true;
                }
            }
        }
        (0..n).filter(|&i| seen[i]).collect()
    }
}

/// Bits per exponent field when the whole monomial packs into a `u128`.
fn pack_bits(num_coords: usize, total_degree: u64) -> Option<u32> {
    let bits = 64 - total_degree.leading_zeros().min(63);
    let bits = bits.max(1);
    if num_coords as u32 * bits <= 128 {
        Some(bits)
    } else {
        None
    }
}

/// Like [`pack_bits`] with one extra guard bit per field (for subtraction).
fn pack_bits_guarded(num_coords: usize, total_degree: u64) -> Option<u32> {
    let bits = (64 - total_degree.leading_zeros().min(63)).max(1) + 1;
    if num_coords as u32 * bits <= 128 {
        Some(bits)
    } else {
        None
    }
}

fn pack_monomial(m: &Monomial, bits: u32) -> u128 {
    let mut key = 0u128;
    for &e in m.exps() {
        key = (key << bits) | e as u128;
    }
    key
}

fn unpack_monomial(mut key: u128, bits: u32, n: usize) -> Monomial {
    let mask = (1u128 << bits) - 1;
    let mut exps = vec![0u32; n];
    for slot in exps.iter_mut().rev() {
        *slot = (key & mask) as u32;
        key >>= bits;
    }
    Monomial::new(exps)
}

/// Dense-friendly multiplication: exponent vectors packed into u128 keys.
/// Coordinate 0 sits in the high bits, so for equal-multidegree terms the
/// key order matches the canonical graded-lex order.
fn mul_packed(
    small: &Polynomial,
    big: &Polynomial,
    deg: Vec<u32>,
    bits: u32,
    limits: &Limits,
) -> Result<Polynomial, PolyError> {
    let n = small.shape.num_coords();
    let small_keys: Vec<u128> = small
        .terms
        .iter()
        .map(|(m, _)| pack_monomial(m, bits))
        .collect();
    let big_keys: Vec<u128> = big
        .terms
        .iter()
        .map(|(m, _)| pack_monomial(m, bits))
        .collect();
    let mut acc: HashMap<u128, BigInt> =
        HashMap::with_capacity(big.terms.len().saturating_mul(2));
    for (ks, (_, cs)) in small_keys.iter().zip(&small.terms) {
        for (kb, (_, cb)) in big_keys.iter().zip(&big.terms) {
            // Fields cannot carry: each exponent sum is bounded by the total
            // degree used to size the fields.
            let key = ks + kb;
            let c = cs * cb;
            match acc.entry(key) {
                std::collections::hash_map::Entry::Occupied(mut e) => {
                    *e.get_mut() += c;
                    if e.get().is_zero() {
                        e.remove();
                    }
                }
                std::collections::hash_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
            }
        }
        if acc.len() > limits.max_terms {
            return Err(PolyError::TermLimit {
                limit: limits.max_terms,
            });
        }
    }
    if acc.is_empty() {
        return Ok(Polynomial::zero(small.shape.clone()));
    }
    let mut packed: Vec<(u128, BigInt)> = acc.into_iter().collect();
    packed.sort_unstable_by(|(a, _), (b, _)| b.cmp(a));
    let terms = packed
        .into_iter()
        .map(|(k, c)| (unpack_monomial(k, bits, n), c))
        .collect();
    Ok(Polynomial {
        shape: small.shape.clone(),
        multidegree: Some(deg),
        terms,
    })
}

/// Recursive Horner evaluation of a term list at the images: pick a pivot
/// variable, split the terms by its exponent, evaluate the coefficient
/// slices recursively and fold from the highest exponent down, multiplying
/// by cached powers of the pivot image across the gaps.
fn subst_horner(
    terms: &[(Monomial, BigInt)],
    images: &[Polynomial],
    target: &BlockShape,
    cache: &mut PowerCache,
    limits: &Limits,
) -> Result<Polynomial, PolyError> {
    if terms.is_empty() {
        return Ok(Polynomial::zero(target.clone()));
    }
    let n = terms[0].0.len();
    let mut pivot = None;
    'outer: for v in 0..n {
        for (m, _) in terms {
            if m.exps()[v] > 0 {
                pivot = Some(v);
                break 'outer;
            }
        }
    }
    let Some(v) = pivot else {
        let mut c = BigInt::zero();
        for (_, k) in terms {
            c += k;
        }
        return Ok(Polynomial::constant(target.clone(), c));
    };
    let mut slices: std::collections::BTreeMap<u32, Vec<(Monomial, BigInt)>> =
        std::collections::BTreeMap::new();
    for (m, c) in terms {
        let e = m.exps()[v];
        let mut exps = m.exps().to_vec();
        exps[v] = 0;
        slices
            .entry(e)
            .or_default()
            .push((Monomial::new(exps), c.clone()));
    }
    if images[v].is_zero() {
        let base = slices.remove(&0).unwrap_or_default();
        return subst_horner(&base, images, target, cache, limits);
    }
    let mut iter = slices.into_iter().rev();
    let (top_e, top_terms) = iter.next().expect("nonempty");
    let mut result = subst_horner(&top_terms, images, target, cache, limits)?;
    let mut cur_e = top_e;
    for (e, slice) in iter {
        let gpow = cache.power(images, v, cur_e - e, limits)?;
        result = result.mul(&gpow, limits)?;
        let part = subst_horner(&slice, images, target, cache, limits)?;
        result = result.add(&part)?;
        cur_e = e;
    }
    if cur_e > 0 {
        let gpow = cache.power(images, v, cur_e, limits)?;
        result = result.mul(&gpow, limits)?;
    }
    Ok(result)
}

/// Lazy per-image power table used by substitution.
struct PowerCache {
    tables: Vec<HashMap<u32, std::rc::Rc<Polynomial>>>,
}

impl PowerCache {
    fn new(n: usize) -> Self {
        PowerCache {
            tables: (0..n).map(|_| HashMap::new()).collect(),
        }
    }

    fn power(
        &mut self,
        images: &[Polynomial],
        i: usize,
        e: u32,
        limits: &Limits,
    ) -> Result<std::rc::Rc<Polynomial>, PolyError> {
        self.build(images, i, e, limits)?;
        Ok(self.tables[i][&e].clone())
    }

    fn build(
        &mut self,
        images: &[Polynomial],
        i: usize,
        e: u32,
        limits: &Limits,
    ) -> Result<(), PolyError> {
        if self.tables[i].contains_key(&e) {
            return Ok(());
        }
        let p = if e == 1 {
            images[i].clone()
        } else if images[i].is_monomial() || images[i].is_zero() {
            images[i].pow(e, limits)?
        } else {
            self.build(images, i, e / 2, limits)?;
            let half = self.tables[i][&(e / 2)].clone();
            let sq = half.mul(&half, limits)?;
            if e & 1 == 1 {
                sq.mul(&images[i], limits)?
            } else {
                sq
            }
        };
        self.tables[i].insert(e, std::rc::Rc::new(p));
        Ok(())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let letters = ["x", "y", "z", "w", "u", "v", "s", "t"];
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut printed = false;
            if !abs.is_one() || m.is_one() {
                write!(f, "{abs}")?;
                printed = true;
            }
            for b in 0..self.shape.num_blocks() {
                let letter = letters.get(b).copied().unwrap_or("v");
                for (k, coord) in self.shape.block_range(b).enumerate() {
                    let e = m.exps()[coord];
                    if e == 0 {
                        continue;
                    }
                    if printed {
                        write!(f, "*")?;
                    }
                    write!(f, "{letter}{k}")?;
                    if e > 1 {
                        write!(f, "^{e}")?;
                    }
                    printed = true;
                }
            }
        }
        Ok(())
    }
}
