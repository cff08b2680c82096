//! Multivariate GCD over the integers.
//!
//! Strategy, in order of increasing cost:
//!
//! 1. integer content and monomial content (always);
//! 2. trial division by caller-supplied candidate factors — composition knows
//!    its likely common factors, so this catches the realistic cancellations
//!    cheaply and exactly;
//! 3. a sound coprimality certificate: evaluate all variables but one at
//!    random points modulo a 31-bit prime and run the univariate Euclidean
//!    algorithm. When the image of an input keeps its degree in the kept
//!    variable, a constant modular gcd proves the true gcd is free of that
//!    variable. All variables certified free ⇒ gcd = 1.
//! 4. recursive primitive pseudo-remainder sequence over a main variable
//!    (the variable of lowest maximal degree) — the exact fallback.
//!
//! Steps 1–3 never return a wrong answer; step 3 can only fail toward the
//! expensive-but-exact step 4.

use super::{Monomial, PolyError, Polynomial};
use crate::limits::Limits;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

const PROBE_PRIMES: [u64; 5] = [
    2_147_483_647,
    2_147_483_629,
    2_147_483_587,
    2_147_483_579,
    2_147_483_563,
];
const PROBE_ATTEMPTS: usize = 6;

/// Greatest common divisor, positive leading coefficient, including the
/// integer-content and monomial-content parts. `gcd(p, 0)` is `p` normalized.
pub fn gcd(p: &Polynomial, q: &Polynomial, limits: &Limits) -> Result<Polynomial, PolyError> {
    if p.shape() != q.shape() {
        return Err(PolyError::ShapeMismatch);
    }
    if p.is_zero() && q.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    if p.is_zero() {
        return normalize_sign(q.clone());
    }
    if q.is_zero() {
        return normalize_sign(p.clone());
    }
    let (cp, mp, pp) = p.content_and_primitive()?;
    let (cq, mq, qq) = q.content_and_primitive()?;
    let c = cp.abs().gcd(&cq.abs());
    let m = mp.min(&mq);
    let core = gcd_primitive(&pp, &qq, limits)?;
    core.mul_term(&m, &c)
}

/// GCD of a whole list (at least one entry nonzero).
///
/// The whole primitive list is probed for coprimality first: a certified
/// constant gcd skips the pairwise fold, whose intermediate pairwise gcds
/// could be large even when the list gcd is 1.
pub fn gcd_many(
    polys: &[Polynomial],
    limits: &Limits,
) -> Result<Polynomial, PolyError> {
    let mut nonzero: Vec<&Polynomial> = polys.iter().filter(|p| !p.is_zero()).collect();
    if nonzero.is_empty() {
        return Err(PolyError::ZeroPolynomial);
    }
    if nonzero.len() == 1 {
        return normalize_sign(nonzero[0].clone());
    }
    nonzero.sort_by_key(|p| p.num_terms());

    let mut int_gcd = BigInt::zero();
    let mut mono_gcd: Option<Monomial> = None;
    let mut prims = Vec::with_capacity(nonzero.len());
    for p in &nonzero {
        let (c, m, q) = p.content_and_primitive()?;
        int_gcd = int_gcd.gcd(&c.abs());
        mono_gcd = Some(match mono_gcd {
            None => m,
            Some(g) => g.min(&m),
        });
        prims.push(q);
    }
    let mono_gcd = mono_gcd.expect("nonempty");

    let core = if prims.iter().any(|p| p.is_constant()) || probe_coprime_many(&prims) {
        Polynomial::one(nonzero[0].shape().clone())
    } else {
        let mut g = prims[0].clone();
        for p in &prims[1..] {
            if g.is_constant() {
                break;
            }
            g = gcd(&g, p, limits)?.primitive_part()?;
        }
        g
    };
    normalize_sign(core.mul_term(&mono_gcd, &int_gcd)?)
}

/// Divide a common factor out of a component list.
///
/// Extracts integer and monomial content, trial-divides by the candidate
/// factors while they divide every nonzero component, and finishes with the
/// residual gcd of the list. Returns the reduced components; at least one
/// input must be nonzero.
pub fn reduce_by_gcd(
    comps: &[Polynomial],
    candidates: &[Polynomial],
    limits: &Limits,
) -> Result<Vec<Polynomial>, PolyError> {
    let mut comps: Vec<Polynomial> = comps.to_vec();
    if comps.iter().all(|c| c.is_zero()) {
        return Err(PolyError::ZeroPolynomial);
    }

    // Integer + monomial content of the whole list.
    let mut int_content: Option<BigInt> = None;
    let mut mono_content: Option<Monomial> = None;
    for c in comps.iter().filter(|c| !c.is_zero()) {
        let ci = c.content()?.abs();
        int_content = Some(match int_content {
            None => ci,
            Some(g) => g.gcd(&ci),
        });
        let mi = c.monomial_content()?;
        mono_content = Some(match mono_content {
            None => mi,
            Some(g) => g.min(&mi),
        });
    }
    let ic = int_content.expect("some nonzero component");
    let mc = mono_content.expect("some nonzero component");
    if !ic.is_one() || !mc.is_one() {
        for c in comps.iter_mut() {
            if c.is_zero() {
                continue;
            }
            let stripped = c
                .terms()
                .iter()
                .map(|(m, k)| (m.checked_div(&mc).expect("content divides"), k / &ic))
                .collect();
            *c = Polynomial::from_terms(c.shape().clone(), stripped)?;
        }
    }

    // Candidate trial division, repeated while a candidate divides everything.
    let mut cands: Vec<Polynomial> = Vec::new();
    for cand in candidates {
        if cand.is_zero() || cand.shape() != comps[0].shape() {
            continue;
        }
        let prim = cand.primitive_part()?;
        if prim.is_constant() {
            continue;
        }
        if !cands.contains(&prim) {
            cands.push(prim);
        }
    }
    for cand in &cands {
        loop {
            let mut quotients = Vec::with_capacity(comps.len());
            let mut all = true;
            for c in &comps {
                if c.is_zero() {
                    quotients.push(c.clone());
                    continue;
                }
                match c.divide_exact(cand, limits) {
                    Some(q) => quotients.push(q),
                    None => {
                        all = false;
                        break;
                    }
                }
            }
            if !all {
                break;
            }
            comps = quotients;
        }
    }

    // Residual gcd of the list.
    let g = gcd_many(&comps, limits)?;
    if !g.is_constant() {
        for c in comps.iter_mut() {
            if c.is_zero() {
                continue;
            }
            *c = c
                .divide_exact(&g, limits)
                .expect("gcd divides every component");
        }
        // Dividing by the gcd may expose fresh monomial/integer content
        // hidden inside the gcd's own normalization; strip once more.
        return reduce_by_gcd(&comps, &[], limits);
    }
    Ok(comps)
}

fn normalize_sign(p: Polynomial) -> Result<Polynomial, PolyError> {
    match p.leading() {
        Some((_, c)) if c.is_negative() => Ok(p.neg()),
        _ => Ok(p),
    }
}

/// GCD of two primitive polynomials (integer content 1, monomial content 1).
fn gcd_primitive(
    p: &Polynomial,
    q: &Polynomial,
    limits: &Limits,
) -> Result<Polynomial, PolyError> {
    if p.is_constant() || q.is_constant() {
        return Ok(Polynomial::one(p.shape().clone()));
    }
    if p == q {
        return normalize_sign(p.clone());
    }
    if p == &q.neg() {
        return normalize_sign(p.clone());
    }

    // A variable present in only one operand cannot appear in the gcd:
    // replace that operand by the gcd of its coefficients in the variable.
    let mut a = p.clone();
    let mut b = q.clone();
    loop {
        let mut changed = false;
        for v in a.support_vars() {
            if b.degree_in(v) == 0 && a.degree_in(v) > 0 {
                a = coefficient_gcd(&a, v, limits)?;
                changed = true;
                break;
            }
        }
        for v in b.support_vars() {
            if a.degree_in(v) == 0 && b.degree_in(v) > 0 {
                b = coefficient_gcd(&b, v, limits)?;
                changed = true;
                break;
            }
        }
        if !changed {
            break;
        }
        if a.is_constant() || b.is_constant() {
            return Ok(Polynomial::one(p.shape().clone()));
        }
    }
    let (_, _, a) = a.content_and_primitive()?;
    let (_, _, b) = b.content_and_primitive()?;
    if a.is_constant() || b.is_constant() {
        return Ok(Polynomial::one(p.shape().clone()));
    }

    if probe_coprime(&a, &b) {
        return Ok(Polynomial::one(p.shape().clone()));
    }

    // Main variable: lowest maximal degree across the operands.
    let shared: Vec<usize> = a
        .support_vars()
        .into_iter()
        .filter(|&v| b.degree_in(v) > 0)
        .collect();
    let v = *shared
        .iter()
        .min_by_key(|&&v| a.degree_in(v).max(b.degree_in(v)))
        .expect("non-constant operands share a variable");

    let (ca, pa) = v_content_split(&a, v, limits)?;
    let (cb, pb) = v_content_split(&b, v, limits)?;
    let cg = gcd(&ca, &cb, limits)?;
    let core = prs_gcd(pa, pb, v, limits)?;
    normalize_sign(core.mul(&cg, limits)?)
}

/// Primitive PRS for `v`-primitive inputs with positive `v`-degree.
fn prs_gcd(
    a: Polynomial,
    b: Polynomial,
    v: usize,
    limits: &Limits,
) -> Result<Polynomial, PolyError> {
    let (mut f, mut g) = if a.degree_in(v) >= b.degree_in(v) {
        (a, b)
    } else {
        (b, a)
    };
    loop {
        let r = prem(&f, &g, v, limits)?;
        if r.is_zero() {
            let (_, _, prim) = g.content_and_primitive()?;
            return v_content_split(&prim, v, limits).map(|(_, pp)| pp);
        }
        if r.degree_in(v) == 0 {
            return Ok(Polynomial::one(f.shape().clone()));
        }
        let (_, rp) = v_content_split(&r, v, limits)?;
        f = g;
        g = rp;
    }
}

/// Pseudo-remainder of `f` by `g` with respect to variable `v`.
fn prem(
    f: &Polynomial,
    g: &Polynomial,
    v: usize,
    limits: &Limits,
) -> Result<Polynomial, PolyError> {
    let dg = g.degree_in(v);
    let lg = lc_in(g, v);
    let mut r = f.clone();
    while !r.is_zero() && r.degree_in(v) >= dg {
        let dr = r.degree_in(v);
        let lr = lc_in(&r, v);
        let shift = Monomial::variable(r.shape().num_coords(), v).pow(dr - dg)?;
        let t1 = r.mul(&lg, limits)?;
        let t2 = g.mul(&lr, limits)?.mul_term(&shift, &BigInt::one())?;
        r = t1.sub(&t2)?;
    }
    Ok(r)
}

/// Leading coefficient of `p` viewed as univariate in `v` (a polynomial with
/// `v` removed).
fn lc_in(p: &Polynomial, v: usize) -> Polynomial {
    let d = p.degree_in(v);
    let terms = p
        .terms()
        .iter()
        .filter(|(m, _)| m.exps()[v] == d)
        .map(|(m, c)| {
            let mut exps = m.exps().to_vec();
            exps[v] = 0;
            (Monomial::new(exps), c.clone())
        })
        .collect();
    Polynomial::from_terms(p.shape().clone(), terms).expect("homogeneous slice")
}

/// Split `p = cont · pp` with `cont` the gcd of the `v`-coefficients of `p`
/// (so `pp` is `v`-primitive).
fn v_content_split(
    p: &Polynomial,
    v: usize,
    limits: &Limits,
) -> Result<(Polynomial, Polynomial), PolyError> {
    let mut coeffs: std::collections::BTreeMap<u32, Vec<(Monomial, BigInt)>> =
        std::collections::BTreeMap::new();
    for (m, c) in p.terms() {
        let e = m.exps()[v];
        let mut exps = m.exps().to_vec();
        exps[v] = 0;
        coeffs
            .entry(e)
            .or_default()
            .push((Monomial::new(exps), c.clone()));
    }
    let mut polys: Vec<Polynomial> = Vec::with_capacity(coeffs.len());
    for (_, terms) in coeffs {
        polys.push(Polynomial::from_terms(p.shape().clone(), terms)?);
    }
    let cont = gcd_many(&polys, limits)?;
    if cont.is_constant() && cont.content()?.abs().is_one() {
        return Ok((Polynomial::one(p.shape().clone()), p.clone()));
    }
    let pp = p
        .divide_exact(&cont, limits)
        .expect("content divides the polynomial");
    Ok((cont, pp))
}

/// GCD of the `v`-coefficients of `p` (used to eliminate a variable that the
/// other operand does not contain).
fn coefficient_gcd(p: &Polynomial, v: usize, limits: &Limits) -> Result<Polynomial, PolyError> {
    Ok(v_content_split(p, v, limits)?.0)
}

// ---------------------------------------------------------------------------
// Modular coprimality certificate
// ---------------------------------------------------------------------------

/// Sound one-sided test: `true` means gcd(p, q) is certainly constant.
fn probe_coprime(p: &Polynomial, q: &Polynomial) -> bool {
    probe_coprime_many(&[p.clone(), q.clone()])
}

/// Sound one-sided test on a list: `true` means the gcd of the whole list is
/// certainly constant.
///
/// For each variable `v` in every operand's support, evaluate all other
/// variables at random residues modulo a 31-bit prime. If some operand's
/// image keeps its full `v`-degree (so the leading coefficient of any common
/// divisor cannot have vanished at the point) and the fold of modular
/// univariate gcds is constant, the true gcd has `v`-degree 0. All variables
/// certified free of the gcd ⇒ the gcd is constant.
fn probe_coprime_many(polys: &[Polynomial]) -> bool {
    if polys.len() < 2 {
        return false;
    }
    let n = polys[0].shape().num_coords();
    // Variables that could appear in the gcd: those in every support.
    let shared: Vec<usize> = (0..n)
        .filter(|&v| polys.iter().all(|p| p.degree_in(v) > 0))
        .collect();
    if shared.is_empty() {
        // A divisor only involves variables of the polynomial it divides.
        return true;
    }
    let mut rng_state: u64 = 0x9E37_79B9_7F4A_7C15;
    for &v in &shared {
        let mut certified = false;
        for attempt in 0..PROBE_ATTEMPTS {
            let prime = PROBE_PRIMES[attempt % PROBE_PRIMES.len()];
            let mut assign = vec![0u64; n];
            for a in assign.iter_mut() {
                rng_state = rng_state
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(1442695040888963407);
                *a = 1 + (rng_state >> 33) % (prime - 1);
            }
            let images: Vec<Vec<u64>> = polys
                .iter()
                .map(|p| eval_keep_var(p, v, &assign, prime))
                .collect();
            let anchored = polys
                .iter()
                .zip(&images)
                .any(|(p, im)| poly_deg(im) == Some(p.degree_in(v) as usize));
            if !anchored {
                continue;
            }
            let mut g = images[0].clone();
            for im in &images[1..] {
                if poly_deg(im).is_none() {
                    continue;
                }
                let d = gcd_degree_mod_pair(&mut g, im.clone(), prime);
                if d == 0 {
                    break;
                }
            }
            if poly_deg(&g) == Some(0) {
                certified = true;
                break;
            }
        }
        if !certified {
            return false;
        }
    }
    true
}

/// Replace `g` by gcd(g, other) over F_prime; returns its degree.
fn gcd_degree_mod_pair(g: &mut Vec<u64>, other: Vec<u64>, prime: u64) -> usize {
    let new = gcd_mod(std::mem::take(g), other, prime);
    let d = poly_deg(&new).unwrap_or(0);
    *g = new;
    d
}

/// Evaluate every variable except `v` modulo `prime`; returns coefficients
/// indexed by the exponent of `v`.
fn eval_keep_var(p: &Polynomial, v: usize, assign: &[u64], prime: u64) -> Vec<u64> {
    let dv = p.degree_in(v) as usize;
    let mut out = vec![0u64; dv + 1];
    for (m, c) in p.terms() {
        let mut val = big_mod(c, prime);
        for (i, &e) in m.exps().iter().enumerate() {
            if i == v || e == 0 {
                continue;
            }
            val = mul_mod(val, pow_mod(assign[i], e as u64, prime), prime);
        }
        let slot = m.exps()[v] as usize;
        out[slot] = (out[slot] + val) % prime;
    }
    out
}

fn big_mod(c: &BigInt, prime: u64) -> u64 {
    let p = BigInt::from(prime);
    c.mod_floor(&p).to_u64().expect("residue fits")
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

fn poly_deg(c: &[u64]) -> Option<usize> {
    c.iter().rposition(|&x| x != 0)
}

/// Gcd of two univariate polynomials over F_prime (coefficients ascending).
fn gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>, prime: u64) -> Vec<u64> {
    loop {
        let (da, db) = (poly_deg(&a), poly_deg(&b));
        match (da, db) {
            (None, Some(_)) => return b,
            (Some(_), None) => return a,
            (None, None) => return vec![1],
            (Some(da), Some(db)) => {
                if da < db {
                    std::mem::swap(&mut a, &mut b);
                    continue;
                }
                // a := a mod b
                let lb_inv = pow_mod(b[db], prime - 2, prime);
                for k in (db..=da).rev() {
                    let lead = a[k];
                    if lead == 0 {
                        continue;
                    }
                    let q = mul_mod(lead, lb_inv, prime);
                    for j in 0..=db {
                        let idx = k - db + j;
                        let sub = mul_mod(q, b[j], prime);
                        a[idx] = (a[idx] + prime - sub) % prime;
                    }
                }
                if poly_deg(&a).is_none() {
                    return b;
                }
                std::mem::swap(&mut a, &mut b);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse_poly, BlockShape};

    fn shape(blocks: &[usize]) -> BlockShape {
        BlockShape::new(blocks.to_vec()).unwrap()
    }

    fn p(blocks: &[usize], s: &str) -> Polynomial {
        parse_poly(&shape(blocks), s).unwrap()
    }

    const L: Limits = Limits::DESK;

    #[test]
    fn monomial_gcd() {
        let g = gcd(&p(&[3], "x0^2*x1"), &p(&[3], "x0*x1^2"), &L).unwrap();
        assert_eq!(g, p(&[3], "x0*x1"));
    }

    #[test]
    fn shared_factor_gcd() {
        let a = p(&[2], "(x0 + x1)^2 * x0");
        let b = p(&[2], "(x0 + x1) * x0^2");
        let g = gcd(&a, &b, &L).unwrap();
        assert_eq!(g, p(&[2], "(x0 + x1) * x0"));
    }

    #[test]
    fn coprime_pair_via_resultant_oracle() {
        // Oracle: the 2x2 determinant | 1 1 ; 1 -1 | = -2 of the coefficient
        // matrix of the pair (x0 + x1, x0 - x1) is nonzero, so the linear
        // forms are independent and the gcd must be 1.
        let det: i64 = 1 * (-1) - 1 * 1;
        assert_ne!(det, 0);
        let g = gcd(&p(&[2], "x0 + x1"), &p(&[2], "x0 - x1"), &L).unwrap();
        assert!(g.is_constant());
        assert_eq!(g, Polynomial::one(shape(&[2])));
    }

    #[test]
    fn gcd_with_zero_normalizes() {
        let a = p(&[2], "-2*x0 - 2*x1");
        let z = Polynomial::zero(shape(&[2]));
        let g = gcd(&a, &z, &L).unwrap();
        assert_eq!(g, p(&[2], "2*x0 + 2*x1"));
        assert!(gcd(&z, &z, &L).is_err());
    }

    #[test]
    fn gcd_includes_integer_content() {
        let g = gcd(&p(&[2], "2*x0"), &p(&[2], "4*x0"), &L).unwrap();
        assert_eq!(g, p(&[2], "2*x0"));
    }

    #[test]
    fn multiblock_gcd() {
        let a = p(&[2, 2], "x0*y0 + x1*y0");
        let b = p(&[2, 2], "x0*y1 + x1*y1");
        let g = gcd(&a, &b, &L).unwrap();
        assert_eq!(g, p(&[2, 2], "x0 + x1"));
    }

    #[test]
    fn reduce_extracts_candidates() {
        let f = p(&[2], "x0 + x1");
        let a = f.mul(&p(&[2], "x0^2"), &L).unwrap();
        let b = f.mul(&p(&[2], "x0*x1 + x1^2"), &L).unwrap();
        let reduced = reduce_by_gcd(&[a, b], &[f.clone()], &L).unwrap();
        // b = (x0+x1)^2·x1, so the common factor is exactly f.
        assert_eq!(reduced[0], p(&[2], "x0^2"));
        assert_eq!(reduced[1], p(&[2], "(x0 + x1)*x1"));
    }

    #[test]
    fn reduce_handles_zero_components() {
        let a = Polynomial::zero(shape(&[2]));
        let b = p(&[2], "3*x0^2");
        let reduced = reduce_by_gcd(&[a.clone(), b], &[], &L).unwrap();
        assert!(reduced[0].is_zero());
        assert_eq!(reduced[1], p(&[2], "1"));
        assert!(reduce_by_gcd(&[a.clone(), a], &[], &L).is_err());
    }

    #[test]
    fn reduce_without_candidates_finds_gcd() {
        let f = p(&[2], "x0^2 + x1^2");
        let a = f.mul(&p(&[2], "x0"), &L).unwrap();
        let b = f.mul(&p(&[2], "x1"), &L).unwrap();
        let reduced = reduce_by_gcd(&[a, b], &[], &L).unwrap();
        assert_eq!(reduced[0], p(&[2], "x0"));
        assert_eq!(reduced[1], p(&[2], "x1"));
    }
}
