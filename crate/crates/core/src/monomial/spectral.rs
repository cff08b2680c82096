//! Spectral radii of integer matrices.
//!
//! Two routes, chosen by dimension:
//!
//! * `n ≤ 70` — exact characteristic polynomial (Faddeev–LeVerrier over
//!   `BigInt`), zero roots stripped, exact squarefree part, then
//!   Aberth–Ehrlich in `f64` with residual-disk error bounds. A real dominant
//!   root is additionally refined by exact-sign bisection on the integer
//!   polynomial. Output is validated against exact Newton sums; failure is
//!   reported, never silently wrong. Taking the exact squarefree part first
//!   is what keeps defective spectra accurate: repeated roots become simple
//!   before any floating point runs.
//! * `n > 70` — Gelfand squaring: repeated scaled matrix squaring gives the
//!   nonincreasing upper bounds `‖M^{2^k}‖_F^{1/2^k} → ρ`. For a defective
//!   dominant eigenvalue the f64 iteration can stall `eps^{1/m}` away from
//!   the limit, so the reported error is floored at 1e-5.

use super::matrix::IntMatrix;
use super::unipoly::UniPoly;
use super::MatrixError;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

const EXACT_DIM_LIMIT: usize = 70;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SpectralMethod {
    /// Exact 1×1 or exact integer value (|det| for the top exterior power).
    Exact,
    /// Characteristic polynomial roots (exact polynomial, certified bounds).
    CharPolyRoots,
    /// Scaled repeated squaring; value is the stabilized upper bound.
    GelfandSquaring,
}

/// Spectral radius with a stated relative error bound.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SpectralEstimate {
    pub value: f64,
    pub rel_error: f64,
    pub method: SpectralMethod,
}

/// Exact characteristic polynomial `det(xI − M)` by Faddeev–LeVerrier.
/// Every division is exact over the integers.
pub fn char_poly(m: &IntMatrix) -> UniPoly {
    let n = m.dim();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::from(1);
    let mut b = IntMatrix::identity(n);
    for k in 1..=n {
        let ab = m.mul(&b);
        let mut tr = BigInt::zero();
        for i in 0..n {
            tr += ab.entry(i, i);
        }
        let (ck, rem) = num_integer::Integer::div_rem(&(-tr), &BigInt::from(k));
        debug_assert!(rem.is_zero(), "Faddeev-LeVerrier division is exact");
        coeffs[n - k] = ck.clone();
        // b = ab + ck·I
        let mut entries = ab.entries().to_vec();
        for i in 0..n {
            entries[i * n + i] += &ck;
        }
        b = IntMatrix::new(n, entries).expect("square");
    }
    UniPoly::new(coeffs)
}

/// Largest eigenvalue modulus of `m`.
pub fn spectral_radius(m: &IntMatrix) -> Result<SpectralEstimate, MatrixError> {
    let n = m.dim();
    if n == 1 {
        let v = m.entry(0, 0).abs();
        return Ok(SpectralEstimate {
            value: big_to_f64(&v),
            rel_error: f64::EPSILON,
            method: SpectralMethod::Exact,
        });
    }
    if n <= EXACT_DIM_LIMIT {
        exact_route(m)
    } else {
        gelfand_route(m)
    }
}

/// Dynamical-degree oracle for a monomial map: `λ_p = ρ(Λ^p M)` for
/// `p = 0..=n`, with the endpoints exact (`λ_0 = 1`, `λ_n = |det|`).
pub fn lambda_profile(m: &IntMatrix) -> Result<Vec<SpectralEstimate>, MatrixError> {
    let n = m.dim();
    let det = m.det();
    if det.is_zero() {
        return Err(MatrixError::Singular);
    }
    let mut out = Vec::with_capacity(n + 1);
    out.push(SpectralEstimate {
        value: 1.0,
        rel_error: 0.0,
        method: SpectralMethod::Exact,
    });
    for p in 1..n {
        let lp = m.exterior_power(p)?;
        out.push(spectral_radius(&lp)?);
    }
    out.push(SpectralEstimate {
        value: big_to_f64(&det.abs()),
        rel_error: f64::EPSILON,
        method: SpectralMethod::Exact,
    });
    Ok(out)
}

// ---------------------------------------------------------------------------
// Exact route: characteristic polynomial roots
// ---------------------------------------------------------------------------

fn exact_route(m: &IntMatrix) -> Result<SpectralEstimate, MatrixError> {
    let p = char_poly(m);
    let (_zeros, p) = p.strip_zero_roots();
    if p.degree() == Some(0) {
        // Nilpotent: all eigenvalues zero.
        return Ok(SpectralEstimate {
            value: 0.0,
            rel_error: 0.0,
            method: SpectralMethod::Exact,
        });
    }
    let sf = p.squarefree_part();
    let (value, rel_error) = max_root_modulus(&sf)
        .map_err(MatrixError::SpectralNonConvergence)?;
    Ok(SpectralEstimate {
        value,
        rel_error,
        method: SpectralMethod::CharPolyRoots,
    })
}

/// Maximum root modulus of a squarefree integer polynomial with a certified
/// relative error estimate.
fn max_root_modulus(p: &UniPoly) -> Result<(f64, f64), String> {
    let deg = p.degree().expect("nonzero");
    if deg == 0 {
        return Ok((0.0, 0.0));
    }
    let (coeffs, shift) = scaled_f64_coeffs(p);
    let roots = aberth(&coeffs)?;
    validate_newton_sums(&coeffs, &roots)?;

    let m = roots.len() as f64;
    let mut best_value = 0.0f64;
    let mut best_err = 0.0f64;
    for z in &roots {
        let modulus = z.norm();
        if modulus <= best_value {
            continue;
        }
        let (pv, dv) = horner_with_derivative(&coeffs, *z);
        let ratio = safe_div(pv, dv).norm();
        let disk = if ratio.is_finite() {
            m * ratio + 16.0 * f64::EPSILON * (1.0 + modulus)
        } else {
            f64::INFINITY
        };
        best_value = modulus;
        best_err = disk;
    }
    let mut value = best_value;
    let mut rel = if value > 0.0 {
        best_err / value
    } else {
        best_err
    };

    // Real dominant root: refine by exact-sign bisection on the integer
    // polynomial, which certifies the value independently of Aberth.
    let dominant: Vec<&Complex64> = roots
        .iter()
        .filter(|z| z.norm() >= best_value * (1.0 - 1e-9))
        .collect();
    if dominant.len() == 1 && dominant[0].im.abs() <= best_err.max(1e-12) * (1.0 + best_value) {
        let approx = dominant[0].re;
        if let Some((lo, hi)) = bisect_real_root(p, approx * (shift as f64).exp2()) {
            value = (lo.abs()).max(hi.abs());
            rel = ((hi - lo).abs() / value).max(4.0 * f64::EPSILON);
            return Ok((value, rel));
        }
    }
    let value = value * (shift as f64).exp2();
    if !value.is_finite() {
        return Err("spectral radius evaluation produced a non-finite value".into());
    }
    Ok((value, rel.max(4.0 * f64::EPSILON)))
}

/// Bracket and bisect a simple real root of the exact polynomial near
/// `approx`; returns certified (lo, hi) with a sign change, width ≤ 1e-12·|x|.
fn bisect_real_root(p: &UniPoly, approx: f64) -> Option<(f64, f64)> {
    // Dyadic bracket around approx with k fractional bits.
    let k: u32 = 26;
    let scale = (1u64 << k) as f64;
    let center = (approx * scale).round();
    if !center.is_finite() {
        return None;
    }
    let center = BigInt::from(center as i64);
    let mut width = BigInt::from(1) << 12; // ± 2^12 / 2^26 ≈ 6e-5 relative-ish
    let mut lo;
    let mut hi;
    loop {
        lo = &center - &width;
        hi = &center + &width;
        let slo = p.sign_at_dyadic(&lo, k);
        let shi = p.sign_at_dyadic(&hi, k);
        if slo == 0 {
            let v = big_to_f64(&lo) / scale;
            return Some((v, v));
        }
        if shi == 0 {
            let v = big_to_f64(&hi) / scale;
            return Some((v, v));
        }
        if slo != shi {
            break;
        }
        width <<= 1;
        if width > (BigInt::from(1) << 24) {
            return None;
        }
    }
    // 64 bisection steps on dyadic endpoints, one extra fractional bit each.
    let mut k = k;
    let mut lo = lo;
    let mut hi = hi;
    let mut slo = p.sign_at_dyadic(&lo, k);
    for _ in 0..64 {
        // At k+1 fractional bits, lo+hi is the midpoint of 2·lo and 2·hi.
        let k1 = k + 1;
        let mid = &lo + &hi;
        let sm = p.sign_at_dyadic(&mid, k1);
        if sm == 0 {
            let v = big_ratio_f64(&mid, k1);
            return Some((v, v));
        }
        if sm == slo {
            lo = mid;
            hi <<= 1u32;
        } else {
            hi = mid;
            lo <<= 1u32;
        }
        k = k1;
        slo = p.sign_at_dyadic(&lo, k);
    }
    let flo = big_ratio_f64(&lo, k);
    let fhi = big_ratio_f64(&hi, k);
    Some((flo, fhi))
}

fn big_ratio_f64(num: &BigInt, k: u32) -> f64 {
    // num / 2^k with care for very large k.
    big_to_f64(num) * (-(k as f64)).exp2()
}

fn big_to_f64(v: &BigInt) -> f64 {
    v.to_f64().unwrap_or(f64::INFINITY)
}

/// Convert to `f64` coefficients after balanced root scaling: returns
/// `(coeffs of q, t)` where `q(y) = p(2^t · y)` up to a harmless common
/// factor, so `ρ(p) = 2^t · ρ(q)`.
fn scaled_f64_coeffs(p: &UniPoly) -> (Vec<f64>, i64) {
    let deg = p.degree().expect("nonzero") as i64;
    let bits = |c: &BigInt| -> i64 {
        if c.is_zero() {
            0
        } else {
            c.bits() as i64
        }
    };
    let b0 = bits(&p.coeffs()[0]);
    let bm = bits(p.leading().expect("nonzero"));
    let t = if deg > 0 { (b0 - bm) / deg } else { 0 };
    // exponent of coefficient k after substitution: bits_k + t·k
    let mut max_e = i64::MIN;
    for (k, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        max_e = max_e.max(bits(c) + t * k as i64);
    }
    let coeffs = p
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| {
            if c.is_zero() {
                return 0.0;
            }
            let (mant, e) = big_parts(c);
            let e2 = e + t * k as i64 - max_e;
            if e2 < -1000 {
                0.0
            } else {
                mant * (e2 as f64).exp2()
            }
        })
        .collect();
    (coeffs, t)
}

/// `(mantissa, exp)` with `value ≈ mantissa · 2^exp` and the mantissa exactly
/// representable in `f64`.
fn big_parts(c: &BigInt) -> (f64, i64) {
    let bits = c.bits();
    if bits <= 53 {
        return (big_to_f64(c), 0);
    }
    let shift = bits - 53;
    let top = (c >> shift).to_f64().unwrap_or(0.0);
    (top, shift as i64)
}

/// Aberth–Ehrlich simultaneous root finding on real `f64` coefficients.
///
/// Two attempts with different starting configurations; within an attempt a
/// root counts as converged when its residual reaches the evaluation noise
/// floor, and a fully stagnant iteration (steps at rounding level) is also
/// accepted — the caller validates the output against exact Newton sums
/// either way.
fn aberth(coeffs: &[f64]) -> Result<Vec<Complex64>, String> {
    let deg = coeffs.len() - 1;
    let lc = coeffs[deg];
    if lc == 0.0 || !lc.is_finite() {
        return Err("leading coefficient not representable".into());
    }
    let monic: Vec<f64> = coeffs.iter().map(|c| c / lc).collect();
    // Fujiwara upper bound for |roots| and the same bound on the reversed
    // polynomial for a lower bound: initials spread between them.
    let fujiwara = |c: &[f64]| -> f64 {
        let d = c.len() - 1;
        let mut r = 0.0f64;
        for k in 0..d {
            let b = (c[k] / c[d]).abs();
            if b > 0.0 {
                r = r.max(b.powf(1.0 / (d - k) as f64));
            }
        }
        if r == 0.0 {
            1.0
        } else {
            2.0 * r
        }
    };
    let r_hi = fujiwara(&monic);

    // Newton-polygon initial radii: the upper convex hull of (k, ln|c_k|)
    // splits the roots into modulus clusters; hull edge (k1,y1)-(k2,y2)
    // contributes k2-k1 starting points of radius exp((y1-y2)/(k2-k1)).
    let radii: Vec<f64> = {
        let pts: Vec<(f64, f64)> = monic
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0.0)
            .map(|(k, c)| (k as f64, c.abs().ln()))
            .collect();
        let mut hull: Vec<(f64, f64)> = Vec::new();
        for &pt in &pts {
            while hull.len() >= 2 {
                let a = hull[hull.len() - 2];
                let b = hull[hull.len() - 1];
                // keep the hull concave from above
                if (b.1 - a.1) * (pt.0 - b.0) <= (pt.1 - b.1) * (b.0 - a.0) {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(pt);
        }
        let mut radii = Vec::with_capacity(deg);
        for w in hull.windows(2) {
            let (k1, y1) = w[0];
            let (k2, y2) = w[1];
            let r = ((y1 - y2) / (k2 - k1)).exp().min(2.0 * r_hi).max(1e-280);
            for _ in 0..((k2 - k1) as usize) {
                radii.push(r);
            }
        }
        while radii.len() < deg {
            radii.push(r_hi * 0.5);
        }
        radii.truncate(deg);
        radii
    };

    for attempt in 0..3 {
        let offset = 0.354 + 0.41 * attempt as f64;
        let mut z: Vec<Complex64> = (0..deg)
            .map(|j| {
                let angle =
                    2.0 * std::f64::consts::PI * (1.618 * j as f64 + offset);
                let jitter = 1.0 + 0.05 * attempt as f64;
                Complex64::from_polar(radii[j] * jitter, angle)
            })
            .collect();
        let mut stagnant = 0;
        let mut near_stagnant = 0;
        let mut settled_streak = 0;
        let sweeps = if deg > 40 { 2500 } else { 1500 };
        for sweep in 0..sweeps {
            let mut max_step = 0.0f64;
            // Residual-settled iterates skip their update this sweep, but
            // only when no twin shares their spot: two iterates on one root
            // both look settled and must instead repel apart.
            let mut settled = vec![false; deg];
            let mut settled_range: Option<(f64, f64)> = None;
            for i in 0..deg {
                let (pv, _) = horner_with_derivative(&monic, z[i]);
                let noise: f64 = {
                    let az = z[i].norm();
                    let mut acc = 0.0f64;
                    let mut zp = 1.0f64;
                    for c in monic.iter() {
                        acc += c.abs() * zp;
                        zp *= az;
                    }
                    acc * 8.0 * f64::EPSILON
                };
                if !(noise.is_finite() && pv.norm() <= noise) {
                    continue;
                }
                settled[i] = true;
                let r = z[i].norm();
                settled_range = Some(match settled_range {
                    None => (r, r),
                    Some((lo, hi)) => (lo.min(r), hi.max(r)),
                });
            }
            if settled.iter().all(|&s| s) {
                // Full settlement is accepted only when the exact Newton
                // sums agree — two iterates may have claimed one root while
                // another root went unclaimed, and only the global sums can
                // tell. On failure, unfreeze the tightest pair.
                if validate_newton_sums(&monic, &z).is_ok() {
                    settled_streak += 1;
                    if settled_streak >= 2 {
                        return Ok(z);
                    }
                } else {
                    settled_streak = 0;
                    let mut best = (f64::INFINITY, 0usize);
                    for i in 0..deg {
                        for j in (i + 1)..deg {
                            let d = (z[i] - z[j]).norm() / (1.0 + z[i].norm());
                            if d < best.0 {
                                best = (d, j);
                            }
                        }
                    }
                    let j = best.1;
                    settled[j] = false;
                    let h = (sweep as f64) * 0.618 + (j as f64) * 0.387;
                    if let Some((lo, hi)) = settled_range {
                        let t = h.fract();
                        let r = (lo.max(1e-280) * 0.9)
                            * ((1.2 * hi) / (0.9 * lo.max(1e-280))).powf(t);
                        let angle = 2.0 * std::f64::consts::PI * (h * 7.13).fract();
                        z[j] = Complex64::from_polar(r, angle);
                    }
                }
            } else {
                settled_streak = 0;
            }

            // Algebraic finisher: one or two missing roots are pinned down
            // exactly by the root sum (from c_{d-1}) and the root product
            // (from c_0), given the settled majority. Solve, polish with
            // Newton, and hand the positions to the stray iterates.
            let unsettled: Vec<usize> =
                (0..deg).filter(|&i| !settled[i]).collect();
            if sweep >= 200 && sweep % 50 == 0 && !unsettled.is_empty() && unsettled.len() <= 2 {
                let sum_all = -monic[deg - 1];
                let settled_sum: Complex64 = (0..deg)
                    .filter(|&i| settled[i])
                    .map(|i| z[i])
                    .sum();
                let missing_sum = Complex64::new(sum_all, 0.0) - settled_sum;
                let targets: Vec<Complex64> = if unsettled.len() == 1 {
                    vec![missing_sum]
                } else {
                    // Product of all roots: (−1)^deg · c₀ (monic). Work in
                    // log-magnitude/angle to dodge overflow in the partial
                    // product.
                    let sign = if deg % 2 == 0 { 1.0 } else { -1.0 };
                    let prod_all = sign * monic[0];
                    let mut logmag = prod_all.abs().max(1e-300).ln();
                    let mut angle: f64 = if prod_all >= 0.0 { 0.0 } else { std::f64::consts::PI };
                    for i in 0..deg {
                        if settled[i] {
                            logmag -= z[i].norm().max(1e-300).ln();
                            angle -= z[i].arg();
                        }
                    }
                    let missing_prod = Complex64::from_polar(logmag.exp(), angle);
                    if std::env::var("ABERTH_TRACE").is_ok() {
                        eprintln!(
                            "  finisher quad: missing_sum {missing_sum}, missing_prod {missing_prod}"
                        );
                    }
                    // Roots of t² − missing_sum·t + missing_prod.
                    let half = missing_sum * 0.5;
                    let disc = (half * half - missing_prod).sqrt();
                    vec![half + disc, half - disc]
                };
                // Try the raw symmetric-function positions first: when the
                // missing root hides in a tight cluster, a Newton polish
                // slides it onto an already-claimed neighbour, while the raw
                // position is exactly what the sum identities require.
                let saved: Vec<Complex64> = unsettled.iter().map(|&i| z[i]).collect();
                for (slot, t) in unsettled.iter().zip(&targets) {
                    if t.re.is_finite() && t.im.is_finite() {
                        z[*slot] = *t;
                    }
                }
                if validate_newton_sums(&monic, &z).is_ok() {
                    return Ok(z);
                }
                for (slot, mut t) in unsettled.iter().zip(targets) {
                    // Newton polish on the full polynomial.
                    for _ in 0..60 {
                        let (pv, dv) = horner_with_derivative(&monic, t);
                        if dv.norm() == 0.0 || !pv.re.is_finite() {
                            break;
                        }
                        let step = safe_div(pv, dv);
                        t -= step;
                        if step.norm() <= 1e-16 * (1.0 + t.norm()) {
                            break;
                        }
                    }
                    if t.re.is_finite() && t.im.is_finite() {
                        z[*slot] = t;
                    }
                }
                if validate_newton_sums(&monic, &z).is_ok() {
                    return Ok(z);
                }
                // Neither worked: restore and keep iterating.
                for (slot, t) in unsettled.iter().zip(saved) {
                    z[*slot] = t;
                }
            }

            for i in 0..deg {
                if settled[i] {
                    continue;
                }
                // A wanderer outside the settled annulus is hunting missing
                // roots in the wrong place: re-seed it inside periodically.
                if sweep >= 100 && sweep % 100 == 0 {
                    if let Some((lo, hi)) = settled_range {
                        if z[i].norm() > 1.1 * hi || !z[i].re.is_finite() {
                            let h = (sweep as f64) * 0.618 + (i as f64) * 0.387;
                            let t = h.fract();
                            let r = (lo.max(1e-280) * 0.9)
                                * ((1.1 * hi) / (0.9 * lo.max(1e-280))).powf(t);
                            let angle = 2.0 * std::f64::consts::PI * (h * 7.13).fract();
                            z[i] = Complex64::from_polar(r, angle);
                        }
                    }
                }
                // Hard bound: nothing lives beyond the Fujiwara radius.
                if z[i].norm() > 2.0 * r_hi {
                    let swirl = 0.539 * sweep as f64 + 0.173 * i as f64;
                    z[i] = Complex64::from_polar(
                        r_hi * (0.55 + 0.35 * (1.3 * swirl).sin().abs()),
                        z[i].arg() + swirl,
                    );
                }
                let (pv, dv) = horner_with_derivative(&monic, z[i]);
                if pv.norm() == 0.0 {
                    continue;
                }
                let newton = if dv.norm() > 0.0 {
                    safe_div(pv, dv)
                } else {
                    Complex64::new(1e-3, 1e-3)
                };
                let mut s = Complex64::new(0.0, 0.0);
                for (j, zj) in z.iter().enumerate() {
                    if j != i {
                        let d = z[i] - zj;
                        if d.norm() > 0.0 {
                            s += d.inv();
                        }
                    }
                }
                let denom = Complex64::new(1.0, 0.0) - newton * s;
                let mut w = if denom.norm() > 1e-290 {
                    safe_div(newton, denom)
                } else {
                    newton
                };
                // Beyond the root bound the Aberth denominator can flip
                // sign and push outward; the plain Newton step always pulls
                // inward there.
                if w.re.is_finite()
                    && w.im.is_finite()
                    && z[i].norm() > 1.5 * r_hi
                    && (z[i] - w).norm() > z[i].norm()
                {
                    w = newton;
                }
                if !w.re.is_finite() || !w.im.is_finite() {
                    // Collision or overflow in the repulsion sum: nudge the
                    // iterate instead of poisoning it.
                    let kick = 1e-2 * (1.0 + z[i].norm());
                    w = Complex64::new(kick, -kick * (0.3 + i as f64 * 0.1));
                }
                // Trust region: a far-field correction can overshoot through
                // the whole root cloud and cycle; cap the step instead.
                let cap = 0.5 * (1.0 + z[i].norm());
                if w.norm() > cap {
                    w *= cap / w.norm();
                }
                z[i] -= w;
                max_step = max_step.max(w.norm() / (1.0 + z[i].norm()));
            }
            // Converged when a few consecutive full sweeps move nothing at
            // rounding scale; near-coincident roots that keep orbiting at
            // the square-root-of-eps scale are accepted after a longer
            // quiet stretch. The exact Newton-sum validation judges either
            // way.
            if max_step < 128.0 * f64::EPSILON {
                stagnant += 1;
                if stagnant >= 4 {
                    return Ok(z);
                }
            } else {
                stagnant = 0;
            }
            if sweep > 300 && max_step < 1e-9 {
                near_stagnant += 1;
                if near_stagnant >= 30 {
                    return Ok(z);
                }
            } else {
                near_stagnant = 0;
            }
            // Global arbiter: the exact Newton sums decide whether the whole
            // configuration is already correct, whatever the step sizes say.
            if sweep >= 128 && sweep % 8 == 0 && validate_newton_sums(&monic, &z).is_ok() {
                return Ok(z);
            }
            if std::env::var("ABERTH_TRACE").is_ok() && sweep % 200 == 0 {
                eprintln!(
                    "attempt {attempt} sweep {sweep}: settled {}/{deg}, max_step {max_step:.3e}, max|z| {:.4}",
                    settled.iter().filter(|&&s| s).count(),
                    z.iter().map(|v| v.norm()).fold(0.0, f64::max)
                );
            }
        }
    }
    Err(format!(
        "Aberth iteration did not converge for degree {deg}"
    ))
}

/// Overflow-safe complex division: the naive formula squares the
/// denominator's magnitude, which overflows past ~1e154 even for finite
/// operands. Scale both by the denominator's largest component first.
fn safe_div(a: Complex64, b: Complex64) -> Complex64 {
    let m = b.re.abs().max(b.im.abs());
    if m == 0.0 || !m.is_finite() {
        return a / b;
    }
    let inv = 1.0 / m;
    let bs = Complex64::new(b.re * inv, b.im * inv);
    let as_ = Complex64::new(a.re * inv, a.im * inv);
    as_ / bs
}

fn horner_with_derivative(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut d = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        d = d * z + p;
        p = p * z + c;
    }
    (p, d)
}

/// Exact Newton-sum spot checks of the computed roots: power sums 1 and 2
/// must match the coefficient data.
fn validate_newton_sums(coeffs: &[f64], roots: &[Complex64]) -> Result<(), String> {
    if roots
        .iter()
        .any(|z| !z.re.is_finite() || !z.im.is_finite())
    {
        return Err("non-finite root in Aberth output".into());
    }
    let deg = coeffs.len() - 1;
    let lc = coeffs[deg];
    // Elementary symmetric functions from the coefficients.
    let e1 = if deg >= 1 { -coeffs[deg - 1] / lc } else { 0.0 };
    let e2 = if deg >= 2 { coeffs[deg - 2] / lc } else { 0.0 };
    let e3 = if deg >= 3 { -coeffs[deg - 3] / lc } else { 0.0 };
    let p1: Complex64 = roots.iter().sum();
    let p2: Complex64 = roots.iter().map(|z| z * z).sum();
    let p3: Complex64 = roots.iter().map(|z| z * z * z).sum();
    let scale: f64 = roots.iter().map(|z| z.norm()).sum::<f64>().max(1.0);
    // Newton's identities: the power sums the true roots must satisfy.
    let want_p1 = e1;
    let want_p2 = e1 * want_p1 - 2.0 * e2;
    let want_p3 = e1 * want_p2 - e2 * want_p1 + 3.0 * e3;
    if (p1.re - want_p1).abs() + p1.im.abs() > 1e-8 * scale {
        return Err(format!(
            "power-sum validation failed (order 1): got {p1}, want {want_p1}, scale {scale}"
        ));
    }
    if (p2.re - want_p2).abs() + p2.im.abs() > 1e-7 * scale * scale {
        return Err(format!(
            "power-sum validation failed (order 2): got {p2}, want {want_p2}, scale {scale}"
        ));
    }
    if (p3.re - want_p3).abs() + p3.im.abs() > 1e-6 * scale * scale * scale {
        return Err(format!(
            "power-sum validation failed (order 3): got {p3}, want {want_p3}, scale {scale}"
        ));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Gelfand route: scaled repeated squaring
// ---------------------------------------------------------------------------

fn gelfand_route(m: &IntMatrix) -> Result<SpectralEstimate, MatrixError> {
    let n = m.dim();
    // Scale entries into f64 range.
    let max_bits = m
        .entries()
        .iter()
        .map(|e| if e.is_zero() { 0 } else { e.bits() as i64 })
        .max()
        .unwrap_or(0);
    let shift = (max_bits - 500).max(0);
    let mut b: Vec<f64> = m
        .entries()
        .iter()
        .map(|e| {
            let (mant, ex) = big_parts(e);
            mant * ((ex - shift) as f64).exp2()
        })
        .collect();
    let fnorm = |v: &[f64]| -> f64 { v.iter().map(|x| x * x).sum::<f64>().sqrt() };
    let f0 = fnorm(&b);
    if f0 == 0.0 {
        return Ok(SpectralEstimate {
            value: 0.0,
            rel_error: 0.0,
            method: SpectralMethod::Exact,
        });
    }
    for x in b.iter_mut() {
        *x /= f0;
    }
    // acc = ln ‖M^{2^k}‖_F tracked through normalized squarings.
    //
    // The squaring count is capped at 34: for a defective dominant
    // eigenvalue the normalized iterate concentrates on the nilpotent
    // direction, and past ~2^40 the semisimple part drops below f64
    // resolution and the norms drift. At 2^34 the truncation error
    // ln(C·N^m)/N is still well under 1e-7 for any Jordan structure of the
    // sizes handled here.
    const SQUARINGS: u32 = 34;
    let mut acc = f0.ln() + (shift as f64) * std::f64::consts::LN_2;
    let mut prev_u = f64::INFINITY;
    let mut value = f64::INFINITY;
    let mut gap = f64::INFINITY;
    for k in 1..=SQUARINGS {
        let mut c = vec![0.0f64; n * n];
        for i in 0..n {
            for l in 0..n {
                let a = b[i * n + l];
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    c[i * n + j] += a * b[l * n + j];
                }
            }
        }
        let f = fnorm(&c);
        if f == 0.0 || !f.is_finite() {
            return Err(MatrixError::SpectralNonConvergence(
                "norm collapsed during squaring".into(),
            ));
        }
        for x in c.iter_mut() {
            *x /= f;
        }
        b = c;
        acc = 2.0 * acc + f.ln();
        let u = (acc / (1u64 << k) as f64).exp();
        gap = ((prev_u - u).abs() / u).max(0.0);
        value = u;
        prev_u = u;
    }
    if !value.is_finite() {
        return Err(MatrixError::SpectralNonConvergence(
            "squaring diverged".into(),
        ));
    }
    Ok(SpectralEstimate {
        value,
        rel_error: (4.0 * gap).max(1e-5),
        method: SpectralMethod::GelfandSquaring,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64(rows).unwrap()
    }

    #[test]
    fn char_poly_fibonacci_like() {
        let p = char_poly(&m(&[&[2, 1], &[1, 1]]));
        assert_eq!(p, UniPoly::from_i64(&[1, -3, 1]));
    }

    #[test]
    fn golden_ratio_squared_radius() {
        let est = spectral_radius(&m(&[&[2, 1], &[1, 1]])).unwrap();
        let expected = (3.0 + 5.0f64.sqrt()) / 2.0;
        assert!((est.value - expected).abs() < 1e-9 * expected, "{est:?}");
        assert!(est.rel_error <= 1e-9);
    }

    #[test]
    fn identity_radius_one() {
        let est = spectral_radius(&IntMatrix::identity(4)).unwrap();
        assert!((est.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn permutation_radius_one() {
        let est = spectral_radius(&m(&[&[0, 1], &[1, 0]])).unwrap();
        assert!((est.value - 1.0).abs() < 1e-12, "{est:?}");
    }

    #[test]
    fn complex_dominant_pair() {
        // Rotation-by-90° companion: eigenvalues ±i, radius 1.
        let est = spectral_radius(&m(&[&[0, -1], &[1, 0]])).unwrap();
        assert!((est.value - 1.0).abs() < 1e-10, "{est:?}");
    }

    #[test]
    fn nilpotent_radius_zero() {
        let est = spectral_radius(&m(&[&[0, 1], &[0, 0]])).unwrap();
        assert_eq!(est.value, 0.0);
    }

    #[test]
    fn gelfand_matches_exact_on_blowup() {
        // Compare the two routes on a 3×3 via block-diagonal padding with a
        // large identity, which pushes the dimension past the exact-route
        // threshold into Gelfand squaring.
        let a = m(&[&[2, 1, 0], &[1, 1, 0], &[0, 0, 1]]);
        let exact = spectral_radius(&a).unwrap();
        let padded = a.direct_sum(&IntMatrix::identity(69));
        assert!(padded.dim() > 70);
        let g = spectral_radius(&padded).unwrap();
        assert_eq!(g.method, SpectralMethod::GelfandSquaring);
        assert!(
            (g.value - exact.value).abs() <= 1e-8 * exact.value,
            "exact {exact:?} vs gelfand {g:?}"
        );
    }

    #[test]
    fn exact_route_handles_defective_spectra() {
        // This matrix has eigenvalues {1, 1, −1} with a nontrivial Jordan
        // block at 1; its paired exterior powers inherit the defect. The
        // exact squarefree part keeps the computed radius certified.
        let a = m(&[&[0, 1, 1], &[2, -1, -2], &[-5, -1, 2]]);
        let est = spectral_radius(&a).unwrap();
        assert!((est.value - 1.0).abs() < 1e-10, "{est:?}");
        let b = m(&[&[-2, -1, -4], &[-3, 3, 5], &[0, 2, 5]]);
        let l3 = a.direct_sum(&b).exterior_power(3).unwrap();
        assert_eq!(l3.dim(), 20);
        let est = spectral_radius(&l3).unwrap();
        assert_eq!(est.method, SpectralMethod::CharPolyRoots);
        // |β1·β3| for the second factor's eigenvalues β.
        let expect = 14.411518809324;
        assert!(
            (est.value - expect).abs() < 1e-8 * expect,
            "{est:?}"
        );
    }

    #[test]
    fn profile_endpoints_exact() {
        let prof = lambda_profile(&m(&[&[2, 1, 0], &[1, 1, 0], &[0, 0, 1]])).unwrap();
        assert_eq!(prof.len(), 4);
        assert_eq!(prof[0].value, 1.0);
        assert_eq!(prof[3].value, 1.0);
        let phi2 = (3.0 + 5.0f64.sqrt()) / 2.0;
        assert!((prof[1].value - phi2).abs() < 1e-9);
        assert!((prof[2].value - phi2).abs() < 1e-9);
    }

    #[test]
    fn neg_identity_profile_all_ones() {
        let prof = lambda_profile(&IntMatrix::neg_identity(3)).unwrap();
        for e in &prof {
            assert!((e.value - 1.0).abs() < 1e-12, "{prof:?}");
        }
    }
}
