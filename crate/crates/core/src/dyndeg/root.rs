//! Certified real root of the degree-9 companion polynomial.
//!
//! The second dynamical degree of the reference self-map of `P³` is the real
//! root near 174.666 of
//!
//! ```text
//! a⁹ − 173a⁸ − 291a⁷ − 2a⁶ + 332a⁵ + 334a⁴ + 238a³ + 75a + 75 = 0
//! ```
//!
//! (note the absent `a²` term). The certificate brackets that root in
//! `(174, 175)` by exact integer sign evaluation and bisects on dyadic
//! rationals, keeping an exact sign change at every step.

use super::DynDegError;
use crate::dyndeg::Interval;
use crate::monomial::unipoly::UniPoly;
use num_bigint::BigInt;
use serde::Serialize;

/// Coefficients from `a⁹` down to the constant term.
pub const ROOT_A_COEFFS: [i64; 10] = [1, -173, -291, -2, 332, 334, 238, 0, 75, 75];

/// A bracketed real root of an integer polynomial: exact dyadic endpoints
/// with opposite exact signs.
#[derive(Clone, Debug, Serialize)]
pub struct RootCertificate {
    /// Coefficients, leading first.
    pub coefficients: Vec<String>,
    /// Endpoints are `numerator / 2^log2_den`.
    pub lo_num: String,
    pub hi_num: String,
    pub log2_den: u32,
    /// Midpoint as a float.
    pub value: f64,
    /// `hi − lo` as a float.
    pub width: f64,
}

impl RootCertificate {
    /// Outward-rounded enclosing interval.
    pub fn interval(&self) -> Interval {
        let lo: f64 = self.lo_num.parse::<f64>().unwrap() / (self.log2_den as f64).exp2();
        let hi: f64 = self.hi_num.parse::<f64>().unwrap() / (self.log2_den as f64).exp2();
        // The parse/divide pair is exact for our dyadics (< 2^53), but round
        // outward anyway.
        Interval::new(
            f64::from_bits(lo.to_bits() - 1),
            f64::from_bits(hi.to_bits() + 1),
        )
    }
}

/// Bisect `poly` over the integer bracket `(lo, hi)` down to `width`.
///
/// Fails loudly when the seed bracket shows no exact sign change — for the
/// frozen coefficient list above that would mean a transcription error.
pub fn certify_root(
    poly: &UniPoly,
    lo: i64,
    hi: i64,
    width: f64,
) -> Result<RootCertificate, DynDegError> {
    let slo = poly.sign_at_dyadic(&BigInt::from(lo), 0);
    let shi = poly.sign_at_dyadic(&BigInt::from(hi), 0);
    if slo == 0 || shi == 0 || slo == shi {
        return Err(DynDegError::NoSignChange { lo, hi });
    }
    let mut k = 0u32;
    let mut lo_num = BigInt::from(lo);
    let mut hi_num = BigInt::from(hi);
    let mut sign_lo = slo;
    while ((hi - lo) as f64) / (k as f64).exp2() > width {
        let mid = &lo_num + &hi_num;
        let k1 = k + 1;
        let sm = poly.sign_at_dyadic(&mid, k1);
        if sm == 0 {
            // Exact dyadic root: collapse the bracket to the point.
            lo_num = mid.clone();
            hi_num = mid;
            k = k1;
            break;
        }
        if sm == sign_lo {
            lo_num = mid;
            hi_num <<= 1u32;
        } else {
            hi_num = mid;
            lo_num <<= 1u32;
        }
        k = k1;
        sign_lo = poly.sign_at_dyadic(&lo_num, k);
        debug_assert!(sign_lo != 0 || lo_num == hi_num);
    }
    let den = (k as f64).exp2();
    let flo = to_f64(&lo_num) / den;
    let fhi = to_f64(&hi_num) / den;
    let mut coeffs: Vec<String> = poly.coeffs().iter().map(|c| c.to_string()).collect();
    coeffs.reverse();
    Ok(RootCertificate {
        coefficients: coeffs,
        lo_num: lo_num.to_string(),
        hi_num: hi_num.to_string(),
        log2_den: k,
        value: (flo + fhi) / 2.0,
        width: fhi - flo,
    })
}

fn to_f64(v: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    v.to_f64().expect("dyadic endpoint fits f64")
}

/// The certified root `a ≈ 174.6660` of the frozen degree-9 polynomial,
/// bracketed in `(174, 175)` and refined to width `≤ 10⁻⁶`.
pub fn root_a() -> Result<RootCertificate, DynDegError> {
    let mut coeffs: Vec<i64> = ROOT_A_COEFFS.to_vec();
    coeffs.reverse();
    let poly = UniPoly::from_i64(&coeffs);
    certify_root(&poly, 174, 175, 1e-6)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_bracket_has_sign_change() {
        let mut coeffs: Vec<i64> = ROOT_A_COEFFS.to_vec();
        coeffs.reverse();
        let p = UniPoly::from_i64(&coeffs);
        let s174 = p.sign_at_dyadic(&BigInt::from(174), 0);
        let s175 = p.sign_at_dyadic(&BigInt::from(175), 0);
        assert_eq!(s174, -1);
        assert_eq!(s175, 1);
    }

    #[test]
    fn certificate_matches_printed_value() {
        let cert = root_a().unwrap();
        assert!(cert.width <= 1e-6);
        assert!(
            (cert.value - 174.6660).abs() <= 5e-4,
            "value {}",
            cert.value
        );
        let iv = cert.interval();
        assert!(iv.contains(cert.value));
    }

    #[test]
    fn degree_and_coefficient_list_frozen() {
        assert_eq!(ROOT_A_COEFFS.len(), 10);
        // The quadratic coefficient is absent in the source display.
        assert_eq!(ROOT_A_COEFFS[7], 0);
        let cert = root_a().unwrap();
        assert_eq!(cert.coefficients.len(), 10);
        assert_eq!(cert.coefficients[0], "1");
        assert_eq!(cert.coefficients[9], "75");
    }

    #[test]
    fn tampered_polynomial_fails_loudly() {
        // Break one coefficient: the bracket no longer shows a sign change.
        let mut coeffs: Vec<i64> = ROOT_A_COEFFS.to_vec();
        coeffs.reverse();
        coeffs[9] = -1; // leading coefficient flipped
        let p = UniPoly::from_i64(&coeffs);
        assert!(matches!(
            certify_root(&p, 174, 175, 1e-6),
            Err(DynDegError::NoSignChange { .. })
        ));
    }
}
