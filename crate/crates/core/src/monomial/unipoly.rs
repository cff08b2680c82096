//! Exact univariate integer polynomials.
//!
//! Small utility layer under the spectral-radius and root-certificate code:
//! characteristic polynomials, squarefree parts, dyadic sign evaluation and
//! primitive-PRS gcds, all over `BigInt`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense univariate integer polynomial; coefficients ascending, no trailing
/// zero on the leading coefficient (the zero polynomial has no coefficients).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<BigInt>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        UniPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficients ascending from the constant term.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Exact sign of `p(num / 2^k)` via the scaled integer value
    /// `2^{k·deg} · p(num / 2^k)`.
    pub fn sign_at_dyadic(&self, num: &BigInt, k: u32) -> i8 {
        if self.is_zero() {
            return 0;
        }
        let deg = self.degree().unwrap() as u32;
        let mut acc = BigInt::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            // c · num^i · 2^{k(deg − i)}
            acc += c * num.pow(i as u32) * (BigInt::one() << (k as u64 * (deg - i as u32) as u64));
        }
        match acc.sign() {
            num_bigint::Sign::Plus => 1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Minus => -1,
        }
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    fn mul_scalar(&self, s: &BigInt) -> UniPoly {
        if s.is_zero() {
            return UniPoly::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    fn sub(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[i] -= c;
        }
        UniPoly::new(coeffs)
    }

    fn shift_mul(&self, k: usize, s: &BigInt) -> UniPoly {
        if self.is_zero() || s.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().map(|c| c * s));
        UniPoly::new(coeffs)
    }

    /// Integer content (nonnegative).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn primitive_part(&self) -> UniPoly {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|k| k / &c).collect(),
        }
    }

    /// Exact division; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &UniPoly) -> Option<UniPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(UniPoly::zero());
        }
        let (dd, ds) = (d.degree()?, self.degree()?);
        if ds < dd {
            return None;
        }
        let lead = d.leading()?;
        let mut rem = self.clone();
        let mut q = vec![BigInt::zero(); ds - dd + 1];
        while let Some(dr) = rem.degree() {
            if dr < dd {
                return None;
            }
            let (qc, r) = rem.leading()?.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            q[dr - dd] = qc.clone();
            rem = rem.sub(&d.shift_mul(dr - dd, &qc));
            if rem.is_zero() {
                return Some(UniPoly::new(q));
            }
        }
        Some(UniPoly::new(q))
    }

    /// Primitive-PRS gcd over the integers, positive leading coefficient,
    /// content included.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() {
            return other.abs_normalized();
        }
        if other.is_zero() {
            return self.abs_normalized();
        }
        let c = self.content().gcd(&other.content());
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        loop {
            if b.is_zero() {
                return a.primitive_part().abs_normalized().mul_scalar(&c);
            }
            if b.degree() == Some(0) {
                return UniPoly::new(vec![c]);
            }
            let r = a.prem(&b);
            a = b;
            b = r.primitive_part();
        }
    }

    /// Pseudo-remainder of `self` by `d`.
    fn prem(&self, d: &UniPoly) -> UniPoly {
        let dd = d.degree().expect("nonzero divisor");
        let lead = d.leading().unwrap().clone();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < dd || r.is_zero() {
                break;
            }
            let lr = r.leading().unwrap().clone();
            r = r.mul_scalar(&lead).sub(&d.shift_mul(dr - dd, &lr));
        }
        r
    }

    fn abs_normalized(&self) -> UniPoly {
        match self.leading() {
            Some(l) if l.is_negative() => self.neg(),
            _ => self.clone(),
        }
    }

    /// Squarefree part `p / gcd(p, p′)`, primitive, positive leading
    /// coefficient.
    pub fn squarefree_part(&self) -> UniPoly {
        if self.is_zero() || self.degree() == Some(0) {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return self.primitive_part().abs_normalized();
        }
        self.div_exact(&g)
            .expect("gcd divides")
            .primitive_part()
            .abs_normalized()
    }

    /// Strip `x^k` factors; returns the number of zero roots removed.
    pub fn strip_zero_roots(&self) -> (usize, UniPoly) {
        if self.is_zero() {
            return (0, UniPoly::zero());
        }
        let k = self
            .coeffs
            .iter()
            .position(|c| !c.is_zero())
            .expect("nonzero polynomial");
        (k, UniPoly::new(self.coeffs[k..].to_vec()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_and_derivative() {
        // p = x^2 - 3x + 2
        let p = UniPoly::from_i64(&[2, -3, 1]);
        assert_eq!(p.eval(&BigInt::from(1)), BigInt::zero());
        assert_eq!(p.eval(&BigInt::from(3)), BigInt::from(2));
        assert_eq!(p.derivative(), UniPoly::from_i64(&[-3, 2]));
    }

    #[test]
    fn gcd_of_shared_factor() {
        // (x-1)(x-2) and (x-1)(x+5)
        let a = UniPoly::from_i64(&[2, -3, 1]);
        let b = UniPoly::from_i64(&[-5, 4, 1]);
        assert_eq!(a.gcd(&b), UniPoly::from_i64(&[-1, 1]));
    }

    #[test]
    fn squarefree_strips_multiplicity() {
        // (x-1)^2 (x+2) = x^3 - 3x + 2
        let p = UniPoly::from_i64(&[2, -3, 0, 1]);
        let sf = p.squarefree_part();
        // (x-1)(x+2) = x^2 + x - 2
        assert_eq!(sf, UniPoly::from_i64(&[-2, 1, 1]));
    }

    #[test]
    fn dyadic_sign_evaluation() {
        // p = x^2 - 2: sign at 1.5 = 3/2 is positive, at 1.25 = 5/4 negative
        let p = UniPoly::from_i64(&[-2, 0, 1]);
        assert_eq!(p.sign_at_dyadic(&BigInt::from(3), 1), 1);
        assert_eq!(p.sign_at_dyadic(&BigInt::from(5), 2), -1);
    }

    #[test]
    fn zero_root_stripping() {
        let p = UniPoly::from_i64(&[0, 0, 3, 1]);
        let (k, q) = p.strip_zero_roots();
        assert_eq!(k, 2);
        assert_eq!(q, UniPoly::from_i64(&[3, 1]));
    }
}
