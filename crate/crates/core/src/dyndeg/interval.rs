//! Outward-rounded interval arithmetic for nonnegative cited values.

use serde::Serialize;

/// A closed interval `[lo, hi]` with `0 ≤ lo ≤ hi`, rounded outward after
/// every operation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(lo >= 0.0 && lo <= hi, "bad interval [{lo}, {hi}]");
        Interval { lo, hi }
    }

    pub fn point(v: f64) -> Self {
        Interval::new(v, v)
    }

    pub const ONE: Interval = Interval { lo: 1.0, hi: 1.0 };

    pub fn mul(&self, other: &Interval) -> Interval {
        Interval {
            lo: next_down(self.lo * other.lo),
            hi: next_up(self.hi * other.hi),
        }
    }

    pub fn pow(&self, k: u32) -> Interval {
        let mut acc = Interval::ONE;
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn contains(&self, v: f64) -> bool {
        self.lo <= v && v <= self.hi
    }

    /// Entirely above `other` (disjoint, with `self` larger).
    pub fn strictly_above(&self, other: &Interval) -> bool {
        self.lo > other.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

fn next_up(v: f64) -> f64 {
    if v == 0.0 {
        return f64::MIN_POSITIVE;
    }
    f64::from_bits(v.to_bits() + 1)
}

fn next_down(v: f64) -> f64 {
    if v <= 0.0 {
        return 0.0;
    }
    f64::from_bits(v.to_bits() - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_is_outward_rounded() {
        let a = Interval::new(291.0, 669.0);
        let b = Interval::new(174.665, 174.667);
        let p = a.mul(&b);
        assert!(p.lo <= 291.0 * 174.665);
        assert!(p.hi >= 669.0 * 174.667);
        assert!(p.lo > 50_000.0 && p.hi < 120_000.0);
    }

    #[test]
    fn strict_order() {
        let lambda = Interval::new(291.0, 669.0);
        let a = Interval::new(174.665, 174.667);
        assert!(lambda.strictly_above(&a));
        assert!(!a.strictly_above(&lambda));
    }
}
