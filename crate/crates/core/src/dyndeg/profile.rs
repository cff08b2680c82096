//! Dynamical-degree profiles: exact, estimated and symbolic entries.

use super::interval::Interval;
use super::root::root_a;
use super::DynDegError;
use crate::monomial::{lambda_profile, IntMatrix, SpectralEstimate};
use serde::Serialize;
use std::fmt;

/// A formal monomial `λ^i · a^j` in the two cited symbols.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SymbolicDegree {
    pub lambda_pow: u32,
    pub a_pow: u32,
}

impl SymbolicDegree {
    pub const ONE: SymbolicDegree = SymbolicDegree {
        lambda_pow: 0,
        a_pow: 0,
    };
    pub const LAMBDA: SymbolicDegree = SymbolicDegree {
        lambda_pow: 1,
        a_pow: 0,
    };
    pub const A: SymbolicDegree = SymbolicDegree {
        lambda_pow: 0,
        a_pow: 1,
    };

    pub fn mul(&self, other: &SymbolicDegree) -> SymbolicDegree {
        SymbolicDegree {
            lambda_pow: self.lambda_pow + other.lambda_pow,
            a_pow: self.a_pow + other.a_pow,
        }
    }

    fn interval(&self, lambda: &Interval, a: &Interval) -> Interval {
        lambda.pow(self.lambda_pow).mul(&a.pow(self.a_pow))
    }
}

impl fmt::Display for SymbolicDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lambda_pow == 0 && self.a_pow == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        if self.a_pow > 0 {
            write!(f, "a")?;
            if self.a_pow > 1 {
                write!(f, "^{}", self.a_pow)?;
            }
            first = false;
        }
        if self.lambda_pow > 0 {
            if !first {
                write!(f, "·")?;
            }
            write!(f, "λ")?;
            if self.lambda_pow > 1 {
                write!(f, "^{}", self.lambda_pow)?;
            }
        }
        Ok(())
    }
}

/// One profile entry with its provenance.
#[derive(Clone, Debug, Serialize)]
pub enum DegreeValue {
    /// Exactly computed from the monomial oracle.
    ExactMonomial { value: f64, rel_error: f64 },
    /// Upper bound from a degree sequence.
    DegreeEstimate { upper_bound: f64, iterates: u32 },
    /// A cited symbol, tracked by interval arithmetic.
    CitedSymbol {
        symbol: SymbolicDegree,
        interval: Interval,
    },
}

impl DegreeValue {
    pub fn provenance(&self) -> &'static str {
        match self {
            DegreeValue::ExactMonomial { .. } => "exact-monomial",
            DegreeValue::DegreeEstimate { .. } => "degree-estimate",
            DegreeValue::CitedSymbol { .. } => "cited-symbol",
        }
    }

    pub fn interval(&self) -> Interval {
        match self {
            DegreeValue::ExactMonomial { value, rel_error } => Interval::new(
                (value * (1.0 - rel_error)).max(0.0),
                value * (1.0 + rel_error),
            ),
            DegreeValue::DegreeEstimate { upper_bound, .. } => Interval::new(1.0, *upper_bound),
            DegreeValue::CitedSymbol { interval, .. } => *interval,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ProfileEntry {
    pub p: usize,
    pub value: DegreeValue,
}

/// Per-`p` dynamical degrees of a self-map of a `d`-dimensional space.
#[derive(Clone, Debug, Serialize)]
pub struct DynDegProfile {
    pub entries: Vec<ProfileEntry>,
    /// Basis note naming the oracle or citation the entries rest on.
    pub basis: String,
}

impl DynDegProfile {
    pub fn dim(&self) -> usize {
        self.entries.len() - 1
    }

    /// Symbolic entries, if every entry is symbolic.
    pub fn symbols(&self) -> Option<Vec<SymbolicDegree>> {
        self.entries
            .iter()
            .map(|e| match &e.value {
                DegreeValue::CitedSymbol { symbol, .. } => Some(*symbol),
                _ => None,
            })
            .collect()
    }

    pub fn values(&self) -> Vec<f64> {
        self.entries
            .iter()
            .map(|e| match &e.value {
                DegreeValue::ExactMonomial { value, .. } => *value,
                DegreeValue::DegreeEstimate { upper_bound, .. } => *upper_bound,
                DegreeValue::CitedSymbol { interval, .. } => (interval.lo + interval.hi) / 2.0,
            })
            .collect()
    }

    /// Palindrome check (the profile of a birational map equals its reverse
    /// for the symmetric constructions; exact on symbols).
    pub fn is_symbolic_palindrome(&self) -> bool {
        match self.symbols() {
            None => false,
            Some(s) => {
                let mut r = s.clone();
                r.reverse();
                r == s
            }
        }
    }
}

/// Exact profile of the monomial self-map of `P^n` with exponent matrix `m`:
/// `λ_p = ρ(Λ^p m)`, flagged as resting on the external standard oracle.
pub fn monomial_dyndeg_profile(m: &IntMatrix) -> Result<DynDegProfile, DynDegError> {
    let spectra: Vec<SpectralEstimate> = lambda_profile(m)?;
    Ok(DynDegProfile {
        entries: spectra
            .iter()
            .enumerate()
            .map(|(p, est)| ProfileEntry {
                p,
                value: DegreeValue::ExactMonomial {
                    value: est.value,
                    rel_error: est.rel_error,
                },
            })
            .collect(),
        basis: "exterior-power spectral radii (external standard oracle for monomial maps)"
            .into(),
    })
}

/// All-ones profile of the identity on a `dim`-dimensional space.
pub fn identity_profile(dim: usize) -> DynDegProfile {
    DynDegProfile {
        entries: (0..=dim)
            .map(|p| ProfileEntry {
                p,
                value: DegreeValue::CitedSymbol {
                    symbol: SymbolicDegree::ONE,
                    interval: Interval::ONE,
                },
            })
            .collect(),
        basis: "identity map".into(),
    }
}

/// Symbolic profile of the reference tower map on `P^d` (`d ≥ 6`):
///
/// ```text
/// 1, λ, aλ, λ², …, λ², aλ, λ, 1
/// ```
///
/// with the `λ²` plateau filling positions `3 ..= d−3`. The numeric companion
/// uses `λ ∈ [291, 669]` and the certified root interval for `a`; the
/// strict ordering `λ > a` that the max computations rely on is verified as
/// an interval disjointness, not assumed.
pub fn tower_profile(d: usize) -> Result<DynDegProfile, DynDegError> {
    if d < 6 {
        return Err(DynDegError::DimensionTooSmall(d));
    }
    let a_cert = root_a()?;
    let a = a_cert.interval();
    let lambda = Interval::new(291.0, 669.0);
    if !lambda.strictly_above(&a) {
        return Err(DynDegError::AmbiguousMax("λ".into(), "a".into()));
    }
    let sym = |s: SymbolicDegree| DegreeValue::CitedSymbol {
        symbol: s,
        interval: s.interval(&lambda, &a),
    };
    let al = SymbolicDegree::LAMBDA.mul(&SymbolicDegree::A);
    let l2 = SymbolicDegree::LAMBDA.mul(&SymbolicDegree::LAMBDA);
    let mut entries = Vec::with_capacity(d + 1);
    for p in 0..=d {
        let s = if p == 0 || p == d {
            SymbolicDegree::ONE
        } else if p == 1 || p == d - 1 {
            SymbolicDegree::LAMBDA
        } else if p == 2 || p == d - 2 {
            al
        } else {
            l2
        };
        entries.push(ProfileEntry { p, value: sym(s) });
    }
    Ok(DynDegProfile {
        entries,
        basis: "cited first dynamical degree interval [291, 669] and certified degree-9 root"
            .into(),
    })
}

/// Product-law merge: `λ_l(f × g) = max_{p+q=l} λ_p(f)·λ_q(g)`.
///
/// For symbolic profiles the max is decided by cancelling common symbol
/// powers and comparing the outward-rounded intervals of what remains; an
/// overlap between *distinct* residual symbols is reported as ambiguous
/// rather than guessed.
pub fn max_merge_profile(
    f: &DynDegProfile,
    g: &DynDegProfile,
) -> Result<DynDegProfile, DynDegError> {
    let (sf, sg) = match (f.symbols(), g.symbols()) {
        (Some(a), Some(b)) => (a, b),
        _ => return merge_numeric(f, g),
    };
    let a_cert = root_a()?;
    let a = a_cert.interval();
    let lambda = Interval::new(291.0, 669.0);
    let n1 = f.dim();
    let n2 = g.dim();
    let mut entries = Vec::with_capacity(n1 + n2 + 1);
    for l in 0..=(n1 + n2) {
        let mut best: Option<SymbolicDegree> = None;
        for p in l.saturating_sub(n2)..=l.min(n1) {
            let q = l - p;
            let cand = sf[p].mul(&sg[q]);
            best = Some(match best {
                None => cand,
                Some(b) => symbolic_max(b, cand, &lambda, &a)?,
            });
        }
        let s = best.expect("nonempty range");
        entries.push(ProfileEntry {
            p: l,
            value: DegreeValue::CitedSymbol {
                symbol: s,
                interval: s.interval(&lambda, &a),
            },
        });
    }
    Ok(DynDegProfile {
        entries,
        basis: format!("product-law merge of [{}] and [{}]", f.basis, g.basis),
    })
}

fn symbolic_max(
    x: SymbolicDegree,
    y: SymbolicDegree,
    lambda: &Interval,
    a: &Interval,
) -> Result<SymbolicDegree, DynDegError> {
    if x == y {
        return Ok(x);
    }
    // Cancel common powers, then compare residual intervals.
    let cl = x.lambda_pow.min(y.lambda_pow);
    let ca = x.a_pow.min(y.a_pow);
    let rx = SymbolicDegree {
        lambda_pow: x.lambda_pow - cl,
        a_pow: x.a_pow - ca,
    };
    let ry = SymbolicDegree {
        lambda_pow: y.lambda_pow - cl,
        a_pow: y.a_pow - ca,
    };
    let ix = rx.interval(lambda, a);
    let iy = ry.interval(lambda, a);
    if ix.strictly_above(&iy) {
        Ok(x)
    } else if iy.strictly_above(&ix) {
        Ok(y)
    } else {
        Err(DynDegError::AmbiguousMax(rx.to_string(), ry.to_string()))
    }
}

fn merge_numeric(f: &DynDegProfile, g: &DynDegProfile) -> Result<DynDegProfile, DynDegError> {
    let n1 = f.dim();
    let n2 = g.dim();
    let iv_f: Vec<Interval> = f.entries.iter().map(|e| e.value.interval()).collect();
    let iv_g: Vec<Interval> = g.entries.iter().map(|e| e.value.interval()).collect();
    let vf = f.values();
    let vg = g.values();
    let mut entries = Vec::with_capacity(n1 + n2 + 1);
    for l in 0..=(n1 + n2) {
        let mut best = 0.0f64;
        let mut best_iv = Interval::ONE;
        for p in l.saturating_sub(n2)..=l.min(n1) {
            let q = l - p;
            let v = vf[p] * vg[q];
            if v > best {
                best = v;
                best_iv = iv_f[p].mul(&iv_g[q]);
            }
        }
        entries.push(ProfileEntry {
            p: l,
            value: DegreeValue::ExactMonomial {
                value: best,
                rel_error: if best_iv.lo > 0.0 {
                    (best_iv.width() / best_iv.lo).max(f64::EPSILON)
                } else {
                    f64::EPSILON
                },
            },
        });
    }
    Ok(DynDegProfile {
        entries,
        basis: format!("numeric product-law merge of [{}] and [{}]", f.basis, g.basis),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn syms(p: &DynDegProfile) -> Vec<String> {
        p.symbols()
            .unwrap()
            .iter()
            .map(|s| s.to_string())
            .collect()
    }

    #[test]
    fn tower_profile_dimension_six() {
        let p = tower_profile(6).unwrap();
        assert_eq!(
            syms(&p),
            vec!["1", "λ", "a·λ", "λ^2", "a·λ", "λ", "1"]
        );
        assert!(p.is_symbolic_palindrome());
    }

    #[test]
    fn tower_profile_plateau_length() {
        let p = tower_profile(7).unwrap();
        assert_eq!(
            syms(&p),
            vec!["1", "λ", "a·λ", "λ^2", "λ^2", "a·λ", "λ", "1"]
        );
        let p10 = tower_profile(10).unwrap();
        // plateau from position 3 to d−3 = 7: length d−5 = 5
        let s = p10.symbols().unwrap();
        for i in 3..=7 {
            assert_eq!(s[i], SymbolicDegree { lambda_pow: 2, a_pow: 0 });
        }
        assert!(p10.is_symbolic_palindrome());
    }

    #[test]
    fn tower_profile_rejects_small_dimension() {
        assert!(matches!(
            tower_profile(5),
            Err(DynDegError::DimensionTooSmall(5))
        ));
    }

    #[test]
    fn interval_for_a_lambda_product() {
        let p = tower_profile(6).unwrap();
        let iv = p.entries[2].value.interval();
        // a·λ lands between 291·174.66 and 669·174.67.
        assert!(iv.lo > 5.0e4 && iv.hi < 1.17e5, "{iv:?}");
    }

    #[test]
    fn merge_of_psi_profiles_reproduces_six_list() {
        // Profile (1, λ, a, 1) merged with its reverse (1, a, λ, 1).
        let a_cert = root_a().unwrap();
        let a = a_cert.interval();
        let lambda = Interval::new(291.0, 669.0);
        let mk = |sym: SymbolicDegree| DegreeValue::CitedSymbol {
            symbol: sym,
            interval: sym.interval(&lambda, &a),
        };
        let fwd = DynDegProfile {
            entries: [
                SymbolicDegree::ONE,
                SymbolicDegree::LAMBDA,
                SymbolicDegree::A,
                SymbolicDegree::ONE,
            ]
            .iter()
            .enumerate()
            .map(|(p, s)| ProfileEntry { p, value: mk(*s) })
            .collect(),
            basis: "reference".into(),
        };
        let rev = DynDegProfile {
            entries: [
                SymbolicDegree::ONE,
                SymbolicDegree::A,
                SymbolicDegree::LAMBDA,
                SymbolicDegree::ONE,
            ]
            .iter()
            .enumerate()
            .map(|(p, s)| ProfileEntry { p, value: mk(*s) })
            .collect(),
            basis: "reverse".into(),
        };
        let merged = max_merge_profile(&fwd, &rev).unwrap();
        assert_eq!(
            syms(&merged),
            vec!["1", "λ", "a·λ", "λ^2", "a·λ", "λ", "1"]
        );
        assert_eq!(
            merged.symbols().unwrap(),
            tower_profile(6).unwrap().symbols().unwrap()
        );
    }

    #[test]
    fn merge_with_identity_is_running_max() {
        for d in 6..=12 {
            let p = tower_profile(d).unwrap();
            let merged = max_merge_profile(&p, &identity_profile(1)).unwrap();
            let s = p.symbols().unwrap();
            let m = merged.symbols().unwrap();
            assert_eq!(m.len(), d + 2);
            let a_cert = root_a().unwrap();
            let a = a_cert.interval();
            let lambda = Interval::new(291.0, 669.0);
            for l in 0..=(d + 1) {
                let expect = if l == 0 {
                    s[0]
                } else if l > d {
                    s[d]
                } else {
                    symbolic_max(s[l - 1], s[l], &lambda, &a).unwrap()
                };
                assert_eq!(m[l], expect, "position {l} for d = {d}");
            }
        }
    }

    #[test]
    fn repeated_identity_merge_extends_plateau() {
        let base = tower_profile(6).unwrap();
        let once = max_merge_profile(&base, &identity_profile(1)).unwrap();
        let twice = max_merge_profile(&once, &identity_profile(1)).unwrap();
        assert_eq!(
            twice.symbols().unwrap(),
            tower_profile(8).unwrap().symbols().unwrap()
        );
    }

    #[test]
    fn all_ones_merge() {
        let merged =
            max_merge_profile(&identity_profile(2), &identity_profile(2)).unwrap();
        assert!(merged
            .symbols()
            .unwrap()
            .iter()
            .all(|s| *s == SymbolicDegree::ONE));
    }
}
