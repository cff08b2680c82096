//! Degree growth of iterates.
//!
//! The first dynamical degree of a self-map is the limit of
//! `deg(f^n)^{1/n}`, and by submultiplicativity every single value of
//! `deg(f^n)^{1/n}` bounds the limit from above. The sequence below records
//! the exact degrees of the *reduced* iterates together with those root
//! estimates and the running upper bound.

use super::{MapError, RationalMap};
use crate::limits::Limits;
use serde::Serialize;

/// Degrees of one iterate.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct DegreeEntry {
    pub n: u32,
    /// Multidegree per target block over the source blocks.
    pub multidegrees: Vec<Vec<u32>>,
    /// Total degree when source and target are single projective spaces.
    pub scalar: Option<u64>,
}

/// Why iteration stopped early.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct IterationStop {
    /// Last iterate that completed.
    pub last_n: u32,
    pub cause: String,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct DegreeSequence {
    pub entries: Vec<DegreeEntry>,
    /// `deg(f^n)^{1/n}` per entry (single-block self-maps only).
    pub roots: Vec<f64>,
    /// Running upper bound `min_n deg(f^n)^{1/n}` for the first dynamical
    /// degree; nonincreasing in the number of iterates.
    pub upper_bound: Option<f64>,
    /// Present when a guard tripped or a composition collapsed before
    /// `max_n`; entries up to `last_n` are still exact.
    pub stopped: Option<IterationStop>,
}

/// Degrees of the reduced iterates `f, f², …` up to `max_n`.
///
/// Iteration left-composes `f` with the previously reduced iterate, so
/// intermediate degrees never include uncancelled factors. A guard trip or
/// collapse is reported in `stopped` together with the partial results.
pub fn iterate_degrees(
    f: &RationalMap,
    max_n: u32,
    limits: &Limits,
) -> Result<DegreeSequence, MapError> {
    if !f.is_self_map() {
        return Err(MapError::NotSelfMap);
    }
    if max_n == 0 {
        return Err(MapError::BadDocument("max_n must be positive".into()));
    }
    let single = f.source().num_blocks() == 1;
    let mut entries = Vec::new();
    let mut roots = Vec::new();
    let mut upper: Option<f64> = None;
    let mut stopped = None;

    let mut current = f.clone();
    let mut n = 1u32;
    loop {
        let multidegrees = current.group_degrees()?;
        let scalar = current.scalar_degree();
        entries.push(DegreeEntry {
            n,
            multidegrees,
            scalar,
        });
        if single {
            if let Some(d) = scalar {
                let root = (d as f64).powf(1.0 / n as f64);
                roots.push(root);
                upper = Some(match upper {
                    None => root,
                    Some(u) => u.min(root),
                });
            }
        }
        if n == max_n {
            break;
        }
        match f.compose(&current, limits) {
            Ok(next) => current = next,
            Err(e) => {
                stopped = Some(IterationStop {
                    last_n: n,
                    cause: e.to_string(),
                });
                break;
            }
        }
        n += 1;
    }
    Ok(DegreeSequence {
        entries,
        roots,
        upper_bound: upper,
        stopped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{BlockShape, Polynomial};

    const L: Limits = Limits::DESK;

    fn involution(n: usize) -> RationalMap {
        let s = BlockShape::projective(n);
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
    fn involution_alternates_3_1() {
        let seq = iterate_degrees(&involution(3), 6, &L).unwrap();
        let degs: Vec<u64> = seq.entries.iter().map(|e| e.scalar.unwrap()).collect();
        assert_eq!(degs, vec![3, 1, 3, 1, 3, 1]);
        assert_eq!(seq.upper_bound, Some(1.0));
        assert!(seq.stopped.is_none());
    }

    #[test]
    fn identity_is_flat() {
        let id = RationalMap::identity(&BlockShape::projective(2));
        let seq = iterate_degrees(&id, 3, &L).unwrap();
        let degs: Vec<u64> = seq.entries.iter().map(|e| e.scalar.unwrap()).collect();
        assert_eq!(degs, vec![1, 1, 1]);
    }

    #[test]
    fn upper_bound_is_nonincreasing() {
        let seq = iterate_degrees(&involution(3), 5, &L).unwrap();
        let mut best = f64::INFINITY;
        for (i, r) in seq.roots.iter().enumerate() {
            best = best.min(*r);
            let partial = iterate_degrees(&involution(3), (i + 1) as u32, &L).unwrap();
            assert_eq!(partial.upper_bound, Some(best));
        }
    }

    #[test]
    fn guard_trip_reports_partial() {
        // A degree-2 map with a tiny degree ceiling stops early but keeps
        // the completed entries.
        let m = involution(2);
        let lim = Limits::new(1_000_000, 2);
        let seq = iterate_degrees(&m, 5, &lim).unwrap();
        assert!(seq.stopped.is_some());
        assert!(!seq.entries.is_empty());
    }
}
