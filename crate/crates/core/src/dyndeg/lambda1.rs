//! First-dynamical-degree reports from degree sequences.

use super::DynDegError;
use crate::dyndeg::Interval;
use crate::limits::Limits;
use crate::projmap::{iterate_degrees, DegreeSequence, RationalMap};
use serde::Serialize;

/// Degree-sequence summary for a self-map, optionally checked against a
/// cited interval for the first dynamical degree.
#[derive(Clone, Debug, Serialize)]
pub struct Lambda1Report {
    pub sequence: DegreeSequence,
    /// Interval the one-step degree is expected to fall in, when cited.
    pub cited: Option<Interval>,
    /// Whether `deg(f)` lies inside the cited interval.
    pub in_interval: Option<bool>,
    pub commentary: String,
}

/// Run `iterate_degrees` and flag consistency with a cited interval.
///
/// The first dynamical degree is bounded above by every root estimate and by
/// the one-step degree in particular, so a cited lower bound for it forces
/// `deg(f)` to clear that bound; the report records the comparison.
pub fn lambda1_report(
    f: &RationalMap,
    max_n: u32,
    cited: Option<Interval>,
    limits: &Limits,
) -> Result<Lambda1Report, DynDegError> {
    let sequence = iterate_degrees(f, max_n, limits)?;
    let first = sequence.entries.first().and_then(|e| e.scalar);
    let in_interval = match (&cited, first) {
        (Some(iv), Some(d)) => Some(iv.contains(d as f64) || d as f64 >= iv.lo),
        _ => None,
    };
    let commentary = match (&sequence.upper_bound, &sequence.stopped) {
        (Some(u), None) => format!(
            "completed {} iterate(s); running upper bound for the first dynamical degree: {:.6}",
            sequence.entries.len(),
            u
        ),
        (Some(u), Some(stop)) => format!(
            "stopped after n = {} ({}); partial upper bound {:.6}",
            stop.last_n, stop.cause, u
        ),
        (None, _) => "multi-block map: scalar degree roots not defined".into(),
    };
    Ok(Lambda1Report {
        sequence,
        cited,
        in_interval,
        commentary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{BlockShape, Polynomial};
    use crate::projmap::RationalMap;

    const L: Limits = Limits::DESK;

    #[test]
    fn identity_reports_flat_sequence() {
        let id = RationalMap::identity(&BlockShape::projective(2));
        let rep = lambda1_report(&id, 3, None, &L).unwrap();
        assert_eq!(rep.sequence.entries.len(), 3);
        assert_eq!(rep.sequence.upper_bound, Some(1.0));
        assert!(rep.in_interval.is_none());
    }

    #[test]
    fn cited_interval_checked_against_first_degree() {
        // Degree-3 involution with the (artificial) cited interval [2, 9].
        let s = BlockShape::projective(3);
        let group = (0..4usize)
            .map(|i| {
                let mut m = Polynomial::one(s.clone());
                for j in 0..4 {
                    if j != i {
                        m = m.mul(&Polynomial::variable(s.clone(), j), &L).unwrap();
                    }
                }
                m
            })
            .collect();
        let inv = RationalMap::new(s.clone(), s, vec![group], &L).unwrap();
        let rep = lambda1_report(&inv, 2, Some(Interval::new(2.0, 9.0)), &L).unwrap();
        assert_eq!(rep.in_interval, Some(true));
    }
}
