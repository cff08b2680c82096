//! Identity checkers on the exactly computable monomial family.
//!
//! All three laws — duality under inversion, invariance under conjugation,
//! and the max-product rule for products — are checked through the monomial
//! oracle: both sides of each identity are computed from *different*
//! matrices by the same spectral primitive, so agreement is a genuine
//! cross-check and not a tautology.

use super::DynDegError;
use crate::monomial::{lambda_profile, spectral_radius, IntMatrix, MatrixError};
use num_traits::{One, Signed};
use serde::Serialize;

/// One compared value.
#[derive(Clone, Debug, Serialize)]
pub struct CheckRow {
    pub index: usize,
    pub lhs: f64,
    pub rhs: f64,
    pub rel_err: f64,
    pub tol: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub inputs: String,
    pub rows: Vec<CheckRow>,
    pub pass: bool,
    /// What the numbers rest on.
    pub basis: String,
}

fn row(index: usize, lhs: f64, rhs: f64, tol: f64) -> CheckRow {
    let scale = lhs.abs().max(rhs.abs()).max(1e-300);
    let rel_err = (lhs - rhs).abs() / scale;
    CheckRow {
        index,
        lhs,
        rhs,
        rel_err,
        tol,
        pass: rel_err <= tol,
    }
}

const ORACLE_BASIS: &str =
    "dynamical degrees of monomial maps via exterior-power spectral radii (external oracle)";

/// Duality: `λ_p(M) = λ_{n−p}(M⁻¹)` for unimodular `M`.
pub fn check_duality(m: &IntMatrix, tol: f64) -> Result<CheckReport, DynDegError> {
    let det = m.det();
    if !det.abs().is_one() {
        return Err(DynDegError::Matrix(MatrixError::NotUnimodular {
            det: det.to_string(),
        }));
    }
    let n = m.dim();
    let inv = m.inverse_unimodular()?;
    let fwd = lambda_profile(m)?;
    let bwd = lambda_profile(&inv)?;
    let rows: Vec<CheckRow> = (0..=n)
        .map(|p| row(p, fwd[p].value, bwd[n - p].value, tol))
        .collect();
    Ok(CheckReport {
        name: "duality".into(),
        inputs: format!("{}×{} unimodular matrix", n, n),
        pass: rows.iter().all(|r| r.pass),
        rows,
        basis: ORACLE_BASIS.into(),
    })
}

/// Product: `ρ(Λ^l (M₁ ⊕ M₂)) = max_{p+q=l} λ_p(M₁)·λ_q(M₂)`.
///
/// The left side works on the exterior powers of the direct sum itself; the
/// right side combines the small factors' profiles.
pub fn check_product(
    m1: &IntMatrix,
    m2: &IntMatrix,
    tol: f64,
) -> Result<CheckReport, DynDegError> {
    let (n1, n2) = (m1.dim(), m2.dim());
    let sum = m1.direct_sum(m2);
    let p1 = lambda_profile(m1)?;
    let p2 = lambda_profile(m2)?;
    let mut rows = Vec::with_capacity(n1 + n2 + 1);
    for l in 0..=(n1 + n2) {
        let lhs = spectral_radius(&sum.exterior_power(l)?)?.value;
        let mut rhs = 0.0f64;
        for p in l.saturating_sub(n2)..=l.min(n1) {
            rhs = rhs.max(p1[p].value * p2[l - p].value);
        }
        rows.push(row(l, lhs, rhs, tol));
    }
    Ok(CheckReport {
        name: "product".into(),
        inputs: format!("direct sum of {}×{} and {}×{}", n1, n1, n2, n2),
        pass: rows.iter().all(|r| r.pass),
        rows,
        basis: ORACLE_BASIS.into(),
    })
}

/// Conjugacy: `ρ(Λ^p (C M C⁻¹)) = ρ(Λ^p M)` for unimodular `C`.
pub fn check_conjugacy(
    m: &IntMatrix,
    c: &IntMatrix,
    tol: f64,
) -> Result<CheckReport, DynDegError> {
    let det = c.det();
    if !det.abs().is_one() {
        return Err(DynDegError::Matrix(MatrixError::NotUnimodular {
            det: det.to_string(),
        }));
    }
    let n = m.dim();
    let conj = c.mul(m).mul(&c.inverse_unimodular()?);
    let base = lambda_profile(m)?;
    let twisted = lambda_profile(&conj)?;
    let rows: Vec<CheckRow> = (0..=n)
        .map(|p| row(p, twisted[p].value, base[p].value, tol))
        .collect();
    Ok(CheckReport {
        name: "conjugacy".into(),
        inputs: format!("{}×{} matrix conjugated by a unimodular change of basis", n, n),
        pass: rows.iter().all(|r| r.pass),
        rows,
        basis: ORACLE_BASIS.into(),
    })
}

/// Degree growth vs the spectral oracle for a single matrix.
#[derive(Clone, Debug, Serialize)]
pub struct GrowthReport {
    pub rho: f64,
    /// Largest iterate used.
    pub used_n: u32,
    /// `ln deg(M^n)` at that iterate.
    pub ln_degree: f64,
    /// Fekete estimate `min_k deg(M^k)^{1/k}` over the computed range.
    pub estimate: f64,
    pub rel_err: f64,
    pub tol: f64,
    pub pass: bool,
}

/// Compare the degree-sequence estimate of the first dynamical degree with
/// `ρ(M)`.
///
/// Degrees of the reduced iterates come from the clearing formula on `Mⁿ`
/// directly (composition tests pin this equal to symbolic iteration), so the
/// feasible range of `n` is limited only by `max_ln_degree` and `max_n`, not
/// by polynomial expansion. The estimate is the running Fekete upper bound
/// `min_k deg^{1/k}`, which converges to the first dynamical degree from
/// above; at one-step degrees around `e^280` the constant-factor bias is a
/// couple of percent at worst.
pub fn check_oracle_growth(
    m: &IntMatrix,
    max_ln_degree: f64,
    max_n: u32,
    tol: f64,
) -> Result<GrowthReport, DynDegError> {
    let rho = spectral_radius(m)?.value;
    let mut power = m.clone();
    let mut best = f64::INFINITY;
    let mut used_n = 0u32;
    let mut used_ln = 0.0f64;
    for n in 1..=max_n {
        let d = crate::monomial::clearing_degree_big(&power);
        let ln_d = big_ln(&d);
        let root = (ln_d / n as f64).exp();
        if root < best {
            best = root;
        }
        used_n = n;
        used_ln = ln_d;
        if ln_d > max_ln_degree {
            break;
        }
        if n < max_n {
            power = power.mul(m);
        }
    }
    let best = best.max(1.0);
    let rel_err = (best - rho).abs() / rho.max(1e-300);
    Ok(GrowthReport {
        rho,
        used_n,
        ln_degree: used_ln,
        estimate: best,
        rel_err,
        tol,
        pass: rel_err <= tol,
    })
}

/// Natural log of a positive big integer (degree-scale approximation).
fn big_ln(v: &num_bigint::BigInt) -> f64 {
    use num_traits::ToPrimitive;
    let bits = v.bits();
    if bits <= 52 {
        return v.to_f64().unwrap_or(1.0).max(1.0).ln();
    }
    let top = (v >> (bits - 52)).to_f64().unwrap_or(1.0);
    top.ln() + ((bits - 52) as f64) * std::f64::consts::LN_2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::{random_unimodular, RandomMatrixSpec};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64(rows).unwrap()
    }

    #[test]
    fn duality_hand_example() {
        let rep = check_duality(&m(&[&[2, 1, 0], &[1, 1, 0], &[0, 0, 1]]), 1e-6).unwrap();
        assert!(rep.pass, "{rep:?}");
        let phi2 = (3.0 + 5.0f64.sqrt()) / 2.0;
        assert!((rep.rows[1].lhs - phi2).abs() < 1e-9);
        assert!((rep.rows[1].rhs - phi2).abs() < 1e-9);
    }

    #[test]
    fn duality_identity_trivial() {
        let rep = check_duality(&IntMatrix::identity(4), 1e-9).unwrap();
        assert!(rep.pass);
        assert!(rep.rows.iter().all(|r| (r.lhs - 1.0).abs() < 1e-12));
    }

    #[test]
    fn product_square_of_golden() {
        let f = m(&[&[2, 1], &[1, 1]]);
        let rep = check_product(&f, &f, 1e-6).unwrap();
        assert!(rep.pass, "{rep:?}");
        let phi4 = ((3.0 + 5.0f64.sqrt()) / 2.0).powi(2);
        assert!((rep.rows[2].lhs - phi4).abs() < 1e-6 * phi4, "{rep:?}");
    }

    #[test]
    fn product_with_identity_factor() {
        let f = m(&[&[2, 1], &[1, 1]]);
        let rep = check_product(&IntMatrix::identity(2), &f, 1e-6).unwrap();
        assert!(rep.pass, "{rep:?}");
    }

    #[test]
    fn conjugacy_by_permutation_and_shear() {
        let f = m(&[&[2, 1], &[1, 1]]);
        let perm = m(&[&[0, 1], &[1, 0]]);
        assert!(check_conjugacy(&f, &perm, 1e-9).unwrap().pass);
        let shear = m(&[&[1, 1], &[0, 1]]);
        assert!(check_conjugacy(&f, &shear, 1e-9).unwrap().pass);
    }

    #[test]
    fn random_identity_spot_checks() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let spec = RandomMatrixSpec::new(3, 5);
        for _ in 0..10 {
            let a = random_unimodular(&spec, &mut rng);
            let b = random_unimodular(&spec, &mut rng);
            assert!(check_duality(&a, 1e-6).unwrap().pass, "{a:?}");
            assert!(check_product(&a, &b, 1e-6).unwrap().pass);
            assert!(check_conjugacy(&a, &b, 1e-6).unwrap().pass);
        }
    }

    #[test]
    fn growth_tracks_spectral_radius() {
        let rep = check_oracle_growth(&m(&[&[2, 1], &[1, 1]]), 280.0, 600, 0.05).unwrap();
        assert!(rep.pass, "{rep:?}");
        assert!(rep.estimate >= rep.rho * (1.0 - 1e-9));
    }

    #[test]
    fn growth_handles_periodic_matrices() {
        // Finite-order behavior: degrees cycle, the Fekete bound hits 1.
        let rep = check_oracle_growth(
            &m(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]),
            280.0,
            600,
            0.05,
        )
        .unwrap();
        assert!(rep.pass, "{rep:?}");
        assert!((rep.estimate - 1.0).abs() < 1e-12);
    }
}
