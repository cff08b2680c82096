//! From integer matrices to rational maps of projective space.

use super::matrix::IntMatrix;
use super::MatrixError;
use crate::limits::Limits;
use crate::polyring::{BlockShape, Monomial, Polynomial};
use crate::projmap::RationalMap;
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

/// Shifted exponent rows of the clearing construction for an `n×n` matrix
/// acting on the torus of `P^n`: the zero row for coordinate 0 plus the rows
/// of `M`, all shifted by the columnwise minimum, then padded with powers of
/// `x₀` to the common total degree `D` = max shifted row sum.
///
/// Returns `(rows, degree)` where each row has `n+1` entries (the `x₀`
/// exponent first). Because the shift puts a zero in every column, the
/// resulting monomial map is already reduced.
fn clearing_rows(m: &IntMatrix) -> (Vec<Vec<u64>>, u64) {
    let n = m.dim();
    // Column minima over the rows of M and the implicit zero row.
    let mins: Vec<BigInt> = (0..n)
        .map(|j| {
            let mut min = BigInt::zero();
            for i in 0..n {
                if m.entry(i, j) < &min {
                    min = m.entry(i, j).clone();
                }
            }
            min
        })
        .collect();
    let mut shifted: Vec<Vec<u64>> = Vec::with_capacity(n + 1);
    // Row for coordinate 0 (the constant component 1 before clearing).
    shifted.push(
        mins.iter()
            .map(|mn| (-mn).to_u64().expect("nonnegative shift"))
            .collect(),
    );
    for i in 0..n {
        shifted.push(
            (0..n)
                .map(|j| {
                    (m.entry(i, j) - &mins[j])
                        .to_u64()
                        .expect("nonnegative after shift")
                })
                .collect(),
        );
    }
    let degree = shifted
        .iter()
        .map(|r| r.iter().sum::<u64>())
        .max()
        .expect("nonempty");
    let rows = shifted
        .into_iter()
        .map(|r| {
            let pad = degree - r.iter().sum::<u64>();
            let mut row = Vec::with_capacity(n + 1);
            row.push(pad);
            row.extend(r);
            row
        })
        .collect();
    (rows, degree)
}

/// Degree of the monomial self-map of `P^n` obtained by clearing `M`.
/// Cheap oracle used by degree-growth checks: no polynomials are built.
pub fn clearing_degree(m: &IntMatrix) -> u64 {
    clearing_rows(m).1
}

/// Clearing degree without any size cap, for matrix powers whose degrees
/// exceed machine integers.
pub fn clearing_degree_big(m: &IntMatrix) -> BigInt {
    let n = m.dim();
    let mut mins = vec![BigInt::zero(); n];
    for j in 0..n {
        for i in 0..n {
            if m.entry(i, j) < &mins[j] {
                mins[j] = m.entry(i, j).clone();
            }
        }
    }
    // The zero row shifts to the negated column minima.
    let mut best = -mins.iter().fold(BigInt::zero(), |acc, v| acc + v);
    for i in 0..n {
        let mut s = BigInt::zero();
        for j in 0..n {
            s += m.entry(i, j) - &mins[j];
        }
        if s > best {
            best = s;
        }
    }
    best
}

/// The monomial self-map of `P^n` determined by `M` (the torus map
/// `t ↦ t^M` with denominators cleared), in canonical reduced form.
pub fn to_projective(m: &IntMatrix, limits: &Limits) -> Result<RationalMap, MatrixError> {
    if m.det().is_zero() {
        return Err(MatrixError::Singular);
    }
    let n = m.dim();
    let shape = BlockShape::projective(n);
    let (rows, degree) = clearing_rows(m);
    if degree > limits.max_degree as u64 {
        return Err(MatrixError::Poly(crate::polyring::PolyError::DegreeLimit {
            limit: limits.max_degree,
            attempted: degree,
        }));
    }
    let mut comps = Vec::with_capacity(n + 1);
    for row in rows {
        let exps: Vec<u32> = row
            .iter()
            .map(|&e| u32::try_from(e).expect("under degree guard"))
            .collect();
        comps.push(Polynomial::from_monomial(
            shape.clone(),
            Monomial::new(exps),
            BigInt::from(1),
        )?);
    }
    Ok(RationalMap::new(
        shape.clone(),
        shape,
        vec![comps],
        limits,
    )?)
}

/// The projective linear map of `P^d` with matrix `L` (size `d+1`):
/// coordinate `i` maps to `Σ_j L_{ij} x_j`. Requires `det(L) ≠ 0`.
pub fn linear_map(l: &IntMatrix, limits: &Limits) -> Result<RationalMap, MatrixError> {
    if l.det().is_zero() {
        return Err(MatrixError::Singular);
    }
    let k = l.dim();
    let shape = BlockShape::projective(k - 1);
    let mut comps = Vec::with_capacity(k);
    for i in 0..k {
        let terms = (0..k)
            .filter(|&j| !l.entry(i, j).is_zero())
            .map(|j| {
                (
                    Monomial::variable(k, j),
                    l.entry(i, j).clone(),
                )
            })
            .collect();
        comps.push(Polynomial::from_terms(shape.clone(), terms)?);
    }
    Ok(RationalMap::new(
        shape.clone(),
        shape,
        vec![comps],
        limits,
    )?)
}
