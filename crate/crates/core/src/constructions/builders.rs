//! The concrete builders.

use super::bmatrix::alternating_sign_matrix;
use super::named::NamedConstruction;
use super::BuildError;
use crate::dyndeg::tower_profile;
use crate::limits::Limits;
use crate::monomial::{
    clearing_degree, linear_map, spectral_radius, to_projective, random_unimodular, IntMatrix,
    RandomMatrixSpec,
};
use crate::polyring::{BlockShape, Polynomial};
use crate::projmap::{MapExpr, RationalMap};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Exponent matrix of the published variant with the larger first dynamical
/// degree (CLI variant id `sug24`).
pub fn sug_variant_a() -> IntMatrix {
    IntMatrix::from_i64(&[&[56, -19, -17], &[-16, 6, 5], &[207, -71, -63]]).unwrap()
}

/// Exponent matrix of the earlier published variant (CLI variant id `bdjk`).
pub fn bdjk_variant_a() -> IntMatrix {
    IntMatrix::from_i64(&[&[-3, -14, -12], &[4, 11, 6], &[-2, -4, -1]]).unwrap()
}

/// Seeded toy exponent matrix: unimodular 3×3 with entries in [−2, 2],
/// spectral radius below 3 and small clearing degrees in both directions, so
/// the full pipeline stays comfortably under the guards.
pub fn toy_exponent_matrix(seed: u64) -> IntMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let spec = RandomMatrixSpec::new(3, 2);
    loop {
        let a = random_unimodular(&spec, &mut rng);
        let deg = clearing_degree(&a);
        if deg < 2 || deg > 4 {
            continue;
        }
        let inv = match a.inverse_unimodular() {
            Ok(inv) => inv,
            Err(_) => continue,
        };
        if clearing_degree(&inv) > 6 {
            continue;
        }
        match spectral_radius(&a) {
            Ok(est) if est.value < 3.0 => return a,
            _ => continue,
        }
    }
}

/// The standard degree-`n` involution of `P^n` (the cleared inverse map on
/// coordinates).
pub fn cremona_involution(n: usize, limits: &Limits) -> Result<RationalMap, BuildError> {
    Ok(to_projective(&IntMatrix::neg_identity(n), limits)?)
}

/// The identity as a trivially certified named construction.
pub fn identity_construction(shape: &BlockShape, limits: &Limits) -> Result<NamedConstruction, BuildError> {
    let id = RationalMap::identity(shape);
    NamedConstruction::certified(
        format!("identity-{:?}", shape.blocks()),
        id.clone(),
        MapExpr::Atom(id.clone()),
        MapExpr::Atom(id.clone()),
        Some(id),
        "identity map",
        limits,
    )
}

/// Twisted involution family: `f = L_{B⁻¹} ∘ h_{−I} ∘ L_B ∘ h_A` for a
/// unimodular exponent matrix `A` of size `d`, with the alternating-sign
/// change of coordinates `B` of size `d+1`.
///
/// The inverse comes in closed form, `h_{A⁻¹} ∘ L_{B⁻¹} ∘ h_{−I} ∘ L_B`
/// (every factor has a closed-form inverse and the involution is its own),
/// and the certificate telescopes over the factor pairs. The expanded
/// inverse is only materialized when its clearing degree stays small.
pub fn bdjk_map(
    a: &IntMatrix,
    name: impl Into<String>,
    limits: &Limits,
) -> Result<NamedConstruction, BuildError> {
    let name = name.into();
    let d = a.dim();
    let det = a.det();
    if !det.abs().is_one() {
        return Err(BuildError::NotUnimodular {
            det: det.to_string(),
        });
    }
    let b = alternating_sign_matrix(d + 1);
    if b.det().is_zero() {
        return Err(BuildError::SingularChange { size: d + 1 });
    }
    // Projectively, L_{B⁻¹} is the linear map of the adjugate.
    let b_adj = b.adjugate();

    let h_a = to_projective(a, limits)?;
    let h_a_inv = to_projective(&a.inverse_unimodular()?, limits)?;
    let l_b = linear_map(&b, limits)?;
    let l_b_inv = linear_map(&b_adj, limits)?;
    let invol = cremona_involution(d, limits)?;

    // Application order: h_A, then L_B, then the involution, then L_{B⁻¹}.
    let forward = MapExpr::Chain(vec![
        MapExpr::Atom(h_a),
        MapExpr::Atom(l_b.clone()),
        MapExpr::Atom(invol.clone()),
        MapExpr::Atom(l_b_inv.clone()),
    ]);
    // Inverse application order: L_B, involution, L_{B⁻¹}, then h_{A⁻¹}.
    let inverse = MapExpr::Chain(vec![
        MapExpr::Atom(l_b),
        MapExpr::Atom(invol),
        MapExpr::Atom(l_b_inv),
        MapExpr::Atom(h_a_inv),
    ]);

    let map = forward.collapse(limits)?;
    let inverse_map = if clearing_degree(&a.inverse_unimodular()?) <= 16 {
        inverse.collapse(limits).ok()
    } else {
        None
    };
    NamedConstruction::certified(
        name,
        map,
        forward,
        inverse,
        inverse_map,
        format!(
            "twisted involution on P^{d}: inverse alternating-sign change \
             ∘ standard involution ∘ alternating-sign change ∘ monomial map; \
             closed-form inverse"
        ),
        limits,
    )
}

/// The slice correspondence `P³×P³ ⇢ P⁶`:
/// `([x], [y]) ↦ [x₀y₀ : x₁y₀ : x₂y₀ : x₃y₀ : x₃y₁ : x₃y₂ : x₃y₃]`,
/// with inverse `[z] ↦ ([z₀:z₁:z₂:z₃], [z₃:z₄:z₅:z₆])`.
pub fn segre_slice_phi(limits: &Limits) -> Result<NamedConstruction, BuildError> {
    let src = BlockShape::new(vec![4, 4]).expect("static shape");
    let dst = BlockShape::projective(6);
    let var = |coord: usize| Polynomial::variable(src.clone(), coord);
    let pair = |i: usize, j: usize| {
        var(i)
            .mul(&var(4 + j), limits)
            .expect("monomial product under guards")
    };
    let comps = vec![
        pair(0, 0),
        pair(1, 0),
        pair(2, 0),
        pair(3, 0),
        pair(3, 1),
        pair(3, 2),
        pair(3, 3),
    ];
    let phi = RationalMap::new(src.clone(), dst.clone(), vec![comps], limits)?;

    let zvar = |i: usize| Polynomial::variable(dst.clone(), i);
    let phi_inv = RationalMap::new(
        dst.clone(),
        src,
        vec![
            vec![zvar(0), zvar(1), zvar(2), zvar(3)],
            vec![zvar(3), zvar(4), zvar(5), zvar(6)],
        ],
        limits,
    )?;
    NamedConstruction::certified(
        "segre-slice",
        phi.clone(),
        MapExpr::Atom(phi),
        MapExpr::Atom(phi_inv.clone()),
        Some(phi_inv),
        "graph slice of the bilinear embedding of P³×P³, restricted to the \
         seven coordinates x_i·y_0 and x_3·y_j",
        limits,
    )
}

/// The dimension step `P^{n₀}×P¹ ⇢ P^{n₀+1}`:
/// `([x], [y]) ↦ [x₀y₀ : … : x_{n₀}y₀ : x_{n₀}y₁]`, with inverse
/// `[z] ↦ ([z₀:…:z_{n₀}], [z_{n₀}:z_{n₀+1}])`.
pub fn step_map_h(n0: usize, limits: &Limits) -> Result<NamedConstruction, BuildError> {
    assert!(n0 >= 1, "step map needs n0 >= 1");
    let src = BlockShape::new(vec![n0 + 1, 2]).expect("static shape");
    let dst = BlockShape::projective(n0 + 1);
    let var = |coord: usize| Polynomial::variable(src.clone(), coord);
    let mut comps = Vec::with_capacity(n0 + 2);
    for i in 0..=n0 {
        comps.push(var(i).mul(&var(n0 + 1), limits)?);
    }
    comps.push(var(n0).mul(&var(n0 + 2), limits)?);
    let h = RationalMap::new(src.clone(), dst.clone(), vec![comps], limits)?;

    let zvar = |i: usize| Polynomial::variable(dst.clone(), i);
    let h_inv = RationalMap::new(
        dst.clone(),
        src,
        vec![
            (0..=n0).map(zvar).collect(),
            vec![zvar(n0), zvar(n0 + 1)],
        ],
        limits,
    )?;
    NamedConstruction::certified(
        format!("step-h-{n0}"),
        h.clone(),
        MapExpr::Atom(h),
        MapExpr::Atom(h_inv.clone()),
        Some(h_inv),
        format!("dimension-raising slice P^{n0}×P¹ ⇢ P^{}", n0 + 1),
        limits,
    )
}

/// Product `f × g` with inverse `f⁻¹ × g⁻¹`, certified blockwise.
pub fn product_construction(
    f: &NamedConstruction,
    g: &NamedConstruction,
    name: impl Into<String>,
    limits: &Limits,
) -> Result<NamedConstruction, BuildError> {
    let map = f.map.product(&g.map)?;
    let forward = MapExpr::Product(vec![f.forward.clone(), g.forward.clone()]);
    let inverse = MapExpr::Product(vec![f.inverse.clone(), g.inverse.clone()]);
    let inverse_map = match (&f.inverse_map, &g.inverse_map) {
        (Some(fi), Some(gi)) => Some(fi.product(gi)?),
        _ => None,
    };
    NamedConstruction::certified(
        name,
        map,
        forward,
        inverse,
        inverse_map,
        format!("product of {} and {}", f.name, g.name),
        limits,
    )
}

/// Conjugation `φ ∘ g ∘ φ⁻¹`, with the inverse `φ ∘ g⁻¹ ∘ φ⁻¹`.
pub fn conjugate(
    g: &NamedConstruction,
    phi: &NamedConstruction,
    name: impl Into<String>,
    limits: &Limits,
) -> Result<NamedConstruction, BuildError> {
    let forward = MapExpr::Chain(vec![
        phi.inverse.clone(),
        g.forward.clone(),
        phi.forward.clone(),
    ]);
    let inverse = MapExpr::Chain(vec![
        phi.inverse.clone(),
        g.inverse.clone(),
        phi.forward.clone(),
    ]);
    let map = forward.collapse(limits)?;
    let inverse_map = inverse.collapse(limits).ok();
    NamedConstruction::certified(
        name,
        map,
        forward,
        inverse,
        inverse_map,
        format!("{} conjugated through {}", g.name, phi.name),
        limits,
    )
}

/// Raise a self-map of `P^{d0}` to `P^d` one dimension at a time:
/// `g ↦ h ∘ (g × id) ∘ h⁻¹` through the step maps. Every intermediate
/// construction is certified; the final one carries the expected symbolic
/// profile when `d ≥ 6`.
pub fn tower(
    base: &NamedConstruction,
    d: usize,
    limits: &Limits,
) -> Result<NamedConstruction, BuildError> {
    if base.map.source().num_blocks() != 1 || !base.map.is_self_map() {
        return Err(BuildError::Map(crate::projmap::MapError::NotSelfMap));
    }
    let d0 = base.map.source().blocks()[0] - 1;
    if d < d0 {
        return Err(BuildError::TowerBelowBase { target: d, base: d0 });
    }
    let id1 = RationalMap::identity(&BlockShape::projective(1));
    let mut current = base.clone();
    for k in d0..d {
        let h = step_map_h(k, limits)
            .map_err(|e| BuildError::TowerStep { dim: k + 1, cause: e.to_string() })?;
        let h_inv_atom = MapExpr::Atom(h.inverse_map.clone().expect("step inverse is expanded"));
        let forward = MapExpr::Chain(vec![
            h_inv_atom.clone(),
            MapExpr::Product(vec![current.forward.clone(), MapExpr::Atom(id1.clone())]),
            MapExpr::Atom(h.map.clone()),
        ]);
        let inverse = MapExpr::Chain(vec![
            h_inv_atom,
            MapExpr::Product(vec![current.inverse.clone(), MapExpr::Atom(id1.clone())]),
            MapExpr::Atom(h.map.clone()),
        ]);
        let map = forward
            .collapse(limits)
            .map_err(|e| BuildError::TowerStep { dim: k + 1, cause: e.to_string() })?;
        let inverse_map = inverse.collapse(limits).ok();
        current = NamedConstruction::certified(
            format!("tower-{}-of-{}", k + 1, base.name),
            map,
            forward,
            inverse,
            inverse_map,
            format!("dimension tower over {} at P^{}", base.name, k + 1),
            limits,
        )
        .map_err(|e| BuildError::TowerStep { dim: k + 1, cause: e.to_string() })?;
    }
    if d >= 6 {
        current = current.with_profile(tower_profile(d)?);
    }
    Ok(current)
}
