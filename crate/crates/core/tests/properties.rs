//! Randomized algebraic laws: ring axioms, gcd contracts, substitution
//! homomorphisms, composition laws and the spectral identities.

use cremona::dyndeg::{check_conjugacy, check_duality, check_oracle_growth, check_product};
use cremona::monomial::{
    lambda_profile, random_unimodular, to_projective, IntMatrix, RandomMatrixSpec,
};
use cremona::polyring::{gcd, BlockShape, Monomial, Polynomial};
use cremona::projmap::{iterate_degrees, RationalMap};
use cremona::Limits;
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const L: Limits = Limits::DESK;

fn shape2() -> BlockShape {
    BlockShape::new(vec![2]).unwrap()
}

fn shape22() -> BlockShape {
    BlockShape::new(vec![2, 2]).unwrap()
}

/// Strategy: a multihomogeneous polynomial over `shape` with the given
/// per-block degrees and up to `max_terms` terms.
fn poly_strategy(
    shape: BlockShape,
    degrees: Vec<u32>,
    max_terms: usize,
) -> impl Strategy<Value = Polynomial> {
    let blocks: Vec<usize> = shape.blocks().to_vec();
    let term = {
        let blocks = blocks.clone();
        let degrees = degrees.clone();
        // One monomial: for each block, distribute the block degree over the
        // coordinates by choosing a coordinate per degree unit.
        let picks: Vec<BoxedStrategy<Vec<usize>>> = blocks
            .iter()
            .zip(&degrees)
            .map(|(&k, &d)| proptest::collection::vec(0..k, d as usize).boxed())
            .collect();
        (picks, -9i64..=9)
    };
    proptest::collection::vec(term, 1..=max_terms)
        .prop_map(move |terms| {
            let n = shape.num_coords();
            let raw = terms
                .into_iter()
                .map(|(picks, c)| {
                    let mut exps = vec![0u32; n];
                    for (b, pick) in picks.iter().enumerate() {
                        let start = shape.block_range(b).start;
                        for &coord in pick {
                            exps[start + coord] += 1;
                        }
                    }
                    (Monomial::new(exps), BigInt::from(c))
                })
                .collect();
            Polynomial::from_terms(shape.clone(), raw).unwrap()
        })
        .prop_filter("nonzero polynomial", |p| !p.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn add_is_associative_and_commutative(
        p in poly_strategy(shape2(), vec![3], 4),
        q in poly_strategy(shape2(), vec![3], 4),
        r in poly_strategy(shape2(), vec![3], 4),
    ) {
        let ab_c = p.add(&q).unwrap().add(&r).unwrap();
        let a_bc = p.add(&q.add(&r).unwrap()).unwrap();
        prop_assert_eq!(&ab_c, &a_bc);
        prop_assert_eq!(p.add(&q).unwrap(), q.add(&p).unwrap());
        ab_c.validate().unwrap();
    }

    #[test]
    fn mul_is_associative_commutative_distributive(
        p in poly_strategy(shape22(), vec![1, 1], 3),
        q in poly_strategy(shape22(), vec![2, 0], 3),
        r in poly_strategy(shape22(), vec![2, 0], 3),
    ) {
        prop_assert_eq!(p.mul(&q, &L).unwrap(), q.mul(&p, &L).unwrap());
        let pq_r = p.mul(&q, &L).unwrap().mul(&r, &L).unwrap();
        let p_qr = p.mul(&q.mul(&r, &L).unwrap(), &L).unwrap();
        prop_assert_eq!(&pq_r, &p_qr);
        let lhs = p.mul(&q.add(&r).unwrap(), &L).unwrap();
        let rhs = p.mul(&q, &L).unwrap().add(&p.mul(&r, &L).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        pq_r.validate().unwrap();
    }

    #[test]
    fn content_reconstruction(p in poly_strategy(shape22(), vec![2, 1], 5)) {
        let (c, m, q) = p.content_and_primitive().unwrap();
        let back = q.mul_term(&m, &c).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn gcd_divides_both_and_respects_factors(
        p in poly_strategy(shape2(), vec![2], 3),
        q in poly_strategy(shape2(), vec![2], 3),
        r in poly_strategy(shape2(), vec![1], 2),
    ) {
        let g = gcd(&p, &q, &L).unwrap();
        prop_assert!(p.divide_exact(&g, &L).is_some());
        prop_assert!(q.divide_exact(&g, &L).is_some());

        // gcd(p·r, q·r) = gcd(p, q)·r up to sign/content normalization.
        let pr = p.mul(&r, &L).unwrap();
        let qr = q.mul(&r, &L).unwrap();
        let big = gcd(&pr, &qr, &L).unwrap();
        let expect = g.mul(&r, &L).unwrap();
        // Compare primitive parts: the convention puts contents differently.
        let (_, bm, bq) = big.content_and_primitive().unwrap();
        let (_, em, eq) = expect.content_and_primitive().unwrap();
        prop_assert_eq!((bm, bq), (em, eq));
    }

    #[test]
    fn substitution_is_a_ring_homomorphism(
        p in poly_strategy(shape2(), vec![2], 3),
        q in poly_strategy(shape2(), vec![2], 3),
        im0 in poly_strategy(shape22(), vec![1, 1], 2),
        im1 in poly_strategy(shape22(), vec![1, 1], 2),
    ) {
        let images = vec![im0, im1];
        let s_sum = p.add(&q).unwrap().substitute(&images, &L).unwrap();
        let sum_s = p.substitute(&images, &L).unwrap()
            .add(&q.substitute(&images, &L).unwrap()).unwrap();
        prop_assert_eq!(s_sum, sum_s);

        let s_prod = p.mul(&q, &L).unwrap().substitute(&images, &L).unwrap();
        let prod_s = p.substitute(&images, &L).unwrap()
            .mul(&q.substitute(&images, &L).unwrap(), &L).unwrap();
        prop_assert_eq!(&s_prod, &prod_s);
        s_prod.validate().unwrap();
    }
}

// ---------------------------------------------------------------------------
// Seeded suites over random matrices
// ---------------------------------------------------------------------------

fn monomial_self_map(m: &IntMatrix) -> RationalMap {
    to_projective(m, &L).unwrap()
}

#[test]
fn composition_is_associative_on_monomial_and_linear_maps() {
    use cremona::monomial::linear_map;
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mono = RandomMatrixSpec::new(2, 3);
    let lin = RandomMatrixSpec::new(3, 2);
    for _ in 0..12 {
        let f = monomial_self_map(&random_unimodular(&mono, &mut rng));
        let g = linear_map(&random_unimodular(&lin, &mut rng), &L).unwrap();
        let h = monomial_self_map(&random_unimodular(&mono, &mut rng));
        let left = f.compose(&g.compose(&h, &L).unwrap(), &L).unwrap();
        let right = f.compose(&g, &L).unwrap().compose(&h, &L).unwrap();
        assert!(left.equal(&right, &L).unwrap(), "{left} vs {right}");
    }
}

#[test]
fn degree_is_submultiplicative_under_composition() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    let mono = RandomMatrixSpec::new(3, 2);
    for _ in 0..15 {
        let f = monomial_self_map(&random_unimodular(&mono, &mut rng));
        let g = monomial_self_map(&random_unimodular(&mono, &mut rng));
        let fg = f.compose(&g, &L).unwrap();
        assert!(
            fg.scalar_degree().unwrap()
                <= f.scalar_degree().unwrap() * g.scalar_degree().unwrap()
        );
    }
}

#[test]
fn monomial_composition_equals_matrix_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for dim in [2usize, 3] {
        let spec = RandomMatrixSpec::new(dim, 3);
        for _ in 0..10 {
            let m = random_unimodular(&spec, &mut rng);
            let n = random_unimodular(&spec, &mut rng);
            let composed = monomial_self_map(&m).compose(&monomial_self_map(&n), &L).unwrap();
            assert_eq!(composed, monomial_self_map(&m.mul(&n)));
        }
    }
}

#[test]
fn projective_equality_is_an_equivalence() {
    let m = IntMatrix::from_i64(&[&[2, 1], &[1, 1]]).unwrap();
    let f = monomial_self_map(&m);
    // Scalings of a map: wrap groups scaled by constants.
    let scaled = |k: i64| {
        let groups = f
            .groups()
            .iter()
            .map(|g| g.iter().map(|c| c.scale(&BigInt::from(k))).collect())
            .collect();
        RationalMap::new(f.source().clone(), f.target().clone(), groups, &L).unwrap()
    };
    let variants = [f.clone(), scaled(2), scaled(-3)];
    for a in &variants {
        assert!(a.equal(a, &L).unwrap());
        for b in &variants {
            assert_eq!(a.equal(b, &L).unwrap(), b.equal(a, &L).unwrap());
            for c in &variants {
                if a.equal(b, &L).unwrap() && b.equal(c, &L).unwrap() {
                    assert!(a.equal(c, &L).unwrap());
                }
            }
        }
    }
    // A coordinate reordering is a different map.
    let swapped = RationalMap::new(
        f.source().clone(),
        f.target().clone(),
        vec![vec![
            f.groups()[0][1].clone(),
            f.groups()[0][0].clone(),
            f.groups()[0][2].clone(),
        ]],
        &L,
    )
    .unwrap();
    assert!(!f.equal(&swapped, &L).unwrap());
}

#[test]
fn fekete_roots_bound_the_final_estimate() {
    let m = IntMatrix::from_i64(&[&[2, 1], &[1, 1]]).unwrap();
    let seq = iterate_degrees(&monomial_self_map(&m), 6, &L).unwrap();
    let bound = seq.upper_bound.unwrap();
    for root in &seq.roots {
        assert!(*root >= bound - 1e-12);
    }
}

#[test]
fn exterior_power_is_multiplicative() {
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    for dim in [3usize, 4] {
        let spec = RandomMatrixSpec::new(dim, 3);
        for _ in 0..8 {
            let m = random_unimodular(&spec, &mut rng);
            let n = random_unimodular(&spec, &mut rng);
            for p in 0..=dim {
                let lhs = m.mul(&n).exterior_power(p).unwrap();
                let rhs = m.exterior_power(p).unwrap().mul(&n.exterior_power(p).unwrap());
                assert_eq!(lhs, rhs, "p = {p}");
            }
        }
    }
}

#[test]
fn exterior_power_determinant_identity() {
    // det(Λ^p M) = det(M)^C(n−1, p−1)
    let binom = |n: usize, k: usize| -> u32 {
        let mut acc = 1u64;
        for i in 0..k {
            acc = acc * (n - i) as u64 / (i + 1) as u64;
        }
        acc as u32
    };
    let mut rng = ChaCha8Rng::seed_from_u64(35);
    let spec = RandomMatrixSpec::new(4, 3);
    for _ in 0..6 {
        let m = random_unimodular(&spec, &mut rng);
        let d = m.det();
        for p in 1..=4usize {
            let lp = m.exterior_power(p).unwrap();
            assert_eq!(lp.det(), d.pow(binom(3, p - 1)), "p = {p}");
        }
    }
}

#[test]
fn duality_suite_random_unimodular() {
    let mut rng = ChaCha8Rng::seed_from_u64(36);
    for dim in 2..=5 {
        let spec = RandomMatrixSpec::new(dim, 5);
        for _ in 0..12 {
            let m = random_unimodular(&spec, &mut rng);
            let rep = check_duality(&m, 1e-6).unwrap();
            assert!(rep.pass, "{rep:?}");
        }
    }
}

#[test]
fn product_suite_up_to_four_plus_four() {
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    let spec3 = RandomMatrixSpec::new(3, 5);
    for _ in 0..12 {
        let a = random_unimodular(&spec3, &mut rng);
        let b = random_unimodular(&spec3, &mut rng);
        let rep = check_product(&a, &b, 1e-6).unwrap();
        assert!(rep.pass, "{rep:?}");
    }
    let spec4 = RandomMatrixSpec::new(4, 5);
    for _ in 0..3 {
        let a = random_unimodular(&spec4, &mut rng);
        let b = random_unimodular(&spec4, &mut rng);
        let rep = check_product(&a, &b, 1e-6).unwrap();
        assert!(rep.pass, "{rep:?}");
    }
}

#[test]
fn conjugacy_suite_random_unimodular() {
    let mut rng = ChaCha8Rng::seed_from_u64(38);
    let spec = RandomMatrixSpec::new(4, 5);
    for _ in 0..12 {
        let m = random_unimodular(&spec, &mut rng);
        let c = random_unimodular(&spec, &mut rng);
        let rep = check_conjugacy(&m, &c, 1e-6).unwrap();
        assert!(rep.pass, "{rep:?}");
    }
}

#[test]
fn profiles_are_log_concave() {
    let mut rng = ChaCha8Rng::seed_from_u64(39);
    for dim in [3usize, 4] {
        let spec = RandomMatrixSpec::new(dim, 5);
        for _ in 0..10 {
            let m = random_unimodular(&spec, &mut rng);
            let prof = lambda_profile(&m).unwrap();
            for p in 1..dim {
                let lhs = prof[p].value * prof[p].value;
                let rhs = prof[p - 1].value * prof[p + 1].value;
                assert!(lhs >= rhs * (1.0 - 1e-6), "p = {p}: {lhs} < {rhs}");
            }
        }
    }
}

#[test]
fn profile_of_inverse_is_the_reverse() {
    let mut rng = ChaCha8Rng::seed_from_u64(40);
    let spec = RandomMatrixSpec::new(4, 5);
    for _ in 0..10 {
        let m = random_unimodular(&spec, &mut rng);
        let inv = m.inverse_unimodular().unwrap();
        let fwd = lambda_profile(&m).unwrap();
        let bwd = lambda_profile(&inv).unwrap();
        for p in 0..=4 {
            let (a, b) = (fwd[p].value, bwd[4 - p].value);
            assert!((a - b).abs() <= 1e-6 * a.max(b).max(1.0));
        }
    }
}

#[test]
fn growth_estimates_match_spectral_radius() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let spec = RandomMatrixSpec::new(3, 5);
    for _ in 0..10 {
        let m = random_unimodular(&spec, &mut rng);
        let rep = check_oracle_growth(&m, 280.0, 600, 0.05).unwrap();
        assert!(rep.pass, "{rep:?}");
    }
}
