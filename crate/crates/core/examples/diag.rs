use cremona::monomial::*;
use cremona::dyndeg::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

fn main() {
    let t0 = Instant::now();
    for seed in [1u64, 2, 3, 4, 5] {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for dim in 2..=5 {
            let spec = RandomMatrixSpec::new(dim, 5);
            for _ in 0..20 {
                let m = random_unimodular(&spec, &mut rng);
                let rep = check_duality(&m, 1e-6).unwrap();
                assert!(rep.pass, "duality seed {seed} dim {dim}");
            }
        }
        let spec3 = RandomMatrixSpec::new(3, 5);
        for _ in 0..40 {
            let a = random_unimodular(&spec3, &mut rng);
            let b = random_unimodular(&spec3, &mut rng);
            assert!(check_product(&a, &b, 1e-6).unwrap().pass);
            assert!(check_conjugacy(&a, &b, 1e-6).unwrap().pass);
        }
        let spec4 = RandomMatrixSpec::new(4, 5);
        for _ in 0..5 {
            let a = random_unimodular(&spec4, &mut rng);
            let b = random_unimodular(&spec4, &mut rng);
            assert!(check_product(&a, &b, 1e-6).unwrap().pass, "4+4 seed {seed}");
            assert!(check_conjugacy(&a, &b, 1e-6).unwrap().pass);
        }
    }
    println!("robustness sweep (5 seeds × [80 duality + 40 product3 + 40 conj + 5 product4]): ALL PASS in {:?}", t0.elapsed());
}
