use cremona::monomial::*;
use cremona::dyndeg::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

fn main() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(9090);
    let spec = RandomMatrixSpec::new(4, 5);
    let mut worst = 0.0f64;
    for t in 0..30 {
        let a = random_unimodular(&spec, &mut rng);
        let b = random_unimodular(&spec, &mut rng);
        match check_product(&a, &b, 1e-6) {
            Ok(rep) => {
                assert!(rep.pass, "trial {t} fail: {rep:?}");
                worst = worst.max(rep.rows.iter().map(|r| r.rel_err).fold(0.0, f64::max));
            }
            Err(e) => panic!("trial {t} error: {e}"),
        }
    }
    println!("30 random 4+4 product checks: all pass, worst rel {worst:.2e}, {:?}", t0.elapsed());
}
