use cremona::monomial::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(9090);
    let spec = RandomMatrixSpec::new(4, 5);
    let mut pair = None;
    for t in 0..6 {
        let a = random_unimodular(&spec, &mut rng);
        let b = random_unimodular(&spec, &mut rng);
        if t == 5 { pair = Some((a, b)); }
    }
    let (a, b) = pair.unwrap();
    let lp = a.direct_sum(&b).exterior_power(4).unwrap();
    let cp = char_poly(&lp);
    let (zeros, stripped) = cp.strip_zero_roots();
    let sf = stripped.squarefree_part();
    println!("dims: char {:?}, zeros {zeros}, sf {:?}", cp.degree(), sf.degree());
    match spectral_radius(&lp) {
        Ok(est) => println!("OK {est:?}"),
        Err(e) => println!("ERR {e}"),
    }
}
