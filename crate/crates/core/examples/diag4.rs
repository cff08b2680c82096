use cremona::monomial::*;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(9090);
    let spec = RandomMatrixSpec::new(4, 5);
    let mut pair = None;
    for t in 0..3 {
        let a = random_unimodular(&spec, &mut rng);
        let b = random_unimodular(&spec, &mut rng);
        if t == 2 { pair = Some((a, b)); }
    }
    let (a, b) = pair.unwrap();
    let lp = a.direct_sum(&b).exterior_power(4).unwrap();
    let sf = char_poly(&lp).squarefree_part();
    let deg = sf.degree().unwrap();
    let bits_of = |c: &num_bigint::BigInt| if c.is_zero() {0i64} else {c.bits() as i64};
    let max_e = sf.coeffs().iter().filter(|c| !c.is_zero()).map(|c| bits_of(c)).max().unwrap();
    let coeffs: Vec<f64> = sf.coeffs().iter().map(|c| {
        if c.is_zero() { return 0.0; }
        let bits = c.bits();
        let (mant, e) = if bits <= 53 { (c.to_f64().unwrap(), 0i64) } else {
            ((c >> (bits - 53)).to_f64().unwrap(), (bits - 53) as i64)
        };
        mant * ((e - max_e) as f64).exp2()
    }).collect();
    let lc = coeffs[deg];
    let monic: Vec<f64> = coeffs.iter().map(|c| c / lc).collect();
    let mut t = Complex64::new(158.78706831, 233.66313582);
    for it in 0..12 {
        let (mut p, mut d) = (Complex64::new(0.0,0.0), Complex64::new(0.0,0.0));
        for &c in monic.iter().rev() { d = d*t + p; p = p*t + c; }
        println!("it {it}: t = {:.6}+{:.6}i, |p| = {:.3e}, |d| = {:.3e}, step = {:.3e}", t.re, t.im, p.norm(), d.norm(), (p/d).norm());
        if d.norm() == 0.0 { break; }
        t -= p/d;
    }
}
