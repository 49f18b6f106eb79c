//! Reproduces the first seeded corpus case with phase prints.

use mahler_core::ratfun::pf_decompose;
use mahler_core::residues;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

// trimmed copy of the test generator
include!("../tests/common/mod.rs");

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let p = 2u32;
    let lambda = -2i64;
    let g = random_g(&mut rng, p, 2, 3, true);
    println!("g = {}", g);
    let t = Instant::now();
    let f = g.delta_lambda(p, lambda, 1).unwrap();
    println!("delta: {:?}", t.elapsed());
    let t = Instant::now();
    let fd = pf_decompose(&f, p).unwrap();
    println!(
        "decompose: {} poles, laurent {} terms: {:?}",
        fd.poles.len(),
        fd.laurent.len(),
        t.elapsed()
    );
    let t = Instant::now();
    let red = residues::reduce(&f, p, lambda).unwrap();
    println!("reduce: {:?} summable={}", t.elapsed(), red.residual.is_zero());
}
