//! Phase instrumentation for the heavy torsion-tower corpus case.

use mahler_core::ratfun::pf_decompose;
use mahler_core::residues;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

include!("../tests/common/mod.rs");

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut n = 0;
    for p in [2u32, 3] {
        for lambda in [-2i64, -1, 0, 1, 2, 3] {
            for _ in 0..3 {
                let g = random_g(&mut rng, p, 2, 3, true);
                n += 1;
                if n != 33 {
                    continue;
                }
                let t = Instant::now();
                let f = g.delta_lambda(p, lambda, 1).unwrap();
                eprintln!("delta: {:?}", t.elapsed());
                let t = Instant::now();
                let pfd = pf_decompose(&f, p).unwrap();
                eprintln!("decompose: {} poles {:?}", pfd.poles.len(), t.elapsed());
                let t = Instant::now();
                let red = residues::reduce(&f, p, lambda).unwrap();
                eprintln!("reduce: {:?}", t.elapsed());
                eprintln!("summable: {}", red.residual.is_zero());
            }
        }
    }
}
