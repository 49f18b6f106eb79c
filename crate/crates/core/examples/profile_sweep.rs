//! Sweeps the seeded corpus and reports per-case timings on stderr.

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
                eprintln!("case {n}: p={p} lambda={lambda} g={}", g);
                let t0 = Instant::now();
                let f = g.delta_lambda(p, lambda, 1).unwrap();
                let ok = residues::is_summable(&f, p, lambda).unwrap();
                assert!(ok, "p={p} lambda={lambda}");
                eprintln!("case {n}: took {:?}", t0.elapsed());
            }
        }
    }
}
