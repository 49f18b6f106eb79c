//! Quick timing smoke for the round-trip pipeline (not part of the acceptance
//! gate; ignored by default).

mod common;

use mahler_core::residues;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

#[test]
#[ignore]
fn round_trip_timing() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let start = Instant::now();
    let mut n = 0;
    for p in [2u32, 3] {
        for lambda in [-2i64, -1, 0, 1, 2, 3] {
            for _ in 0..3 {
                let g = common::random_g(&mut rng, p, 2, 3, true);
                let f = g.delta_lambda(p, lambda, 1).unwrap();
                let t0 = Instant::now();
                let ok = residues::is_summable(&f, p, lambda).unwrap();
                assert!(ok, "p={p} lambda={lambda}");
                n += 1;
                println!("case {n}: p={p} lambda={lambda} took {:?}", t0.elapsed());
            }
        }
    }
    println!("total {:?} for {n} cases", start.elapsed());
}
