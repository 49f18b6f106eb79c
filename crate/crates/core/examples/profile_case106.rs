//! Phase breakdown of the slowest rehearsal case.

use mahler_core::ratfun::{pf_decompose, Poly};
use mahler_core::residues;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

include!("../tests/common/mod.rs");

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(20260810);
    let mut n = 0;
    for p in [2u32, 3] {
        for lambda in [-2i64, -1, 0, 1, 2, 3] {
            for _ in 0..17 {
                n += 1;
                let g = random_g(&mut rng, p, 3, 4, true);
                if n != 106 {
                    continue;
                }
                eprintln!("g = {}", g);
                let t = Instant::now();
                let f = g.delta_lambda(p, lambda, 1).unwrap();
                eprintln!("delta {:?}", t.elapsed());
                let t = Instant::now();
                let pfd = pf_decompose(&f, p).unwrap();
                eprintln!("decompose {} poles {:?}", pfd.poles.len(), t.elapsed());
                let t = Instant::now();
                let data = residues::reduce_data(&f, p, lambda).unwrap();
                eprintln!("reduce_data {:?}", t.elapsed());
                let t = Instant::now();
                let gp = pf_decompose(&g, p).unwrap();
                assert_eq!(data.certificate_pfd(), gp);
                eprintln!("cert check {:?}", t.elapsed());
                let _ = Poly::one();
            }
        }
    }
}
