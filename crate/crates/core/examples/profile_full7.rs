//! Full-volume rehearsal of the round-trip suite: 204 seeded cases with
//! certificate recovery and perturbation flips.

use mahler_core::ratfun::{pf_decompose, Poly};
use mahler_core::residues;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

include!("../tests/common/mod.rs");

fn main() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(20260810);
    let fresh = Poly::from_coeffs([(1, AlgConst::from_i64(1)), (0, AlgConst::from_i64(-7))])
        .unwrap();
    let mut n = 0;
    for p in [2u32, 3] {
        for lambda in [-2i64, -1, 0, 1, 2, 3] {
            for _ in 0..17 {
                n += 1;
                let t0 = Instant::now();
                let g = random_g(&mut rng, p, 3, 4, true);
                let f = g.delta_lambda(p, lambda, 1).unwrap();
                let data = residues::reduce_data(&f, p, lambda).unwrap();
                assert!(data.is_summable(), "case {n}");
                // certificate recovery on pole data
                let cert_pfd = data.certificate_pfd();
                let g_pfd = pf_decompose(&g, p).unwrap();
                if lambda != 0 {
                    assert_eq!(cert_pfd, g_pfd, "case {n} certificate mismatch");
                } else {
                    let mut diff = cert_pfd.add(&g_pfd.scale(&rat(-1, 1))).unwrap();
                    diff.laurent.remove(&0);
                    assert!(diff.is_zero(), "case {n} lambda=0 differs beyond a constant");
                }
                // perturbation flips the verdict
                let perturbed =
                    f.add(&RatFun::new(Poly::one(), vec![(fresh.clone(), 1)]).unwrap()).unwrap();
                assert!(!residues::is_summable(&perturbed, p, lambda).unwrap(), "case {n}");
                eprintln!("case {n}: p={p} lambda={lambda} {:?}", t0.elapsed());
            }
        }
    }
    eprintln!("{} cases in {:?}", n, start.elapsed());
}
