//! Per-phase timing of one round trip to find hot spots.

use mahler_core::constants::algconst::AlgConst;
use mahler_core::constants::point::Point;
use mahler_core::constants::qz::QZ;
use mahler_core::constants::rat::rat_i;
use mahler_core::ratfun::{pf_decompose, reconstruct, PFD};
use mahler_core::residues;
use std::time::Instant;

fn main() {
    let p = 2u32;
    let lambda = 1i64;
    // two poles: zeta20 (height 2 torsion) and sqrt2 (height 1 non-torsion)
    let z20 = Point::new(p, QZ::from_parts(1, 20), rat_i(1), 0);
    let sqrt2 = Point::new(p, QZ::from_parts(0, 1), rat_i(2), 1);
    let mut pfd = PFD::default();
    pfd.add_pole(&z20, 3, &AlgConst::from_point(&z20, p)).unwrap();
    pfd.add_pole(&z20, 1, &AlgConst::from_i64(2)).unwrap();
    pfd.add_pole(&sqrt2, 2, &AlgConst::from_point(&sqrt2, p).scale(&rat_i(3).into())).unwrap();
    let t = Instant::now();
    let g = reconstruct(&pfd, p).unwrap();
    println!("reconstruct g: {:?}", t.elapsed());

    let t = Instant::now();
    let f = g.delta_lambda(p, lambda, 1).unwrap();
    println!("delta: {:?}", t.elapsed());

    let t = Instant::now();
    let fd = pf_decompose(&f, p).unwrap();
    println!("decompose f ({} poles): {:?}", fd.poles.len(), t.elapsed());

    let t = Instant::now();
    let red = residues::reduce(&f, p, lambda).unwrap();
    println!("reduce: {:?}", t.elapsed());
    println!("summable: {}", red.residual.is_zero());

    let t = Instant::now();
    let cert = residues::certificate(&f, p, lambda).unwrap().unwrap();
    println!("certificate: {:?}", t.elapsed());
    let t = Instant::now();
    assert!(cert.equals(&g).unwrap());
    println!("equality check: {:?}", t.elapsed());
}
