//! Prints the full residue data of the two non-summable worked examples.

use mahler_core::constants::algconst::AlgConst;
use mahler_core::ratfun::{pf_decompose, Poly, RatFun};
use mahler_core::residues;
use mahler_core::trees;

fn c(n: i64) -> AlgConst {
    AlgConst::from_i64(n)
}

fn main() {
    // EG:nonsummable1: p = 3, lambda = 1
    let num = Poly::from_coeffs([(4, c(-2)), (2, c(2)), (0, c(1))]).unwrap();
    let den = vec![
        (Poly::from_coeffs([(2, c(1)), (0, c(1))]).unwrap(), 1u32),
        (Poly::from_coeffs([(4, c(1)), (2, c(-1)), (0, c(1))]).unwrap(), 1),
    ];
    let f = RatFun::new(num, den).unwrap();
    let pfd = pf_decompose(&f, 3).unwrap();
    let tree = trees::tree_of(&mahler_core::constants::point::Point::root_of_unity(1, 4), 3);
    let omega = mahler_core::cyclemap::residual_average(&pfd, &tree, 3, 1).unwrap();
    println!("EG:nonsummable1 omega = {}", omega);
    for r in residues::dres_torsion(&pfd, &tree, 3, 1, None).unwrap() {
        for (pt, v) in &r.entries {
            println!("  dres_1(f,tau,{})_{{{}}} = {}", r.degree, pt, v);
        }
    }
    let red = residues::reduce(&f, 3, 1).unwrap();
    println!("  residual = {}", red.residual);
    println!("  summable = {}", red.residual.is_zero());

    // EG:nonsummable-1: p = 2, lambda = -1
    let num = Poly::one();
    let den = vec![(
        Poly::from_coeffs([(4, c(2)), (2, c(2)), (0, c(2))]).unwrap(),
        1u32,
    )];
    let f = RatFun::new(num, den).unwrap();
    let pfd = pf_decompose(&f, 2).unwrap();
    let tree = trees::tree_of(&mahler_core::constants::point::Point::root_of_unity(1, 3), 2);
    println!("EG:nonsummable-1 (p=2, lambda=-1)");
    let cvec = mahler_core::cyclemap::cyclic_component(&pfd, &tree).unwrap();
    let d = mahler_core::cyclemap::section(&cvec, &tree, 2, -1, &AlgConst::zero()).unwrap();
    let ctil = mahler_core::cyclemap::d_apply(&d, &tree, 2, -1).unwrap();
    for gamma in &tree.cycle {
        println!("  d({}) = {}   ctil({}) = {}", gamma, d.get(1, gamma), gamma, ctil.get(1, gamma));
    }
    for r in residues::dres_torsion(&pfd, &tree, 2, -1, None).unwrap() {
        for (pt, v) in &r.entries {
            println!("  dres(f,tau,{})_{{{}}} = {}", r.degree, pt, v);
        }
    }
    let red = residues::reduce(&f, 2, -1).unwrap();
    println!("  summable = {}", red.residual.is_zero());
}
