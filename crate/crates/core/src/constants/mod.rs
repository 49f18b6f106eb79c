//! Exact arithmetic for the constant field: rationals, Q/Z torsion classes,
//! cyclotomic field elements, radical-tower ring elements, and canonical pole
//! locations closed under p-th roots.

pub mod algconst;
pub mod cyclotomic;
pub mod point;
pub mod qz;
pub mod rat;

pub use algconst::AlgConst;
pub use cyclotomic::Cyc;
pub use point::Point;
pub use qz::QZ;
pub use rat::Rat;

use crate::error::Result;

/// The three ring operations of the public constant-arithmetic surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Exact ring arithmetic in the smallest common ring of the operands.
pub fn alg_arith(a: &AlgConst, b: &AlgConst, op: ArithOp) -> Result<AlgConst> {
    match op {
        ArithOp::Add => a.add(b),
        ArithOp::Sub => a.sub(b),
        ArithOp::Mul => a.mul(b),
    }
}

/// Exact multiplicative inverse, `NotInvertible` on zero divisors.
pub fn alg_inv(a: &AlgConst) -> Result<AlgConst> {
    a.inv()
}

/// Order of a root of unity; absent for points with a nontrivial radical part.
pub fn root_of_unity_order(x: &Point) -> Option<num::BigUint> {
    x.root_of_unity_order()
}

/// x^(p^n) in canonical form.
pub fn point_power_p(x: &Point, p: u32, n: u32) -> Point {
    x.power_p(p, n)
}

/// The p distinct canonical points y with y^p = x.
pub fn point_pth_roots(x: &Point, p: u32) -> Vec<Point> {
    x.pth_roots(p)
}
