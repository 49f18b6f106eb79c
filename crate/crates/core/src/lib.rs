//! Exact computer algebra for twisted Mahler summability over an effective
//! subfield of the algebraic numbers.
//!
//! Fixing a radix p >= 2, the Mahler operator acts on rational functions by
//! substitution x -> x^p. For a twist in Z this crate decides whether a given
//! rational function f satisfies f(x) = p^t * g(x^p) - g(x) for some rational
//! function g, produces the certificate g when one exists, and computes the
//! finitely many exact residue vectors whose simultaneous vanishing is
//! equivalent to that property. On top of the decision procedure sits a test
//! for differential dependence of solutions of first-order Mahler equations.
//!
//! Everything is exact: coefficients live in towers Q(zeta_M)[rho]/(rho^P - r)
//! and no floating point appears anywhere.

pub mod constants;
pub mod cyclemap;
pub mod error;
pub mod mahlercoeff;
pub mod parallel;
pub mod ratfun;
pub mod residues;
pub mod telescope;
pub mod trees;

pub use error::{Error, Result};
