//! Sparse univariate polynomials over the exact constant ring.

use crate::constants::algconst::AlgConst;
use crate::constants::rat::Rat;
use crate::error::{Error, Result};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    /// exponent -> coefficient, no zero coefficients stored
    coeffs: BTreeMap<u64, AlgConst>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(AlgConst::one())
    }

    pub fn x() -> Self {
        Poly::monomial(1, AlgConst::one())
    }

    pub fn constant(c: AlgConst) -> Self {
        Poly::monomial(0, c)
    }

    pub fn monomial(e: u64, c: AlgConst) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(e, c);
        }
        Poly { coeffs }
    }

    pub fn from_coeffs(entries: impl IntoIterator<Item = (u64, AlgConst)>) -> Result<Self> {
        let mut out = Poly::zero();
        for (e, c) in entries {
            out.add_term(e, &c)?;
        }
        Ok(out)
    }

    pub fn coeffs(&self) -> &BTreeMap<u64, AlgConst> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<u64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn leading(&self) -> Option<&AlgConst> {
        self.coeffs.values().next_back()
    }

    pub fn coeff(&self, e: u64) -> AlgConst {
        self.coeffs.get(&e).cloned().unwrap_or_else(AlgConst::zero)
    }

    pub fn constant_term(&self) -> AlgConst {
        self.coeff(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().map(|c| c.is_one()).unwrap_or(false)
    }

    pub fn add_term(&mut self, e: u64, c: &AlgConst) -> Result<()> {
        if c.is_zero() {
            return Ok(());
        }
        match self.coeffs.get(&e) {
            Some(old) => {
                let s = old.add(c)?;
                if s.is_zero() {
                    self.coeffs.remove(&e);
                } else {
                    self.coeffs.insert(e, s);
                }
            }
            None => {
                self.coeffs.insert(e, c.clone());
            }
        }
        Ok(())
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        let mut out = self.clone();
        for (e, c) in &other.coeffs {
            out.add_term(*e, c)?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|(e, c)| (*e, c.neg())).collect() }
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        let mut out = Poly::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &other.coeffs {
                out.add_term(e1 + e2, &c1.mul(c2)?)?;
            }
        }
        Ok(out)
    }

    pub fn mul_scalar(&self, c: &AlgConst) -> Result<Poly> {
        let mut out = Poly::zero();
        for (e, a) in &self.coeffs {
            out.add_term(*e, &a.mul(c)?)?;
        }
        Ok(out)
    }

    pub fn scale(&self, q: &Rat) -> Poly {
        if q.is_integer() && q.numer() == &num::BigInt::from(0) {
            return Poly::zero();
        }
        Poly { coeffs: self.coeffs.iter().map(|(e, c)| (*e, c.scale(q))).collect() }
    }

    pub fn pow(&self, n: u32) -> Result<Poly> {
        let mut acc = Poly::one();
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// x -> x^k substitution.
    pub fn substitute_power(&self, k: u32) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|(e, c)| (e * k as u64, c.clone())).collect() }
    }

    pub fn eval(&self, x: &AlgConst) -> Result<AlgConst> {
        // Horner over the sparse support
        let mut acc = AlgConst::zero();
        let mut prev: Option<u64> = None;
        for (e, c) in self.coeffs.iter().rev() {
            match prev {
                None => acc = c.clone(),
                Some(pe) => {
                    let gap = pe - e;
                    acc = acc.mul(&x.pow_i64(gap as i64)?)?;
                    acc = acc.add(c)?;
                }
            }
            prev = Some(*e);
        }
        match prev {
            None => Ok(AlgConst::zero()),
            Some(e) => acc.mul(&x.pow_i64(e as i64)?),
        }
    }

    pub fn derivative(&self) -> Poly {
        let mut coeffs = BTreeMap::new();
        for (e, c) in &self.coeffs {
            if *e == 0 {
                continue;
            }
            let scaled = c.scale(&Rat::from_integer(num::BigInt::from(*e)));
            if !scaled.is_zero() {
                coeffs.insert(e - 1, scaled);
            }
        }
        Poly { coeffs }
    }

    /// f(x + a), exact Taylor shift.
    pub fn taylor_shift(&self, a: &AlgConst) -> Result<Poly> {
        let mut out = Poly::zero();
        // binomial expansion per term; degrees stay desk-scale
        for (e, c) in &self.coeffs {
            let n = *e;
            let mut binom = Rat::from_integer(num::BigInt::from(1));
            let mut a_pow = AlgConst::one();
            // j = 0 term
            out.add_term(n, c)?;
            for j in 1..=n {
                binom = binom * Rat::new(num::BigInt::from(n - j + 1), num::BigInt::from(j));
                a_pow = a_pow.mul(a)?;
                let term = c.mul(&a_pow)?.scale(&binom);
                out.add_term(n - j, &term)?;
            }
        }
        Ok(out)
    }

    /// Quotient and remainder; the divisor's leading coefficient must be invertible.
    pub fn divrem(&self, den: &Poly) -> Result<(Poly, Poly)> {
        let dd = den.degree().ok_or(Error::ZeroDivision)?;
        let lead_inv = den.leading().unwrap().inv()?;
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some(dr) = rem.degree() {
            if dr < dd {
                break;
            }
            let c = rem.leading().unwrap().mul(&lead_inv)?;
            let shift = dr - dd;
            quot.add_term(shift, &c)?;
            for (e, b) in &den.coeffs {
                let t = b.mul(&c)?.neg();
                rem.add_term(e + shift, &t)?;
            }
        }
        Ok((quot, rem))
    }

    /// Divides exactly, erroring if a remainder is left.
    pub fn div_exact(&self, den: &Poly) -> Result<Poly> {
        let (q, r) = self.divrem(den)?;
        if !r.is_zero() {
            return Err(Error::InternalVerificationFailure(format!(
                "inexact polynomial division: remainder {}",
                r
            )));
        }
        Ok(q)
    }

    /// True when every coefficient is rational; returns the dense coefficient
    /// vector (ascending) in that case.
    pub fn rational_coeffs(&self) -> Option<Vec<Rat>> {
        let deg = match self.degree() {
            None => return Some(vec![Rat::from_integer(num::BigInt::from(0))]),
            Some(d) => d,
        };
        let mut out = vec![Rat::from_integer(num::BigInt::from(0)); deg as usize + 1];
        for (e, c) in &self.coeffs {
            out[*e as usize] = c.as_rat()?;
        }
        Some(out)
    }

    pub fn from_rational_coeffs(v: &[Rat]) -> Poly {
        let mut coeffs = BTreeMap::new();
        for (e, q) in v.iter().enumerate() {
            if !q.is_integer() || q.numer() != &num::BigInt::from(0) {
                let c = AlgConst::from_rat(q.clone());
                if !c.is_zero() {
                    coeffs.insert(e as u64, c);
                }
            }
        }
        Poly { coeffs }
    }
}

impl std::fmt::Display for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().rev() {
            // negative rational coefficients join with a minus sign
            let (joiner, c) = match c.as_rat() {
                Some(q) if q < Rat::from_integer(num::BigInt::from(0)) => {
                    ("-", AlgConst::from_rat(-q))
                }
                _ => ("+", c.clone()),
            };
            if first {
                if joiner == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", joiner)?;
            }
            first = false;
            let cs = c.to_string();
            let needs_parens = cs.contains('+');
            match (*e, needs_parens) {
                (0, true) => write!(f, "({})", cs)?,
                (0, false) => write!(f, "{}", cs)?,
                (e, np) => {
                    if c.is_one() {
                        // coefficient 1 is dropped
                    } else if np {
                        write!(f, "({})*", cs)?;
                    } else {
                        write!(f, "{}*", cs)?;
                    }
                    if e == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{}", e)?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::rat::rat_i;

    fn c(n: i64) -> AlgConst {
        AlgConst::from_i64(n)
    }

    #[test]
    fn divrem_and_shift() {
        // (x-2)^2 divided by (x-2)
        let lin = Poly::from_coeffs([(1, c(1)), (0, c(-2))]).unwrap();
        let sq = lin.mul(&lin).unwrap();
        let (q, r) = sq.divrem(&lin).unwrap();
        assert!(r.is_zero());
        assert_eq!(q, lin);
        // Taylor shift: (x-2)^2 at x+2 is x^2
        let shifted = sq.taylor_shift(&c(2)).unwrap();
        assert_eq!(shifted, Poly::monomial(2, c(1)));
    }

    #[test]
    fn eval_and_derivative() {
        // f = x^3 - 2: f(cbrt(2)) = 0, f'(x) = 3x^2
        let f = Poly::from_coeffs([(3, c(1)), (0, c(-2))]).unwrap();
        let rho = AlgConst::radical_gen(3, rat_i(2), 1);
        assert!(f.eval(&rho).unwrap().is_zero());
        assert_eq!(f.derivative(), Poly::monomial(2, c(3)));
    }

    #[test]
    fn substitute() {
        let f = Poly::from_coeffs([(1, c(1)), (0, c(3))]).unwrap();
        let g = f.substitute_power(3);
        assert_eq!(g, Poly::from_coeffs([(3, c(1)), (0, c(3))]).unwrap());
    }
}
