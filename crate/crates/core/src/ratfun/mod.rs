//! Rational functions over the constant ring, the Mahler substitution, the
//! twisted differences, and the derivation x d/dx.
//!
//! Denominators are kept as lists of monic factors with multiplicities and are
//! only expanded on demand. This keeps pole recognition exact through sigma,
//! delta and sums without any polynomial factorization over number fields.

pub mod pfd;
pub mod poly;

pub use pfd::{pf_decompose, reconstruct, tau_component, theta_component, PFD};
pub use poly::Poly;

use crate::constants::algconst::AlgConst;
use crate::constants::rat::p_pow;
use crate::error::{Error, Result};

/// A maximal trajectory of exponents under multiplication by p: the single
/// class {0}, or the geometric ladder starting at an initial i with p not
/// dividing i.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Traj {
    Zero,
    Initial(i64),
}

impl Traj {
    pub fn of_exponent(mut e: i64, p: u32) -> Traj {
        if e == 0 {
            return Traj::Zero;
        }
        while e % p as i64 == 0 {
            e /= p as i64;
        }
        Traj::Initial(e)
    }

    pub fn contains(&self, e: i64, p: u32) -> bool {
        Traj::of_exponent(e, p) == *self
    }
}

#[derive(Debug, Clone)]
pub struct RatFun {
    num: Poly,
    /// Monic nonconstant factors with multiplicities; empty list means 1.
    den: Vec<(Poly, u32)>,
}

impl RatFun {
    pub fn zero() -> Self {
        RatFun { num: Poly::zero(), den: Vec::new() }
    }

    pub fn one() -> Self {
        RatFun::from_poly(Poly::one())
    }

    pub fn x() -> Self {
        RatFun::from_poly(Poly::x())
    }

    pub fn constant(c: AlgConst) -> Self {
        RatFun::from_poly(Poly::constant(c))
    }

    pub fn from_poly(num: Poly) -> Self {
        RatFun { num, den: Vec::new() }
    }

    /// num / prod factor^mult; factors are normalized monic, constants folded out.
    pub fn new(num: Poly, den: Vec<(Poly, u32)>) -> Result<Self> {
        let mut out = RatFun { num, den: Vec::new() };
        for (f, m) in den {
            out.push_den_factor(f, m)?;
        }
        Ok(out)
    }

    fn push_den_factor(&mut self, f: Poly, mult: u32) -> Result<()> {
        if mult == 0 {
            return Ok(());
        }
        let deg = f.degree().ok_or(Error::ZeroDivision)?;
        if deg == 0 {
            // constant factor folds into the numerator
            let c = f.leading().unwrap().pow_i64(mult as i64)?;
            self.num = self.num.mul_scalar(&c.inv()?)?;
            return Ok(());
        }
        let mut f = f;
        if !f.is_monic() {
            let lead = f.leading().unwrap().clone();
            f = f.mul_scalar(&lead.inv()?)?;
            self.num = self.num.mul_scalar(&lead.pow_i64(mult as i64)?.inv()?)?;
        }
        for (g, m) in &mut self.den {
            if *g == f {
                *m += mult;
                return Ok(());
            }
        }
        self.den.push((f, mult));
        Ok(())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den_factors(&self) -> &[(Poly, u32)] {
        &self.den
    }

    pub fn den_expanded(&self) -> Result<Poly> {
        let mut out = Poly::one();
        for (f, m) in &self.den {
            out = out.mul(&f.pow(*m)?)?;
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Exact equality by cross multiplication.
    pub fn equals(&self, other: &RatFun) -> Result<bool> {
        let lhs = self.num.mul(&other.den_expanded()?)?;
        let rhs = other.num.mul(&self.den_expanded()?)?;
        Ok(lhs == rhs)
    }

    pub fn add(&self, other: &RatFun) -> Result<RatFun> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        // common denominator: per-factor max multiplicity
        let mut common: Vec<(Poly, u32)> = self.den.clone();
        for (g, m) in &other.den {
            match common.iter_mut().find(|(f, _)| f == g) {
                Some((_, mm)) => *mm = (*mm).max(*m),
                None => common.push((g.clone(), *m)),
            }
        }
        let cofactor = |den: &[(Poly, u32)]| -> Result<Poly> {
            let mut out = Poly::one();
            for (f, m) in &common {
                let have = den.iter().find(|(g, _)| g == f).map(|(_, m)| *m).unwrap_or(0);
                out = out.mul(&f.pow(m - have)?)?;
            }
            Ok(out)
        };
        let num =
            self.num.mul(&cofactor(&self.den)?)?.add(&other.num.mul(&cofactor(&other.den)?)?)?;
        if num.is_zero() {
            return Ok(RatFun::zero());
        }
        Ok(RatFun { num, den: common })
    }

    pub fn sub(&self, other: &RatFun) -> Result<RatFun> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RatFun {
        RatFun { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &RatFun) -> Result<RatFun> {
        if self.is_zero() || other.is_zero() {
            return Ok(RatFun::zero());
        }
        let mut out = RatFun { num: self.num.mul(&other.num)?, den: self.den.clone() };
        for (g, m) in &other.den {
            out.push_den_factor(g.clone(), *m)?;
        }
        Ok(out)
    }

    pub fn div(&self, other: &RatFun) -> Result<RatFun> {
        Ok(self.mul(&other.recip()?)?)
    }

    pub fn recip(&self) -> Result<RatFun> {
        if self.is_zero() {
            return Err(Error::ZeroDivision);
        }
        let mut out = RatFun { num: self.den_expanded()?, den: Vec::new() };
        out.push_den_factor(self.num.clone(), 1)?;
        Ok(out)
    }

    pub fn scale(&self, q: &crate::constants::rat::Rat) -> RatFun {
        RatFun { num: self.num.scale(q), den: self.den.clone() }
    }

    pub fn mul_scalar(&self, c: &AlgConst) -> Result<RatFun> {
        Ok(RatFun { num: self.num.mul_scalar(c)?, den: self.den.clone() })
    }

    pub fn pow_i(&self, e: i32) -> Result<RatFun> {
        if e == 0 {
            return Ok(RatFun::one());
        }
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let mut acc = RatFun::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base)?;
        }
        Ok(acc)
    }

    /// The Mahler substitution x -> x^(p^n), applied factor-wise.
    pub fn sigma(&self, p: u32, n: u32) -> RatFun {
        if n == 0 {
            return self.clone();
        }
        let k = (p as u64).pow(n);
        let k32: u32 = k.try_into().expect("substitution exponent fits in u32");
        RatFun {
            num: self.num.substitute_power(k32),
            den: self.den.iter().map(|(f, m)| (f.substitute_power(k32), *m)).collect(),
        }
    }

    /// p^(lambda n) sigma^n(f) - f.
    pub fn delta_lambda(&self, p: u32, lambda: i64, n: u32) -> Result<RatFun> {
        let shifted = self.sigma(p, n).scale(&p_pow(p, lambda * n as i64));
        shifted.sub(self)
    }

    /// x d/dx, kept in factored form.
    pub fn partial_derivation(&self) -> Result<RatFun> {
        // d/dx (num / prod f_i^{m_i}) =
        //   [num' prod f_i - num sum m_i f_i' prod_{j != i} f_j] / prod f_i^{m_i+1}
        let mut radial = self.num.derivative();
        let mut all = Poly::one();
        for (f, _) in &self.den {
            all = all.mul(f)?;
        }
        radial = radial.mul(&all)?;
        for (i, (f, m)) in self.den.iter().enumerate() {
            let mut cof = Poly::one();
            for (j, (g, _)) in self.den.iter().enumerate() {
                if i != j {
                    cof = cof.mul(g)?;
                }
            }
            let term = self
                .num
                .mul(&f.derivative())?
                .mul(&cof)?
                .scale(&crate::constants::rat::rat_i(*m as i64));
            radial = radial.sub(&term)?;
        }
        let num = radial.mul(&Poly::x())?;
        if num.is_zero() {
            return Ok(RatFun::zero());
        }
        let den = self.den.iter().map(|(f, m)| (f.clone(), m + 1)).collect();
        Ok(RatFun { num, den })
    }
}

impl std::fmt::Display for RatFun {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        let factors: Vec<String> = self
            .den
            .iter()
            .map(|(g, m)| if *m == 1 { format!("({})", g) } else { format!("({})^{}", g, m) })
            .collect();
        write!(f, "({}) / ({})", self.num, factors.join("*"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::rat::rat_i;

    fn c(n: i64) -> AlgConst {
        AlgConst::from_i64(n)
    }

    fn linear(a: i64) -> Poly {
        Poly::from_coeffs([(1, c(1)), (0, c(-a))]).unwrap()
    }

    #[test]
    fn sigma_examples() {
        // sigma(1/(x-1)) = 1/(x^2-1) for p=2
        let f = RatFun::new(Poly::one(), vec![(linear(1), 1)]).unwrap();
        let s = f.sigma(2, 1);
        let expect = RatFun::new(
            Poly::one(),
            vec![(Poly::from_coeffs([(2, c(1)), (0, c(-1))]).unwrap(), 1)],
        )
        .unwrap();
        assert!(s.equals(&expect).unwrap());
        // sigma^2(x) = x^9 for p=3
        let x = RatFun::x();
        assert!(x.sigma(3, 2).equals(&RatFun::from_poly(Poly::monomial(9, c(1)))).unwrap());
        // constants are fixed
        let k = RatFun::constant(c(5));
        assert!(k.sigma(3, 1).equals(&k).unwrap());
    }

    #[test]
    fn delta_example() {
        // Delta_1(1/(x-1)) = -1/(x+1) for p=2
        let f = RatFun::new(Poly::one(), vec![(linear(1), 1)]).unwrap();
        let d = f.delta_lambda(2, 1, 1).unwrap();
        let expect = RatFun::new(
            Poly::constant(c(-1)),
            vec![(Poly::from_coeffs([(1, c(1)), (0, c(1))]).unwrap(), 1)],
        )
        .unwrap();
        assert!(d.equals(&expect).unwrap());
        // Delta_lambda(c/(p^lambda - 1)) = c
        for (p, lambda) in [(2u32, 1i64), (3, 2), (2, -1)] {
            let scale = p_pow(p, lambda) - crate::constants::rat::rat_i(1);
            let g = RatFun::constant(AlgConst::from_rat(rat_i(7) / scale));
            let d = g.delta_lambda(p, lambda, 1).unwrap();
            assert!(d.equals(&RatFun::constant(c(7))).unwrap());
        }
    }

    #[test]
    fn derivation_examples() {
        // d(x) = x
        let x = RatFun::x();
        assert!(x.partial_derivation().unwrap().equals(&x).unwrap());
        // constants die
        assert!(RatFun::constant(c(9)).partial_derivation().unwrap().is_zero());
        // d(x-2)/(x-2) = x/(x-2)
        let f = RatFun::new(linear(2), vec![]).unwrap();
        let logd = f.partial_derivation().unwrap().div(&f).unwrap();
        let expect = RatFun::new(Poly::x(), vec![(linear(2), 1)]).unwrap();
        assert!(logd.equals(&expect).unwrap());
    }

    #[test]
    fn delta_factorization_identity() {
        // Delta^{(n)}_lambda(g) = Delta_lambda(sum_{j<n} p^{lambda j} sigma^j g)
        let g = RatFun::new(
            Poly::from_coeffs([(2, c(1)), (0, c(3))]).unwrap(),
            vec![(linear(2), 1)],
        )
        .unwrap();
        for (p, lambda, n) in [(2u32, 1i64, 2u32), (3, -1, 2), (2, 0, 3)] {
            let lhs = g.delta_lambda(p, lambda, n).unwrap();
            let mut acc = RatFun::zero();
            for j in 0..n {
                acc = acc.add(&g.sigma(p, j).scale(&p_pow(p, lambda * j as i64))).unwrap();
            }
            let rhs = acc.delta_lambda(p, lambda, 1).unwrap();
            assert!(lhs.equals(&rhs).unwrap());
        }
    }

    #[test]
    fn commutation_sigma_derivation() {
        // p * sigma(df) = d(sigma f)
        let f = RatFun::new(
            Poly::from_coeffs([(1, c(1)), (0, c(4))]).unwrap(),
            vec![(linear(3), 2)],
        )
        .unwrap();
        for p in [2u32, 3] {
            let lhs = f.partial_derivation().unwrap().sigma(p, 1).scale(&rat_i(p as i64));
            let rhs = f.sigma(p, 1).partial_derivation().unwrap();
            assert!(lhs.equals(&rhs).unwrap());
        }
    }
}
