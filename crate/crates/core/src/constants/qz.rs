//! Q/Z with canonical representatives in [0, 1).
//!
//! A class j/N here stands for the formal root of unity e^(2*pi*i*j/N); the
//! compatible system of p-power roots falls out of the arithmetic for free.

use super::rat::{rat_i, Rat};
use num::{BigInt, BigUint, One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QZ(Rat);

impl QZ {
    pub fn new(mut value: Rat) -> Self {
        let one = Rat::one();
        value -= value.floor();
        if value.is_negative() || &value >= &one {
            // floor-based reduction already lands in [0,1); guard anyway
            value -= value.floor();
        }
        QZ(value)
    }

    pub fn zero() -> Self {
        QZ(Rat::zero())
    }

    /// j/N in lowest terms.
    pub fn from_parts(j: i64, n: u64) -> Self {
        QZ::new(Rat::new(BigInt::from(j), BigInt::from(n)))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Numerator j of the canonical representative j/N.
    pub fn numer(&self) -> BigUint {
        self.0.numer().magnitude().clone()
    }

    /// Denominator N of the canonical representative; this is the order of the
    /// root of unity the class represents.
    pub fn order(&self) -> BigUint {
        self.0.denom().magnitude().clone()
    }

    pub fn as_rat(&self) -> &Rat {
        &self.0
    }

    pub fn add(&self, other: &QZ) -> QZ {
        QZ::new(&self.0 + &other.0)
    }

    pub fn neg(&self) -> QZ {
        QZ::new(-self.0.clone())
    }

    pub fn mul_int(&self, k: &BigInt) -> QZ {
        QZ::new(&self.0 * Rat::from_integer(k.clone()))
    }

    pub fn mul_u64(&self, k: u64) -> QZ {
        self.mul_int(&BigInt::from(k))
    }

    /// Exact division by k in Q/Z along the canonical branch: j/N -> j/(N*k).
    pub fn div_exact(&self, k: u64) -> QZ {
        QZ::new(&self.0 / rat_i(k as i64))
    }

    /// Splits the class into its p-part and its prime-to-p part
    /// (Q/Z decomposes as a direct sum over primes).
    pub fn split_p(&self, p: u32) -> (QZ, QZ) {
        let n = self.order();
        let mut np = BigUint::one();
        let mut nq = n.clone();
        // p may be composite; the "p-part" is the part supported on primes dividing p.
        for (q, e) in super::rat::factor_biguint(&n) {
            if (BigUint::from(p) % &q).is_zero() {
                let qe = q.pow(e);
                np *= &qe;
                nq /= &qe;
            }
        }
        if np.is_one() {
            return (QZ::zero(), self.clone());
        }
        if nq.is_one() {
            return (self.clone(), QZ::zero());
        }
        // CRT split: j/N = a/np + b/nq mod 1
        let j = BigInt::from(self.numer());
        let np_i = BigInt::from(np.clone());
        let nq_i = BigInt::from(nq.clone());
        // find u, v with u*nq = 1 mod np ... use extended gcd
        let e = num::Integer::extended_gcd(&np_i, &nq_i);
        // e.x*np + e.y*nq = 1
        let a = QZ::new(Rat::new(&j * &e.y, np_i.clone()));
        let b = QZ::new(Rat::new(&j * &e.x, nq_i.clone()));
        debug_assert_eq!(a.add(&b), *self);
        (a, b)
    }
}

impl std::fmt::Display for QZ {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.numer(), self.order())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_range() {
        assert_eq!(QZ::from_parts(-1, 3), QZ::from_parts(2, 3));
        assert_eq!(QZ::from_parts(7, 3), QZ::from_parts(1, 3));
        assert!(QZ::from_parts(4, 2).is_zero());
    }

    #[test]
    fn compatible_system() {
        // zeta_{p^n}^{p^l} = zeta_{p^{n-l}} with zeta_{p^n} := 1/p^n
        let z27 = QZ::from_parts(1, 27);
        assert_eq!(z27.mul_u64(9), QZ::from_parts(1, 3));
    }

    #[test]
    fn p_part_split() {
        let x = QZ::from_parts(1, 12);
        let (a, b) = x.split_p(3);
        assert_eq!(a.order(), BigUint::from(3u32));
        assert_eq!(b.order(), BigUint::from(4u32));
        assert_eq!(a.add(&b), x);
        let (a2, b2) = x.split_p(2);
        assert_eq!(a2.order(), BigUint::from(4u32));
        assert_eq!(b2.order(), BigUint::from(3u32));
        assert_eq!(a2.add(&b2), x);
    }
}
