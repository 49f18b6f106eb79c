//! Elements of cyclotomic fields Q(zeta_M) in the power basis modulo Phi_M.
//!
//! Conductors grow by lcm on demand and are never minimized eagerly; equality
//! across conductors is decided after embedding both sides into the lcm field.

use super::rat::{euler_phi, Rat};
use crate::error::{Error, Result};
use num::{BigInt, Integer, One, Zero};
use std::collections::HashMap;
use std::sync::Mutex;
use std::sync::OnceLock;

/// Memoized cyclotomic polynomials Phi_n over Z (dense, ascending).
fn cyclotomic_poly(n: u32) -> Vec<BigInt> {
    static MEMO: OnceLock<Mutex<HashMap<u32, Vec<BigInt>>>> = OnceLock::new();
    let memo = MEMO.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = memo.lock().unwrap().get(&n) {
        return hit.clone();
    }
    // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic_poly(d);
            num = zpoly_div_exact(&num, &phi_d);
        }
    }
    memo.lock().unwrap().insert(n, num.clone());
    num
}

/// Exact division of integer polynomials (dense ascending), panics on remainder.
fn zpoly_div_exact(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut rem: Vec<BigInt> = a.to_vec();
    let db = b.len() - 1;
    assert!(b[db].is_one(), "divisor must be monic");
    let da = rem.len() - 1;
    assert!(da >= db);
    let mut quot = vec![BigInt::zero(); da - db + 1];
    for i in (0..=(da - db)).rev() {
        let c = rem[i + db].clone();
        if c.is_zero() {
            continue;
        }
        quot[i] = c.clone();
        for j in 0..=db {
            let t = &b[j] * &c;
            rem[i + j] -= t;
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "inexact polynomial division");
    quot
}

/// Phi_n with rational coefficients (dense ascending), for divisibility tests.
pub(crate) fn cyclotomic_poly_q(n: u32) -> Vec<Rat> {
    cyclotomic_poly(n).iter().map(|c| Rat::from_integer(c.clone())).collect()
}

/// An element of Q(zeta_M), coordinates in the basis zeta_M^0 .. zeta_M^{phi(M)-1}.
#[derive(Debug, Clone)]
pub struct Cyc {
    conductor: u32,
    coeffs: Vec<Rat>,
}

impl Cyc {
    pub fn zero() -> Self {
        Cyc { conductor: 1, coeffs: vec![Rat::zero()] }
    }

    pub fn one() -> Self {
        Cyc::from_rat(Rat::one())
    }

    pub fn from_rat(q: Rat) -> Self {
        Cyc { conductor: 1, coeffs: vec![q] }
    }

    /// zeta_M^j, reduced into the power basis.
    pub fn zeta_pow(m: u32, j: i64) -> Self {
        assert!(m >= 1);
        let jj = j.rem_euclid(m as i64) as u32;
        let mut raw = vec![Rat::zero(); jj as usize + 1];
        raw[jj as usize] = Rat::one();
        Cyc::from_raw(m, raw)
    }

    /// Builds from an unreduced polynomial in zeta_M (dense ascending) and reduces mod Phi_M.
    pub fn from_raw(conductor: u32, mut raw: Vec<Rat>) -> Self {
        let phi = euler_phi(conductor) as usize;
        if raw.len() > phi {
            let modulus = cyclotomic_poly(conductor);
            let dm = modulus.len() - 1;
            debug_assert_eq!(dm, phi);
            for i in (dm..raw.len()).rev() {
                let c = raw[i].clone();
                if c.is_zero() {
                    continue;
                }
                raw[i] = Rat::zero();
                for j in 0..dm {
                    let t = Rat::from_integer(modulus[j].clone()) * &c;
                    raw[i - dm + j] -= t;
                }
            }
        }
        raw.resize(phi, Rat::zero());
        Cyc { conductor, coeffs: raw }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Some(q) exactly when the element lies in Q.
    pub fn as_rat(&self) -> Option<Rat> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Image under the embedding Q(zeta_M) -> Q(zeta_{M'}) for M | M'.
    pub fn embed(&self, target: u32) -> Cyc {
        assert!(target % self.conductor == 0, "embedding needs M | M'");
        if target == self.conductor {
            return self.clone();
        }
        let k = (target / self.conductor) as usize;
        let mut raw = vec![Rat::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                raw[i * k] = c.clone();
            }
        }
        Cyc::from_raw(target, raw)
    }

    fn common(a: &Cyc, b: &Cyc) -> (Cyc, Cyc) {
        let m = a.conductor.lcm(&b.conductor);
        (a.embed(m), b.embed(m))
    }

    pub fn add(&self, other: &Cyc) -> Cyc {
        let (mut a, b) = Cyc::common(self, other);
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs.iter()) {
            *x += y;
        }
        a
    }

    pub fn sub(&self, other: &Cyc) -> Cyc {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Cyc {
        Cyc { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }

    pub fn mul(&self, other: &Cyc) -> Cyc {
        let (a, b) = Cyc::common(self, other);
        let mut raw = vec![Rat::zero(); a.coeffs.len() + b.coeffs.len()];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let t = x * y;
                raw[i + j] += t;
            }
        }
        Cyc::from_raw(a.conductor, raw)
    }

    pub fn scale(&self, q: &Rat) -> Cyc {
        Cyc { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    /// Image under the Galois automorphism zeta -> zeta^k (k coprime to M).
    pub fn galois(&self, k: u32) -> Cyc {
        let m = self.conductor as usize;
        let mut raw = vec![Rat::zero(); m];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                raw[(j * k as usize) % m] += c;
            }
        }
        Cyc::from_raw(self.conductor, raw)
    }

    /// Multiplicative inverse. Monomials invert directly, two-monomial values
    /// by a geometric telescope that closes to a rational scalar; the general
    /// case takes the product of the other Galois conjugates divided by the
    /// rational norm.
    pub fn inv(&self) -> Result<Cyc> {
        if self.is_zero() {
            return Err(Error::ZeroDivision);
        }
        if let Some(q) = self.as_rat() {
            return Ok(Cyc::from_rat(q.recip()));
        }
        if let Some((q, j)) = self.single_monomial() {
            return Ok(Cyc::zeta_pow(self.conductor, -(j as i64)).scale(&q.recip()));
        }
        if let Some(v) = self.inv_two_monomials() {
            return Ok(v);
        }
        let m = self.conductor;
        let mut cofactor = Cyc::one();
        for k in 2..m {
            if num::Integer::gcd(&k, &m) == 1 {
                cofactor = cofactor.mul(&self.galois(k));
            }
        }
        let norm = self.mul(&cofactor);
        match norm.as_rat() {
            Some(n) if !n.is_zero() => Ok(cofactor.scale(&n.recip())),
            _ => self.inv_euclid(),
        }
    }

    /// Inverse of q1 zeta^u + q2 zeta^v: factor the smaller monomial out and
    /// telescope the geometric series of the ratio, which closes to the
    /// rational 1 - (-q2/q1)^L with L the order of zeta^(v-u). Degenerate
    /// closings (ratio a root of unity) fall through to the norm route.
    fn inv_two_monomials(&self) -> Option<Cyc> {
        let mut nonzero = self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero());
        let (u, q1) = nonzero.next()?;
        let (v, q2) = nonzero.next()?;
        if nonzero.next().is_some() {
            return None;
        }
        let m = self.conductor;
        let b = (v - u) as u32;
        let l = m / num::Integer::gcd(&b, &m);
        let ratio = -(q2 / q1);
        let closing = Rat::one() - crate::constants::rat::rat_pow(&ratio, l as i64);
        if closing.is_zero() {
            return None;
        }
        // sum_{j<L} ratio^j zeta^(bj), scaled by zeta^(-u) / (q1 * closing)
        let mut raw = vec![Rat::zero(); m as usize];
        let mut pw = Rat::one();
        for j in 0..l {
            raw[(b as usize * j as usize) % m as usize] += &pw;
            pw *= &ratio;
        }
        let series = Cyc::from_raw(m, raw);
        let scale = (q1 * closing).recip();
        Some(series.mul(&Cyc::zeta_pow(m, -(u as i64))).scale(&scale))
    }

    /// Some((q, j)) when the element is exactly q * zeta^j in the power basis.
    fn single_monomial(&self) -> Option<(Rat, u32)> {
        let mut hit = None;
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                if hit.is_some() {
                    return None;
                }
                hit = Some((c.clone(), j as u32));
            }
        }
        hit
    }

    /// Extended-Euclid fallback against Phi_M.
    fn inv_euclid(&self) -> Result<Cyc> {
        let modulus: Vec<Rat> =
            cyclotomic_poly(self.conductor).iter().map(|c| Rat::from_integer(c.clone())).collect();
        let a = trim(self.coeffs.clone());
        let (g, _, v) = qpoly_ext_gcd(&modulus, &a);
        // Phi_M is irreducible over Q, so the gcd with a nonzero lower-degree
        // polynomial is a nonzero constant.
        debug_assert_eq!(g.len(), 1);
        let c = g[0].clone();
        debug_assert!(!c.is_zero());
        let inv: Vec<Rat> = v.iter().map(|x| x / &c).collect();
        Ok(Cyc::from_raw(self.conductor, inv))
    }

    /// Tries to write the element as q * zeta_M^j; returns (q, j).
    pub fn as_rational_monomial(&self) -> Option<(Rat, u32)> {
        if let Some(q) = self.as_rat() {
            return Some((q, 0));
        }
        for j in 1..self.conductor {
            let rot = self.mul(&Cyc::zeta_pow(self.conductor, -(j as i64)));
            if let Some(q) = rot.as_rat() {
                return Some((q, j));
            }
        }
        None
    }
}

fn trim(mut v: Vec<Rat>) -> Vec<Rat> {
    while v.len() > 1 && v.last().unwrap().is_zero() {
        v.pop();
    }
    v
}

/// Extended gcd over Q[x] (dense ascending): returns (g, u, v) with u*a + v*b = g.
pub(crate) fn qpoly_ext_gcd(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>, Vec<Rat>) {
    let mut r0 = trim(a.to_vec());
    let mut r1 = trim(b.to_vec());
    let mut u0 = vec![Rat::one()];
    let mut u1 = vec![Rat::zero()];
    let mut v0 = vec![Rat::zero()];
    let mut v1 = vec![Rat::one()];
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = qpoly_divrem(&r0, &r1);
        let u2 = qpoly_sub(&u0, &qpoly_mul(&q, &u1));
        let v2 = qpoly_sub(&v0, &qpoly_mul(&q, &v1));
        r0 = r1;
        r1 = r;
        u0 = u1;
        u1 = u2;
        v0 = v1;
        v1 = v2;
    }
    (r0, u0, v0)
}

pub(crate) fn qpoly_divrem(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let b = trim(b.to_vec());
    let db = b.len() - 1;
    assert!(!(b.len() == 1 && b[0].is_zero()), "division by zero polynomial");
    let mut rem = trim(a.to_vec());
    if rem.len() - 1 < db || (rem.len() == 1 && rem[0].is_zero()) {
        return (vec![Rat::zero()], rem);
    }
    let da = rem.len() - 1;
    let lead = b[db].clone();
    let mut quot = vec![Rat::zero(); da - db + 1];
    for i in (0..=(da - db)).rev() {
        let c = &rem[i + db] / &lead;
        if c.is_zero() {
            continue;
        }
        quot[i] = c.clone();
        for j in 0..=db {
            let t = &b[j] * &c;
            rem[i + j] -= t;
        }
    }
    (trim(quot), trim(rem))
}

pub(crate) fn qpoly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            let t = x * y;
            out[i + j] += t;
        }
    }
    trim(out)
}

pub(crate) fn qpoly_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = a.to_vec();
    out.resize(a.len().max(b.len()), Rat::zero());
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

impl PartialEq for Cyc {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = Cyc::common(self, other);
        a.coeffs == b.coeffs
    }
}
impl Eq for Cyc {}

impl std::fmt::Display for Cyc {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            if j == 0 {
                write!(f, "{}", c)?;
            } else if c.is_one() {
                write!(f, "zeta({})^{}", self.conductor, j)?;
            } else {
                write!(f, "{}*zeta({})^{}", c, self.conductor, j)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::rat::rat_i;

    #[test]
    fn phi_polys() {
        let phi12 = cyclotomic_poly(12);
        // Phi_12 = x^4 - x^2 + 1
        let expect: Vec<BigInt> =
            [1, 0, -1, 0, 1].iter().map(|&c| BigInt::from(c)).collect();
        assert_eq!(phi12, expect);
    }

    #[test]
    fn zeta3_relation() {
        // zeta3 + zeta3^2 = -1
        let z = Cyc::zeta_pow(3, 1);
        let z2 = Cyc::zeta_pow(3, 2);
        assert_eq!(z.add(&z2), Cyc::from_rat(-Rat::one()));
    }

    #[test]
    fn embedding_coherence() {
        // Q(zeta_3) -> Q(zeta_6) -> Q(zeta_12) equals the direct embedding
        let z = Cyc::zeta_pow(3, 1).add(&Cyc::from_rat(rat_i(7)));
        assert_eq!(z.embed(6).embed(12), z.embed(12));
    }

    #[test]
    fn inverse() {
        let z = Cyc::zeta_pow(4, 1);
        assert_eq!(z.inv().unwrap(), Cyc::zeta_pow(4, 3));
        let w = Cyc::zeta_pow(12, 5).add(&Cyc::from_rat(rat_i(2)));
        let wi = w.inv().unwrap();
        assert_eq!(w.mul(&wi), Cyc::one());
    }

    #[test]
    fn rational_monomial_recognition() {
        // 1 + zeta3 = -zeta3^2
        let a = Cyc::one().add(&Cyc::zeta_pow(3, 1));
        let (q, j) = a.as_rational_monomial().unwrap();
        assert_eq!(q, -Rat::one());
        assert_eq!(j, 2);
    }
}
