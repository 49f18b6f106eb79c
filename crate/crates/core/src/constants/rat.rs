//! Arbitrary-precision rationals and small integer helpers.

use num::bigint::Sign;
use num::{BigInt, BigRational, BigUint, Integer, One, Signed, Zero};
use std::collections::BTreeMap;

pub type Rat = BigRational;

pub fn rat_i(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// base^e for integer e of either sign; base must be nonzero when e < 0.
pub fn rat_pow(base: &Rat, e: i64) -> Rat {
    if e == 0 {
        return Rat::one();
    }
    let mag = base.pow(i32::try_from(e.unsigned_abs()).expect("exponent fits in i32"));
    if e > 0 {
        mag
    } else {
        mag.recip()
    }
}

/// p^e as an exact rational, e of either sign.
pub fn p_pow(p: u32, e: i64) -> Rat {
    rat_pow(&rat_i(p as i64), e)
}

pub fn big_pow(base: u32, e: u32) -> BigUint {
    BigUint::from(base).pow(e)
}

/// Prime factorization of a positive integer by trial division.
pub fn factor_biguint(n: &BigUint) -> Vec<(BigUint, u32)> {
    let mut n = n.clone();
    let mut out = Vec::new();
    assert!(!n.is_zero(), "factoring zero");
    let mut d = BigUint::from(2u32);
    while &d * &d <= n {
        let mut e = 0u32;
        while (&n % &d).is_zero() {
            n /= &d;
            e += 1;
        }
        if e > 0 {
            out.push((d.clone(), e));
        }
        d += 1u32;
    }
    if !n.is_one() {
        out.push((n, 1));
    }
    out
}

/// Exponent vector of a positive rational over its prime support.
pub fn rat_prime_exponents(r: &Rat) -> BTreeMap<BigUint, i64> {
    assert!(r.is_positive(), "exponent vector of a non-positive rational");
    let mut map = BTreeMap::new();
    for (q, e) in factor_biguint(&r.numer().magnitude().clone()) {
        *map.entry(q).or_insert(0) += e as i64;
    }
    for (q, e) in factor_biguint(&r.denom().magnitude().clone()) {
        *map.entry(q).or_insert(0) -= e as i64;
    }
    map.retain(|_, e| *e != 0);
    map
}

/// Largest m with r = s^(p^m) for rational s; returns (s, m) with s no longer a p-th power.
pub fn extract_p_power_root(r: &Rat, p: u32) -> (Rat, u32) {
    let mut r = r.clone();
    let mut m = 0u32;
    loop {
        match exact_root(&r, p) {
            Some(s) => {
                r = s;
                m += 1;
            }
            None => return (r, m),
        }
    }
}

/// Exact p-th root of a positive rational, if it exists.
pub fn exact_root(r: &Rat, p: u32) -> Option<Rat> {
    if !r.is_positive() {
        return None;
    }
    let nr = r.numer().magnitude().nth_root(p);
    let dr = r.denom().magnitude().nth_root(p);
    let cand = Rat::new(
        BigInt::from_biguint(Sign::Plus, nr),
        BigInt::from_biguint(Sign::Plus, dr),
    );
    if &rat_pow(&cand, p as i64) == r {
        Some(cand)
    } else {
        None
    }
}

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    BigInt::from(a).gcd(&BigInt::from(b)).try_into().unwrap()
}

/// All positive divisors of n, ascending.
pub fn divisors(n: &BigUint) -> Vec<BigUint> {
    let mut out = vec![BigUint::one()];
    for (q, e) in factor_biguint(n) {
        let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
        let mut qk = BigUint::one();
        for _ in 0..=e {
            for d in &out {
                next.push(d * &qk);
            }
            qk *= &q;
        }
        out = next;
    }
    out.sort();
    out
}

/// Euler phi of n.
pub fn euler_phi(n: u32) -> u32 {
    let mut result = n;
    let mut n = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Multiplicative order of p modulo n (requires gcd(p, n) = 1).
pub fn multiplicative_order(p: u32, n: &BigUint) -> u32 {
    assert!(!n.is_zero());
    if n.is_one() {
        return 1;
    }
    let p = BigUint::from(p);
    assert!(p.gcd(n).is_one(), "order undefined: p shares a factor with n");
    let mut acc = &p % n;
    let mut e = 1u32;
    while !acc.is_one() {
        acc = acc * &p % n;
        e += 1;
    }
    e
}

pub fn is_p_power(k: u64, p: u32) -> Option<u32> {
    if k == 0 {
        return None;
    }
    let mut k = k;
    let mut e = 0;
    while k % p as u64 == 0 {
        k /= p as u64;
        e += 1;
    }
    if k == 1 {
        Some(e)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p_power_extraction() {
        let (s, m) = extract_p_power_root(&rat_i(256), 2);
        assert_eq!((s, m), (rat_i(2), 3).into());
        let (s, m) = extract_p_power_root(&rat_i(8), 2);
        assert_eq!(s, rat_i(8));
        assert_eq!(m, 0);
        let (s, m) = extract_p_power_root(&rat(16, 81), 2);
        // 16/81 = (4/9)^2, and 4/9 = (2/3)^2
        assert_eq!(s, rat(2, 3));
        assert_eq!(m, 2);
    }

    #[test]
    fn orders_and_phi() {
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(1), 1);
        assert_eq!(multiplicative_order(3, &BigUint::from(4u32)), 2);
        assert_eq!(multiplicative_order(2, &BigUint::from(5u32)), 4);
        assert_eq!(multiplicative_order(2, &BigUint::from(3u32)), 2);
    }

    #[test]
    fn exponent_vectors() {
        let v = rat_prime_exponents(&rat(9, 2));
        assert_eq!(v.get(&BigUint::from(2u32)), Some(&-1));
        assert_eq!(v.get(&BigUint::from(3u32)), Some(&2));
    }
}
