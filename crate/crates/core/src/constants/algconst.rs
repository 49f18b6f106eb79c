//! Exact constants in the effective subring generated by all roots of unity
//! and the positive real radicals r^(1/p^h) of positive rationals.
//!
//! Canonical form: a finite sum of terms c * prod_q q^(t_q / p^(d_q)) with
//! cyclotomic coefficients c, the product running over finitely many prime
//! radicands q. Primes are multiplicatively independent, so the form is
//! unique once exponents are folded below p^(d_q) and depths are minimal.

use super::cyclotomic::Cyc;
use super::point::Point;
use super::qz::QZ;
use super::rat::{rat_pow, Rat};
use crate::error::{Error, Result};
use num::{BigInt, BigUint, One, Signed, Zero};
use std::collections::BTreeMap;

#[derive(Debug, Clone)]
pub struct AlgConst {
    /// Session radix backing the radical depths; 0 when no radicals remain.
    prime: u32,
    /// prime radicand -> depth d >= 1; the tower generator is q^(1/p^d).
    radicals: BTreeMap<BigUint, u32>,
    /// exponent vector (aligned with the radicals' key order) -> coefficient.
    terms: BTreeMap<Vec<u64>, Cyc>,
}

impl AlgConst {
    pub fn zero() -> Self {
        AlgConst { prime: 0, radicals: BTreeMap::new(), terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        AlgConst::from_rat(Rat::one())
    }

    pub fn from_rat(q: Rat) -> Self {
        AlgConst::from_cyc(Cyc::from_rat(q))
    }

    pub fn from_i64(n: i64) -> Self {
        AlgConst::from_rat(super::rat::rat_i(n))
    }

    pub fn from_cyc(c: Cyc) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        AlgConst { prime: 0, radicals: BTreeMap::new(), terms }
    }

    /// zeta_N^j.
    pub fn zeta(n: u32, j: i64) -> Self {
        AlgConst::from_cyc(Cyc::zeta_pow(n, j))
    }

    /// The positive real root r^(1/p^h).
    pub fn radical_gen(p: u32, r: Rat, h: u32) -> Self {
        AlgConst::radical_power(p, r, h, 1)
    }

    /// rho^t for rho = r^(1/p^h), decomposed over the prime radicands of r.
    pub fn radical_power(p: u32, r: Rat, h: u32, t: u64) -> Self {
        assert!(r.is_positive(), "radicand must be positive");
        if h == 0 {
            return AlgConst::from_rat(rat_pow(&r, t as i64));
        }
        let index = (p as u64).pow(h) as i64;
        let mut radicals = BTreeMap::new();
        let mut exps = BTreeMap::new();
        let mut scalar = Rat::one();
        for (q, e) in super::rat::rat_prime_exponents(&r) {
            // q enters with total exponent e * t / p^h
            let total = e * t as i64;
            let whole = total.div_euclid(index);
            let frac = total.rem_euclid(index) as u64;
            scalar *= rat_pow(&Rat::from_integer(BigInt::from(q.clone())), whole);
            if frac > 0 {
                radicals.insert(q.clone(), h);
                exps.insert(q, frac);
            }
        }
        let vec: Vec<u64> = radicals.keys().map(|q| exps[q]).collect();
        let mut out = AlgConst {
            prime: if radicals.is_empty() { 0 } else { p },
            radicals,
            terms: BTreeMap::from([(vec, Cyc::from_rat(scalar))]),
        };
        out.normalize();
        out
    }

    /// The exact value of a canonical pole location.
    pub fn from_point(pt: &Point, p: u32) -> Self {
        pt.pow_alg(p, 1)
    }

    pub fn radicals(&self) -> &BTreeMap<BigUint, u32> {
        &self.radicals
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u64>, Cyc> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Some(q) exactly when the value lies in Q.
    pub fn as_rat(&self) -> Option<Rat> {
        if self.terms.is_empty() {
            return Some(Rat::zero());
        }
        if !self.radicals.is_empty() {
            return None;
        }
        self.terms.get(&Vec::new()).and_then(|c| c.as_rat())
    }

    pub fn is_one(&self) -> bool {
        self.as_rat().map(|q| q.is_one()).unwrap_or(false)
    }

    fn normalize(&mut self) {
        self.terms.retain(|_, c| !c.is_zero());
        if self.terms.is_empty() {
            self.radicals.clear();
            self.prime = 0;
            return;
        }
        if self.radicals.is_empty() {
            self.prime = 0;
            return;
        }
        let p = self.prime;
        // fold exponents that reached the index back into rational factors
        let keys: Vec<BigUint> = self.radicals.keys().cloned().collect();
        let indexes: Vec<u64> =
            keys.iter().map(|q| (p as u64).pow(self.radicals[q])).collect();
        let needs_fold = self
            .terms
            .keys()
            .any(|v| v.iter().zip(&indexes).any(|(t, idx)| t >= idx));
        if needs_fold {
            let mut folded: BTreeMap<Vec<u64>, Cyc> = BTreeMap::new();
            for (v, c) in std::mem::take(&mut self.terms) {
                let mut scalar = Rat::one();
                let mut nv = v.clone();
                for (i, q) in keys.iter().enumerate() {
                    let idx = indexes[i];
                    if nv[i] >= idx {
                        let fold = nv[i] / idx;
                        nv[i] %= idx;
                        scalar *= rat_pow(
                            &Rat::from_integer(BigInt::from(q.clone())),
                            fold as i64,
                        );
                    }
                }
                let scaled = c.scale(&scalar);
                match folded.get_mut(&nv) {
                    Some(x) => *x = x.add(&scaled),
                    None => {
                        folded.insert(nv, scaled);
                    }
                }
            }
            folded.retain(|_, c| !c.is_zero());
            self.terms = folded;
            if self.terms.is_empty() {
                self.radicals.clear();
                self.prime = 0;
                return;
            }
        }
        // drop radicals whose exponent is zero everywhere, and reduce common
        // p-divisibility of the remaining exponents into lower depth
        let mut drop_cols: Vec<usize> = Vec::new();
        let mut depth_cut: Vec<u32> = Vec::new();
        for (i, q) in keys.iter().enumerate() {
            let mut all_zero = true;
            let mut min_v = u32::MAX;
            for v in self.terms.keys() {
                let t = v[i];
                if t != 0 {
                    all_zero = false;
                    let mut t = t;
                    let mut vp = 0u32;
                    while t % p as u64 == 0 {
                        t /= p as u64;
                        vp += 1;
                    }
                    min_v = min_v.min(vp);
                }
            }
            if all_zero {
                drop_cols.push(i);
                depth_cut.push(0);
            } else {
                depth_cut.push(min_v.min(self.radicals[q]));
            }
        }
        if drop_cols.is_empty() && depth_cut.iter().all(|c| *c == 0) {
            return;
        }
        let mut new_radicals = BTreeMap::new();
        for (i, q) in keys.iter().enumerate() {
            if drop_cols.contains(&i) {
                continue;
            }
            let d = self.radicals[q] - depth_cut[i];
            debug_assert!(d >= 1, "depth reduced to zero with nonzero exponent");
            new_radicals.insert(q.clone(), d);
        }
        let terms = std::mem::take(&mut self.terms);
        let mut new_terms: BTreeMap<Vec<u64>, Cyc> = BTreeMap::new();
        for (v, c) in terms {
            let mut nv = Vec::with_capacity(new_radicals.len());
            for (i, _) in keys.iter().enumerate() {
                if drop_cols.contains(&i) {
                    continue;
                }
                nv.push(v[i] / (p as u64).pow(depth_cut[i]));
            }
            match new_terms.get_mut(&nv) {
                Some(x) => *x = x.add(&c),
                None => {
                    new_terms.insert(nv, c);
                }
            }
        }
        new_terms.retain(|_, c| !c.is_zero());
        self.radicals = new_radicals;
        self.terms = new_terms;
        if self.radicals.is_empty() || self.terms.is_empty() {
            self.prime = if self.radicals.is_empty() { 0 } else { self.prime };
            if self.terms.is_empty() {
                self.radicals.clear();
                self.prime = 0;
            }
        }
    }

    /// Re-expresses both operands over the union of their radical towers.
    fn align(a: &AlgConst, b: &AlgConst) -> Result<(AlgConst, AlgConst)> {
        if a.radicals == b.radicals {
            return Ok((a.clone(), b.clone()));
        }
        if !a.radicals.is_empty() && !b.radicals.is_empty() && a.prime != b.prime {
            return Err(Error::IncompatibleRadicands(format!(
                "radical towers over different radices {} and {}",
                a.prime, b.prime
            )));
        }
        let p = if a.radicals.is_empty() { b.prime } else { a.prime };
        let mut union: BTreeMap<BigUint, u32> = a.radicals.clone();
        for (q, d) in &b.radicals {
            let cur = union.entry(q.clone()).or_insert(*d);
            *cur = (*cur).max(*d);
        }
        let lift = |x: &AlgConst| -> AlgConst {
            let keys: Vec<&BigUint> = union.keys().collect();
            let mut terms = BTreeMap::new();
            for (v, c) in &x.terms {
                let mut nv = Vec::with_capacity(keys.len());
                for q in &keys {
                    match x.radicals.get(*q) {
                        None => nv.push(0),
                        Some(d) => {
                            let pos = x.radicals.keys().position(|k| k == *q).unwrap();
                            let scaleup = (p as u64).pow(union[*q] - d);
                            nv.push(v[pos] * scaleup);
                        }
                    }
                }
                terms.insert(nv, c.clone());
            }
            AlgConst { prime: p, radicals: union.clone(), terms }
        };
        Ok((lift(a), lift(b)))
    }

    pub fn add(&self, other: &AlgConst) -> Result<AlgConst> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        let (a, b) = AlgConst::align(self, other)?;
        let mut terms = a.terms;
        for (v, c) in b.terms {
            match terms.get_mut(&v) {
                Some(x) => *x = x.add(&c),
                None => {
                    terms.insert(v, c);
                }
            }
        }
        let mut out = AlgConst { prime: a.prime, radicals: a.radicals, terms };
        out.normalize();
        Ok(out)
    }

    pub fn sub(&self, other: &AlgConst) -> Result<AlgConst> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> AlgConst {
        AlgConst {
            prime: self.prime,
            radicals: self.radicals.clone(),
            terms: self.terms.iter().map(|(v, c)| (v.clone(), c.neg())).collect(),
        }
    }

    pub fn mul(&self, other: &AlgConst) -> Result<AlgConst> {
        if self.is_zero() || other.is_zero() {
            return Ok(AlgConst::zero());
        }
        let (a, b) = AlgConst::align(self, other)?;
        let mut terms: BTreeMap<Vec<u64>, Cyc> = BTreeMap::new();
        for (v1, c1) in &a.terms {
            for (v2, c2) in &b.terms {
                let prod = c1.mul(c2);
                let v: Vec<u64> = v1.iter().zip(v2).map(|(x, y)| x + y).collect();
                match terms.get_mut(&v) {
                    Some(x) => *x = x.add(&prod),
                    None => {
                        terms.insert(v, prod);
                    }
                }
            }
        }
        let mut out = AlgConst { prime: a.prime, radicals: a.radicals, terms };
        out.normalize();
        Ok(out)
    }

    pub fn scale(&self, q: &Rat) -> AlgConst {
        if q.is_zero() {
            return AlgConst::zero();
        }
        AlgConst {
            prime: self.prime,
            radicals: self.radicals.clone(),
            terms: self.terms.iter().map(|(v, c)| (v.clone(), c.scale(q))).collect(),
        }
    }

    /// Exact inverse, `NotInvertible` with a zero-divisor witness when the
    /// value is not a unit of the quotient ring.
    ///
    /// Monomials invert coordinate-wise; two-term values by a geometric
    /// telescope along the ratio of the monomials; the general case multiplies
    /// by radical conjugates to eliminate the radicals one prime at a time.
    pub fn inv(&self) -> Result<AlgConst> {
        if self.is_zero() {
            return Err(Error::ZeroDivision);
        }
        if self.radicals.is_empty() {
            let c = self.terms.get(&Vec::new()).unwrap();
            return Ok(AlgConst::from_cyc(c.inv()?));
        }
        if self.terms.len() == 1 {
            let (v, c) = self.terms.iter().next().unwrap();
            return Ok(self.monomial_inverse(v, c)?);
        }
        if self.terms.len() == 2 {
            if let Some(out) = self.inv_two_terms()? {
                return Ok(out);
            }
        }
        // eliminate each radical by multiplying with its conjugates
        let p = self.prime;
        let mut acc = self.clone();
        let mut cofactor = AlgConst::one();
        let keys: Vec<BigUint> = self.radicals.keys().cloned().collect();
        for q in keys {
            let Some(depth) = acc.radicals.get(&q).copied() else {
                continue;
            };
            let index = (p as u64).pow(depth);
            for j in 1..index {
                let conj = acc.conjugate(&q, j as i64);
                cofactor = cofactor.mul(&conj)?;
            }
            acc = self.mul(&cofactor)?;
            debug_assert!(!acc.radicals.contains_key(&q) || acc.is_zero());
        }
        if acc.is_zero() {
            return Err(Error::NotInvertible { witness: format!("{}", cofactor) });
        }
        if !acc.radicals.is_empty() {
            return Err(Error::InternalVerificationFailure(
                "radical elimination left a radical behind".into(),
            ));
        }
        let c = acc.terms.get(&Vec::new()).unwrap().inv()?;
        cofactor.mul(&AlgConst::from_cyc(c))
    }

    /// Applies rho_q -> zeta^(j) rho_q to every term (the Galois twist of one
    /// radical coordinate by the p^d-th root of unity power j).
    fn conjugate(&self, q: &BigUint, j: i64) -> AlgConst {
        let Some(depth) = self.radicals.get(q) else {
            return self.clone();
        };
        let p = self.prime;
        let index = (p as u64).pow(*depth);
        let pos = self.radicals.keys().position(|k| k == q).unwrap();
        let terms = self
            .terms
            .iter()
            .map(|(v, c)| {
                let t = v[pos];
                let twist = Cyc::zeta_pow(index as u32, j * t as i64);
                (v.clone(), c.mul(&twist))
            })
            .collect();
        AlgConst { prime: self.prime, radicals: self.radicals.clone(), terms }
    }

    fn monomial_inverse(&self, v: &[u64], c: &Cyc) -> Result<AlgConst> {
        let p = self.prime;
        let mut out = AlgConst::from_cyc(c.inv()?);
        for ((q, d), t) in self.radicals.iter().zip(v) {
            if *t == 0 {
                continue;
            }
            // (q^(t/p^d))^(-1) = q^((p^d - t)/p^d) / q
            let r = Rat::from_integer(BigInt::from(q.clone()));
            let index = (p as u64).pow(*d);
            let part = AlgConst::radical_power(p, r.clone(), *d, index - t).scale(&r.recip());
            out = out.mul(&part)?;
        }
        Ok(out)
    }

    /// Closed-form inverse of A + B for monomial terms A, B: telescope the
    /// geometric series of -B/A, which closes once the radical exponents of
    /// the ratio wrap to integers.
    fn inv_two_terms(&self) -> Result<Option<AlgConst>> {
        let mut it = self.terms.iter();
        let (v0, c0) = it.next().unwrap();
        let (v1, c1) = it.next().unwrap();
        let p = self.prime;
        // ratio = -(c1/c0) * prod q^((t1-t0)/p^d); order of the radical part
        let mut l: u64 = 1;
        for ((_, d), (t0, t1)) in self.radicals.iter().zip(v0.iter().zip(v1)) {
            let index = (p as u64).pow(*d);
            let diff = (*t1 as i64 - *t0 as i64).rem_euclid(index as i64) as u64;
            if diff == 0 {
                continue;
            }
            let ord = index / num::Integer::gcd(&diff, &index);
            l = num::Integer::lcm(&l, &ord);
        }
        if l > 256 {
            return Ok(None);
        }
        let a_inv = self.monomial_inverse(v0, c0)?;
        let term_b = AlgConst {
            prime: self.prime,
            radicals: self.radicals.clone(),
            terms: BTreeMap::from([(v1.clone(), c1.clone())]),
        };
        let ratio = term_b.mul(&a_inv)?.neg();
        // sum_{j<L} ratio^j; closing scalar 1 - ratio^L is cyclotomic-rational
        let mut sum = AlgConst::one();
        let mut pw = AlgConst::one();
        for _ in 1..l {
            pw = pw.mul(&ratio)?;
            sum = sum.add(&pw)?;
        }
        let closing = AlgConst::one().sub(&pw.mul(&ratio)?)?;
        if !closing.radicals.is_empty() {
            return Err(Error::InternalVerificationFailure(
                "telescope closing retained a radical".into(),
            ));
        }
        if closing.is_zero() {
            // zero divisor; the elimination route will produce a witness
            return Ok(None);
        }
        let closing_inv = AlgConst::from_cyc(closing.terms.get(&Vec::new()).unwrap().inv()?);
        Ok(Some(sum.mul(&a_inv)?.mul(&closing_inv)?))
    }

    pub fn div(&self, other: &AlgConst) -> Result<AlgConst> {
        self.mul(&other.inv()?)
    }

    pub fn pow_i64(&self, e: i64) -> Result<AlgConst> {
        if e == 0 {
            return Ok(AlgConst::one());
        }
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = AlgConst::one();
        let mut sq = base;
        let mut n = e.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&sq)?;
            }
            n >>= 1;
            if n > 0 {
                sq = sq.mul(&sq)?;
            }
        }
        Ok(acc)
    }

    /// Recognizes values of the form q * zeta_M^j * (positive radical) as a
    /// canonical point.
    pub fn value_as_point(&self, p: u32) -> Option<Point> {
        if self.is_zero() || self.terms.len() != 1 {
            return None;
        }
        let (v, cyc) = self.terms.iter().next().unwrap();
        let (q, j) = cyc.as_rational_monomial()?;
        debug_assert!(!q.is_zero());
        let m = cyc.conductor();
        let mut torsion = QZ::from_parts(j as i64, m as u64);
        if q.is_negative() {
            torsion = torsion.add(&QZ::from_parts(1, 2));
        }
        let qa = q.abs();
        if self.radicals.is_empty() {
            return Some(Point::new(p, torsion, qa, 0));
        }
        if self.prime != p {
            return None;
        }
        // combined radical: prod q^(t/p^d) * qa = (qa^(p^h) * prod q^(t p^(h-d)))^(1/p^h)
        let h = *self.radicals.values().max().unwrap();
        let mut radicand = rat_pow(&qa, (p as u64).pow(h) as i64);
        for ((qq, d), t) in self.radicals.iter().zip(v) {
            let lift = (p as u64).pow(h - d);
            radicand *= rat_pow(
                &Rat::from_integer(BigInt::from(qq.clone())),
                (*t * lift) as i64,
            );
        }
        Some(Point::new(p, torsion, radicand, h))
    }
}

impl PartialEq for AlgConst {
    fn eq(&self, other: &Self) -> bool {
        match self.sub(other) {
            Ok(d) => d.is_zero(),
            Err(_) => false,
        }
    }
}
impl Eq for AlgConst {}

impl std::fmt::Display for AlgConst {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let p = self.prime;
        let mut first = true;
        for (v, c) in &self.terms {
            for (j, q) in c.coeffs().iter().enumerate() {
                if q.is_zero() {
                    continue;
                }
                if !first {
                    write!(f, "+")?;
                }
                first = false;
                write!(f, "{}", q)?;
                if j > 0 {
                    write!(f, "*zeta({})^{}", c.conductor(), j)?;
                }
                for ((base, d), t) in self.radicals.iter().zip(v) {
                    if *t > 0 {
                        write!(f, "*root({},{})^{}", base, (p as u64).pow(*d), t)?;
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
    use crate::constants::rat::{rat, rat_i};

    #[test]
    fn zeta_relations() {
        let a = AlgConst::zeta(3, 1).add(&AlgConst::zeta(3, 2)).unwrap();
        assert_eq!(a, AlgConst::from_i64(-1));
        let z = AlgConst::zeta(12, 1).pow_i64(4).unwrap();
        assert_eq!(z, AlgConst::zeta(3, 1));
    }

    #[test]
    fn radical_arithmetic() {
        let rho = AlgConst::radical_gen(3, rat_i(2), 1);
        assert_eq!(rho.pow_i64(3).unwrap(), AlgConst::from_i64(2));
        let inv = rho.inv().unwrap();
        let expect = rho.pow_i64(2).unwrap().scale(&rat(1, 2));
        assert_eq!(inv, expect);
        assert_eq!(rho.mul(&inv).unwrap(), AlgConst::one());
        assert_eq!(AlgConst::from_rat(rat(3, 4)).inv().unwrap(), AlgConst::from_rat(rat(4, 3)));
        assert_eq!(AlgConst::zeta(4, 1).inv().unwrap(), AlgConst::zeta(4, 3));
    }

    #[test]
    fn mixed_radicands_now_compose() {
        // sqrt2 + sqrt3 lives in the two-prime tower and inverts exactly
        let a = AlgConst::radical_gen(2, rat_i(2), 1);
        let b = AlgConst::radical_gen(2, rat_i(3), 1);
        let s = a.add(&b).unwrap();
        let inv = s.inv().unwrap();
        assert_eq!(s.mul(&inv).unwrap(), AlgConst::one());
        // (sqrt2 + sqrt3)(sqrt3 - sqrt2) = 1
        let expect = b.sub(&a).unwrap();
        assert_eq!(inv, expect);
        // sqrt(3/2) = sqrt3 * sqrt2 / 2
        let c = AlgConst::radical_gen(2, rat(3, 2), 1);
        let expect = a.mul(&b).unwrap().scale(&rat(1, 2));
        assert_eq!(c, expect);
        // depths align across operands
        let d = AlgConst::radical_gen(2, rat_i(2), 2);
        let s = a.mul(&d).unwrap();
        assert_eq!(s.pow_i64(4).unwrap(), AlgConst::from_i64(8));
    }

    #[test]
    fn zero_divisor_witness() {
        // over Q(zeta_8), rho^2 - 2 splits: rho - (zeta8 + zeta8^7) is a zero divisor
        let sqrt2_cyc = AlgConst::zeta(8, 1).add(&AlgConst::zeta(8, 7)).unwrap();
        let rho = AlgConst::radical_gen(2, rat_i(2), 1);
        let zd = rho.sub(&sqrt2_cyc).unwrap();
        match zd.inv() {
            Err(Error::NotInvertible { .. }) => {}
            other => panic!("expected NotInvertible, got {:?}", other),
        }
        let other = rho.add(&sqrt2_cyc).unwrap();
        assert!(zd.mul(&other).unwrap().is_zero());
    }

    #[test]
    fn point_value_round_trip() {
        let p = 3;
        let pt = Point::new(p, QZ::from_parts(1, 3), rat_i(2), 1);
        let val = AlgConst::from_point(&pt, p);
        assert_eq!(val.value_as_point(p), Some(pt));
        let neg = AlgConst::from_rat(rat(-3, 2));
        let pt2 = neg.value_as_point(2).unwrap();
        assert_eq!(pt2, Point::from_rational(&rat(-3, 2)));
        let a = AlgConst::one().add(&AlgConst::zeta(3, 1)).unwrap();
        let pt3 = a.value_as_point(2).unwrap();
        assert!(pt3.is_root_of_unity());
        assert_eq!(pt3.root_of_unity_order().unwrap(), BigUint::from(6u32));
        // composite radicand: 12^(1/2) = 2 * 3^(1/2) comes back as the
        // canonical point with radicand 12
        let v = AlgConst::radical_gen(2, rat_i(12), 1);
        let pt4 = v.value_as_point(2).unwrap();
        assert_eq!(pt4, Point::new(2, QZ::zero(), rat_i(12), 1));
        assert_eq!(AlgConst::from_point(&pt4, 2), v);
    }

    #[test]
    fn exponent_gcd_normalization() {
        // rho^2 in the depth-2 tower of 2 equals the depth-1 generator
        let rho4 = AlgConst::radical_gen(2, rat_i(2), 2);
        let sq = rho4.pow_i64(2).unwrap();
        let sqrt2 = AlgConst::radical_gen(2, rat_i(2), 1);
        assert_eq!(sq, sqrt2);
        assert_eq!(*sq.radicals().values().next().unwrap(), 1);
    }

    #[test]
    fn paper_coefficient_value() {
        // (1/(6*2^(1/3))) * zeta3^2 equals (1/12) * zeta3^2 * rho^2
        let rho = AlgConst::radical_gen(3, rat_i(2), 1);
        let lhs = AlgConst::zeta(3, 2)
            .mul(&rho.mul(&AlgConst::from_i64(6)).unwrap().inv().unwrap())
            .unwrap();
        let rhs = AlgConst::zeta(3, 2).mul(&rho.pow_i64(2).unwrap()).unwrap().scale(&rat(1, 12));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn two_term_telescope_inverse() {
        // values of the shape zeta - rho invert via the telescope
        let rho = AlgConst::radical_gen(3, rat_i(2), 2);
        let a = AlgConst::zeta(5, 1).sub(&rho).unwrap();
        let inv = a.inv().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), AlgConst::one());
        // and a three-term value through the elimination route
        let b = a.add(&AlgConst::radical_gen(3, rat_i(5), 1)).unwrap();
        let inv = b.inv().unwrap();
        assert_eq!(b.mul(&inv).unwrap(), AlgConst::one());
    }
}
