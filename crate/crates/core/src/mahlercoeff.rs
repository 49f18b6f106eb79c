//! Universal Mahler coefficients by two independent routes.
//!
//! The coefficient of interest is the k-th partial-fraction weight produced
//! when sigma^n hits 1/(x - a^(p^n))^m: it factors as a universal rational
//! times a^(k - m*p^n). The production path reads the universal part off a
//! truncated power-series inverse; the cross-check path evaluates a sum over
//! integer partitions with bounded parts.

use crate::constants::algconst::AlgConst;
use crate::constants::point::Point;
use crate::constants::rat::{p_pow, Rat};
use crate::error::Result;
use num::{BigInt, BigUint, One, Zero};
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

/// Universal coefficient by exact power-series inversion: the coefficient of
/// (x-1)^(m-k) in (x^(p^n - 1) + ... + x + 1)^(-m) at x = 1.
pub fn v_taylor(p: u32, m: u32, k: u32, n: u32) -> Rat {
    if k > m || k == 0 {
        return Rat::zero();
    }
    let row = v_row(p, m, n);
    row[(m - k) as usize].clone()
}

/// Memoized row (V^m_{k,n})_{k=1..m} stored by ascending power of (x-1).
fn v_row(p: u32, m: u32, n: u32) -> Vec<Rat> {
    static MEMO: OnceLock<Mutex<HashMap<(u32, u32, u32), Vec<Rat>>>> = OnceLock::new();
    let memo = MEMO.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = memo.lock().unwrap().get(&(p, m, n)) {
        return hit.clone();
    }
    // g_n(1+t) = sum_j C(p^n, j+1) t^j  (column sums of binomials)
    let order = m as usize;
    let pn = BigUint::from(p).pow(n);
    let mut g = Vec::with_capacity(order);
    let mut binom = BigInt::from(pn.clone()); // C(p^n, 1)
    let pn_int = BigInt::from(pn);
    for j in 0..order {
        g.push(Rat::from_integer(binom.clone()));
        // C(p^n, j+2) = C(p^n, j+1) * (p^n - (j+1)) / (j+2)
        let jj = BigInt::from(j as u64 + 1);
        binom = binom * (&pn_int - &jj) / (jj + BigInt::one());
    }
    // invert the unit series g mod t^m
    let mut inv = vec![Rat::zero(); order];
    inv[0] = g[0].clone().recip();
    for j in 1..order {
        let mut acc = Rat::zero();
        for i in 1..=j {
            acc += &g[i] * &inv[j - i];
        }
        inv[j] = -acc / &g[0];
    }
    // raise to the m-th power mod t^m
    let mut row = vec![Rat::zero(); order];
    row[0] = Rat::one();
    for _ in 0..m {
        let mut next = vec![Rat::zero(); order];
        for i in 0..order {
            if row[i].is_zero() {
                continue;
            }
            for j in 0..(order - i) {
                if inv[j].is_zero() {
                    continue;
                }
                let t = &row[i] * &inv[j];
                next[i + j] += t;
            }
        }
        row = next;
    }
    memo.lock().unwrap().insert((p, m, n), row.clone());
    row
}

/// All partitions of k with parts strictly below `bound`, parts weakly
/// decreasing, enumerated largest-first in lexicographic order.
pub fn partitions_bounded(k: u32, bound: u64) -> Vec<Vec<u64>> {
    assert!(bound >= 1);
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(rem: u64, max_part: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        let top = rem.min(max_part);
        for part in (1..=top).rev() {
            cur.push(part);
            rec(rem - part, part, cur, out);
            cur.pop();
        }
    }
    rec(k as u64, bound.saturating_sub(1), &mut cur, &mut out);
    out
}

/// Universal coefficient as the partition sum
/// p^(-nm) * sum over partitions mu of m-k with parts < p^n of
/// (-p^n)^(-len) * multinomial(m-1+len; m-1, multiplicities) * prod C(p^n, i+1)^mult_i.
pub fn v_partition(p: u32, m: u32, k: u32, n: u32) -> Rat {
    if k > m || k == 0 {
        return Rat::zero();
    }
    let pn_big = BigInt::from(p).pow(n);
    let bound: u64 = (&pn_big).try_into().unwrap_or(u64::MAX);
    let mut total = Rat::zero();
    for mu in partitions_bounded(m - k, bound) {
        let len = mu.len() as u32;
        // multiplicities of each part value
        let mut mult: HashMap<u64, u32> = HashMap::new();
        for part in &mu {
            *mult.entry(*part).or_insert(0) += 1;
        }
        // multinomial (m-1+len)! / ((m-1)! * prod mult_i!)
        let mut multinomial = Rat::one();
        {
            let mut numer = BigInt::one();
            for i in 1..=len {
                numer *= BigInt::from(m - 1 + i);
            }
            let mut denom = BigInt::one();
            for (_, c) in &mult {
                for i in 1..=*c {
                    denom *= BigInt::from(i);
                }
            }
            multinomial = multinomial * Rat::new(numer, denom);
        }
        // prod_i C(p^n, i+1)^(mult_i)
        let mut prod = Rat::one();
        for (part, c) in &mult {
            let b = binomial_big(&pn_big, part + 1);
            prod = prod * Rat::from_integer(b).pow(*c as i32);
        }
        // (-p^n)^(-len)
        let sign = if len % 2 == 0 { Rat::one() } else { -Rat::one() };
        let scale = sign * p_pow(p, -((n * len) as i64));
        total += scale * multinomial * prod;
    }
    total * p_pow(p, -((n * m) as i64))
}

fn binomial_big(n: &BigInt, k: u64) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= n - BigInt::from(i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// Pointwise Mahler coefficient: universal part times alpha^(k - m*p^n).
pub fn v_at(alpha: &Point, p: u32, m: u32, k: u32, n: u32) -> Result<AlgConst> {
    let u = v_taylor(p, m, k, n);
    if u.is_zero() {
        return Ok(AlgConst::zero());
    }
    let e = k as i64 - m as i64 * (p as i64).pow(n);
    Ok(alpha.pow_alg(p, e).scale(&u))
}

/// Pointwise Mahler coefficient with an arbitrary ring element as the base.
pub fn v_at_alg(alpha: &AlgConst, p: u32, m: u32, k: u32, n: u32) -> Result<AlgConst> {
    let u = v_taylor(p, m, k, n);
    if u.is_zero() {
        return Ok(AlgConst::zero());
    }
    let e = k as i64 - m as i64 * (p as i64).pow(n);
    Ok(alpha.pow_i64(e)?.scale(&u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::rat::{rat, rat_i};

    #[test]
    fn taylor_examples() {
        assert_eq!(v_taylor(2, 2, 2, 1), rat(1, 4));
        assert_eq!(v_taylor(2, 2, 1, 1), rat(-1, 4));
        assert_eq!(v_taylor(3, 1, 1, 1), rat(1, 3));
        assert_eq!(v_taylor(3, 2, 1, 1), rat(-2, 9));
        // n = 0 rows are Kronecker deltas
        for p in [2, 3, 5] {
            for m in 1..=5u32 {
                for k in 1..=m {
                    let expect = if k == m { Rat::one() } else { Rat::zero() };
                    assert_eq!(v_taylor(p, m, k, 0), expect);
                }
            }
        }
    }

    #[test]
    fn diagonal_is_p_power() {
        for p in [2u32, 3, 5] {
            for m in 1..=4 {
                for n in 0..=3 {
                    assert_eq!(v_taylor(p, m, m, n), p_pow(p, -((n * m) as i64)));
                }
            }
        }
    }

    #[test]
    fn partition_enumeration() {
        assert_eq!(partitions_bounded(0, 5), vec![Vec::<u64>::new()]);
        assert_eq!(partitions_bounded(2, 2), vec![vec![1, 1]]);
        assert_eq!(partitions_bounded(3, 3), vec![vec![2, 1], vec![1, 1, 1]]);
        // parts < 1 leaves nothing for k >= 1
        assert!(partitions_bounded(3, 1).is_empty());
    }

    #[test]
    fn partition_formula_examples() {
        assert_eq!(v_partition(2, 2, 1, 1), rat(-1, 4));
        assert_eq!(v_partition(3, 2, 2, 1), rat(1, 9));
        // k < m at n = 0: empty partition set
        assert_eq!(v_partition(5, 3, 1, 0), Rat::zero());
    }

    #[test]
    fn dual_formula_agreement_smoke() {
        for p in [2u32, 3] {
            for m in 1..=4u32 {
                for k in 1..=m {
                    for n in 0..=2u32 {
                        assert_eq!(
                            v_taylor(p, m, k, n),
                            v_partition(p, m, k, n),
                            "disagreement at p={p} m={m} k={k} n={n}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn pointwise_values() {
        // V^1_{1,1}(1) = 1/p
        for p in [2u32, 3, 5] {
            let v = v_at(&Point::one(), p, 1, 1, 1).unwrap();
            assert_eq!(v, AlgConst::from_rat(p_pow(p, -1)));
        }
        // V^m_{m,n}(alpha) = p^{-nm} alpha^{m - p^n m}
        let alpha = Point::from_rational(&rat_i(2));
        let v = v_at(&alpha, 3, 2, 2, 1).unwrap();
        let expect = AlgConst::from_rat(rat(1, 9) * rat_pow_int(rat_i(2), 2 - 3 * 2));
        assert_eq!(v, expect);
    }

    fn rat_pow_int(base: Rat, e: i64) -> Rat {
        crate::constants::rat::rat_pow(&base, e)
    }
}
