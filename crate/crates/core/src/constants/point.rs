//! Canonical pole locations zeta * r^(1/p^h): a root of unity times the
//! positive real p^h-th root of a positive rational. Structural equality of
//! the canonical form coincides with equality of values.

use super::qz::QZ;
use super::rat::{extract_p_power_root, rat_pow, Rat};
use num::{BigUint, One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    /// Class of the root-of-unity factor in Q/Z.
    pub torsion: QZ,
    /// Positive rational radicand, never a rational p-th power while the
    /// radical index exceeds 1.
    pub radicand: Rat,
    /// p^h for radical depth h; the radical factor is radicand^(1/radical_index).
    pub radical_index: u64,
}

impl Point {
    /// Canonicalizes (torsion, radicand, depth): extracts rational p-th powers
    /// out of the radicand into lower depth and collapses a trivial radicand.
    pub fn new(p: u32, torsion: QZ, radicand: Rat, depth: u32) -> Point {
        assert!(radicand > Rat::zero(), "radicand must be positive");
        let mut r = radicand;
        let mut h = depth;
        if r.is_one() {
            h = 0;
        } else if h > 0 {
            let (base, m) = extract_p_power_root(&r, p);
            let take = m.min(h);
            if take > 0 {
                r = pow_p_times(&base, p, m - take);
                h -= take;
            }
            if r.is_one() {
                h = 0;
            }
        }
        Point { torsion, radicand: r, radical_index: (p as u64).pow(h) }
    }

    pub fn is_root_of_unity(&self) -> bool {
        self.radicand.is_one()
    }

    pub fn from_rational(q: &Rat) -> Point {
        assert!(!q.is_zero(), "points are nonzero constants");
        let torsion = if q > &Rat::zero() { QZ::zero() } else { QZ::from_parts(1, 2) };
        Point { torsion, radicand: q.abs(), radical_index: 1 }
    }

    pub fn one() -> Point {
        Point { torsion: QZ::zero(), radicand: Rat::one(), radical_index: 1 }
    }

    pub fn root_of_unity(j: i64, n: u64) -> Point {
        Point { torsion: QZ::from_parts(j, n), radicand: Rat::one(), radical_index: 1 }
    }

    /// Radical depth h with radical_index = p^h.
    pub fn depth_for(&self, p: u32) -> u32 {
        let mut idx = self.radical_index;
        let mut h = 0u32;
        while idx > 1 {
            debug_assert_eq!(idx % p as u64, 0, "radical index is not a power of the radix");
            idx /= p as u64;
            h += 1;
        }
        h
    }

    /// Order of the root of unity, absent for points with nontrivial radical part.
    pub fn root_of_unity_order(&self) -> Option<BigUint> {
        if self.is_root_of_unity() {
            Some(self.torsion.order())
        } else {
            None
        }
    }

    /// x^(p^n), canonical.
    pub fn power_p(&self, p: u32, n: u32) -> Point {
        let depth = self.depth_for(p);
        let mut torsion = self.torsion.clone();
        for _ in 0..n {
            torsion = torsion.mul_u64(p as u64);
        }
        let spent = n.min(depth);
        let left = n - spent;
        let radicand = pow_p_times(&self.radicand, p, left);
        Point::new(p, torsion, radicand, depth - spent)
    }

    /// The p distinct points y with y^p = x. The principal root divides the
    /// torsion exponent by p and deepens the radical; the others add i/p.
    pub fn pth_roots(&self, p: u32) -> Vec<Point> {
        let depth = self.depth_for(p);
        let principal_torsion = self.torsion.div_exact(p as u64);
        let (radicand, new_depth) = if self.radicand.is_one() {
            (Rat::one(), 0)
        } else {
            (self.radicand.clone(), depth + 1)
        };
        (0..p)
            .map(|i| {
                let t = principal_torsion.add(&QZ::from_parts(i as i64, p as u64));
                Point::new(p, t, radicand.clone(), new_depth)
            })
            .collect()
    }

    /// The exact value x^e as a ring constant, computed structurally: the
    /// torsion exponent moves in Q/Z and the radical exponent splits into a
    /// rational part and a residual power of the tower generator.
    pub fn pow_alg(&self, p: u32, e: i64) -> crate::constants::algconst::AlgConst {
        use crate::constants::algconst::AlgConst;
        use crate::constants::rat::rat_pow;
        let torsion = self.torsion.mul_int(&num::BigInt::from(e));
        let n: u64 = (&torsion.order()).try_into().expect("conductor fits in u64");
        let j: i64 = num::BigInt::from(torsion.numer()).try_into().expect("numerator fits");
        let zeta = AlgConst::zeta(n as u32, j);
        if self.radicand.is_one() {
            return zeta;
        }
        let h = self.depth_for(p);
        if h == 0 {
            return zeta.scale(&rat_pow(&self.radicand, e));
        }
        // radicand^(e / p^h) = radicand^q * rho^t with e = q p^h + t, 0 <= t < p^h
        let index = self.radical_index as i64;
        let q = e.div_euclid(index);
        let t = e.rem_euclid(index) as u64;
        let rational = rat_pow(&self.radicand, q);
        if t == 0 {
            return zeta.scale(&rational);
        }
        let rho_t = AlgConst::radical_power(p, self.radicand.clone(), h, t);
        zeta.mul(&rho_t).expect("same tower").scale(&rational)
    }

    /// Height of a root of unity above the Mahler cycle: the number of p-th
    /// powerings needed to reach order coprime to p.
    pub fn torsion_eta(&self, p: u32) -> crate::error::Result<u32> {
        if !self.is_root_of_unity() {
            return Err(crate::error::Error::NotTorsion);
        }
        let (pp, _) = self.torsion.split_p(p);
        let mut n = pp.order();
        let mut eta = 0u32;
        let p_big = BigUint::from(p);
        while !n.is_one() {
            let g = num::Integer::gcd(&n, &p_big);
            debug_assert!(!g.is_one());
            n = &n / g;
            eta += 1;
        }
        Ok(eta)
    }
}

fn pow_p_times(r: &Rat, p: u32, times: u32) -> Rat {
    let mut out = r.clone();
    for _ in 0..times {
        out = rat_pow(&out, p as i64);
    }
    out
}

impl std::fmt::Display for Point {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if !self.torsion.is_zero() {
            let n = self.torsion.order();
            let j = self.torsion.numer();
            if j.is_one() {
                parts.push(format!("zeta({})", n));
            } else {
                parts.push(format!("zeta({})^{}", n, j));
            }
        }
        if self.radical_index > 1 {
            parts.push(format!("root({},{})", self.radicand, self.radical_index));
        } else if !self.radicand.is_one() || parts.is_empty() {
            parts.push(format!("{}", self.radicand));
        }
        write!(f, "{}", parts.join("*"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::rat::{rat, rat_i};

    fn pt_rad(p: u32, j: i64, n: u64, r: i64, h: u32) -> Point {
        Point::new(p, QZ::from_parts(j, n), rat_i(r), h)
    }

    #[test]
    fn canonical_depth_reduction() {
        // 4^(1/2) = 2 for p = 2
        let x = pt_rad(2, 0, 1, 4, 1);
        assert_eq!(x, Point::from_rational(&rat_i(2)));
        // 8^(1/2) stays at depth 1
        let y = pt_rad(2, 0, 1, 8, 1);
        assert_eq!(y.radical_index, 2);
        assert_eq!(y.radicand, rat_i(8));
        // 8^(1/9) = 2^(1/3) for p = 3
        let z = pt_rad(3, 0, 1, 8, 2);
        assert_eq!(z, pt_rad(3, 0, 1, 2, 1));
    }

    #[test]
    fn power_examples() {
        // (zeta_12)^3 = zeta_4 for p = 3
        let z12 = Point::root_of_unity(1, 12);
        assert_eq!(z12.power_p(3, 1), Point::root_of_unity(1, 4));
        // (2^(1/3))^3 = 2 for p = 3
        let c = pt_rad(3, 0, 1, 2, 1);
        assert_eq!(c.power_p(3, 1), Point::from_rational(&rat_i(2)));
        // 2^(3^2) = 512
        let two = Point::from_rational(&rat_i(2));
        assert_eq!(two.power_p(3, 2), Point::from_rational(&rat_i(512)));
    }

    #[test]
    fn roots_examples() {
        let two = Point::from_rational(&rat_i(2));
        let roots = two.pth_roots(3);
        assert_eq!(roots.len(), 3);
        for r in &roots {
            assert_eq!(r.power_p(3, 1), two);
        }
        assert!(roots.contains(&pt_rad(3, 0, 1, 2, 1)));
        let z4 = Point::root_of_unity(1, 4);
        let roots = z4.pth_roots(3);
        assert!(roots.contains(&Point::root_of_unity(1, 12)));
        for r in &roots {
            assert_eq!(r.power_p(3, 1), z4);
        }
        let one = Point::one();
        let roots = one.pth_roots(2);
        assert!(roots.contains(&Point::one()));
        assert!(roots.contains(&Point::root_of_unity(1, 2)));
    }

    #[test]
    fn order_and_eta() {
        assert_eq!(
            Point::root_of_unity(1, 12).root_of_unity_order(),
            Some(BigUint::from(12u32))
        );
        assert_eq!(pt_rad(3, 0, 1, 2, 1).root_of_unity_order(), None);
        assert_eq!(Point::root_of_unity(1, 12).torsion_eta(3).unwrap(), 1);
        assert_eq!(Point::root_of_unity(1, 4).torsion_eta(3).unwrap(), 0);
        assert_eq!(Point::root_of_unity(1, 6).torsion_eta(2).unwrap(), 1);
        assert!(pt_rad(3, 0, 1, 2, 1).torsion_eta(3).is_err());
    }

    #[test]
    fn rational_points() {
        let m = Point::from_rational(&rat(-3, 2));
        assert_eq!(m.torsion, QZ::from_parts(1, 2));
        assert_eq!(m.radicand, rat(3, 2));
    }

    #[test]
    fn canonical_round_trip() {
        // every p-th root powers back to the original point
        for (p, pt) in [
            (2u32, Point::root_of_unity(1, 3)),
            (3, pt_rad(3, 1, 4, 2, 1)),
            (2, Point::from_rational(&rat(3, 2))),
            (5, pt_rad(5, 2, 7, 10, 2)),
        ] {
            for r in pt.pth_roots(p) {
                assert_eq!(r.power_p(p, 1), pt);
            }
        }
    }
}
