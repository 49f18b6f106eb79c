//! Mahler-tree geometry of pole sets: membership under the p-power
//! equivalence, canonical keys, cycles, support, order, dispersion, heights
//! and bouquets.

use crate::constants::point::Point;
use crate::constants::qz::QZ;
use crate::constants::rat::{multiplicative_order, rat_pow, Rat};
use crate::error::{Error, Result};
use crate::ratfun::PFD;
use num::{BigInt, BigUint, One, Zero};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TreeKind {
    NonTorsion,
    Torsion,
}

/// A Mahler tree: the equivalence class of a nonzero constant under
/// alpha ~ gamma iff alpha^(p^r) = gamma^(p^s).
#[derive(Debug, Clone)]
pub struct Tree {
    pub p: u32,
    pub kind: TreeKind,
    /// Stable canonical key, used for map lookups and serialized output.
    pub key: String,
    /// The Mahler cycle C(tau) in powering order, empty for non-torsion trees.
    pub cycle: Vec<Point>,
    /// e = |C(tau)|, zero for non-torsion trees.
    pub cycle_len: u32,
    anchor: Point,
}

impl Tree {
    pub fn contains(&self, pt: &Point, p: u32) -> bool {
        debug_assert_eq!(p, self.p);
        same_tree(pt, &self.anchor, p)
    }

    pub fn anchor(&self) -> &Point {
        &self.anchor
    }

    pub fn is_torsion(&self) -> bool {
        self.kind == TreeKind::Torsion
    }
}

impl PartialEq for Tree {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}
impl Eq for Tree {}
impl PartialOrd for Tree {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Tree {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key.cmp(&other.key)
    }
}

/// v_p for possibly composite p: largest k with p^k dividing e (e != 0).
fn vp_i64(mut e: i64, p: u32) -> u32 {
    debug_assert!(e != 0);
    let mut v = 0;
    while e % p as i64 == 0 {
        e /= p as i64;
        v += 1;
    }
    v
}

/// Primitive exponent data of a point's radical part: the exponent vector of
/// the radicand divided by the largest common p-power, together with the level
/// (p-power offset of this point against the primitive vector).
fn radical_profile(pt: &Point, p: u32) -> Option<(Vec<(BigUint, i64)>, i64)> {
    if pt.is_root_of_unity() {
        return None;
    }
    let vec = crate::constants::rat::rat_prime_exponents(&pt.radicand);
    let w = vec.values().map(|e| vp_i64(*e, p)).min().expect("nonempty vector");
    let primitive: Vec<(BigUint, i64)> =
        vec.iter().map(|(q, e)| (q.clone(), e / (p as i64).pow(w))).collect();
    let level = w as i64 - pt.depth_for(p) as i64;
    Some((primitive, level))
}

/// Prime-to-p torsion class normalized to level zero: j* / n'.
fn normalized_torsion(pt: &Point, p: u32, level: i64) -> (BigUint, BigUint) {
    let (_, coprime) = pt.torsion.split_p(p);
    let n = coprime.order();
    if n.is_one() {
        return (BigUint::zero(), BigUint::one());
    }
    let e = multiplicative_order(p, &n);
    // j* = j * p^(-level) mod n, exponent reduced mod e
    let shift = (-level).rem_euclid(e as i64) as u32;
    let j = coprime.numer() * BigUint::from(p).modpow(&BigUint::from(shift), &n) % &n;
    (j, n)
}

/// alpha ~ gamma iff alpha^(p^r) = gamma^(p^s) for some r, s >= 0.
pub fn same_tree(a: &Point, b: &Point, p: u32) -> bool {
    match (radical_profile(a, p), radical_profile(b, p)) {
        (None, None) => {
            // torsion: prime-to-p orders must agree and the coprime residues
            // must lie in one orbit under multiplication by p
            let (_, ca) = a.torsion.split_p(p);
            let (_, cb) = b.torsion.split_p(p);
            let na = ca.order();
            if na != cb.order() {
                return false;
            }
            if na.is_one() {
                return true;
            }
            let e = multiplicative_order(p, &na);
            let ja = ca.numer();
            let jb = cb.numer();
            let pb = BigUint::from(p);
            let mut x = ja.clone();
            for _ in 0..e {
                if x == jb {
                    return true;
                }
                x = x * &pb % &na;
            }
            false
        }
        (Some((va, la)), Some((vb, lb))) => {
            if va != vb {
                return false;
            }
            normalized_torsion(a, p, la) == normalized_torsion(b, p, lb)
        }
        _ => false,
    }
}

/// The canonical tree containing a point, with its cycle computed.
pub fn tree_of(pt: &Point, p: u32) -> Tree {
    match radical_profile(pt, p) {
        None => {
            // strip the p-part of the order by repeated p-th powering
            let eta = pt.torsion_eta(p).expect("torsion point");
            let gamma = pt.power_p(p, eta);
            let n = gamma.root_of_unity_order().unwrap();
            let e = if n.is_one() { 1 } else { multiplicative_order(p, &n) };
            // enumerate the orbit and start the cycle at its least member
            let mut orbit = Vec::with_capacity(e as usize);
            let mut x = gamma;
            for _ in 0..e {
                orbit.push(x.clone());
                x = x.power_p(p, 1);
            }
            let start = orbit
                .iter()
                .enumerate()
                .min_by(|(_, a), (_, b)| a.cmp(b))
                .map(|(i, _)| i)
                .unwrap();
            let cycle: Vec<Point> =
                (0..e as usize).map(|i| orbit[(start + i) % e as usize].clone()).collect();
            let jmin = cycle[0].torsion.numer();
            let key = format!("T:p={};n={};j={}", p, n, jmin);
            Tree {
                p,
                kind: TreeKind::Torsion,
                key,
                anchor: cycle[0].clone(),
                cycle,
                cycle_len: e,
            }
        }
        Some((vec, level)) => {
            let (j, n) = normalized_torsion(pt, p, level);
            // anchor: the level-zero point zeta_n^j * r0 with r0 the primitive radicand
            let mut r0 = Rat::one();
            for (q, e) in &vec {
                r0 *= rat_pow(&Rat::from_integer(BigInt::from(q.clone())), *e);
            }
            let jj: i64 = BigInt::from(j.clone()).try_into().expect("orbit label fits");
            let nn: u64 = (&n).try_into().expect("coprime order fits");
            let anchor = Point::new(p, QZ::from_parts(jj, nn), r0.clone(), 0);
            let key = format!("N:p={};r={};t={}/{}", p, r0, j, n);
            Tree { p, kind: TreeKind::NonTorsion, key, cycle: Vec::new(), cycle_len: 0, anchor }
        }
    }
}

/// Element of a Mahler support: the infinity marker or a tree.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum SuppElem {
    Infinity,
    Tree(Tree),
}

/// The Mahler support of a decomposed function, deterministically ordered
/// (infinity first, then trees by key).
pub fn supp(pfd: &PFD, p: u32) -> Vec<SuppElem> {
    let mut out = Vec::new();
    if !pfd.laurent.is_empty() {
        out.push(SuppElem::Infinity);
    }
    let mut seen: BTreeMap<String, Tree> = BTreeMap::new();
    for pt in pfd.poles.keys() {
        let t = tree_of(pt, p);
        seen.entry(t.key.clone()).or_insert(t);
    }
    out.extend(seen.into_values().map(SuppElem::Tree));
    out
}

/// Maximal pole order of f inside one tree (0 when the tree misses f).
pub fn ord_at(pfd: &PFD, tree: &Tree, p: u32) -> u32 {
    pfd.poles
        .iter()
        .filter(|(pt, _)| tree.contains(pt, p))
        .flat_map(|(_, m)| m.keys().copied())
        .max()
        .unwrap_or(0)
}

/// The poles of f inside one tree.
pub fn sing(pfd: &PFD, tree: &Tree, p: u32) -> Vec<Point> {
    pfd.poles.keys().filter(|pt| tree.contains(pt, p)).cloned().collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Disp {
    Finite(u32),
    Infinite,
}

impl Disp {
    pub fn is_positive(&self) -> bool {
        !matches!(self, Disp::Finite(0))
    }
}

impl std::fmt::Display for Disp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Disp::Finite(d) => write!(f, "{}", d),
            Disp::Infinite => write!(f, "inf"),
        }
    }
}

/// Mahler dispersion at a tree in the support.
pub fn disp_at_tree(pfd: &PFD, tree: &Tree, p: u32) -> Result<Disp> {
    let sing = sing(pfd, tree, p);
    if sing.is_empty() {
        return Err(Error::NotInSupport);
    }
    if tree.is_torsion() && sing.iter().any(|pt| on_cycle(pt, p)) {
        return Ok(Disp::Infinite);
    }
    // bound the search: powering an off-cycle torsion point beyond its height
    // lands on the cycle; non-torsion levels rise strictly
    let bound: u32 = if tree.is_torsion() {
        sing.iter().map(|pt| pt.torsion_eta(p).unwrap()).max().unwrap()
    } else {
        let levels: Vec<i64> = sing.iter().map(|pt| radical_profile(pt, p).unwrap().1).collect();
        let max = levels.iter().max().unwrap();
        let min = levels.iter().min().unwrap();
        (max - min) as u32
    };
    let set: std::collections::BTreeSet<&Point> = sing.iter().collect();
    let mut best = 0;
    for alpha in &sing {
        let mut x = alpha.clone();
        for d in 0..=bound {
            if set.contains(&x) {
                best = best.max(d);
            }
            x = x.power_p(p, 1);
        }
    }
    Ok(Disp::Finite(best))
}

/// Mahler dispersion at infinity for radix p.
pub fn disp_at_infinity(pfd: &PFD, p: u32) -> Result<Disp> {
    if pfd.laurent.is_empty() {
        return Err(Error::NotInSupport);
    }
    let exps: Vec<i64> = pfd.laurent.keys().copied().collect();
    if exps == [0] {
        return Ok(Disp::Finite(0));
    }
    let set: std::collections::BTreeSet<i64> = exps.iter().copied().collect();
    let abs_max = exps.iter().map(|e| e.abs()).max().unwrap();
    let mut best = 0u32;
    for &i in &exps {
        if i == 0 {
            continue;
        }
        let mut x = i;
        let mut d = 0u32;
        while x.abs() <= abs_max {
            if set.contains(&x) {
                best = best.max(d);
            }
            match x.checked_mul(p as i64) {
                Some(next) => {
                    x = next;
                    d += 1;
                }
                None => break,
            }
        }
    }
    Ok(Disp::Finite(best))
}

/// Height of a root of unity over the Mahler cycle.
pub fn torsion_height(pt: &Point, p: u32) -> Result<u32> {
    pt.torsion_eta(p)
}

pub fn on_cycle(pt: &Point, p: u32) -> bool {
    pt.is_root_of_unity() && pt.torsion_eta(p).unwrap() == 0
}

/// A bouquet in a non-torsion tree: all p^n-th roots of the root for n up to
/// the height.
#[derive(Debug, Clone)]
pub struct Bouquet {
    pub root: Point,
    pub height: u32,
    pub members: Vec<Point>,
}

impl Bouquet {
    /// Builds the full bouquet of the given height over a root.
    pub fn grow(root: Point, height: u32, p: u32) -> Bouquet {
        let mut members = vec![root.clone()];
        let mut layer = vec![root.clone()];
        for _ in 0..height {
            layer = layer.iter().flat_map(|pt| pt.pth_roots(p)).collect();
            members.extend(layer.iter().cloned());
        }
        Bouquet { root, height, members }
    }

    /// Height of a member above the root; None for non-members.
    pub fn eta(&self, pt: &Point, p: u32) -> Option<u32> {
        let mut x = pt.clone();
        for n in 0..=self.height {
            if x == self.root {
                return Some(n);
            }
            x = x.power_p(p, 1);
        }
        None
    }

    /// Members at exact height n over the root.
    pub fn slice(&self, n: u32, p: u32) -> Vec<Point> {
        self.members.iter().filter(|pt| self.eta(pt, p) == Some(n)).cloned().collect()
    }
}

/// The minimal bouquet containing a finite nonempty set of same-tree
/// non-torsion points: root = iterated meet, height = maximal offset.
pub fn minimal_bouquet(points: &[Point], p: u32) -> Bouquet {
    assert!(!points.is_empty());
    let levels: Vec<i64> =
        points.iter().map(|pt| radical_profile(pt, p).expect("non-torsion point").1).collect();
    let mut target = *levels.iter().max().unwrap();
    loop {
        let lifted: Vec<Point> = points
            .iter()
            .zip(&levels)
            .map(|(pt, l)| pt.power_p(p, (target - l) as u32))
            .collect();
        if lifted.iter().all(|x| *x == lifted[0]) {
            let root = lifted[0].clone();
            let height = (target - levels.iter().min().unwrap()) as u32;
            return Bouquet::grow(root, height, p);
        }
        target += 1;
    }
}

/// The unique minimal-height bouquet containing sing(f, tau).
pub fn bouquet_of(pfd: &PFD, tree: &Tree, p: u32) -> Result<Bouquet> {
    if tree.is_torsion() {
        return Err(Error::WrongKind);
    }
    let sing = sing(pfd, tree, p);
    if sing.is_empty() {
        return Err(Error::NotInSupport);
    }
    Ok(minimal_bouquet(&sing, p))
}

/// Height of f at a torsion tree: the maximal height of its poles there.
pub fn torsion_ht(pfd: &PFD, tree: &Tree, p: u32) -> Result<u32> {
    if !tree.is_torsion() {
        return Err(Error::WrongKind);
    }
    let sing = sing(pfd, tree, p);
    if sing.is_empty() {
        return Err(Error::NotInSupport);
    }
    Ok(sing.iter().map(|pt| pt.torsion_eta(p).unwrap()).max().unwrap())
}

/// All elements of a torsion tree at exact height h over the cycle.
pub fn torsion_slice(tree: &Tree, h: u32, p: u32) -> Vec<Point> {
    assert!(tree.is_torsion());
    if h == 0 {
        return tree.cycle.clone();
    }
    let mut layer: Vec<Point> = tree.cycle.clone();
    for step in 0..h {
        let mut next: Vec<Point> = Vec::new();
        for pt in &layer {
            for r in pt.pth_roots(p) {
                let eta = r.torsion_eta(p).unwrap();
                if eta == step + 1 {
                    next.push(r);
                }
            }
        }
        next.sort();
        next.dedup();
        layer = next;
    }
    layer
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::rat::{rat, rat_i};

    fn pt_rad(p: u32, j: i64, n: u64, r: i64, h: u32) -> Point {
        Point::new(p, QZ::from_parts(j, n), rat_i(r), h)
    }

    #[test]
    fn same_tree_examples() {
        // 2 ~ cbrt(2) for p = 3
        assert!(same_tree(&Point::from_rational(&rat_i(2)), &pt_rad(3, 0, 1, 2, 1), 3));
        // zeta4 ~ zeta12 for p = 3
        assert!(same_tree(&Point::root_of_unity(1, 4), &Point::root_of_unity(1, 12), 3));
        // 2 and 3 live in different trees
        assert!(!same_tree(&Point::from_rational(&rat_i(2)), &Point::from_rational(&rat_i(3)), 2));
        // zeta3 * 2 and 2 differ for p = 2 (the zeta3 never dies)
        let mixed = Point::new(2, QZ::from_parts(1, 3), rat_i(2), 0);
        assert!(!same_tree(&mixed, &Point::from_rational(&rat_i(2)), 2));
        // 2 ~ 4 for p = 2, and 512 = 2^(3^2) joins tau(2) only for p = 3
        assert!(same_tree(&Point::from_rational(&rat_i(2)), &Point::from_rational(&rat_i(4)), 2));
        assert!(same_tree(&Point::from_rational(&rat_i(512)), &Point::from_rational(&rat_i(2)), 3));
        assert!(!same_tree(&Point::from_rational(&rat_i(512)), &Point::from_rational(&rat_i(2)), 2));
        // rational radicands below 1 work the same
        assert!(same_tree(&Point::from_rational(&rat(3, 2)), &Point::from_rational(&rat(9, 4)), 2));
    }

    #[test]
    fn tree_of_cycles() {
        // tau(zeta4) for p = 3: cycle {zeta4, zeta4^3}, e = 2
        let t = tree_of(&Point::root_of_unity(1, 4), 3);
        assert_eq!(t.kind, TreeKind::Torsion);
        assert_eq!(t.cycle_len, 2);
        assert!(t.cycle.contains(&Point::root_of_unity(1, 4)));
        assert!(t.cycle.contains(&Point::root_of_unity(3, 4)));
        // tau(zeta3) for p = 2: cycle {zeta3, zeta3^2}, e = 2
        let t = tree_of(&Point::root_of_unity(1, 3), 2);
        assert_eq!(t.cycle_len, 2);
        assert!(t.cycle.contains(&Point::root_of_unity(2, 3)));
        // tau(1): cycle {1}
        let t = tree_of(&Point::one(), 5);
        assert_eq!(t.cycle_len, 1);
        assert_eq!(t.cycle, vec![Point::one()]);
        // zeta12 lands in the same tree object as zeta4 for p = 3
        let t12 = tree_of(&Point::root_of_unity(1, 12), 3);
        let t4 = tree_of(&Point::root_of_unity(1, 4), 3);
        assert_eq!(t12, t4);
        assert_eq!(t12.key, t4.key);
        // zeta5 for p = 2: e = 4
        let t5 = tree_of(&Point::root_of_unity(1, 5), 2);
        assert_eq!(t5.cycle_len, 4);
        // zeta2 for p = 2 lands in tau(1)
        let t2 = tree_of(&Point::root_of_unity(1, 2), 2);
        let t1 = tree_of(&Point::one(), 2);
        assert_eq!(t2, t1);
    }

    #[test]
    fn cycle_transitivity() {
        for (p, pt) in [
            (3u32, Point::root_of_unity(1, 4)),
            (2, Point::root_of_unity(1, 3)),
            (2, Point::root_of_unity(1, 5)),
            (3, Point::root_of_unity(2, 5)),
        ] {
            let t = tree_of(&pt, p);
            let e = t.cycle_len as usize;
            for (i, gamma) in t.cycle.iter().enumerate() {
                assert_eq!(gamma.power_p(p, 1), t.cycle[(i + 1) % e]);
            }
        }
    }

    #[test]
    fn non_torsion_keys() {
        let a = tree_of(&Point::from_rational(&rat_i(2)), 3);
        let b = tree_of(&pt_rad(3, 1, 3, 2, 1), 3); // zeta3 * cbrt2
        assert_eq!(a.kind, TreeKind::NonTorsion);
        assert_eq!(a, b);
        let c = tree_of(&Point::from_rational(&rat(3, 2)), 3);
        assert_ne!(a, c);
    }

    #[test]
    fn minimal_bouquet_meet() {
        // cbrt2 and zeta3*cbrt2 merge only after cubing: root 2, height 1
        let pts = vec![pt_rad(3, 0, 1, 2, 1), pt_rad(3, 1, 3, 2, 1)];
        let b = minimal_bouquet(&pts, 3);
        assert_eq!(b.root, Point::from_rational(&rat_i(2)));
        assert_eq!(b.height, 1);
        assert_eq!(b.members.len(), 4);
        assert_eq!(b.eta(&pts[0], 3), Some(1));
        // singleton
        let b = minimal_bouquet(&[Point::from_rational(&rat_i(2))], 3);
        assert_eq!(b.height, 0);
        // 2 and 4 for p = 2: meet is 4
        let pts = vec![Point::from_rational(&rat_i(2)), Point::from_rational(&rat_i(4))];
        let b = minimal_bouquet(&pts, 2);
        assert_eq!(b.root, Point::from_rational(&rat_i(4)));
        assert_eq!(b.height, 1);
    }

    #[test]
    fn torsion_slices() {
        let t = tree_of(&Point::root_of_unity(1, 4), 3);
        assert_eq!(torsion_slice(&t, 0, 3).len(), 2);
        // |tau_h| = (p^h - p^(h-1)) e
        assert_eq!(torsion_slice(&t, 1, 3).len(), 4);
        assert_eq!(torsion_slice(&t, 2, 3).len(), 12);
        assert!(torsion_slice(&t, 1, 3).contains(&Point::root_of_unity(1, 12)));
    }
}
