//! Linear algebra on coefficient vectors supported on a Mahler cycle: the
//! cycle map induced by the twisted difference, its one-dimensional kernel for
//! positive twists, explicit sections, and the residual average that selects
//! the right section in the torsion residue construction.

use crate::constants::algconst::AlgConst;
use crate::constants::point::Point;
use crate::constants::rat::{p_pow, rat_i};
use crate::error::{Error, Result};
use crate::mahlercoeff::{v_at, v_taylor};
use crate::ratfun::PFD;
use crate::trees::{torsion_ht, Tree};
use num::Zero;
use std::collections::BTreeMap;

/// A finitely supported vector of constants indexed by (degree, cycle point).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycVec {
    tree_key: String,
    entries: BTreeMap<(u32, Point), AlgConst>,
}

impl CycVec {
    pub fn zero(tree: &Tree) -> Self {
        CycVec { tree_key: tree.key.clone(), entries: BTreeMap::new() }
    }

    pub fn tree_key(&self) -> &str {
        &self.tree_key
    }

    pub fn entries(&self) -> &BTreeMap<(u32, Point), AlgConst> {
        &self.entries
    }

    pub fn get(&self, k: u32, gamma: &Point) -> AlgConst {
        self.entries.get(&(k, gamma.clone())).cloned().unwrap_or_else(AlgConst::zero)
    }

    pub fn set(&mut self, k: u32, gamma: Point, value: AlgConst) {
        if value.is_zero() {
            self.entries.remove(&(k, gamma));
        } else {
            self.entries.insert((k, gamma), value);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Largest degree carrying a nonzero entry (0 for the zero vector).
    pub fn max_degree(&self) -> u32 {
        self.entries.keys().map(|(k, _)| *k).max().unwrap_or(0)
    }

    pub fn add(&self, other: &CycVec) -> Result<CycVec> {
        debug_assert_eq!(self.tree_key, other.tree_key);
        let mut out = self.clone();
        for ((k, gamma), c) in &other.entries {
            let cur = out.get(*k, gamma);
            out.set(*k, gamma.clone(), cur.add(c)?);
        }
        Ok(out)
    }

    pub fn scale_alg(&self, c: &AlgConst) -> Result<CycVec> {
        let mut out = CycVec { tree_key: self.tree_key.clone(), entries: BTreeMap::new() };
        for ((k, gamma), v) in &self.entries {
            out.set(*k, gamma.clone(), v.mul(c)?);
        }
        Ok(out)
    }
}

/// Restriction of the pole table of g to the cycle of a torsion tree.
pub fn cyclic_component(pfd: &PFD, tree: &Tree) -> Result<CycVec> {
    if !tree.is_torsion() {
        return Err(Error::WrongKind);
    }
    let mut out = CycVec::zero(tree);
    for gamma in &tree.cycle {
        if let Some(coeffs) = pfd.poles.get(gamma) {
            for (k, c) in coeffs {
                out.set(*k, gamma.clone(), c.clone());
            }
        }
    }
    Ok(out)
}

/// The cycle map: entry (k, gamma) of the output is
/// -v_k(gamma) + p^lambda sum_{s >= k} V^s_{k,1}(gamma) v_s(gamma^p).
pub fn d_apply(v: &CycVec, tree: &Tree, p: u32, lambda: i64) -> Result<CycVec> {
    let mut out = CycVec::zero(tree);
    let m = v.max_degree();
    if m == 0 {
        return Ok(out);
    }
    let plam = p_pow(p, lambda);
    for gamma in &tree.cycle {
        let gp = gamma.power_p(p, 1);
        for k in 1..=m {
            let mut acc = v.get(k, gamma).neg();
            let mut tail = AlgConst::zero();
            for s in k..=m {
                let vs = v.get(s, &gp);
                if vs.is_zero() {
                    continue;
                }
                tail = tail.add(&v_at(gamma, p, s, k, 1)?.mul(&vs)?)?;
            }
            acc = acc.add(&tail.scale(&plam))?;
            out.set(k, gamma.clone(), acc);
        }
    }
    Ok(out)
}

/// The kernel vector w of the cycle map for twist lambda >= 1: zero above
/// degree lambda, gamma^lambda in degree lambda, lower degrees by descending
/// recursion.
pub fn kernel_vector(tree: &Tree, p: u32, lambda: i64) -> Result<CycVec> {
    if !tree.is_torsion() {
        return Err(Error::WrongKind);
    }
    if lambda < 1 {
        return Err(Error::BadTwist);
    }
    let lam = lambda as u32;
    let e = tree.cycle_len;
    let mut w = CycVec::zero(tree);
    for gamma in &tree.cycle {
        w.set(lam, gamma.clone(), gamma.pow_alg(p, lambda));
    }
    for k in (1..lam).rev() {
        let mut row: Vec<(Point, AlgConst)> = Vec::with_capacity(e as usize);
        for (idx, gamma) in tree.cycle.iter().enumerate() {
            let mut acc = AlgConst::zero();
            for j in 0..e {
                let gj1 = &tree.cycle[((idx as u32 + j + 1) % e) as usize];
                let pw = p_pow(p, (lambda - k as i64) * j as i64);
                for s in (k + 1)..=lam {
                    let ws = w.get(s, gj1);
                    if ws.is_zero() {
                        continue;
                    }
                    let uni = v_taylor(p, s, k, 1);
                    if uni.is_zero() {
                        continue;
                    }
                    let pj1 = (p as i64).pow(j + 1);
                    let gpow = gamma.pow_alg(p, -(s as i64) * pj1);
                    acc = acc.add(&gpow.mul(&ws)?.scale(&(&uni * &pw)))?;
                }
            }
            let denom = rat_i(1) - p_pow(p, (lambda - k as i64) * e as i64);
            let pref = gamma.pow_alg(p, k as i64).scale(&(p_pow(p, lambda) / denom));
            row.push((gamma.clone(), pref.mul(&acc)?));
        }
        for (gamma, val) in row {
            w.set(k, gamma, val);
        }
    }
    Ok(w)
}

/// The omega-section applied to c: a vector d with D(d) agreeing with c in
/// every degree other than lambda, plus omega times the kernel vector when
/// lambda >= 1.
pub fn section(c: &CycVec, tree: &Tree, p: u32, lambda: i64, omega: &AlgConst) -> Result<CycVec> {
    let mut d = section_zero(c, tree, p, lambda)?;
    if lambda >= 1 && !omega.is_zero() {
        let w = kernel_vector(tree, p, lambda)?;
        d = d.add(&w.scale_alg(omega)?)?;
    }
    Ok(d)
}

/// The 0-section. Degrees are processed strictly descending; the inner sums
/// reference only strictly higher degrees of d, already fixed.
pub(crate) fn section_zero(c: &CycVec, tree: &Tree, p: u32, lambda: i64) -> Result<CycVec> {
    let e = tree.cycle_len;
    let m = c.max_degree();
    let mut d = CycVec::zero(tree);
    if m == 0 {
        return Ok(d);
    }
    let plam = p_pow(p, lambda);
    for k in (1..=m).rev() {
        let bracket = |d: &CycVec, idx: usize, j: u32| -> Result<AlgConst> {
            let gj = &tree.cycle[(idx + j as usize) % e as usize];
            let gj1 = &tree.cycle[(idx + j as usize + 1) % e as usize];
            let mut acc = c.get(k, gj);
            let mut tail = AlgConst::zero();
            for s in (k + 1)..=m {
                let ds = d.get(s, gj1);
                if ds.is_zero() {
                    continue;
                }
                tail = tail.add(&v_at(gj, p, s, k, 1)?.mul(&ds)?)?;
            }
            acc = acc.sub(&tail.scale(&plam))?;
            Ok(acc)
        };
        let mut row: Vec<(Point, AlgConst)> = Vec::with_capacity(e as usize);
        if lambda >= 1 && k == lambda as u32 {
            for (idx, gamma) in tree.cycle.iter().enumerate() {
                let mut acc = AlgConst::zero();
                for j in 0..e {
                    let weight = rat_i(j as i64 + 1 - e as i64);
                    if weight == rat_i(0) {
                        continue;
                    }
                    let pj = (p as i64).pow(j);
                    let gpow = gamma.pow_alg(p, -lambda * pj);
                    acc = acc.add(&gpow.mul(&bracket(&d, idx, j)?)?.scale(&weight))?;
                }
                let pref = gamma.pow_alg(p, lambda).scale(&(rat_i(1) / rat_i(e as i64)));
                row.push((gamma.clone(), pref.mul(&acc)?));
            }
        } else {
            let denom = p_pow(p, (lambda - k as i64) * e as i64) - rat_i(1);
            for (idx, gamma) in tree.cycle.iter().enumerate() {
                let mut acc = AlgConst::zero();
                for j in 0..e {
                    let pw = p_pow(p, (lambda - k as i64) * j as i64);
                    let pj = (p as i64).pow(j);
                    let gpow = gamma.pow_alg(p, -(k as i64) * pj);
                    acc = acc.add(&gpow.mul(&bracket(&d, idx, j)?)?.scale(&pw))?;
                }
                let pref = gamma.pow_alg(p, k as i64).scale(&(rat_i(1) / &denom));
                row.push((gamma.clone(), pref.mul(&acc)?));
            }
        }
        for (gamma, val) in row {
            d.set(k, gamma, val);
        }
    }
    Ok(d)
}

/// The residual average of f at a torsion tree: zero for lambda <= 0 or
/// height zero, otherwise the two-sum average built from the 0-section.
pub fn residual_average(pfd: &PFD, tree: &Tree, p: u32, lambda: i64) -> Result<AlgConst> {
    let h = torsion_ht(pfd, tree, p)?;
    residual_average_at_height(pfd, tree, p, lambda, h)
}

/// Residual average with an explicit height (>= the natural height of f).
pub fn residual_average_at_height(
    pfd: &PFD,
    tree: &Tree,
    p: u32,
    lambda: i64,
    h: u32,
) -> Result<AlgConst> {
    if !tree.is_torsion() {
        return Err(Error::WrongKind);
    }
    if lambda <= 0 || h == 0 {
        return Ok(AlgConst::zero());
    }
    let c = cyclic_component(pfd, tree)?;
    let d0 = section_zero(&c, tree, p, lambda)?;
    let ctil = d_apply(&d0, tree, p, lambda)?;
    omega_from_parts(pfd, tree, p, lambda, h, &ctil, &d0)
}

/// The displayed two-sum expression; the caller provides the cycle vectors
/// built from the 0-section.
pub(crate) fn omega_from_parts(
    pfd: &PFD,
    tree: &Tree,
    p: u32,
    lambda: i64,
    h: u32,
    ctil: &CycVec,
    d0: &CycVec,
) -> Result<AlgConst> {
    debug_assert!(lambda >= 1 && h >= 1);
    let e = tree.cycle_len;
    let lam = lambda as u32;
    let ord = crate::trees::ord_at(pfd, tree, p);
    let smax = ord.max(ctil.max_degree()).max(d0.max_degree()).max(lam);

    // first sum, grouped by pole: a pole pi of height h - n is hit by exactly
    // p^n elements of the height-h slice, each contributing the same summand
    let mut first = AlgConst::zero();
    for (pi, coeffs) in &pfd.poles {
        if !tree.contains(pi, p) {
            continue;
        }
        let eta = pi.torsion_eta(p)?;
        if eta == 0 || eta > h {
            continue;
        }
        let n = h - eta;
        for (s, cs) in coeffs {
            if *s < lam {
                continue;
            }
            let uni = v_taylor(p, *s, lam, n);
            if uni.is_zero() {
                continue;
            }
            let scale = p_pow(p, n as i64) * p_pow(p, lambda * n as i64) * uni;
            first = first.add(&pi.pow_alg(p, -(*s as i64)).mul(cs)?.scale(&scale))?;
        }
    }
    let slice_size = (p_pow(p, h as i64) - p_pow(p, h as i64 - 1)) * rat_i(e as i64);
    first = first.scale(&(rat_i(1) / slice_size));

    // second sum over the cycle
    let mut second = AlgConst::zero();
    for gamma in &tree.cycle {
        for s in lam..=smax {
            let combined = ctil.get(s, gamma).add(&d0.get(s, gamma))?;
            if combined.is_zero() {
                continue;
            }
            let uni = v_taylor(p, s, lam, h - 1);
            if uni.is_zero() {
                continue;
            }
            second = second.add(&gamma.pow_alg(p, -(s as i64)).mul(&combined)?.scale(&uni))?;
        }
    }
    let scale = p_pow(p, lambda * (h as i64 - 1)) / rat_i(e as i64);
    second = second.scale(&scale);

    first.sub(&second)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::rat::rat;
    use crate::trees::tree_of;

    fn zeta_pt(j: i64, n: u64) -> Point {
        Point::root_of_unity(j, n)
    }

    #[test]
    fn kernel_vector_examples() {
        for p in [2u32, 3, 5] {
            let t = tree_of(&Point::one(), p);
            let w = kernel_vector(&t, p, 1).unwrap();
            assert_eq!(w.get(1, &Point::one()), AlgConst::one());
            assert!(d_apply(&w, &t, p, 1).unwrap().is_zero());
        }
        let t = tree_of(&zeta_pt(1, 4), 3);
        let w = kernel_vector(&t, 3, 1).unwrap();
        for gamma in &t.cycle {
            assert_eq!(w.get(1, gamma), AlgConst::from_point(gamma, 3));
        }
        assert!(d_apply(&w, &t, 3, 1).unwrap().is_zero());
    }

    #[test]
    fn kernel_in_kernel_higher_twists() {
        for (p, seed) in [(3u32, zeta_pt(1, 4)), (2, zeta_pt(1, 3)), (2, zeta_pt(1, 5))] {
            let t = tree_of(&seed, p);
            for lambda in 1..=3i64 {
                let w = kernel_vector(&t, p, lambda).unwrap();
                assert!(
                    d_apply(&w, &t, p, lambda).unwrap().is_zero(),
                    "kernel fails p={p} lambda={lambda} tree={}",
                    t.key
                );
                for gamma in &t.cycle {
                    let g = AlgConst::from_point(gamma, p);
                    let normalized =
                        w.get(lambda as u32, gamma).mul(&g.pow_i64(-lambda).unwrap()).unwrap();
                    assert_eq!(normalized, AlgConst::one());
                }
            }
        }
        assert!(matches!(kernel_vector(&tree_of(&zeta_pt(1, 3), 2), 2, 0), Err(Error::BadTwist)));
    }

    #[test]
    fn section_inverts_for_nonpositive_twists() {
        let t = tree_of(&zeta_pt(1, 3), 2);
        let mut c = CycVec::zero(&t);
        c.set(1, zeta_pt(1, 3), AlgConst::zeta(3, 1).scale(&rat(-1, 2)));
        c.set(1, zeta_pt(2, 3), AlgConst::zeta(3, 2).scale(&rat(-1, 2)));
        c.set(2, zeta_pt(1, 3), AlgConst::from_i64(7));
        for lambda in [-2i64, -1, 0] {
            let d = section(&c, &t, 2, lambda, &AlgConst::zero()).unwrap();
            let back = d_apply(&d, &t, 2, lambda).unwrap();
            assert_eq!(back, c, "section not a right inverse at lambda={lambda}");
        }
    }

    #[test]
    fn displayed_negative_twist_section() {
        // p = 2, lambda = -1, c = (-1/2)(zeta3, zeta3^-1): d = (2/3)(zeta3, zeta3^-1)
        let t = tree_of(&zeta_pt(1, 3), 2);
        let mut c = CycVec::zero(&t);
        c.set(1, zeta_pt(1, 3), AlgConst::zeta(3, 1).scale(&rat(-1, 2)));
        c.set(1, zeta_pt(2, 3), AlgConst::zeta(3, 2).scale(&rat(-1, 2)));
        let d = section(&c, &t, 2, -1, &AlgConst::zero()).unwrap();
        assert_eq!(d.get(1, &zeta_pt(1, 3)), AlgConst::zeta(3, 1).scale(&rat(2, 3)));
        assert_eq!(d.get(1, &zeta_pt(2, 3)), AlgConst::zeta(3, 2).scale(&rat(2, 3)));
        let ctil = d_apply(&d, &t, 2, -1).unwrap();
        assert_eq!(ctil, c);
    }

    #[test]
    fn section_property_positive_twist() {
        // c and D(section(c)) agree in every degree other than lambda
        let t = tree_of(&zeta_pt(1, 4), 3);
        let mut c = CycVec::zero(&t);
        c.set(1, zeta_pt(1, 4), AlgConst::zeta(4, 3).scale(&rat(-1, 2)));
        c.set(1, zeta_pt(3, 4), AlgConst::zeta(4, 1).scale(&rat(-1, 2)));
        c.set(2, zeta_pt(1, 4), AlgConst::from_i64(3));
        c.set(3, zeta_pt(3, 4), AlgConst::zeta(4, 1));
        for lambda in [1i64, 2, 3] {
            for omega in [AlgConst::zero(), AlgConst::from_i64(5)] {
                let d = section(&c, &t, 3, lambda, &omega).unwrap();
                let ctil = d_apply(&d, &t, 3, lambda).unwrap();
                for k in 1..=4u32 {
                    if k as i64 == lambda {
                        continue;
                    }
                    for gamma in &t.cycle {
                        assert_eq!(
                            c.get(k, gamma),
                            ctil.get(k, gamma),
                            "mismatch at k={k} lambda={lambda}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn image_membership() {
        let t = tree_of(&zeta_pt(1, 3), 2);
        let p = 2;
        let lambda = 1i64;
        let mut dprime = CycVec::zero(&t);
        dprime.set(1, zeta_pt(1, 3), AlgConst::zeta(3, 1));
        dprime.set(2, zeta_pt(2, 3), AlgConst::from_rat(rat(3, 4)));
        let c = d_apply(&dprime, &t, p, lambda).unwrap();
        let d = section(&c, &t, p, lambda, &AlgConst::zero()).unwrap();
        let ctil = d_apply(&d, &t, p, lambda).unwrap();
        assert_eq!(c, ctil, "image vector must satisfy c = ctil");
        let w = kernel_vector(&t, p, lambda).unwrap();
        let mut perturbed = c.clone();
        for gamma in &t.cycle {
            let cur = perturbed.get(lambda as u32, gamma);
            perturbed.set(
                lambda as u32,
                gamma.clone(),
                cur.add(&w.get(lambda as u32, gamma)).unwrap(),
            );
        }
        let d2 = section(&perturbed, &t, p, lambda, &AlgConst::zero()).unwrap();
        let ctil2 = d_apply(&d2, &t, p, lambda).unwrap();
        assert_ne!(perturbed, ctil2, "kernel-shifted vector cannot be in the image");
    }

    #[test]
    fn injectivity_on_truncations_nonpositive_twist() {
        let t = tree_of(&zeta_pt(1, 5), 2);
        let mut v = CycVec::zero(&t);
        v.set(1, zeta_pt(1, 5), AlgConst::zeta(5, 2));
        v.set(3, zeta_pt(2, 5), AlgConst::from_rat(rat(7, 3)));
        for lambda in [0i64, -1, -2] {
            let av = d_apply(&v, &t, 2, lambda).unwrap();
            assert!(!av.is_zero());
            let d = section(&av, &t, 2, lambda, &AlgConst::zero()).unwrap();
            assert_eq!(d, v);
        }
    }
}
