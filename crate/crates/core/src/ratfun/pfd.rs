//! Canonical partial fraction decompositions: Laurent part plus an exact pole
//! table over canonical points, with coefficients obtained by power-series
//! expansion at each pole (no linear solving, no number-field factorization).

use super::poly::Poly;
use super::{RatFun, Traj};
use crate::constants::algconst::AlgConst;
use crate::constants::cyclotomic::{cyclotomic_poly_q, qpoly_divrem, qpoly_sub};
use crate::constants::point::Point;
use crate::constants::qz::QZ;
use crate::constants::rat::{divisors, euler_phi, is_p_power, Rat};
use crate::error::{Error, Result};
use num::{BigInt, One, Zero};
use std::collections::BTreeMap;

/// Laurent part and pole table of a rational function. Poles at x = 0 live in
/// the Laurent map as negative exponents; stored coefficients are nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PFD {
    pub laurent: BTreeMap<i64, AlgConst>,
    pub poles: BTreeMap<Point, BTreeMap<u32, AlgConst>>,
}

impl PFD {
    pub fn is_zero(&self) -> bool {
        self.laurent.is_empty() && self.poles.is_empty()
    }

    pub fn set_laurent(&mut self, e: i64, c: AlgConst) {
        if c.is_zero() {
            self.laurent.remove(&e);
        } else {
            self.laurent.insert(e, c);
        }
    }

    pub fn add_laurent(&mut self, e: i64, c: &AlgConst) -> Result<()> {
        let cur = self.laurent.get(&e).cloned().unwrap_or_else(AlgConst::zero);
        self.set_laurent(e, cur.add(c)?);
        Ok(())
    }

    pub fn set_pole(&mut self, pt: Point, order: u32, c: AlgConst) {
        if c.is_zero() {
            if let Some(m) = self.poles.get_mut(&pt) {
                m.remove(&order);
                if m.is_empty() {
                    self.poles.remove(&pt);
                }
            }
            return;
        }
        self.poles.entry(pt).or_default().insert(order, c);
    }

    pub fn add_pole(&mut self, pt: &Point, order: u32, c: &AlgConst) -> Result<()> {
        let cur = self
            .poles
            .get(pt)
            .and_then(|m| m.get(&order))
            .cloned()
            .unwrap_or_else(AlgConst::zero);
        self.set_pole(pt.clone(), order, cur.add(c)?);
        Ok(())
    }

    /// Coefficient c_k at a pole (zero when absent).
    pub fn pole_coeff(&self, pt: &Point, order: u32) -> AlgConst {
        self.poles
            .get(pt)
            .and_then(|m| m.get(&order))
            .cloned()
            .unwrap_or_else(AlgConst::zero)
    }

    pub fn add(&self, other: &PFD) -> Result<PFD> {
        let mut out = self.clone();
        for (e, c) in &other.laurent {
            out.add_laurent(*e, c)?;
        }
        for (pt, m) in &other.poles {
            for (k, c) in m {
                out.add_pole(pt, *k, c)?;
            }
        }
        Ok(out)
    }

    pub fn scale(&self, q: &Rat) -> PFD {
        if q.is_zero() {
            return PFD::default();
        }
        PFD {
            laurent: self.laurent.iter().map(|(e, c)| (*e, c.scale(q))).collect(),
            poles: self
                .poles
                .iter()
                .map(|(pt, m)| {
                    (pt.clone(), m.iter().map(|(k, c)| (*k, c.scale(q))).collect())
                })
                .collect(),
        }
    }

    /// Restriction to the poles of one Mahler tree.
    pub fn tree_slice(&self, tree_member: &Point, p: u32) -> PFD {
        let mut out = PFD::default();
        for (pt, m) in &self.poles {
            if crate::trees::same_tree(pt, tree_member, p) {
                out.poles.insert(pt.clone(), m.clone());
            }
        }
        out
    }
}

/// Exact partial fraction decomposition.
pub fn pf_decompose(f: &RatFun, p: u32) -> Result<PFD> {
    let mut out = PFD::default();
    if f.is_zero() {
        return Ok(out);
    }

    // collect pole locations with total orders
    let trace = std::env::var("MAHLER_TRACE").is_ok();
    let mut zero_order = 0u64;
    let mut orders: BTreeMap<Point, u64> = BTreeMap::new();
    for (atom, mult) in f.den_factors() {
        if trace { eprintln!("TRACE atom deg {:?}", atom.degree()); }
        let (zm, roots) = atom_roots(atom, p)?;
        if trace { eprintln!("TRACE atom done"); }
        zero_order += zm as u64 * *mult as u64;
        for (pt, m) in roots {
            *orders.entry(pt).or_insert(0) += m as u64 * *mult as u64;
        }
    }

    // polynomial part: expand the denominator only for improper fractions
    let den_degree: u64 =
        f.den_factors().iter().map(|(g, m)| g.degree().unwrap() * *m as u64).sum();
    let rem = if f.num().degree().map(|d| d >= den_degree).unwrap_or(false) {
        let den = f.den_expanded()?;
        let (quot, rem) = f.num().divrem(&den)?;
        for (e, c) in quot.coeffs() {
            out.add_laurent(*e as i64, c)?;
        }
        rem
    } else {
        f.num().clone()
    };

    // principal part at x = 0
    if zero_order > 0 {
        let m = zero_order as usize;
        let series = local_series(&rem, f.den_factors(), &AlgConst::zero(), m)?;
        for k in 1..=m {
            let c = series.coeff((m - k) as u64);
            out.add_laurent(-(k as i64), &c)?;
        }
    }

    // principal parts at the finite nonzero poles
    for (pt, m64) in &orders {
        let m = *m64 as usize;
        if trace { eprintln!("TRACE pole {} order {}", pt, m); }
        let t0 = std::time::Instant::now();
        let alpha = AlgConst::from_point(pt, p);
        let series = local_series(&rem, f.den_factors(), &alpha, m)?;
        if trace { eprintln!("TRACE pole done {:?}", t0.elapsed()); }
        for k in 1..=m {
            let c = series.coeff((m - k) as u64);
            out.add_pole(pt, k as u32, &c)?;
        }
    }

    Ok(out)
}

/// poly(alpha + t) truncated to degree < bound, by Horner in R[t]/(t^bound).
fn shift_truncated(poly: &Poly, alpha: &AlgConst, bound: usize) -> Result<Poly> {
    let Some(deg) = poly.degree() else {
        return Ok(Poly::zero());
    };
    let mut acc: Vec<AlgConst> = vec![AlgConst::zero(); bound];
    for e in (0..=deg).rev() {
        // acc <- acc * (alpha + t) + coeff(e)
        let mut next: Vec<AlgConst> = Vec::with_capacity(bound);
        for j in 0..bound {
            let mut v = acc[j].mul(alpha)?;
            if j > 0 {
                v = v.add(&acc[j - 1])?;
            }
            next.push(v);
        }
        acc = next;
        let c = poly.coeff(e);
        if !c.is_zero() {
            acc[0] = acc[0].add(&c)?;
        }
    }
    let mut out = Poly::zero();
    for (j, c) in acc.into_iter().enumerate() {
        out.add_term(j as u64, &c)?;
    }
    Ok(out)
}

/// The power series of num * t^m / den at x = alpha + t, truncated to t^m:
/// its coefficient of t^(m-k) is the order-k principal-part coefficient.
/// m must be the total multiplicity of alpha in the factored denominator.
///
/// Every denominator factor is inverted separately: the constant terms of the
/// per-factor units are differences of point values, which invert in closed
/// form, whereas their product would not.
fn local_series(num: &Poly, den: &[(Poly, u32)], alpha: &AlgConst, m: usize) -> Result<Poly> {
    let mut series = shift_truncated(num, alpha, m)?;
    let mut total_val = 0usize;
    for (factor, mult) in den {
        // the root multiplicity inside one factor is at most min(deg F, m)
        let bound = m + (factor.degree().unwrap() as usize).min(m);
        let shifted = shift_truncated(factor, alpha, bound)?;
        let ord = (0..bound)
            .find(|j| !shifted.coeff(*j as u64).is_zero())
            .expect("factor does not vanish to the truncation order");
        let mut unit_i = Poly::zero();
        for (e, c) in shifted.coeffs() {
            if (*e as usize) >= ord && ((*e as usize) - ord) < m {
                unit_i.add_term(e - ord as u64, c)?;
            }
        }
        total_val += ord * *mult as usize;
        if total_val > m {
            return Err(Error::InternalVerificationFailure(
                "pole order exceeds the tabulated multiplicity".into(),
            ));
        }
        let inv_i = series_inverse(&unit_i, m)?;
        for _ in 0..*mult {
            series = mul_truncated(&series, &inv_i, m)?;
        }
    }
    if total_val != m {
        return Err(Error::InternalVerificationFailure(format!(
            "pole order mismatch: expected {m}, found {total_val}"
        )));
    }
    Ok(series)
}

fn mul_truncated(a: &Poly, b: &Poly, bound: usize) -> Result<Poly> {
    let mut out = Poly::zero();
    for (e1, c1) in a.coeffs() {
        if *e1 as usize >= bound {
            continue;
        }
        for (e2, c2) in b.coeffs() {
            if (*e1 + *e2) as usize >= bound {
                break;
            }
            out.add_term(e1 + e2, &c1.mul(c2)?)?;
        }
    }
    Ok(out)
}

/// unit^{-1} mod t^m by exact series inversion; unit(0) must be invertible.
fn series_inverse(unit: &Poly, m: usize) -> Result<Poly> {
    let u0_inv = unit.constant_term().inv()?;
    let mut inv = Poly::constant(u0_inv.clone());
    for j in 1..m {
        // inv_j = -u0_inv * sum_{i=1..j} unit_i * inv_{j-i}
        let mut acc = AlgConst::zero();
        for i in 1..=j {
            let ui = unit.coeff(i as u64);
            if ui.is_zero() {
                continue;
            }
            acc = acc.add(&ui.mul(&inv.coeff((j - i) as u64))?)?;
        }
        inv.add_term(j as u64, &acc.mul(&u0_inv)?.neg())?;
    }
    Ok(inv)
}

/// Roots of one monic denominator atom: (multiplicity of the root 0, other
/// roots as canonical points with multiplicities).
fn atom_roots(atom: &Poly, p: u32) -> Result<(u32, Vec<(Point, u32)>)> {
    let v = *atom.coeffs().keys().next().expect("nonzero atom");
    let mut rest = Poly::zero();
    for (e, c) in atom.coeffs() {
        rest.add_term(e - v, c)?;
    }
    let zero_mult = v as u32;
    let deg = rest.degree().unwrap();
    if deg == 0 {
        return Ok((zero_mult, Vec::new()));
    }
    if deg == 1 {
        let a = rest.constant_term().neg();
        let pt = a
            .value_as_point(p)
            .ok_or_else(|| Error::UnsupportedAlgebraicPoint(format!("root of x - ({})", a)))?;
        return Ok((zero_mult, vec![(pt, 1)]));
    }
    if rest.coeffs().len() == 2 {
        // binomial x^deg - a
        let a = rest.constant_term().neg();
        let roots = binomial_roots(deg as u32, &a, p)?;
        return Ok((zero_mult, roots.into_iter().map(|pt| (pt, 1)).collect()));
    }
    if let Some(rc) = rest.rational_coeffs() {
        let roots = rational_atom_roots(&rc, p)?;
        return Ok((zero_mult, roots));
    }
    Err(Error::UnsupportedDenominator(format!("{}", atom)))
}

/// Distinct roots of x^k = a for a supported constant a.
fn binomial_roots(k: u32, a: &AlgConst, p: u32) -> Result<Vec<Point>> {
    let pt = a
        .value_as_point(p)
        .ok_or_else(|| Error::UnsupportedAlgebraicPoint(format!("x^{} - ({})", k, a)))?;
    if pt.is_root_of_unity() {
        // all k-th roots of a root of unity stay inside the torsion points
        let principal = pt.torsion.div_exact(k as u64);
        return Ok((0..k)
            .map(|i| {
                let t = principal.add(&QZ::from_parts(i as i64, k as u64));
                Point::new(p, t, Rat::one(), 0)
            })
            .collect());
    }
    let Some(j) = is_p_power(k as u64, p) else {
        return Err(Error::UnsupportedAlgebraicPoint(format!(
            "{}-th root of {} leaves the supported radical tower (index not a power of {})",
            k, a, p
        )));
    };
    let mut set = vec![pt];
    for _ in 0..j {
        set = set.iter().flat_map(|x| x.pth_roots(p)).collect();
    }
    debug_assert_eq!(set.len(), k as usize);
    Ok(set)
}

/// Roots of a monic atom with rational coefficients and nonzero constant term:
/// squarefree decomposition, then extraction of cyclotomic and binomial factors.
fn rational_atom_roots(w: &[Rat], p: u32) -> Result<Vec<(Point, u32)>> {
    let mut out = Vec::new();
    for (sf, mult) in squarefree_decomposition(w) {
        let mut work = sf;
        loop {
            let deg = work.len() - 1;
            if deg == 0 {
                break;
            }
            if let Some(next) = extract_cyclotomic(&work, &mut out, mult)? {
                work = next;
                continue;
            }
            if let Some(next) = extract_binomial(&work, p, &mut out, mult)? {
                work = next;
                continue;
            }
            return Err(Error::UnsupportedDenominator(format!(
                "irreducible non-cyclotomic non-binomial factor of degree {}",
                deg
            )));
        }
    }
    Ok(out)
}

fn extract_cyclotomic(
    w: &[Rat],
    out: &mut Vec<(Point, u32)>,
    mult: u32,
) -> Result<Option<Vec<Rat>>> {
    let deg = (w.len() - 1) as u32;
    // phi(d) >= sqrt(d/2), so phi(d) <= deg bounds d by 2 deg^2
    let dmax = 2 * deg * deg + 1;
    for d in 1..=dmax {
        if euler_phi(d) > deg {
            continue;
        }
        let phi_d = cyclotomic_poly_q(d);
        let (q, r) = qpoly_divrem(w, &phi_d);
        if r.len() == 1 && r[0].is_zero() {
            for j in 0..d {
                if num::Integer::gcd(&j, &d) == 1 {
                    out.push((Point::root_of_unity(j as i64, d as u64), mult));
                }
            }
            return Ok(Some(q));
        }
    }
    Ok(None)
}

fn extract_binomial(
    w: &[Rat],
    p: u32,
    out: &mut Vec<(Point, u32)>,
    mult: u32,
) -> Result<Option<Vec<Rat>>> {
    let deg = (w.len() - 1) as u32;
    let c0 = &w[0];
    debug_assert!(!c0.is_zero());
    let mut candidates: Vec<Rat> = Vec::new();
    for d1 in divisors(c0.numer().magnitude()) {
        for d2 in divisors(c0.denom().magnitude()) {
            let q = Rat::new(BigInt::from(d1.clone()), BigInt::from(d2.clone()));
            candidates.push(q.clone());
            candidates.push(-q);
        }
    }
    for k in (1..=deg).rev() {
        for q in &candidates {
            // test-divide by x^k - q
            let mut bin = vec![Rat::zero(); k as usize + 1];
            bin[0] = -q.clone();
            bin[k as usize] = Rat::one();
            let (quot, r) = qpoly_divrem(w, &bin);
            if r.len() == 1 && r[0].is_zero() {
                let roots = binomial_roots(k, &AlgConst::from_rat(q.clone()), p)?;
                for pt in roots {
                    out.push((pt, mult));
                }
                return Ok(Some(quot));
            }
        }
    }
    Ok(None)
}

/// Yun's squarefree decomposition over Q: returns (squarefree factor, multiplicity).
fn squarefree_decomposition(w: &[Rat]) -> Vec<(Vec<Rat>, u32)> {
    let deriv = |f: &[Rat]| -> Vec<Rat> {
        if f.len() <= 1 {
            return vec![Rat::zero()];
        }
        f.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rat::from_integer(BigInt::from(i)))
            .collect()
    };
    let is_const = |f: &[Rat]| f.len() == 1;
    let mut out = Vec::new();
    let fp = deriv(w);
    let a0 = qpoly_gcd(w, &fp);
    let mut b = qpoly_divrem(w, &a0).0;
    let mut c = qpoly_divrem(&fp, &a0).0;
    let mut i = 1u32;
    while !is_const(&b) {
        let d = qpoly_sub(&c, &deriv(&b));
        let ai = qpoly_gcd(&b, &d);
        if ai.len() > 1 {
            out.push((ai.clone(), i));
        }
        b = qpoly_divrem(&b, &ai).0;
        c = qpoly_divrem(&d, &ai).0;
        i += 1;
    }
    out
}

fn qpoly_gcd(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let is_zero = |f: &[Rat]| f.len() == 1 && f[0].is_zero();
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    while !is_zero(&r1) {
        let (_, r) = qpoly_divrem(&r0, &r1);
        r0 = r1;
        r1 = r;
    }
    // monic normalization
    let lead = r0.last().unwrap().clone();
    if !lead.is_zero() && !lead.is_one() {
        for c in &mut r0 {
            *c = &*c / &lead;
        }
    }
    r0
}

/// The unique rational function with the given decomposition.
pub fn reconstruct(pfd: &PFD, p: u32) -> Result<RatFun> {
    let mut out = RatFun::zero();
    // Laurent part
    let mut poly_part = Poly::zero();
    let mut neg_min = 0i64;
    for (e, c) in &pfd.laurent {
        if *e >= 0 {
            poly_part.add_term(*e as u64, c)?;
        } else {
            neg_min = neg_min.min(*e);
        }
    }
    out = out.add(&RatFun::from_poly(poly_part))?;
    if neg_min < 0 {
        let v = (-neg_min) as u64;
        let mut num = Poly::zero();
        for (e, c) in &pfd.laurent {
            if *e < 0 {
                num.add_term((e - neg_min) as u64, c)?;
            }
        }
        out = out.add(&RatFun::new(num, vec![(Poly::x(), v as u32)])?)?;
    }
    // pole parts
    for (pt, coeffs) in &pfd.poles {
        let alpha = AlgConst::from_point(pt, p);
        let lin = Poly::from_coeffs([(1, AlgConst::one()), (0, alpha.neg())])?;
        let m = *coeffs.keys().next_back().unwrap();
        let mut num = Poly::zero();
        for (k, c) in coeffs {
            num = num.add(&lin.pow(m - k)?.mul_scalar(c)?)?;
        }
        out = out.add(&RatFun::new(num, vec![(lin, m)])?)?;
    }
    Ok(out)
}

/// Projection of the Laurent component onto one trajectory of exponents.
pub fn theta_component(f: &RatFun, theta: &Traj, p: u32) -> Result<RatFun> {
    let pfd = pf_decompose(f, p)?;
    let mut kept = PFD::default();
    for (e, c) in &pfd.laurent {
        if theta.contains(*e, p) {
            kept.set_laurent(*e, c.clone());
        }
    }
    reconstruct(&kept, p)
}

/// Sum of the partial-fraction terms at poles lying in the given tree.
pub fn tau_component(f: &RatFun, tree: &crate::trees::Tree, p: u32) -> Result<RatFun> {
    let pfd = pf_decompose(f, p)?;
    let mut kept = PFD::default();
    for (pt, coeffs) in &pfd.poles {
        if tree.contains(pt, p) {
            kept.poles.insert(pt.clone(), coeffs.clone());
        }
    }
    reconstruct(&kept, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::rat::{rat, rat_i};

    fn c(n: i64) -> AlgConst {
        AlgConst::from_i64(n)
    }

    fn linear(a: i64) -> Poly {
        Poly::from_coeffs([(1, c(1)), (0, c(-a))]).unwrap()
    }

    #[test]
    fn polynomial_only() {
        let f = RatFun::from_poly(Poly::from_coeffs([(1, c(1)), (0, c(3))]).unwrap());
        let pfd = pf_decompose(&f, 2).unwrap();
        assert!(pfd.poles.is_empty());
        assert_eq!(pfd.laurent.get(&0), Some(&c(3)));
        assert_eq!(pfd.laurent.get(&1), Some(&c(1)));
        assert!(reconstruct(&pfd, 2).unwrap().equals(&f).unwrap());
    }

    #[test]
    fn simple_pole_and_zero_pole() {
        // (x^2 + 1) / (x^2 (x-2))
        let f = RatFun::new(
            Poly::from_coeffs([(2, c(1)), (0, c(1))]).unwrap(),
            vec![(Poly::x(), 2), (linear(2), 1)],
        )
        .unwrap();
        let pfd = pf_decompose(&f, 2).unwrap();
        // principal part at 0: expand (x^2+1)/(x-2) = -1/2 - x/4 + ... so
        // c_{-2} = -1/2, c_{-1} = -1/4
        assert_eq!(pfd.laurent.get(&-2), Some(&AlgConst::from_rat(rat(-1, 2))));
        assert_eq!(pfd.laurent.get(&-1), Some(&AlgConst::from_rat(rat(-1, 4))));
        // residue at 2: (4+1)/4 = 5/4
        let two = Point::from_rational(&rat_i(2));
        assert_eq!(pfd.pole_coeff(&two, 1), AlgConst::from_rat(rat(5, 4)));
        assert!(reconstruct(&pfd, 2).unwrap().equals(&f).unwrap());
    }

    #[test]
    fn binomial_and_cancellation() {
        // f = (x-2)/((x-2)(x^3-2)) = 1/(x^3-2) for p = 3: fake pole at 2 drops out
        let f = RatFun::new(
            linear(2),
            vec![(linear(2), 1), (Poly::from_coeffs([(3, c(1)), (0, c(-2))]).unwrap(), 1)],
        )
        .unwrap();
        let pfd = pf_decompose(&f, 3).unwrap();
        let two = Point::from_rational(&rat_i(2));
        assert!(pfd.pole_coeff(&two, 1).is_zero());
        assert_eq!(pfd.poles.len(), 3);
        assert!(reconstruct(&pfd, 3).unwrap().equals(&f).unwrap());
    }

    #[test]
    fn cyclotomic_product_atom() {
        // x^4 + x^2 + 1 = Phi_3 * Phi_6
        let f = RatFun::new(
            Poly::one(),
            vec![(
                Poly::from_coeffs([(4, c(1)), (2, c(1)), (0, c(1))]).unwrap(),
                1,
            )],
        )
        .unwrap();
        let pfd = pf_decompose(&f, 2).unwrap();
        let pts: Vec<_> = pfd.poles.keys().cloned().collect();
        assert_eq!(pts.len(), 4);
        assert!(pts.contains(&Point::root_of_unity(1, 3)));
        assert!(pts.contains(&Point::root_of_unity(1, 6)));
        assert!(reconstruct(&pfd, 2).unwrap().equals(&f).unwrap());
    }

    #[test]
    fn eg_summable1_expansion() {
        // f = (-x^6+4x^3+3x^2-12x+8)/((x-2)^2 (x^3-2)^2), p = 3
        let num = Poly::from_coeffs([
            (6, c(-1)),
            (3, c(4)),
            (2, c(3)),
            (1, c(-12)),
            (0, c(8)),
        ])
        .unwrap();
        let den = vec![
            (linear(2), 2),
            (Poly::from_coeffs([(3, c(1)), (0, c(-2))]).unwrap(), 2),
        ];
        let f = RatFun::new(num, den).unwrap();
        let pfd = pf_decompose(&f, 3).unwrap();
        let two = Point::from_rational(&rat_i(2));
        // c_2(2) = -1, c_1(2) = 0
        assert_eq!(pfd.pole_coeff(&two, 2), c(-1));
        assert!(pfd.pole_coeff(&two, 1).is_zero());
        // at zeta_3^i * 2^(1/3): c_2 = zeta3^{2i}/(6 cbrt2), c_1 = -zeta3^i/(3 cbrt4)
        let rho = AlgConst::radical_gen(3, rat_i(2), 1);
        for i in 0..3u32 {
            let pt = Point::new(3, QZ::from_parts(i as i64, 3), rat_i(2), 1);
            let c2 = pfd.pole_coeff(&pt, 2);
            let expect2 = AlgConst::zeta(3, 2 * i as i64)
                .mul(&rho.mul(&c(6)).unwrap().inv().unwrap())
                .unwrap();
            assert_eq!(c2, expect2, "c2 at i={i}");
            let c1 = pfd.pole_coeff(&pt, 1);
            let expect1 = AlgConst::zeta(3, i as i64)
                .mul(&rho.pow_i64(2).unwrap().mul(&c(3)).unwrap().inv().unwrap())
                .unwrap()
                .neg();
            assert_eq!(c1, expect1, "c1 at i={i}");
        }
        assert!(reconstruct(&pfd, 3).unwrap().equals(&f).unwrap());
    }

    #[test]
    fn eg_nonsummable1_expansion() {
        // f = (-2x^4+2x^2+1)/((x^2+1)(x^4-x^2+1)), p = 3: six simple poles
        let num = Poly::from_coeffs([(4, c(-2)), (2, c(2)), (0, c(1))]).unwrap();
        let den = vec![
            (Poly::from_coeffs([(2, c(1)), (0, c(1))]).unwrap(), 1),
            (Poly::from_coeffs([(4, c(1)), (2, c(-1)), (0, c(1))]).unwrap(), 1),
        ];
        let f = RatFun::new(num, den).unwrap();
        let pfd = pf_decompose(&f, 3).unwrap();
        assert_eq!(pfd.poles.len(), 6);
        // c_1(zeta_4) = -(1/2) zeta_4^3, c_1(zeta_12) = (1/2) zeta_12^7
        let z4 = Point::root_of_unity(1, 4);
        assert_eq!(pfd.pole_coeff(&z4, 1), AlgConst::zeta(4, 3).scale(&rat(-1, 2)));
        let z12 = Point::root_of_unity(1, 12);
        assert_eq!(pfd.pole_coeff(&z12, 1), AlgConst::zeta(12, 7).scale(&rat(1, 2)));
        assert!(reconstruct(&pfd, 3).unwrap().equals(&f).unwrap());
    }

    #[test]
    fn theta_projection() {
        // x + x^2 + x^3 with p = 2
        let f = RatFun::from_poly(
            Poly::from_coeffs([(1, c(1)), (2, c(1)), (3, c(1))]).unwrap(),
        );
        let t1 = theta_component(&f, &Traj::Initial(1), 2).unwrap();
        assert!(t1
            .equals(&RatFun::from_poly(
                Poly::from_coeffs([(1, c(1)), (2, c(1))]).unwrap()
            ))
            .unwrap());
        let t3 = theta_component(&f, &Traj::Initial(3), 2).unwrap();
        assert!(t3.equals(&RatFun::from_poly(Poly::monomial(3, c(1)))).unwrap());
        let t0 = theta_component(&f, &Traj::Zero, 2).unwrap();
        assert!(t0.is_zero());
    }
}
