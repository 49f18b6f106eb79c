//! Differential dependence of solutions of first-order Mahler equations:
//! solutions y_i of y(x^p) = a_i(x) y(x) are differentially dependent exactly
//! when some integer combination of the logarithmic derivatives of the a_i is
//! 1-Mahler summable. The obstruction is a finite matrix of rational numbers.

use crate::constants::algconst::AlgConst;
use crate::constants::point::Point;
use crate::constants::rat::{rat_i, Rat};
use crate::error::{Error, Result};
use crate::ratfun::{pf_decompose, RatFun, PFD};
use crate::residues::{self, TreeResidues};
use crate::trees::{self, Tree};
use num::{BigInt, Integer, One, Signed, Zero};
use std::collections::BTreeMap;

/// Outcome of the dependence decision. When dependent, the coefficients are
/// coprime integers with positive leading entry and the witness g satisfies
/// sum k_i da_i/a_i = p g(x^p) - g(x) exactly.
#[derive(Debug, Clone)]
pub struct DependenceVerdict {
    pub dependent: bool,
    pub coefficients: Option<Vec<BigInt>>,
    pub witness: Option<RatFun>,
}

/// Row location in the residue matrix: a point of the common top slice or of
/// the Mahler cycle of one tree.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct RowKey {
    pub tree_key: String,
    pub point: Point,
}

/// Degree-1 residues of the logarithmic derivatives over common slices,
/// divided by their base points: an exact rational matrix.
#[derive(Debug, Clone)]
pub struct ResidueMatrix {
    pub rows: Vec<RowKey>,
    pub cols: usize,
    pub entries: Vec<Vec<Rat>>,
}

fn entry_to_rational(value: &AlgConst, alpha: &Point, p: u32) -> Result<Rat> {
    if value.is_zero() {
        return Ok(Rat::zero());
    }
    let alpha_val = AlgConst::from_point(alpha, p);
    let q = value.mul(&alpha_val.inv()?)?;
    q.as_rat().ok_or_else(|| {
        Error::NonRationalResidue(format!("residue {} at {} is not rational times the point", value, alpha))
    })
}

fn degree_one<'a>(residues: &'a [TreeResidues]) -> Option<&'a TreeResidues> {
    residues.iter().find(|r| r.degree == 1)
}

/// The residue matrix of the logarithmic derivatives of the a_i, computed on
/// a common slice per tree (union bouquet for non-torsion trees, maximal
/// height for torsion trees).
pub fn logderiv_residues(a: &[RatFun], p: u32) -> Result<ResidueMatrix> {
    let t = a.len();
    let mut logs = Vec::with_capacity(t);
    for ai in a {
        if ai.is_zero() {
            return Err(Error::ZeroDivision);
        }
        logs.push(ai.partial_derivation()?.div(ai)?);
    }
    let pfds: Vec<PFD> = {
        let mut v = Vec::with_capacity(t);
        for f in &logs {
            v.push(pf_decompose(f, p)?);
        }
        v
    };

    // union of tree supports with the pooled singular supports
    let mut union: BTreeMap<String, (Tree, Vec<Point>)> = BTreeMap::new();
    for pfd in &pfds {
        for pt in pfd.poles.keys() {
            let tree = trees::tree_of(pt, p);
            let entry =
                union.entry(tree.key.clone()).or_insert_with(|| (tree.clone(), Vec::new()));
            if !entry.1.contains(pt) {
                entry.1.push(pt.clone());
            }
        }
    }

    let work: Vec<(Tree, Vec<Point>)> = union.into_values().collect();
    let computed: Vec<Result<Vec<(RowKey, Vec<Rat>)>>> =
        crate::parallel::map_vec(work, |(tree, pool)| {
            tree_rows(&tree, &pool, &pfds, p)
        });

    let mut rows = Vec::new();
    let mut entries = Vec::new();
    for block in computed {
        for (key, row) in block? {
            if row.iter().any(|q| !q.is_zero()) {
                rows.push(key);
                entries.push(row);
            }
        }
    }
    Ok(ResidueMatrix { rows, cols: t, entries })
}

fn tree_rows(
    tree: &Tree,
    pool: &[Point],
    pfds: &[PFD],
    p: u32,
) -> Result<Vec<(RowKey, Vec<Rat>)>> {
    let t = pfds.len();
    let mut row_points: Vec<Point> = Vec::new();
    let mut columns: Vec<BTreeMap<Point, AlgConst>> = vec![BTreeMap::new(); t];
    if tree.is_torsion() {
        let mut h = 0u32;
        for pfd in pfds {
            if !trees::sing(pfd, tree, p).is_empty() {
                h = h.max(trees::torsion_ht(pfd, tree, p)?);
            }
        }
        row_points.extend(trees::torsion_slice(tree, h, p));
        if h > 0 {
            row_points.extend(tree.cycle.iter().cloned());
        }
        for (i, pfd) in pfds.iter().enumerate() {
            if trees::sing(pfd, tree, p).is_empty() {
                continue;
            }
            let res = residues::dres_torsion(pfd, tree, p, 1, Some(h))?;
            if let Some(r1) = degree_one(&res) {
                columns[i] = r1.entries.clone();
            }
        }
    } else {
        let bouquet = trees::minimal_bouquet(pool, p);
        row_points.extend(bouquet.slice(bouquet.height, p));
        for (i, pfd) in pfds.iter().enumerate() {
            if trees::sing(pfd, tree, p).is_empty() {
                continue;
            }
            let res = residues::dres_nontorsion_sliced(
                pfd,
                tree,
                p,
                1,
                Some((bouquet.root.clone(), bouquet.height)),
            )?;
            if let Some(r1) = degree_one(&res) {
                columns[i] = r1.entries.clone();
            }
        }
    }
    row_points.sort();
    row_points.dedup();
    let mut out = Vec::with_capacity(row_points.len());
    for pt in row_points {
        let mut row = Vec::with_capacity(t);
        for col in &columns {
            let val = col.get(&pt).cloned().unwrap_or_else(AlgConst::zero);
            row.push(entry_to_rational(&val, &pt, p)?);
        }
        out.push((RowKey { tree_key: tree.key.clone(), point: pt }, row));
    }
    Ok(out)
}

/// Basis of the right kernel over Q, each vector scaled to coprime integers
/// with positive leading entry, ordered by free column.
pub fn rational_kernel(matrix: &ResidueMatrix) -> Vec<Vec<BigInt>> {
    let rows = matrix.entries.len();
    let cols = matrix.cols;
    let mut m: Vec<Vec<Rat>> = matrix.entries.clone();
    // reduced row echelon form
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = m[r][c].clone().recip();
        for x in &mut m[r] {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                for j in 0..cols {
                    let t = &m[r][j] * &factor;
                    m[i][j] -= t;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![Rat::zero(); cols];
        v[free] = Rat::one();
        for (row_idx, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -m[row_idx][free].clone();
        }
        basis.push(normalize_integer_vector(&v));
    }
    basis
}

fn normalize_integer_vector(v: &[Rat]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for q in v {
        lcm = lcm.lcm(q.denom());
    }
    let mut ints: Vec<BigInt> = v.iter().map(|q| (q * Rat::from_integer(lcm.clone())).to_integer()).collect();
    let mut gcd = BigInt::zero();
    for x in &ints {
        gcd = gcd.gcd(x);
    }
    if !gcd.is_zero() && !gcd.is_one() {
        for x in &mut ints {
            *x /= &gcd;
        }
    }
    if let Some(first) = ints.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in &mut ints {
                *x = -x.clone();
            }
        }
    }
    ints
}

/// Decides differential dependence: searches the kernel of the residue matrix
/// for an integer vector whose combined logarithmic derivative is 1-Mahler
/// summable, returning the certificate as the witness.
pub fn decide_dependence(a: &[RatFun], p: u32) -> Result<DependenceVerdict> {
    let matrix = logderiv_residues(a, p)?;
    let basis = rational_kernel(&matrix);
    for k in basis {
        let mut combo = RatFun::zero();
        for (ki, ai) in k.iter().zip(a) {
            if ki.is_zero() {
                continue;
            }
            let li = ai.partial_derivation()?.div(ai)?;
            combo = combo.add(&li.scale(&Rat::from_integer(ki.clone())))?;
        }
        if residues::is_summable(&combo, p, 1)? {
            let g = residues::certificate(&combo, p, 1)?.ok_or_else(|| {
                Error::InternalVerificationFailure("summable combination without certificate".into())
            })?;
            // re-verify the defining identity exactly
            if !g.delta_lambda(p, 1, 1)?.equals(&combo)? {
                return Err(Error::InternalVerificationFailure(
                    "dependence witness failed the telescoping identity".into(),
                ));
            }
            return Ok(DependenceVerdict {
                dependent: true,
                coefficients: Some(k),
                witness: Some(g),
            });
        }
    }
    Ok(DependenceVerdict { dependent: false, coefficients: None, witness: None })
}

/// Checks the scaling identity linking the degree-lambda residues of the
/// iterated derivative of a logarithmic derivative to its degree-1 residues:
/// dres_lambda(D^(lambda-1)(f), tau, lambda)_alpha
///   = (-1)^(lambda-1) (lambda-1)! alpha^(lambda-1) dres_1(f, tau, 1)_alpha.
pub fn nishioka_identity_check(a: &RatFun, p: u32, lambda: i64, tree: &Tree) -> Result<bool> {
    if a.is_zero() {
        return Err(Error::ZeroDivision);
    }
    assert!(lambda >= 1);
    let f = a.partial_derivation()?.div(a)?;
    let mut iterated = f.clone();
    for _ in 1..lambda {
        iterated = iterated.partial_derivation()?;
    }
    let pfd_f = pf_decompose(&f, p)?;
    let pfd_it = pf_decompose(&iterated, p)?;
    let (res_f, res_it) = if tree.is_torsion() {
        (
            residues::dres_torsion(&pfd_f, tree, p, 1, None)?,
            residues::dres_torsion(&pfd_it, tree, p, lambda, None)?,
        )
    } else {
        (
            residues::dres_nontorsion(&pfd_f, tree, p, 1, None)?,
            residues::dres_nontorsion(&pfd_it, tree, p, lambda, None)?,
        )
    };
    let ones = degree_one(&res_f).map(|r| r.entries.clone()).unwrap_or_default();
    let lams = res_it
        .iter()
        .find(|r| r.degree as i64 == lambda)
        .map(|r| r.entries.clone())
        .unwrap_or_default();
    // factorial and sign scale
    let mut factorial = rat_i(1);
    for i in 1..lambda {
        factorial *= rat_i(i);
    }
    if (lambda - 1) % 2 == 1 {
        factorial = -factorial;
    }
    let keys: std::collections::BTreeSet<Point> =
        ones.keys().chain(lams.keys()).cloned().collect();
    for alpha in keys {
        let lhs = lams.get(&alpha).cloned().unwrap_or_else(AlgConst::zero);
        let one = ones.get(&alpha).cloned().unwrap_or_else(AlgConst::zero);
        let alpha_val = AlgConst::from_point(&alpha, p);
        let rhs = one.mul(&alpha_val.pow_i64(lambda - 1)?)?.scale(&factorial);
        if lhs != rhs {
            return Ok(false);
        }
        // rationality: both sides lie in Q * alpha^lambda
        if !lhs.is_zero() {
            let q = lhs.mul(&alpha_val.pow_i64(-lambda)?)?;
            if q.as_rat().is_none() {
                return Err(Error::NonRationalResidue(format!(
                    "degree-{} residue at {} leaves Q * alpha^lambda",
                    lambda, alpha
                )));
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::algconst::AlgConst;
    use crate::ratfun::Poly;

    fn c(n: i64) -> AlgConst {
        AlgConst::from_i64(n)
    }

    fn linear(a: i64) -> Poly {
        Poly::from_coeffs([(1, c(1)), (0, c(-a))]).unwrap()
    }

    #[test]
    fn proportional_columns() {
        // a = [(x-2), (x-2)^2]: columns (1, 2)-proportional, kernel (2, -1),
        // dependent with witness 0
        let a1 = RatFun::from_poly(linear(2));
        let a2 = a1.mul(&a1).unwrap();
        let m = logderiv_residues(&[a1.clone(), a2.clone()], 2).unwrap();
        assert_eq!(m.entries.len(), 1);
        assert_eq!(m.entries[0], vec![rat_i(1), rat_i(2)]);
        let kernel = rational_kernel(&m);
        assert_eq!(kernel, vec![vec![BigInt::from(2), BigInt::from(-1)]]);
        let verdict = decide_dependence(&[a1, a2], 2).unwrap();
        assert!(verdict.dependent);
        assert_eq!(verdict.coefficients.unwrap(), vec![BigInt::from(2), BigInt::from(-1)]);
        assert!(verdict.witness.unwrap().is_zero());
    }

    #[test]
    fn monomial_is_dependent() {
        // a = [x]: empty matrix, dependent with g = 1/(p-1)
        for p in [2u32, 3, 5] {
            let verdict = decide_dependence(&[RatFun::x()], p).unwrap();
            assert!(verdict.dependent);
            let g = verdict.witness.unwrap();
            let expect =
                RatFun::constant(AlgConst::from_rat(rat_i(1) / (rat_i(p as i64) - rat_i(1))));
            assert!(g.equals(&expect).unwrap());
        }
    }

    #[test]
    fn single_factor_independent() {
        let verdict = decide_dependence(&[RatFun::from_poly(linear(2))], 2).unwrap();
        assert!(!verdict.dependent);
        assert!(verdict.coefficients.is_none());
    }

    #[test]
    fn empty_matrix_kernel() {
        let m = ResidueMatrix { rows: vec![], cols: 2, entries: vec![] };
        let kernel = rational_kernel(&m);
        assert_eq!(
            kernel,
            vec![
                vec![BigInt::from(1), BigInt::from(0)],
                vec![BigInt::from(0), BigInt::from(1)]
            ]
        );
        // single nonzero 1x1 matrix: trivial kernel
        let m = ResidueMatrix {
            rows: vec![RowKey {
                tree_key: "k".into(),
                point: Point::from_rational(&rat_i(2)),
            }],
            cols: 1,
            entries: vec![vec![rat_i(3)]],
        };
        assert!(rational_kernel(&m).is_empty());
    }

    #[test]
    fn different_trees_independent() {
        // x - 2 and x - 4 share tau(2) for p = 2 but are multiplicatively
        // independent: the two rows at the slice {2, -2} force a trivial kernel
        let a1 = RatFun::from_poly(linear(2));
        let a2 = RatFun::from_poly(linear(4));
        let m = logderiv_residues(&[a1.clone(), a2.clone()], 2).unwrap();
        assert_eq!(m.cols, 2);
        assert!(rational_kernel(&m).is_empty());
        let verdict = decide_dependence(&[a1, a2], 2).unwrap();
        assert!(!verdict.dependent);
    }

    #[test]
    fn nishioka_identity_simple() {
        // a = x - 2, tau(2): identity holds for lambda in {1, 2, 3}
        let a = RatFun::from_poly(linear(2));
        for p in [2u32, 3] {
            let tree = trees::tree_of(&Point::from_rational(&rat_i(2)), p);
            for lambda in 1..=3i64 {
                assert!(
                    nishioka_identity_check(&a, p, lambda, &tree).unwrap(),
                    "failed at p={p} lambda={lambda}"
                );
            }
        }
    }

    #[test]
    fn nishioka_identity_torsion() {
        // a = x - zeta3 exercises the torsion branch (p = 2)
        let zeta3 = AlgConst::zeta(3, 1);
        let a = RatFun::new(
            Poly::from_coeffs([(1, c(1)), (0, zeta3.neg())]).unwrap(),
            vec![],
        )
        .unwrap();
        let tree = trees::tree_of(&Point::root_of_unity(1, 3), 2);
        for lambda in 1..=3i64 {
            assert!(
                nishioka_identity_check(&a, 2, lambda, &tree).unwrap(),
                "failed at lambda={lambda}"
            );
        }
    }

    use crate::constants::rat::rat_i;
}
