// Shared corpus machinery: a fixed universe of pole locations per radix
// (heights at most 2 over their trees) and seeded random rational functions
// built from it.

use mahler_core::constants::algconst::AlgConst;
use mahler_core::constants::point::Point;
use mahler_core::constants::qz::QZ;
use mahler_core::constants::rat::{rat, rat_i, Rat};
use mahler_core::ratfun::{reconstruct, RatFun, PFD};
use rand::Rng;

pub fn pt(p: u32, j: i64, n: u64, r: Rat, h: u32) -> Point {
    Point::new(p, QZ::from_parts(j, n), r, h)
}

/// Sample pole locations for the given radix: the trees of 2, 3/2, 1 and of
/// small roots of unity of order coprime to p, with member heights <= 2.
pub fn universe_points(p: u32) -> Vec<Point> {
    match p {
        2 => vec![
            // tau(2)
            pt(2, 0, 1, rat_i(2), 0),
            pt(2, 0, 1, rat_i(4), 0),
            pt(2, 0, 1, rat_i(2), 1),
            pt(2, 1, 2, rat_i(2), 1),
            pt(2, 0, 1, rat_i(2), 2),
            pt(2, 1, 4, rat_i(2), 2),
            // tau(3/2)
            pt(2, 0, 1, rat(3, 2), 0),
            pt(2, 0, 1, rat(9, 4), 0),
            pt(2, 0, 1, rat(3, 2), 1),
            pt(2, 1, 2, rat(3, 2), 1),
            // tau(1)
            Point::one(),
            pt(2, 1, 2, rat_i(1), 0),
            pt(2, 1, 4, rat_i(1), 0),
            pt(2, 3, 4, rat_i(1), 0),
            // tau(zeta3)
            pt(2, 1, 3, rat_i(1), 0),
            pt(2, 2, 3, rat_i(1), 0),
            pt(2, 1, 6, rat_i(1), 0),
            pt(2, 5, 6, rat_i(1), 0),
            pt(2, 1, 12, rat_i(1), 0),
            // tau(zeta5)
            pt(2, 1, 5, rat_i(1), 0),
            pt(2, 2, 5, rat_i(1), 0),
            pt(2, 3, 5, rat_i(1), 0),
            pt(2, 1, 10, rat_i(1), 0),
            pt(2, 1, 20, rat_i(1), 0),
        ],
        3 => vec![
            // tau(2)
            pt(3, 0, 1, rat_i(2), 0),
            pt(3, 0, 1, rat_i(8), 0),
            pt(3, 0, 1, rat_i(2), 1),
            pt(3, 1, 3, rat_i(2), 1),
            pt(3, 0, 1, rat_i(2), 2),
            // tau(3/2)
            pt(3, 0, 1, rat(3, 2), 0),
            pt(3, 0, 1, rat(27, 8), 0),
            pt(3, 0, 1, rat(3, 2), 1),
            pt(3, 1, 3, rat(3, 2), 1),
            // tau(1)
            Point::one(),
            pt(3, 1, 3, rat_i(1), 0),
            pt(3, 2, 3, rat_i(1), 0),
            pt(3, 1, 9, rat_i(1), 0),
            // tau(zeta4)
            pt(3, 1, 4, rat_i(1), 0),
            pt(3, 3, 4, rat_i(1), 0),
            pt(3, 1, 12, rat_i(1), 0),
            pt(3, 5, 12, rat_i(1), 0),
            pt(3, 1, 36, rat_i(1), 0),
            // tau(zeta5)
            pt(3, 1, 5, rat_i(1), 0),
            pt(3, 2, 5, rat_i(1), 0),
            pt(3, 4, 5, rat_i(1), 0),
            pt(3, 1, 15, rat_i(1), 0),
            pt(3, 1, 45, rat_i(1), 0),
        ],
        _ => panic!("universe defined for p in {{2, 3}}"),
    }
}

fn random_rat(rng: &mut impl Rng) -> Rat {
    let num = loop {
        let n = rng.gen_range(-9i64..=9);
        if n != 0 {
            break n;
        }
    };
    let den = rng.gen_range(1i64..=4);
    rat(num, den)
}

/// A random coefficient compatible with the pole's radical tower: a small
/// rational times a small power of the point value.
fn random_coeff(rng: &mut impl Rng, p: u32, at: &Point) -> AlgConst {
    let q = random_rat(rng);
    let j = rng.gen_range(0i64..=2);
    AlgConst::from_point(at, p).pow_i64(j).unwrap().scale(&q)
}

/// A random certificate over the universe: up to `max_poles` poles of order
/// up to `max_order`, plus an optional Laurent polynomial part.
pub fn random_g(
    rng: &mut impl Rng,
    p: u32,
    max_poles: usize,
    max_order: u32,
    with_laurent: bool,
) -> RatFun {
    let points = universe_points(p);
    let mut pfd = PFD::default();
    let n_poles = rng.gen_range(1..=max_poles);
    for _ in 0..n_poles {
        let at = points[rng.gen_range(0..points.len())].clone();
        let order = rng.gen_range(1..=max_order);
        for k in 1..=order {
            if rng.gen_bool(0.6) {
                pfd.add_pole(&at, k, &random_coeff(rng, p, &at)).unwrap();
            }
        }
        // guarantee at least the top order is present
        pfd.add_pole(&at, order, &random_coeff(rng, p, &at)).unwrap();
    }
    if with_laurent {
        for _ in 0..rng.gen_range(1..=3) {
            let e = rng.gen_range(-2i64..=5);
            pfd.add_laurent(e, &AlgConst::from_rat(random_rat(rng))).unwrap();
        }
    }
    reconstruct(&pfd, p).unwrap()
}
