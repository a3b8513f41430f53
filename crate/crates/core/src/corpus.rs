//! Seeded random test polygons and sample points.
//!
//! Vertices are drawn from an integer grid with no three collinear, joined in
//! random order and untangled by 2-opt moves, then divided by a common
//! denominator so coordinates are genuinely rational.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact_geom::{Point, Scalar};
use crate::polygon_model::SimplePolygon;

const DENOMINATORS: [i64; 6] = [1, 2, 3, 4, 5, 8];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn orient_i(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> i64 {
    ((b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)).signum()
}

/// Proper crossing of `[a, b]` and `[c, d]`; endpoints are never collinear
/// with a third point here, so touching only happens at shared endpoints.
fn cross_i(a: (i64, i64), b: (i64, i64), c: (i64, i64), d: (i64, i64)) -> bool {
    orient_i(a, b, c) * orient_i(a, b, d) < 0 && orient_i(c, d, a) * orient_i(c, d, b) < 0
}

/// `n` grid points in `[0, grid]^2`, pairwise distinct, no three collinear.
fn general_position(rng: &mut ChaCha8Rng, n: usize, grid: i64) -> Vec<(i64, i64)> {
    let mut pts: Vec<(i64, i64)> = Vec::with_capacity(n);
    while pts.len() < n {
        let p = (rng.gen_range(0..=grid), rng.gen_range(0..=grid));
        let collinear = pts.contains(&p)
            || (0..pts.len()).any(|i| (i + 1..pts.len()).any(|j| orient_i(pts[i], pts[j], p) == 0));
        if !collinear {
            pts.push(p);
        }
    }
    pts
}

/// Reverses sub-tours until no two edges cross; each move shortens the tour.
fn untangle(pts: &mut [(i64, i64)]) {
    let n = pts.len();
    loop {
        let mut changed = false;
        for i in 0..n {
            for j in i + 2..n {
                if i == 0 && j == n - 1 {
                    continue;
                }
                let (a, b) = (pts[i], pts[i + 1]);
                let (c, d) = (pts[j], pts[(j + 1) % n]);
                if cross_i(a, b, c, d) {
                    pts[i + 1..=j].reverse();
                    changed = true;
                }
            }
        }
        if !changed {
            return;
        }
    }
}

fn scaled(pts: &[(i64, i64)], den: i64) -> Vec<Point> {
    pts.iter()
        .map(|&(x, y)| Point::new(Scalar::ratio(x, den), Scalar::ratio(y, den)))
        .collect()
}

/// A random simple `n`-gon (`n >= 3`) with rational coordinates.
pub fn random_polygon(rng: &mut ChaCha8Rng, n: usize) -> SimplePolygon {
    assert!(n >= 3);
    let grid = (3 * n as i64).max(12);
    let mut pts = general_position(rng, n, grid);
    pts.shuffle(rng);
    untangle(&mut pts);
    let den = *DENOMINATORS.choose(rng).unwrap();
    SimplePolygon::validate(scaled(&pts, den)).expect("untangled general-position tour is simple")
}

/// A random convex polygon with at least three vertices.
pub fn random_convex(rng: &mut ChaCha8Rng, max_n: usize) -> SimplePolygon {
    loop {
        let pts = general_position(rng, max_n.max(3), 20);
        let hull = convex_hull(&pts);
        if hull.len() >= 3 {
            let den = *DENOMINATORS.choose(rng).unwrap();
            return SimplePolygon::validate(scaled(&hull, den)).expect("hull is simple");
        }
    }
}

/// Counterclockwise hull without collinear points (monotone chain).
fn convex_hull(pts: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let mut p = pts.to_vec();
    p.sort();
    let mut lower: Vec<(i64, i64)> = Vec::new();
    for &q in &p {
        while lower.len() >= 2 && orient_i(lower[lower.len() - 2], lower[lower.len() - 1], q) <= 0 {
            lower.pop();
        }
        lower.push(q);
    }
    let mut upper: Vec<(i64, i64)> = Vec::new();
    for &q in p.iter().rev() {
        while upper.len() >= 2 && orient_i(upper[upper.len() - 2], upper[upper.len() - 1], q) <= 0 {
            upper.pop();
        }
        upper.push(q);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// A random rational point in the bounding box grown by `margin` on each side.
pub fn random_point(rng: &mut ChaCha8Rng, poly: &SimplePolygon, margin: &Scalar) -> Point {
    let (lo, hi) = poly.bounding_box();
    let den = 1i64 << 10;
    let coord = |rng: &mut ChaCha8Rng, a: &Scalar, b: &Scalar| {
        let a = a - margin;
        let span = &(b + margin) - &a;
        let t = Scalar::ratio(rng.gen_range(0..=den), den);
        &a + &(&span * &t)
    };
    let x = coord(rng, &lo.x, &hi.x);
    let y = coord(rng, &lo.y, &hi.y);
    Point::new(x, y)
}

/// A random point in the relative interior of edge `i`.
pub fn random_edge_point(rng: &mut ChaCha8Rng, poly: &SimplePolygon, i: usize) -> Point {
    let e = poly.edge(i);
    let den = 1i64 << 10;
    let t = Scalar::ratio(rng.gen_range(1..den), den);
    e.a.lerp(&e.b, &t)
}
