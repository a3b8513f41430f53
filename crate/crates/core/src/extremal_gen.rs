//! Polygons attaining both link-diameter bounds at once.
//!
//! The family is a thin triangular spiral strip. Its centerline legs run along
//! the directions (1,0), (-1,1), (0,-1) in turn, each winding moving every
//! leg line inward by a fixed pitch; both ends are pointed. With `k` legs the
//! polygon has `2k` vertices, an interior path needs one link per leg, and an
//! exterior path from the innermost corner of the gap to just outside the
//! outermost corner needs `k` links too.
//!
//! Odd vertex counts take the spiral with one more leg and delete the inner
//! corner of its last turn: the last two legs fuse into one fat piece, which
//! drops the interior count by one while the exterior winding survives.

use crate::error::{Error, Result};
use crate::exact_geom::{Point, Scalar};
use crate::link_oracle::{link_distance_with, poldiam_sampled, OracleConfig};
use crate::link_path::{exterior_bound, interior_bound};
use crate::polygon_model::SimplePolygon;
use crate::raindrop::{classify, Component};

const DIRS: [(i64, i64); 3] = [(1, 0), (-1, 1), (0, -1)];
const PITCH: i64 = 8;
const HALF_WIDTH: i64 = 1;
const START_OVERHANG: i64 = 2;
const END_CLEARANCE: i64 = 2;

pub const DEFAULT_SAMPLES: usize = 4;

#[derive(Debug, Clone)]
pub struct ExtremalInstance {
    pub polygon: SimplePolygon,
    pub interior: (Point, Point),
    pub exterior: (Point, Point),
    pub claimed_interior: usize,
    pub claimed_exterior: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub n: usize,
    pub interior: usize,
    pub exterior: usize,
    pub claimed_interior: usize,
    pub claimed_exterior: usize,
    /// Largest distance seen over random pairs, per component.
    pub sampled_interior: usize,
    pub sampled_exterior: usize,
}

fn normal(k: usize) -> (i64, i64) {
    let (dx, dy) = DIRS[k % 3];
    (-dy, dx)
}

/// Intersection of `n1 . x = c1` and `n2 . x = c2`. Consecutive normals are
/// unimodular, so the result is integral.
fn meet(n1: (i64, i64), c1: i64, n2: (i64, i64), c2: i64) -> (i64, i64) {
    let det = n1.0 * n2.1 - n1.1 * n2.0;
    debug_assert_eq!(det.abs(), 1);
    ((c1 * n2.1 - n1.1 * c2) / det, (n1.0 * c2 - c1 * n2.0) / det)
}

struct Strip {
    /// Outer tip, outer corners, inner tip, inner corners in reverse.
    vertices: Vec<(i64, i64)>,
    size: i64,
}

fn strip(legs: usize) -> Strip {
    let size = PITCH * legs as i64 + 40;
    let base = [0, -size, 0];
    let c = |k: usize| base[k % 3] + PITCH * (k / 3) as i64;
    let corner = |k: usize, off: i64| meet(normal(k), c(k) + off, normal(k + 1), c(k + 1) + off);
    let outer: Vec<_> = (0..legs - 1).map(|k| corner(k, -HALF_WIDTH)).collect();
    let inner: Vec<_> = (0..legs - 1).map(|k| corner(k, HALF_WIDTH)).collect();
    let start = meet(normal(0), c(0), normal(2), c(2) - PITCH - START_OVERHANG);
    let end = meet(normal(legs - 1), c(legs - 1), normal(legs), c(legs) - END_CLEARANCE);
    let mut vertices = vec![start];
    vertices.extend(outer);
    vertices.push(end);
    vertices.extend(inner.into_iter().rev());
    Strip { vertices, size }
}

fn pt(p: (i64, i64)) -> Point {
    Point::from_ints(p.0, p.1)
}

fn quarter(x: i64, y: i64) -> Point {
    Point::from_ratios(x, 4, y, 4)
}

/// Interior witnesses: inside the start tip, and just short of the end tip.
fn interior_pair(s: &Strip, legs: usize) -> (Point, Point) {
    let start = s.vertices[0];
    let end = s.vertices[legs];
    let (dx, dy) = DIRS[(legs - 1) % 3];
    (pt((start.0 + 5, start.1)), pt((end.0 - dx, end.1 - dy)))
}

/// Just outside the outer strip side near the corner of the first winding.
fn far_witness(s: &Strip) -> Point {
    Point::from_ratios(3, 2, 4 * s.size + 1, 4)
}

fn triangle() -> ExtremalInstance {
    let polygon = SimplePolygon::from_int_coords(&[(0, 0), (4, 0), (0, 4)]).expect("triangle");
    ExtremalInstance {
        polygon,
        interior: (Point::from_ratios(1, 2, 1, 2), Point::from_ints(1, 1)),
        exterior: (Point::from_ints(-1, -1), Point::from_ints(5, 5)),
        claimed_interior: 1,
        claimed_exterior: 2,
    }
}

fn even(legs: usize) -> ExtremalInstance {
    let s = strip(legs);
    let interior = interior_pair(&s, legs);
    // Inside the last turn, off the inner corner.
    let ic = s.vertices[legs + 1];
    let (ax, ay) = DIRS[(legs - 2) % 3];
    let (bx, by) = DIRS[(legs - 1) % 3];
    let deep = pt((ic.0 + bx - ax, ic.1 + by - ay));
    let exterior = (deep, far_witness(&s));
    let polygon = SimplePolygon::validate(s.vertices.iter().copied().map(pt).collect()).expect("spiral strip is simple");
    ExtremalInstance { polygon, interior, exterior, claimed_interior: legs, claimed_exterior: legs }
}

fn odd(legs: usize) -> ExtremalInstance {
    let mut s = strip(legs + 1);
    let interior = interior_pair(&s, legs + 1);
    let tip = s.vertices[legs + 1];
    s.vertices.remove(legs + 2);
    let ic = s.vertices[legs + 2];
    // Beside the midpoint of the fused diagonal, on the side away from the strip.
    let (nx, ny) = (ic.1 - tip.1, tip.0 - ic.0);
    let deep = quarter(2 * (tip.0 + ic.0) + nx.signum(), 2 * (tip.1 + ic.1) + ny.signum());
    let exterior = (deep, far_witness(&s));
    let polygon = SimplePolygon::validate(s.vertices.iter().copied().map(pt).collect()).expect("fused spiral strip is simple");
    ExtremalInstance { polygon, interior, exterior, claimed_interior: legs, claimed_exterior: legs + 1 }
}

/// An `n`-gon with interior link diameter `n / 2` and exterior `ceil(n / 2)`.
pub fn spiral(n: usize) -> Result<ExtremalInstance> {
    match n {
        0..=2 => Err(Error::PreconditionViolated(format!("spiral needs n >= 3, got {n}"))),
        3 => Ok(triangle()),
        _ if n.is_multiple_of(2) => Ok(even(n / 2)),
        _ => Ok(odd(n / 2)),
    }
}

impl ExtremalInstance {
    /// Whether each witness pair lies in its claimed component.
    pub fn witnesses_classify(&self) -> bool {
        let side = |p: &Point| Component::of(classify(&self.polygon, p));
        let int = Some(Component::Interior);
        let ext = Some(Component::Exterior);
        side(&self.interior.0) == int
            && side(&self.interior.1) == int
            && side(&self.exterior.0) == ext
            && side(&self.exterior.1) == ext
    }

    /// Largest denominator among vertices and witnesses.
    pub fn max_denominator(&self) -> Scalar {
        let pts = self.polygon.vertices().iter().chain([
            &self.interior.0,
            &self.interior.1,
            &self.exterior.0,
            &self.exterior.1,
        ]);
        pts.flat_map(|p| [p.x.denom().clone(), p.y.denom().clone()])
            .map(|d| Scalar::from_big(d, 1.into()))
            .fold(Scalar::one(), Scalar::max)
    }
}

pub fn verify(inst: &ExtremalInstance) -> Result<VerifyReport> {
    verify_with(inst, DEFAULT_SAMPLES, 0)
}

/// Checks both witness distances against the claims with the oracle, and
/// that `samples` random pairs per component respect the upper bounds.
pub fn verify_with(inst: &ExtremalInstance, samples: usize, seed: u64) -> Result<VerifyReport> {
    let poly = &inst.polygon;
    let n = poly.n();
    if !inst.witnesses_classify() {
        return Err(Error::VerificationFailed("witnesses lie in the wrong components".into()));
    }
    let cfg = OracleConfig::default();
    let (a, b) = &inst.interior;
    let (c, d) = &inst.exterior;
    let interior = link_distance_with(poly, a, b, Component::Interior, &cfg)?.distance;
    let exterior = link_distance_with(poly, c, d, Component::Exterior, &cfg)?.distance;
    if interior != inst.claimed_interior {
        return Err(Error::VerificationFailed(format!(
            "interior pair {a} {b}: distance {interior}, claimed {}",
            inst.claimed_interior
        )));
    }
    if exterior != inst.claimed_exterior {
        return Err(Error::VerificationFailed(format!(
            "exterior pair {c} {d}: distance {exterior}, claimed {}",
            inst.claimed_exterior
        )));
    }
    let mut sampled = [0usize; 2];
    if samples > 0 {
        for (slot, comp, bound) in [
            (0, Component::Interior, interior_bound(n)),
            (1, Component::Exterior, exterior_bound(n)),
        ] {
            let s = poldiam_sampled(poly, comp, samples, seed)?;
            if s.lower_bound > bound {
                return Err(Error::VerificationFailed(format!(
                    "{comp} pair {} {}: distance {} exceeds bound {bound}",
                    s.a, s.b, s.lower_bound
                )));
            }
            sampled[slot] = s.lower_bound;
        }
    }
    Ok(VerifyReport {
        n,
        interior,
        exterior,
        claimed_interior: inst.claimed_interior,
        claimed_exterior: inst.claimed_exterior,
        sampled_interior: sampled[0],
        sampled_exterior: sampled[1],
    })
}
