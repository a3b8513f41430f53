//! Raindrop point classification.
//!
//! A point off the polygon drops a ray in the direction `-v`, where `v` is
//! parallel to no line through two vertices. Such a ray meets at most one
//! vertex. The parity of the number of edges it meets decides the side; when
//! the ray passes through a vertex, the two incident edges count once if they
//! lie on opposite sides of the vertical line through the point and not at
//! all if they lie on the same side.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact_geom::{orient, Point, Scalar, Sign, Vector};
use crate::polygon_model::{is_generic, Feature, SimplePolygon, HALVING_CAP};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Location {
    Interior,
    Exterior,
    OnBoundary(Feature),
}

impl Location {
    pub fn is_interior(self) -> bool {
        self == Location::Interior
    }

    pub fn is_boundary(self) -> bool {
        matches!(self, Location::OnBoundary(_))
    }
}

/// One of the two open components of the plane minus the polygon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Component {
    Interior,
    Exterior,
}

impl Component {
    pub fn of(loc: Location) -> Option<Component> {
        match loc {
            Location::Interior => Some(Component::Interior),
            Location::Exterior => Some(Component::Exterior),
            Location::OnBoundary(_) => None,
        }
    }

    pub fn is_interior(self) -> bool {
        self == Component::Interior
    }
}

impl std::fmt::Display for Component {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Component::Interior => "interior",
            Component::Exterior => "exterior",
        })
    }
}

/// A polygon together with the "up" direction used for raindrop rays.
#[derive(Debug, Clone)]
pub struct RaindropContext<'a> {
    polygon: &'a SimplePolygon,
    v: Vector,
}

impl<'a> RaindropContext<'a> {
    /// Uses the polygon's canonical generic direction.
    pub fn new(polygon: &'a SimplePolygon) -> Self {
        RaindropContext { polygon, v: polygon.generic().clone() }
    }

    /// Fails unless `v` is generic for the polygon.
    pub fn with_direction(polygon: &'a SimplePolygon, v: Vector) -> Result<Self> {
        if !is_generic(polygon.vertices(), &v) {
            return Err(Error::PreconditionViolated(format!(
                "direction {v:?} is parallel to a line through two vertices"
            )));
        }
        Ok(RaindropContext { polygon, v })
    }

    pub fn polygon(&self) -> &SimplePolygon {
        self.polygon
    }

    pub fn up(&self) -> &Vector {
        &self.v
    }

    /// Number of edges met by the raindrop ray of a point in `S0`.
    pub fn crossing_count(&self, p: &Point) -> Result<usize> {
        if self.polygon.on_boundary(p) {
            return Err(Error::NotInS0);
        }
        if vertex_below(self.polygon, &self.v, p).is_some() {
            return Err(Error::NotInS0);
        }
        let down = -&self.v;
        Ok(self
            .polygon
            .edges()
            .filter(|(_, e)| ray_crosses_edge(p, &down, &e.a, &e.b))
            .count())
    }

    pub fn classify(&self, p: &Point) -> Location {
        classify_with(self.polygon, &self.v, p)
    }
}

/// The unique vertex on the closed raindrop ray of `p`, if any.
fn vertex_below(poly: &SimplePolygon, v: &Vector, p: &Point) -> Option<usize> {
    poly.vertices().iter().position(|q| {
        let w = p - q;
        w.cross(v).is_zero() && w.dot(v).sign() != Sign::Negative
    })
}

/// Whether the ray `p + t * dir`, `t > 0`, crosses the segment `[s, t]` at an
/// interior point, assuming no endpoint lies on the ray.
pub(crate) fn ray_crosses_edge(p: &Point, dir: &Vector, s: &Point, t: &Point) -> bool {
    let ahead = p + dir;
    let os = orient(p, &ahead, s);
    let ot = orient(p, &ahead, t);
    if os == Sign::Zero || ot == Sign::Zero || os == ot {
        return false;
    }
    let e = t - s;
    e.cross(&(p - s)).sign() == e.cross(&-dir).sign()
}

pub(crate) fn classify_with(poly: &SimplePolygon, v: &Vector, p: &Point) -> Location {
    if let Some(f) = poly.feature_at(p) {
        return Location::OnBoundary(f);
    }
    let down = -v;
    let apex = vertex_below(poly, v, p);
    let mut count = 0usize;
    for (i, e) in poly.edges() {
        if let Some(k) = apex {
            let (s, t) = poly.edge_endpoints(i);
            if s == k || t == k {
                continue;
            }
        }
        if ray_crosses_edge(p, &down, &e.a, &e.b) {
            count += 1;
        }
    }
    if let Some(k) = apex {
        // Sides of the vertical line through p taken by the two incident edges.
        let up = p + v;
        let before = orient(p, &up, poly.vertex(poly.prev(k)));
        let after = orient(p, &up, poly.vertex(poly.next(k)));
        debug_assert!(before != Sign::Zero && after != Sign::Zero);
        if before != after {
            count += 1;
        }
    }
    if count % 2 == 1 {
        Location::Interior
    } else {
        Location::Exterior
    }
}

/// Shorthand for classifying with the polygon's canonical direction.
pub fn classify(poly: &SimplePolygon, p: &Point) -> Location {
    classify_with(poly, poly.generic(), p)
}

/// Crossing parity along a seeded random ray that avoids every vertex.
pub fn classify_by_random_ray(poly: &SimplePolygon, p: &Point, seed: u64) -> Location {
    if let Some(f) = poly.feature_at(p) {
        return Location::OnBoundary(f);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let dir = Vector::from_ints(rng.gen_range(-1000..=1000), rng.gen_range(-1000..=1000));
        if dir.is_zero() {
            continue;
        }
        let hits_vertex = poly.vertices().iter().any(|q| {
            let w = q - p;
            w.cross(&dir).is_zero() && w.dot(&dir).sign() == Sign::Positive
        });
        if hits_vertex {
            continue;
        }
        let count = poly
            .edges()
            .filter(|(_, e)| ray_crosses_edge(p, &dir, &e.a, &e.b))
            .count();
        return if count % 2 == 1 {
            Location::Interior
        } else {
            Location::Exterior
        };
    }
}

/// A step `eps` with both open segments from `x` to `x ± eps * v` clear of
/// the polygon and both endpoints off it, halving from 1.
pub fn straddle_step(poly: &SimplePolygon, x: &Point, v: &Vector) -> Result<Scalar> {
    let mut eps = Scalar::one();
    for _ in 0..HALVING_CAP {
        let ok = [eps.clone(), -&eps].iter().all(|t| {
            let q = x.offset(v, t);
            !poly.on_boundary(&q) && poly.open_segment_avoids(x, &q)
        });
        if ok {
            return Ok(eps);
        }
        eps = eps.half();
    }
    Err(Error::HaltingCapExceeded("straddle step"))
}

/// A radius `d` such that the eight compass neighbours of `p` at distance
/// `d` are joined to `p` by segments missing the polygon.
pub fn constancy_radius(poly: &SimplePolygon, p: &Point) -> Result<Scalar> {
    if poly.on_boundary(p) {
        return Err(Error::OnBoundaryInput);
    }
    let mut d = Scalar::one();
    for _ in 0..HALVING_CAP {
        if compass(p, &d).iter().all(|q| !poly.on_boundary(q) && poly.open_segment_avoids(p, q)) {
            return Ok(d);
        }
        d = d.half();
    }
    Err(Error::HaltingCapExceeded("constancy radius"))
}

pub fn compass(p: &Point, d: &Scalar) -> Vec<Point> {
    let mut out = Vec::with_capacity(8);
    for dx in -1..=1 {
        for dy in -1..=1 {
            if dx != 0 || dy != 0 {
                out.push(p.offset(&Vector::from_ints(dx, dy), d));
            }
        }
    }
    out
}
