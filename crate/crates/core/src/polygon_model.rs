//! Validated simple polygons and their combinatorics.
//!
//! Vertices are indexed `0..n`. Edges are indexed `1..=n`, edge `i` being the
//! closed segment `[p(i-1), p(i)]` with `p(n) = p(0)`. Vertex `i` is incident
//! to edges `edge_before(i)` and `edge_after(i)`.

use crate::error::{Error, Result, ValidationError};
use crate::exact_geom::{
    orient, point_on_segment, segment_relation, segments_intersect, Point, Relation, Scalar,
    Segment, Sign, Vector,
};
use crate::raindrop::{classify_with, Location};

/// Iteration cap for every "halve epsilon until verified" search.
pub const HALVING_CAP: usize = 256;

/// A feature of the polygon boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Feature {
    Vertex(usize),
    /// 1-based edge index.
    Edge(usize),
}

/// A simple closed polygon with exact vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplePolygon {
    vertices: Vec<Point>,
    generic: Vector,
}

impl SimplePolygon {
    /// Checks the simplicity conditions and builds the polygon.
    pub fn validate(vertices: Vec<Point>) -> std::result::Result<Self, ValidationError> {
        let n = vertices.len();
        if n < 3 {
            return Err(ValidationError::TooFewVertices(n));
        }
        for i in 0..n {
            for j in i + 1..n {
                if vertices[i] == vertices[j] {
                    return Err(ValidationError::DuplicateVertex(i, j));
                }
            }
        }
        let edge = |i: usize| Segment::new(vertices[i - 1].clone(), vertices[i % n].clone());
        for i in 1..=n {
            let ei = edge(i);
            for j in i + 1..=n {
                let ej = edge(j);
                let rel = segment_relation(&ei, &ej);
                let shared = if j == i + 1 {
                    Some(&vertices[i % n])
                } else if i == 1 && j == n {
                    Some(&vertices[0])
                } else {
                    None
                };
                match (shared, rel) {
                    (_, Relation::Overlap(..)) => {
                        return Err(ValidationError::CollinearOverlap(i, j))
                    }
                    (Some(v), Relation::Touch(p)) if &p == v => {}
                    (Some(_), _) => return Err(ValidationError::EdgeCrossing(i, j)),
                    (None, Relation::Disjoint) => {}
                    (None, _) => return Err(ValidationError::EdgeCrossing(i, j)),
                }
            }
        }
        let generic = generic_direction_for(&vertices);
        Ok(SimplePolygon { vertices, generic })
    }

    pub fn from_int_coords(coords: &[(i64, i64)]) -> std::result::Result<Self, ValidationError> {
        Self::validate(coords.iter().map(|&(x, y)| Point::from_ints(x, y)).collect())
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &Point {
        &self.vertices[i % self.n()]
    }

    /// The vertex after `i` in cyclic order.
    pub fn next(&self, i: usize) -> usize {
        (i + 1) % self.n()
    }

    pub fn prev(&self, i: usize) -> usize {
        (i + self.n() - 1) % self.n()
    }

    /// Edge `i` (1-based) as a segment.
    pub fn edge(&self, i: usize) -> Segment {
        debug_assert!((1..=self.n()).contains(&i));
        Segment::new(self.vertices[i - 1].clone(), self.vertices[i % self.n()].clone())
    }

    /// Endpoint vertex indices of edge `i`.
    pub fn edge_endpoints(&self, i: usize) -> (usize, usize) {
        (i - 1, i % self.n())
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, Segment)> + '_ {
        (1..=self.n()).map(move |i| (i, self.edge(i)))
    }

    /// Edge ending at vertex `i`.
    pub fn edge_before(&self, i: usize) -> usize {
        if i == 0 {
            self.n()
        } else {
            i
        }
    }

    /// Edge starting at vertex `i`.
    pub fn edge_after(&self, i: usize) -> usize {
        i + 1
    }

    /// The cached generic direction (see [`generic_direction`]).
    pub fn generic(&self) -> &Vector {
        &self.generic
    }

    /// Lowest-index boundary feature containing `p`, vertices first.
    pub fn feature_at(&self, p: &Point) -> Option<Feature> {
        if let Some(i) = self.vertices.iter().position(|v| v == p) {
            return Some(Feature::Vertex(i));
        }
        self.edges()
            .find(|(_, e)| point_on_segment(p, e))
            .map(|(i, _)| Feature::Edge(i))
    }

    pub fn on_boundary(&self, p: &Point) -> bool {
        self.feature_at(p).is_some()
    }

    /// True iff the open segment `]a, b[` meets no point of the polygon.
    pub fn open_segment_avoids(&self, a: &Point, b: &Point) -> bool {
        if a == b {
            return true;
        }
        let s = Segment::new(a.clone(), b.clone());
        for (_, e) in self.edges() {
            if !segments_intersect(&s, &e) {
                continue;
            }
            match segment_relation(&s, &e) {
                Relation::Disjoint => {}
                Relation::Touch(p) if &p == a || &p == b => {}
                _ => return false,
            }
        }
        true
    }

    /// Lower-left and upper-right corners of the bounding box.
    pub fn bounding_box(&self) -> (Point, Point) {
        bounding_box(self.vertices.iter())
    }

    /// Vertex average; strictly inside the convex hull.
    pub fn vertex_centroid(&self) -> Point {
        let n = Scalar::from_int(self.n() as i64);
        let (sx, sy) = self
            .vertices
            .iter()
            .fold((Scalar::zero(), Scalar::zero()), |(x, y), p| (x + &p.x, y + &p.y));
        Point::new(sx / &n, sy / &n)
    }

    /// Twice the signed area; positive for counterclockwise vertex order.
    pub fn doubled_area(&self) -> Scalar {
        let n = self.n();
        (0..n).fold(Scalar::zero(), |acc, i| {
            let p = &self.vertices[i];
            let q = &self.vertices[(i + 1) % n];
            acc + (&p.x * &q.y - &q.x * &p.y)
        })
    }

    pub fn is_convex(&self) -> bool {
        let n = self.n();
        let mut seen: Option<Sign> = None;
        for i in 0..n {
            let s = orient(self.vertex(self.prev(i)), self.vertex(i), self.vertex(self.next(i)));
            if s == Sign::Zero {
                continue;
            }
            match seen {
                None => seen = Some(s),
                Some(t) if t != s => return false,
                _ => {}
            }
        }
        true
    }
}

pub(crate) fn bounding_box<'a>(pts: impl Iterator<Item = &'a Point>) -> (Point, Point) {
    let mut it = pts;
    let first = it.next().expect("nonempty point set").clone();
    let (mut lo, mut hi) = (first.clone(), first);
    for p in it {
        if p.x < lo.x {
            lo.x = p.x.clone();
        }
        if p.y < lo.y {
            lo.y = p.y.clone();
        }
        if p.x > hi.x {
            hi.x = p.x.clone();
        }
        if p.y > hi.y {
            hi.y = p.y.clone();
        }
    }
    (lo, hi)
}

/// True iff `v` is parallel to no line through two distinct vertices.
pub fn is_generic(vertices: &[Point], v: &Vector) -> bool {
    if v.is_zero() {
        return false;
    }
    for i in 0..vertices.len() {
        for j in i + 1..vertices.len() {
            if v.cross(&(&vertices[j] - &vertices[i])).is_zero() {
                return false;
            }
        }
    }
    true
}

fn generic_direction_for(vertices: &[Point]) -> Vector {
    (1..)
        .map(|k| Vector::from_ints(1, k))
        .find(|v| is_generic(vertices, v))
        .expect("only finitely many slopes are forbidden")
}

/// First `(1, k)`, `k = 1, 2, ...`, parallel to no line through two vertices.
pub fn generic_direction(poly: &SimplePolygon) -> Vector {
    generic_direction_for(poly.vertices())
}

/// Number of edges separating vertices `i` and `j` along the shorter way.
pub fn cyclic_edge_distance(poly: &SimplePolygon, i: usize, j: usize) -> usize {
    cyclic_distance(poly.n(), i, j)
}

pub(crate) fn cyclic_distance(n: usize, i: usize, j: usize) -> usize {
    let d = i.abs_diff(j) % n;
    d.min(n - d)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArcDirection {
    /// Increasing vertex indices.
    Forward,
    Backward,
}

/// A walk along the boundary between two vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryArc {
    pub start: usize,
    pub end: usize,
    pub direction: ArcDirection,
    pub edge_count: usize,
    n: usize,
}

impl BoundaryArc {
    /// Vertex indices from `start` to `end`, both included.
    pub fn vertices(&self) -> Vec<usize> {
        let n = self.n;
        (0..=self.edge_count)
            .map(|k| match self.direction {
                ArcDirection::Forward => (self.start + k) % n,
                ArcDirection::Backward => (self.start + n * (k + 1) - k) % n,
            })
            .collect()
    }
}

/// The arc from `i` to `j` realizing the cyclic distance; ties go forward.
pub fn shorter_arc(poly: &SimplePolygon, i: usize, j: usize) -> BoundaryArc {
    let n = poly.n();
    let fwd = (j + n - i) % n;
    let bwd = (n - fwd) % n;
    let (direction, edge_count) = if fwd <= bwd {
        (ArcDirection::Forward, fwd)
    } else {
        (ArcDirection::Backward, bwd)
    };
    BoundaryArc { start: i, end: j, direction, edge_count, n }
}

/// Rational push directions at a vertex, with the step that verified them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WedgeDirections {
    pub vertex: usize,
    pub inward: Vector,
    pub outward: Vector,
    /// `vertex + epsilon * inward` is interior and `vertex + epsilon * outward`
    /// exterior, with both open segments from the vertex clear of the polygon.
    pub epsilon: Scalar,
}

impl WedgeDirections {
    pub fn toward(&self, interior: bool) -> &Vector {
        if interior {
            &self.inward
        } else {
            &self.outward
        }
    }
}

/// Candidate wedge direction: the sum of the two edge vectors leaving the
/// vertex, or the edge normal when the edges are collinear.
pub(crate) fn wedge_candidate(poly: &SimplePolygon, i: usize) -> Vector {
    let p = poly.vertex(i);
    let to_prev = poly.vertex(poly.prev(i)) - p;
    let to_next = poly.vertex(poly.next(i)) - p;
    if to_prev.cross(&to_next).is_zero() {
        to_next.perp()
    } else {
        &to_prev + &to_next
    }
}

pub fn wedge_directions(poly: &SimplePolygon, i: usize) -> Result<WedgeDirections> {
    let p = poly.vertex(i);
    let d = wedge_candidate(poly, i);
    let neg = -&d;
    let mut eps = Scalar::one();
    for _ in 0..HALVING_CAP {
        let q_plus = p.offset(&d, &eps);
        let q_minus = p.offset(&neg, &eps);
        if poly.open_segment_avoids(p, &q_plus)
            && poly.open_segment_avoids(p, &q_minus)
            && !poly.on_boundary(&q_plus)
            && !poly.on_boundary(&q_minus)
        {
            let plus = classify_with(poly, poly.generic(), &q_plus);
            let minus = classify_with(poly, poly.generic(), &q_minus);
            return match (plus, minus) {
                (Location::Interior, Location::Exterior) => Ok(WedgeDirections {
                    vertex: i,
                    inward: d,
                    outward: neg,
                    epsilon: eps,
                }),
                (Location::Exterior, Location::Interior) => Ok(WedgeDirections {
                    vertex: i,
                    inward: neg,
                    outward: d,
                    epsilon: eps,
                }),
                _ => Err(Error::PreconditionViolated(format!(
                    "wedge samples at vertex {i} do not separate the components"
                ))),
            };
        }
        eps = eps.half();
    }
    Err(Error::HaltingCapExceeded("wedge direction epsilon"))
}
