//! Visibility predicates and constructive visible-vertex searches.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::exact_geom::{orient, point_on_segment, ray_segment_hit, Point, Scalar, Segment, Sign, Vector};
use crate::polygon_model::{cyclic_edge_distance, Feature, SimplePolygon};

/// Two distinct vertices seen from one point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VisibleVertexPair {
    pub first: usize,
    pub second: usize,
    pub nonadjacent: bool,
}

impl VisibleVertexPair {
    fn new(poly: &SimplePolygon, first: usize, second: usize) -> Self {
        debug_assert_ne!(first, second);
        VisibleVertexPair {
            first,
            second,
            nonadjacent: cyclic_edge_distance(poly, first, second) >= 2,
        }
    }
}

/// A ray that misses the polygon entirely.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeDirection {
    pub origin: Point,
    pub dir: Vector,
}

/// An open angular interval of free directions, counterclockwise from
/// `start` to `end`, with a direction strictly inside it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeArc {
    pub start: Vector,
    pub end: Vector,
    pub witness: Vector,
}

impl FreeArc {
    pub fn contains(&self, d: &Vector) -> bool {
        in_open_arc(d, &self.start, &self.end)
    }
}

/// An edge seen from a point, with a witness in its relative interior.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeenEdge {
    pub edge: usize,
    pub witness: Point,
}

/// True iff the open segment `]s.a, s.b[` misses the polygon.
pub fn segment_avoids(poly: &SimplePolygon, s: &Segment) -> bool {
    poly.open_segment_avoids(&s.a, &s.b)
}

pub fn sees_vertex(poly: &SimplePolygon, p: &Point, i: usize) -> bool {
    poly.open_segment_avoids(p, poly.vertex(i))
}

/// Every vertex seen from `p`, by brute force.
pub fn visible_vertices(poly: &SimplePolygon, p: &Point) -> Vec<usize> {
    (0..poly.n()).filter(|&i| sees_vertex(poly, p, i)).collect()
}

/// First point of the polygon along the ray, with the feature carrying it.
pub fn first_hit(poly: &SimplePolygon, origin: &Point, dir: &Vector) -> Option<(Point, Feature)> {
    let mut best: Option<(Scalar, Point)> = None;
    for (_, e) in poly.edges() {
        if let Some((lam, hit)) = ray_segment_hit(origin, dir, &e) {
            if best.as_ref().is_none_or(|(l, _)| lam < *l) {
                best = Some((lam, hit));
            }
        }
    }
    best.map(|(_, p)| {
        let f = poly.feature_at(&p).expect("hit point lies on the polygon");
        (p, f)
    })
}

pub fn ray_misses(poly: &SimplePolygon, origin: &Point, dir: &Vector) -> bool {
    poly.edges().all(|(_, e)| ray_segment_hit(origin, dir, &e).is_none())
}

const ROTATION_STEPS: u32 = 64;

/// Shoots rays toward `target`, rotating slightly until the first hit is in
/// the relative interior of an edge.
fn seen_edge_toward(poly: &SimplePolygon, p: &Point, target: &Point) -> Option<SeenEdge> {
    let d = target - p;
    if d.is_zero() {
        return None;
    }
    let mut t = Scalar::one();
    let try_dir = |dir: &Vector| match first_hit(poly, p, dir) {
        Some((w, Feature::Edge(i))) => Some(SeenEdge { edge: i, witness: w }),
        _ => None,
    };
    if let Some(s) = try_dir(&d) {
        return Some(s);
    }
    for _ in 0..ROTATION_STEPS {
        t = t.half();
        for tt in [t.clone(), -&t] {
            if let Some(s) = try_dir(&d.rotate_by_tangent(&tt)) {
                return Some(s);
            }
        }
    }
    None
}

/// An edge seen by `p`: the ray toward the vertex centroid is tried first,
/// then rays toward edge midpoints starting at edge `seed % n + 1`.
pub fn seen_edge(poly: &SimplePolygon, p: &Point, seed: u64) -> Result<SeenEdge> {
    if poly.on_boundary(p) {
        return Err(Error::OnBoundaryInput);
    }
    let n = poly.n();
    let start = (seed % n as u64) as usize;
    let targets = std::iter::once(poly.vertex_centroid()).chain((0..n).map(|k| {
        let e = poly.edge((start + k) % n + 1);
        e.a.midpoint(&e.b)
    }));
    for target in targets {
        if let Some(s) = seen_edge_toward(poly, p, &target) {
            return Ok(s);
        }
    }
    Err(Error::HaltingCapExceeded("seen edge ray search"))
}

fn in_closed_triangle(a: &Point, b: &Point, c: &Point, v: &Point) -> bool {
    let s = orient(a, b, c);
    let ok = |x: Sign| x == Sign::Zero || x == s;
    ok(orient(a, b, v)) && ok(orient(b, c, v)) && ok(orient(c, a, v))
}

/// A vertex seen from `a` inside the triangle `[a, bp, b]` but off `[a, b]`,
/// where `b` lies on an edge having `bp` as an endpoint and `a` sees `b`.
///
/// The vertex found is the first one met when the segment `[a, b]` is swept
/// toward `[a, bp]`, nearest to `a` among ties.
pub fn visible_vertex_in_triangle(
    poly: &SimplePolygon,
    a: &Point,
    b: &Point,
    bp: &Point,
) -> Result<usize> {
    let pre = |msg: &str| Error::PreconditionViolated(msg.to_string());
    if poly.on_boundary(a) {
        return Err(Error::OnBoundaryInput);
    }
    let bp_index = poly
        .vertices()
        .iter()
        .position(|v| v == bp)
        .ok_or_else(|| pre("b' is not a vertex"))?;
    if b == bp {
        return Err(pre("b must differ from b'"));
    }
    let on_incident_edge = [poly.edge_before(bp_index), poly.edge_after(bp_index)]
        .into_iter()
        .any(|i| point_on_segment(b, &poly.edge(i)));
    if !on_incident_edge {
        return Err(pre("b is not on an edge ending at b'"));
    }
    if !poly.open_segment_avoids(a, b) {
        return Err(pre("a does not see b"));
    }
    if poly.open_segment_avoids(a, bp) {
        return Ok(bp_index);
    }
    let turn = orient(a, b, bp);
    if turn == Sign::Zero {
        return Err(pre("a, b, b' are collinear"));
    }
    let ab = Segment::new(a.clone(), b.clone());
    let best = (0..poly.n())
        .filter(|&j| {
            let v = poly.vertex(j);
            in_closed_triangle(a, b, bp, v) && !point_on_segment(v, &ab)
        })
        .min_by(|&i, &j| {
            let (vi, vj) = (poly.vertex(i), poly.vertex(j));
            match orient(a, vi, vj) {
                Sign::Zero => (vi - a).norm2().cmp(&(vj - a).norm2()),
                s if s == turn => Ordering::Less,
                _ => Ordering::Greater,
            }
        })
        .ok_or_else(|| pre("no vertex in the sweep triangle"))?;
    if !poly.open_segment_avoids(a, poly.vertex(best)) {
        return Err(pre("swept vertex is not seen"));
    }
    Ok(best)
}

/// Two distinct vertices seen from `a`: both ends of the sweep from a seen
/// edge point toward its two endpoints.
pub fn two_visible_vertices(poly: &SimplePolygon, a: &Point, seed: u64) -> Result<VisibleVertexPair> {
    let seen = seen_edge(poly, a, seed)?;
    let (u, w) = poly.edge_endpoints(seen.edge);
    let c1 = visible_vertex_in_triangle(poly, a, &seen.witness, poly.vertex(u))?;
    let c2 = visible_vertex_in_triangle(poly, a, &seen.witness, poly.vertex(w))?;
    if c1 == c2 {
        return Err(Error::PreconditionViolated("sweeps met the same vertex".into()));
    }
    Ok(VisibleVertexPair::new(poly, c1, c2))
}

/// Two non-adjacent vertices seen from `a`, for `n >= 4` and a point from
/// which every ray meets the polygon.
pub fn two_nonadjacent_visible(poly: &SimplePolygon, a: &Point) -> Result<VisibleVertexPair> {
    if poly.n() < 4 {
        return Err(Error::PreconditionViolated("n >= 4 required".into()));
    }
    if free_direction(poly, a).is_some() {
        return Err(Error::PreconditionViolated("a ray from the point misses the polygon".into()));
    }
    let c = two_visible_vertices(poly, a, 0)?.first;
    let back = a - poly.vertex(c);
    let (b, feature) = first_hit(poly, a, &back)
        .ok_or_else(|| Error::PreconditionViolated("opposite ray misses the polygon".into()))?;
    let candidates: Vec<(usize, usize)> = match feature {
        Feature::Vertex(j) => vec![(c, j)],
        Feature::Edge(i) => {
            let (u, w) = poly.edge_endpoints(i);
            let c1 = visible_vertex_in_triangle(poly, a, &b, poly.vertex(u))?;
            let c2 = visible_vertex_in_triangle(poly, a, &b, poly.vertex(w))?;
            vec![(c1, c2), (c, u), (c, w)]
        }
    };
    candidates
        .into_iter()
        .find(|&(x, y)| x != y && cyclic_edge_distance(poly, x, y) >= 2)
        .map(|(x, y)| VisibleVertexPair::new(poly, x, y))
        .ok_or_else(|| Error::PreconditionViolated("no non-adjacent pair found".into()))
}

/// A direction strictly inside the counterclockwise angular gap from `s` to
/// `e`. Equal directions denote the full turn.
pub(crate) fn gap_midpoint(s: &Vector, e: &Vector) -> Vector {
    let c = s.cross(e);
    if c.sign() == Sign::Positive {
        s + e
    } else {
        s.perp()
    }
}

/// `d` expressed in the frame whose x axis is `s`.
fn relative(s: &Vector, d: &Vector) -> Vector {
    Vector::new(s.dot(d), s.cross(d))
}

/// Whether `d` lies strictly inside the counterclockwise open arc from `s`
/// to `e`; when `s` and `e` point the same way the arc is the full turn
/// minus that direction.
pub fn in_open_arc(d: &Vector, s: &Vector, e: &Vector) -> bool {
    let rd = relative(s, d);
    let re = relative(s, e);
    let zero_angle = |v: &Vector| v.dy.is_zero() && v.dx.sign() == Sign::Positive;
    if zero_angle(&rd) {
        return false;
    }
    if zero_angle(&re) {
        return true;
    }
    rd.angle_cmp(&re) == Ordering::Less
}

/// Sorts directions counterclockwise and drops repeats.
pub(crate) fn sorted_directions(mut dirs: Vec<Vector>) -> Vec<Vector> {
    dirs.sort_by(|u, v| u.angle_cmp(v));
    dirs.dedup_by(|u, v| u.angle_cmp(v) == Ordering::Equal);
    dirs
}

/// All maximal open arcs of directions whose rays from `a` miss the polygon.
///
/// Arc boundaries are vertex directions; within a gap between consecutive
/// vertex directions the set of edges met is constant, so one test per gap
/// decides it.
pub fn free_arcs(poly: &SimplePolygon, a: &Point) -> Vec<FreeArc> {
    let dirs = sorted_directions(poly.vertices().iter().map(|v| v - a).collect());
    let m = dirs.len();
    let mut arcs = Vec::new();
    for k in 0..m {
        let s = &dirs[k];
        let e = &dirs[(k + 1) % m];
        let mid = gap_midpoint(s, e);
        if ray_misses(poly, a, &mid) {
            arcs.push(FreeArc { start: s.clone(), end: e.clone(), witness: mid });
        }
    }
    arcs
}

pub fn free_direction(poly: &SimplePolygon, a: &Point) -> Option<FreeDirection> {
    free_arcs(poly, a)
        .into_iter()
        .next()
        .map(|arc| FreeDirection { origin: a.clone(), dir: arc.witness })
}

/// A direction strictly inside both arcs, if they overlap.
pub fn common_direction(x: &FreeArc, y: &FreeArc) -> Option<Vector> {
    let dirs = sorted_directions(vec![
        x.start.clone(),
        x.end.clone(),
        y.start.clone(),
        y.end.clone(),
    ]);
    let m = dirs.len();
    (0..m)
        .map(|k| gap_midpoint(&dirs[k], &dirs[(k + 1) % m]))
        .find(|d| x.contains(d) && y.contains(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::raindrop::{classify, Location};

    fn square() -> SimplePolygon {
        SimplePolygon::from_int_coords(&[(0, 0), (1, 0), (1, 1), (0, 1)]).unwrap()
    }

    fn l_hexagon() -> SimplePolygon {
        SimplePolygon::from_int_coords(&[(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)]).unwrap()
    }

    fn q(xn: i64, xd: i64, yn: i64, yd: i64) -> Point {
        Point::from_ratios(xn, xd, yn, yd)
    }

    fn seg(a: Point, b: Point) -> Segment {
        Segment::new(a, b)
    }

    #[test]
    fn segment_avoids_examples() {
        let sq = square();
        assert!(segment_avoids(&sq, &seg(q(1, 4, 1, 2), q(3, 4, 1, 2))));
        assert!(!segment_avoids(&sq, &seg(q(1, 2, 1, 2), q(3, 2, 1, 2))));
        assert!(segment_avoids(&sq, &seg(q(1, 2, 1, 2), Point::from_ints(1, 1))));
        // Grazing a vertex blocks.
        assert!(!segment_avoids(&sq, &seg(Point::from_ints(2, 0), Point::from_ints(0, 2))));
        // Running along an edge blocks.
        assert!(!segment_avoids(&sq, &seg(Point::from_ints(-1, 0), Point::from_ints(2, 0))));
    }

    #[test]
    fn sees_vertex_examples() {
        let sq = square();
        for i in 0..4 {
            assert!(sees_vertex(&sq, &q(1, 2, 1, 2), i));
        }
        assert!(!sees_vertex(&l_hexagon(), &q(3, 2, 1, 2), 5));
        assert!(!sees_vertex(&sq, &q(2, 1, 1, 2), 0));
    }

    #[test]
    fn first_hit_examples() {
        let sq = square();
        let c = q(1, 2, 1, 2);
        assert_eq!(
            first_hit(&sq, &c, &Vector::from_ints(0, -1)),
            Some((q(1, 2, 0, 1), Feature::Edge(1)))
        );
        assert_eq!(
            first_hit(&sq, &c, &Vector::from_ints(1, 1)),
            Some((Point::from_ints(1, 1), Feature::Vertex(2)))
        );
        assert_eq!(first_hit(&sq, &Point::from_ints(2, 2), &Vector::from_ints(1, 0)), None);
    }

    #[test]
    fn seen_edge_golden() {
        let sq = square();
        let s = seen_edge(&sq, &q(1, 2, 1, 2), 0).unwrap();
        assert_eq!(s, SeenEdge { edge: 1, witness: q(1, 2, 0, 1) });
        let s = seen_edge(&sq, &q(5, 1, 1, 2), 0).unwrap();
        assert_eq!(s, SeenEdge { edge: 2, witness: q(1, 1, 1, 2) });
        let l = l_hexagon();
        let s = seen_edge(&l, &q(3, 2, 3, 2), 0).unwrap();
        assert!(s.edge == 3 || s.edge == 4, "{s:?}");
        assert!(segment_avoids(&l, &seg(q(3, 2, 3, 2), s.witness.clone())));
    }

    #[test]
    fn visible_vertex_in_triangle_examples() {
        let sq = square();
        let a = q(1, 2, 1, 2);
        let c = visible_vertex_in_triangle(&sq, &a, &q(1, 2, 0, 1), &Point::from_ints(0, 0)).unwrap();
        assert_eq!(c, 0);

        let l = l_hexagon();
        let a = q(1, 2, 1, 2);
        let b = q(3, 2, 1, 1);
        let c = visible_vertex_in_triangle(&l, &a, &b, &Point::from_ints(1, 1)).unwrap();
        assert_eq!(c, 3);
        let c = visible_vertex_in_triangle(&l, &a, &b, &Point::from_ints(2, 1)).unwrap();
        assert_eq!(c, 2);
    }

    #[test]
    fn visible_vertex_in_triangle_blocked_sweep() {
        // (2,0) is hidden behind the reflex corner.
        let l = l_hexagon();
        let a = q(1, 4, 7, 4);
        let b = q(3, 2, 0, 1);
        assert!(segment_avoids(&l, &seg(a.clone(), b.clone())));
        let c = visible_vertex_in_triangle(&l, &a, &b, &Point::from_ints(2, 0)).unwrap();
        assert!(sees_vertex(&l, &a, c));
    }

    #[test]
    fn visible_vertex_in_triangle_preconditions() {
        let l = l_hexagon();
        let a = q(1, 2, 1, 2);
        let b = q(1, 1, 3, 2);
        assert!(visible_vertex_in_triangle(&l, &a, &b, &Point::from_ints(1, 2)).is_ok());
        // Hidden behind the reflex corner, which is swept first.
        let a = q(3, 2, 1, 2);
        let b = q(0, 1, 3, 2);
        let c = visible_vertex_in_triangle(&l, &a, &b, &Point::from_ints(0, 2)).unwrap();
        assert_eq!(c, 3);
        let b = q(1, 2, 2, 1);
        assert!(matches!(
            visible_vertex_in_triangle(&l, &a, &b, &Point::from_ints(0, 2)),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn two_visible_golden() {
        let sq = square();
        let pair = two_visible_vertices(&sq, &q(1, 2, 1, 2), 0).unwrap();
        assert_eq!((pair.first, pair.second), (0, 1));
        let pair = two_visible_vertices(&sq, &q(2, 1, 1, 2), 0).unwrap();
        assert_eq!((pair.first, pair.second), (1, 2));
        let l = l_hexagon();
        let pair = two_visible_vertices(&l, &q(3, 2, 3, 2), 0).unwrap();
        assert!(sees_vertex(&l, &q(3, 2, 3, 2), pair.first));
        assert!(sees_vertex(&l, &q(3, 2, 3, 2), pair.second));
    }

    #[test]
    fn two_nonadjacent_examples() {
        let sq = square();
        let pair = two_nonadjacent_visible(&sq, &q(1, 2, 1, 2)).unwrap();
        assert!(pair.nonadjacent);
        assert_eq!(cyclic_edge_distance(&sq, pair.first, pair.second), 2);

        let l = l_hexagon();
        let a = q(1, 2, 1, 2);
        let pair = two_nonadjacent_visible(&l, &a).unwrap();
        assert!(pair.nonadjacent);
        assert!(sees_vertex(&l, &a, pair.first) && sees_vertex(&l, &a, pair.second));

        let tri = SimplePolygon::from_int_coords(&[(0, 0), (4, 0), (0, 4)]).unwrap();
        assert!(matches!(
            two_nonadjacent_visible(&tri, &Point::from_ints(1, 1)),
            Err(Error::PreconditionViolated(_))
        ));
        assert!(two_nonadjacent_visible(&sq, &Point::from_ints(3, 3)).is_err());
    }

    #[test]
    fn free_direction_examples() {
        let sq = square();
        assert!(free_direction(&sq, &q(1, 2, 1, 2)).is_none());
        let f = free_direction(&sq, &Point::from_ints(2, 2)).unwrap();
        assert!(ray_misses(&sq, &f.origin, &f.dir));
        let l = l_hexagon();
        let a = q(3, 2, 3, 2);
        assert_eq!(classify(&l, &a), Location::Exterior);
        let f = free_direction(&l, &a).unwrap();
        assert!(ray_misses(&l, &a, &f.dir));
        assert!(ray_misses(&l, &a, &Vector::from_ints(1, 1)));
        assert!(free_arcs(&l, &a).iter().any(|arc| arc.contains(&Vector::from_ints(1, 1))));
    }

    #[test]
    fn arcs_and_common_direction() {
        let x = FreeArc {
            start: Vector::from_ints(1, 0),
            end: Vector::from_ints(-1, 1),
            witness: Vector::from_ints(0, 1),
        };
        let y = FreeArc {
            start: Vector::from_ints(0, 1),
            end: Vector::from_ints(0, -1),
            witness: Vector::from_ints(-1, 0),
        };
        let d = common_direction(&x, &y).unwrap();
        assert!(x.contains(&d) && y.contains(&d));
        let z = FreeArc {
            start: Vector::from_ints(0, -1),
            end: Vector::from_ints(1, -1),
            witness: Vector::from_ints(1, -2),
        };
        assert!(common_direction(&x, &z).is_none());
        assert!(in_open_arc(&Vector::from_ints(-1, 0), &Vector::from_ints(1, 0), &Vector::from_ints(1, 0)));
        assert!(!in_open_arc(&Vector::from_ints(2, 0), &Vector::from_ints(1, 0), &Vector::from_ints(1, 0)));
    }
}
