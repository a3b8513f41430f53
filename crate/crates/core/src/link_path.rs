//! Explicit polygonal paths between two points of one component, with link
//! bounds ⌊n/2⌋ inside and ⌈n/2⌉ outside.

use std::fmt;

use crate::error::{Error, Result};
use crate::exact_geom::{Point, Scalar, Sign, Vector};
use crate::polygon_model::{cyclic_edge_distance, shorter_arc, wedge_directions, SimplePolygon, HALVING_CAP};
use crate::raindrop::{classify, Component};
use crate::visibility::{
    common_direction, free_arcs, gap_midpoint, seen_edge, sorted_directions, visible_vertices, FreeArc,
};

/// Doublings tried when pushing waypoints far away.
const FAR_CAP: usize = 128;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polyline {
    points: Vec<Point>,
}

impl Polyline {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::PreconditionViolated("a polyline needs two points".into()));
        }
        if points.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::PreconditionViolated("repeated consecutive point".into()));
        }
        Ok(Polyline { points })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn links(&self) -> usize {
        self.points.len() - 1
    }

    pub fn start(&self) -> &Point {
        &self.points[0]
    }

    pub fn end(&self) -> &Point {
        self.points.last().unwrap()
    }

    /// Whether the whole path lies in `component`: every point classifies
    /// there and every open link misses the polygon.
    pub fn lies_in(&self, poly: &SimplePolygon, component: Component) -> bool {
        self.points
            .iter()
            .all(|p| Component::of(classify(poly, p)) == Some(component))
            && self
                .points
                .windows(2)
                .all(|w| poly.open_segment_avoids(&w[0], &w[1]))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PathCase {
    Direct,
    CommonVertex,
    BoundaryArc,
    FarRays,
    Mixed,
    Naive,
}

impl fmt::Display for PathCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PathCase::Direct => "direct",
            PathCase::CommonVertex => "common-vertex",
            PathCase::BoundaryArc => "boundary-arc",
            PathCase::FarRays => "far-rays",
            PathCase::Mixed => "mixed",
            PathCase::Naive => "naive",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathCertificate {
    pub path: Polyline,
    pub component: Component,
    pub bound: usize,
    pub case: PathCase,
}

impl PathCertificate {
    pub fn links(&self) -> usize {
        self.path.links()
    }

    pub fn is_sound(&self, poly: &SimplePolygon) -> bool {
        self.links() <= self.bound && self.path.lies_in(poly, self.component)
    }

    fn checked(self, poly: &SimplePolygon) -> Result<Self> {
        if !self.path.lies_in(poly, self.component) {
            return Err(Error::VerificationFailed(format!("{} path leaves the {}", self.case, self.component)));
        }
        if self.links() > self.bound {
            return Err(Error::VerificationFailed(format!(
                "{} path has {} links, bound {}",
                self.case,
                self.links(),
                self.bound
            )));
        }
        Ok(self)
    }
}

pub fn interior_bound(n: usize) -> usize {
    n / 2
}

pub fn exterior_bound(n: usize) -> usize {
    n.div_ceil(2)
}

pub fn naive_bound(n: usize) -> usize {
    n / 2 + 3
}

/// A stop on a walk along the polygon between the two free endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Stop {
    /// Pushed off along the vertex's wedge direction.
    Vertex(usize),
    /// A point seen from the neighbouring endpoint, pulled toward it.
    Seen(Point),
}

/// Replaces the boundary stops of the walk `a, stops.., b` by nearby points
/// of `component`, halving a common step until the path verifies.
///
/// A `Seen` stop must be first or last and is pulled along its seen segment
/// toward `a` or `b`. Vertex stops move along their wedge direction; when
/// that alone does not verify, the first and last vertices are also tried
/// pulled toward `a` and `b`.
pub fn push_off_boundary(
    poly: &SimplePolygon,
    a: &Point,
    stops: &[Stop],
    b: &Point,
    component: Component,
) -> Result<Polyline> {
    let k = stops.len();
    if k == 0 {
        if !poly.open_segment_avoids(a, b) {
            return Err(Error::PreconditionViolated("endpoints do not see each other".into()));
        }
        return Polyline::new(vec![a.clone(), b.clone()]);
    }
    for (i, s) in stops.iter().enumerate() {
        if matches!(s, Stop::Seen(_)) && i != 0 && i != k - 1 {
            return Err(Error::PreconditionViolated("seen stops must be at the ends".into()));
        }
    }
    let mut dirs = Vec::with_capacity(k);
    for s in stops {
        dirs.push(match s {
            Stop::Vertex(i) => Some(wedge_directions(poly, *i)?.toward(component.is_interior()).clone()),
            Stop::Seen(_) => None,
        });
    }
    let anchor = |i: usize| if i == 0 { a } else { b };
    let place = |i: usize, eps: &Scalar, pull: bool| -> Point {
        match (&stops[i], &dirs[i]) {
            (Stop::Seen(p), _) => p.lerp(anchor(i), eps),
            (Stop::Vertex(v), Some(d)) => {
                let q = poly.vertex(*v);
                if pull && (i == 0 || i == k - 1) {
                    q.lerp(anchor(i), eps)
                } else {
                    q.offset(d, eps)
                }
            }
            (Stop::Vertex(_), None) => unreachable!(),
        }
    };
    let mut eps = Scalar::ratio(1, 2);
    for _ in 0..HALVING_CAP {
        for pull in [false, true] {
            let mut pts = Vec::with_capacity(k + 2);
            pts.push(a.clone());
            pts.extend((0..k).map(|i| place(i, &eps, pull)));
            pts.push(b.clone());
            if let Ok(line) = Polyline::new(pts) {
                if line.lies_in(poly, component) {
                    return Ok(line);
                }
            }
        }
        eps = eps.half();
    }
    Err(Error::HaltingCapExceeded("push off boundary"))
}

fn component_of_pair(poly: &SimplePolygon, a: &Point, b: &Point) -> Result<Component> {
    let ca = Component::of(classify(poly, a)).ok_or(Error::OnBoundaryInput)?;
    let cb = Component::of(classify(poly, b)).ok_or(Error::OnBoundaryInput)?;
    if ca != cb {
        return Err(Error::ComponentMismatch);
    }
    Ok(ca)
}

/// The straightforward construction: walk from an edge seen by `a` along the
/// shorter boundary path to an edge seen by `b`. Bound ⌊n/2⌋ + 3.
pub fn connect_naive(poly: &SimplePolygon, a: &Point, b: &Point) -> Result<PathCertificate> {
    let component = component_of_pair(poly, a, b)?;
    let sa = seen_edge(poly, a, 0)?;
    let sb = seen_edge(poly, b, 0)?;
    let mut stops = vec![Stop::Seen(sa.witness.clone())];
    if sa.edge != sb.edge {
        let (a0, a1) = poly.edge_endpoints(sa.edge);
        let (b0, b1) = poly.edge_endpoints(sb.edge);
        let (x, y) = [(a0, b0), (a0, b1), (a1, b0), (a1, b1)]
            .into_iter()
            .min_by_key(|&(x, y)| (cyclic_edge_distance(poly, x, y), x, y))
            .unwrap();
        stops.extend(shorter_arc(poly, x, y).vertices().into_iter().map(Stop::Vertex));
    }
    stops.push(Stop::Seen(sb.witness.clone()));
    let path = push_off_boundary(poly, a, &stops, b, component)?;
    PathCertificate { path, component, bound: naive_bound(poly.n()), case: PathCase::Naive }.checked(poly)
}

/// Pair of vertices, one from each set, closest along the boundary; ties go
/// to the smallest index pair.
pub fn min_visible_pair(poly: &SimplePolygon, from_a: &[usize], from_b: &[usize]) -> Option<(usize, usize, usize)> {
    let mut best: Option<(usize, usize, usize)> = None;
    for &i in from_a {
        for &j in from_b {
            let d = cyclic_edge_distance(poly, i, j);
            let better = match best {
                None => true,
                Some((bi, bj, bd)) => (d, i, j) < (bd, bi, bj),
            };
            if better {
                best = Some((i, j, d));
            }
        }
    }
    best
}

fn sees_both(poly: &SimplePolygon, a: &Point, c: &Point, b: &Point, component: Component) -> bool {
    c != a
        && c != b
        && Component::of(classify(poly, c)) == Some(component)
        && poly.open_segment_avoids(a, c)
        && poly.open_segment_avoids(c, b)
}

/// Where the rays `a + s u` and `b + t w` meet for positive `s`, `t`.
fn ray_meet(a: &Point, u: &Vector, b: &Point, w: &Vector) -> Option<Point> {
    let den = u.cross(w);
    if den.is_zero() {
        return None;
    }
    let ab = b - a;
    let s = &ab.cross(w) / &den;
    let t = &ab.cross(u) / &den;
    (s.sign() == Sign::Positive && t.sign() == Sign::Positive).then(|| a.offset(u, &s))
}

/// One direction inside every angular gap between vertex directions from `p`.
fn gap_directions(poly: &SimplePolygon, p: &Point) -> Vec<Vector> {
    let dirs = sorted_directions(poly.vertices().iter().map(|v| v - p).collect());
    let m = dirs.len();
    (0..m).map(|k| gap_midpoint(&dirs[k], &dirs[(k + 1) % m])).collect()
}

/// Heuristic search for a single waypoint seen from both ends: meets of rays
/// through angular gaps, then far points along each gap direction.
fn two_link_waypoint(poly: &SimplePolygon, a: &Point, b: &Point, component: Component) -> Option<Point> {
    let ga = gap_directions(poly, a);
    let gb = gap_directions(poly, b);
    for u in &ga {
        for w in &gb {
            if let Some(c) = ray_meet(a, u, b, w) {
                if sees_both(poly, a, &c, b, component) {
                    return Some(c);
                }
            }
        }
    }
    if component == Component::Exterior {
        let (lo, hi) = poly.bounding_box();
        let span = (&hi.x - &lo.x) + (&hi.y - &lo.y) + Scalar::one();
        for (p, q, dirs) in [(a, b, &ga), (b, a, &gb)] {
            for u in dirs {
                let mut lam = span.clone();
                for _ in 0..16 {
                    let c = p.offset(u, &lam);
                    if sees_both(poly, p, &c, q, component) {
                        return Some(c);
                    }
                    lam = &lam + &lam;
                }
            }
        }
    }
    None
}

/// Two-link route through a far point along a direction free for both.
fn far_common_waypoint(poly: &SimplePolygon, a: &Point, b: &Point, fa: &[FreeArc], fb: &[FreeArc]) -> Option<Point> {
    for x in fa {
        for y in fb {
            if let Some(u) = common_direction(x, y) {
                let mut lam = Scalar::one();
                for _ in 0..FAR_CAP {
                    let c = a.offset(&u, &lam);
                    if poly.open_segment_avoids(&c, b) {
                        return Some(c);
                    }
                    lam = &lam + &lam;
                }
            }
        }
    }
    None
}

/// Three-link route `a, a + λu, b + λw, b` with free, non-opposite `u`, `w`.
fn far_rays_path(poly: &SimplePolygon, a: &Point, b: &Point, fa: &[FreeArc], fb: &[FreeArc]) -> Option<Vec<Point>> {
    let x = fa.first()?;
    let y = fb.first()?;
    let u = x.witness.clone();
    let mut w = y.witness.clone();
    if u.cross(&w).is_zero() && u.dot(&w).sign() == Sign::Negative {
        w = gap_midpoint(&y.start, &w);
    }
    let mut lam = Scalar::one();
    for _ in 0..FAR_CAP {
        let c = a.offset(&u, &lam);
        let d = b.offset(&w, &lam);
        if c != d && poly.open_segment_avoids(&c, &d) {
            return Some(vec![a.clone(), c, d, b.clone()]);
        }
        lam = &lam + &lam;
    }
    None
}

/// Routes between two visible vertices closest along the boundary.
fn arc_route(poly: &SimplePolygon, a: &Point, b: &Point, component: Component) -> Result<Polyline> {
    let va = visible_vertices(poly, a);
    let vb = visible_vertices(poly, b);
    let (i, j, _) = min_visible_pair(poly, &va, &vb)
        .ok_or_else(|| Error::PreconditionViolated("an endpoint sees no vertex".into()))?;
    let stops: Vec<Stop> = shorter_arc(poly, i, j).vertices().into_iter().map(Stop::Vertex).collect();
    push_off_boundary(poly, a, &stops, b, component)
}

/// Connects `a` and `b` within ⌊n/2⌋ links inside or ⌈n/2⌉ outside.
pub fn connect(poly: &SimplePolygon, a: &Point, b: &Point) -> Result<PathCertificate> {
    let component = component_of_pair(poly, a, b)?;
    let n = poly.n();
    let bound = match component {
        Component::Interior => interior_bound(n),
        Component::Exterior => exterior_bound(n),
    };
    let cert = |path: Polyline, case: PathCase| PathCertificate { path, component, bound, case }.checked(poly);

    if poly.open_segment_avoids(a, b) {
        return cert(Polyline::new(vec![a.clone(), b.clone()])?, PathCase::Direct);
    }
    let va = visible_vertices(poly, a);
    let vb = visible_vertices(poly, b);
    if let Some(&v) = va.iter().find(|v| vb.contains(v)) {
        let path = push_off_boundary(poly, a, &[Stop::Vertex(v)], b, component)?;
        return cert(path, PathCase::CommonVertex);
    }

    let case = match component {
        Component::Interior => PathCase::BoundaryArc,
        Component::Exterior => {
            let fa = free_arcs(poly, a);
            let fb = free_arcs(poly, b);
            match (fa.is_empty(), fb.is_empty()) {
                (false, false) => {
                    let mid = far_common_waypoint(poly, a, b, &fa, &fb)
                        .or_else(|| two_link_waypoint(poly, a, b, component));
                    if let Some(c) = mid {
                        return cert(Polyline::new(vec![a.clone(), c, b.clone()])?, PathCase::FarRays);
                    }
                    let pts = far_rays_path(poly, a, b, &fa, &fb)
                        .ok_or(Error::HaltingCapExceeded("far rays"))?;
                    return cert(Polyline::new(pts)?, PathCase::FarRays);
                }
                (true, true) => PathCase::BoundaryArc,
                _ => PathCase::Mixed,
            }
        }
    };
    if let Some(c) = two_link_waypoint(poly, a, b, component) {
        return cert(Polyline::new(vec![a.clone(), c, b.clone()])?, case);
    }
    cert(arc_route(poly, a, b, component)?, case)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_geom::Scalar;

    fn square() -> SimplePolygon {
        SimplePolygon::from_int_coords(&[(0, 0), (1, 0), (1, 1), (0, 1)]).unwrap()
    }

    fn l_hexagon() -> SimplePolygon {
        SimplePolygon::from_int_coords(&[(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)]).unwrap()
    }

    fn q(xn: i64, xd: i64, yn: i64, yd: i64) -> Point {
        Point::from_ratios(xn, xd, yn, yd)
    }

    #[test]
    fn push_single_vertex_inside_square() {
        let sq = square();
        let a = q(1, 4, 1, 2);
        let b = q(1, 2, 3, 4);
        let line = push_off_boundary(&sq, &a, &[Stop::Vertex(2)], &b, Component::Interior).unwrap();
        assert_eq!(line.links(), 2);
        assert!(line.lies_in(&sq, Component::Interior));
        let mid = &line.points()[1];
        assert!(mid.x < Scalar::one() && mid.y < Scalar::one());
    }

    #[test]
    fn push_empty_walk_is_the_segment() {
        let sq = square();
        let line = push_off_boundary(&sq, &q(1, 4, 1, 4), &[], &q(3, 4, 3, 4), Component::Interior).unwrap();
        assert_eq!(line.points(), &[q(1, 4, 1, 4), q(3, 4, 3, 4)]);
    }

    #[test]
    fn push_outside_square() {
        let sq = square();
        let a = q(2, 1, 1, 2);
        let b = q(1, 2, -1, 1);
        let line = push_off_boundary(&sq, &a, &[Stop::Vertex(1)], &b, Component::Exterior).unwrap();
        assert_eq!(line.links(), 2);
        assert!(line.lies_in(&sq, Component::Exterior));
    }

    #[test]
    fn naive_examples() {
        let sq = square();
        let c = connect_naive(&sq, &q(1, 4, 1, 4), &q(3, 4, 3, 4)).unwrap();
        assert!(c.links() <= 5 && c.is_sound(&sq));
        let l = l_hexagon();
        let c = connect_naive(&l, &q(1, 2, 3, 2), &q(3, 2, 1, 2)).unwrap();
        assert!(c.links() <= 6 && c.is_sound(&l));
        assert_eq!(c.case, PathCase::Naive);
        assert_eq!(
            connect_naive(&sq, &q(1, 2, 1, 2), &Point::from_ints(3, 3)),
            Err(Error::ComponentMismatch)
        );
        assert_eq!(connect_naive(&sq, &q(1, 2, 0, 1), &q(1, 2, 1, 2)), Err(Error::OnBoundaryInput));
    }

    #[test]
    fn connect_convex_interior_is_direct() {
        let sq = square();
        let c = connect(&sq, &q(1, 10, 1, 10), &q(9, 10, 9, 10)).unwrap();
        assert_eq!((c.links(), c.case), (1, PathCase::Direct));
    }

    #[test]
    fn connect_square_exterior_two_links() {
        let sq = square();
        let c = connect(&sq, &q(-1, 1, 1, 2), &q(2, 1, 1, 2)).unwrap();
        assert_eq!(c.links(), 2);
        assert!(c.is_sound(&sq));
    }

    #[test]
    fn connect_dart_exterior_across_notch() {
        let dart = SimplePolygon::from_int_coords(&[(0, 0), (4, 2), (0, 4), (1, 2)]).unwrap();
        let a = q(1, 4, 2, 1);
        let b = q(5, 1, 2, 1);
        let c = connect(&dart, &a, &b).unwrap();
        assert!(c.links() == 2 && c.is_sound(&dart), "{c:?}");
    }

    #[test]
    fn connect_l_hexagon_interior() {
        let l = l_hexagon();
        let c = connect(&l, &q(1, 2, 7, 4), &q(7, 4, 1, 2)).unwrap();
        assert!(c.links() <= 3 && c.is_sound(&l));
        assert_eq!(c.links(), 2);
    }

    #[test]
    fn min_visible_pair_examples() {
        let sq = square();
        assert_eq!(min_visible_pair(&sq, &[0], &[2]), Some((0, 2, 2)));
        let l = l_hexagon();
        assert_eq!(min_visible_pair(&l, &[0, 3], &[1]), Some((0, 1, 1)));
        assert_eq!(min_visible_pair(&l, &[4, 2], &[2, 4]), Some((2, 2, 0)));
        assert_eq!(min_visible_pair(&l, &[], &[1]), None);
    }

    #[test]
    fn bounds() {
        assert_eq!((interior_bound(7), exterior_bound(7), naive_bound(7)), (3, 4, 6));
        assert_eq!((interior_bound(6), exterior_bound(6)), (3, 3));
    }
}
