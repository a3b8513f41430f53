//! Brute-force link distance on small instances.
//!
//! Bend points are drawn from the arrangement of lines through pairs of
//! polygon vertices and the endpoints: its vertices, a point in every sector
//! around each vertex, and the vertices pushed off the polygon. Visibility
//! between candidates is decided exactly; the distance is a breadth-first
//! search over that graph. One and two links are decided exactly, since
//! visibility from a fixed point is constant on the open faces; longer
//! answers are upper bounds that are exact whenever they are at most three.

use std::collections::HashSet;

use ethnum::I256;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact_geom::{Point, Scalar, Sign, Vector};
use crate::link_path::Polyline;
use crate::oracle_kernel::{arrangement_points, canonical_point, Cand, ClipBox, PolyKernel, Ring, H};
use crate::polygon_model::{wedge_directions, SimplePolygon};
use crate::raindrop::{classify, Component};
use crate::visibility::{free_arcs, FreeArc};

pub const DEFAULT_MAX_N: usize = 16;

#[derive(Debug, Clone)]
pub struct OracleConfig {
    /// Refuse polygons with more vertices than this.
    pub max_n: usize,
    /// Consecutive box doublings that must agree before an exterior answer
    /// above two links is reported.
    pub stable_doublings: usize,
    /// Upper limit on exterior box doublings.
    pub max_doublings: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { max_n: DEFAULT_MAX_N, stable_doublings: 2, max_doublings: 6 }
    }
}

/// How an answer was reached.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Stability {
    /// Exterior clip-box margins tried, in multiples of the instance extent.
    pub box_factors: Vec<u64>,
    /// Distance found at each box.
    pub distances: Vec<usize>,
    /// Whether the full sector-sample set was needed beyond one point per face.
    pub escalated: bool,
    /// Whether the answer is a two-link path bending outside every clip box.
    pub far_waypoint: bool,
    /// Candidate count of the last search.
    pub candidates: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub distance: usize,
    pub witness: Polyline,
    pub stability: Stability,
}

/// A position on the open half-turn of directions counterclockwise from `d`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Slope {
    Start,
    At(Scalar),
    End,
}

impl Slope {
    /// A slope strictly between `lo < hi`.
    fn between(lo: &Slope, hi: &Slope) -> Scalar {
        match (lo, hi) {
            (Slope::At(x), Slope::At(y)) => (x + y).half(),
            (Slope::At(x), _) => x + &Scalar::one(),
            (_, Slope::At(y)) => y - &Scalar::one(),
            _ => Scalar::zero(),
        }
    }
}

/// Direction with slope `t` in the frame of `d`: `-t d + perp(d)`.
fn slope_dir(d: &Vector, t: &Scalar) -> Vector {
    &d.scale(&-t) + &d.perp()
}

/// The open slope intervals of `arc` within the half-turn left of `d`.
fn slope_intervals(d: &Vector, arc: &FreeArc) -> Vec<(Slope, Slope)> {
    let mut cuts = vec![Slope::Start, Slope::End];
    for x in [&arc.start, &arc.end] {
        let side = d.cross(x);
        if side.sign() == Sign::Positive {
            cuts.push(Slope::At(-&(&d.dot(x) * &side.recip())));
        }
    }
    cuts.sort();
    cuts.dedup();
    cuts.windows(2)
        .filter(|w| arc.contains(&slope_dir(d, &Slope::between(&w[0], &w[1]))))
        .map(|w| (w[0].clone(), w[1].clone()))
        .collect()
}

/// A point joined to both `a` and `b` by free rays, found by meeting a free
/// ray of `a` with a free ray of `b` on the left of `b - a`. Two such rays
/// meet iff the direction from `a` turns less than the direction from `b`.
fn far_waypoint(poly: &SimplePolygon, a: &Point, b: &Point) -> Option<Point> {
    let d = b - a;
    let from_a: Vec<_> = free_arcs(poly, a).iter().flat_map(|arc| slope_intervals(&d, arc)).collect();
    let from_b: Vec<_> = free_arcs(poly, b).iter().flat_map(|arc| slope_intervals(&d, arc)).collect();
    for (alo, ahi) in &from_a {
        for (blo, bhi) in &from_b {
            if alo >= bhi {
                continue;
            }
            let tu = Slope::between(alo, ahi.min(bhi));
            let tw = Slope::between(blo.max(&Slope::At(tu.clone())), bhi);
            let (u, w) = (slope_dir(&d, &tu), slope_dir(&d, &tw));
            let lambda = &d.cross(&w) * &u.cross(&w).recip();
            let q = a.offset(&u, &lambda);
            if !poly.on_boundary(&q) && poly.open_segment_avoids(a, &q) && poly.open_segment_avoids(&q, b) {
                return Some(q);
            }
        }
    }
    None
}

/// Finite candidate set for bend points, all strictly inside the domain.
#[derive(Debug, Clone)]
pub struct CandidateField {
    pub domain: Component,
    pub points: Vec<Point>,
    /// Exterior clip box, as lower-left and upper-right corners.
    pub clip: Option<(Point, Point)>,
}

impl CandidateField {
    pub fn adjacent(&self, poly: &SimplePolygon, i: usize, j: usize) -> bool {
        i != j && poly.open_segment_avoids(&self.points[i], &self.points[j])
    }
}

/// Integer grid shared by the polygon and the extra points.
struct Grid {
    scale: BigInt,
}

impl Grid {
    fn new<'a>(pts: impl Iterator<Item = &'a Point>) -> Grid {
        let mut scale = BigInt::one();
        for p in pts {
            scale = scale.lcm(p.x.denom()).lcm(p.y.denom());
        }
        Grid { scale }
    }

    fn int_coords(&self, p: &Point) -> (BigInt, BigInt) {
        let f = |s: &Scalar| s.numer() * (&self.scale / s.denom());
        (f(&p.x), f(&p.y))
    }

    fn homogeneous<R: Ring>(&self, p: &Point) -> Option<H<R>> {
        let (xd, yd) = (p.x.denom(), p.y.denom());
        let x = p.x.numer() * &self.scale * yd;
        let y = p.y.numer() * &self.scale * xd;
        let w = xd * yd;
        canonical_point([R::from_big(&x)?, R::from_big(&y)?, R::from_big(&w)?])
    }

    fn point<R: Ring>(&self, h: &H<R>) -> Point {
        let w = h[2].to_big() * &self.scale;
        Point::new(
            Scalar::from(BigRational::new(h[0].to_big(), w.clone())),
            Scalar::from(BigRational::new(h[1].to_big(), w)),
        )
    }
}

/// Candidates for one search, split into the cheap and the escalated tier.
struct Field<R> {
    cands: Vec<Cand<R>>,
    /// Length of the prefix forming the cheap tier.
    first_tier: usize,
    clip: Option<ClipBox<R>>,
}

fn box_for(grid: &Grid, pts: &[&Point], factor: u64) -> (BigInt, BigInt, BigInt, BigInt) {
    let coords: Vec<(BigInt, BigInt)> = pts.iter().map(|p| grid.int_coords(p)).collect();
    let min_x = coords.iter().map(|c| &c.0).min().unwrap().clone();
    let max_x = coords.iter().map(|c| &c.0).max().unwrap().clone();
    let min_y = coords.iter().map(|c| &c.1).min().unwrap().clone();
    let max_y = coords.iter().map(|c| &c.1).max().unwrap().clone();
    let extent = (&max_x - &min_x).max(&max_y - &min_y).max(BigInt::one());
    let m = extent * BigInt::from(factor);
    (&min_x - &m, &min_y - &m, &max_x + &m, &max_y + &m)
}

fn build_field<R: Ring>(
    poly: &SimplePolygon,
    kernel: &PolyKernel<R>,
    grid: &Grid,
    fixed: &[Point],
    domain: Component,
    factor: u64,
) -> Option<Result<Field<R>>> {
    let mut all: Vec<&Point> = poly.vertices().iter().collect();
    all.extend(fixed.iter());
    let (x0, y0, x1, y1) = match domain {
        Component::Interior => box_for(grid, &poly.vertices().iter().collect::<Vec<_>>(), 0),
        Component::Exterior => box_for(grid, &all, factor),
    };
    let clip = ClipBox { lo: (R::from_big(&x0)?, R::from_big(&y0)?), hi: (R::from_big(&x1)?, R::from_big(&y1)?) };
    let extra_lines = match domain {
        Component::Interior => Vec::new(),
        Component::Exterior => clip.lines()?,
    };
    let mut base = Vec::with_capacity(all.len());
    for p in &all {
        base.push(grid.homogeneous::<R>(p)?);
    }
    let arr = arrangement_points(&base, &extra_lines, &clip)?;

    let mut seen_points: HashSet<H<R>> = HashSet::new();
    let mut cands: Vec<Cand<R>> = Vec::new();
    let want_inside = domain == Component::Interior;
    let mut admit = |h: H<R>, cands: &mut Vec<Cand<R>>, force: bool| -> Option<()> {
        let h = canonical_point(h)?;
        if seen_points.contains(&h) {
            return Some(());
        }
        let c = kernel.cand(h.clone())?;
        if !force {
            if domain == Component::Exterior && clip.locate(&h)? <= 0 {
                return Some(());
            }
            if kernel.on_boundary(&c)? || kernel.inside(&c)? != want_inside {
                return Some(());
            }
        }
        seen_points.insert(h);
        cands.push(c);
        Some(())
    };
    for p in fixed {
        admit(grid.homogeneous(p)?, &mut cands, true)?;
    }
    for i in 0..poly.n() {
        let w = match wedge_directions(poly, i) {
            Ok(w) => w,
            Err(e) => return Some(Err(e)),
        };
        let q = poly.vertex(i).offset(w.toward(want_inside), &w.epsilon);
        admit(grid.homogeneous(&q)?, &mut cands, false)?;
    }
    for v in arr.vertices {
        admit(v, &mut cands, false)?;
    }
    let mut faces: HashSet<Vec<u64>> = HashSet::new();
    let mut rest = Vec::new();
    for (h, key) in arr.samples {
        if faces.insert(key) {
            admit(h, &mut cands, false)?;
        } else {
            rest.push(h);
        }
    }
    let first_tier = cands.len();
    for h in rest {
        admit(h, &mut cands, false)?;
    }
    let clip = (domain == Component::Exterior).then_some(clip);
    Some(Ok(Field { cands, first_tier, clip }))
}

/// Bidirectional breadth-first search over the first `limit` candidates.
/// Returns the candidate indices of a shortest path from `s` to `t`.
fn search<R: Ring>(kernel: &PolyKernel<R>, cands: &[Cand<R>], limit: usize, s: usize, t: usize) -> Option<Option<Vec<usize>>> {
    const NONE: usize = usize::MAX;
    if kernel.sees(&cands[s], &cands[t])? {
        return Some(Some(vec![s, t]));
    }
    // side 0 grows from s, side 1 from t
    let mut dist = [vec![NONE; limit], vec![NONE; limit]];
    let mut parent = [vec![NONE; limit], vec![NONE; limit]];
    dist[0][s] = 0;
    dist[1][t] = 0;
    let mut frontier = [vec![s], vec![t]];
    loop {
        let side = if frontier[0].len() <= frontier[1].len() { 0 } else { 1 };
        let other = 1 - side;
        let mut next = Vec::new();
        for u in 0..limit {
            if dist[side][u] != NONE {
                continue;
            }
            for &f in &frontier[side] {
                if kernel.sees(&cands[f], &cands[u])? {
                    dist[side][u] = dist[side][f] + 1;
                    parent[side][u] = f;
                    next.push(u);
                    break;
                }
            }
        }
        if next.is_empty() {
            return Some(None);
        }
        let meet = next
            .iter()
            .filter(|&&u| dist[other][u] != NONE)
            .min_by_key(|&&u| (dist[side][u] + dist[other][u], u));
        if let Some(&u) = meet {
            let walk = |side: usize| {
                let mut v = vec![u];
                let mut x = u;
                while parent[side][x] != NONE {
                    x = parent[side][x];
                    v.push(x);
                }
                v
            };
            let mut path = walk(0);
            path.reverse();
            path.extend(walk(1).into_iter().skip(1));
            return Some(Some(path));
        }
        frontier[side] = next;
    }
}

struct Attempt {
    path: Option<Vec<Point>>,
    escalated: bool,
    candidates: usize,
}

fn attempt<R: Ring>(
    poly: &SimplePolygon,
    grid: &Grid,
    a: &Point,
    b: &Point,
    domain: Component,
    factor: u64,
) -> Option<Result<Attempt>> {
    let verts = poly
        .vertices()
        .iter()
        .map(|p| grid.homogeneous::<R>(p))
        .collect::<Option<Vec<_>>>()?;
    let kernel = PolyKernel::new(verts)?;
    let field = match build_field(poly, &kernel, grid, &[a.clone(), b.clone()], domain, factor)? {
        Ok(f) => f,
        Err(e) => return Some(Err(e)),
    };
    let mut path = search(&kernel, &field.cands, field.first_tier, 0, 1)?;
    let mut escalated = false;
    let mut candidates = field.first_tier;
    if path.as_ref().is_none_or(|p| p.len() > 4) && field.cands.len() > field.first_tier {
        escalated = true;
        candidates = field.cands.len();
        if let Some(p) = search(&kernel, &field.cands, field.cands.len(), 0, 1)? {
            if path.as_ref().is_none_or(|q| p.len() < q.len()) {
                path = Some(p);
            }
        }
    }
    let path = path.map(|p| p.iter().map(|&i| grid.point(&field.cands[i].h)).collect());
    Some(Ok(Attempt { path, escalated, candidates }))
}

fn max_bits(grid: &Grid, pts: &[&Point]) -> u64 {
    pts.iter()
        .map(|p| {
            let (x, y) = grid.int_coords(p);
            x.bits().max(y.bits())
        })
        .max()
        .unwrap_or(0)
}

fn run_attempt(poly: &SimplePolygon, grid: &Grid, a: &Point, b: &Point, domain: Component, factor: u64) -> Result<Attempt> {
    let mut pts: Vec<&Point> = poly.vertices().iter().collect();
    pts.push(a);
    pts.push(b);
    let bits = max_bits(grid, &pts);
    if bits < 24 {
        if let Some(r) = attempt::<i128>(poly, grid, a, b, domain, factor) {
            return r;
        }
    }
    if bits < 60 {
        if let Some(r) = attempt::<I256>(poly, grid, a, b, domain, factor) {
            return r;
        }
    }
    attempt::<BigInt>(poly, grid, a, b, domain, factor).expect("arbitrary precision cannot overflow")
}

fn check_inputs(poly: &SimplePolygon, pts: &[&Point], domain: Component, cfg: &OracleConfig) -> Result<()> {
    if poly.n() > cfg.max_n {
        return Err(Error::OracleTooLarge { n: poly.n(), max: cfg.max_n });
    }
    for p in pts {
        match Component::of(classify(poly, p)) {
            None => return Err(Error::OnBoundaryInput),
            Some(c) if c != domain => return Err(Error::ComponentMismatch),
            _ => {}
        }
    }
    Ok(())
}

pub fn link_distance(poly: &SimplePolygon, a: &Point, b: &Point, domain: Component) -> Result<OracleResult> {
    link_distance_with(poly, a, b, domain, &OracleConfig::default())
}

pub fn link_distance_with(
    poly: &SimplePolygon,
    a: &Point,
    b: &Point,
    domain: Component,
    cfg: &OracleConfig,
) -> Result<OracleResult> {
    check_inputs(poly, &[a, b], domain, cfg)?;
    if a == b {
        return Err(Error::PreconditionViolated("endpoints coincide".into()));
    }
    let grid = Grid::new(poly.vertices().iter().chain([a, b]));
    let mut stability = Stability::default();
    let mut best: Option<Vec<Point>> = None;
    let factors: Vec<u64> = match domain {
        Component::Interior => vec![0],
        Component::Exterior => (0..=cfg.max_doublings as u32).map(|k| 2u64 << k).collect(),
    };
    for factor in factors {
        let att = run_attempt(poly, &grid, a, b, domain, factor)?;
        stability.escalated |= att.escalated;
        stability.candidates = att.candidates;
        if domain == Component::Exterior {
            stability.box_factors.push(factor);
        }
        let d = att.path.as_ref().map_or(usize::MAX, |p| p.len() - 1);
        stability.distances.push(d);
        if let Some(p) = att.path {
            if best.as_ref().is_none_or(|q| p.len() < q.len()) {
                best = Some(p);
            }
        }
        if domain == Component::Interior || d <= 2 {
            // One and two links do not depend on the box.
            break;
        }
        let k = cfg.stable_doublings + 1;
        let h = &stability.distances;
        if h.len() >= k && h[h.len() - k..].iter().all(|&x| x == d) {
            break;
        }
    }
    if domain == Component::Exterior && best.as_ref().is_none_or(|p| p.len() > 3) {
        if let Some(q) = far_waypoint(poly, a, b).or_else(|| far_waypoint(poly, b, a)) {
            stability.far_waypoint = true;
            best = Some(vec![a.clone(), q, b.clone()]);
        }
    }
    let points = best.ok_or(Error::Unreachable)?;
    let witness = Polyline::new(points)?;
    if !witness.lies_in(poly, domain) {
        return Err(Error::VerificationFailed("oracle witness leaves the domain".into()));
    }
    Ok(OracleResult { distance: witness.links(), witness, stability })
}

/// Candidate field for the polygon with `extras` as fixed points.
pub fn build_candidates(poly: &SimplePolygon, extras: &[Point], domain: Component) -> Result<CandidateField> {
    let refs: Vec<&Point> = extras.iter().collect();
    check_inputs(poly, &refs, domain, &OracleConfig::default())?;
    let grid = Grid::new(poly.vertices().iter().chain(extras.iter()));
    let factor = 2;
    let field = build_field::<BigInt>(poly, &PolyKernel::new(vertices_h(poly, &grid)).unwrap(), &grid, extras, domain, factor)
        .expect("arbitrary precision cannot overflow")?;
    let clip = field.clip.as_ref().map(|c| {
        let p = |x: &BigInt, y: &BigInt| grid.point::<BigInt>(&[x.clone(), y.clone(), BigInt::one()]);
        (p(&c.lo.0, &c.lo.1), p(&c.hi.0, &c.hi.1))
    });
    Ok(CandidateField { domain, points: field.cands.iter().map(|c| grid.point(&c.h)).collect(), clip })
}

fn vertices_h(poly: &SimplePolygon, grid: &Grid) -> Vec<H<BigInt>> {
    poly.vertices().iter().map(|p| grid.homogeneous(p).unwrap()).collect()
}

/// A sampled lower bound on the polygonal diameter of a component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoldiamSample {
    pub lower_bound: usize,
    pub a: Point,
    pub b: Point,
    pub witness: Polyline,
    pub pairs: usize,
}

fn random_point(rng: &mut ChaCha8Rng, poly: &SimplePolygon, domain: Component) -> Point {
    let (lo, hi) = poly.bounding_box();
    let (w, h) = (&hi.x - &lo.x, &hi.y - &lo.y);
    let spread = match domain {
        Component::Interior => Scalar::zero(),
        Component::Exterior => w.clone().max(h.clone()),
    };
    loop {
        let mut coord = |lo: &Scalar, len: &Scalar| {
            let t = Scalar::ratio(rng.gen_range(0..=1024), 1024);
            lo - &spread + &t * &(len + &(&spread + &spread))
        };
        let p = Point::new(coord(&lo.x, &w), coord(&lo.y, &h));
        if Component::of(classify(poly, &p)) == Some(domain) {
            return p;
        }
    }
}

/// Largest oracle distance over `budget` seeded pairs, each endpoint drawn
/// either from the candidate field or uniformly on a dyadic grid.
pub fn poldiam_sampled(poly: &SimplePolygon, domain: Component, budget: usize, seed: u64) -> Result<PoldiamSample> {
    if budget == 0 {
        return Err(Error::PreconditionViolated("budget must be positive".into()));
    }
    let pool = build_candidates(poly, &[], domain)?.points;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<PoldiamSample> = None;
    let mut pairs = 0;
    while pairs < budget {
        let draw = |rng: &mut ChaCha8Rng| {
            if rng.gen_bool(0.5) && !pool.is_empty() {
                pool[rng.gen_range(0..pool.len())].clone()
            } else {
                random_point(rng, poly, domain)
            }
        };
        let a = draw(&mut rng);
        let b = draw(&mut rng);
        if a == b {
            continue;
        }
        pairs += 1;
        let r = link_distance(poly, &a, &b, domain)?;
        if best.as_ref().is_none_or(|s| r.distance > s.lower_bound) {
            best = Some(PoldiamSample { lower_bound: r.distance, a, b, witness: r.witness, pairs });
        }
    }
    let mut out = best.unwrap();
    out.pairs = pairs;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

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
    fn square_interior_is_one() {
        let r = link_distance(&square(), &q(1, 10, 1, 10), &q(9, 10, 4, 5), Component::Interior).unwrap();
        assert_eq!(r.distance, 1);
    }

    #[test]
    fn square_exterior_across_is_two() {
        let sq = square();
        let r = link_distance(&sq, &q(-1, 1, 1, 2), &q(2, 1, 1, 2), Component::Exterior).unwrap();
        assert_eq!(r.distance, 2);
        assert!(r.witness.lies_in(&sq, Component::Exterior));
    }

    #[test]
    fn l_hexagon_interior_is_two() {
        let l = l_hexagon();
        let a = q(1, 2, 7, 4);
        let b = q(7, 4, 1, 2);
        assert!(!l.open_segment_avoids(&a, &b));
        let r = link_distance(&l, &a, &b, Component::Interior).unwrap();
        assert_eq!(r.distance, 2);
    }

    #[test]
    fn rejects_wrong_domain_and_large_n() {
        let sq = square();
        assert_eq!(
            link_distance(&sq, &q(1, 2, 1, 2), &q(3, 1, 1, 2), Component::Interior).unwrap_err(),
            Error::ComponentMismatch
        );
        let cfg = OracleConfig { max_n: 3, ..OracleConfig::default() };
        assert!(matches!(
            link_distance_with(&sq, &q(1, 4, 1, 4), &q(1, 2, 1, 2), Component::Interior, &cfg),
            Err(Error::OracleTooLarge { n: 4, max: 3 })
        ));
    }

    #[test]
    fn candidates_lie_in_domain() {
        let sq = square();
        let f = build_candidates(&sq, &[q(1, 2, 1, 2)], Component::Interior).unwrap();
        assert_eq!(f.points[0], q(1, 2, 1, 2));
        assert!(f.points.iter().all(|p| classify(&sq, p).is_interior()));
        // The pushed unit-square corners all land on the center.
        assert!(f.points.len() > 4);
        let f = build_candidates(&sq, &[], Component::Exterior).unwrap();
        let (lo, hi) = f.clip.clone().unwrap();
        assert!(f.points.iter().all(|p| {
            !classify(&sq, p).is_interior() && !classify(&sq, p).is_boundary() && p.x > lo.x && p.x < hi.x && p.y > lo.y && p.y < hi.y
        }));
        let tri = SimplePolygon::from_int_coords(&[(0, 0), (4, 0), (0, 4)]).unwrap();
        let f = build_candidates(&tri, &[], Component::Interior).unwrap();
        assert!(f.points.len() >= 3);
    }

    #[test]
    fn poldiam_of_square() {
        let sq = square();
        assert_eq!(poldiam_sampled(&sq, Component::Interior, 8, 0).unwrap().lower_bound, 1);
        assert_eq!(poldiam_sampled(&sq, Component::Exterior, 12, 0).unwrap().lower_bound, 2);
    }

    #[test]
    fn two_links_bending_beyond_every_box() {
        // The only common waypoints lie hundreds of extents away.
        let poly = SimplePolygon::validate(vec![
            q(21, 4, 9, 2),
            q(7, 4, 13, 2),
            q(1, 1, 25, 4),
            q(1, 4, 13, 2),
            q(1, 2, 4, 1),
            q(5, 4, 15, 4),
            q(5, 1, 3, 1),
            q(19, 4, 4, 1),
            q(15, 4, 19, 4),
        ])
        .unwrap();
        let (a, b) = (q(4967, 1024, 7583, 2048), q(49, 512, 11873, 2048));
        let r = link_distance(&poly, &a, &b, Component::Exterior).unwrap();
        assert_eq!(r.distance, 2);
        assert!(r.stability.far_waypoint);
        assert_eq!(r.stability.distances.last(), Some(&3));
        assert!(r.witness.lies_in(&poly, Component::Exterior));
        let back = link_distance(&poly, &b, &a, Component::Exterior).unwrap();
        assert_eq!(back.distance, 2);
    }
}
