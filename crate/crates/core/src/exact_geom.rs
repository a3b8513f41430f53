//! Exact rational geometry kernel.
//!
//! Every coordinate is a [`Scalar`], an arbitrary-precision rational kept in
//! canonical form. Predicates never round, so side-of-line and intersection
//! answers are decided exactly.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Exact rational number.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Scalar(BigRational);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse `{input}` as an exact scalar")]
pub struct ParseScalarError {
    pub input: String,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num / den`; panics when `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_big(num: BigInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Scalar(BigRational::new(num, den))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn sign(&self) -> Sign {
        if self.0.is_positive() {
            Sign::Positive
        } else if self.0.is_negative() {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }

    pub fn abs(&self) -> Self {
        Scalar(self.0.abs())
    }

    pub fn half(&self) -> Self {
        Scalar(&self.0 / BigRational::from_integer(BigInt::from(2)))
    }

    pub fn recip(&self) -> Self {
        Scalar(self.0.recip())
    }

    /// Display-only conversion.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn min(self, other: Self) -> Self {
        std::cmp::min(self, other)
    }

    pub fn max(self, other: Self) -> Self {
        std::cmp::max(self, other)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Scalar {
    type Err = ParseScalarError;

    /// Accepts `p`, `p/q` and finite decimals such as `-0.125`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseScalarError { input: s.to_string() };
        let t = s.trim();
        if t.is_empty() {
            return Err(err());
        }
        if let Some((p, q)) = t.split_once('/') {
            let p: BigInt = parse_int(p).ok_or_else(err)?;
            let q: BigInt = parse_int(q).ok_or_else(err)?;
            if q.is_zero() {
                return Err(err());
            }
            return Ok(Scalar(BigRational::new(p, q)));
        }
        let (neg, body) = match t.as_bytes()[0] {
            b'-' => (true, &t[1..]),
            b'+' => (false, &t[1..]),
            _ => (false, t),
        };
        let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(err());
        }
        let digits_ok = |d: &str| d.bytes().all(|c| c.is_ascii_digit());
        if !digits_ok(int_part) || !digits_ok(frac_part) {
            return Err(err());
        }
        let mut digits = String::with_capacity(int_part.len() + frac_part.len());
        digits.push_str(int_part);
        digits.push_str(frac_part);
        let mut num: BigInt = digits.parse().map_err(|_| err())?;
        if neg {
            num = -num;
        }
        let den = num_traits::pow(BigInt::from(10), frac_part.len());
        Ok(Scalar(BigRational::new(num, den)))
    }
}

fn parse_int(s: &str) -> Option<BigInt> {
    let s = s.trim();
    let body = s.strip_prefix(['-', '+']).unwrap_or(s);
    if body.is_empty() || !body.bytes().all(|c| c.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

macro_rules! scalar_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                Scalar((self.0).$m(rhs.0))
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                Scalar((self.0).$m(&rhs.0))
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                Scalar((&self.0).$m(rhs.0))
            }
        }
        impl<'a, 'b> $tr<&'b Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'b Scalar) -> Scalar {
                Scalar((&self.0).$m(&rhs.0))
            }
        }
    };
}

scalar_binop!(Add, add);
scalar_binop!(Sub, sub);
scalar_binop!(Mul, mul);
scalar_binop!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar(r)
    }
}

/// Sign of an exact quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Scalar,
    pub y: Scalar,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Vector {
    pub dx: Scalar,
    pub dy: Scalar,
}

impl Point {
    pub fn new(x: Scalar, y: Scalar) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(Scalar::from_int(x), Scalar::from_int(y))
    }

    /// `(xn/xd, yn/yd)`.
    pub fn from_ratios(xn: i64, xd: i64, yn: i64, yd: i64) -> Self {
        Point::new(Scalar::ratio(xn, xd), Scalar::ratio(yn, yd))
    }

    pub fn offset(&self, v: &Vector, t: &Scalar) -> Point {
        Point::new(&self.x + &(&v.dx * t), &self.y + &(&v.dy * t))
    }

    pub fn midpoint(&self, other: &Point) -> Point {
        Point::new((&self.x + &other.x).half(), (&self.y + &other.y).half())
    }

    /// `(1 - t) * self + t * other`.
    pub fn lerp(&self, other: &Point, t: &Scalar) -> Point {
        self.offset(&(other - self), t)
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.x, self.y)
    }
}

impl Vector {
    pub fn new(dx: Scalar, dy: Scalar) -> Self {
        Vector { dx, dy }
    }

    pub fn from_ints(dx: i64, dy: i64) -> Self {
        Vector::new(Scalar::from_int(dx), Scalar::from_int(dy))
    }

    pub fn is_zero(&self) -> bool {
        self.dx.is_zero() && self.dy.is_zero()
    }

    pub fn cross(&self, other: &Vector) -> Scalar {
        &self.dx * &other.dy - &self.dy * &other.dx
    }

    pub fn dot(&self, other: &Vector) -> Scalar {
        &self.dx * &other.dx + &self.dy * &other.dy
    }

    pub fn norm2(&self) -> Scalar {
        self.dot(self)
    }

    /// Counterclockwise quarter turn.
    pub fn perp(&self) -> Vector {
        Vector::new(-&self.dy, self.dx.clone())
    }

    pub fn scale(&self, t: &Scalar) -> Vector {
        Vector::new(&self.dx * t, &self.dy * t)
    }

    /// Rotation by the rational tangent `t`: `(dx - t dy, dy + t dx)`.
    /// The angle turned is `atan(t)`, counterclockwise for `t > 0`.
    pub fn rotate_by_tangent(&self, t: &Scalar) -> Vector {
        Vector::new(&self.dx - &(t * &self.dy), &self.dy + &(t * &self.dx))
    }

    /// Angular half-plane: 0 for directions in `[0, pi)`, 1 for `[pi, 2 pi)`.
    fn half(&self) -> u8 {
        match self.dy.sign() {
            Sign::Positive => 0,
            Sign::Negative => 1,
            Sign::Zero => {
                if self.dx.sign() == Sign::Negative {
                    1
                } else {
                    0
                }
            }
        }
    }

    /// Compares polar angles in `[0, 2 pi)`, measured from the positive x axis.
    /// Both vectors must be nonzero.
    pub fn angle_cmp(&self, other: &Vector) -> Ordering {
        let (ha, hb) = (self.half(), other.half());
        if ha != hb {
            return ha.cmp(&hb);
        }
        match self.cross(other).sign() {
            Sign::Positive => Ordering::Less,
            Sign::Negative => Ordering::Greater,
            Sign::Zero => Ordering::Equal,
        }
    }

    /// True when both vectors point the same way (positive multiples).
    pub fn same_direction(&self, other: &Vector) -> bool {
        self.cross(other).is_zero() && self.dot(other).sign() == Sign::Positive
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}, {}>", self.dx, self.dy)
    }
}

impl Sub<&Point> for &Point {
    type Output = Vector;
    fn sub(self, rhs: &Point) -> Vector {
        Vector::new(&self.x - &rhs.x, &self.y - &rhs.y)
    }
}

impl Add<&Vector> for &Point {
    type Output = Point;
    fn add(self, rhs: &Vector) -> Point {
        Point::new(&self.x + &rhs.dx, &self.y + &rhs.dy)
    }
}

impl Add<&Vector> for &Vector {
    type Output = Vector;
    fn add(self, rhs: &Vector) -> Vector {
        Vector::new(&self.dx + &rhs.dx, &self.dy + &rhs.dy)
    }
}

impl Neg for &Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        Vector::new(-&self.dx, -&self.dy)
    }
}

/// Closed segment with distinct endpoints.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    /// Panics if `a == b`.
    pub fn new(a: Point, b: Point) -> Self {
        assert!(a != b, "degenerate segment at {a:?}");
        Segment { a, b }
    }

    pub fn try_new(a: Point, b: Point) -> Option<Self> {
        (a != b).then_some(Segment { a, b })
    }

    pub fn direction(&self) -> Vector {
        &self.b - &self.a
    }
}

impl fmt::Debug for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}, {:?}]", self.a, self.b)
    }
}

/// Sign of `(b - a) x (c - a)`: positive for a counterclockwise turn.
pub fn orient(a: &Point, b: &Point, c: &Point) -> Sign {
    let lhs = (&b.x - &a.x) * (&c.y - &a.y);
    let rhs = (&b.y - &a.y) * (&c.x - &a.x);
    match lhs.cmp(&rhs) {
        Ordering::Greater => Sign::Positive,
        Ordering::Less => Sign::Negative,
        Ordering::Equal => Sign::Zero,
    }
}

/// Assumes `p` is collinear with `s`; tests the bounding box.
fn within_box(p: &Point, s: &Segment) -> bool {
    let (xlo, xhi) = if s.a.x <= s.b.x { (&s.a.x, &s.b.x) } else { (&s.b.x, &s.a.x) };
    let (ylo, yhi) = if s.a.y <= s.b.y { (&s.a.y, &s.b.y) } else { (&s.b.y, &s.a.y) };
    xlo <= &p.x && &p.x <= xhi && ylo <= &p.y && &p.y <= yhi
}

pub fn point_on_segment(p: &Point, s: &Segment) -> bool {
    orient(&s.a, &s.b, p) == Sign::Zero && within_box(p, s)
}

/// True when `p` lies on `s` but is not one of its endpoints.
pub fn point_in_segment_relint(p: &Point, s: &Segment) -> bool {
    p != &s.a && p != &s.b && point_on_segment(p, s)
}

/// Exact description of the intersection of two closed segments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Relation {
    Disjoint,
    /// A single point interior to both segments.
    ProperCross(Point),
    /// A single point that is an endpoint of at least one segment.
    Touch(Point),
    /// A shared sub-segment of positive length, given by its endpoints
    /// in lexicographic order.
    Overlap(Point, Point),
}

impl Relation {
    pub fn is_disjoint(&self) -> bool {
        matches!(self, Relation::Disjoint)
    }
}

/// Intersection point of the supporting lines of two non-parallel segments.
fn line_intersection(s: &Segment, t: &Segment) -> Point {
    let r = s.direction();
    let q = t.direction();
    let denom = r.cross(&q);
    let lam = (&t.a - &s.a).cross(&q) / denom;
    s.a.offset(&r, &lam)
}

pub fn segment_relation(s: &Segment, t: &Segment) -> Relation {
    let d1 = orient(&s.a, &s.b, &t.a);
    let d2 = orient(&s.a, &s.b, &t.b);
    let d3 = orient(&t.a, &t.b, &s.a);
    let d4 = orient(&t.a, &t.b, &s.b);

    if d1 == Sign::Zero && d2 == Sign::Zero {
        // Collinear: intersect the parameter ranges along the common line.
        let mut pts: Vec<&Point> = Vec::with_capacity(4);
        for p in [&t.a, &t.b] {
            if within_box(p, s) {
                pts.push(p);
            }
        }
        for p in [&s.a, &s.b] {
            if within_box(p, t) {
                pts.push(p);
            }
        }
        pts.sort();
        pts.dedup();
        return match pts.len() {
            0 => Relation::Disjoint,
            1 => Relation::Touch(pts[0].clone()),
            _ => Relation::Overlap(pts[0].clone(), pts[pts.len() - 1].clone()),
        };
    }

    if d1 != Sign::Zero && d1 == d2 || d3 != Sign::Zero && d3 == d4 {
        return Relation::Disjoint;
    }

    if d1 == Sign::Zero {
        return Relation::Touch(t.a.clone());
    }
    if d2 == Sign::Zero {
        return Relation::Touch(t.b.clone());
    }
    if d3 == Sign::Zero {
        return Relation::Touch(s.a.clone());
    }
    if d4 == Sign::Zero {
        return Relation::Touch(s.b.clone());
    }
    Relation::ProperCross(line_intersection(s, t))
}

/// True when the closed segments share at least one point.
pub fn segments_intersect(s: &Segment, t: &Segment) -> bool {
    let d1 = orient(&s.a, &s.b, &t.a);
    let d2 = orient(&s.a, &s.b, &t.b);
    if d1 != Sign::Zero && d1 == d2 {
        return false;
    }
    let d3 = orient(&t.a, &t.b, &s.a);
    let d4 = orient(&t.a, &t.b, &s.b);
    if d3 != Sign::Zero && d3 == d4 {
        return false;
    }
    if d1 == Sign::Zero && d2 == Sign::Zero {
        return within_box(&t.a, s) || within_box(&t.b, s) || within_box(&s.a, t) || within_box(&s.b, t);
    }
    true
}

/// First point of `s` on the ray `origin + lambda * dir`, `lambda >= 0`.
pub fn ray_segment_hit(origin: &Point, dir: &Vector, s: &Segment) -> Option<(Scalar, Point)> {
    assert!(!dir.is_zero(), "ray direction must be nonzero");
    let e = s.direction();
    let w = &s.a - origin;
    let denom = dir.cross(&e);
    if !denom.is_zero() {
        let lam = w.cross(&e) / &denom;
        let mu = w.cross(dir) / &denom;
        if lam.sign() == Sign::Negative || mu.sign() == Sign::Negative || mu > Scalar::one() {
            return None;
        }
        let hit = origin.offset(dir, &lam);
        return Some((lam, hit));
    }
    if !w.cross(dir).is_zero() {
        return None;
    }
    let dd = dir.norm2();
    let la = w.dot(dir) / &dd;
    let lb = (&s.b - origin).dot(dir) / &dd;
    let (lo, hi) = if la <= lb { (la, lb) } else { (lb, la) };
    if hi.sign() == Sign::Negative {
        return None;
    }
    let lam = if lo.sign() == Sign::Negative { Scalar::zero() } else { lo };
    let hit = origin.offset(dir, &lam);
    Some((lam, hit))
}
