//! Integer homogeneous-coordinate kernel behind the link-distance oracle.
//!
//! All input points are scaled onto a common integer grid. Every quantity is
//! computed in a ring with overflow checks: 128- and 256-bit runs are tried
//! first and any overflow aborts them so the caller can redo the work in a
//! wider ring, `BigInt` last.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;

use ethnum::I256;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

pub(crate) trait Ring: Clone + Eq + Hash + Debug {
    fn from_big(v: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    fn small(v: i64) -> Self;
    fn add(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    fn signum(&self) -> i8;
    /// Gcd of absolute values.
    fn gcd(&self, o: &Self) -> Self;
    fn div_exact(&self, o: &Self) -> Self;
    /// Bit length of the absolute value.
    fn bits(&self) -> u64;
    /// `self * 2^k`.
    fn shl(&self, k: u32) -> Option<Self>;

    fn is_zero(&self) -> bool {
        self.signum() == 0
    }
}

impl Ring for I256 {
    fn from_big(v: &BigInt) -> Option<Self> {
        let bytes = v.to_signed_bytes_le();
        if bytes.len() > 32 {
            return None;
        }
        let fill = if v.is_negative() { 0xff } else { 0 };
        let mut buf = [fill; 32];
        buf[..bytes.len()].copy_from_slice(&bytes);
        Some(I256::from_le_bytes(buf))
    }

    fn to_big(&self) -> BigInt {
        BigInt::from_signed_bytes_le(&self.to_le_bytes())
    }

    fn small(v: i64) -> Self {
        I256::from(v)
    }

    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }

    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }

    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }

    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }

    fn signum(&self) -> i8 {
        I256::signum128(*self) as i8
    }

    fn gcd(&self, o: &Self) -> Self {
        let (mut x, mut y) = (self.wrapping_abs(), o.wrapping_abs());
        while y != I256::ZERO {
            let r = x % y;
            x = y;
            y = r;
        }
        x
    }

    fn div_exact(&self, o: &Self) -> Self {
        *self / *o
    }

    fn bits(&self) -> u64 {
        (256 - self.unsigned_abs().leading_zeros()) as u64
    }

    fn shl(&self, k: u32) -> Option<Self> {
        if k >= 254 {
            return if self.is_zero() { Some(*self) } else { None };
        }
        self.checked_mul(I256::ONE << k)
    }
}

impl Ring for i128 {
    fn from_big(v: &BigInt) -> Option<Self> {
        num_traits::ToPrimitive::to_i128(v)
    }

    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }

    fn small(v: i64) -> Self {
        v as i128
    }

    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }

    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }

    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }

    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }

    fn signum(&self) -> i8 {
        i128::signum(*self) as i8
    }

    fn gcd(&self, o: &Self) -> Self {
        let (mut x, mut y) = (self.unsigned_abs(), o.unsigned_abs());
        while y != 0 {
            let r = x % y;
            x = y;
            y = r;
        }
        x as i128
    }

    fn div_exact(&self, o: &Self) -> Self {
        *self / *o
    }

    fn bits(&self) -> u64 {
        (128 - self.unsigned_abs().leading_zeros()) as u64
    }

    fn shl(&self, k: u32) -> Option<Self> {
        if k >= 126 {
            return if *self == 0 { Some(0) } else { None };
        }
        self.checked_mul(1i128 << k)
    }
}

impl Ring for BigInt {
    fn from_big(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }

    fn to_big(&self) -> BigInt {
        self.clone()
    }

    fn small(v: i64) -> Self {
        BigInt::from(v)
    }

    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }

    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }

    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }

    fn neg(&self) -> Option<Self> {
        Some(-self)
    }

    fn signum(&self) -> i8 {
        match self.sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        }
    }

    fn gcd(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }

    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }

    fn bits(&self) -> u64 {
        self.magnitude().bits()
    }

    fn shl(&self, k: u32) -> Option<Self> {
        Some(self << k as usize)
    }
}

/// Homogeneous point `(x, y, w)` with `w > 0`, or a line `a x + b y + c w = 0`.
pub(crate) type H<R> = [R; 3];

pub(crate) fn cross<R: Ring>(p: &H<R>, q: &H<R>) -> Option<H<R>> {
    Some([
        p[1].mul(&q[2])?.sub(&p[2].mul(&q[1])?)?,
        p[2].mul(&q[0])?.sub(&p[0].mul(&q[2])?)?,
        p[0].mul(&q[1])?.sub(&p[1].mul(&q[0])?)?,
    ])
}

pub(crate) fn dot<R: Ring>(l: &H<R>, p: &H<R>) -> Option<R> {
    l[0].mul(&p[0])?.add(&l[1].mul(&p[1])?)?.add(&l[2].mul(&p[2])?)
}

fn reduce<R: Ring>(v: H<R>) -> H<R> {
    let g = v[0].gcd(&v[1]).gcd(&v[2]);
    if g.is_zero() || g == R::small(1) {
        return v;
    }
    [v[0].div_exact(&g), v[1].div_exact(&g), v[2].div_exact(&g)]
}

fn negate<R: Ring>(v: &H<R>) -> Option<H<R>> {
    Some([v[0].neg()?, v[1].neg()?, v[2].neg()?])
}

/// Canonical form of a point: `w > 0` and coprime entries.
pub(crate) fn canonical_point<R: Ring>(v: H<R>) -> Option<H<R>> {
    let v = if v[2].signum() < 0 { negate(&v)? } else { v };
    Some(reduce(v))
}

/// Canonical form of a line: coprime, first nonzero of `a, b` positive.
pub(crate) fn canonical_line<R: Ring>(v: H<R>) -> Option<H<R>> {
    let lead = if v[0].is_zero() { v[1].signum() } else { v[0].signum() };
    let v = if lead < 0 { negate(&v)? } else { v };
    Some(reduce(v))
}

/// Counterclockwise angle order of integer direction vectors.
fn angle_cmp<R: Ring>(u: &(R, R), v: &(R, R)) -> Ordering {
    let half = |d: &(R, R)| d.1.signum() < 0 || (d.1.is_zero() && d.0.signum() < 0);
    match (half(u), half(v)) {
        (false, true) => Ordering::Less,
        (true, false) => Ordering::Greater,
        _ => {
            let c = u.0.mul(&v.1).unwrap().sub(&u.1.mul(&v.0).unwrap()).unwrap();
            0.cmp(&c.signum())
        }
    }
}

/// A candidate point with its side of every edge line.
#[derive(Debug, Clone)]
pub(crate) struct Cand<R> {
    pub h: H<R>,
    pub sides: Vec<i8>,
}

/// Polygon with integer vertices (`w = 1`).
pub(crate) struct PolyKernel<R> {
    verts: Vec<H<R>>,
    edges: Vec<H<R>>,
}

impl<R: Ring> PolyKernel<R> {
    pub fn new(verts: Vec<H<R>>) -> Option<Self> {
        let n = verts.len();
        let edges = (0..n)
            .map(|i| cross(&verts[i], &verts[(i + 1) % n]))
            .collect::<Option<Vec<_>>>()?;
        Some(PolyKernel { verts, edges })
    }

    pub fn cand(&self, h: H<R>) -> Option<Cand<R>> {
        let sides = self
            .edges
            .iter()
            .map(|e| dot(e, &h).map(|d| d.signum()))
            .collect::<Option<Vec<_>>>()?;
        Some(Cand { h, sides })
    }

    /// Whether `c` lies on an edge.
    pub fn on_boundary(&self, c: &Cand<R>) -> Option<bool> {
        let n = self.verts.len();
        for i in 0..n {
            if c.sides[i] != 0 {
                continue;
            }
            let (p, q) = (&self.verts[i], &self.verts[(i + 1) % n]);
            let mut inside = true;
            for k in 0..2 {
                let lo = p[k].mul(&c.h[2])?.sub(&c.h[k])?.signum();
                let hi = q[k].mul(&c.h[2])?.sub(&c.h[k])?.signum();
                if lo * hi > 0 {
                    inside = false;
                }
            }
            if inside {
                return Some(true);
            }
        }
        Some(false)
    }

    /// Crossing-number parity along a horizontal ray, for `c` off the polygon.
    pub fn inside(&self, c: &Cand<R>) -> Option<bool> {
        let n = self.verts.len();
        let mut odd = false;
        let above = |p: &H<R>| -> Option<bool> { Some(p[1].mul(&c.h[2])?.sub(&c.h[1])?.signum() > 0) };
        for i in 0..n {
            let (p, q) = (&self.verts[i], &self.verts[(i + 1) % n]);
            let (pa, qa) = (above(p)?, above(q)?);
            if pa == qa {
                continue;
            }
            // Upward edge: crossing lies right of c iff c is left of it.
            let s = c.sides[i];
            if (qa && s > 0) || (pa && s < 0) {
                odd = !odd;
            }
        }
        Some(odd)
    }

    /// Whether the open segment `]c, d[` misses the polygon, for `c`, `d` off it.
    pub fn sees(&self, c: &Cand<R>, d: &Cand<R>) -> Option<bool> {
        let n = self.verts.len();
        if c.sides.iter().zip(&d.sides).all(|(x, y)| x * y > 0) {
            return Some(true);
        }
        let line = cross(&c.h, &d.h)?;
        let mut memo: Vec<Option<i8>> = vec![None; n];
        let mut vside = |k: usize| -> Option<i8> {
            if let Some(s) = memo[k] {
                return Some(s);
            }
            let s = dot(&line, &self.verts[k])?.signum();
            memo[k] = Some(s);
            Some(s)
        };
        for i in 0..n {
            let (sc, sd) = (c.sides[i], d.sides[i]);
            if sc * sd > 0 || (sc == 0) != (sd == 0) {
                continue;
            }
            let j = (i + 1) % n;
            if sc == 0 {
                if self.strictly_between(&self.verts[i], c, d)? || self.strictly_between(&self.verts[j], c, d)? {
                    return Some(false);
                }
                continue;
            }
            if vside(i)? * vside(j)? <= 0 {
                return Some(false);
            }
        }
        Some(true)
    }

    /// For `p` on the line through `c`, `d`: whether it lies strictly between.
    fn strictly_between(&self, p: &H<R>, c: &Cand<R>, d: &Cand<R>) -> Option<bool> {
        let toward = |from: &H<R>, to: &H<R>| -> Option<i8> {
            // sign of (p - from) . (to - from), all scaled by positive weights
            let mut acc = R::small(0);
            for k in 0..2 {
                let pf = p[k].mul(&from[2])?.sub(&from[k].mul(&p[2])?)?;
                let tf = to[k].mul(&from[2])?.sub(&from[k].mul(&to[2])?)?;
                acc = acc.add(&pf.mul(&tf)?)?;
            }
            Some(acc.signum())
        };
        Some(toward(&c.h, &d.h)? > 0 && toward(&d.h, &c.h)? > 0)
    }
}

/// Axis-parallel clip box `[x0, x1] x [y0, y1]` on the integer grid.
#[derive(Debug, Clone)]
pub(crate) struct ClipBox<R> {
    pub lo: (R, R),
    pub hi: (R, R),
}

impl<R: Ring> ClipBox<R> {
    /// `Some(0)` on the boundary, `Some(1)` strictly inside, `Some(-1)` outside.
    pub fn locate(&self, h: &H<R>) -> Option<i8> {
        let mut worst = 1;
        for (k, lo, hi) in [(0, &self.lo.0, &self.hi.0), (1, &self.lo.1, &self.hi.1)] {
            let a = h[k].sub(&lo.mul(&h[2])?)?.signum();
            let b = hi.mul(&h[2])?.sub(&h[k])?.signum();
            worst = worst.min(a).min(b);
        }
        Some(worst)
    }

    pub fn lines(&self) -> Option<Vec<H<R>>> {
        let (one, zero) = (R::small(1), R::small(0));
        Some(vec![
            [one.clone(), zero.clone(), self.lo.0.neg()?],
            [one.clone(), zero.clone(), self.hi.0.neg()?],
            [zero.clone(), one.clone(), self.lo.1.neg()?],
            [zero, one, self.hi.1.neg()?],
        ])
    }
}

/// Points of the line arrangement: its vertices inside the clip box and,
/// around each, one point in every sector between consecutive lines.
pub(crate) struct ArrangementPoints<R> {
    pub vertices: Vec<H<R>>,
    /// Sector samples with the face each one lies in.
    pub samples: Vec<(H<R>, Vec<u64>)>,
}

pub(crate) fn arrangement_points<R: Ring>(
    base: &[H<R>],
    extra_lines: &[H<R>],
    clip: &ClipBox<R>,
) -> Option<ArrangementPoints<R>> {
    let mut line_index: HashMap<H<R>, usize> = HashMap::new();
    let mut lines: Vec<H<R>> = Vec::new();
    let mut add_line = |l: H<R>, lines: &mut Vec<H<R>>| -> Option<()> {
        let l = canonical_line(l)?;
        if l[0].is_zero() && l[1].is_zero() {
            return Some(());
        }
        line_index.entry(l.clone()).or_insert_with(|| {
            lines.push(l);
            lines.len() - 1
        });
        Some(())
    };
    for i in 0..base.len() {
        for j in i + 1..base.len() {
            add_line(cross(&base[i], &base[j])?, &mut lines)?;
        }
    }
    for l in extra_lines {
        add_line(l.clone(), &mut lines)?;
    }

    let mut incident: HashMap<H<R>, Vec<usize>> = HashMap::new();
    let mut order: Vec<H<R>> = Vec::new();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let x = cross(&lines[i], &lines[j])?;
            if x[2].is_zero() {
                continue;
            }
            let x = canonical_point(x)?;
            if clip.locate(&x)? < 0 {
                continue;
            }
            let entry = incident.entry(x.clone()).or_insert_with(|| {
                order.push(x);
                Vec::new()
            });
            entry.push(i);
            entry.push(j);
        }
    }

    let words = lines.len().div_ceil(64);
    let mut samples = Vec::new();
    for x in &order {
        let mut inc = incident[x].clone();
        inc.sort_unstable();
        inc.dedup();
        let vals = lines.iter().map(|l| dot(l, x)).collect::<Option<Vec<R>>>()?;
        let mut dirs: Vec<(R, R)> = Vec::with_capacity(2 * inc.len());
        for &i in &inc {
            let (a, b) = (&lines[i][0], &lines[i][1]);
            dirs.push((b.neg()?, a.clone()));
            dirs.push((b.clone(), a.neg()?));
        }
        dirs.sort_by(angle_cmp);
        let w = &x[2];
        for k in 0..dirs.len() {
            let (d1, d2) = (&dirs[k], &dirs[(k + 1) % dirs.len()]);
            let bis = (d1.0.add(&d2.0)?, d1.1.add(&d2.1)?);
            let mut shift: u64 = 0;
            let mut key = vec![0u64; words];
            for (li, l) in lines.iter().enumerate() {
                let t = l[0].mul(&bis.0)?.add(&l[1].mul(&bis.1)?)?.mul(w)?;
                let s = &vals[li];
                let sign = if s.is_zero() { t.signum() } else { s.signum() };
                if sign > 0 {
                    key[li / 64] |= 1 << (li % 64);
                }
                if !s.is_zero() && t.signum() == -s.signum() {
                    shift = shift.max((t.bits() + 1).saturating_sub(s.bits()));
                }
            }
            let j = shift as u32;
            let h = [
                x[0].shl(j)?.add(&w.mul(&bis.0)?)?,
                x[1].shl(j)?.add(&w.mul(&bis.1)?)?,
                w.shl(j)?,
            ];
            if clip.locate(&h)? > 0 {
                samples.push((h, key));
            }
        }
    }
    Some(ArrangementPoints { vertices: order, samples })
}
