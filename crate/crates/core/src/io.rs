//! Polygon text files and SVG rendering.
//!
//! A polygon file holds the vertex count on its first data line, then one
//! `x y` line per vertex. Numbers are integers, `p/q` rationals or finite
//! decimals. Anything after `#` is a comment, except the witness lines
//! `# int-witness x y x y` and `# ext-witness x y x y`.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::exact_geom::{Point, Scalar};
use crate::polygon_model::SimplePolygon;
use crate::raindrop::Component;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn scalar(line: usize, tok: &str) -> Result<Scalar> {
    tok.parse().map_err(|_| parse_err(line, format!("bad number {tok:?}")))
}

/// Parses `k` points from whitespace-separated tokens.
fn points(line: usize, toks: &[&str], k: usize) -> Result<Vec<Point>> {
    if toks.len() != 2 * k {
        return Err(parse_err(line, format!("expected {} numbers, got {}", 2 * k, toks.len())));
    }
    toks.chunks(2)
        .map(|c| Ok(Point::new(scalar(line, c[0])?, scalar(line, c[1])?)))
        .collect()
}

pub fn parse_polygon_file(text: &str) -> Result<SimplePolygon> {
    let mut count: Option<(usize, usize)> = None;
    let mut verts = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let toks: Vec<&str> = body.split_whitespace().collect();
        match count {
            None => {
                let n = match toks.as_slice() {
                    [t] => t.parse::<usize>().map_err(|_| parse_err(line, format!("bad vertex count {t:?}")))?,
                    _ => return Err(parse_err(line, "first line must be the vertex count")),
                };
                count = Some((n, line));
            }
            Some((n, _)) => {
                if verts.len() == n {
                    return Err(parse_err(line, format!("more than {n} vertices")));
                }
                verts.extend(points(line, &toks, 1)?);
            }
        }
    }
    let (n, line) = count.ok_or_else(|| parse_err(1, "empty polygon file"))?;
    if verts.len() != n {
        return Err(parse_err(line, format!("declared {n} vertices, found {}", verts.len())));
    }
    Ok(SimplePolygon::validate(verts)?)
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Witnesses {
    pub interior: Option<(Point, Point)>,
    pub exterior: Option<(Point, Point)>,
}

impl Witnesses {
    pub fn get(&self, comp: Component) -> Option<&(Point, Point)> {
        match comp {
            Component::Interior => self.interior.as_ref(),
            Component::Exterior => self.exterior.as_ref(),
        }
    }
}

pub fn parse_witnesses(text: &str) -> Result<Witnesses> {
    let mut w = Witnesses::default();
    for (idx, raw) in text.lines().enumerate() {
        let Some((_, comment)) = raw.split_once('#') else { continue };
        let toks: Vec<&str> = comment.split_whitespace().collect();
        let slot = match toks.first() {
            Some(&"int-witness") => &mut w.interior,
            Some(&"ext-witness") => &mut w.exterior,
            _ => continue,
        };
        let p = points(idx + 1, &toks[1..], 2)?;
        *slot = Some((p[0].clone(), p[1].clone()));
    }
    Ok(w)
}

fn point_text(p: &Point) -> String {
    format!("{} {}", p.x, p.y)
}

/// The file text of a polygon, exactly re-parseable.
pub fn format_polygon(poly: &SimplePolygon) -> String {
    let mut s = format!("{}\n", poly.n());
    for v in poly.vertices() {
        s.push_str(&point_text(v));
        s.push('\n');
    }
    s
}

pub fn format_witnesses(w: &Witnesses) -> String {
    let mut s = String::new();
    for (tag, pair) in [("int-witness", &w.interior), ("ext-witness", &w.exterior)] {
        if let Some((a, b)) = pair {
            let _ = writeln!(s, "# {tag} {} {}", point_text(a), point_text(b));
        }
    }
    s
}

/// What to draw: a polygon plus labelled markers and polylines.
#[derive(Debug, Clone)]
pub struct Scene {
    pub polygon: SimplePolygon,
    markers: Vec<(String, Point)>,
    polylines: Vec<(String, Vec<Point>)>,
    labels: BTreeSet<String>,
}

impl Scene {
    pub fn new(polygon: SimplePolygon) -> Self {
        Scene { polygon, markers: Vec::new(), polylines: Vec::new(), labels: BTreeSet::new() }
    }

    fn claim(&mut self, label: &str) -> Result<()> {
        if !self.labels.insert(label.to_string()) {
            return Err(Error::PreconditionViolated(format!("duplicate scene label {label:?}")));
        }
        Ok(())
    }

    pub fn add_marker(&mut self, label: &str, p: Point) -> Result<()> {
        self.claim(label)?;
        self.markers.push((label.to_string(), p));
        Ok(())
    }

    pub fn add_polyline(&mut self, label: &str, pts: Vec<Point>) -> Result<()> {
        self.claim(label)?;
        self.polylines.push((label.to_string(), pts));
        Ok(())
    }

    pub fn markers(&self) -> &[(String, Point)] {
        &self.markers
    }

    pub fn polylines(&self) -> &[(String, Vec<Point>)] {
        &self.polylines
    }
}

/// `v` rounded to 12 significant digits, without trailing zeros.
pub fn decimal(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return "0".into();
    }
    let mag = v.abs().log10().floor() as i32;
    let places = (11 - mag).clamp(0, 30) as usize;
    let s = format!("{v:.places$}");
    let s = if s.contains('.') { s.trim_end_matches('0').trim_end_matches('.') } else { &s };
    if s == "-0" { "0".into() } else { s.to_string() }
}

fn xy(p: &Point) -> String {
    // SVG's y axis points down.
    format!("{},{}", decimal(p.x.to_f64()), decimal(-p.y.to_f64()))
}

pub fn emit_svg(scene: &Scene) -> String {
    let all = scene
        .polygon
        .vertices()
        .iter()
        .chain(scene.markers.iter().map(|(_, p)| p))
        .chain(scene.polylines.iter().flat_map(|(_, ps)| ps.iter()));
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for p in all {
        let (x, y) = (p.x.to_f64(), -p.y.to_f64());
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    let (w, h) = (x1 - x0, y1 - y0);
    let (mx, my) = (0.1 * w, 0.1 * h);
    let (vw, vh) = (w + 2.0 * mx, h + 2.0 * my);
    let stroke = decimal(0.004 * vw.max(vh));
    let radius = decimal(0.008 * vw.max(vh));

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}">"#,
        decimal(x0 - mx),
        decimal(y0 - my),
        decimal(vw),
        decimal(vh)
    );
    let verts = scene.polygon.vertices();
    let mut d = format!("M {}", xy(&verts[0]));
    for v in &verts[1..] {
        let _ = write!(d, " L {}", xy(v));
    }
    d.push_str(" Z");
    let _ = writeln!(s, r#"<path d="{d}" fill="lavender" stroke="black" stroke-width="{stroke}"/>"#);
    for (label, pts) in &scene.polylines {
        let coords: Vec<String> = pts.iter().map(xy).collect();
        let _ = writeln!(
            s,
            r#"<polyline class="{label}" points="{}" fill="none" stroke="crimson" stroke-width="{stroke}"/>"#,
            coords.join(" ")
        );
    }
    for (label, p) in &scene.markers {
        let (x, y) = (decimal(p.x.to_f64()), decimal(-p.y.to_f64()));
        let _ = writeln!(s, r#"<circle cx="{x}" cy="{y}" r="{radius}" fill="navy"/>"#);
        let _ = writeln!(s, r#"<text x="{x}" y="{y}" font-size="{}">{label}</text>"#, decimal(0.03 * vw.max(vh)));
    }
    s.push_str("</svg>\n");
    s
}
