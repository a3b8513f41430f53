//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Every input is drawn from fixed seeds.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use polylink_core::corpus::{random_convex, random_edge_point, random_point, random_polygon, rng};
use polylink_core::extremal_gen::{verify, DEFAULT_SAMPLES};
use polylink_core::link_oracle::poldiam_sampled;
use polylink_core::link_path::{connect_naive, exterior_bound, interior_bound, naive_bound};
use polylink_core::polygon_model::cyclic_edge_distance;
use polylink_core::raindrop::{classify_by_random_ray, straddle_step};
use polylink_core::visibility::{sees_vertex, two_nonadjacent_visible, two_visible_vertices, visible_vertices};
use polylink_core::{
    classify, connect, link_distance, spiral, Component, Feature, Location, Point, Scalar, SimplePolygon,
};

type Outcome = Result<String, String>;
type Pairs = Vec<(Component, Point, Point)>;
type Criterion = (&'static str, fn() -> Outcome);

fn fail<T>(msg: String) -> Result<T, String> {
    Err(msg)
}

fn within(limit: Duration, start: Instant) -> Result<Duration, String> {
    let took = start.elapsed();
    if took > limit {
        return fail(format!("took {took:.1?}, limit {limit:?}"));
    }
    Ok(took)
}

/// Polygon `i` of a corpus whose sizes cycle through `3..=max_n`.
fn corpus_polygon(tag: u64, i: usize, max_n: usize) -> SimplePolygon {
    let n = 3 + i % (max_n - 2);
    random_polygon(&mut rng(tag * 1000 + i as u64), n)
}

/// Points of one component, drawn until `k` are found.
fn draw(poly: &SimplePolygon, seed: u64, comp: Component, k: usize) -> Vec<Point> {
    let mut r = rng(seed);
    let margin = Scalar::from_int(2);
    let mut out = Vec::with_capacity(k);
    while out.len() < k {
        let p = random_point(&mut r, poly, &margin);
        if Component::of(classify(poly, &p)) == Some(comp) && !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

fn jordan_classification() -> Outcome {
    let start = Instant::now();
    let margin = Scalar::one();
    let (mut points, mut boundary) = (0, 0);
    for i in 0..50 {
        let poly = corpus_polygon(1, i, 20);
        let mut r = rng(10_000 + i as u64);
        for k in 0..200 {
            let p = random_point(&mut r, &poly, &margin);
            let (a, b) = (classify(&poly, &p), classify_by_random_ray(&poly, &p, k));
            if a != b {
                return fail(format!("polygon {i}: {p:?} gives {a:?} vs {b:?}"));
            }
            points += 1;
        }
        for v in 0..poly.n() {
            if classify(&poly, poly.vertex(v)) != Location::OnBoundary(Feature::Vertex(v)) {
                return fail(format!("polygon {i}: vertex {v} not reported"));
            }
            let e = v + 1;
            let x = random_edge_point(&mut r, &poly, e);
            if classify(&poly, &x) != Location::OnBoundary(Feature::Edge(e)) {
                return fail(format!("polygon {i}: edge point {x:?} not on edge {e}"));
            }
            boundary += 2;
        }
    }
    let took = within(Duration::from_secs(30), start)?;
    Ok(format!("{points} points agree, {boundary} boundary points exact, {took:.1?}"))
}

fn boundary_density() -> Outcome {
    let mut checked = 0;
    for i in 0..20 {
        let poly = corpus_polygon(2, i, 20);
        let v = poly.generic().clone();
        let mut r = rng(20_000 + i as u64);
        for k in 0..50 {
            let e = k % poly.n() + 1;
            let x = random_edge_point(&mut r, &poly, e);
            let eps = straddle_step(&poly, &x, &v).map_err(|err| format!("polygon {i}: {err}"))?;
            let up = classify(&poly, &x.offset(&v, &eps));
            let down = classify(&poly, &x.offset(&v, &-&eps));
            if up.is_boundary() || down.is_boundary() || up == down {
                return fail(format!("polygon {i}: {x:?} gives {up:?} / {down:?}"));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} edge points flip sides"))
}

fn visible_vertex_suites() -> Outcome {
    let margin = Scalar::from_int(2);
    let (mut trials, mut nonadjacent) = (0, 0);
    for i in 0..100 {
        let poly = corpus_polygon(3, i, 20);
        let mut r = rng(30_000 + i as u64);
        while trials < (i + 1) * 100 {
            let a = random_point(&mut r, &poly, &margin);
            let loc = classify(&poly, &a);
            if loc.is_boundary() {
                continue;
            }
            let pair = two_visible_vertices(&poly, &a, trials as u64).map_err(|e| format!("polygon {i}: {e}"))?;
            if pair.first == pair.second || !sees_vertex(&poly, &a, pair.first) || !sees_vertex(&poly, &a, pair.second) {
                return fail(format!("polygon {i}: bad visible pair from {a:?}"));
            }
            if loc.is_interior() && poly.n() >= 4 {
                let pair = two_nonadjacent_visible(&poly, &a).map_err(|e| format!("polygon {i}: {e}"))?;
                let ok = cyclic_edge_distance(&poly, pair.first, pair.second) >= 2
                    && sees_vertex(&poly, &a, pair.first)
                    && sees_vertex(&poly, &a, pair.second);
                if !ok {
                    return fail(format!("polygon {i}: bad non-adjacent pair from {a:?}"));
                }
                nonadjacent += 1;
            }
            trials += 1;
        }
    }
    Ok(format!("{trials} trials, {nonadjacent} non-adjacent pairs verified"))
}

/// The path corpus: 50 polygons with `n <= 14`, each with 25 interior and
/// 25 exterior pairs.
fn path_corpus() -> Vec<(SimplePolygon, Pairs)> {
    (0..50)
        .map(|i| {
            let poly = corpus_polygon(4, i, 14);
            let mut pairs = Vec::with_capacity(50);
            for (k, comp) in [Component::Interior, Component::Exterior].into_iter().enumerate() {
                let pts = draw(&poly, 40_000 + 2 * i as u64 + k as u64, comp, 50);
                pairs.extend(pts.chunks(2).map(|c| (comp, c[0].clone(), c[1].clone())));
            }
            (poly, pairs)
        })
        .collect()
}

fn component_bound(comp: Component, n: usize) -> usize {
    match comp {
        Component::Interior => interior_bound(n),
        Component::Exterior => exterior_bound(n),
    }
}

fn tight_bound_construction() -> Outcome {
    let start = Instant::now();
    let (mut certs, mut worst_naive) = (0, 0);
    for (i, (poly, pairs)) in path_corpus().iter().enumerate() {
        let n = poly.n();
        for (comp, a, b) in pairs {
            let cert = connect(poly, a, b).map_err(|e| format!("polygon {i}: {e}"))?;
            let bound = component_bound(*comp, n).max(1);
            if cert.component != *comp || !cert.is_sound(poly) || cert.links() > bound {
                return fail(format!("polygon {i}: {} path with {} links, bound {bound}", cert.case, cert.links()));
            }
            let naive = connect_naive(poly, a, b).map_err(|e| format!("polygon {i}: naive: {e}"))?;
            if !naive.is_sound(poly) || naive.links() > naive_bound(n) {
                return fail(format!("polygon {i}: naive path with {} links", naive.links()));
            }
            worst_naive = worst_naive.max(naive.links() as i64 - naive_bound(n) as i64);
            certs += 2;
        }
    }
    Ok(format!("{certs} certificates sound, naive worst excess {worst_naive}, {:.1?}", start.elapsed()))
}

fn oracle_cross_validation() -> Outcome {
    let start = Instant::now();
    let (mut queries, mut tight) = (0, 0);
    for (i, (poly, pairs)) in path_corpus().iter().enumerate() {
        let n = poly.n();
        if n > 10 {
            continue;
        }
        for (comp, a, b) in pairs {
            let links = connect(poly, a, b).map_err(|e| format!("polygon {i}: {e}"))?.links();
            let res = link_distance(poly, a, b, *comp).map_err(|e| format!("polygon {i}: oracle: {e}"))?;
            let d = res.distance;
            if d > links || d > component_bound(*comp, n).max(1) {
                return fail(format!("polygon {i}: oracle {d}, connect {links}, n {n}, {comp}"));
            }
            if res.witness.links() != d || !res.witness.lies_in(poly, *comp) {
                return fail(format!("polygon {i}: oracle witness does not verify"));
            }
            tight += usize::from(d == links);
            queries += 1;
        }
    }
    let took = within(Duration::from_secs(300), start)?;
    Ok(format!("{queries} queries, connect optimal on {tight}, {took:.1?}"))
}

fn poldiam(poly: &SimplePolygon, comp: Component, seed: u64) -> Result<usize, String> {
    poldiam_sampled(poly, comp, 16, seed).map(|p| p.lower_bound).map_err(|e| e.to_string())
}

fn convex_and_quadrilateral_facts() -> Outcome {
    for i in 0..10 {
        let poly = random_convex(&mut rng(60_000 + i), 10);
        let (int, ext) = (poldiam(&poly, Component::Interior, i)?, poldiam(&poly, Component::Exterior, i)?);
        if (int, ext) != (1, 2) {
            return fail(format!("convex polygon {i} (n {}): int {int}, ext {ext}", poly.n()));
        }
    }
    let dart = SimplePolygon::from_int_coords(&[(0, 0), (4, 0), (1, 1), (0, 4)]).unwrap();
    if dart.is_convex() {
        return fail("dart is convex".into());
    }
    let dart_ext = poldiam(&dart, Component::Exterior, 0)?;
    if dart_ext != 2 {
        return fail(format!("nonconvex quadrilateral: ext {dart_ext}"));
    }
    let quad = SimplePolygon::from_int_coords(&[(0, 0), (5, 0), (4, 3), (1, 4)]).unwrap();
    let a = Point::from_ratios(5, 2, -1, 10);
    let b = Point::from_ratios(5, 2, 39, 10);
    let (va, vb) = (visible_vertices(&quad, &a), visible_vertices(&quad, &b));
    if va != [0, 1] || vb != [2, 3] {
        return fail(format!("convex quadrilateral sees {va:?} and {vb:?}"));
    }
    Ok("10 convex polygons int 1 ext 2; dart ext 2; near-edge points see {0,1} and {2,3}".into())
}

fn spiral_attainment() -> Outcome {
    let start = Instant::now();
    let mut values = Vec::new();
    for n in 3..=10 {
        let inst = spiral(n).map_err(|e| format!("n {n}: {e}"))?;
        let report = verify(&inst).map_err(|e| format!("n {n}: {e}"))?;
        if (report.interior, report.exterior) != (n / 2, n.div_ceil(2)) {
            return fail(format!("n {n}: int {}, ext {}", report.interior, report.exterior));
        }
        values.push(format!("{n}:{}/{}", report.interior, report.exterior));
    }
    // The worked examples: three links inside the hexagon, four outside the heptagon.
    let six = verify(&spiral(6).unwrap()).map_err(|e| e.to_string())?;
    let seven = verify(&spiral(7).unwrap()).map_err(|e| e.to_string())?;
    if six.interior != 3 || seven.exterior != 4 {
        return fail(format!("examples give {} and {}", six.interior, seven.exterior));
    }
    let took = within(Duration::from_secs(600), start)?;
    Ok(format!("{} ({DEFAULT_SAMPLES} samples per side), {took:.1?}", values.join(" ")))
}

const L_HEXAGON: &str = "6\n0 0\n2 0\n2 1\n1 1\n1 2\n0 2\n";

/// Runs a fixed CLI session in `dir` and returns its stdout plus every SVG.
fn cli_session(dir: &Path, seed: &str) -> Result<Vec<(String, Vec<u8>)>, String> {
    std::fs::write(dir.join("l.poly"), L_HEXAGON).map_err(|e| e.to_string())?;
    let script: &[&[&str]] = &[
        &["gen", "spiral", "8", "--out", "s8.poly", "--svg", "gen.svg", "--verify"],
        &["validate", "s8.poly"],
        &["classify", "s8.poly", "1/3", "2/7"],
        &["visible", "l.poly", "1/2", "3/2"],
        &["path", "l.poly", "1/2", "3/2", "3/2", "1/2", "--svg", "path.svg"],
        &["path", "l.poly", "1/2", "3/2", "3/2", "1/2", "--naive"],
        &["path", "l.poly", "5/2", "3/2", "3/2", "5/2"],
        &["linkdist", "s8.poly", "--domain", "ext", "--svg", "linkdist.svg"],
        &["linkdist", "s8.poly", "--domain", "int"],
        &["poldiam", "l.poly", "--domain", "ext", "--budget", "8"],
        &["poldiam", "s8.poly", "--domain", "int", "--budget", "4"],
    ];
    let mut out = Vec::new();
    for args in script {
        let o = Command::new(env!("CARGO_BIN_EXE_polylink"))
            .args(*args)
            .current_dir(dir)
            .env("POLYLINK_SEED", seed)
            .output()
            .map_err(|e| e.to_string())?;
        if !o.status.success() {
            return fail(format!("{args:?}: {}", String::from_utf8_lossy(&o.stderr)));
        }
        out.push((args.join(" "), o.stdout));
    }
    for svg in ["gen.svg", "path.svg", "linkdist.svg"] {
        out.push((svg.to_string(), std::fs::read(dir.join(svg)).map_err(|e| e.to_string())?));
    }
    Ok(out)
}

fn determinism() -> Outcome {
    let (d1, d2) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let first = cli_session(d1.path(), "11")?;
    let second = cli_session(d2.path(), "11")?;
    for ((name, x), (_, y)) in first.iter().zip(&second) {
        if x != y {
            return fail(format!("{name} differs between runs"));
        }
    }
    let bytes: usize = first.iter().map(|(_, b)| b.len()).sum();
    Ok(format!("{} outputs, {bytes} bytes identical across two runs", first.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("jordan classification", jordan_classification),
        ("boundary density", boundary_density),
        ("visible vertices", visible_vertex_suites),
        ("tight-bound construction", tight_bound_construction),
        ("oracle cross-validation", oracle_cross_validation),
        ("convex and quadrilateral facts", convex_and_quadrilateral_facts),
        ("extremal spirals", spiral_attainment),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS criterion {} {name}: {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {} {name}: {detail}", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
