//! Command-line front end. Every result is printed as one or more stable
//! lines on stdout; diagnostics go to stderr. Exit codes: 0 success, 1 domain
//! error, 2 usage error.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use polylink_core::extremal_gen::{spiral, verify};
use polylink_core::io::{emit_svg, format_polygon, format_witnesses, parse_polygon_file, parse_witnesses, Scene, Witnesses};
use polylink_core::link_oracle::{link_distance, poldiam_sampled};
use polylink_core::link_path::{connect, connect_naive, PathCertificate};
use polylink_core::visibility::{two_nonadjacent_visible, two_visible_vertices, visible_vertices};
use polylink_core::{classify, Component, Error, Feature, Location, Point, Polyline, Scalar, SimplePolygon};

pub const SEED_VAR: &str = "POLYLINK_SEED";

#[derive(Parser)]
#[command(name = "polylink", version, about = "Exact link paths around simple polygons")]
struct Cli {
    /// Random seed; defaults to $POLYLINK_SEED, else 0.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Domain {
    Int,
    Ext,
}

impl From<Domain> for Component {
    fn from(d: Domain) -> Component {
        match d {
            Domain::Int => Component::Interior,
            Domain::Ext => Component::Exterior,
        }
    }
}

#[derive(clap::Args)]
struct Coords {
    #[arg(allow_hyphen_values = true)]
    ax: String,
    #[arg(allow_hyphen_values = true)]
    ay: String,
    #[arg(allow_hyphen_values = true)]
    bx: String,
    #[arg(allow_hyphen_values = true)]
    by: String,
}

#[derive(clap::Args)]
#[group(multiple = true, requires_all = ["ax", "ay", "bx", "by"])]
struct OptCoords {
    #[arg(allow_hyphen_values = true)]
    ax: Option<String>,
    #[arg(allow_hyphen_values = true)]
    ay: Option<String>,
    #[arg(allow_hyphen_values = true)]
    bx: Option<String>,
    #[arg(allow_hyphen_values = true)]
    by: Option<String>,
}

impl OptCoords {
    fn get(&self) -> Option<Coords> {
        Some(Coords {
            ax: self.ax.clone()?,
            ay: self.ay.clone()?,
            bx: self.bx.clone()?,
            by: self.by.clone()?,
        })
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Check that a polygon file describes a simple polygon.
    Validate { file: PathBuf },
    /// Locate a point: interior, exterior or on the boundary.
    Classify {
        file: PathBuf,
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// Vertices seen from a point.
    Visible {
        file: PathBuf,
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// Constructive path within the bound between two points.
    Path {
        file: PathBuf,
        #[command(flatten)]
        coords: Coords,
        /// Use the boundary-walking construction.
        #[arg(long)]
        naive: bool,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Exact link distance; without points, uses the file's witness pair.
    Linkdist {
        file: PathBuf,
        #[arg(long, value_enum)]
        domain: Option<Domain>,
        #[command(flatten)]
        coords: OptCoords,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Sampled lower bound on the link diameter of one component.
    Poldiam {
        file: PathBuf,
        #[arg(long, value_enum)]
        domain: Domain,
        #[arg(long, default_value_t = 32)]
        budget: usize,
    },
    /// Generate an extremal polygon.
    Gen {
        #[command(subcommand)]
        family: Family,
    },
}

#[derive(Subcommand)]
enum Family {
    /// Spiral n-gon with both link-diameter bounds attained.
    Spiral {
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Check the witness distances with the oracle.
        #[arg(long)]
        verify: bool,
    },
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

type Out<'a> = &'a mut dyn Write;
type Res = Result<(), Failure>;

fn io_err(path: &Path, e: std::io::Error) -> Failure {
    Failure::Domain(format!("{}: {e}", path.display()))
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| io_err(path, e))
}

fn write_file(path: &Path, text: &str) -> Res {
    std::fs::write(path, text).map_err(|e| io_err(path, e))
}

fn load(path: &Path) -> Result<(SimplePolygon, String), Failure> {
    let text = read(path)?;
    Ok((parse_polygon_file(&text)?, text))
}

fn scalar(s: &str) -> Result<Scalar, Failure> {
    s.parse().map_err(|_| Failure::Usage(format!("bad number {s:?}")))
}

fn point(x: &str, y: &str) -> Result<Point, Failure> {
    Ok(Point::new(scalar(x)?, scalar(y)?))
}

fn pair(c: &Coords) -> Result<(Point, Point), Failure> {
    Ok((point(&c.ax, &c.ay)?, point(&c.bx, &c.by)?))
}

fn points_text(pts: &[Point]) -> String {
    pts.iter().map(|p| format!("{} {}", p.x, p.y)).collect::<Vec<_>>().join(" ")
}

fn location_text(loc: Location) -> String {
    match loc {
        Location::Interior => "interior".into(),
        Location::Exterior => "exterior".into(),
        Location::OnBoundary(Feature::Vertex(i)) => format!("boundary vertex {i}"),
        Location::OnBoundary(Feature::Edge(i)) => format!("boundary edge {i}"),
    }
}

fn component_of(poly: &SimplePolygon, p: &Point) -> Result<Component, Failure> {
    Component::of(classify(poly, p)).ok_or_else(|| Failure::Domain(format!("point {p} lies on the polygon")))
}

fn path_svg(poly: &SimplePolygon, path: &Polyline, target: &Path) -> Res {
    let mut scene = Scene::new(poly.clone());
    scene.add_polyline("path", path.points().to_vec())?;
    scene.add_marker("a", path.start().clone())?;
    scene.add_marker("b", path.end().clone())?;
    write_file(target, &emit_svg(&scene))
}

fn cmd_path(out: Out, file: &Path, coords: &Coords, naive: bool, svg: Option<&Path>) -> Res {
    let (poly, _) = load(file)?;
    let (a, b) = pair(coords)?;
    let cert: PathCertificate = if naive { connect_naive(&poly, &a, &b)? } else { connect(&poly, &a, &b)? };
    let _ = writeln!(
        out,
        "links {} case {} component {} bound {}",
        cert.links(),
        cert.case,
        cert.component,
        cert.bound
    );
    let _ = writeln!(out, "path {}", points_text(cert.path.points()));
    if let Some(target) = svg {
        path_svg(&poly, &cert.path, target)?;
    }
    Ok(())
}

fn cmd_linkdist(out: Out, file: &Path, domain: Option<Domain>, coords: Option<Coords>, svg: Option<&Path>) -> Res {
    let (poly, text) = load(file)?;
    let (a, b, comp) = if let Some(coords) = coords {
        let (a, b) = pair(&coords)?;
        let comp = match domain {
            Some(d) => d.into(),
            None => component_of(&poly, &a)?,
        };
        (a, b, comp)
    } else {
        let comp: Component = domain.map_or(Component::Interior, Into::into);
        let w: Witnesses = parse_witnesses(&text)?;
        let (a, b) = w
            .get(comp)
            .cloned()
            .ok_or_else(|| Failure::Domain(format!("no {comp} witness in {}", file.display())))?;
        (a, b, comp)
    };
    let r = link_distance(&poly, &a, &b, comp)?;
    let _ = writeln!(out, "{}", r.distance);
    let _ = writeln!(out, "witness {}", points_text(r.witness.points()));
    if let Some(target) = svg {
        path_svg(&poly, &r.witness, target)?;
    }
    Ok(())
}

fn cmd_gen(out: Out, n: usize, file: Option<&Path>, svg: Option<&Path>, check: bool) -> Res {
    let inst = spiral(n)?;
    let w = Witnesses { interior: Some(inst.interior.clone()), exterior: Some(inst.exterior.clone()) };
    let text = format_polygon(&inst.polygon) + &format_witnesses(&w);
    match file {
        Some(path) => write_file(path, &text)?,
        None => {
            let _ = out.write_all(text.as_bytes());
        }
    }
    if let Some(target) = svg {
        let mut scene = Scene::new(inst.polygon.clone());
        for (label, p) in [
            ("a", &inst.interior.0),
            ("b", &inst.interior.1),
            ("c", &inst.exterior.0),
            ("d", &inst.exterior.1),
        ] {
            scene.add_marker(label, p.clone())?;
        }
        write_file(target, &emit_svg(&scene))?;
    }
    if check {
        let r = verify(&inst)?;
        let _ = writeln!(
            out,
            "# verify int {}/{} ext {}/{} pass",
            r.interior, r.claimed_interior, r.exterior, r.claimed_exterior
        );
    }
    Ok(())
}

fn dispatch(cli: Cli, seed: u64, out: Out) -> Res {
    match cli.cmd {
        Cmd::Validate { file } => {
            let (poly, _) = load(&file)?;
            let _ = writeln!(out, "simple n={}", poly.n());
        }
        Cmd::Classify { file, x, y } => {
            let (poly, _) = load(&file)?;
            let _ = writeln!(out, "{}", location_text(classify(&poly, &point(&x, &y)?)));
        }
        Cmd::Visible { file, x, y } => {
            let (poly, _) = load(&file)?;
            let p = point(&x, &y)?;
            let comp = component_of(&poly, &p)?;
            let vs: Vec<String> = visible_vertices(&poly, &p).iter().map(|i| i.to_string()).collect();
            let _ = writeln!(out, "vertices {}", vs.join(" "));
            let pr = two_visible_vertices(&poly, &p, seed)?;
            let _ = writeln!(out, "pair {} {}", pr.first, pr.second);
            if comp.is_interior() && poly.n() >= 4 {
                let pr = two_nonadjacent_visible(&poly, &p)?;
                let _ = writeln!(out, "nonadjacent {} {}", pr.first, pr.second);
            }
        }
        Cmd::Path { file, coords, naive, svg } => cmd_path(out, &file, &coords, naive, svg.as_deref())?,
        Cmd::Linkdist { file, domain, coords, svg } => cmd_linkdist(out, &file, domain, coords.get(), svg.as_deref())?,
        Cmd::Poldiam { file, domain, budget } => {
            let (poly, _) = load(&file)?;
            let s = poldiam_sampled(&poly, domain.into(), budget, seed)?;
            let _ = writeln!(out, "lower-bound {} pairs {}", s.lower_bound, s.pairs);
            let _ = writeln!(out, "a {} {} b {} {}", s.a.x, s.a.y, s.b.x, s.b.y);
            let _ = writeln!(out, "witness {}", points_text(s.witness.points()));
        }
        Cmd::Gen { family: Family::Spiral { n, out: file, svg, verify } } => {
            cmd_gen(out, n, file.as_deref(), svg.as_deref(), verify)?
        }
    }
    Ok(())
}

fn env_seed() -> Result<u64, Failure> {
    match std::env::var(SEED_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| Failure::Usage(format!("{SEED_VAR} must be an unsigned integer, got {v:?}"))),
        Err(_) => Ok(0),
    }
}

/// Runs the tool on `argv` (program name first) and returns the exit code.
pub fn run(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { out.write_all(rendered.as_bytes()) } else { err.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    let seed = match cli.seed.map_or_else(env_seed, Ok) {
        Ok(s) => s,
        Err(Failure::Usage(m)) | Err(Failure::Domain(m)) => {
            let _ = writeln!(err, "error: {m}");
            return 2;
        }
    };
    match dispatch(cli, seed, out) {
        Ok(()) => 0,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            2
        }
        Err(Failure::Domain(m)) => {
            let _ = writeln!(err, "error: {m}");
            1
        }
    }
}
