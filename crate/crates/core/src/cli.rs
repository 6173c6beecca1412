//! Command-line front end.
//!
//! Instances are JSON objects with optional keys `polygon`, `curveA`,
//! `curveB`, `setA`, `setB`, each a list of `[x, y]` pairs. Results are
//! printed as single-line JSON objects.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::freespace::{decide, FreeSpaceDiagram};
use crate::geodesic::GeodesicSpace;
use crate::geometry::{validate_polygon, Point, PolygonalCurve};
use crate::hausdorff::{directed_hausdorff, PointSet};
use crate::metric::{Euclidean, LeashMetric};
use crate::optimize::{frechet, FrechetOptions, DEFAULT_TOL};

/// Exit code for invalid input or usage.
pub const EXIT_INVALID: i32 = 2;
/// Exit code when an internal guard trips.
pub const EXIT_INTERNAL: i32 = 3;

/// Samples per cell side in free-space plots.
pub const PLOT_SAMPLES: usize = 64;

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polygon: Option<Vec<Point>>,
    #[serde(rename = "curveA", default, skip_serializing_if = "Option::is_none")]
    pub curve_a: Option<Vec<Point>>,
    #[serde(rename = "curveB", default, skip_serializing_if = "Option::is_none")]
    pub curve_b: Option<Vec<Point>>,
    #[serde(rename = "setA", default, skip_serializing_if = "Option::is_none")]
    pub set_a: Option<Vec<Point>>,
    #[serde(rename = "setB", default, skip_serializing_if = "Option::is_none")]
    pub set_b: Option<Vec<Point>>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Library(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Library(Error::NonTermination(_))
            | CliError::Library(Error::MonotonicityViolation(_))
            | CliError::Library(Error::EmptySlab) => EXIT_INTERNAL,
            _ => EXIT_INVALID,
        }
    }
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Invalid(msg.into())
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| invalid(format!("malformed instance: {e}")))
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| invalid(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance serializes")
    }

    pub fn space(&self) -> Result<Option<GeodesicSpace>, CliError> {
        match &self.polygon {
            None => Ok(None),
            Some(p) => Ok(Some(GeodesicSpace::new(validate_polygon(p)?))),
        }
    }

    fn curve(raw: &Option<Vec<Point>>, key: &str) -> Result<PolygonalCurve, CliError> {
        let pts = raw
            .clone()
            .ok_or_else(|| invalid(format!("missing `{key}`")))?;
        Ok(PolygonalCurve::new(pts)?)
    }

    pub fn curves(&self) -> Result<(PolygonalCurve, PolygonalCurve), CliError> {
        Ok((
            Self::curve(&self.curve_a, "curveA")?,
            Self::curve(&self.curve_b, "curveB")?,
        ))
    }

    /// Point sets for Hausdorff queries; curve vertices stand in for
    /// missing sets.
    pub fn point_sets(&self) -> Result<(Vec<Point>, Vec<Point>), CliError> {
        let pick = |set: &Option<Vec<Point>>, curve: &Option<Vec<Point>>, key: &str| {
            set.clone()
                .or_else(|| curve.clone())
                .ok_or_else(|| invalid(format!("missing `{key}`")))
        };
        Ok((
            pick(&self.set_a, &self.curve_a, "setA")?,
            pick(&self.set_b, &self.curve_b, "setB")?,
        ))
    }

    /// Parses and validates every part that is present.
    pub fn validate(&self) -> Result<(), CliError> {
        let space = self.space()?;
        for (raw, key) in [(&self.curve_a, "curveA"), (&self.curve_b, "curveB")] {
            if raw.is_some() {
                let c = Self::curve(raw, key)?;
                if let Some(s) = &space {
                    s.check_curve(&c)?;
                }
            }
        }
        for set in [&self.set_a, &self.set_b].into_iter().flatten() {
            match &space {
                Some(s) => PointSet::new(s, set.clone())?,
                None => PointSet::unbounded(set.clone())?,
            };
        }
        Ok(())
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "geofrechet",
    version,
    about = "Geodesic and Euclidean Fréchet distance"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct MetricArgs {
    /// Straight-line leash; any polygon in the instance is ignored.
    #[arg(long)]
    pub euclidean: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Whether the Fréchet distance is at most EPSILON.
    Decide {
        #[arg(long)]
        epsilon: f64,
        #[command(flatten)]
        metric: MetricArgs,
        file: PathBuf,
    },
    /// Exact Fréchet distance.
    Frechet {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Relative root tolerance for crossing values.
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[command(flatten)]
        metric: MetricArgs,
        file: PathBuf,
    },
    /// Hausdorff distance between `setA` and `setB`.
    Hausdorff {
        #[command(flatten)]
        metric: MetricArgs,
        file: PathBuf,
    },
    /// Shortest path inside the polygon.
    ShortestPath {
        #[arg(long, value_parser = parse_point)]
        from: Point,
        #[arg(long, value_parser = parse_point)]
        to: Point,
        file: PathBuf,
    },
    /// Render the free-space diagram at EPSILON as SVG.
    PlotFsd {
        #[arg(long)]
        epsilon: f64,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        metric: MetricArgs,
        file: PathBuf,
    },
}

fn parse_point(s: &str) -> Result<Point, String> {
    let (x, y) = s.split_once(',').ok_or("expected `x,y`")?;
    let x: f64 = x.trim().parse().map_err(|e| format!("{e}"))?;
    let y: f64 = y.trim().parse().map_err(|e| format!("{e}"))?;
    Ok(Point::new(x, y))
}

/// Rendering used for every number in the output: 12 significant digits,
/// always in plain decimal notation so the JSON stays portable.
pub fn num(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let decimals = (11 - v.abs().log10().floor() as i32).max(0) as usize;
    let s = format!("{v:.decimals$}");
    // A carry can add a digit (9.99..95 -> 10.00..0); redo with one fewer.
    let digits = s
        .bytes()
        .filter(u8::is_ascii_digit)
        .skip_while(|&b| b == b'0')
        .count();
    if digits > 12 && decimals > 0 {
        let d = decimals - 1;
        format!("{v:.d$}")
    } else {
        s
    }
}

/// Geodesic space or Euclidean plane, as selected on the command line.
enum Leash {
    Geodesic(GeodesicSpace),
    Euclidean,
}

impl Leash {
    fn select(
        inst: &InstanceFile,
        euclidean: bool,
        err: &mut dyn Write,
    ) -> Result<Leash, CliError> {
        if euclidean {
            if inst.polygon.is_some() {
                let _ = writeln!(err, "warning: --euclidean ignores the instance polygon");
            }
            return Ok(Leash::Euclidean);
        }
        inst.space()?
            .map(Leash::Geodesic)
            .ok_or_else(|| invalid("missing `polygon` (use --euclidean for an unobstructed leash)"))
    }

    fn with<R>(&self, f: impl FnOnce(&dyn DynMetric) -> R) -> R {
        match self {
            Leash::Geodesic(s) => f(s),
            Leash::Euclidean => f(&Euclidean),
        }
    }
}

/// Object-safe view of a metric for the command handlers.
trait DynMetric {
    fn curves(&self, inst: &InstanceFile) -> Result<(PolygonalCurve, PolygonalCurve), CliError>;
    fn decide(&self, a: &PolygonalCurve, b: &PolygonalCurve, eps: f64) -> crate::Result<bool>;
    fn frechet(
        &self,
        a: &PolygonalCurve,
        b: &PolygonalCurve,
        o: FrechetOptions,
    ) -> crate::Result<crate::optimize::FrechetResult>;
    fn diagram(&self, a: &PolygonalCurve, b: &PolygonalCurve) -> crate::Result<FreeSpaceDiagram>;
    fn distance(&self, p: Point, q: Point) -> crate::Result<f64>;
    fn point_set(&self, pts: Vec<Point>) -> crate::Result<PointSet>;
    fn directed(&self, a: &PointSet, b: &PointSet) -> crate::Result<f64>;
}

impl<M: LeashMetric + PointSetCheck> DynMetric for M {
    fn curves(&self, inst: &InstanceFile) -> Result<(PolygonalCurve, PolygonalCurve), CliError> {
        let (a, b) = inst.curves()?;
        self.check_curve(&a)?;
        self.check_curve(&b)?;
        Ok((a, b))
    }
    fn decide(&self, a: &PolygonalCurve, b: &PolygonalCurve, eps: f64) -> crate::Result<bool> {
        decide(self, a, b, eps)
    }
    fn frechet(
        &self,
        a: &PolygonalCurve,
        b: &PolygonalCurve,
        o: FrechetOptions,
    ) -> crate::Result<crate::optimize::FrechetResult> {
        frechet(self, a, b, o)
    }
    fn diagram(&self, a: &PolygonalCurve, b: &PolygonalCurve) -> crate::Result<FreeSpaceDiagram> {
        FreeSpaceDiagram::new(self, a, b)
    }
    fn distance(&self, p: Point, q: Point) -> crate::Result<f64> {
        LeashMetric::distance(self, p, q)
    }
    fn point_set(&self, pts: Vec<Point>) -> crate::Result<PointSet> {
        self.make_set(pts)
    }
    fn directed(&self, a: &PointSet, b: &PointSet) -> crate::Result<f64> {
        directed_hausdorff(self, a, b)
    }
}

trait PointSetCheck {
    fn make_set(&self, pts: Vec<Point>) -> crate::Result<PointSet>;
}

impl PointSetCheck for GeodesicSpace {
    fn make_set(&self, pts: Vec<Point>) -> crate::Result<PointSet> {
        PointSet::new(self, pts)
    }
}

impl PointSetCheck for Euclidean {
    fn make_set(&self, pts: Vec<Point>) -> crate::Result<PointSet> {
        PointSet::unbounded(pts)
    }
}

/// Runs one command, writing its JSON result to `out`.
pub fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let io = |e: std::io::Error| invalid(format!("write failed: {e}"));
    match cli.command {
        Command::Decide {
            epsilon,
            metric,
            file,
        } => {
            let inst = InstanceFile::read(&file)?;
            let leash = Leash::select(&inst, metric.euclidean, err)?;
            let decision = leash.with(|m| -> Result<bool, CliError> {
                let (a, b) = m.curves(&inst)?;
                Ok(m.decide(&a, &b, epsilon)?)
            })?;
            writeln!(out, "{{\"decision\": {decision}}}").map_err(io)?;
        }
        Command::Frechet {
            seed,
            tol,
            metric,
            file,
        } => {
            if !(tol > 0.0 && tol < 1e-3) {
                return Err(invalid("--tol must lie in (0, 1e-3)"));
            }
            let inst = InstanceFile::read(&file)?;
            let leash = Leash::select(&inst, metric.euclidean, err)?;
            let r = leash.with(|m| -> Result<_, CliError> {
                let (a, b) = m.curves(&inst)?;
                Ok(m.frechet(&a, &b, FrechetOptions { seed, tol })?)
            })?;
            writeln!(
                out,
                "{{\"epsilon_star\": {}, \"iterations\": {}, \"decision_calls\": {}}}",
                num(r.epsilon_star),
                r.iterations,
                r.decision_calls
            )
            .map_err(io)?;
        }
        Command::Hausdorff { metric, file } => {
            let inst = InstanceFile::read(&file)?;
            let leash = Leash::select(&inst, metric.euclidean, err)?;
            let (ab, ba) = leash.with(|m| -> Result<_, CliError> {
                let (sa, sb) = inst.point_sets()?;
                let (sa, sb) = (m.point_set(sa)?, m.point_set(sb)?);
                Ok((m.directed(&sa, &sb)?, m.directed(&sb, &sa)?))
            })?;
            writeln!(
                out,
                "{{\"hausdorff\": {}, \"directed_ab\": {}, \"directed_ba\": {}}}",
                num(ab.max(ba)),
                num(ab),
                num(ba)
            )
            .map_err(io)?;
        }
        Command::ShortestPath { from, to, file } => {
            let inst = InstanceFile::read(&file)?;
            let space = inst.space()?.ok_or_else(|| invalid("missing `polygon`"))?;
            let path = space.shortest_path(from, to)?;
            let pts: Vec<String> = path
                .vertices
                .iter()
                .map(|p| format!("[{}, {}]", num(p.x), num(p.y)))
                .collect();
            writeln!(
                out,
                "{{\"length\": {}, \"path\": [{}]}}",
                num(path.length),
                pts.join(", ")
            )
            .map_err(io)?;
        }
        Command::PlotFsd {
            epsilon,
            out: path,
            metric,
            file,
        } => {
            let inst = InstanceFile::read(&file)?;
            let leash = Leash::select(&inst, metric.euclidean, err)?;
            let svg = leash.with(|m| -> Result<String, CliError> {
                let (a, b) = m.curves(&inst)?;
                let diagram = m.diagram(&a, &b)?;
                render_svg(&diagram, &a, &b, epsilon, |p, q| m.distance(p, q))
            })?;
            std::fs::write(&path, svg).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
            writeln!(out, "{{\"plot\": {:?}}}", path.display().to_string()).map_err(io)?;
        }
    }
    Ok(())
}

/// SVG raster of the free space at `eps`: one pixel per sample, free pixels
/// as `class="free"` runs, cell grid lines, free-interval end ticks and
/// reachable intervals.
pub fn render_svg(
    diagram: &FreeSpaceDiagram,
    a: &PolygonalCurve,
    b: &PolygonalCurve,
    eps: f64,
    dist: impl Fn(Point, Point) -> crate::Result<f64>,
) -> Result<String, CliError> {
    let (na, nb) = diagram.dims();
    let k = PLOT_SAMPLES;
    let (w, h) = (na * k, nb * k);
    let rows = diagram.rows(eps)?;
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\" data-epsilon=\"{}\">",
        num(eps)
    );
    let _ = writeln!(
        svg,
        "<rect x=\"0\" y=\"0\" width=\"{w}\" height=\"{h}\" fill=\"#ffffff\"/>"
    );
    let _ = writeln!(svg, "<g fill=\"#9ecae1\">");
    for row in 0..h {
        // Pixel row 0 is the top of the picture, i.e. the end of `b`.
        let t = (h - 1 - row) as f64 + 0.5;
        let q = b.point_at(t / k as f64);
        let mut run: Option<usize> = None;
        for col in 0..=w {
            let s = (col as f64 + 0.5) / k as f64;
            let free = col < w && dist(a.point_at(s), q)? <= eps;
            match (free, run) {
                (true, None) => run = Some(col),
                (false, Some(start)) => {
                    let _ = writeln!(
                        svg,
                        "<rect class=\"free\" x=\"{start}\" y=\"{row}\" width=\"{}\" height=\"1\"/>",
                        col - start
                    );
                    run = None;
                }
                _ => {}
            }
        }
    }
    let _ = writeln!(svg, "</g>");

    let _ = writeln!(
        svg,
        "<g class=\"grid\" stroke=\"#555555\" stroke-width=\"1\">"
    );
    for i in 0..=na {
        let x = i * k;
        let _ = writeln!(svg, "<line x1=\"{x}\" y1=\"0\" x2=\"{x}\" y2=\"{h}\"/>");
    }
    for j in 0..=nb {
        let y = h - j * k;
        let _ = writeln!(svg, "<line x1=\"0\" y1=\"{y}\" x2=\"{w}\" y2=\"{y}\"/>");
    }
    let _ = writeln!(svg, "</g>");

    let kf = k as f64;
    let hf = h as f64;
    let mut ticks = String::new();
    let mut reach = String::new();
    for r in &rows {
        let j = r.j as f64;
        for (i, (free, got)) in r.vertical.iter().zip(&r.vertical_reach).enumerate() {
            let x = i as f64 * kf;
            if let Some((lo, hi)) = free {
                for t in [lo, hi] {
                    let y = hf - (j + t) * kf;
                    let _ = writeln!(
                        ticks,
                        "<line x1=\"{}\" y1=\"{y:.3}\" x2=\"{}\" y2=\"{y:.3}\"/>",
                        x - 3.0,
                        x + 3.0
                    );
                }
            }
            if let Some((lo, hi)) = got {
                let _ = writeln!(
                    reach,
                    "<line x1=\"{x}\" y1=\"{:.3}\" x2=\"{x}\" y2=\"{:.3}\"/>",
                    hf - (j + lo) * kf,
                    hf - (j + hi) * kf
                );
            }
        }
        let bands = [
            (r.j, &r.bottom, &r.bottom_reach),
            (r.j + 1, &r.top, &r.top_reach),
        ];
        for (jj, free_row, reach_row) in bands {
            let y = hf - jj as f64 * kf;
            for (i, (free, got)) in free_row.iter().zip(reach_row.iter()).enumerate() {
                if let Some((lo, hi)) = free {
                    for s in [lo, hi] {
                        let x = (i as f64 + s) * kf;
                        let _ = writeln!(
                            ticks,
                            "<line x1=\"{x:.3}\" y1=\"{}\" x2=\"{x:.3}\" y2=\"{}\"/>",
                            y - 3.0,
                            y + 3.0
                        );
                    }
                }
                if let Some((lo, hi)) = got {
                    let _ = writeln!(
                        reach,
                        "<line x1=\"{:.3}\" y1=\"{y}\" x2=\"{:.3}\" y2=\"{y}\"/>",
                        (i as f64 + lo) * kf,
                        (i as f64 + hi) * kf
                    );
                }
            }
        }
    }
    let _ = writeln!(
        svg,
        "<g class=\"tick\" stroke=\"#d62728\" stroke-width=\"1\">\n{ticks}</g>"
    );
    let _ = writeln!(
        svg,
        "<g class=\"reach\" stroke=\"#2ca02c\" stroke-width=\"3\">\n{reach}</g>"
    );
    let _ = writeln!(svg, "</svg>");
    Ok(svg)
}

/// Entry point: parses `args`, runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    match execute(cli, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
