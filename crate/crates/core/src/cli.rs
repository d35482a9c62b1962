//! Command-line front end. Exit codes: 0 success (or a verified dual), 1 a candidate that is
//! not dual, 2 any error. On a nonzero exit, stderr carries `{"error": kind, "message": text}`.

use crate::billiard::{iterate_trajectory, line_from_annulus, BilliardConfig};
use crate::counterexample::{counterexample_report_with, interval};
use crate::duality::{
    dual_candidate, dual_caustic_polygon, dual_caustic_smooth, verify_duality, DualityOptions, DualityReport, Verdict,
};
use crate::error::{Error, Result};
use crate::geometry::{ConvexBody, Shape};
use crate::invariants::{caustic_invariants, parameter_report};
use crate::io::{body_to_json, read_body, spec_from_json, trajectory_csv, write_text, BodyJson, Scene};
use crate::string::{string_construct, verify_caustic};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

pub const DEFAULT_RESOLUTION: usize = 1024;
pub const DEFAULT_ITERATIONS: usize = 100_000;
pub const DEFAULT_TOL: f64 = 1e-6;
pub const THREADS_ENV: &str = "MINKOSCOPE_THREADS";

#[derive(Debug, Clone, Parser)]
#[command(name = "minkoscope", version, about = "Planar Minkowski billiards, caustics and their duals")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub options: Options,
}

#[derive(Debug, Clone, Args)]
pub struct Options {
    /// Boundary samples used by constructions and checks.
    #[arg(long, global = true, default_value_t = DEFAULT_RESOLUTION)]
    pub resolution: usize,
    /// Orbit length N.
    #[arg(long, global = true, default_value_t = DEFAULT_ITERATIONS)]
    pub iterations: usize,
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Build the table of a string spec file {"caustic", "metric", "length"}.
    StringConstruct {
        spec: PathBuf,
        /// Overrides the length stored in the spec.
        #[arg(long)]
        length: Option<f64>,
    },
    /// Iterate the billiard map and export the orbit as CSV.
    Simulate {
        table: PathBuf,
        metric: PathBuf,
        /// Starting boundary coordinate; defaults to 0.
        #[arg(long)]
        t: Option<f64>,
        /// Starting s coordinate; drawn from the seed when absent.
        #[arg(long)]
        s: Option<f64>,
    },
    /// Construct the dual caustic and verify it.
    Dual { table: PathBuf, metric: PathBuf, caustic: PathBuf },
    /// Rotation number, minimal action, perimeter and Lazutkin parameter of a caustic.
    Invariants {
        table: PathBuf,
        metric: PathBuf,
        caustic: PathBuf,
        /// Also evaluate this dual caustic on the swapped billiard and compare.
        #[arg(long)]
        dual: Option<PathBuf>,
    },
    /// Check a given candidate pair of caustics.
    Verify { table: PathBuf, metric: PathBuf, caustic: PathBuf, dual: PathBuf },
    /// Smoothed ℓ1 family over the interval caustic with string length 6.
    Counterexample {
        #[arg(long, value_delimiter = ',', default_values_t = vec![2usize, 4, 8, 16, 32])]
        n: Vec<usize>,
        /// Replace the interval by the ellipse with semi-axes 1 and 1/J.
        #[arg(long, value_name = "J")]
        thin_ellipse: Option<f64>,
    },
    /// Draw bodies, optionally with an orbit of the first two (table, metric).
    Render {
        #[arg(required = true)]
        bodies: Vec<PathBuf>,
        #[arg(long, value_name = "STEPS")]
        orbit: Option<usize>,
    },
}

/// Text produced by a command plus its exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub text: String,
    pub code: i32,
    /// Reason for exit code 1.
    pub note: Option<String>,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0, note: None }
    }
}

#[derive(Serialize)]
struct ErrorJson<'a> {
    error: &'a str,
    message: String,
}

fn error_json(kind: &str, message: String) -> String {
    serde_json::to_string(&ErrorJson { error: kind, message }).expect("error serializes")
}

/// Parses `args` (including the program name), runs the command, writes the output and
/// returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return 0;
            }
            eprintln!("{}", error_json("usage", e.to_string().trim().to_string()));
            return 2;
        }
    };
    let result = execute(&cfg).and_then(|out| {
        match &cfg.options.out {
            Some(path) => write_text(path, &out.text)?,
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout.write_all(out.text.as_bytes()).map_err(|e| Error::Io(e.to_string()))?;
            }
        }
        Ok(out)
    });
    match result {
        Ok(out) => {
            if let Some(note) = out.note {
                eprintln!("{}", error_json("not-dual", note));
            }
            out.code
        }
        Err(e) => {
            eprintln!("{}", error_json(e.kind(), e.to_string()));
            2
        }
    }
}

fn validate(o: &Options) -> Result<()> {
    if o.resolution < 16 {
        return Err(Error::InvalidArgument(format!("resolution must be at least 16 (got {})", o.resolution)));
    }
    if o.iterations < 1 {
        return Err(Error::InvalidArgument("iterations must be at least 1".into()));
    }
    if !(o.tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive (got {})", o.tol)));
    }
    Ok(())
}

fn format_or(o: &Options, default: Format, allowed: &[Format]) -> Result<Format> {
    let f = o.format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(Error::InvalidArgument(format!("format {f:?} is not available for this command").to_lowercase()))
    }
}

/// Runs a parsed command without touching stdout or the output file.
pub fn execute(cfg: &RunConfig) -> Result<Output> {
    let o = &cfg.options;
    validate(o)?;
    match &cfg.command {
        Command::StringConstruct { spec, length } => cmd_string_construct(spec, *length, o),
        Command::Simulate { table, metric, t, s } => cmd_simulate(table, metric, *t, *s, o),
        Command::Dual { table, metric, caustic } => cmd_dual(table, metric, caustic, o),
        Command::Invariants { table, metric, caustic, dual } => cmd_invariants(table, metric, caustic, dual.as_deref(), o),
        Command::Verify { table, metric, caustic, dual } => cmd_verify(table, metric, caustic, dual, o),
        Command::Counterexample { n, thin_ellipse } => cmd_counterexample(n, *thin_ellipse, o),
        Command::Render { bodies, orbit } => cmd_render(bodies, *orbit, o),
    }
}

fn pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

/// Symmetric configuration when possible, otherwise the relaxed one.
fn config_for(k: &ConvexBody, t: &ConvexBody, resolution: usize) -> Result<BilliardConfig> {
    match BilliardConfig::new(k, t, resolution) {
        Err(Error::UnsupportedBody(_)) => BilliardConfig::piecewise(k, t, resolution),
        other => other,
    }
}

fn cmd_string_construct(spec: &Path, length: Option<f64>, o: &Options) -> Result<Output> {
    let text = std::fs::read_to_string(spec).map_err(|e| Error::Io(format!("{}: {e}", spec.display())))?;
    let spec = spec_from_json(&text, length)?;
    spec.validate()?;
    let k = string_construct(&spec, o.resolution)?;
    match format_or(o, Format::Json, &[Format::Json, Format::Svg])? {
        Format::Svg => Ok(Output::ok(Scene::new().body(&k).body(&spec.caustic).to_svg())),
        _ => Ok(Output::ok(body_to_json(&k) + "\n")),
    }
}

fn cmd_simulate(table: &Path, metric: &Path, t: Option<f64>, s: Option<f64>, o: &Options) -> Result<Output> {
    format_or(o, Format::Csv, &[Format::Csv])?;
    let k = read_body(table)?;
    let g = read_body(metric)?;
    let cfg = config_for(&k, &g, o.resolution)?;
    let mut rng = ChaCha8Rng::seed_from_u64(o.seed);
    let s = s.unwrap_or_else(|| rng.gen_range(-0.5..0.5));
    let start = line_from_annulus(&cfg, t.unwrap_or(0.0), s)?;
    let rec = iterate_trajectory(&cfg, &start, o.iterations)?;
    Ok(Output::ok(trajectory_csv(&cfg, &rec)?))
}

fn is_euclidean(t: &ConvexBody) -> bool {
    matches!(t.shape(), Shape::Disk { center, radius } if center.norm() == 0.0 && *radius == 1.0)
}

fn check_caustic(cfg: &BilliardConfig, c: &ConvexBody, o: &Options) -> Result<()> {
    let rep = verify_caustic(cfg, c, o.resolution, o.tol)?;
    if rep.is_caustic {
        Ok(())
    } else {
        Err(Error::NotACaustic(rep.max_deviation))
    }
}

fn duality_options(o: &Options) -> DualityOptions {
    DualityOptions { tol: o.tol, iterations: o.iterations, resolution: o.resolution, ..Default::default() }
}

fn verdict_output(text: String, report: &DualityReport) -> Output {
    match report.verdict {
        Verdict::Dual => Output::ok(text),
        Verdict::NotDual => Output {
            text,
            code: 1,
            note: Some(format!("candidate is not a dual caustic (tangency error {:e})", report.tangency_error)),
        },
    }
}

#[derive(Serialize)]
struct DualJson {
    method: &'static str,
    dual: Option<BodyJson>,
    report: Option<DualityReport>,
}

fn cmd_dual(table: &Path, metric: &Path, caustic: &Path, o: &Options) -> Result<Output> {
    format_or(o, Format::Json, &[Format::Json])?;
    let k = read_body(table)?;
    let t = read_body(metric)?;
    let c = read_body(caustic)?;
    let cfg = config_for(&k, &t, o.resolution)?;
    check_caustic(&cfg, &c, o)?;
    let (method, dual) = if !is_euclidean(&t) {
        match dual_candidate(&cfg, &c, o.resolution)? {
            Some(d) => ("half-planes", d),
            None => {
                let text = pretty(&DualJson { method: "half-planes", dual: None, report: None });
                let note = "the images of the tangent lines under alpha bound no convex set".to_string();
                return Ok(Output { text, code: 1, note: Some(note) });
            }
        }
    } else if c.vertices().map_or(false, |v| v.len() >= 3) {
        ("polygon", dual_caustic_polygon(&k, &c)?.body)
    } else {
        ("smooth", dual_caustic_smooth(&k, &c, o.resolution)?)
    };
    let report = verify_duality(&cfg, &c, &dual, &duality_options(o));
    let text = pretty(&DualJson { method, dual: Some(BodyJson::from(&dual)), report: Some(report.clone()) });
    Ok(verdict_output(text, &report))
}

fn cmd_verify(table: &Path, metric: &Path, caustic: &Path, dual: &Path, o: &Options) -> Result<Output> {
    format_or(o, Format::Json, &[Format::Json])?;
    let k = read_body(table)?;
    let t = read_body(metric)?;
    let c = read_body(caustic)?;
    let d = read_body(dual)?;
    let cfg = config_for(&k, &t, o.resolution)?;
    check_caustic(&cfg, &c, o)?;
    let report = verify_duality(&cfg, &c, &d, &duality_options(o));
    Ok(verdict_output(pretty(&report), &report))
}

fn cmd_invariants(table: &Path, metric: &Path, caustic: &Path, dual: Option<&Path>, o: &Options) -> Result<Output> {
    format_or(o, Format::Json, &[Format::Json])?;
    let k = read_body(table)?;
    let t = read_body(metric)?;
    let c = read_body(caustic)?;
    let cfg = config_for(&k, &t, o.resolution)?;
    check_caustic(&cfg, &c, o)?;
    let text = match dual {
        Some(d) => pretty(&parameter_report(&cfg, &c, &read_body(d)?, o.resolution, o.iterations)?),
        None => pretty(&caustic_invariants(&cfg, &c, o.resolution, o.iterations)?),
    };
    Ok(Output::ok(text))
}

fn cmd_counterexample(n: &[usize], thin: Option<f64>, o: &Options) -> Result<Output> {
    let caustic = match thin {
        Some(j) if j >= 1.0 => ConvexBody::ellipse(1.0, 1.0 / j)?,
        Some(j) => return Err(Error::InvalidArgument(format!("thin-ellipse parameter {j} must be at least 1"))),
        None => interval(),
    };
    let report = counterexample_report_with(n, caustic, o.resolution)?;
    match format_or(o, Format::Csv, &[Format::Csv, Format::Json])? {
        Format::Json => Ok(Output::ok(pretty(&report))),
        _ => {
            let mut buf = Vec::new();
            report.write_csv(&mut buf)?;
            Ok(Output::ok(String::from_utf8(buf).map_err(|e| Error::Io(e.to_string()))?))
        }
    }
}

fn cmd_render(bodies: &[PathBuf], orbit: Option<usize>, o: &Options) -> Result<Output> {
    format_or(o, Format::Svg, &[Format::Svg])?;
    let loaded = bodies.iter().map(|p| read_body(p)).collect::<Result<Vec<_>>>()?;
    let mut scene = Scene::new();
    for b in &loaded {
        scene = scene.body(b);
    }
    if let Some(steps) = orbit {
        if loaded.len() < 2 {
            return Err(Error::InvalidArgument("an orbit needs a table and a metric body".into()));
        }
        let cfg = config_for(&loaded[0], &loaded[1], o.resolution)?;
        let mut rng = ChaCha8Rng::seed_from_u64(o.seed);
        let start = line_from_annulus(&cfg, 0.0, rng.gen_range(-0.5..0.5))?;
        let rec = iterate_trajectory(&cfg, &start, steps)?;
        scene = scene.polyline(rec.impacts.clone());
    }
    Ok(Output::ok(scene.to_svg()))
}
