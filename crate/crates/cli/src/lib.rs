//! Command-line front end for `convexlab`.
//!
//! [`run`] is the whole program minus process plumbing, so tests can drive
//! it in-process. Exit codes: 0 success, 2 usage or parameter error, 3 a
//! certificate or convexity check failed on freshly built output.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use convexlab::analyze::{count_3aps, max_rep, Stat, StatReport, StatSelection};
use convexlab::construct::{
    geometric_set, jarnik_polyline, nested_parabola, rich_sum, NestedParabolaParams,
};
use convexlab::sidon::{
    default_prune_probability, exact_max_sidon_with, greedy_sidon, random_prune_sidon, CandidateOrder,
    SidonResult,
};
use convexlab::{setfile, Error, PointSet, Rational};
use rayon::prelude::*;
use serde::Serialize;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

/// Header of the scaling CSV.
pub const SCALING_HEADER: [&str; 7] = [
    "family",
    "params",
    "set_size",
    "t3_nontrivial",
    "max_rep",
    "guaranteed",
    "elapsed_ms",
];

/// Significant digits for decimal renderings in reports (display only).
const DIGITS: usize = 12;

#[derive(Parser, Debug)]
#[command(name = "convexlab", version, about = "Extremal convex sets and their additive statistics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a set, write it as a SetFile and its certificate as `<out>.cert.json`.
    Construct {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        n: u64,
        /// Progression length (nested-parabola only).
        #[arg(long)]
        m: Option<u64>,
        /// Curvature override as `p/q` (nested-parabola only).
        #[arg(long)]
        a: Option<String>,
        /// Output path; the set goes to standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute statistics of a SetFile.
    Analyze {
        #[arg(long)]
        input: PathBuf,
        /// Comma-separated subset of t3, energy, max-rep, longest-ap, convexity.
        #[arg(long, value_delimiter = ',', value_enum)]
        stats: Option<Vec<StatArg>>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Search for a large Sidon subset.
    Sidon {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        mode: SidonMode,
        /// Node budget for exact mode.
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
        /// Sampling probability `p/q` for prune mode; defaults to
        /// `min(1, c |A|^-(73/150 + eps))`.
        #[arg(long)]
        p: Option<String>,
        #[arg(long, default_value_t = 1.0)]
        c: f64,
        #[arg(long, default_value_t = 0.0)]
        eps: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Try candidates with fewest quadruples first (exact mode).
        #[arg(long)]
        degree_order: bool,
    },
    /// Build a family over a grid, fit log-log slopes, write CSV rows.
    Scaling {
        #[arg(long, value_enum)]
        kind: ScalingKind,
        /// Comma-separated grid: values of m (n = 8m^2) or of n (rich-sum).
        #[arg(long, value_delimiter = ',', required = true)]
        grid: Vec<u64>,
        /// CSV destination; the JSON summary is printed to standard output.
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    NestedParabola,
    RichSum,
    Jarnik,
    Geometric,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScalingKind {
    NestedParabola,
    RichSum,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StatArg {
    T3,
    Energy,
    MaxRep,
    LongestAp,
    Convexity,
}

impl From<StatArg> for Stat {
    fn from(s: StatArg) -> Stat {
        match s {
            StatArg::T3 => Stat::T3,
            StatArg::Energy => Stat::Energy,
            StatArg::MaxRep => Stat::MaxRep,
            StatArg::LongestAp => Stat::LongestAp,
            StatArg::Convexity => Stat::Convexity,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum SidonMode {
    Exact,
    Prune,
    Greedy,
}

/// A failure carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn verify(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_VERIFY,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Verification(_) => Failure::verify(e.to_string()),
            _ => Failure::usage(e.to_string()),
        }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure::usage(format!("{}: {e}", path.display()))
}

type CmdResult = Result<(), Failure>;

/// Runs the program with `args` (including the program name), writing
/// results to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Construct { kind, n, m, a, out: path } => cmd_construct(kind, n, m, a, path.as_deref(), out),
        Command::Analyze { input, stats, format } => cmd_analyze(&input, stats, format, out),
        Command::Sidon {
            input,
            mode,
            budget,
            p,
            c,
            eps,
            seed,
            degree_order,
        } => cmd_sidon(&input, mode, budget, p, c, eps, seed, degree_order, out),
        Command::Scaling { kind, grid, out: path } => cmd_scaling(kind, &grid, &path, out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn parse_rational(flag: &str, s: &str) -> Result<Rational, Failure> {
    s.parse()
        .map_err(|e| Failure::usage(format!("--{flag}: {e}")))
}

fn read_set(path: &Path) -> Result<PointSet, Failure> {
    let text = fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    setfile::parse(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> CmdResult {
    let text = serde_json::to_string_pretty(value).expect("report types serialize");
    writeln!(out, "{text}").map_err(|e| Failure::usage(e.to_string()))
}

fn cert_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".cert.json");
    PathBuf::from(s)
}

#[derive(Serialize)]
struct GeometricCertificate {
    n: u64,
    ratio: u64,
}

fn cmd_construct(
    kind: Kind,
    n: u64,
    m: Option<u64>,
    a: Option<String>,
    path: Option<&Path>,
    out: &mut dyn Write,
) -> CmdResult {
    if !matches!(kind, Kind::NestedParabola) && (m.is_some() || a.is_some()) {
        return Err(Failure::usage("--m and --a apply to nested-parabola only"));
    }
    let (set, header, cert): (PointSet, Vec<String>, serde_json::Value) = match kind {
        Kind::NestedParabola => {
            let m = m.ok_or_else(|| Failure::usage("nested-parabola needs --m"))?;
            let a = a.as_deref().map(|s| parse_rational("a", s)).transpose()?;
            let (set, cert) = nested_parabola(&NestedParabolaParams { n, m, a })?;
            let header = vec![format!("nested-parabola n={n} m={m} a={}", cert.curvature)];
            (set.into_points(), header, serde_json::to_value(&cert).expect("serializable"))
        }
        Kind::RichSum => {
            let (set, cert) = rich_sum(n)?;
            let header = vec![format!("rich-sum n={n} centre={}", cert.center)];
            (set.into_points(), header, serde_json::to_value(&cert).expect("serializable"))
        }
        Kind::Jarnik => {
            let poly = jarnik_polyline(n)?;
            poly.verify()?;
            let proj = PointSet::from_unsorted(
                poly.points.iter().map(|p| Rational::from(p.projection())).collect(),
            );
            let header = vec![format!("jarnik n={n}: values x + y of the polyline vertices")];
            (proj, header, serde_json::to_value(&poly).expect("serializable"))
        }
        Kind::Geometric => {
            let set = geometric_set(n)?;
            let header = vec![format!("geometric n={n}")];
            let cert = GeometricCertificate { n, ratio: 2 };
            (set.into_points(), header, serde_json::to_value(&cert).expect("serializable"))
        }
    };
    let text = setfile::to_string_with_header(&set, &header);

    // re-read what is about to be written and re-verify it from scratch
    let reparsed = setfile::parse(&text).map_err(|e| Failure::verify(format!("output does not re-parse: {e}")))?;
    if reparsed != set {
        return Err(Failure::verify("output does not round-trip"));
    }
    reverify(kind, &reparsed, &cert)?;

    match path {
        Some(p) => {
            fs::write(p, &text).map_err(|e| io_failure(p, e))?;
            let cp = cert_path(p);
            let cert_text = serde_json::to_string_pretty(&cert).expect("serializable") + "\n";
            fs::write(&cp, cert_text).map_err(|e| io_failure(&cp, e))?;
        }
        None => out.write_all(text.as_bytes()).map_err(|e| Failure::usage(e.to_string()))?,
    }
    Ok(())
}

fn reverify(kind: Kind, set: &PointSet, cert: &serde_json::Value) -> CmdResult {
    let bad = |e: serde_json::Error| Failure::verify(format!("certificate does not re-load: {e}"));
    match kind {
        Kind::NestedParabola => {
            let c: convexlab::construct::ApCertificate = serde_json::from_value(cert.clone()).map_err(bad)?;
            c.verify(set).map_err(|e| Failure::verify(e.to_string()))?;
        }
        Kind::RichSum => {
            let c: convexlab::construct::RichSumCertificate = serde_json::from_value(cert.clone()).map_err(bad)?;
            c.verify(set).map_err(|e| Failure::verify(e.to_string()))?;
        }
        Kind::Jarnik => {
            let c: convexlab::construct::JarnikPolyline = serde_json::from_value(cert.clone()).map_err(bad)?;
            c.verify().map_err(|e| Failure::verify(e.to_string()))?;
            return Ok(());
        }
        Kind::Geometric => {}
    }
    if set.len() < 2 || !set.check_convex()?.is_convex() {
        return Err(Failure::verify("constructed set is not convex"));
    }
    Ok(())
}

fn cmd_analyze(input: &Path, stats: Option<Vec<StatArg>>, format: Format, out: &mut dyn Write) -> CmdResult {
    let set = read_set(input)?;
    let sel = match stats {
        Some(list) => StatSelection::of(&list.into_iter().map(Stat::from).collect::<Vec<_>>()),
        None => StatSelection::all(),
    };
    let report = StatReport::compute(&set, &sel)?;
    match format {
        Format::Json => write_json(out, &report),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(StatReport::CSV_HEADER)
                .and_then(|_| w.write_record(report.csv_record()))
                .and_then(|_| w.flush().map_err(csv::Error::from))
                .map_err(|e| Failure::usage(e.to_string()))
        }
    }
}

#[derive(Serialize)]
struct SidonOutput {
    mode: SidonMode,
    input_size: usize,
    /// Sampling probability (prune mode).
    p: Option<Rational>,
    seed: Option<u64>,
    #[serde(flatten)]
    result: SidonResult,
    warning: Option<String>,
}

#[allow(clippy::too_many_arguments)]
fn cmd_sidon(
    input: &Path,
    mode: SidonMode,
    budget: u64,
    p: Option<String>,
    c: f64,
    eps: f64,
    seed: u64,
    degree_order: bool,
    out: &mut dyn Write,
) -> CmdResult {
    let set = read_set(input)?;
    let mut output = SidonOutput {
        mode,
        input_size: set.len(),
        p: None,
        seed: None,
        result: SidonResult {
            subset: PointSet::empty(),
            exact: false,
            nodes_explored: 0,
            quadruples_removed: 0,
        },
        warning: None,
    };
    output.result = match mode {
        SidonMode::Exact => {
            let order = if degree_order {
                CandidateOrder::Degree
            } else {
                CandidateOrder::Ascending
            };
            let r = exact_max_sidon_with(&set, budget, order)?;
            if !r.exact {
                output.warning = Some(format!(
                    "node budget {budget} exhausted; subset is a lower bound only"
                ));
            }
            r
        }
        SidonMode::Prune => {
            let p = match p {
                Some(s) => parse_rational("p", &s)?,
                None => default_prune_probability(set.len(), c, eps)?,
            };
            let r = random_prune_sidon(&set, &p, seed)?;
            output.p = Some(p);
            output.seed = Some(seed);
            r
        }
        SidonMode::Greedy => greedy_sidon(&set),
    };
    write_json(out, &output)
}

/// Least-squares line through `(ln x, ln y)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogLogFit {
    pub slope: f64,
    pub r2: f64,
    pub points: usize,
}

/// Fits `ln y = slope ln x + c` over the pairs with `x, y > 0`. `None` with
/// fewer than two usable points or no spread in `x`.
pub fn fit_loglog(pairs: &[(f64, f64)]) -> Option<LogLogFit> {
    let pts: Vec<(f64, f64)> = pairs
        .iter()
        .filter(|&&(x, y)| x > 0.0 && y > 0.0)
        .map(|&(x, y)| (x.ln(), y.ln()))
        .collect();
    let k = pts.len() as f64;
    if pts.len() < 2 {
        return None;
    }
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = pts.iter().map(|p| (p.1 - my).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    let r2 = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    Some(LogLogFit {
        slope,
        r2,
        points: pts.len(),
    })
}

/// Display-only rendering of a float with [`DIGITS`] significant digits.
fn decimal(x: f64) -> String {
    match Rational::from_f64(x) {
        Some(r) => r.to_decimal(DIGITS),
        None => x.to_string(),
    }
}

/// One grid point of a scaling run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScalingRow {
    pub family: ScalingKind,
    pub params: String,
    pub set_size: u64,
    pub t3_nontrivial: u64,
    pub max_rep: u64,
    /// Certified count: progressions for nested-parabola, `r(2x)` lower
    /// bound for rich-sum.
    pub guaranteed: u64,
    pub elapsed_ms: u64,
}

impl ScalingRow {
    fn record(&self) -> [String; 7] {
        [
            match self.family {
                ScalingKind::NestedParabola => "nested-parabola",
                ScalingKind::RichSum => "rich-sum",
            }
            .to_string(),
            self.params.clone(),
            self.set_size.to_string(),
            self.t3_nontrivial.to_string(),
            self.max_rep.to_string(),
            self.guaranteed.to_string(),
            self.elapsed_ms.to_string(),
        ]
    }
}

/// Builds, verifies and measures one grid point.
pub fn scaling_row(kind: ScalingKind, g: u64) -> Result<ScalingRow, String> {
    let started = Instant::now();
    let (set, params, guaranteed) = match kind {
        ScalingKind::NestedParabola => {
            let n = 8 * g * g;
            let (set, cert) = nested_parabola(&NestedParabolaParams::new(n, g)).map_err(|e| e.to_string())?;
            cert.verify(set.points()).map_err(|e| e.to_string())?;
            (set.into_points(), format!("n={n};m={g}"), cert.progressions.len() as u64)
        }
        ScalingKind::RichSum => {
            let (set, cert) = rich_sum(g).map_err(|e| e.to_string())?;
            cert.verify(set.points()).map_err(|e| e.to_string())?;
            (set.into_points(), format!("n={g}"), cert.guaranteed_reps)
        }
    };
    if !set.check_convex().map_err(|e| e.to_string())?.is_convex() {
        return Err(format!("{params}: set is not convex"));
    }
    let t3 = count_3aps(&set);
    let (_, mr) = max_rep(&set).map_err(|e| e.to_string())?;
    Ok(ScalingRow {
        family: kind,
        params,
        set_size: set.len() as u64,
        t3_nontrivial: t3.nontrivial,
        max_rep: mr,
        guaranteed,
        elapsed_ms: started.elapsed().as_millis() as u64,
    })
}

#[derive(Serialize)]
struct FitOut {
    slope: String,
    r2: String,
    points: usize,
}

#[derive(Serialize)]
struct ScalingSummary {
    family: ScalingKind,
    grid: Vec<u64>,
    rows: Vec<ScalingRow>,
    fitted_exponents: BTreeMap<String, Option<FitOut>>,
    /// `max_rep / set_size^(2/3)` per row.
    schoen_ratio: Vec<String>,
    schoen_ratio_max: String,
}

/// Worker count: `CONVEXLAB_THREADS` if set to a positive integer, else
/// rayon's default.
pub fn thread_count() -> Option<usize> {
    std::env::var("CONVEXLAB_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&t| t > 0)
}

fn cmd_scaling(kind: ScalingKind, grid: &[u64], path: &Path, out: &mut dyn Write) -> CmdResult {
    if grid.len() < 3 {
        return Err(Failure::usage(format!(
            "a fit needs at least 3 grid points, got {}",
            grid.len()
        )));
    }
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = thread_count() {
        builder = builder.num_threads(t);
    }
    let pool = builder.build().map_err(|e| Failure::usage(e.to_string()))?;
    // collect keeps grid order whatever the completion order
    let rows: Vec<Result<ScalingRow, String>> =
        pool.install(|| grid.par_iter().map(|&g| scaling_row(kind, g)).collect());
    let rows: Vec<ScalingRow> = rows.into_iter().collect::<Result<_, _>>().map_err(|e| {
        if e.contains("need n >=") || e.contains("no fractions") || e.contains("must be") {
            Failure::usage(e)
        } else {
            Failure::verify(e)
        }
    })?;

    let mut w = csv::Writer::from_path(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    w.write_record(SCALING_HEADER)
        .map_err(|e| Failure::usage(e.to_string()))?;
    for r in &rows {
        w.write_record(r.record()).map_err(|e| Failure::usage(e.to_string()))?;
    }
    w.flush().map_err(|e| Failure::usage(e.to_string()))?;

    let size = |r: &ScalingRow| r.set_size as f64;
    let mut fits = BTreeMap::new();
    for (name, pick) in [
        ("t3_nontrivial", (|r: &ScalingRow| r.t3_nontrivial) as fn(&ScalingRow) -> u64),
        ("max_rep", |r: &ScalingRow| r.max_rep),
        ("guaranteed", |r: &ScalingRow| r.guaranteed),
    ] {
        let pairs: Vec<(f64, f64)> = rows.iter().map(|r| (size(r), pick(r) as f64)).collect();
        fits.insert(
            name.to_string(),
            fit_loglog(&pairs).map(|f| FitOut {
                slope: decimal(f.slope),
                r2: decimal(f.r2),
                points: f.points,
            }),
        );
    }
    let ratios: Vec<f64> = rows
        .iter()
        .map(|r| r.max_rep as f64 / size(r).powf(2.0 / 3.0))
        .collect();
    let summary = ScalingSummary {
        family: kind,
        grid: grid.to_vec(),
        rows,
        fitted_exponents: fits,
        schoen_ratio: ratios.iter().map(|&x| decimal(x)).collect(),
        schoen_ratio_max: decimal(ratios.iter().copied().fold(0.0, f64::max)),
    };
    write_json(out, &summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fit_recovers_power_law() {
        let pairs: Vec<(f64, f64)> = (1..6).map(|k| (k as f64 * 10.0, 3.0 * (k as f64 * 10.0).powf(1.5))).collect();
        let f = fit_loglog(&pairs).unwrap();
        assert!((f.slope - 1.5).abs() < 1e-12);
        assert!((f.r2 - 1.0).abs() < 1e-12);
        assert!(fit_loglog(&[(1.0, 1.0)]).is_none());
    }

    #[test]
    fn decimal_is_exact_binary_expansion() {
        assert_eq!(decimal(0.5), "0.5");
        assert_eq!(decimal(1.5), "1.5");
        assert_eq!(decimal(-2.0), "-2");
        assert_eq!(decimal(0.1), "0.1");
    }
}
