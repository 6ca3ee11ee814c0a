//! Command-line front end.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::clustering::{cluster, weighted_graph, Algorithm, ClusterInput};
use crate::decomposition::Decomposition;
use crate::distmap::DistributionMap;
use crate::error::Error;
use crate::graph::{parse_class_graph, parse_member_graph, parse_package_map, write_class_graph, DEFAULT_SEPARATOR};
use crate::metrics::{auth_decomposition, occupancy, stability, VersionSeries, DEFAULT_AUTH_THRESHOLD};
use crate::report::{self, parse_measures, Measure, MetricReport, DEFAULT_MEASURES};

#[derive(Debug, Parser)]
#[command(name = "sarf-kit", version, about = "Dependency-graph clustering and decomposition metrics")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cluster a member or module dependency graph.
    Cluster(ClusterArgs),
    /// Emit the Dedication-weighted module graph only.
    Dedication(GraphArgs),
    /// Compare a computed decomposition with a reference one.
    Eval(EvalArgs),
    /// Derive a reference decomposition from package structure.
    Authdecomp(AuthArgs),
    /// MoJoSim between consecutive versions.
    Stability(StabilityArgs),
    /// Share of modules in the largest package.
    Occupancy(OccupancyArgs),
    /// Distribution map of computed clusters over reference groups.
    Distmap(DistmapArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Level {
    Member,
    Module,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
    Text,
    Svg,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Tsv => "tsv",
            Format::Text => "text",
            Format::Svg => "svg",
        })
    }
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    /// Member graph (5 columns) or module graph (2 or 3 columns) TSV.
    #[arg(long)]
    pub input: PathBuf,
    /// Input level; inferred from the column count when omitted.
    #[arg(long, value_enum)]
    pub level: Option<Level>,
    /// Separator between an outer and a nested module name.
    #[arg(long, default_value_t = DEFAULT_SEPARATOR)]
    pub separator: char,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ClusterArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long, default_value = "sarf", value_parser = parse_algorithm)]
    pub algorithm: Algorithm,
    /// Decomposition output format.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Where to write the dendrogram JSON.
    #[arg(long)]
    pub dendrogram: Option<PathBuf>,
    /// Where to write the weighted module graph TSV.
    #[arg(long)]
    pub weights: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// Computed decomposition JSON.
    #[arg(long)]
    pub input: PathBuf,
    /// Reference decomposition JSON.
    #[arg(long)]
    pub reference: PathBuf,
    /// Comma-separated measures: mojofm, mojosim, mojo, mno, max_mno, ned, k, n.
    #[arg(long)]
    pub measures: Option<String>,
    /// Compare only the modules both decompositions contain.
    #[arg(long)]
    pub restrict: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AuthArgs {
    /// Package TSV: module, package path.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value_t = DEFAULT_AUTH_THRESHOLD)]
    pub threshold: usize,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct StabilityArgs {
    /// Decomposition JSON files in version order; repeat the flag.
    #[arg(long, required = true)]
    pub input: Vec<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OccupancyArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DistmapArgs {
    /// Computed decomposition JSON.
    #[arg(long)]
    pub input: PathBuf,
    /// Reference decomposition JSON.
    #[arg(long)]
    pub reference: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Svg)]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

fn parse_algorithm(s: &str) -> Result<Algorithm, String> {
    s.parse()
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(PathBuf, std::io::Error),
    Domain(Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Usage(_) | CliError::Io(..) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Io(p, e) => write!(f, "{}: {e}", p.display()),
            CliError::Domain(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(path.to_owned(), e))
}

fn read_decomposition(path: &Path) -> CliResult<Decomposition> {
    Decomposition::from_json(&read(path)?).map_err(|e| match e {
        Error::Json(j) => CliError::Domain(Error::domain(format!("{}: {j}", path.display()))),
        other => CliError::Domain(other),
    })
}

fn unsupported(format: Format, command: &str, allowed: &str) -> CliError {
    CliError::Usage(format!("`{command}` does not support --format {format} (use {allowed})"))
}

/// Column count of the first data row; 5 means member level.
fn infer_level(text: &str) -> CliResult<Level> {
    let first = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .find(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'));
    match first.map(|(i, l)| (i, l.split('\t').count())) {
        Some((_, 5)) => Ok(Level::Member),
        Some((_, 2 | 3)) => Ok(Level::Module),
        Some((line, n)) => Err(CliError::Domain(Error::parse(
            line,
            format!("cannot infer input level from {n} columns (expected 5, or 2 to 3)"),
        ))),
        None => Err(CliError::Domain(Error::EmptyGraph)),
    }
}

fn load_graph(args: &GraphArgs) -> CliResult<ClusterInput> {
    let text = read(&args.input)?;
    let level = match args.level {
        Some(l) => l,
        None => infer_level(&text)?,
    };
    Ok(match level {
        Level::Member => ClusterInput::Members(parse_member_graph(&text)?),
        Level::Module => ClusterInput::Modules(parse_class_graph(&text)?),
    })
}

/// Writes to `path`, or appends to `stdout` when absent.
fn emit(path: Option<&Path>, content: &str, stdout: &mut Vec<u8>) -> CliResult<()> {
    match path {
        Some(p) => std::fs::write(p, content).map_err(|e| CliError::Io(p.to_owned(), e)),
        None => {
            stdout.extend_from_slice(content.as_bytes());
            Ok(())
        }
    }
}

fn decomposition_tsv(d: &Decomposition) -> String {
    let mut s = String::new();
    for (name, members) in d.clusters() {
        for m in members {
            s.push_str(m);
            s.push('\t');
            s.push_str(name);
            s.push('\n');
        }
    }
    s
}

fn decomposition_text(d: &Decomposition) -> String {
    let mut s = String::new();
    for (name, members) in d.clusters() {
        let list: Vec<&str> = members.iter().map(String::as_str).collect();
        s.push_str(&format!("{name} ({}): {}\n", members.len(), list.join(" ")));
    }
    s
}

fn run_cluster(a: &ClusterArgs, out: &mut Vec<u8>) -> CliResult<()> {
    if a.format == Format::Svg {
        return Err(unsupported(a.format, "cluster", "json, tsv or text"));
    }
    let input = load_graph(&a.graph)?;
    let result = cluster(&input, a.algorithm, a.graph.separator)?;
    if let Some(p) = &a.dendrogram {
        emit(Some(p), &result.dendrogram.to_json(), out)?;
    }
    if let Some(p) = &a.weights {
        emit(Some(p), &write_class_graph(&result.weighted), out)?;
    }
    let d = &result.decomposition;
    let body = match a.format {
        Format::Tsv => decomposition_tsv(d),
        Format::Text => decomposition_text(d),
        _ => d.to_json(),
    };
    emit(a.graph.output.as_deref(), &body, out)
}

fn run_dedication(a: &GraphArgs, out: &mut Vec<u8>) -> CliResult<()> {
    let input = load_graph(a)?;
    let g = weighted_graph(&input, Algorithm::Sarf, a.separator)?;
    emit(a.output.as_deref(), &write_class_graph(&g), out)
}

fn run_eval(a: &EvalArgs, out: &mut Vec<u8>) -> CliResult<()> {
    if !matches!(a.format, Format::Json | Format::Text) {
        return Err(unsupported(a.format, "eval", "json or text"));
    }
    let measures: Vec<Measure> = match &a.measures {
        Some(csv) => parse_measures(csv).map_err(CliError::Usage)?,
        None => DEFAULT_MEASURES.to_vec(),
    };
    let mut computed = read_decomposition(&a.input)?;
    let mut reference = read_decomposition(&a.reference)?;
    if a.restrict {
        let shared: BTreeSet<String> = computed
            .universe()
            .filter(|m| reference.contains(m))
            .map(str::to_owned)
            .collect();
        if shared.is_empty() {
            return Err(Error::domain("the decompositions share no modules").into());
        }
        computed = computed.restricted_to(&shared);
        reference = reference.restricted_to(&shared);
    }
    let r = MetricReport::evaluate(&computed, &reference, &measures)?;
    let body = match a.format {
        Format::Json => r.to_json(),
        _ => r.to_text(),
    };
    emit(a.output.as_deref(), &body, out)
}

fn run_authdecomp(a: &AuthArgs, out: &mut Vec<u8>) -> CliResult<()> {
    let p = parse_package_map(&read(&a.input)?)?;
    let d = auth_decomposition(&p, a.threshold)?;
    emit(a.output.as_deref(), &d.to_json(), out)
}

fn version_label(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn run_stability(a: &StabilityArgs, out: &mut Vec<u8>) -> CliResult<()> {
    if !matches!(a.format, Format::Json | Format::Text) {
        return Err(unsupported(a.format, "stability", "json or text"));
    }
    if a.input.len() < 2 {
        return Err(CliError::Usage(format!(
            "stability needs at least 2 --input files, got {}",
            a.input.len()
        )));
    }
    let mut versions = Vec::with_capacity(a.input.len());
    for p in &a.input {
        versions.push((version_label(p), read_decomposition(p)?));
    }
    let r = stability(&VersionSeries::new(versions)?)?;
    let body = match a.format {
        Format::Json => report::stability_json(&r),
        _ => report::stability_text(&r),
    };
    emit(a.output.as_deref(), &body, out)
}

fn run_occupancy(a: &OccupancyArgs, out: &mut Vec<u8>, err: &mut Vec<u8>) -> CliResult<()> {
    if !matches!(a.format, Format::Json | Format::Text) {
        return Err(unsupported(a.format, "occupancy", "json or text"));
    }
    let o = occupancy(&parse_package_map(&read(&a.input)?)?)?;
    if o.exceeds_limit() {
        let _ = writeln!(
            err,
            "warning: occupancy {:.1}% exceeds {:.0}%; package `{}` dominates and the package structure is a weak reference",
            o.percent,
            crate::metrics::OCCUPANCY_LIMIT,
            o.largest_package
        );
    }
    let body = match a.format {
        Format::Json => report::occupancy_json(&o),
        _ => report::occupancy_text(&o),
    };
    emit(a.output.as_deref(), &body, out)
}

fn run_distmap(a: &DistmapArgs, out: &mut Vec<u8>) -> CliResult<()> {
    if !matches!(a.format, Format::Svg | Format::Text) {
        return Err(unsupported(a.format, "distmap", "svg or text"));
    }
    let map = DistributionMap::new(&read_decomposition(&a.input)?, &read_decomposition(&a.reference)?)?;
    let body = match a.format {
        Format::Svg => map.to_svg(),
        _ => map.to_text(),
    };
    emit(a.output.as_deref(), &body, out)
}

/// Runs one command; returns the exit code with captured stdout and stderr.
pub fn run<I, T>(args: I) -> (i32, Vec<u8>, Vec<u8>)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let mut out = Vec::new();
    let mut err = Vec::new();
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                out.extend_from_slice(rendered.as_bytes());
            } else {
                err.extend_from_slice(rendered.as_bytes());
            }
            return (code, out, err);
        }
    };
    let result = match &cli.command {
        Command::Cluster(a) => run_cluster(a, &mut out),
        Command::Dedication(a) => run_dedication(a, &mut out),
        Command::Eval(a) => run_eval(a, &mut out),
        Command::Authdecomp(a) => run_authdecomp(a, &mut out),
        Command::Stability(a) => run_stability(a, &mut out),
        Command::Occupancy(a) => run_occupancy(a, &mut out, &mut err),
        Command::Distmap(a) => run_distmap(a, &mut out),
    };
    match result {
        Ok(()) => (0, out, err),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            (e.exit_code(), out, err)
        }
    }
}
