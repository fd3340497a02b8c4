//! The `catzero` command line: file loading, subcommand dispatch, reports
//! and exit codes.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{enumerate_cubes, max_cube_dimension, maximal_cubes, Cube, Point, DEFAULT_EMBEDDING_TOL};
use crate::geodesic::{
    brute_force_geodesic, extended_normal_cube_path, geodesic, GeodesicError, GeodesicOptions, GeodesicPath,
    DEFAULT_SEQUENCE_GUARD, DEFAULT_TOL,
};
use crate::halfspace::{halfspace_to_pip, pip_to_halfspace, reroot, HalfspaceSystem, RawHalfspace};
use crate::interval::{embed_interval, interval_endpoints, IntervalError, IntervalFrame};
use crate::json::{parse_pip, parse_point, CubeJson, JsonError, PathJson, Real};
use crate::pip::{enumerate_consistent_ideals, OrderIdeal, Pip, PipError, DEFAULT_ENUMERATION_GUARD};
use crate::random::random_point;
use crate::recsys::{pip_to_reconfigurable, state_complex, RecsysError, DEFAULT_STATE_GUARD};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_INVALID: u8 = 2;
pub const EXIT_UNCERTIFIED: u8 = 3;
pub const EXIT_GUARD: u8 = 4;

#[derive(Parser, Debug)]
#[command(name = "catzero", version, about = "Geodesics in CAT(0) cube complexes given as posets with inconsistent pairs")]
pub struct Cli {
    #[command(flatten)]
    pub config: ConfigArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct ConfigArgs {
    /// Solver and certification tolerance, in (0, 1e-2).
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    /// Cap on shortcut insertions (default: 10 m² for m maximal antichains).
    #[arg(long, global = true)]
    pub max_iter: Option<usize>,
    /// Seed for randomly drawn endpoints.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the JSON result here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub json: Option<PathBuf>,
    /// Suppress the human-readable summary on stderr.
    #[arg(long, global = true)]
    pub quiet: bool,
}

#[derive(Args, Debug, Clone)]
pub struct Endpoints {
    #[arg(long)]
    pub pip: PathBuf,
    #[arg(long)]
    pub from: PathBuf,
    #[arg(long)]
    pub to: PathBuf,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Check a PIP file and report the size of its complex.
    Validate {
        #[arg(long)]
        pip: PathBuf,
    },
    /// Certified geodesic between two points.
    Geodesic(Endpoints),
    /// Geodesic distance only.
    Distance(Endpoints),
    /// Compare the main algorithm with exhaustive search over cube sequences.
    Oracle {
        #[arg(long)]
        pip: PathBuf,
        /// Start point; random pairs are drawn when both ends are omitted.
        #[arg(long, requires = "to")]
        from: Option<PathBuf>,
        #[arg(long, requires = "from")]
        to: Option<PathBuf>,
        /// Number of random pairs.
        #[arg(long, default_value_t = 10)]
        samples: usize,
    },
    /// Lattice embedding of the interval spanned by two points.
    EmbedInterval(Endpoints),
    /// Extended normal cube path between two points.
    NormalPath(Endpoints),
    /// Reconfigurable system of a PIP and the size of its state complex.
    StateComplex {
        #[arg(long)]
        pip: PathBuf,
    },
    /// Convert a PIP to its halfspace system, or a system back to a PIP.
    Halfspace {
        #[arg(long, conflicts_with = "system", required_unless_present = "system")]
        pip: Option<PathBuf>,
        #[arg(long)]
        system: Option<PathBuf>,
    },
    /// The PIP of the same complex rooted at another vertex.
    Reroot {
        #[arg(long)]
        pip: PathBuf,
        /// Comma-separated elements of the new root; empty for the old root.
        #[arg(long, value_name = "ELEMENTS", allow_hyphen_values = true)]
        at: String,
    },
}

/// Settings shared by every subcommand.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub tol: f64,
    pub max_iter: Option<usize>,
    pub seed: u64,
    pub output: Option<PathBuf>,
    pub quiet: bool,
}

impl RunConfig {
    pub fn from_args(a: &ConfigArgs) -> Result<Self, CliError> {
        if !(a.tol > 0.0 && a.tol < 1e-2) {
            return Err(CliError::Invalid(format!("tolerance {} is outside (0, 1e-2)", a.tol)));
        }
        Ok(RunConfig { tol: a.tol, max_iter: a.max_iter, seed: a.seed, output: a.json.clone(), quiet: a.quiet })
    }

    fn options(&self) -> GeodesicOptions {
        GeodesicOptions { tol: self.tol, max_iter: self.max_iter, embedding_tol: DEFAULT_EMBEDDING_TOL }
    }
}

#[derive(Error, Debug)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("guard exceeded: {0}")]
    Guard(String),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Read { .. } | CliError::Invalid(_) => EXIT_INVALID,
            CliError::Guard(_) => EXIT_GUARD,
            CliError::Write { .. } | CliError::Failed(_) => EXIT_FAILURE,
        }
    }
}

impl From<JsonError> for CliError {
    fn from(e: JsonError) -> Self {
        match e {
            JsonError::Pip(p) => p.into(),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

impl From<PipError> for CliError {
    fn from(e: PipError) -> Self {
        match e {
            PipError::TooLarge { .. } => CliError::Guard(e.to_string()),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

impl From<crate::complex::ComplexError> for CliError {
    fn from(e: crate::complex::ComplexError) -> Self {
        match e {
            crate::complex::ComplexError::Pip(p) => p.into(),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

impl From<IntervalError> for CliError {
    fn from(e: IntervalError) -> Self {
        match e {
            IntervalError::InvalidPoint(c) => c.into(),
            IntervalError::Pip(p) => p.into(),
            other => CliError::Failed(other.to_string()),
        }
    }
}

impl From<GeodesicError> for CliError {
    fn from(e: GeodesicError) -> Self {
        match e {
            GeodesicError::InvalidPoint(c) => c.into(),
            GeodesicError::Interval(i) => i.into(),
            GeodesicError::TooLarge { .. } => CliError::Guard(e.to_string()),
            other => CliError::Failed(other.to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidateReport {
    pub elements: usize,
    pub ideals: usize,
    pub cubes: usize,
    pub max_cube_dimension: usize,
    pub maximal_antichains: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleCase {
    pub main_length: Real,
    pub oracle_length: Real,
    pub deviation: Real,
    pub sequences: usize,
    pub certified: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub cases: Vec<OracleCase>,
    pub max_deviation: Real,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddedVertex {
    pub vertex: Vec<String>,
    pub coords: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbedReport {
    pub root: Vec<String>,
    pub opposite: Vec<String>,
    pub chains: Vec<Vec<String>>,
    pub dimension: usize,
    pub vertices: Vec<EmbeddedVertex>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveJson {
    pub site: String,
    pub context: BTreeMap<String, u8>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateComplexReport {
    pub sites: Vec<String>,
    pub edges: Vec<[String; 2]>,
    pub moves: Vec<MoveJson>,
    pub states: usize,
    pub cubes_by_dimension: Vec<usize>,
}

/// What a subcommand produced: a JSON value, a summary and an exit code.
pub struct Report {
    pub json: String,
    pub summary: Vec<String>,
    pub code: u8,
}

impl Report {
    fn new<T: Serialize>(value: &T, summary: Vec<String>, code: u8) -> Self {
        Report { json: serde_json::to_string_pretty(value).expect("reports serialize"), summary, code }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Read { path: path.to_path_buf(), source })
}

fn load_pip(path: &Path) -> Result<Pip, CliError> {
    Ok(parse_pip(&read(path)?)?)
}

fn load_endpoints(e: &Endpoints) -> Result<(Pip, Point, Point), CliError> {
    let pip = load_pip(&e.pip)?;
    let x = parse_point(&pip, &read(&e.from)?)?;
    let y = parse_point(&pip, &read(&e.to)?)?;
    Ok((pip, x, y))
}

/// Runs `geodesic`, turning budget exhaustion into an uncertified path.
fn solve(pip: &Pip, x: &Point, y: &Point, cfg: &RunConfig) -> Result<GeodesicPath, CliError> {
    match geodesic(pip, x, y, &cfg.options()) {
        Ok(p) => Ok(p),
        Err(GeodesicError::IterationBudgetExceeded { budget, best }) => {
            log::warn!("iteration budget of {budget} exhausted, reporting the best path found");
            Ok(*best)
        }
        Err(e) => Err(e.into()),
    }
}

fn certified_code(p: &GeodesicPath) -> u8 {
    if p.certificate.certified {
        EXIT_OK
    } else {
        EXIT_UNCERTIFIED
    }
}

fn frame(pip: &Pip, x: &Point, y: &Point) -> Result<IntervalFrame, CliError> {
    Ok(interval_endpoints(pip, x, y, DEFAULT_EMBEDDING_TOL)?)
}

fn cmd_validate(path: &Path) -> Result<Report, CliError> {
    let pip = load_pip(path)?;
    let guard = DEFAULT_ENUMERATION_GUARD;
    let report = ValidateReport {
        elements: pip.len(),
        ideals: enumerate_consistent_ideals(&pip, guard)?.len(),
        cubes: enumerate_cubes(&pip, guard)?.len(),
        max_cube_dimension: max_cube_dimension(&pip, guard)?,
        maximal_antichains: maximal_cubes(&pip, guard)?.iter().map(|c| pip.names_of(c.free())).collect(),
    };
    let listed: Vec<String> = report.maximal_antichains.iter().map(|a| format!("{{{}}}", a.join(","))).collect();
    let summary = vec![
        format!(
            "valid: {} elements, {} vertices, {} cubes, dimension {}",
            report.elements, report.ideals, report.cubes, report.max_cube_dimension
        ),
        format!("maximal antichains: {}", listed.join(", ")),
    ];
    Ok(Report::new(&report, summary, EXIT_OK))
}

fn cmd_geodesic(e: &Endpoints, cfg: &RunConfig) -> Result<Report, CliError> {
    let (pip, x, y) = load_endpoints(e)?;
    let p = solve(&pip, &x, &y, cfg)?;
    let carrier: Vec<String> = p.cubes.iter().map(|c| c.display(&pip)).collect();
    let summary = vec![
        format!("length {:.12} after {} shortcut(s)", p.length, p.iterations),
        format!("carrier {}", carrier.join(" -> ")),
        format!(
            "{} (zero-tension residual {:.3e}, shortcut-clean {})",
            if p.certificate.certified { "certified" } else { "NOT certified" },
            p.certificate.zero_tension_residual,
            p.certificate.shortcut_clean
        ),
    ];
    Ok(Report::new(&PathJson::from_path(&pip, &p), summary, certified_code(&p)))
}

fn cmd_distance(e: &Endpoints, cfg: &RunConfig) -> Result<Report, CliError> {
    let (pip, x, y) = load_endpoints(e)?;
    let p = solve(&pip, &x, &y, cfg)?;
    let summary = if p.certificate.certified { vec![] } else { vec!["distance is NOT certified".into()] };
    Ok(Report::new(&Real(p.length), summary, certified_code(&p)))
}

fn cmd_oracle(
    pip_path: &Path,
    ends: Option<(&Path, &Path)>,
    samples: usize,
    cfg: &RunConfig,
) -> Result<Report, CliError> {
    let pip = load_pip(pip_path)?;
    let pairs = match ends {
        Some((f, t)) => vec![(parse_point(&pip, &read(f)?)?, parse_point(&pip, &read(t)?)?)],
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            (0..samples).map(|_| (random_point(&mut rng, &pip), random_point(&mut rng, &pip))).collect()
        }
    };
    let mut cases = Vec::new();
    let mut summary = Vec::new();
    for (x, y) in &pairs {
        let main = solve(&pip, x, y, cfg)?;
        let oracle = brute_force_geodesic(&pip, x, y, &cfg.options(), DEFAULT_SEQUENCE_GUARD)?;
        let deviation = (main.length - oracle.path.length).abs();
        summary.push(format!(
            "main {:.12}  oracle {:.12}  deviation {:.2e}  over {} sequences",
            main.length, oracle.path.length, deviation, oracle.sequences
        ));
        cases.push(OracleCase {
            main_length: Real(main.length),
            oracle_length: Real(oracle.path.length),
            deviation: Real(deviation),
            sequences: oracle.sequences,
            certified: main.certificate.certified,
        });
    }
    let max_deviation = cases.iter().map(|c| c.deviation.0).fold(0.0, f64::max);
    summary.push(format!("max deviation {max_deviation:.2e}"));
    let code = if cases.iter().all(|c| c.certified) { EXIT_OK } else { EXIT_UNCERTIFIED };
    Ok(Report::new(&OracleReport { cases, max_deviation: Real(max_deviation) }, summary, code))
}

fn cmd_embed(e: &Endpoints) -> Result<Report, CliError> {
    let (pip, x, y) = load_endpoints(e)?;
    let f = frame(&pip, &x, &y)?;
    let emb = embed_interval(&f.q, DEFAULT_ENUMERATION_GUARD)?;
    let q_names = |chain: &Vec<usize>| chain.iter().map(|&i| f.q.name(i).to_string()).collect::<Vec<_>>();
    let vertices = emb
        .vertices
        .iter()
        .map(|(ideal, coords)| {
            let v = f.cube_to_original(&Cube::new_unchecked(ideal.clone(), f.q.empty_set()));
            EmbeddedVertex { vertex: pip.names_of(v.ideal()), coords: coords.clone() }
        })
        .collect::<Vec<_>>();
    let report = EmbedReport {
        root: pip.names_of(&f.v),
        opposite: pip.names_of(&f.w),
        chains: emb.chains.iter().map(q_names).collect(),
        dimension: emb.dimension(),
        vertices,
    };
    let summary = vec![format!(
        "interval of {} hyperplanes, {} vertices embedded in Z^{}",
        f.q.len(),
        report.vertices.len(),
        report.dimension
    )];
    Ok(Report::new(&report, summary, EXIT_OK))
}

fn cmd_normal_path(e: &Endpoints) -> Result<Report, CliError> {
    let (pip, x, y) = load_endpoints(e)?;
    let f = frame(&pip, &x, &y)?;
    let seq = extended_normal_cube_path(&f.q, &f.x, &f.y, DEFAULT_EMBEDDING_TOL)?;
    let cubes: Vec<Cube> = seq.cubes().iter().map(|c| f.cube_to_original(c)).collect();
    let shown: Vec<String> = cubes.iter().map(|c| c.display(&pip)).collect();
    let json: Vec<CubeJson> = cubes.iter().map(|c| CubeJson::from_cube(&pip, c)).collect();
    Ok(Report::new(&json, vec![shown.join(" -> ")], EXIT_OK))
}

fn cmd_state_complex(path: &Path) -> Result<Report, CliError> {
    let pip = load_pip(path)?;
    let sys = pip_to_reconfigurable(&pip);
    let sc = state_complex(&sys, DEFAULT_STATE_GUARD).map_err(|e| match e {
        RecsysError::TooLarge { .. } => CliError::Guard(e.to_string()),
    })?;
    let name = |i: usize| sys.vertices[i].clone();
    let report = StateComplexReport {
        sites: sys.vertices.clone(),
        edges: sys.edges.iter().map(|&(a, b)| [name(a), name(b)]).collect(),
        moves: sys
            .moves
            .iter()
            .map(|m| MoveJson { site: name(m.trace[0]), context: m.context.iter().map(|&(v, l)| (name(v), l)).collect() })
            .collect(),
        states: sc.vertices.len(),
        cubes_by_dimension: sc.cubes_by_dimension(),
    };
    let summary = vec![format!("{} states, cubes by dimension {:?}", report.states, report.cubes_by_dimension)];
    Ok(Report::new(&report, summary, EXIT_OK))
}

fn cmd_halfspace(pip: Option<&Path>, system: Option<&Path>) -> Result<Report, CliError> {
    if let Some(path) = pip {
        let h = pip_to_halfspace(&load_pip(path)?);
        let summary = vec![format!("{} hyperplanes, {} cover relations", h.len(), h.to_raw().relations.len())];
        return Ok(Report::new(&h.to_raw(), summary, EXIT_OK));
    }
    let path = system.expect("clap requires one input");
    let raw: RawHalfspace = serde_json::from_str(&read(path)?).map_err(|e| CliError::Invalid(e.to_string()))?;
    let h = HalfspaceSystem::from_raw(&raw).map_err(|e| CliError::Invalid(e.to_string()))?;
    let pip = halfspace_to_pip(&h).map_err(|e| CliError::Invalid(e.to_string()))?;
    Ok(Report::new(&pip.to_raw(), vec![format!("acyclic system of {} hyperplanes", pip.len())], EXIT_OK))
}

fn cmd_reroot(path: &Path, at: &str) -> Result<Report, CliError> {
    let pip = load_pip(path)?;
    let names: Vec<&str> = at.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    let v = OrderIdeal::new(&pip, pip.set_of(&names)?)?;
    if !v.is_consistent() {
        return Err(CliError::Invalid(format!("{{{}}} is not a consistent ideal", names.join(","))));
    }
    let r = reroot(&pip, &v).map_err(|e| CliError::Failed(e.to_string()))?;
    let summary = vec![format!("rerooted at {{{}}}: flipped {:?}", names.join(","), pip.names_of(&r.flipped))];
    Ok(Report::new(&r.pip.to_raw(), summary, EXIT_OK))
}

/// Executes one subcommand.
pub fn execute(command: &Command, cfg: &RunConfig) -> Result<Report, CliError> {
    match command {
        Command::Validate { pip } => cmd_validate(pip),
        Command::Geodesic(e) => cmd_geodesic(e, cfg),
        Command::Distance(e) => cmd_distance(e, cfg),
        Command::Oracle { pip, from, to, samples } => {
            let ends = from.as_deref().zip(to.as_deref());
            cmd_oracle(pip, ends, *samples, cfg)
        }
        Command::EmbedInterval(e) => cmd_embed(e),
        Command::NormalPath(e) => cmd_normal_path(e),
        Command::StateComplex { pip } => cmd_state_complex(pip),
        Command::Halfspace { pip, system } => cmd_halfspace(pip.as_deref(), system.as_deref()),
        Command::Reroot { pip, at } => cmd_reroot(pip, at),
    }
}

/// Parses arguments, runs, writes output and returns the exit code.
pub fn run(cli: Cli) -> u8 {
    let outcome = RunConfig::from_args(&cli.config).and_then(|cfg| {
        let report = execute(&cli.command, &cfg)?;
        match &cfg.output {
            Some(path) => fs::write(path, format!("{}\n", report.json))
                .map_err(|source| CliError::Write { path: path.clone(), source })?,
            None => {
                let mut out = std::io::stdout().lock();
                match writeln!(out, "{}", report.json) {
                    Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                        return Err(CliError::Write { path: PathBuf::from("<stdout>"), source: e })
                    }
                    _ => {}
                }
            }
        }
        if !cfg.quiet {
            let mut err = std::io::stderr().lock();
            for line in &report.summary {
                let _ = writeln!(err, "{line}");
            }
        }
        Ok(report.code)
    });
    match outcome {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(std::io::stderr(), "error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerance_range() {
        let mut a = ConfigArgs { tol: 1e-8, max_iter: None, seed: 0, json: None, quiet: false };
        assert!(RunConfig::from_args(&a).is_ok());
        for bad in [0.0, -1.0, 1e-2, 0.5, f64::NAN] {
            a.tol = bad;
            assert_eq!(RunConfig::from_args(&a).unwrap_err().exit_code(), EXIT_INVALID);
        }
    }

    #[test]
    fn arguments_parse() {
        let cli = Cli::try_parse_from(["catzero", "reroot", "--pip", "p.json", "--at", "1,3", "--quiet"]).unwrap();
        assert!(cli.config.quiet);
        assert!(matches!(cli.command, Command::Reroot { ref at, .. } if at == "1,3"));
        assert!(Cli::try_parse_from(["catzero", "halfspace"]).is_err());
        assert!(Cli::try_parse_from(["catzero", "oracle", "--pip", "p", "--from", "x"]).is_err());
    }
}
