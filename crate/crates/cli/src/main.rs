//! `qctx` — command-line front end for the entropic contextuality
//! toolkit.
//!
//! Subcommands:
//!
//! - `eval` — entropic witness, pentagram sum, and symmetry residuals of
//!   one configuration.
//! - `scan` — grid scan of the witness over the two-parameter family
//!   (CSV), with a JSON summary when writing to a file.
//! - `optimize` — Nelder-Mead maximization, within the family or over all
//!   real configurations via multi-start.
//! - `feasibility` — phase-1 simplex test for a global joint
//!   distribution, with witness or Farkas certificate.
//! - `sample` — multinomial finite-shot simulation and bootstrap
//!   estimate of the witness.
//!
//! Exit codes: `0` success, `2` unusable input (bad flags, unreadable or
//! unparsable files), `3` domain/invariant violation reported by the
//! library, `4` optimizer ran without converging (the result JSON is
//! still printed).

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use qctx_core::entropy::{evaluate_c, EntropyReport};
use qctx_core::graph::PairwiseMarginals;
use qctx_core::kcbs::{kcbs_value, KcbsReport};
use qctx_core::lp::{jpd_exists, pentagon_problem, FeasibilityProblem};
use qctx_core::numfmt::{fmt_sig12, ser_sig12, ser_sig12_arr};
use qctx_core::optimize::{
    grid_argmax, optimize_general, optimize_two_param, scan_grid, GridSpec,
};
use qctx_core::quantum::{
    build_pentagon_family, symmetry_residuals, FamilyParams, PentagonConfig,
};
use qctx_core::sample::{estimate_c, sample_pentagon_edges, CEstimate, ContextCounts};

#[derive(Parser)]
#[command(name = "qctx", version, about = "Entropic test of contextuality on the pentagram")]
struct Cli {
    /// Print compact single-line JSON instead of pretty-printed.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the witness C, the pentagram sum, and the symmetry
    /// residuals of one configuration.
    Eval(EvalArgs),
    /// Scan C over a rectangle of family parameters; emits CSV.
    Scan(ScanArgs),
    /// Maximize C by Nelder-Mead, in the family or over all real
    /// configurations.
    Optimize(OptimizeArgs),
    /// Decide whether a global joint distribution reproduces the pair
    /// tables.
    Feasibility(FeasibilityArgs),
    /// Simulate finite statistics and bootstrap a confidence interval
    /// for C.
    Sample(SampleArgs),
}

/// Where a pentagon configuration comes from: family parameters or a
/// JSON file.
#[derive(Args)]
struct ConfigSource {
    /// Family state angle.
    #[arg(long, default_value_t = 0.2366)]
    theta: f64,
    /// Family fan angle, in [0, pi/4).
    #[arg(long, default_value_t = 0.1698)]
    phi: f64,
    /// JSON file holding a full configuration (overrides --theta/--phi).
    #[arg(long, conflicts_with_all = ["theta", "phi"])]
    config: Option<PathBuf>,
}

impl ConfigSource {
    fn load(&self) -> Result<(PentagonConfig, Option<FamilyParams>), CliError> {
        match &self.config {
            Some(path) => Ok((read_json(path)?, None)),
            None => {
                let params = FamilyParams::new(self.theta, self.phi)?;
                Ok((build_pentagon_family(&params)?, Some(params)))
            }
        }
    }
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    source: ConfigSource,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long, default_value_t = 0.0)]
    theta_min: f64,
    #[arg(long, default_value_t = std::f64::consts::FRAC_PI_2)]
    theta_max: f64,
    #[arg(long, default_value_t = 0.0)]
    phi_min: f64,
    #[arg(long, default_value_t = 0.785)]
    phi_max: f64,
    /// Grid points per axis.
    #[arg(long, default_value_t = 200)]
    res: usize,
    /// Write the CSV grid here and print a JSON summary instead.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OptimizeArgs {
    /// Search space.
    #[arg(long, value_enum, default_value_t = Mode::TwoParam)]
    mode: Mode,
    /// Starting state angle (two-param mode).
    #[arg(long, default_value_t = 0.3)]
    theta: f64,
    /// Starting fan angle (two-param mode).
    #[arg(long, default_value_t = 0.1)]
    phi: f64,
    /// Random restarts (general mode).
    #[arg(long, default_value_t = 24)]
    restarts: usize,
    /// Master seed for the restart draws (general mode).
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Iteration budget per Nelder-Mead run.
    #[arg(long, default_value_t = 4000)]
    max_iter: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    /// Polish (theta, phi) within the built-in family.
    TwoParam,
    /// Multi-start search over all real configurations.
    General,
}

#[derive(Args)]
struct FeasibilityArgs {
    #[command(flatten)]
    source: ConfigSource,
    /// JSON file of pairwise marginals (overrides any configuration).
    #[arg(long, conflicts_with_all = ["theta", "phi", "config"])]
    marginals: Option<PathBuf>,
}

#[derive(Args)]
struct SampleArgs {
    #[command(flatten)]
    source: ConfigSource,
    /// Shots per measurement context.
    #[arg(long, default_value_t = 10_000)]
    shots: u64,
    /// Bootstrap resamples for the confidence interval.
    #[arg(long, default_value_t = 1000)]
    resamples: usize,
    /// Seed for both the shot noise and the bootstrap.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Apply the Miller-Madow bias correction to the point estimate.
    #[arg(long)]
    miller_madow: bool,
}

enum CliError {
    /// Unreadable or unparsable input (exit 2).
    Input(String),
    /// Library-reported domain or invariant violation (exit 3).
    Core(qctx_core::Error),
}

impl From<qctx_core::Error> for CliError {
    fn from(e: qctx_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(msg) => write!(f, "{msg}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("cannot parse {}: {e}", path.display())))
}

fn print_json<T: Serialize>(value: &T, compact: bool) {
    let text = if compact {
        serde_json::to_string(value)
    } else {
        serde_json::to_string_pretty(value)
    }
    .expect("output types serialize infallibly");
    println!("{text}");
}

#[derive(Serialize)]
struct EvalOutput {
    #[serde(skip_serializing_if = "Option::is_none")]
    params: Option<FamilyParams>,
    entropy: EntropyReport,
    kcbs: KcbsReport,
    #[serde(serialize_with = "ser_sig12_arr")]
    symmetry_residuals: [f64; 3],
    /// Whether the witness certifies contextuality (C > 0).
    contextual: bool,
}

fn run_eval(args: &EvalArgs, compact: bool) -> Result<u8, CliError> {
    let (config, params) = args.source.load()?;
    let entropy = evaluate_c(&config)?;
    let output = EvalOutput {
        params,
        kcbs: kcbs_value(&config),
        symmetry_residuals: symmetry_residuals(&config),
        contextual: entropy.c_value > 0.0,
        entropy,
    };
    print_json(&output, compact);
    Ok(0)
}

#[derive(Serialize)]
struct BestPoint {
    #[serde(serialize_with = "ser_sig12")]
    theta: f64,
    #[serde(serialize_with = "ser_sig12")]
    phi: f64,
    #[serde(serialize_with = "ser_sig12")]
    c_value: f64,
}

#[derive(Serialize)]
struct ScanSummary {
    resolution: usize,
    points: usize,
    best: BestPoint,
    out: String,
}

fn run_scan(args: &ScanArgs, compact: bool) -> Result<u8, CliError> {
    let spec = GridSpec::new(
        args.theta_min,
        args.theta_max,
        args.phi_min,
        args.phi_max,
        args.res,
    )?;
    let points = scan_grid(&spec)?;
    let mut csv = String::with_capacity(points.len() * 24 + 16);
    csv.push_str("theta,phi,C\n");
    for p in &points {
        let _ = writeln!(
            csv,
            "{},{},{}",
            fmt_sig12(p.theta),
            fmt_sig12(p.phi),
            fmt_sig12(p.c_value)
        );
    }
    let best = grid_argmax(&points).expect("grids are non-empty");
    match &args.out {
        None => print!("{csv}"),
        Some(path) => {
            std::fs::write(path, csv).map_err(|e| {
                CliError::Input(format!("cannot write {}: {e}", path.display()))
            })?;
            let summary = ScanSummary {
                resolution: spec.resolution(),
                points: points.len(),
                best: BestPoint {
                    theta: best.theta,
                    phi: best.phi,
                    c_value: best.c_value,
                },
                out: path.display().to_string(),
            };
            print_json(&summary, compact);
        }
    }
    Ok(0)
}

fn run_optimize(args: &OptimizeArgs, compact: bool) -> Result<u8, CliError> {
    let converged = match args.mode {
        Mode::TwoParam => {
            let start = FamilyParams::new(args.theta, args.phi)?;
            let result = optimize_two_param(start, args.max_iter)?;
            print_json(&result, compact);
            result.converged
        }
        Mode::General => {
            let result = optimize_general(args.restarts, args.seed, args.max_iter)?;
            print_json(&result, compact);
            result.converged
        }
    };
    Ok(if converged { 0 } else { 4 })
}

fn run_feasibility(args: &FeasibilityArgs, compact: bool) -> Result<u8, CliError> {
    let problem = match &args.marginals {
        Some(path) => FeasibilityProblem::new(read_json::<PairwiseMarginals>(path)?)?,
        None => pentagon_problem(&args.source.load()?.0)?,
    };
    let result = jpd_exists(&problem)?;
    print_json(&result, compact);
    Ok(0)
}

#[derive(Serialize)]
struct SampleOutput {
    #[serde(skip_serializing_if = "Option::is_none")]
    params: Option<FamilyParams>,
    /// Exact witness value of the sampled configuration.
    #[serde(serialize_with = "ser_sig12")]
    c_true: f64,
    seed: u64,
    counts: [ContextCounts; 5],
    estimate: CEstimate,
}

fn run_sample(args: &SampleArgs, compact: bool) -> Result<u8, CliError> {
    use rand::SeedableRng;
    let (config, params) = args.source.load()?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(args.seed);
    let counts = sample_pentagon_edges(&mut rng, &config, args.shots)?;
    let estimate = estimate_c(
        &counts,
        args.shots,
        args.resamples,
        args.seed,
        args.miller_madow,
    )?;
    let output = SampleOutput {
        params,
        c_true: evaluate_c(&config)?.c_value,
        seed: args.seed,
        counts,
        estimate,
    };
    print_json(&output, compact);
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Eval(args) => run_eval(args, cli.json),
        Command::Scan(args) => run_scan(args, cli.json),
        Command::Optimize(args) => run_optimize(args, cli.json),
        Command::Feasibility(args) => run_feasibility(args, cli.json),
        Command::Sample(args) => run_sample(args, cli.json),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                CliError::Input(_) => 2,
                CliError::Core(_) => 3,
            })
        }
    }
}
