//! Command-line surface: argument parsing, dispatch, JSON serialisation and
//! file I/O around the library calls. The binary in `main.rs` only calls
//! [`run`]; every command body is an ordinary function so tests can drive it
//! directly.
//!
//! Exit codes: 0 success / certified, 1 domain failure (membership,
//! uncolourable, bad parameters), 2 verification criterion failed,
//! 3 budget or infeasibility, 4 I/O or parse errors.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::estimator::{estimate_log_z, error_decomposition, EstimatorConfig};
use crate::graph::{generate_gnp, Graph};
use crate::marginal::big_ln;
use crate::oracles::{
    brute_force_count, decay_profile, exact_tv, glauber_pdiff, glauber_sampler, DEFAULT_ENUM_BUDGET,
};
use crate::percolation::{
    percolation_probability_exact, percolation_probability_mc, DisagreementConfig, McEstimate,
    DEFAULT_EXACT_PERCOLATION_CAP,
};
use crate::verifier::{verify_concentration, VerifierConfig};

#[derive(Parser)]
#[command(
    name = "chromacount",
    about = "Approximate and exact counting of proper k-colourings of sparse graphs",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Generate a G(n, d/n) edge-list file from a seed.
    Gen(GenArgs),
    /// Estimate log Z / n with the counting schema.
    Count(CountArgs),
    /// Count colourings exactly by pruned exhaustive enumeration.
    Exact(ExactArgs),
    /// Decide S(n, d) membership and verify the concentration criterion.
    Verify(VerifyArgs),
    /// Exact diagnostics on small graphs.
    #[command(subcommand)]
    Diag(DiagCommand),
}

#[derive(Args)]
pub struct GenArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub d: f64,
    #[arg(long)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args)]
pub struct CountArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub k: usize,
    /// Expected degree; enables derived radii and the first-moment value.
    #[arg(long)]
    pub d: Option<f64>,
    /// Truncation radius override.
    #[arg(long)]
    pub t: Option<usize>,
    /// Short-cycle length threshold override.
    #[arg(long)]
    pub ell: Option<usize>,
    #[arg(long, default_value_t = crate::estimator::DEFAULT_PIN_BUDGET)]
    pub pin_budget: u64,
    #[arg(long, default_value_t = DEFAULT_ENUM_BUDGET)]
    pub enum_budget: u64,
    #[arg(long, default_value_t = crate::graph::DEFAULT_CYCLE_CAP)]
    pub cycle_cap: usize,
    #[arg(long, default_value_t = 0.3)]
    pub r_exponent: f64,
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    /// Also run the exhaustive count (when feasible) and report the gap.
    #[arg(long)]
    pub exact: bool,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write the per-term table as CSV to this path.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Args)]
pub struct ExactArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub k: usize,
    #[arg(long, default_value_t = DEFAULT_ENUM_BUDGET)]
    pub enum_budget: u64,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub d: f64,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub epsilon1: f64,
    #[arg(long, default_value_t = crate::verifier::DEFAULT_PATH_CAP)]
    pub path_cap: usize,
    #[arg(long, default_value_t = DEFAULT_ENUM_BUDGET)]
    pub enum_budget: u64,
    #[arg(long, default_value_t = crate::graph::DEFAULT_CYCLE_CAP)]
    pub cycle_cap: usize,
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
}

#[derive(Subcommand)]
pub enum DiagCommand {
    /// Exact conditional total-variation distance on a vertex set.
    Tv(TvArgs),
    /// Disagreement-percolation probability, exact and/or Monte-Carlo.
    Perc(PercArgs),
    /// Exact decay profile of a root vertex.
    Decay(DecayArgs),
    /// Per-term exact-versus-schema error decomposition.
    Errdecomp(ErrdecompArgs),
    /// Seeded Glauber chain; with --pair, a Monte-Carlo marginal estimate.
    Glauber(GlauberArgs),
}

#[derive(Args)]
pub struct TvArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub x: usize,
    #[arg(long)]
    pub sigma: usize,
    #[arg(long)]
    pub eta: usize,
    /// Comma-separated vertex set.
    #[arg(long, value_delimiter = ',')]
    pub lambda: Vec<usize>,
    #[arg(long)]
    pub k: usize,
    #[arg(long, default_value_t = DEFAULT_ENUM_BUDGET)]
    pub enum_budget: u64,
}

#[derive(Args)]
pub struct PercArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub root: usize,
    /// Comma-separated target vertex set.
    #[arg(long, value_delimiter = ',')]
    pub target: Vec<usize>,
    /// Product-measure parameter (usually k).
    #[arg(long)]
    pub s: usize,
    #[arg(long, default_value_t = DEFAULT_EXACT_PERCOLATION_CAP)]
    pub exact_cap: usize,
    /// Monte-Carlo sample count; requires --seed.
    #[arg(long, requires = "seed")]
    pub samples: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Args)]
pub struct DecayArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub x: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub t_max: usize,
    #[arg(long, default_value_t = DEFAULT_ENUM_BUDGET)]
    pub enum_budget: u64,
}

#[derive(Args)]
pub struct ErrdecompArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub d: Option<f64>,
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long)]
    pub ell: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_ENUM_BUDGET)]
    pub enum_budget: u64,
    #[arg(long, default_value_t = crate::estimator::DEFAULT_PIN_BUDGET)]
    pub pin_budget: u64,
}

#[derive(Args)]
pub struct GlauberArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub k: usize,
    /// Single-site updates (or recorded sweeps when --pair is given).
    #[arg(long)]
    pub steps: u64,
    #[arg(long)]
    pub seed: u64,
    /// Estimate Pr[colour(a) != colour(b)] for the pair "a,b".
    #[arg(long, value_delimiter = ',')]
    pub pair: Option<Vec<usize>>,
}

pub fn load_graph(path: &Path) -> Result<Graph> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
    Graph::parse_edge_list(&text)
}

fn write_file(path: &Path, content: &str) -> Result<()> {
    std::fs::write(path, content).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialise");
    s.push('\n');
    s
}

/// Generates the graph, writes the edge-list file and returns the `n m` line
/// printed to stdout.
pub fn cmd_gen(args: &GenArgs) -> Result<String> {
    let g = generate_gnp(args.n, args.d, args.seed)?;
    write_file(&args.out, &g.to_edge_list())?;
    Ok(format!("{} {}\n", g.n(), g.edge_count()))
}

#[derive(Serialize)]
struct ExactComparison {
    count: String,
    log_z: f64,
    psi: f64,
    gap: f64,
}

#[derive(Serialize)]
struct CountOutput {
    #[serde(flatten)]
    report: crate::estimator::EstimateReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    exact: Option<ExactComparison>,
}

/// Runs the estimator; returns the JSON report (also written to --out/--csv
/// when requested).
pub fn cmd_count(args: &CountArgs) -> Result<String> {
    let g = load_graph(&args.graph)?;
    let cfg = EstimatorConfig {
        t: args.t,
        ell: args.ell,
        d: args.d,
        pin_budget: args.pin_budget,
        enumeration_budget: args.enum_budget,
        cycle_cap: args.cycle_cap,
        r_threshold_exponent: args.r_exponent,
        threads: args.threads,
    };
    let report = estimate_log_z(&g, args.k, &cfg)?;
    let exact = if args.exact {
        let count = brute_force_count(&g, args.k, args.enum_budget)?;
        if count == num_bigint::BigUint::from(0u32) {
            return Err(Error::UncolourableComponent { k: args.k });
        }
        let log_z = big_ln(&count);
        let psi = log_z / g.n() as f64;
        Some(ExactComparison {
            count: count.to_string(),
            log_z,
            psi,
            gap: (report.psi - psi).abs(),
        })
    } else {
        None
    };
    if let Some(csv) = &args.csv {
        let mut table = String::from("edge_a,edge_b,log_p,component_size,extra_edges,disconnected\n");
        for t in &report.terms {
            table.push_str(&format!(
                "{},{},{},{},{},{}\n",
                t.edge.0, t.edge.1, t.log_p, t.component_size, t.extra_edges, t.disconnected
            ));
        }
        write_file(csv, &table)?;
    }
    let json = to_json(&CountOutput { report, exact });
    if let Some(out) = &args.out {
        write_file(out, &json)?;
    }
    Ok(json)
}

#[derive(Serialize)]
struct ExactOutput {
    schema_version: u32,
    n: usize,
    k: usize,
    count: String,
    /// Natural log of the count; negative infinity marks zero colourings.
    log_z: f64,
    psi: f64,
}

pub fn cmd_exact(args: &ExactArgs) -> Result<String> {
    let g = load_graph(&args.graph)?;
    let count = brute_force_count(&g, args.k, args.enum_budget)?;
    let log_z = if count == num_bigint::BigUint::from(0u32) {
        f64::NEG_INFINITY
    } else {
        big_ln(&count)
    };
    Ok(to_json(&ExactOutput {
        schema_version: 1,
        n: g.n(),
        k: args.k,
        count: count.to_string(),
        log_z,
        psi: log_z / g.n().max(1) as f64,
    }))
}

/// Runs the verifier; the second value is the exit code (0 certified,
/// 1 not in S(n, d), 2 criterion failed).
pub fn cmd_verify(args: &VerifyArgs) -> Result<(String, i32)> {
    let g = load_graph(&args.graph)?;
    let cfg = VerifierConfig {
        epsilon1: args.epsilon1,
        path_cap: args.path_cap,
        enumeration_budget: args.enum_budget,
        cycle_cap: args.cycle_cap,
        threads: args.threads,
    };
    let report = verify_concentration(&g, args.d, args.k, &cfg)?;
    let code = if report.verdict {
        0
    } else if !report.membership.in_s {
        1
    } else {
        2
    };
    Ok((to_json(&report), code))
}

#[derive(Serialize)]
struct TvOutput {
    schema_version: u32,
    diag: &'static str,
    x: usize,
    sigma: usize,
    eta: usize,
    lambda: Vec<usize>,
    k: usize,
    tv: f64,
}

#[derive(Serialize)]
struct PercOutput {
    schema_version: u32,
    diag: &'static str,
    root: usize,
    target: Vec<usize>,
    s: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    exact: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    mc: Option<McEstimate>,
}

#[derive(Serialize)]
struct DecayOutput {
    schema_version: u32,
    diag: &'static str,
    x: usize,
    k: usize,
    t_max: usize,
    profile: Vec<crate::oracles::DecayRecord>,
}

#[derive(Serialize)]
struct ErrdecompOutput {
    schema_version: u32,
    diag: &'static str,
    #[serde(flatten)]
    decomposition: crate::estimator::ErrorDecomposition,
}

#[derive(Serialize)]
struct GlauberOutput {
    schema_version: u32,
    diag: &'static str,
    k: usize,
    steps: u64,
    seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    colouring: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pair: Option<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    estimate: Option<crate::oracles::PdiffEstimate>,
}

pub fn cmd_diag(cmd: &DiagCommand) -> Result<String> {
    match cmd {
        DiagCommand::Tv(a) => {
            let g = load_graph(&a.graph)?;
            let tv = exact_tv(&g, a.x, a.sigma, a.eta, &a.lambda, a.k, a.enum_budget)?;
            Ok(to_json(&TvOutput {
                schema_version: 1,
                diag: "tv",
                x: a.x,
                sigma: a.sigma,
                eta: a.eta,
                lambda: a.lambda.clone(),
                k: a.k,
                tv,
            }))
        }
        DiagCommand::Perc(a) => {
            let g = load_graph(&a.graph)?;
            let cfg = DisagreementConfig::new(a.s, a.root);
            let exact = if g.n() <= a.exact_cap {
                Some(percolation_probability_exact(&g, &cfg, &a.target, a.exact_cap)?)
            } else {
                None
            };
            let mc = match (a.samples, a.seed) {
                (Some(samples), Some(seed)) => {
                    Some(percolation_probability_mc(&g, &cfg, &a.target, samples, seed)?)
                }
                _ => None,
            };
            if exact.is_none() && mc.is_none() {
                return Err(Error::InfeasibleSize(format!(
                    "n = {} exceeds the exact cap {}; pass --samples/--seed for Monte-Carlo",
                    g.n(),
                    a.exact_cap
                )));
            }
            Ok(to_json(&PercOutput {
                schema_version: 1,
                diag: "perc",
                root: a.root,
                target: a.target.clone(),
                s: a.s,
                exact,
                mc,
            }))
        }
        DiagCommand::Decay(a) => {
            let g = load_graph(&a.graph)?;
            let profile = decay_profile(&g, a.x, a.k, a.t_max, a.enum_budget)?;
            Ok(to_json(&DecayOutput {
                schema_version: 1,
                diag: "decay",
                x: a.x,
                k: a.k,
                t_max: a.t_max,
                profile,
            }))
        }
        DiagCommand::Errdecomp(a) => {
            let g = load_graph(&a.graph)?;
            let cfg = EstimatorConfig {
                t: a.t,
                ell: a.ell,
                d: a.d,
                pin_budget: a.pin_budget,
                enumeration_budget: a.enum_budget,
                ..EstimatorConfig::default()
            };
            let decomposition = error_decomposition(&g, a.k, &cfg)?;
            Ok(to_json(&ErrdecompOutput { schema_version: 1, diag: "errdecomp", decomposition }))
        }
        DiagCommand::Glauber(a) => {
            let g = load_graph(&a.graph)?;
            let (colouring, pair, estimate) = match &a.pair {
                Some(p) => {
                    if p.len() != 2 {
                        return Err(Error::InvalidParameter("--pair needs exactly two vertices".into()));
                    }
                    let est = glauber_pdiff(&g, p[0], p[1], a.k, a.steps, a.seed)?;
                    (None, Some((p[0], p[1])), Some(est))
                }
                None => (Some(glauber_sampler(&g, a.k, a.steps, a.seed)?), None, None),
            };
            Ok(to_json(&GlauberOutput {
                schema_version: 1,
                diag: "glauber",
                k: a.k,
                steps: a.steps,
                seed: a.seed,
                colouring,
                pair,
                estimate,
            }))
        }
    }
}

/// Parses the process arguments, dispatches and returns the exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    let outcome: Result<(String, i32)> = match &cli.command {
        Command::Gen(a) => cmd_gen(a).map(|s| (s, 0)),
        Command::Count(a) => cmd_count(a).map(|s| (s, 0)),
        Command::Exact(a) => cmd_exact(a).map(|s| (s, 0)),
        Command::Verify(a) => cmd_verify(a),
        Command::Diag(a) => cmd_diag(a).map(|s| (s, 0)),
    };
    match outcome {
        Ok((stdout, code)) => {
            print!("{stdout}");
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
