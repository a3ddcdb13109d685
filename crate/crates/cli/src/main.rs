//! `gaussrank`: graph parameters, Gaussian rank estimates, MLE existence
//! checks and infeasibility certificates, with JSON output.
//!
//! Exit codes: 0 success, 2 input error, 3 inconclusive rank estimate,
//! 4 certificate search or verification failure.

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use gaussrank::completion::{build_certificate, verify_certificate, CertificateConfig};
use gaussrank::experiment::{run_experiment, ExperimentConfig};
use gaussrank::params::{ParamReport, DEFAULT_TREEWIDTH_LIMIT};
use gaussrank::rank::{
    estimate_gaussian_rank, estimate_weak_rank, mle_exists, parse_observations, Determination, RankConfig,
};
use gaussrank::{graph, Error, Graph, GraphSpec};
use serde::Serialize;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const SCHEMA_VERSION: u32 = 1;

/// Seed used when neither `--seed` nor `GAUSSRANK_SEED` is given.
const DEFAULT_SEED: u64 = 2024;

const EXIT_INPUT: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;
const EXIT_CERTIFICATE: u8 = 4;

#[derive(Parser)]
#[command(name = "gaussrank", version, about = "Gaussian rank of graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Degeneracy, connectivity, clique number, treewidth and rank bounds.
    Params {
        #[command(flatten)]
        common: Common,
    },
    /// Estimate the Gaussian rank.
    Rank {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        solver: Solver,
        /// Random trials per candidate rank.
        #[arg(long, default_value_t = 200)]
        trials: usize,
    },
    /// Monte Carlo existence frequency of the MLE for n = 1..p observations.
    WeakRank {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        solver: Solver,
        /// Datasets per sample size.
        #[arg(long, default_value_t = 500)]
        trials: usize,
    },
    /// Decide MLE existence for the observations in a data file.
    MleCheck {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        solver: Solver,
        /// Whitespace-separated numbers, one observation per row.
        #[arg(long)]
        data: PathBuf,
    },
    /// Build and verify an infeasibility certificate at connectivity k.
    Certificate {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        solver: Solver,
        #[arg(long)]
        k: usize,
        /// Random matching matrices checked during verification.
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Write a generated graph in edge-list format.
    Generate {
        /// Generator spec, e.g. `cycle:8` or `random:p=10,eps=0.3`.
        spec: String,
        #[arg(long, env = "GAUSSRANK_SEED", default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a batch experiment from a `key = value` preset file.
    Experiment {
        preset: PathBuf,
        #[command(flatten)]
        solver: Solver,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Common {
    /// Edge-list file or generator spec such as `grid:3x3`.
    #[arg(long)]
    graph: String,
    #[arg(long, env = "GAUSSRANK_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Solver {
    /// Relative eigenvalue threshold for singularity.
    #[arg(long)]
    tol_singularity: Option<f64>,
    /// Relative entrywise tolerance of the matching relation.
    #[arg(long)]
    tol_match: Option<f64>,
    /// Iteration cap of the completion solver.
    #[arg(long)]
    max_iters: Option<usize>,
}

impl Solver {
    fn rank_config(&self, seed: u64) -> anyhow::Result<RankConfig> {
        let mut cfg = RankConfig { seed, ..RankConfig::default() };
        for tols in [&mut cfg.completion.tolerances, &mut cfg.certificate.tolerances] {
            if let Some(t) = self.tol_singularity {
                tols.singularity_rel = t;
            }
            if let Some(t) = self.tol_match {
                tols.match_tol = t;
            }
        }
        if let Some(m) = self.max_iters {
            cfg.completion.max_iters = m;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

/// An error with the exit code it maps to.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure { code: EXIT_INPUT, error: e.into() }
    }
}

#[derive(Serialize)]
struct GraphInfo {
    source: String,
    p: usize,
    edges: usize,
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema_version: u32,
    command: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    graph: Option<GraphInfo>,
    seed: u64,
    result: T,
}

fn load_graph(source: &str, seed: u64) -> anyhow::Result<Graph> {
    let path = Path::new(source);
    if path.is_file() {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {source}"))?;
        return graph::parse_edge_list(&text).with_context(|| format!("parsing {source}"));
    }
    match source.parse::<GraphSpec>() {
        Ok(spec) => Ok(spec.build(seed)?),
        Err(e) if source.contains(':') || graph::GENERATOR_NAMES.contains(&source) => {
            Err(anyhow!(e).context(format!("bad generator spec `{source}`")))
        }
        Err(_) => bail!("no such file `{source}`, and it is not a generator spec"),
    }
}

/// Writes `text` to `out` through a temporary file in the same directory,
/// or to standard output.
fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => {
            let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
            let mut tmp = tempfile::NamedTempFile::new_in(dir)
                .with_context(|| format!("creating a temporary file in {}", dir.display()))?;
            tmp.write_all(text.as_bytes())?;
            tmp.persist(path).with_context(|| format!("writing {}", path.display()))?;
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

fn emit_json<T: Serialize>(
    out: Option<&Path>,
    command: &str,
    graph: Option<(&str, &Graph)>,
    seed: u64,
    result: T,
) -> anyhow::Result<()> {
    let envelope = Envelope {
        schema_version: SCHEMA_VERSION,
        command,
        graph: graph.map(|(source, g)| GraphInfo { source: source.to_string(), p: g.order(), edges: g.edge_count() }),
        seed,
        result,
    };
    let mut text = serde_json::to_string_pretty(&envelope)?;
    text.push('\n');
    emit(out, &text)
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Params { common } => {
            let g = load_graph(&common.graph, common.seed)?;
            let report = ParamReport::compute(&g, DEFAULT_TREEWIDTH_LIMIT);
            emit_json(common.out.as_deref(), "params", Some((&common.graph, &g)), common.seed, report)?;
            Ok(0)
        }
        Command::Rank { common, solver, trials } => {
            let g = load_graph(&common.graph, common.seed)?;
            let cfg = RankConfig { trials_per_rank: trials, ..solver.rank_config(common.seed)? };
            let report = estimate_gaussian_rank(&g, &cfg)?;
            let code = if report.determination == Determination::Interval { EXIT_INCONCLUSIVE } else { 0 };
            emit_json(common.out.as_deref(), "rank", Some((&common.graph, &g)), common.seed, report)?;
            Ok(code)
        }
        Command::WeakRank { common, solver, trials } => {
            let g = load_graph(&common.graph, common.seed)?;
            let cfg = RankConfig { samples_per_n: trials, ..solver.rank_config(common.seed)? };
            let report = estimate_weak_rank(&g, &cfg)?;
            emit_json(common.out.as_deref(), "weak-rank", Some((&common.graph, &g)), common.seed, report)?;
            Ok(0)
        }
        Command::MleCheck { common, solver, data } => {
            let g = load_graph(&common.graph, common.seed)?;
            let cfg = solver.rank_config(common.seed)?;
            let text = std::fs::read_to_string(&data).with_context(|| format!("reading {}", data.display()))?;
            let x = parse_observations(&text).with_context(|| format!("parsing {}", data.display()))?;
            if x.ncols() != g.order() {
                return Err(anyhow!(
                    "data has {} columns but the graph has {} vertices",
                    x.ncols(),
                    g.order()
                )
                .into());
            }
            let result = mle_exists(&g, &x, &cfg.completion)?;
            emit_json(common.out.as_deref(), "mle-check", Some((&common.graph, &g)), common.seed, result)?;
            Ok(0)
        }
        Command::Certificate { common, solver, k, trials } => {
            let g = load_graph(&common.graph, common.seed)?;
            let cfg = CertificateConfig { tolerances: solver.rank_config(common.seed)?.certificate.tolerances, ..CertificateConfig::default() };
            let cert = match build_certificate(&g, k, &cfg, common.seed) {
                Ok(c) => c,
                Err(e @ Error::CertificateSearchFailed(_)) => {
                    return Err(Failure { code: EXIT_CERTIFICATE, error: anyhow!(e) })
                }
                Err(e) => return Err(e.into()),
            };
            let verification = verify_certificate(&g, &cert, trials, common.seed, &cfg)?;
            let passed = verification.passed;
            #[derive(Serialize)]
            struct Output {
                certificate: gaussrank::completion::Certificate,
                verification: gaussrank::completion::VerificationReport,
            }
            let out = Output { certificate: cert, verification };
            emit_json(common.out.as_deref(), "certificate", Some((&common.graph, &g)), common.seed, out)?;
            Ok(if passed { 0 } else { EXIT_CERTIFICATE })
        }
        Command::Generate { spec, seed, out } => {
            let parsed: GraphSpec = spec.parse().with_context(|| format!("bad generator spec `{spec}`"))?;
            let g = parsed.build(seed)?;
            emit(out.as_deref(), &graph::write_edge_list(&g))?;
            Ok(0)
        }
        Command::Experiment { preset, solver, out } => {
            let text = std::fs::read_to_string(&preset).with_context(|| format!("reading {}", preset.display()))?;
            let cfg = ExperimentConfig::parse(&text).with_context(|| format!("parsing {}", preset.display()))?;
            let report = run_experiment(&cfg, &solver.rank_config(cfg.seed)?)?;
            emit_json(out.as_deref(), "experiment", None, cfg.seed, report)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}
