//! `dsta` command-line front end.
//!
//! Exit codes: 0 success, 1 a check failed, 2 usage or input error,
//! 3 size or resource error.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::algorithms::Algorithm;
use crate::consensus::{decentralized_dsta, CommGraph};
use crate::harness::{run_algorithm, run_suite, sweep_p, CampaignConfig, ResultRow, Suite, SuiteConfig, VerifyConfig};
use crate::model::{generate_scenario, ImportantWeight, Mode, Scenario, ScenarioParams};
use crate::oracle::Utility;
use crate::Error;

/// Default directory for generated files when no explicit path is given.
pub const OUT_DIR_ENV: &str = "DSTA_OUT_DIR";

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "dsta", version, about = "Sample-greedy multi-robot task allocation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a random scenario file.
    Gen(GenArgs),
    /// Run one algorithm on a scenario file and print a result row.
    Run(RunArgs),
    /// Run a Monte Carlo campaign.
    Campaign(CampaignArgs),
    /// Check the expected approximation guarantee against exhaustive optima.
    Verify(VerifyArgs),
    /// Run a property-test suite.
    Props(PropsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Monotone,
    Nonmonotone,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Monotone => Mode::Monotone,
            ModeArg::Nonmonotone => Mode::NonMonotone,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgoArg {
    Dsta,
    DstaCentral,
    Greedy,
    Brute,
}

impl From<AlgoArg> for Algorithm {
    fn from(a: AlgoArg) -> Self {
        match a {
            AlgoArg::Dsta => Algorithm::Dsta,
            AlgoArg::DstaCentral => Algorithm::DstaCentral,
            AlgoArg::Greedy => Algorithm::Greedy,
            AlgoArg::Brute => Algorithm::Brute,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphArg {
    Complete,
    Ring,
    Line,
    File,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WeightArg {
    Fitness,
    Value,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Submodular,
    Monotone,
    Matroid,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Submodular => Suite::Submodular,
            SuiteArg::Monotone => Suite::Monotone,
            SuiteArg::Matroid => Suite::Matroid,
        }
    }
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub tasks: u64,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub agents: u64,
    #[arg(long, value_enum, default_value = "monotone")]
    pub mode: ModeArg,
    #[arg(long, default_value_t = 10.0)]
    pub world_km: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Reading of the fixed important-task weights.
    #[arg(long, value_enum, default_value = "fitness")]
    pub important_weight: WeightArg,
    /// Output file; defaults to `$DSTA_OUT_DIR/scenario-<seed>.json`.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(long)]
    pub scenario: PathBuf,
    #[arg(long, value_enum, default_value = "dsta")]
    pub algo: AlgoArg,
    /// Sampling probability, ignored by `greedy` and `brute`.
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long, value_enum, default_value = "complete")]
    pub graph: GraphArg,
    /// Edge list used with `--graph file`.
    #[arg(long)]
    pub graph_file: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the consensus trace (JSON lines) here; `dsta` only.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    /// Print the CSV header before the row.
    #[arg(long)]
    pub header: bool,
    /// Fill in `wall_time_ms`; otherwise it is 0.
    #[arg(long)]
    pub wall_time: bool,
}

#[derive(Debug, Args)]
pub struct CampaignArgs {
    /// TOML campaign description; defaults to the desk grid for `--mode`.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    /// Use the 200/300-task, 10..50-agent grid.
    #[arg(long)]
    pub paper_scale: bool,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub trials: Option<usize>,
    /// Comma-separated sampling probabilities.
    #[arg(long, value_delimiter = ',')]
    pub p: Option<Vec<f64>>,
    /// Output directory; defaults to the config value, then `$DSTA_OUT_DIR`.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    #[arg(long)]
    pub wall_time: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub mode: ModeArg,
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    #[arg(long, default_value_t = 5)]
    pub tasks: usize,
    #[arg(long, default_value_t = 3)]
    pub agents: usize,
    #[arg(long, default_value_t = 30)]
    pub instances: usize,
    #[arg(long, default_value_t = 500)]
    pub seeds: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = crate::harness::DEFAULT_SLACK)]
    pub slack: f64,
}

#[derive(Debug, Args)]
pub struct PropsArgs {
    #[arg(long, value_enum)]
    pub suite: SuiteArg,
    /// Sampler draws per (instance, agent).
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, default_value_t = 5)]
    pub instances: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

/// Failure of a subcommand, mapped to an exit code.
#[derive(Debug)]
pub enum Failure {
    Check(String),
    Error(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::TooLarge(_) | Error::Io { .. } => EXIT_RESOURCE,
        _ => EXIT_USAGE,
    }
}

pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let stdout = std::io::stdout();
    match run(cli, &mut stdout.lock()) {
        Ok(()) => EXIT_OK,
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            EXIT_CHECK_FAILED
        }
        Err(Failure::Error(e)) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<(), Failure> {
    match cli.command {
        Command::Gen(a) => gen(a, out),
        Command::Run(a) => run_one(a, out),
        Command::Campaign(a) => campaign(a, out),
        Command::Verify(a) => verify(a, out),
        Command::Props(a) => props(a, out),
    }
}

fn write_out(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes())
        .map_err(|e| Failure::Error(Error::io("<stdout>", e)))
}

fn default_dir() -> PathBuf {
    std::env::var_os(OUT_DIR_ENV).map_or_else(|| PathBuf::from("."), PathBuf::from)
}

fn gen(a: GenArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let params = ScenarioParams {
        n_tasks: a.tasks as usize,
        n_agents: a.agents as usize,
        mode: a.mode.into(),
        world_km: a.world_km,
        seed: a.seed,
        important_weight: match a.important_weight {
            WeightArg::Fitness => ImportantWeight::Fitness,
            WeightArg::Value => ImportantWeight::Value,
        },
    };
    let scenario = generate_scenario(&params)?;
    let text = scenario.to_json()?;
    let path = a
        .out
        .unwrap_or_else(|| default_dir().join(format!("scenario-{}.json", a.seed)));
    std::fs::write(&path, &text).map_err(|e| Error::io(&path, e))?;
    let digest = hex::encode(Sha256::digest(text.as_bytes()));
    write_out(out, &format!("sha256:{digest}  {}\n", path.display()))
}

fn build_graph(kind: GraphArg, file: Option<&Path>, n_agents: usize) -> crate::Result<CommGraph> {
    match kind {
        GraphArg::Complete => CommGraph::complete(n_agents),
        GraphArg::Ring => CommGraph::ring(n_agents),
        GraphArg::Line => CommGraph::line(n_agents),
        GraphArg::File => {
            let path = file.ok_or_else(|| Error::Config("--graph file needs --graph-file".into()))?;
            CommGraph::load(path, n_agents)
        }
    }
}

fn run_one(a: RunArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let scenario = Scenario::load(&a.scenario)?;
    let algo: Algorithm = a.algo.into();
    if !algo.uses_p() && a.p.is_some() {
        eprintln!("warning: --p is ignored by {algo}, which always runs with p = 1");
    }
    if algo != Algorithm::Dsta && a.trace.is_some() {
        eprintln!("warning: --trace only applies to the dsta algorithm");
    }
    let p = a.p.unwrap_or(0.5);
    let graph = build_graph(a.graph, a.graph_file.as_deref(), scenario.n_agents())?;
    let start = std::time::Instant::now();
    let result = match (algo, &a.trace) {
        (Algorithm::Dsta, Some(path)) => {
            let run = decentralized_dsta(&scenario, &graph, p, a.seed, true)?;
            let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
            run.trace
                .write_jsonl(std::io::BufWriter::new(file))
                .map_err(|e| Error::io(path, e))?;
            run.result
        }
        _ => run_algorithm(&scenario, algo, p, a.seed, &graph)?,
    };
    let ms = if a.wall_time {
        start.elapsed().as_secs_f64() * 1e3
    } else {
        0.0
    };
    let row = ResultRow::new(&scenario, algo, &result, a.seed, ms);
    if a.header {
        write_out(out, &format!("{}\n", crate::harness::RESULTS_HEADER))?;
    }
    write_out(out, &row.to_csv_line()?)
}

fn campaign(a: CampaignArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let mut config = match &a.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
            toml::from_str::<CampaignConfig>(&text)
                .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?
        }
        None => CampaignConfig::desk(a.mode.map_or(Mode::Monotone, Into::into)),
    };
    if let Some(mode) = a.mode {
        config.mode = mode.into();
    }
    if a.paper_scale {
        config = config.paper_scale();
    }
    if let Some(seed) = a.seed {
        config.master_seed = seed;
    }
    if let Some(trials) = a.trials {
        config.trials = trials;
    }
    if let Some(p) = a.p {
        config.p = p;
    }
    if a.wall_time {
        config.wall_time = true;
    }
    config.output = a.out.or(config.output).or_else(|| Some(default_dir()));

    let report = sweep_p(&config, a.jobs)?;
    write_out(out, &report.output.summary_csv()?)?;

    if let Some(t) = report.trends.iter().find(|t| !t.ok()) {
        return Err(Failure::Check(format!(
            "{} at {} tasks / {} agents is not non-decreasing in p ({} value, {} oracle-call inversions)",
            t.algorithm, t.n_tasks, t.n_agents, t.value_inversions, t.calls_inversions
        )));
    }
    if config.mode == Mode::NonMonotone {
        for s in report.output.summaries.iter().filter(|s| s.algorithm == "dsta" && s.p == 0.5) {
            if let Some(g) = report.output.summary(Algorithm::Greedy, s.n_tasks, s.n_agents, 1.0) {
                if s.mean_value < g.mean_value {
                    return Err(Failure::Check(format!(
                        "non-monotone cell {} tasks / {} agents: dsta mean {} below greedy mean {}",
                        s.n_tasks, s.n_agents, s.mean_value, g.mean_value
                    )));
                }
            }
        }
    }
    Ok(())
}

fn verify(a: VerifyArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let config = VerifyConfig {
        mode: a.mode.into(),
        p: a.p,
        n_tasks: a.tasks,
        n_agents: a.agents,
        n_instances: a.instances,
        n_seeds: a.seeds,
        master_seed: a.seed,
        slack: a.slack,
    };
    let report = crate::harness::verify_guarantee(&config)?;
    #[derive(Serialize)]
    struct Summary {
        mode: Mode,
        p: f64,
        bound: f64,
        slack: f64,
        instances: usize,
        seeds: usize,
        worst_ratio: f64,
        margin: f64,
        passes: bool,
    }
    let summary = Summary {
        mode: config.mode,
        p: config.p,
        bound: report.bound,
        slack: report.slack,
        instances: report.instances.len(),
        seeds: config.n_seeds,
        worst_ratio: report.worst_ratio,
        margin: report.margin,
        passes: report.passes,
    };
    write_out(out, &format!("{}\n", serde_json::to_string(&summary).expect("plain struct")))?;
    if !report.passes {
        let worst = report
            .instances
            .iter()
            .find(|i| i.mean_value < report.bound * i.opt * (1.0 - report.slack))
            .expect("a failing instance exists");
        return Err(Failure::Check(format!(
            "instance {}: mean {} below (1 - {}) x {} x OPT {}",
            worst.instance, worst.mean_value, report.slack, report.bound, worst.opt
        )));
    }
    Ok(())
}

fn props(a: PropsArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let report = run_suite(&SuiteConfig {
        trials: a.trials,
        instances: a.instances,
        seed: a.seed,
        ..SuiteConfig::new(a.suite.into())
    })?;
    write_out(out, &format!("{}\n", serde_json::to_string(&report).expect("plain struct")))?;
    match report.first_failure {
        Some(msg) => Err(Failure::Check(msg)),
        None => Ok(()),
    }
}
