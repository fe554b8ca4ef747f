use std::fs::File;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::stats::{summarize, CellSummary};
use crate::algorithms::{brute_force_optimal, centralized_dsta, sequential_greedy, Algorithm, RunResult, DEFAULT_MAX_GROUND};
use crate::consensus::{decentralized_dsta, CommGraph};
use crate::model::{generate_scenario, ImportantWeight, Mode, Scenario, ScenarioParams};
use crate::rng::{check_probability, derive_seed};
use crate::{Error, Result};

pub const RESULTS_HEADER: &str = "seed,p,mode,n_tasks,n_agents,algorithm,total_value,oracle_calls,rounds,wall_time_ms";

/// Communication topology for decentralised runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphKind {
    #[default]
    Complete,
    Ring,
    Line,
}

impl GraphKind {
    pub fn build(self, n_agents: usize) -> Result<CommGraph> {
        match self {
            GraphKind::Complete => CommGraph::complete(n_agents),
            GraphKind::Ring => CommGraph::ring(n_agents),
            GraphKind::Line => CommGraph::line(n_agents),
        }
    }
}

fn default_world() -> f64 {
    10.0
}

/// A grid of cells `(n_tasks, n_agents, p)`, each run for `trials` trials.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CampaignConfig {
    pub mode: Mode,
    pub n_tasks: Vec<usize>,
    pub n_agents: Vec<usize>,
    pub p: Vec<f64>,
    pub trials: usize,
    pub master_seed: u64,
    pub algorithms: Vec<Algorithm>,
    /// Directory receiving the CSV files; nothing is written when absent.
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(default = "default_world")]
    pub world_km: f64,
    #[serde(default)]
    pub graph: GraphKind,
    #[serde(default)]
    pub important_weight: ImportantWeight,
    /// Record wall-clock time per run. Off by default so that output files
    /// are reproducible byte for byte.
    #[serde(default)]
    pub wall_time: bool,
}

impl CampaignConfig {
    /// Desk-scale grid: 60 tasks, 5/10/15 agents, 10 trials, p = 0.5.
    pub fn desk(mode: Mode) -> Self {
        Self {
            mode,
            n_tasks: vec![60],
            n_agents: vec![5, 10, 15],
            p: vec![0.5],
            trials: 10,
            master_seed: 0,
            algorithms: vec![Algorithm::Dsta, Algorithm::Greedy],
            output: None,
            world_km: 10.0,
            graph: GraphKind::Complete,
            important_weight: ImportantWeight::default(),
            wall_time: false,
        }
    }

    /// Switches the grid to 200 and 300 tasks with 10..=50 agents.
    pub fn paper_scale(mut self) -> Self {
        self.n_tasks = vec![200, 300];
        self.n_agents = vec![10, 20, 30, 40, 50];
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        if self.n_tasks.is_empty() || self.n_agents.is_empty() || self.p.is_empty() || self.algorithms.is_empty() {
            return Err(Error::Config("every grid axis needs at least one value".into()));
        }
        for &p in &self.p {
            check_probability(p)?;
        }
        for &t in &self.n_tasks {
            for &a in &self.n_agents {
                if a == 0 || a > t {
                    return Err(Error::Config(format!("cell with {t} tasks and {a} agents is invalid")));
                }
            }
        }
        Ok(())
    }

    fn grid(&self) -> Vec<(usize, usize)> {
        self.n_tasks
            .iter()
            .flat_map(|&t| self.n_agents.iter().map(move |&a| (t, a)))
            .collect()
    }

    pub fn trial_seed(&self, n_tasks: usize, n_agents: usize, trial: usize) -> u64 {
        derive_seed(self.master_seed, &[n_tasks as u64, n_agents as u64, trial as u64])
    }
}

/// One results CSV row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub seed: u64,
    pub p: f64,
    pub mode: String,
    pub n_tasks: usize,
    pub n_agents: usize,
    pub algorithm: String,
    pub total_value: f64,
    pub oracle_calls: u64,
    pub rounds: usize,
    pub wall_time_ms: f64,
}

impl ResultRow {
    pub fn new(scenario: &Scenario, algorithm: Algorithm, result: &RunResult, seed: u64, wall_time_ms: f64) -> Self {
        use crate::oracle::Utility;
        Self {
            seed,
            p: result.p,
            mode: scenario.mode().as_str().to_owned(),
            n_tasks: scenario.n_tasks(),
            n_agents: scenario.n_agents(),
            algorithm: algorithm.as_str().to_owned(),
            total_value: result.total_value,
            oracle_calls: result.oracle_calls,
            rounds: result.rounds,
            wall_time_ms,
        }
    }

    pub fn to_csv_line(&self) -> Result<String> {
        let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
        w.serialize(self).map_err(|e| Error::Parse(e.to_string()))?;
        let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

/// Runs one algorithm on one scenario. `seed` drives the pair sampling.
pub fn run_algorithm(scenario: &Scenario, algorithm: Algorithm, p: f64, seed: u64, graph: &CommGraph) -> Result<RunResult> {
    match algorithm {
        Algorithm::Dsta => Ok(decentralized_dsta(scenario, graph, p, seed, false)?.result),
        Algorithm::DstaCentral => centralized_dsta(scenario, p, seed),
        Algorithm::Greedy => sequential_greedy(scenario),
        Algorithm::Brute => brute_force_optimal(scenario, DEFAULT_MAX_GROUND),
    }
}

#[derive(Debug, Clone)]
pub struct CampaignOutput {
    pub rows: Vec<ResultRow>,
    pub summaries: Vec<CellSummary>,
}

impl CampaignOutput {
    pub fn results_csv(&self) -> Result<String> {
        write_csv(&self.rows)
    }

    pub fn summary_csv(&self) -> Result<String> {
        write_csv(&self.summaries)
    }

    pub fn summary(&self, algorithm: Algorithm, n_tasks: usize, n_agents: usize, p: f64) -> Option<&CellSummary> {
        self.summaries.iter().find(|s| {
            s.algorithm == algorithm.as_str() && s.n_tasks == n_tasks && s.n_agents == n_agents && s.p == p
        })
    }
}

fn write_csv<T: Serialize>(records: &[T]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in records {
        w.serialize(r).map_err(|e| Error::Parse(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Opens every output file up front so an unwritable destination fails
/// before any computation.
struct OutputFiles {
    results: File,
    summary: File,
    value_vs_agents: File,
    calls_vs_agents: File,
    value_vs_p: File,
}

impl OutputFiles {
    fn create(dir: &Path) -> Result<Self> {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let open = |name: &str| {
            let path = dir.join(name);
            File::create(&path).map_err(|e| Error::io(path, e))
        };
        Ok(Self {
            results: open("results.csv")?,
            summary: open("summary.csv")?,
            value_vs_agents: open("value_vs_agents.csv")?,
            calls_vs_agents: open("calls_vs_agents.csv")?,
            value_vs_p: open("value_vs_p.csv")?,
        })
    }

    fn write(mut self, dir: &Path, out: &CampaignOutput) -> Result<()> {
        let io = |name: &str| {
            let path = dir.join(name);
            move |e| Error::io(path, e)
        };
        self.results.write_all(out.results_csv()?.as_bytes()).map_err(io("results.csv"))?;
        self.summary.write_all(out.summary_csv()?.as_bytes()).map_err(io("summary.csv"))?;

        let mut by_agents = String::from("mode,n_tasks,p,algorithm,n_agents,mean_value,std_value\n");
        let mut calls = String::from("mode,n_tasks,p,algorithm,n_agents,mean_oracle_calls,std_oracle_calls\n");
        let mut by_p = String::from("mode,n_tasks,n_agents,algorithm,p,mean_value,mean_oracle_calls\n");
        let mut sorted: Vec<&CellSummary> = out.summaries.iter().collect();
        sorted.sort_by(|a, b| {
            (&a.mode, a.n_tasks, &a.algorithm, a.p.to_bits(), a.n_agents)
                .cmp(&(&b.mode, b.n_tasks, &b.algorithm, b.p.to_bits(), b.n_agents))
        });
        for s in &sorted {
            by_agents += &format!("{},{},{},{},{},{},{}\n", s.mode, s.n_tasks, s.p, s.algorithm, s.n_agents, s.mean_value, s.std_value);
            calls += &format!(
                "{},{},{},{},{},{},{}\n",
                s.mode, s.n_tasks, s.p, s.algorithm, s.n_agents, s.mean_oracle_calls, s.std_oracle_calls
            );
        }
        sorted.sort_by(|a, b| {
            (&a.mode, a.n_tasks, a.n_agents, &a.algorithm, a.p.to_bits())
                .cmp(&(&b.mode, b.n_tasks, b.n_agents, &b.algorithm, b.p.to_bits()))
        });
        for s in &sorted {
            by_p += &format!(
                "{},{},{},{},{},{},{}\n",
                s.mode, s.n_tasks, s.n_agents, s.algorithm, s.p, s.mean_value, s.mean_oracle_calls
            );
        }
        self.value_vs_agents.write_all(by_agents.as_bytes()).map_err(io("value_vs_agents.csv"))?;
        self.calls_vs_agents.write_all(calls.as_bytes()).map_err(io("calls_vs_agents.csv"))?;
        self.value_vs_p.write_all(by_p.as_bytes()).map_err(io("value_vs_p.csv"))?;
        Ok(())
    }
}

/// Runs every cell and trial of `config`.
///
/// Trial `k` of grid point `(T, A)` uses seed `derive(master, T, A, k)` both
/// to generate the scenario and to draw the samples, so every `p` sees the
/// same scenario. Sampling algorithms run once per `p`; the others run once
/// per trial and report `p = 1`. Rows come out sorted by grid point, trial,
/// configured algorithm order and `p`, regardless of `jobs`.
pub fn run_campaign(config: &CampaignConfig, jobs: usize) -> Result<CampaignOutput> {
    config.validate()?;
    let files = config.output.as_deref().map(OutputFiles::create).transpose()?;

    let work: Vec<(usize, usize, usize)> = config
        .grid()
        .into_iter()
        .flat_map(|(t, a)| (0..config.trials).map(move |k| (t, a, k)))
        .collect();
    let run_one = |&(n_tasks, n_agents, trial): &(usize, usize, usize)| -> Result<Vec<ResultRow>> {
        let seed = config.trial_seed(n_tasks, n_agents, trial);
        let scenario = generate_scenario(&ScenarioParams {
            n_tasks,
            n_agents,
            mode: config.mode,
            world_km: config.world_km,
            seed,
            important_weight: config.important_weight,
        })?;
        let graph = config.graph.build(n_agents)?;
        let mut rows = Vec::new();
        for &algo in &config.algorithms {
            // p-independent algorithms run once per trial
            let ps: &[f64] = if algo.uses_p() { &config.p } else { &[1.0] };
            for &p in ps {
                let start = Instant::now();
                let result = run_algorithm(&scenario, algo, p, seed, &graph)?;
                let ms = if config.wall_time {
                    start.elapsed().as_secs_f64() * 1e3
                } else {
                    0.0
                };
                rows.push(ResultRow::new(&scenario, algo, &result, seed, ms));
            }
        }
        Ok(rows)
    };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    let chunks: Vec<Result<Vec<ResultRow>>> = pool.install(|| work.par_iter().map(run_one).collect());
    let mut rows = Vec::new();
    for chunk in chunks {
        rows.extend(chunk?);
    }
    let output = CampaignOutput {
        summaries: summarize(&rows),
        rows,
    };
    if let (Some(files), Some(dir)) = (files, config.output.as_deref()) {
        files.write(dir, &output)?;
    }
    Ok(output)
}

/// Recomputes a row's total value from its fields alone.
pub fn replay_row(row: &ResultRow, config: &CampaignConfig) -> Result<f64> {
    let mode: Mode = row.mode.parse()?;
    let algorithm: Algorithm = row.algorithm.parse()?;
    let scenario = generate_scenario(&ScenarioParams {
        n_tasks: row.n_tasks,
        n_agents: row.n_agents,
        mode,
        world_km: config.world_km,
        seed: row.seed,
        important_weight: config.important_weight,
    })?;
    let graph = config.graph.build(row.n_agents)?;
    Ok(run_algorithm(&scenario, algorithm, row.p, row.seed, &graph)?.total_value)
}

/// Trend of one `(algorithm, n_tasks, n_agents)` curve along `p`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrendCheck {
    pub algorithm: String,
    pub n_tasks: usize,
    pub n_agents: usize,
    pub value_inversions: usize,
    pub calls_inversions: usize,
}

impl TrendCheck {
    /// At most one inversion per curve is tolerated as noise.
    pub fn ok(&self) -> bool {
        self.value_inversions <= 1 && self.calls_inversions <= 1
    }
}

#[derive(Debug, Clone)]
pub struct SweepReport {
    pub output: CampaignOutput,
    pub trends: Vec<TrendCheck>,
}

impl SweepReport {
    pub fn ok(&self) -> bool {
        self.trends.iter().all(TrendCheck::ok)
    }
}

/// A campaign along the `p` axis, checking that mean value and mean oracle
/// calls do not decrease as `p` grows.
pub fn sweep_p(config: &CampaignConfig, jobs: usize) -> Result<SweepReport> {
    let output = run_campaign(config, jobs)?;
    let mut p_sorted = config.p.clone();
    p_sorted.sort_by(f64::total_cmp);
    let mut trends = Vec::new();
    for &algo in config.algorithms.iter().filter(|a| a.uses_p()) {
        for &t in &config.n_tasks {
            for &a in &config.n_agents {
                let curve: Vec<&CellSummary> = p_sorted
                    .iter()
                    .filter_map(|&p| output.summary(algo, t, a, p))
                    .collect();
                let inversions = |f: fn(&CellSummary) -> f64| curve.windows(2).filter(|w| f(w[1]) < f(w[0])).count();
                trends.push(TrendCheck {
                    algorithm: algo.as_str().to_owned(),
                    n_tasks: t,
                    n_agents: a,
                    value_inversions: inversions(|s| s.mean_value),
                    calls_inversions: inversions(|s| s.mean_oracle_calls),
                });
            }
        }
    }
    Ok(SweepReport { output, trends })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny(mode: Mode) -> CampaignConfig {
        CampaignConfig {
            n_tasks: vec![12],
            n_agents: vec![3],
            trials: 2,
            master_seed: 5,
            algorithms: vec![Algorithm::Dsta, Algorithm::DstaCentral, Algorithm::Greedy],
            ..CampaignConfig::desk(mode)
        }
    }

    #[test]
    fn validation() {
        let mut c = tiny(Mode::Monotone);
        c.trials = 0;
        assert!(c.validate().is_err());
        let mut c = tiny(Mode::Monotone);
        c.p = vec![0.0];
        assert!(c.validate().is_err());
        let mut c = tiny(Mode::Monotone);
        c.n_agents = vec![13];
        assert!(c.validate().is_err());
    }

    #[test]
    fn single_cell_single_trial_gives_one_row_per_algorithm() {
        let mut c = tiny(Mode::NonMonotone);
        c.trials = 1;
        let out = run_campaign(&c, 1).unwrap();
        assert_eq!(out.rows.len(), 3);
        assert_eq!(out.summaries.len(), 3);
        // decentralised and centralised runs agree
        assert_eq!(out.rows[0].total_value, out.rows[1].total_value);
        assert_eq!(out.rows[0].oracle_calls, out.rows[1].oracle_calls);
        assert_eq!(out.rows[2].p, 1.0);
    }

    #[test]
    fn csv_header_is_stable() {
        let out = run_campaign(&tiny(Mode::Monotone), 1).unwrap();
        let csv = out.results_csv().unwrap();
        assert_eq!(csv.lines().next().unwrap(), RESULTS_HEADER);
        assert_eq!(csv.lines().count(), 1 + out.rows.len());
    }

    #[test]
    fn unwritable_output_fails_before_work() {
        let dir = tempfile::tempdir().unwrap();
        let blocker = dir.path().join("file");
        std::fs::write(&blocker, "x").unwrap();
        let mut c = tiny(Mode::Monotone);
        c.output = Some(blocker.join("sub"));
        assert!(matches!(run_campaign(&c, 1), Err(Error::Io { .. })));
    }

    #[test]
    fn rows_replay() {
        let c = tiny(Mode::NonMonotone);
        let out = run_campaign(&c, 2).unwrap();
        for row in &out.rows {
            assert_eq!(replay_row(row, &c).unwrap(), row.total_value);
        }
    }

    #[test]
    fn config_from_toml() {
        let text = r#"
            mode = "nonmonotone"
            n_tasks = [60]
            n_agents = [5, 10]
            p = [0.1, 0.5]
            trials = 3
            master_seed = 9
            algorithms = ["dsta", "greedy"]
            graph = "ring"
        "#;
        let c: CampaignConfig = toml::from_str(text).unwrap();
        assert_eq!(c.mode, Mode::NonMonotone);
        assert_eq!(c.graph, GraphKind::Ring);
        assert_eq!(c.world_km, 10.0);
        assert!(!c.wall_time);
        assert!(toml::from_str::<CampaignConfig>("mode = \"monotone\"\nbogus = 1").is_err());
    }
}
