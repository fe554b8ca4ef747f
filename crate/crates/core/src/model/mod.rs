//! Surveillance scenarios and the two utility models built on them.
//!
//! - Monotone: per-task discounted score `Σ_j λ_j^{τ_j} b_j`, where `τ_j` is
//!   the path length (km) from the agent's start through its bundle, in
//!   order, up to task `j`.
//! - Non-monotone: survival-weighted value minus pairwise penalties,
//!   `P_S(|T_a|) Σ σ_j m_aj − λ_a Σ_{i≠j} e^{σ_i σ_j}`, clamped at zero.

mod file;
mod generate;
mod path;
mod surveillance;

use serde::{Deserialize, Serialize};

use crate::ids::{AgentId, TaskId};
use crate::oracle::Utility;
use crate::{Error, Result};

pub use file::{ScenarioFile, SCENARIO_FORMAT, SCENARIO_VERSION};
pub use generate::{generate_scenario, ImportantWeight, ScenarioParams};
pub use surveillance::{detection_curve, detection_probability};

/// Discount used by the monotone model.
pub const DEFAULT_DISCOUNT: f64 = 0.95;
/// Static task score used by the monotone model.
pub const DEFAULT_SCORE: f64 = 1.0;
/// Detection growth rate `α_a`.
pub const DEFAULT_ALPHA: f64 = 1.0;
/// Penalty scale `λ_a`.
pub const DEFAULT_LAMBDA_SCALE: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    #[serde(rename = "monotone")]
    Monotone,
    #[serde(rename = "nonmonotone")]
    NonMonotone,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Monotone => "monotone",
            Mode::NonMonotone => "nonmonotone",
        }
    }

    pub fn is_monotone(self) -> bool {
        self == Mode::Monotone
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "monotone" => Ok(Mode::Monotone),
            "nonmonotone" | "non-monotone" => Ok(Mode::NonMonotone),
            other => Err(Error::Config(format!("unknown mode {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Task {
    pub id: TaskId,
    /// km
    pub x: f64,
    pub y: f64,
    /// Importance `σ_j`.
    pub sigma: f64,
    /// Static score `b_j`.
    pub score: f64,
    /// Discount `λ_j`.
    pub discount: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Agent {
    pub id: AgentId,
    pub x: f64,
    pub y: f64,
    /// Single-task detection probability `P_0`.
    pub p0: f64,
    pub alpha: f64,
    /// Penalty scale `λ_a`.
    pub lambda_scale: f64,
    /// Fitness `m_aj` per task. Empty in monotone scenarios.
    pub fitness: Vec<f64>,
}

/// An immutable, validated problem instance.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    mode: Mode,
    world_km: f64,
    tasks: Vec<Task>,
    agents: Vec<Agent>,
    /// `P_S(n)` per agent for `n = 0..=|T|`; empty in monotone mode.
    survival: Vec<Vec<f64>>,
}

impl Scenario {
    pub fn new(mode: Mode, world_km: f64, tasks: Vec<Task>, agents: Vec<Agent>) -> Result<Self> {
        if !(world_km > 0.0 && world_km.is_finite()) {
            return Err(Error::Config(format!("world size must be positive, got {world_km}")));
        }
        let in_world = |x: f64, y: f64| (0.0..=world_km).contains(&x) && (0.0..=world_km).contains(&y);
        for (i, t) in tasks.iter().enumerate() {
            if t.id != TaskId(i) {
                return Err(Error::Config(format!("task ids must be dense, found {} at {i}", t.id)));
            }
            if !in_world(t.x, t.y) {
                return Err(Error::Config(format!("{} lies outside the world", t.id)));
            }
            if !(t.sigma > 0.0 && t.sigma.is_finite()) {
                return Err(Error::Config(format!("{} importance must be positive", t.id)));
            }
            if !(t.discount > 0.0 && t.discount < 1.0) {
                return Err(Error::Config(format!("{} discount must lie in (0, 1)", t.id)));
            }
            if !(t.score > 0.0 && t.score.is_finite()) {
                return Err(Error::Config(format!("{} score must be positive", t.id)));
            }
        }
        for (i, a) in agents.iter().enumerate() {
            if a.id != AgentId(i) {
                return Err(Error::Config(format!("agent ids must be dense, found {} at {i}", a.id)));
            }
            if !in_world(a.x, a.y) {
                return Err(Error::Config(format!("{} lies outside the world", a.id)));
            }
        }
        let survival = match mode {
            Mode::Monotone => Vec::new(),
            Mode::NonMonotone => {
                let mut curves = Vec::with_capacity(agents.len());
                for a in &agents {
                    if !(a.p0 > 0.0 && a.p0 < 1.0) {
                        return Err(Error::Config(format!("{} P0 must lie in (0, 1)", a.id)));
                    }
                    if !(a.alpha >= 1.0 && a.alpha.is_finite()) {
                        return Err(Error::Config(format!("{} alpha must be at least 1", a.id)));
                    }
                    if !(a.lambda_scale >= 0.0 && a.lambda_scale.is_finite()) {
                        return Err(Error::Config(format!("{} penalty scale must be non-negative", a.id)));
                    }
                    if a.fitness.len() != tasks.len() {
                        return Err(Error::Config(format!(
                            "{} has {} fitness entries for {} tasks",
                            a.id,
                            a.fitness.len(),
                            tasks.len()
                        )));
                    }
                    if a.fitness.iter().any(|m| !(*m >= 0.0 && m.is_finite())) {
                        return Err(Error::Config(format!("{} fitness must be non-negative", a.id)));
                    }
                    let detection = detection_curve(a.p0, a.alpha, tasks.len())?;
                    curves.push(detection.iter().map(|pd| 1.0 - pd).collect());
                }
                curves
            }
        };
        Ok(Self {
            mode,
            world_km,
            tasks,
            agents,
            survival,
        })
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn world_km(&self) -> f64 {
        self.world_km
    }

    pub fn tasks(&self) -> &[Task] {
        &self.tasks
    }

    pub fn agents(&self) -> &[Agent] {
        &self.agents
    }

    pub fn task(&self, id: TaskId) -> Result<&Task> {
        self.tasks.get(id.0).ok_or(Error::UnknownId { kind: "task", id: id.0 })
    }

    pub fn agent(&self, id: AgentId) -> Result<&Agent> {
        self.agents.get(id.0).ok_or(Error::UnknownId { kind: "agent", id: id.0 })
    }

    pub fn task_ids(&self) -> impl Iterator<Item = TaskId> {
        (0..self.tasks.len()).map(TaskId)
    }

    /// Pairwise penalty `d^a_ij = e^{σ_i σ_j}`; symmetric, identical for every agent.
    pub fn penalty_weight(&self, i: TaskId, j: TaskId) -> f64 {
        (self.tasks[i.0].sigma * self.tasks[j.0].sigma).exp()
    }

    /// Task value `w_aj = σ_j m_aj`.
    pub fn task_value(&self, agent: AgentId, task: TaskId) -> f64 {
        self.tasks[task.0].sigma * self.agents[agent.0].fitness[task.0]
    }

    fn check_bundle(&self, agent: AgentId, bundle: &[TaskId]) -> Result<()> {
        self.agent(agent)?;
        for (i, t) in bundle.iter().enumerate() {
            self.task(*t)?;
            if bundle[..i].contains(t) {
                return Err(Error::Precondition(format!("task {t} repeated in bundle")));
            }
        }
        Ok(())
    }

    fn require_mode(&self, mode: Mode) -> Result<()> {
        if self.mode != mode {
            return Err(Error::Precondition(format!(
                "operation needs a {mode} scenario, this one is {}",
                self.mode
            )));
        }
        Ok(())
    }
}

impl Utility for Scenario {
    fn n_tasks(&self) -> usize {
        self.tasks.len()
    }

    fn n_agents(&self) -> usize {
        self.agents.len()
    }

    fn raw_value(&self, agent: AgentId, bundle: &[TaskId]) -> f64 {
        debug_assert!(self.check_bundle(agent, bundle).is_ok());
        match self.mode {
            Mode::Monotone => self.path_value(agent, bundle),
            Mode::NonMonotone => self.surveillance_value(agent, bundle),
        }
    }

    fn ordered(&self) -> bool {
        self.mode == Mode::Monotone
    }
}
