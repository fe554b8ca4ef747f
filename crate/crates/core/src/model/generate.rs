use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{Agent, Mode, Scenario, Task, DEFAULT_ALPHA, DEFAULT_DISCOUNT, DEFAULT_LAMBDA_SCALE, DEFAULT_SCORE};
use crate::ids::{AgentId, TaskId};
use crate::rng::scenario_rng;
use crate::{Error, Result};

/// How the fixed 0.3 / 0.1 figures for important tasks are read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum ImportantWeight {
    /// As fitness `m_aj`: the task value is `σ_j · 0.3` (or `σ_j · 0.1`).
    #[default]
    #[serde(rename = "fitness")]
    Fitness,
    /// As the task value `w_aj` itself: `m_aj = 0.3 / σ_j` (or `0.1 / σ_j`).
    #[serde(rename = "value")]
    Value,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioParams {
    pub n_tasks: usize,
    pub n_agents: usize,
    pub mode: Mode,
    pub world_km: f64,
    pub seed: u64,
    pub important_weight: ImportantWeight,
}

impl ScenarioParams {
    pub fn new(n_tasks: usize, n_agents: usize, mode: Mode, seed: u64) -> Self {
        Self {
            n_tasks,
            n_agents,
            mode,
            world_km: 10.0,
            seed,
            important_weight: ImportantWeight::default(),
        }
    }
}

const MATCHED_FITNESS: f64 = 0.3;
const UNMATCHED_FITNESS: f64 = 0.1;

/// Draws a random scenario.
///
/// The ChaCha8 stream is consumed in this order: task positions `(x, y)`,
/// agent positions `(x, y)`, then (non-monotone only) importances `σ_j` for
/// all tasks, then fitness `m_aj` for ordinary tasks, task-major.
///
/// In non-monotone mode tasks `0..n_agents` are the important ones, with
/// `σ ~ U(5, 7)`; task `i` is matched to agent `i`. The remaining tasks have
/// `σ ~ U(0.5, 1.5)` and `m ~ U(0.1, 1)`. Every agent gets `α = 1`,
/// `λ_a = 0.01` and `P_0 = 1 / (1 + α |T|)`.
pub fn generate_scenario(params: &ScenarioParams) -> Result<Scenario> {
    let &ScenarioParams {
        n_tasks,
        n_agents,
        mode,
        world_km,
        seed,
        important_weight,
    } = params;
    if n_agents == 0 {
        return Err(Error::Config("need at least one agent".into()));
    }
    if n_agents > n_tasks {
        return Err(Error::Config(format!(
            "need at least as many tasks as agents, got {n_tasks} tasks for {n_agents} agents"
        )));
    }
    if !(world_km > 0.0 && world_km.is_finite()) {
        return Err(Error::Config(format!("world size must be positive, got {world_km}")));
    }

    let mut rng = scenario_rng(seed);
    let position = |rng: &mut rand_chacha::ChaCha8Rng| (rng.gen_range(0.0..world_km), rng.gen_range(0.0..world_km));
    let task_pos: Vec<_> = (0..n_tasks).map(|_| position(&mut rng)).collect();
    let agent_pos: Vec<_> = (0..n_agents).map(|_| position(&mut rng)).collect();

    let mut sigma = vec![1.0; n_tasks];
    let mut fitness: Vec<Vec<f64>> = vec![Vec::new(); n_agents];
    if mode == Mode::NonMonotone {
        for (j, s) in sigma.iter_mut().enumerate() {
            *s = if j < n_agents {
                rng.gen_range(5.0..7.0)
            } else {
                rng.gen_range(0.5..1.5)
            };
        }
        for row in fitness.iter_mut() {
            row.resize(n_tasks, 0.0);
        }
        for j in 0..n_tasks {
            for (a, row) in fitness.iter_mut().enumerate() {
                row[j] = if j < n_agents {
                    let m = if a == j { MATCHED_FITNESS } else { UNMATCHED_FITNESS };
                    match important_weight {
                        ImportantWeight::Fitness => m,
                        ImportantWeight::Value => m / sigma[j],
                    }
                } else {
                    rng.gen_range(0.1..1.0)
                };
            }
        }
    }

    let tasks = task_pos
        .into_iter()
        .enumerate()
        .map(|(j, (x, y))| Task {
            id: TaskId(j),
            x,
            y,
            sigma: sigma[j],
            score: DEFAULT_SCORE,
            discount: DEFAULT_DISCOUNT,
        })
        .collect();
    let p0 = 1.0 / (1.0 + DEFAULT_ALPHA * n_tasks as f64);
    let agents = agent_pos
        .into_iter()
        .zip(fitness)
        .enumerate()
        .map(|(a, ((x, y), fitness))| Agent {
            id: AgentId(a),
            x,
            y,
            p0,
            alpha: DEFAULT_ALPHA,
            lambda_scale: DEFAULT_LAMBDA_SCALE,
            fitness,
        })
        .collect();
    Scenario::new(mode, world_km, tasks, agents)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::Utility;

    #[test]
    fn same_seed_same_scenario() {
        for mode in [Mode::Monotone, Mode::NonMonotone] {
            let p = ScenarioParams::new(40, 6, mode, 9);
            let a = generate_scenario(&p).unwrap();
            let b = generate_scenario(&p).unwrap();
            assert_eq!(a, b);
            assert_eq!(a.to_json().unwrap(), b.to_json().unwrap());
            let c = generate_scenario(&ScenarioParams { seed: 10, ..p }).unwrap();
            assert_ne!(a, c);
        }
    }

    #[test]
    fn too_many_agents() {
        assert!(matches!(
            generate_scenario(&ScenarioParams::new(3, 4, Mode::Monotone, 0)),
            Err(Error::Config(_))
        ));
        assert!(generate_scenario(&ScenarioParams::new(3, 0, Mode::Monotone, 0)).is_err());
    }

    #[test]
    fn monotone_defaults() {
        let s = generate_scenario(&ScenarioParams::new(300, 30, Mode::Monotone, 1)).unwrap();
        assert_eq!(s.n_tasks(), 300);
        assert_eq!(s.world_km(), 10.0);
        for t in s.tasks() {
            assert_eq!(t.discount, 0.95);
            assert_eq!(t.score, 1.0);
            assert!((0.0..=10.0).contains(&t.x) && (0.0..=10.0).contains(&t.y));
        }
        assert!(s.ordered());
    }

    #[test]
    fn nonmonotone_has_one_important_task_per_agent() {
        for n_agents in [10, 30, 50] {
            let s = generate_scenario(&ScenarioParams::new(300, n_agents, Mode::NonMonotone, 5)).unwrap();
            let important = s.tasks().iter().filter(|t| (5.0..=7.0).contains(&t.sigma)).count();
            assert_eq!(important, n_agents);
            assert!(s
                .tasks()
                .iter()
                .skip(n_agents)
                .all(|t| (0.5..1.5).contains(&t.sigma)));
            for a in s.agents() {
                assert_eq!(a.p0, 1.0 / 301.0);
                assert_eq!(a.alpha, 1.0);
                assert_eq!(a.lambda_scale, 0.01);
                for j in 0..n_agents {
                    let expected = if j == a.id.0 { 0.3 } else { 0.1 };
                    assert_eq!(a.fitness[j], expected);
                }
                assert!(a.fitness[n_agents..].iter().all(|m| (0.1..1.0).contains(m)));
            }
        }
    }

    #[test]
    fn value_reading_of_important_weights() {
        let mut p = ScenarioParams::new(20, 4, Mode::NonMonotone, 5);
        p.important_weight = ImportantWeight::Value;
        let s = generate_scenario(&p).unwrap();
        for a in s.agents() {
            let w = s.task_value(a.id, TaskId(a.id.0));
            assert!((w - 0.3).abs() < 1e-15);
        }
    }
}
