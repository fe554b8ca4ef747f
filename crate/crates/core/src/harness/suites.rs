use serde::Serialize;

use crate::matroid::{check_axioms, PartitionMatroid};
use crate::model::{generate_scenario, Mode, ScenarioParams};
use crate::oracle::Utility;
use crate::properties::{sample_monotonicity, sample_submodularity};
use crate::rng::derive_seed;
use crate::{AgentId, Result, TaskId};

/// Property suites exposed by `dsta props`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    /// Diminishing returns of the unclamped surveillance utility.
    Submodular,
    /// Monotonicity of the path utility under end-appends.
    Monotone,
    /// Partition-matroid axioms on 4 tasks x 3 agents.
    Matroid,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteConfig {
    pub suite: Suite,
    /// Sampler draws per (instance, agent).
    pub trials: usize,
    pub instances: usize,
    pub n_tasks: usize,
    pub n_agents: usize,
    pub seed: u64,
}

impl SuiteConfig {
    pub fn new(suite: Suite) -> Self {
        Self {
            suite,
            trials: 1000,
            instances: 5,
            n_tasks: 8,
            n_agents: 2,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: usize,
    pub violations: usize,
    /// Smallest raw slack seen by the samplers (0 for the matroid suite).
    pub worst_gap: f64,
    pub passes: bool,
    /// First failing check, if any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

pub fn run_suite(config: &SuiteConfig) -> Result<SuiteReport> {
    if config.suite == Suite::Matroid {
        let report = check_axioms(&PartitionMatroid::new(4, 3))?;
        let violations = report.predicate_mismatches
            + report.downward_closure_failures
            + report.exchange_failures
            + usize::from(!report.empty_independent);
        return Ok(SuiteReport {
            suite: Suite::Matroid,
            checks: report.subsets_checked,
            violations,
            worst_gap: 0.0,
            passes: report.holds(),
            first_failure: (!report.holds()).then(|| format!("matroid axioms on 4 tasks x 3 agents: {report:?}")),
        });
    }

    let mode = if config.suite == Suite::Submodular {
        Mode::NonMonotone
    } else {
        Mode::Monotone
    };
    let mut out = SuiteReport {
        suite: config.suite,
        checks: 0,
        violations: 0,
        worst_gap: f64::INFINITY,
        passes: true,
        first_failure: None,
    };
    for i in 0..config.instances {
        let seed = derive_seed(config.seed, &[i as u64]);
        let scenario = generate_scenario(&ScenarioParams::new(config.n_tasks, config.n_agents, mode, seed))?;
        let ground: Vec<TaskId> = scenario.task_ids().collect();
        for agent in (0..scenario.n_agents()).map(AgentId) {
            let sampler_seed = derive_seed(seed, &[agent.0 as u64]);
            let report = match mode {
                Mode::NonMonotone => sample_submodularity(
                    |s| scenario.unclamped_nonmonotone_value(agent, s).expect("bundle drawn from the ground set"),
                    &ground,
                    config.trials,
                    sampler_seed,
                ),
                Mode::Monotone => sample_monotonicity(
                    |s| scenario.monotone_value(agent, s).expect("bundle drawn from the ground set"),
                    &ground,
                    config.trials,
                    sampler_seed,
                ),
            };
            out.checks += report.trials;
            out.violations += report.violations;
            out.worst_gap = out.worst_gap.min(report.worst_gap);
            if report.violations > 0 && out.first_failure.is_none() {
                out.first_failure = Some(format!(
                    "{mode} sampler, instance {i}, {agent}: {} violations, worst gap {}",
                    report.violations, report.worst_gap
                ));
            }
        }
    }
    out.passes = out.violations == 0;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_on_small_runs() {
        for suite in [Suite::Submodular, Suite::Monotone, Suite::Matroid] {
            let report = run_suite(&SuiteConfig {
                trials: 200,
                instances: 2,
                ..SuiteConfig::new(suite)
            })
            .unwrap();
            assert!(report.passes, "{report:?}");
        }
    }

    #[test]
    fn matroid_suite_covers_every_subset() {
        let report = run_suite(&SuiteConfig::new(Suite::Matroid)).unwrap();
        assert_eq!(report.checks, 1 << 12);
    }
}
