use serde::Serialize;

use crate::algorithms::{brute_force_optimal, centralized_dsta, guarantee_bound, DEFAULT_MAX_GROUND};
use crate::model::{generate_scenario, Mode, ScenarioParams};
use crate::oracle::Utility;
use crate::rng::derive_seed;
use crate::{Error, Result};

/// Relative slack on the expected-ratio bound covering Monte Carlo error.
pub const DEFAULT_SLACK: f64 = 0.02;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyConfig {
    pub mode: Mode,
    pub p: f64,
    pub n_tasks: usize,
    pub n_agents: usize,
    pub n_instances: usize,
    pub n_seeds: usize,
    pub master_seed: u64,
    pub slack: f64,
}

impl VerifyConfig {
    /// 30 instances of 5 tasks x 3 agents, 500 sampling seeds each.
    pub fn new(mode: Mode, p: f64) -> Self {
        Self {
            mode,
            p,
            n_tasks: 5,
            n_agents: 3,
            n_instances: 30,
            n_seeds: 500,
            master_seed: 0,
            slack: DEFAULT_SLACK,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InstanceReport {
    pub instance: usize,
    pub opt: f64,
    pub mean_value: f64,
    /// `mean / OPT`; 1 when `OPT = 0`.
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GuaranteeReport {
    pub bound: f64,
    pub slack: f64,
    pub passes: bool,
    /// `min_i (ratio_i / bound) - 1`; passing means `margin >= -slack`.
    pub margin: f64,
    pub worst_ratio: f64,
    pub instances: Vec<InstanceReport>,
}

/// Estimates `E[f(S)] / OPT` per instance over `n_seeds` sampling seeds and
/// compares it with the expected-ratio bound at `p`.
pub fn verify_guarantee_on<U: Utility>(
    instances: &[U],
    p: f64,
    monotone: bool,
    n_seeds: usize,
    master_seed: u64,
    slack: f64,
) -> Result<GuaranteeReport> {
    if n_seeds == 0 {
        return Err(Error::Config("need at least one sampling seed".into()));
    }
    if !slack.is_finite() || slack >= 1.0 {
        return Err(Error::Config(format!("slack must be finite and below 1, got {slack}")));
    }
    let bound = guarantee_bound(p, monotone)?.ratio;
    let mut reports = Vec::with_capacity(instances.len());
    for (i, u) in instances.iter().enumerate() {
        let opt = brute_force_optimal(u, DEFAULT_MAX_GROUND)?.total_value;
        let mut sum = 0.0;
        for s in 0..n_seeds {
            let seed = derive_seed(master_seed, &[i as u64, s as u64]);
            sum += centralized_dsta(u, p, seed)?.total_value;
        }
        let mean_value = sum / n_seeds as f64;
        let ratio = if opt > 0.0 { mean_value / opt } else { 1.0 };
        reports.push(InstanceReport {
            instance: i,
            opt,
            mean_value,
            ratio,
        });
    }
    let worst_ratio = reports.iter().map(|r| r.ratio).fold(f64::INFINITY, f64::min);
    let margin = if bound > 0.0 {
        worst_ratio / bound - 1.0
    } else {
        f64::INFINITY
    };
    let passes = reports.iter().all(|r| r.mean_value >= bound * r.opt * (1.0 - slack));
    Ok(GuaranteeReport {
        bound,
        slack,
        passes,
        margin,
        worst_ratio,
        instances: reports,
    })
}

/// Generated-scenario version of [`verify_guarantee_on`].
pub fn verify_guarantee(config: &VerifyConfig) -> Result<GuaranteeReport> {
    let instances = (0..config.n_instances)
        .map(|i| {
            generate_scenario(&ScenarioParams::new(
                config.n_tasks,
                config.n_agents,
                config.mode,
                derive_seed(config.master_seed, &[0x5ce0, i as u64]),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    verify_guarantee_on(
        &instances,
        config.p,
        config.mode.is_monotone(),
        config.n_seeds,
        config.master_seed,
        config.slack,
    )
}
