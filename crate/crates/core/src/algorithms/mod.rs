//! Centralised allocation algorithms and the expected approximation ratio.

mod bound;
mod brute;
mod centralized;
mod sample_greedy;

use serde::{Deserialize, Serialize};

use crate::ids::Allocation;

pub use bound::{guarantee_bound, GuaranteeBound};
pub use brute::{brute_force_optimal, DEFAULT_MAX_GROUND, MAX_ORDERED_BUNDLE};
pub use centralized::{centralized_dsta, centralized_dsta_with_samples, draw_samples, AgentSamples};
pub use sample_greedy::{sample_greedy, sample_greedy_with_pool, sampled_pool, sequential_greedy};

/// Outcome of one allocation run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub allocation: Allocation,
    /// `Σ_a f_a(bundle_a)` recomputed from the final bundles.
    pub total_value: f64,
    /// Full set-function evaluations spent.
    pub oracle_calls: u64,
    /// Tasks committed, one per auction round.
    pub rounds: usize,
    pub seed: u64,
    pub p: f64,
    /// Global objective after each committed task.
    pub value_trace: Vec<f64>,
    /// Evaluations whose raw value was clamped at zero.
    pub clamped_evaluations: u64,
}

/// Algorithms known to the harness and CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Algorithm {
    /// Decentralised run over a communication graph.
    #[serde(rename = "dsta")]
    Dsta,
    #[serde(rename = "dsta-central")]
    DstaCentral,
    #[serde(rename = "greedy")]
    Greedy,
    #[serde(rename = "brute")]
    Brute,
}

impl Algorithm {
    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Dsta => "dsta",
            Algorithm::DstaCentral => "dsta-central",
            Algorithm::Greedy => "greedy",
            Algorithm::Brute => "brute",
        }
    }

    /// Whether the sampling probability affects the run.
    pub fn uses_p(self) -> bool {
        matches!(self, Algorithm::Dsta | Algorithm::DstaCentral)
    }
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Algorithm {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        Ok(match s {
            "dsta" => Algorithm::Dsta,
            "dsta-central" => Algorithm::DstaCentral,
            "greedy" => Algorithm::Greedy,
            "brute" => Algorithm::Brute,
            other => return Err(crate::Error::Config(format!("unknown algorithm {other:?}"))),
        })
    }
}
