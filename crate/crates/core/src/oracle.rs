//! Value-oracle contract and oracle-call accounting.
//!
//! A [`Utility`] is a family of per-agent set functions `f_a`, the global
//! objective being `F(S) = Σ_a f_a(S_a)`. Complexity is measured in full
//! evaluations of some `f_a`, counted by [`EvalCounter`].

use std::cell::Cell;

use crate::ids::{AgentId, Allocation, TaskId};
use crate::{Error, Result};

/// Per-agent utilities over task bundles.
///
/// `raw_value` may go negative for models whose penalty term is unbounded;
/// callers go through [`Utility::value`], which clamps at zero so the oracle
/// is normalised and non-negative.
pub trait Utility {
    fn n_tasks(&self) -> usize;
    fn n_agents(&self) -> usize;

    /// Unclamped value of `bundle` for `agent`. Must be 0 on the empty bundle.
    fn raw_value(&self, agent: AgentId, bundle: &[TaskId]) -> f64;

    fn value(&self, agent: AgentId, bundle: &[TaskId]) -> f64 {
        self.raw_value(agent, bundle).max(0.0)
    }

    /// Whether bundle order matters. Ordered utilities take new tasks at
    /// the cheapest insertion slot instead of the end.
    fn ordered(&self) -> bool {
        false
    }
}

impl<U: Utility + ?Sized> Utility for &U {
    fn n_tasks(&self) -> usize {
        (**self).n_tasks()
    }
    fn n_agents(&self) -> usize {
        (**self).n_agents()
    }
    fn raw_value(&self, agent: AgentId, bundle: &[TaskId]) -> f64 {
        (**self).raw_value(agent, bundle)
    }
    fn value(&self, agent: AgentId, bundle: &[TaskId]) -> f64 {
        (**self).value(agent, bundle)
    }
    fn ordered(&self) -> bool {
        (**self).ordered()
    }
}

/// Counts full set-function evaluations. Never decreases.
#[derive(Debug, Default)]
pub struct EvalCounter {
    calls: Cell<u64>,
    clamped: Cell<u64>,
}

impl EvalCounter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn calls(&self) -> u64 {
        self.calls.get()
    }

    /// Evaluations whose raw value was negative and got clamped to zero.
    pub fn clamped(&self) -> u64 {
        self.clamped.get()
    }

    fn record(&self, clamped: bool) {
        self.calls.set(self.calls.get() + 1);
        if clamped {
            self.clamped.set(self.clamped.get() + 1);
        }
    }
}

/// Best way to add one task to a bundle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Insertion {
    pub task: TaskId,
    pub gain: f64,
    /// Value of the bundle after insertion.
    pub value: f64,
    /// Index in the bundle where the task goes.
    pub position: usize,
}

/// A utility together with the counter its evaluations are charged to.
pub struct Evaluator<'u, U: ?Sized> {
    utility: &'u U,
    counter: EvalCounter,
}

impl<'u, U: Utility + ?Sized> Evaluator<'u, U> {
    pub fn new(utility: &'u U) -> Self {
        Self {
            utility,
            counter: EvalCounter::new(),
        }
    }

    pub fn utility(&self) -> &'u U {
        self.utility
    }

    pub fn counter(&self) -> &EvalCounter {
        &self.counter
    }

    pub fn calls(&self) -> u64 {
        self.counter.calls()
    }

    /// One counted oracle call.
    pub fn value(&self, agent: AgentId, bundle: &[TaskId]) -> f64 {
        let raw = self.utility.raw_value(agent, bundle);
        if bundle.is_empty() {
            assert!(raw == 0.0, "utility not normalised: f_{agent}(∅) = {raw}");
        }
        assert!(!raw.is_nan(), "utility returned NaN for {agent} on {bundle:?}");
        let clamped = raw < 0.0;
        self.counter.record(clamped);
        let v = raw.max(0.0);
        debug_assert!(v == self.utility.value(agent, bundle));
        v
    }

    /// Gain of adding `task` to `bundle` given its cached value `current`.
    ///
    /// Unordered utilities append (one evaluation). Ordered utilities try
    /// every slot `0..=len` (`len + 1` evaluations) and keep the best,
    /// smallest index on ties.
    pub fn insertion(&self, agent: AgentId, bundle: &[TaskId], current: f64, task: TaskId) -> Insertion {
        debug_assert!(!bundle.contains(&task));
        let mut candidate = Vec::with_capacity(bundle.len() + 1);
        if !self.utility.ordered() {
            candidate.extend_from_slice(bundle);
            candidate.push(task);
            let value = self.value(agent, &candidate);
            return Insertion {
                task,
                gain: value - current,
                value,
                position: bundle.len(),
            };
        }
        let mut best: Option<(f64, usize)> = None;
        for pos in 0..=bundle.len() {
            candidate.clear();
            candidate.extend_from_slice(&bundle[..pos]);
            candidate.push(task);
            candidate.extend_from_slice(&bundle[pos..]);
            let v = self.value(agent, &candidate);
            if best.is_none_or(|(bv, _)| v > bv) {
                best = Some((v, pos));
            }
        }
        let (value, position) = best.expect("at least one insertion slot");
        Insertion {
            task,
            gain: value - current,
            value,
            position,
        }
    }

    /// `Δf_a(task | bundle)`, evaluating the bundle afresh.
    pub fn marginal_gain(&self, agent: AgentId, task: TaskId, bundle: &[TaskId]) -> Result<f64> {
        if bundle.contains(&task) {
            return Err(Error::Precondition(format!(
                "task {task} already in the bundle of {agent}"
            )));
        }
        let current = self.value(agent, bundle);
        Ok(self.insertion(agent, bundle, current, task).gain)
    }

    /// `Σ_a f_a(bundle_a)`, one evaluation per agent.
    pub fn total_value(&self, allocation: &Allocation) -> f64 {
        allocation
            .bundles()
            .iter()
            .enumerate()
            .map(|(a, b)| self.value(AgentId(a), b))
            .sum()
    }
}

/// Uncounted global objective, for checks and replays.
pub fn total_value<U: Utility + ?Sized>(utility: &U, allocation: &Allocation) -> f64 {
    allocation
        .bundles()
        .iter()
        .enumerate()
        .map(|(a, b)| utility.value(AgentId(a), b))
        .sum()
}

/// `f_a(S) = Σ_{j∈S} w[j][a]`. Modular, hence submodular with equality.
#[derive(Debug, Clone, PartialEq)]
pub struct ModularUtility {
    /// `weights[task][agent]`, non-negative.
    weights: Vec<Vec<f64>>,
    n_agents: usize,
}

impl ModularUtility {
    pub fn new(weights: Vec<Vec<f64>>) -> Result<Self> {
        let n_agents = weights.first().map_or(0, Vec::len);
        if weights.iter().any(|row| row.len() != n_agents) {
            return Err(Error::Config("ragged weight matrix".into()));
        }
        if weights.iter().flatten().any(|w| w.is_nan() || *w < 0.0 || !w.is_finite()) {
            return Err(Error::Config("weights must be finite and non-negative".into()));
        }
        Ok(Self { weights, n_agents })
    }

    pub fn weight(&self, task: TaskId, agent: AgentId) -> f64 {
        self.weights[task.0][agent.0]
    }
}

impl Utility for ModularUtility {
    fn n_tasks(&self) -> usize {
        self.weights.len()
    }
    fn n_agents(&self) -> usize {
        self.n_agents
    }
    fn raw_value(&self, agent: AgentId, bundle: &[TaskId]) -> f64 {
        bundle.iter().map(|t| self.weights[t.0][agent.0]).sum()
    }
}
