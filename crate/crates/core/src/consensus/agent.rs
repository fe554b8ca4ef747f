use std::collections::BTreeSet;

use crate::ids::{AgentId, TaskId};
use crate::oracle::{EvalCounter, Evaluator, Insertion, Utility};
use crate::rng::{check_probability, pair_sampled};
use crate::Result;

use super::protocol::BidMessage;

/// An agent's private view of the utility: only its own `f_a`.
pub struct LocalOracle<'u, U: ?Sized> {
    agent: AgentId,
    eval: Evaluator<'u, U>,
}

impl<'u, U: Utility + ?Sized> LocalOracle<'u, U> {
    pub fn new(utility: &'u U, agent: AgentId) -> Self {
        Self {
            agent,
            eval: Evaluator::new(utility),
        }
    }

    pub fn agent(&self) -> AgentId {
        self.agent
    }

    pub fn value(&self, bundle: &[TaskId]) -> f64 {
        self.eval.value(self.agent, bundle)
    }

    pub fn insertion(&self, bundle: &[TaskId], current: f64, task: TaskId) -> Insertion {
        self.eval.insertion(self.agent, bundle, current, task)
    }

    pub fn counter(&self) -> &EvalCounter {
        self.eval.counter()
    }
}

/// The sampled pool `N_a` for one agent; identical to the centralised draw.
pub fn local_sample(agent: AgentId, n_tasks: usize, p: f64, master_seed: u64) -> Result<BTreeSet<TaskId>> {
    let p = check_probability(p)?;
    Ok((0..n_tasks)
        .map(TaskId)
        .filter(|&t| pair_sampled(master_seed, t, agent, p))
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct AgentState {
    pub id: AgentId,
    /// `N_a`
    pub samples: BTreeSet<TaskId>,
    /// `T_a`, in visiting order.
    pub bundle: Vec<TaskId>,
    /// Cached `f_a(T_a)`.
    pub value: f64,
    /// This round's own proposal, with where it would be inserted.
    pub current_bid: Option<Insertion>,
}

impl AgentState {
    pub fn new(id: AgentId, samples: BTreeSet<TaskId>) -> Self {
        Self {
            id,
            samples,
            bundle: Vec::new(),
            value: 0.0,
            current_bid: None,
        }
    }

    pub fn bid(&self) -> Option<BidMessage> {
        self.current_bid.map(|ins| BidMessage {
            agent: self.id,
            task: ins.task,
            gain: ins.gain,
        })
    }
}

/// Best positive-gain task of the agent's pool, smaller task id on ties.
/// Records it as the agent's current bid.
pub fn local_best<U: Utility + ?Sized>(state: &mut AgentState, oracle: &LocalOracle<'_, U>) -> Option<BidMessage> {
    debug_assert_eq!(state.id, oracle.agent());
    let mut best: Option<Insertion> = None;
    for &task in &state.samples {
        let ins = oracle.insertion(&state.bundle, state.value, task);
        if ins.gain > 0.0 && best.is_none_or(|b| ins.gain > b.gain) {
            best = Some(ins);
        }
    }
    state.current_bid = best;
    state.bid()
}

/// What an agent did with the agreed winning bid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reaction {
    Won,
    Dropped,
    NotHeld,
}

/// Applies the agreed winner: the winner commits the task at its planned
/// slot; everyone else drops it from its pool if present.
pub fn apply_decision(state: &mut AgentState, decision: &BidMessage) -> Reaction {
    let reaction = if decision.agent == state.id {
        let ins = state
            .current_bid
            .filter(|ins| ins.task == decision.task)
            .expect("the winner's agreed bid is its own proposal");
        state.bundle.insert(ins.position, ins.task);
        state.value = ins.value;
        state.samples.remove(&ins.task);
        Reaction::Won
    } else if state.samples.remove(&decision.task) {
        Reaction::Dropped
    } else {
        Reaction::NotHeld
    };
    state.current_bid = None;
    reaction
}
