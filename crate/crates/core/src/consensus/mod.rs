//! Per-agent allocation over a synchronous network.
//!
//! Each agent draws its own pool, proposes its best positive-gain task, and
//! a flooding max-consensus decides the single winning (agent, task) pair
//! per round. The agent step functions see only their own state, their own
//! utility and the agreed decision.

mod agent;
mod graph;
mod protocol;
mod trace;

pub use agent::{apply_decision, local_best, local_sample, AgentState, LocalOracle, Reaction};
pub use graph::CommGraph;
pub use protocol::{max_consensus, BidMessage, ConsensusOutcome};
pub use trace::{Trace, TraceEvent, TraceRecord};

use crate::algorithms::RunResult;
use crate::ids::{AgentId, Allocation};
use crate::oracle::{total_value, Utility};
use crate::rng::check_probability;
use crate::{Error, Result};

#[derive(Debug)]
pub struct DecentralizedRun {
    pub result: RunResult,
    /// Point-to-point messages sent by each agent over the whole run.
    pub messages_per_agent: Vec<u64>,
    /// Flooding steps summed over all consensus instances, including the
    /// final one that finds no bids.
    pub consensus_steps: usize,
    pub trace: Trace,
}

impl DecentralizedRun {
    pub fn total_messages(&self) -> u64 {
        self.messages_per_agent.iter().sum()
    }
}

/// Runs every agent's auction loop over `graph` until a consensus round
/// carries no bid.
///
/// Agents without a positive-gain candidate stop bidding but keep relaying.
/// After each round the simulator checks that no task sits in two bundles
/// and that the round stayed within `links × diameter` messages.
pub fn decentralized_dsta<U: Utility + ?Sized>(
    utility: &U,
    graph: &CommGraph,
    p: f64,
    master_seed: u64,
    trace_enabled: bool,
) -> Result<DecentralizedRun> {
    let p = check_probability(p)?;
    let n_agents = utility.n_agents();
    if graph.n_agents() != n_agents {
        return Err(Error::Graph(format!(
            "graph has {} agents, utility has {n_agents}",
            graph.n_agents()
        )));
    }
    let mut trace = Trace::new(trace_enabled);

    let oracles: Vec<LocalOracle<'_, U>> = (0..n_agents).map(|a| LocalOracle::new(utility, AgentId(a))).collect();
    let mut states = Vec::with_capacity(n_agents);
    for a in 0..n_agents {
        let samples = local_sample(AgentId(a), utility.n_tasks(), p, master_seed)?;
        trace.push(0, 0, AgentId(a), TraceEvent::Sample, || {
            serde_json::json!({ "tasks": samples.iter().map(|t| t.0).collect::<Vec<_>>() })
        });
        states.push(AgentState::new(AgentId(a), samples));
    }

    let mut messages_per_agent = vec![0u64; n_agents];
    let mut consensus_steps = 0;
    let mut value_trace = Vec::new();
    let mut round = 0;
    let message_cap = (graph.n_links() * graph.diameter()) as u64;

    loop {
        round += 1;
        let bids: Vec<_> = states
            .iter_mut()
            .zip(&oracles)
            .map(|(state, oracle)| local_best(state, oracle))
            .collect();
        for bid in bids.iter().flatten() {
            trace.push(round, 0, bid.agent, TraceEvent::Bid, || Trace::bid_payload(bid.task, bid.gain));
        }

        let outcome = protocol::run_consensus(graph, &bids, round, &mut trace);
        consensus_steps += outcome.steps;
        for (total, sent) in messages_per_agent.iter_mut().zip(&outcome.sent) {
            *total += sent;
        }
        if outcome.messages() > message_cap {
            return Err(Error::Graph(format!(
                "round {round} used {} messages, above links x diameter = {message_cap}",
                outcome.messages()
            )));
        }
        let Some(decision) = outcome.decision else { break };

        for state in states.iter_mut() {
            match apply_decision(state, &decision) {
                Reaction::Won => trace.push(round, 0, state.id, TraceEvent::Win, || {
                    Trace::bid_payload(decision.task, decision.gain)
                }),
                reaction => trace.push(round, 0, state.id, TraceEvent::Drop, || {
                    serde_json::json!({ "task": decision.task.0, "held": reaction == Reaction::Dropped })
                }),
            }
        }
        check_round(&states, round)?;
        value_trace.push(states.iter().map(|s| s.value).sum());
    }

    let allocation = Allocation::from_bundles(states.iter().map(|s| s.bundle.clone()).collect())?;
    let result = RunResult {
        total_value: total_value(utility, &allocation),
        rounds: allocation.n_allocated(),
        allocation,
        oracle_calls: oracles.iter().map(|o| o.counter().calls()).sum(),
        seed: master_seed,
        p,
        value_trace,
        clamped_evaluations: oracles.iter().map(|o| o.counter().clamped()).sum(),
    };
    Ok(DecentralizedRun {
        result,
        messages_per_agent,
        consensus_steps,
        trace,
    })
}

/// Conflict freedom and pool hygiene after a round.
fn check_round(states: &[AgentState], round: usize) -> Result<()> {
    let mut owner = std::collections::HashMap::new();
    for s in states {
        for t in &s.bundle {
            if let Some(prev) = owner.insert(*t, s.id) {
                return Err(Error::Precondition(format!(
                    "round {round}: task {t} held by both {prev} and {}",
                    s.id
                )));
            }
        }
    }
    for s in states {
        if let Some(t) = s.samples.iter().find(|t| owner.contains_key(t)) {
            return Err(Error::Precondition(format!(
                "round {round}: {} still samples allocated task {t}",
                s.id
            )));
        }
    }
    Ok(())
}
