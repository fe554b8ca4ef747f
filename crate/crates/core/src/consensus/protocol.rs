use std::cmp::Ordering;

use crate::ids::{AgentId, TaskId};

use super::graph::CommGraph;
use super::trace::{Trace, TraceEvent};

/// A positive-gain offer: `agent` would add `task` for `gain`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BidMessage {
    pub agent: AgentId,
    pub task: TaskId,
    pub gain: f64,
}

impl BidMessage {
    /// Consensus order: larger gain, then smaller agent id, then smaller task id.
    pub fn beats(&self, other: &BidMessage) -> bool {
        self.priority(other) == Ordering::Greater
    }

    fn priority(&self, other: &BidMessage) -> Ordering {
        self.gain
            .partial_cmp(&other.gain)
            .expect("bids carry finite gains")
            .then_with(|| other.agent.cmp(&self.agent))
            .then_with(|| other.task.cmp(&self.task))
    }
}

/// Result of one max-consensus.
#[derive(Debug, Clone, PartialEq)]
pub struct ConsensusOutcome {
    /// The bid every agent holds at the end; `None` when nobody bid.
    pub decision: Option<BidMessage>,
    /// Flooding steps run (the graph diameter).
    pub steps: usize,
    /// Point-to-point messages sent, per agent.
    pub sent: Vec<u64>,
    /// Each agent's final view; all equal to `decision`.
    pub views: Vec<Option<BidMessage>>,
}

impl ConsensusOutcome {
    pub fn messages(&self) -> u64 {
        self.sent.iter().sum()
    }
}

fn merge(held: Option<BidMessage>, incoming: BidMessage) -> Option<BidMessage> {
    match held {
        Some(h) if !incoming.beats(&h) => Some(h),
        _ => Some(incoming),
    }
}

/// Synchronous flooding max-consensus.
///
/// Runs `diameter` steps. In each step an agent whose best-known bid changed
/// since it last spoke sends it to every neighbour; on receipt neighbours keep
/// the better bid. After `diameter` steps every agent holds the global best.
pub fn max_consensus(graph: &CommGraph, bids: &[Option<BidMessage>]) -> ConsensusOutcome {
    run_consensus(graph, bids, 0, &mut Trace::new(false))
}

pub(crate) fn run_consensus(graph: &CommGraph, bids: &[Option<BidMessage>], round: usize, trace: &mut Trace) -> ConsensusOutcome {
    let n = graph.n_agents();
    assert_eq!(bids.len(), n, "one bid slot per agent");
    let mut views: Vec<Option<BidMessage>> = bids.to_vec();
    let mut dirty: Vec<bool> = views.iter().map(Option::is_some).collect();
    let mut sent = vec![0u64; n];

    for step in 1..=graph.diameter() {
        let mut inbox: Vec<Vec<BidMessage>> = vec![Vec::new(); n];
        for a in 0..n {
            if !dirty[a] {
                continue;
            }
            let bid = views[a].expect("dirty agents hold a bid");
            for b in graph.neighbours(AgentId(a)) {
                inbox[b.0].push(bid);
                sent[a] += 1;
            }
            trace.push(round, step, AgentId(a), TraceEvent::Forward, || {
                serde_json::json!({ "bidder": bid.agent.0, "task": bid.task.0, "gain": bid.gain })
            });
            dirty[a] = false;
        }
        for (a, msgs) in inbox.into_iter().enumerate() {
            for msg in msgs {
                let merged = merge(views[a], msg);
                if merged != views[a] {
                    views[a] = merged;
                    dirty[a] = true;
                }
            }
        }
    }

    let decision = views.first().copied().flatten();
    debug_assert!(views.iter().all(|v| *v == decision));
    ConsensusOutcome {
        decision,
        steps: graph.diameter(),
        sent,
        views,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bid(agent: usize, task: usize, gain: f64) -> BidMessage {
        BidMessage {
            agent: AgentId(agent),
            task: TaskId(task),
            gain,
        }
    }

    #[test]
    fn complete_graph_converges_in_one_step() {
        let g = CommGraph::complete(4).unwrap();
        let bids = [Some(bid(0, 1, 0.5)), None, Some(bid(2, 3, 0.9)), Some(bid(3, 0, 0.1))];
        let out = max_consensus(&g, &bids);
        assert_eq!(out.steps, 1);
        assert_eq!(out.decision, Some(bid(2, 3, 0.9)));
        assert!(out.views.iter().all(|v| *v == out.decision));
    }

    #[test]
    fn line_graph_single_bidder_at_the_end() {
        let g = CommGraph::line(5).unwrap();
        let mut bids = [None; 5];
        bids[4] = Some(bid(4, 7, 1.0));
        let out = max_consensus(&g, &bids);
        assert_eq!(out.steps, 4);
        assert!(out.views.iter().all(|v| *v == Some(bid(4, 7, 1.0))));
        // the bid walks 4 -> 3 -> 2 -> 1 -> 0, each hop also echoing back
        assert_eq!(out.sent, vec![0, 2, 2, 2, 1]);
    }

    #[test]
    fn equal_gains_go_to_the_smaller_agent() {
        let g = CommGraph::ring(6).unwrap();
        let mut bids = [None; 6];
        bids[2] = Some(bid(2, 9, 0.75));
        bids[5] = Some(bid(5, 1, 0.75));
        let out = max_consensus(&g, &bids);
        assert_eq!(out.decision.unwrap().agent, AgentId(2));
    }

    #[test]
    fn no_bids_means_no_decision_and_silence() {
        let g = CommGraph::ring(4).unwrap();
        let out = max_consensus(&g, &[None; 4]);
        assert_eq!(out.decision, None);
        assert_eq!(out.messages(), 0);
    }

    #[test]
    fn bid_order() {
        assert!(bid(3, 3, 1.0).beats(&bid(0, 0, 0.5)));
        assert!(bid(1, 5, 1.0).beats(&bid(2, 0, 1.0)));
        assert!(bid(1, 0, 1.0).beats(&bid(1, 5, 1.0)));
        assert!(!bid(1, 0, 1.0).beats(&bid(1, 0, 1.0)));
    }
}
