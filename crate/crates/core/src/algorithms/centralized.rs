use std::collections::BTreeSet;

use crate::ids::{AgentId, Allocation, TaskId};
use crate::oracle::{total_value, Evaluator, Insertion, Utility};
use crate::rng::{check_probability, pair_sampled};
use crate::{Error, Result};

use super::RunResult;

/// Per-agent candidate pools `N_a`.
pub type AgentSamples = Vec<BTreeSet<TaskId>>;

/// Draws `N_a` for every agent with the keyed pair generator.
pub fn draw_samples(n_tasks: usize, n_agents: usize, p: f64, seed: u64) -> AgentSamples {
    (0..n_agents)
        .map(|a| {
            (0..n_tasks)
                .map(TaskId)
                .filter(|&t| pair_sampled(seed, t, AgentId(a), p))
                .collect()
        })
        .collect()
}

/// Centralised per-agent auction.
///
/// Each round every agent proposes its best positive-gain task from its own
/// pool (ties to the smaller task id); the largest proposal wins (ties to
/// the smaller agent id). The winner commits the task and every agent drops
/// it from its pool. Stops when nobody can propose.
pub fn centralized_dsta<U: Utility + ?Sized>(utility: &U, p: f64, seed: u64) -> Result<RunResult> {
    let p = check_probability(p)?;
    let samples = draw_samples(utility.n_tasks(), utility.n_agents(), p, seed);
    let mut result = centralized_dsta_with_samples(utility, samples)?;
    result.p = p;
    result.seed = seed;
    Ok(result)
}

pub fn centralized_dsta_with_samples<U: Utility + ?Sized>(utility: &U, mut samples: AgentSamples) -> Result<RunResult> {
    let n_agents = utility.n_agents();
    if samples.len() != n_agents {
        return Err(Error::Config(format!(
            "{} sample sets for {n_agents} agents",
            samples.len()
        )));
    }
    if let Some(t) = samples.iter().flatten().find(|t| t.0 >= utility.n_tasks()) {
        return Err(Error::UnknownId { kind: "task", id: t.0 });
    }

    let eval = Evaluator::new(utility);
    let mut allocation = Allocation::empty(n_agents);
    let mut current = vec![0.0; n_agents];
    let mut value_trace = Vec::new();

    loop {
        let proposals: Vec<Option<Insertion>> = (0..n_agents)
            .map(|a| {
                let agent = AgentId(a);
                let bundle = allocation.bundle(agent);
                let mut best: Option<Insertion> = None;
                for &task in &samples[a] {
                    let ins = eval.insertion(agent, bundle, current[a], task);
                    // ascending task order: strict > keeps the smaller id on ties
                    if ins.gain > 0.0 && best.is_none_or(|b| ins.gain > b.gain) {
                        best = Some(ins);
                    }
                }
                best
            })
            .collect();

        let mut winner: Option<(AgentId, Insertion)> = None;
        for (a, prop) in proposals.into_iter().enumerate() {
            if let Some(ins) = prop {
                if winner.is_none_or(|(_, w)| ins.gain > w.gain) {
                    winner = Some((AgentId(a), ins));
                }
            }
        }
        let Some((agent, ins)) = winner else { break };

        allocation.insert(agent, ins.task, ins.position)?;
        current[agent.0] = ins.value;
        for pool in samples.iter_mut() {
            pool.remove(&ins.task);
        }
        value_trace.push(current.iter().sum());
    }

    Ok(RunResult {
        total_value: total_value(utility, &allocation),
        rounds: allocation.n_allocated(),
        allocation,
        oracle_calls: eval.calls(),
        seed: 0,
        p: 1.0,
        value_trace,
        clamped_evaluations: eval.counter().clamped(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::ModularUtility;

    #[test]
    fn disjoint_samples_partition_the_bundles() {
        // 4 tasks, agent 0 samples {0, 2}, agent 1 samples {1, 3}
        let u = ModularUtility::new(vec![vec![1.0, 9.0], vec![9.0, 1.0], vec![2.0, 8.0], vec![7.0, 3.0]]).unwrap();
        let samples = vec![
            [TaskId(0), TaskId(2)].into_iter().collect(),
            [TaskId(1), TaskId(3)].into_iter().collect(),
        ];
        let r = centralized_dsta_with_samples(&u, samples).unwrap();
        // a1:t3 (3) beats a0:t2 (2); then a0:t2 beats a1:t1; then a0:t0 ties a1:t1 and
        // the smaller agent wins; finally a1:t1.
        assert_eq!(r.allocation.bundle(AgentId(0)), &[TaskId(2), TaskId(0)]);
        assert_eq!(r.allocation.bundle(AgentId(1)), &[TaskId(3), TaskId(1)]);
        assert_eq!(r.value_trace, vec![3.0, 5.0, 6.0, 7.0]);
    }

    #[test]
    fn sample_count_mismatch() {
        let u = ModularUtility::new(vec![vec![1.0, 1.0]]).unwrap();
        assert!(centralized_dsta_with_samples(&u, vec![BTreeSet::new()]).is_err());
        assert!(centralized_dsta(&u, 0.0, 1).is_err());
    }

    #[test]
    fn p_one_samples_everything() {
        let s = draw_samples(7, 3, 1.0, 123);
        assert!(s.iter().all(|pool| pool.len() == 7));
    }
}
