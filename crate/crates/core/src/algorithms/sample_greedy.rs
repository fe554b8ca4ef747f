use crate::ids::{ground_set, AgentId, Allocation, TaskAgentPair};
use crate::oracle::{total_value, Evaluator, Insertion, Utility};
use crate::rng::{check_probability, pair_sampled};
use crate::Result;

use super::RunResult;

/// Pairs of the ground set kept by independent Bernoulli(`p`) draws, in
/// ascending `(task, agent)` order.
pub fn sampled_pool(n_tasks: usize, n_agents: usize, p: f64, seed: u64) -> Vec<TaskAgentPair> {
    ground_set(n_tasks, n_agents)
        .filter(|u| pair_sampled(seed, u.task, u.agent, p))
        .collect()
}

/// Sample greedy over the pair ground set under the partition matroid.
///
/// Every pair enters the pool with probability `p`; then, while some pooled
/// pair keeps the solution independent and has positive marginal gain, the
/// best one is added (largest gain, then smallest agent, then smallest task).
pub fn sample_greedy<U: Utility + ?Sized>(utility: &U, p: f64, seed: u64) -> Result<RunResult> {
    let p = check_probability(p)?;
    let pool = sampled_pool(utility.n_tasks(), utility.n_agents(), p, seed);
    let mut result = sample_greedy_with_pool(utility, pool)?;
    result.p = p;
    result.seed = seed;
    Ok(result)
}

/// Deterministic greedy baseline: sample greedy with every pair in the pool.
pub fn sequential_greedy<U: Utility + ?Sized>(utility: &U) -> Result<RunResult> {
    sample_greedy(utility, 1.0, 0)
}

/// Sample greedy on an explicit pool. `p` and `seed` of the result are left
/// at 1 and 0.
pub fn sample_greedy_with_pool<U: Utility + ?Sized>(utility: &U, mut pool: Vec<TaskAgentPair>) -> Result<RunResult> {
    let n_tasks = utility.n_tasks();
    let n_agents = utility.n_agents();
    for u in &pool {
        if u.task.0 >= n_tasks {
            return Err(crate::Error::UnknownId { kind: "task", id: u.task.0 });
        }
        if u.agent.0 >= n_agents {
            return Err(crate::Error::UnknownId { kind: "agent", id: u.agent.0 });
        }
    }
    pool.sort();
    pool.dedup();

    let eval = Evaluator::new(utility);
    let mut allocation = Allocation::empty(n_agents);
    let mut current = vec![0.0; n_agents];
    let mut task_taken = vec![false; n_tasks];
    let mut value_trace = Vec::new();

    loop {
        let mut best: Option<(AgentId, Insertion)> = None;
        for u in &pool {
            if task_taken[u.task.0] {
                continue;
            }
            let ins = eval.insertion(u.agent, allocation.bundle(u.agent), current[u.agent.0], u.task);
            if ins.gain <= 0.0 {
                continue;
            }
            let better = match &best {
                None => true,
                Some((a, b)) => (ins.gain, std::cmp::Reverse(u.agent), std::cmp::Reverse(u.task))
                    > (b.gain, std::cmp::Reverse(*a), std::cmp::Reverse(b.task)),
            };
            if better {
                best = Some((u.agent, ins));
            }
        }
        let Some((agent, ins)) = best else { break };
        allocation.insert(agent, ins.task, ins.position)?;
        current[agent.0] = ins.value;
        task_taken[ins.task.0] = true;
        pool.retain(|u| u.task != ins.task);
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
