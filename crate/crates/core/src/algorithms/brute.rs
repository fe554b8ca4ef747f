use std::collections::HashMap;

use crate::ids::{AgentId, Allocation, TaskId};
use crate::oracle::{total_value, Evaluator, Utility};
use crate::{Error, Result};

use super::RunResult;

/// Default enumeration budget: at most `2^24` assignments.
pub const DEFAULT_MAX_GROUND: u32 = 24;
/// Largest bundle whose visiting orders are enumerated for ordered utilities.
pub const MAX_ORDERED_BUNDLE: usize = 6;

/// Exact optimum over all conflict-free allocations.
///
/// Enumerates the `(|A|+1)^|T|` assignments (each task to one agent or to
/// nobody). For ordered utilities each bundle is additionally scored at its
/// best visiting order, which caps the instance at `MAX_ORDERED_BUNDLE`
/// tasks. Oversized instances are refused, never approximated.
pub fn brute_force_optimal<U: Utility + ?Sized>(utility: &U, max_ground: u32) -> Result<RunResult> {
    let n_tasks = utility.n_tasks();
    let n_agents = utility.n_agents();
    let log2_size = n_tasks as f64 * ((n_agents + 1) as f64).log2();
    if log2_size > max_ground as f64 || n_tasks > 63 {
        return Err(Error::TooLarge(format!(
            "{n_tasks} tasks x {n_agents} agents needs (|A|+1)^|T| = 2^{log2_size:.1} assignments, budget is 2^{max_ground}"
        )));
    }
    if utility.ordered() && n_tasks > MAX_ORDERED_BUNDLE {
        return Err(Error::TooLarge(format!(
            "ordered utility: bundles of up to {n_tasks} tasks would need order enumeration, limit is {MAX_ORDERED_BUNDLE}"
        )));
    }

    let eval = Evaluator::new(utility);
    let mut search = Search {
        eval: &eval,
        n_tasks,
        n_agents,
        memo: HashMap::new(),
        masks: vec![0; n_agents],
        best_value: f64::NEG_INFINITY,
        best_masks: vec![0; n_agents],
    };
    search.descend(0);

    let Search { best_masks, memo, .. } = search;
    let bundles = best_masks
        .iter()
        .enumerate()
        .map(|(a, &mask)| {
            if mask == 0 {
                Vec::new()
            } else {
                memo[&(a, mask)].1.clone()
            }
        })
        .collect();
    let allocation = Allocation::from_bundles(bundles)?;
    Ok(RunResult {
        total_value: total_value(utility, &allocation),
        rounds: 0,
        allocation,
        oracle_calls: eval.calls(),
        seed: 0,
        p: 1.0,
        value_trace: Vec::new(),
        clamped_evaluations: eval.counter().clamped(),
    })
}

struct Search<'e, 'u, U: ?Sized> {
    eval: &'e Evaluator<'u, U>,
    n_tasks: usize,
    n_agents: usize,
    /// (agent, task mask) -> best value and the bundle achieving it
    memo: HashMap<(usize, u64), (f64, Vec<TaskId>)>,
    masks: Vec<u64>,
    best_value: f64,
    best_masks: Vec<u64>,
}

impl<U: Utility + ?Sized> Search<'_, '_, U> {
    fn descend(&mut self, task: usize) {
        if task == self.n_tasks {
            let mut value = 0.0;
            for a in 0..self.n_agents {
                value += self.bundle_value(a, self.masks[a]);
            }
            if value > self.best_value {
                self.best_value = value;
                self.best_masks.clone_from(&self.masks);
            }
            return;
        }
        // unassigned first, then agents in id order
        self.descend(task + 1);
        for a in 0..self.n_agents {
            self.masks[a] |= 1 << task;
            self.descend(task + 1);
            self.masks[a] &= !(1 << task);
        }
    }

    fn bundle_value(&mut self, agent: usize, mask: u64) -> f64 {
        if mask == 0 {
            return 0.0;
        }
        if let Some((v, _)) = self.memo.get(&(agent, mask)) {
            return *v;
        }
        let tasks: Vec<TaskId> = (0..self.n_tasks).filter(|t| mask >> t & 1 == 1).map(TaskId).collect();
        let best = if self.eval.utility().ordered() {
            let mut best = (f64::NEG_INFINITY, Vec::new());
            for_each_permutation(&tasks, |order| {
                let v = self.eval.value(AgentId(agent), order);
                if v > best.0 {
                    best = (v, order.to_vec());
                }
            });
            best
        } else {
            (self.eval.value(AgentId(agent), &tasks), tasks)
        };
        let v = best.0;
        self.memo.insert((agent, mask), best);
        v
    }
}

/// Heap's algorithm.
fn for_each_permutation<T: Clone>(items: &[T], mut visit: impl FnMut(&[T])) {
    let mut a = items.to_vec();
    let n = a.len();
    let mut c = vec![0usize; n];
    visit(&a);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            visit(&a);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}
