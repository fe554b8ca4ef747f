//! Partition matroid over task-agent pairs: one partition per task, capacity 1.

use crate::ids::{ground_set, AgentId, TaskAgentPair, TaskId};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PartitionMatroid {
    n_tasks: usize,
    n_agents: usize,
}

impl PartitionMatroid {
    pub fn new(n_tasks: usize, n_agents: usize) -> Self {
        Self { n_tasks, n_agents }
    }

    pub fn n_tasks(&self) -> usize {
        self.n_tasks
    }

    pub fn n_agents(&self) -> usize {
        self.n_agents
    }

    /// `|T| * |A|`.
    pub fn ground_size(&self) -> usize {
        self.n_tasks * self.n_agents
    }

    pub fn ground(&self) -> impl Iterator<Item = TaskAgentPair> {
        ground_set(self.n_tasks, self.n_agents)
    }

    /// The partition holding every pair of `task`.
    pub fn partition(&self, task: TaskId) -> Result<Vec<TaskAgentPair>> {
        self.check_task(task)?;
        Ok((0..self.n_agents)
            .map(|a| TaskAgentPair::new(task, AgentId(a)))
            .collect())
    }

    fn check_task(&self, task: TaskId) -> Result<()> {
        if task.0 >= self.n_tasks {
            return Err(Error::UnknownId { kind: "task", id: task.0 });
        }
        Ok(())
    }

    fn check_pair(&self, pair: &TaskAgentPair) -> Result<()> {
        self.check_task(pair.task)?;
        if pair.agent.0 >= self.n_agents {
            return Err(Error::UnknownId {
                kind: "agent",
                id: pair.agent.0,
            });
        }
        Ok(())
    }

    /// True iff no task repeats among `pairs`.
    pub fn is_independent(&self, pairs: &[TaskAgentPair]) -> Result<bool> {
        let mut used = vec![false; self.n_tasks];
        let mut independent = true;
        for pair in pairs {
            self.check_pair(pair)?;
            let slot = &mut used[pair.task.0];
            if *slot {
                independent = false;
            }
            *slot = true;
        }
        Ok(independent)
    }

    /// Whether `set ∪ {pair}` stays independent, given `set` independent.
    pub fn can_add(&self, set: &[TaskAgentPair], pair: TaskAgentPair) -> bool {
        set.iter().all(|p| p.task != pair.task)
    }
}

/// Outcome of exhaustively checking the matroid axioms on a small instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub subsets_checked: usize,
    pub predicate_mismatches: usize,
    pub empty_independent: bool,
    pub downward_closure_failures: usize,
    pub exchange_failures: usize,
}

impl AxiomReport {
    pub fn holds(&self) -> bool {
        self.empty_independent
            && self.predicate_mismatches == 0
            && self.downward_closure_failures == 0
            && self.exchange_failures == 0
    }
}

/// Enumerates every subset of the ground set and checks: `is_independent`
/// agrees with the "no repeated task" predicate, the empty set is
/// independent, independence is downward closed, and the exchange property
/// holds for every pair of independent sets.
///
/// Refuses ground sets above 16 elements.
pub fn check_axioms(matroid: &PartitionMatroid) -> Result<AxiomReport> {
    let ground: Vec<_> = matroid.ground().collect();
    let n = ground.len();
    if n > 16 {
        return Err(Error::TooLarge(format!(
            "axiom enumeration needs a ground set of at most 16 pairs, got {n}"
        )));
    }
    let subset = |mask: u32| -> Vec<TaskAgentPair> {
        (0..n).filter(|i| mask >> i & 1 == 1).map(|i| ground[i]).collect()
    };
    // Reference predicate, independent of `is_independent`: per-task counts.
    let reference = |mask: u32| -> bool {
        let mut counts = vec![0u8; matroid.n_tasks()];
        for i in (0..n).filter(|i| mask >> i & 1 == 1) {
            counts[ground[i].task.0] += 1;
        }
        counts.iter().all(|&c| c <= 1)
    };

    let total = 1u32 << n;
    let mut independent = vec![false; total as usize];
    let mut report = AxiomReport {
        subsets_checked: total as usize,
        predicate_mismatches: 0,
        empty_independent: matroid.is_independent(&[])?,
        downward_closure_failures: 0,
        exchange_failures: 0,
    };
    for mask in 0..total {
        let ind = matroid.is_independent(&subset(mask))?;
        if ind != reference(mask) {
            report.predicate_mismatches += 1;
        }
        independent[mask as usize] = ind;
    }
    for mask in 0..total {
        if !independent[mask as usize] {
            continue;
        }
        // Removing any one element keeps independence; induction covers all subsets.
        for i in 0..n {
            if mask >> i & 1 == 1 && !independent[(mask & !(1 << i)) as usize] {
                report.downward_closure_failures += 1;
            }
        }
    }
    let indep_masks: Vec<u32> = (0..total).filter(|&m| independent[m as usize]).collect();
    for &a in &indep_masks {
        for &b in &indep_masks {
            if a.count_ones() >= b.count_ones() {
                continue;
            }
            let diff = b & !a;
            let ok = (0..n).any(|i| diff >> i & 1 == 1 && independent[(a | 1 << i) as usize]);
            if !ok {
                report.exchange_failures += 1;
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(t: usize, a: usize) -> TaskAgentPair {
        TaskAgentPair::new(TaskId(t), AgentId(a))
    }

    #[test]
    fn small_cases() {
        let m = PartitionMatroid::new(3, 2);
        assert!(m.is_independent(&[]).unwrap());
        assert!(m.is_independent(&[pair(0, 0), pair(1, 1)]).unwrap());
        assert!(!m.is_independent(&[pair(0, 0), pair(0, 1)]).unwrap());
    }

    #[test]
    fn unknown_ids_are_domain_errors() {
        let m = PartitionMatroid::new(3, 2);
        assert!(matches!(
            m.is_independent(&[pair(3, 0)]),
            Err(Error::UnknownId { kind: "task", .. })
        ));
        assert!(matches!(
            m.is_independent(&[pair(0, 2)]),
            Err(Error::UnknownId { kind: "agent", .. })
        ));
    }

    #[test]
    fn three_by_two_enumeration_matches_predicate() {
        let report = check_axioms(&PartitionMatroid::new(3, 2)).unwrap();
        assert_eq!(report.subsets_checked, 64);
        assert!(report.holds(), "{report:?}");
    }

    #[test]
    fn four_by_three_axioms() {
        let report = check_axioms(&PartitionMatroid::new(4, 3)).unwrap();
        assert_eq!(report.subsets_checked, 4096);
        assert!(report.holds(), "{report:?}");
    }

    #[test]
    fn enumeration_refuses_large_ground() {
        assert!(matches!(
            check_axioms(&PartitionMatroid::new(5, 4)),
            Err(Error::TooLarge(_))
        ));
    }
}
