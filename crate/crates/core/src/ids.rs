//! Identifiers and the allocation container.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Dense task identifier, `0..n_tasks`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TaskId(pub usize);

/// Dense agent identifier, `0..n_agents`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AgentId(pub usize);

impl TaskId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl AgentId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for TaskId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t{}", self.0)
    }
}

impl fmt::Display for AgentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a{}", self.0)
    }
}

/// One element of the ground set `T x A`. Ordered by task, then agent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TaskAgentPair {
    pub task: TaskId,
    pub agent: AgentId,
}

impl TaskAgentPair {
    pub fn new(task: TaskId, agent: AgentId) -> Self {
        Self { task, agent }
    }
}

/// All pairs of a `n_tasks x n_agents` instance in ascending `(task, agent)` order.
pub fn ground_set(n_tasks: usize, n_agents: usize) -> impl Iterator<Item = TaskAgentPair> {
    (0..n_tasks).flat_map(move |t| (0..n_agents).map(move |a| TaskAgentPair::new(TaskId(t), AgentId(a))))
}

/// Per-agent ordered bundles. A task sits in at most one bundle.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Allocation {
    bundles: Vec<Vec<TaskId>>,
}

impl Allocation {
    pub fn empty(n_agents: usize) -> Self {
        Self {
            bundles: vec![Vec::new(); n_agents],
        }
    }

    /// Builds an allocation from explicit bundles, rejecting overlaps.
    pub fn from_bundles(bundles: Vec<Vec<TaskId>>) -> crate::Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for task in bundles.iter().flatten() {
            if !seen.insert(*task) {
                return Err(crate::Error::Precondition(format!(
                    "task {task} appears in more than one bundle position"
                )));
            }
        }
        Ok(Self { bundles })
    }

    pub fn n_agents(&self) -> usize {
        self.bundles.len()
    }

    pub fn bundle(&self, agent: AgentId) -> &[TaskId] {
        &self.bundles[agent.0]
    }

    pub fn bundles(&self) -> &[Vec<TaskId>] {
        &self.bundles
    }

    pub fn into_bundles(self) -> Vec<Vec<TaskId>> {
        self.bundles
    }

    /// Inserts `task` into `agent`'s bundle at `position`.
    ///
    /// Fails if the task is already held by any agent.
    pub fn insert(&mut self, agent: AgentId, task: TaskId, position: usize) -> crate::Result<()> {
        if let Some(owner) = self.owner(task) {
            return Err(crate::Error::Precondition(format!(
                "task {task} already allocated to {owner}"
            )));
        }
        let bundle = &mut self.bundles[agent.0];
        if position > bundle.len() {
            return Err(crate::Error::Precondition(format!(
                "insertion position {position} beyond bundle length {}",
                bundle.len()
            )));
        }
        bundle.insert(position, task);
        Ok(())
    }

    pub fn owner(&self, task: TaskId) -> Option<AgentId> {
        self.bundles
            .iter()
            .position(|b| b.contains(&task))
            .map(AgentId)
    }

    pub fn n_allocated(&self) -> usize {
        self.bundles.iter().map(Vec::len).sum()
    }

    /// The allocation as a set of pairs, sorted by `(task, agent)`.
    pub fn pairs(&self) -> Vec<TaskAgentPair> {
        let mut out: Vec<_> = self
            .bundles
            .iter()
            .enumerate()
            .flat_map(|(a, b)| b.iter().map(move |&t| TaskAgentPair::new(t, AgentId(a))))
            .collect();
        out.sort();
        out
    }

    /// Task -> agent view, for comparisons that ignore bundle order.
    pub fn assignment(&self) -> BTreeMap<TaskId, AgentId> {
        self.pairs().into_iter().map(|p| (p.task, p.agent)).collect()
    }
}

impl fmt::Display for Allocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, bundle) in self.bundles.iter().enumerate() {
            write!(f, "{}: [", AgentId(a))?;
            for (i, t) in bundle.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{t}")?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}
