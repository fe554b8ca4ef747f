use super::{Mode, Scenario};
use crate::ids::{AgentId, TaskId};
use crate::{Error, Result};

impl Scenario {
    pub(crate) fn path_value(&self, agent: AgentId, bundle: &[TaskId]) -> f64 {
        let a = &self.agents[agent.0];
        let (mut x, mut y) = (a.x, a.y);
        let mut travelled = 0.0;
        let mut value = 0.0;
        for t in bundle {
            let task = &self.tasks[t.0];
            travelled += (task.x - x).hypot(task.y - y);
            value += task.discount.powf(travelled) * task.score;
            (x, y) = (task.x, task.y);
        }
        value
    }

    /// Discounted path score of `bundle` visited in order.
    pub fn monotone_value(&self, agent: AgentId, bundle: &[TaskId]) -> Result<f64> {
        self.require_mode(Mode::Monotone)?;
        self.check_bundle(agent, bundle)?;
        Ok(self.path_value(agent, bundle))
    }

    /// Best slot to insert `task` into `bundle` and the value increase it
    /// brings. Ties go to the smallest slot.
    pub fn cheapest_insertion_gain(&self, agent: AgentId, bundle: &[TaskId], task: TaskId) -> Result<(f64, usize)> {
        let current = self.monotone_value(agent, bundle)?;
        self.task(task)?;
        if bundle.contains(&task) {
            return Err(Error::Precondition(format!("task {task} already in the bundle")));
        }
        let mut best = (f64::NEG_INFINITY, 0);
        let mut seq = Vec::with_capacity(bundle.len() + 1);
        for pos in 0..=bundle.len() {
            seq.clear();
            seq.extend_from_slice(&bundle[..pos]);
            seq.push(task);
            seq.extend_from_slice(&bundle[pos..]);
            let v = self.path_value(agent, &seq);
            if v > best.0 {
                best = (v, pos);
            }
        }
        Ok((best.0 - current, best.1))
    }
}
