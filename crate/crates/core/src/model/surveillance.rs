use super::{Mode, Scenario};
use crate::ids::{AgentId, TaskId};
use crate::{Error, Result};

/// Detection probabilities `P_D(0..=n_max)`.
///
/// `P_D(0) = P_0` and `P_D(n) = P_D(n-1) + (1 - P_D(n-1)) P_0 / (1 - α (n-1) P_0)`.
/// Fails when a denominator is non-positive or a probability reaches 1.
pub fn detection_curve(p0: f64, alpha: f64, n_max: usize) -> Result<Vec<f64>> {
    if !(p0 > 0.0 && p0 < 1.0) {
        return Err(Error::Config(format!("P0 must lie in (0, 1), got {p0}")));
    }
    let mut curve = Vec::with_capacity(n_max + 1);
    curve.push(p0);
    for n in 1..=n_max {
        let denom = 1.0 - alpha * (n - 1) as f64 * p0;
        if denom <= 0.0 {
            return Err(Error::Config(format!(
                "detection model breaks down at n = {n}: 1 - α(n-1)P0 = {denom} (P0 = {p0}, α = {alpha})"
            )));
        }
        let prev = curve[n - 1];
        let next = prev + (1.0 - prev) * p0 / denom;
        if next >= 1.0 {
            return Err(Error::Config(format!(
                "detection probability reaches 1 at n = {n} (P0 = {p0}, α = {alpha})"
            )));
        }
        curve.push(next);
    }
    Ok(curve)
}

pub fn detection_probability(p0: f64, alpha: f64, n: usize) -> Result<f64> {
    Ok(detection_curve(p0, alpha, n)?[n])
}

impl Scenario {
    fn check_count(&self, n: usize) -> Result<()> {
        self.require_mode(Mode::NonMonotone)?;
        if n > self.tasks.len() {
            return Err(Error::Precondition(format!(
                "bundle size {n} exceeds the {} tasks of the scenario",
                self.tasks.len()
            )));
        }
        Ok(())
    }

    /// `P_D,a(n)` for an agent that has executed `n` tasks.
    pub fn detection_probability(&self, agent: AgentId, n: usize) -> Result<f64> {
        self.agent(agent)?;
        self.check_count(n)?;
        Ok(1.0 - self.survival[agent.0][n])
    }

    /// `P_S,a(n) = 1 - P_D,a(n)`.
    pub fn survival_probability(&self, agent: AgentId, n: usize) -> Result<f64> {
        self.agent(agent)?;
        self.check_count(n)?;
        Ok(self.survival[agent.0][n])
    }

    /// Σ over ordered pairs `i ≠ j` of `e^{σ_i σ_j}`.
    pub fn penalty(&self, agent: AgentId, bundle: &[TaskId]) -> Result<f64> {
        self.require_mode(Mode::NonMonotone)?;
        self.check_bundle(agent, bundle)?;
        let mut sorted = bundle.to_vec();
        sorted.sort_unstable();
        Ok(self.sorted_penalty(&sorted))
    }

    fn sorted_penalty(&self, sorted: &[TaskId]) -> f64 {
        let mut total = 0.0;
        for &i in sorted {
            for &j in sorted {
                if i != j {
                    total += self.penalty_weight(i, j);
                }
            }
        }
        total
    }

    /// Unclamped survival-weighted value minus scaled penalty. Summation is in
    /// task-id order so the result does not depend on bundle order.
    pub fn unclamped_nonmonotone_value(&self, agent: AgentId, bundle: &[TaskId]) -> Result<f64> {
        self.require_mode(Mode::NonMonotone)?;
        self.check_bundle(agent, bundle)?;
        Ok(self.surveillance_value(agent, bundle))
    }

    /// The non-monotone utility, clamped at zero.
    pub fn nonmonotone_value(&self, agent: AgentId, bundle: &[TaskId]) -> Result<f64> {
        Ok(self.unclamped_nonmonotone_value(agent, bundle)?.max(0.0))
    }

    pub(crate) fn surveillance_value(&self, agent: AgentId, bundle: &[TaskId]) -> f64 {
        if bundle.is_empty() {
            return 0.0;
        }
        let mut sorted = bundle.to_vec();
        sorted.sort_unstable();
        let a = &self.agents[agent.0];
        let worth: f64 = sorted.iter().map(|t| self.tasks[t.0].sigma * a.fitness[t.0]).sum();
        self.survival[agent.0][sorted.len()] * worth - a.lambda_scale * self.sorted_penalty(&sorted)
    }
}

#[cfg(test)]
mod tests {
    use super::super::{Agent, Task};
    use super::*;
    use crate::oracle::{Evaluator, Utility};

    fn scenario(sigmas: &[f64], fitness: &[f64], p0: f64, alpha: f64, lambda_scale: f64) -> Scenario {
        let tasks = sigmas
            .iter()
            .enumerate()
            .map(|(i, &sigma)| Task {
                id: TaskId(i),
                x: 1.0,
                y: 1.0,
                sigma,
                score: 1.0,
                discount: 0.95,
            })
            .collect();
        let agents = vec![Agent {
            id: AgentId(0),
            x: 0.0,
            y: 0.0,
            p0,
            alpha,
            lambda_scale,
            fitness: fitness.to_vec(),
        }];
        Scenario::new(Mode::NonMonotone, 10.0, tasks, agents).unwrap()
    }

    #[test]
    fn detection_base_case_and_first_step() {
        assert_eq!(detection_probability(0.2, 1.0, 0).unwrap(), 0.2);
        let pd1 = detection_probability(0.2, 1.0, 1).unwrap();
        assert!((pd1 - 0.36).abs() < 1e-15);
    }

    #[test]
    fn survival_first_step() {
        let s = scenario(&[1.0, 1.0], &[0.5, 0.5], 0.2, 1.0, 0.0);
        assert!((s.survival_probability(AgentId(0), 0).unwrap() - 0.8).abs() < 1e-15);
        assert!((s.survival_probability(AgentId(0), 1).unwrap() - 0.64).abs() < 1e-15);
        assert!(s.survival_probability(AgentId(0), 3).is_err());
    }

    #[test]
    fn nominal_p0_keeps_survival_positive() {
        // P0 = 1/(1 + α|T|) with α = 1, |T| = 300
        let p0: f64 = 1.0 / (1.0 + 300.0);
        assert!((p0 - 1.0 / 301.0).abs() < 1e-18);
        let curve = detection_curve(p0, 1.0, 300).unwrap();
        assert!(curve.windows(2).all(|w| w[0] < w[1]));
        assert!(curve[300] < 1.0);
        assert!(curve.iter().all(|&p| p > 0.0 && p < 1.0));
    }

    #[test]
    fn non_positive_denominator_is_a_config_error() {
        // 1 - α(n-1)P0 = 1 - 2*2*0.3 < 0 at n = 3
        assert!(matches!(detection_curve(0.3, 2.0, 3), Err(Error::Config(_))));
        assert!(detection_curve(0.0, 1.0, 3).is_err());
    }

    #[test]
    fn penalty_small_cases() {
        let s = scenario(&[1.0, 1.0, 2.0], &[0.5; 3], 0.1, 1.0, 0.01);
        assert_eq!(s.penalty(AgentId(0), &[]).unwrap(), 0.0);
        assert_eq!(s.penalty(AgentId(0), &[TaskId(2)]).unwrap(), 0.0);
        let two = s.penalty(AgentId(0), &[TaskId(0), TaskId(1)]).unwrap();
        assert!((two - 5.436_563_656_918_09).abs() < 1e-12);
    }

    #[test]
    fn empty_bundle_is_zero_and_singleton_substitutes() {
        let s = scenario(&[6.0, 1.0], &[0.3, 0.7], 1.0 / 3.0, 1.0, 0.01);
        assert_eq!(s.nonmonotone_value(AgentId(0), &[]).unwrap(), 0.0);
        let v = s.nonmonotone_value(AgentId(0), &[TaskId(0)]).unwrap();
        // P_D(1) = 1/3 + (2/3)(1/3) = 5/9, survival 4/9, value 4/9 * 6 * 0.3
        assert!((v - 4.0 / 9.0 * 1.8).abs() < 1e-14);
    }

    #[test]
    fn value_is_order_independent() {
        let s = scenario(&[1.2, 0.7, 0.9], &[0.4, 0.8, 0.6], 0.1, 1.0, 0.01);
        let a = s.nonmonotone_value(AgentId(0), &[TaskId(2), TaskId(0), TaskId(1)]).unwrap();
        let b = s.nonmonotone_value(AgentId(0), &[TaskId(0), TaskId(1), TaskId(2)]).unwrap();
        assert_eq!(a.to_bits(), b.to_bits());
    }

    #[test]
    fn marginal_gain_matches_double_evaluation() {
        let s = scenario(&[1.2, 0.7, 0.9], &[0.4, 0.8, 0.6], 0.1, 1.0, 0.01);
        let ev = Evaluator::new(&s);
        let bundle = [TaskId(0), TaskId(2)];
        let gain = ev.marginal_gain(AgentId(0), TaskId(1), &bundle).unwrap();
        let with = s.nonmonotone_value(AgentId(0), &[TaskId(0), TaskId(2), TaskId(1)]).unwrap();
        let without = s.nonmonotone_value(AgentId(0), &bundle).unwrap();
        assert_eq!(gain, with - without);
    }

    #[test]
    fn zero_penalty_scale_reduces_to_expected_value() {
        let s = scenario(&[1.2, 0.7, 0.9], &[0.4, 0.8, 0.6], 0.1, 1.0, 0.0);
        let bundle = [TaskId(0), TaskId(1), TaskId(2)];
        let expected = s.survival_probability(AgentId(0), 3).unwrap() * (1.2 * 0.4 + 0.7 * 0.8 + 0.9 * 0.6);
        let v = s.nonmonotone_value(AgentId(0), &bundle).unwrap();
        assert!((v - expected).abs() < 1e-15);
        assert!(!s.ordered());
    }

    #[test]
    fn heavy_penalty_makes_adding_a_task_lose_value() {
        let s = scenario(&[2.0, 2.0], &[0.5, 0.5], 0.1, 1.0, 1.0);
        let one = s.nonmonotone_value(AgentId(0), &[TaskId(0)]).unwrap();
        let two = s.nonmonotone_value(AgentId(0), &[TaskId(0), TaskId(1)]).unwrap();
        assert!(two < one);
        assert!(s.unclamped_nonmonotone_value(AgentId(0), &[TaskId(0), TaskId(1)]).unwrap() < 0.0);
    }
}
