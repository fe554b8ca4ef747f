//! Randomized checks of diminishing returns and monotonicity.
//!
//! Each trial draws a random ordering of the ground set and takes `A` and
//! `B` as prefixes of it with `A ⊆ B`; the extra element `u` is appended at
//! the end. For order-insensitive functions this samples arbitrary nested
//! pairs. For path utilities it is the "append to the end" regime in which
//! the earlier tasks' arrival distances are unchanged.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::ids::TaskId;
use crate::rng::scenario_rng;

/// Relative tolerance for property comparisons.
pub const REL_TOL: f64 = 1e-9;

/// `ε = 1e-9 · max(1, |scale|)`.
pub fn tolerance(scale: f64) -> f64 {
    REL_TOL * scale.abs().max(1.0)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleReport {
    pub trials: usize,
    pub violations: usize,
    /// Smallest signed slack seen; negative means the property was violated
    /// by that much (before tolerance).
    pub worst_gap: f64,
}

impl SampleReport {
    fn new(trials: usize) -> Self {
        Self {
            trials,
            violations: 0,
            worst_gap: f64::INFINITY,
        }
    }

    fn observe(&mut self, gap: f64, scale: f64) {
        self.worst_gap = self.worst_gap.min(gap);
        if gap < -tolerance(scale) {
            self.violations += 1;
        }
    }
}

/// Checks `Δf(u|A) ≥ Δf(u|B)` on `trials` random draws.
pub fn sample_submodularity<F>(f: F, ground: &[TaskId], trials: usize, seed: u64) -> SampleReport
where
    F: Fn(&[TaskId]) -> f64,
{
    let mut report = SampleReport::new(trials);
    if ground.is_empty() {
        return report;
    }
    let mut rng = scenario_rng(seed);
    let mut order = ground.to_vec();
    let mut seq = Vec::with_capacity(ground.len());
    for _ in 0..trials {
        order.shuffle(&mut rng);
        let b = rng.gen_range(0..order.len());
        let a = rng.gen_range(0..=b);
        let u = order[rng.gen_range(b..order.len())];

        let values = |prefix: &[TaskId], seq: &mut Vec<TaskId>| {
            seq.clear();
            seq.extend_from_slice(prefix);
            let base = f(seq);
            seq.push(u);
            (base, f(seq))
        };
        let (fa, fau) = values(&order[..a], &mut seq);
        let (fb, fbu) = values(&order[..b], &mut seq);
        // The gains are differences, so rounding error follows the size of the values.
        let scale = fa.abs().max(fau.abs()).max(fb.abs()).max(fbu.abs());
        report.observe((fau - fa) - (fbu - fb), scale);
    }
    report
}

/// Checks `f(A) ≤ f(B)` on `trials` random draws.
pub fn sample_monotonicity<F>(f: F, ground: &[TaskId], trials: usize, seed: u64) -> SampleReport
where
    F: Fn(&[TaskId]) -> f64,
{
    let mut report = SampleReport::new(trials);
    if ground.is_empty() {
        return report;
    }
    let mut rng = scenario_rng(seed);
    let mut order = ground.to_vec();
    for _ in 0..trials {
        order.shuffle(&mut rng);
        let b = rng.gen_range(0..=order.len());
        let a = rng.gen_range(0..=b);
        let fa = f(&order[..a]);
        let fb = f(&order[..b]);
        report.observe(fb - fa, fa.abs().max(fb.abs()));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ground(n: usize) -> Vec<TaskId> {
        (0..n).map(TaskId).collect()
    }

    fn modular(s: &[TaskId]) -> f64 {
        s.iter().map(|t| 1.0 + t.0 as f64 * 0.37).sum()
    }

    #[test]
    fn modular_is_submodular_and_monotone() {
        let r = sample_submodularity(modular, &ground(8), 500, 1);
        assert_eq!(r.violations, 0);
        assert_eq!(r.trials, 500);
        let r = sample_monotonicity(modular, &ground(8), 500, 1);
        assert_eq!(r.violations, 0);
    }

    #[test]
    fn square_of_cardinality_is_caught() {
        let r = sample_submodularity(|s| (s.len() * s.len()) as f64, &ground(6), 200, 3);
        assert!(r.violations > 0);
        assert!(r.worst_gap < 0.0);
    }

    #[test]
    fn decreasing_function_is_caught() {
        let r = sample_monotonicity(|s| 10.0 - s.len() as f64 + if s.is_empty() { -10.0 } else { 0.0 }, &ground(5), 200, 3);
        assert!(r.violations > 0);
    }

    #[test]
    fn empty_ground_is_vacuous() {
        let r = sample_monotonicity(|_| panic!("must not evaluate"), &[], 100, 0);
        assert_eq!(r.violations, 0);
        let r = sample_submodularity(|_| panic!("must not evaluate"), &[], 100, 0);
        assert_eq!(r.violations, 0);
    }

    #[test]
    fn draws_are_seeded() {
        let f = |s: &[TaskId]| (s.len() as f64).sqrt() + s.first().map_or(0.0, |t| t.0 as f64);
        let a = sample_submodularity(f, &ground(7), 300, 11);
        let b = sample_submodularity(f, &ground(7), 300, 11);
        assert_eq!(a, b);
    }
}
