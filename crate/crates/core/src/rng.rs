//! Randomness sources.
//!
//! Pair sampling uses a stateless keyed generator: whether pair `(task,
//! agent)` enters the candidate pool depends only on `(seed, task, agent)`,
//! so a centralised run and every agent of a decentralised run see the same
//! draws without coordinating. Scenario generation uses a ChaCha8 stream.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::ids::{AgentId, TaskId};
use crate::{Error, Result};

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer.
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Hashes a sequence of words into one seed.
pub fn derive_seed(master: u64, parts: &[u64]) -> u64 {
    parts.iter().fold(mix64(master), |h, &p| mix64(h ^ mix64(p)))
}

/// Uniform in `[0, 1)` keyed on `(seed, task, agent)`.
pub fn keyed_uniform(seed: u64, task: TaskId, agent: AgentId) -> f64 {
    let h = derive_seed(seed, &[task.0 as u64, agent.0 as u64]);
    (h >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Whether pair `(task, agent)` is in the sample drawn with probability `p`.
pub fn pair_sampled(seed: u64, task: TaskId, agent: AgentId, p: f64) -> bool {
    keyed_uniform(seed, task, agent) < p
}

/// Validates a sampling probability, `0 < p <= 1`.
pub fn check_probability(p: f64) -> Result<f64> {
    if p > 0.0 && p <= 1.0 {
        Ok(p)
    } else {
        Err(Error::Config(format!("sampling probability must lie in (0, 1], got {p}")))
    }
}

pub fn scenario_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p_one_includes_everything() {
        for t in 0..50 {
            for a in 0..5 {
                assert!(pair_sampled(7, TaskId(t), AgentId(a), 1.0));
            }
        }
    }

    #[test]
    fn probability_range() {
        assert!(check_probability(0.0).is_err());
        assert!(check_probability(-0.1).is_err());
        assert!(check_probability(1.5).is_err());
        assert!(check_probability(f64::NAN).is_err());
        assert_eq!(check_probability(1.0).unwrap(), 1.0);
    }

    #[test]
    fn inclusion_rate_tracks_p() {
        let n = 200 * 50;
        let hits = (0..200)
            .flat_map(|t| (0..50).map(move |a| (t, a)))
            .filter(|&(t, a)| pair_sampled(42, TaskId(t), AgentId(a), 0.3))
            .count();
        let rate = hits as f64 / n as f64;
        // 3 sigma for Bernoulli(0.3) over 10k draws is about 0.014
        assert!((rate - 0.3).abs() < 0.014, "rate {rate}");
    }

    #[test]
    fn keys_are_not_symmetric() {
        assert_ne!(
            keyed_uniform(1, TaskId(2), AgentId(3)),
            keyed_uniform(1, TaskId(3), AgentId(2))
        );
        assert_ne!(keyed_uniform(1, TaskId(2), AgentId(3)), keyed_uniform(2, TaskId(2), AgentId(3)));
    }
}
