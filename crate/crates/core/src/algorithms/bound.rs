use serde::Serialize;

use crate::rng::check_probability;
use crate::Result;

/// Expected approximation ratio of sample greedy at sampling probability `p`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GuaranteeBound {
    pub p: f64,
    pub monotone: bool,
    pub ratio: f64,
}

/// `p / (p + P_max)` for monotone objectives, `p (1 - p) / (p + P_max)`
/// otherwise, with `P_max = max(p, 1 - p)`.
pub fn guarantee_bound(p: f64, monotone: bool) -> Result<GuaranteeBound> {
    let p = check_probability(p)?;
    let p_max = p.max(1.0 - p);
    let ratio = if monotone {
        p / (p + p_max)
    } else {
        p * (1.0 - p) / (p + p_max)
    };
    Ok(GuaranteeBound { p, monotone, ratio })
}
