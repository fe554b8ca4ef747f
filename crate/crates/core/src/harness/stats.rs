use serde::Serialize;

use super::campaign::ResultRow;

/// Per-cell aggregate over trials.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CellSummary {
    pub mode: String,
    pub algorithm: String,
    pub n_tasks: usize,
    pub n_agents: usize,
    pub p: f64,
    pub trials: usize,
    pub mean_value: f64,
    pub std_value: f64,
    pub mean_oracle_calls: f64,
    pub std_oracle_calls: f64,
    pub mean_rounds: f64,
    pub mean_wall_time_ms: f64,
    pub std_wall_time_ms: f64,
}

/// `(mean, sample standard deviation)`; the deviation is 0 for one sample.
pub fn mean_std(xs: &[f64]) -> (f64, f64) {
    if xs.is_empty() {
        return (0.0, 0.0);
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() == 1 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// Groups rows by `(mode, algorithm, n_tasks, n_agents, p)`, in order of
/// first appearance.
pub fn summarize(rows: &[ResultRow]) -> Vec<CellSummary> {
    let mut keys: Vec<(String, String, usize, usize, u64)> = Vec::new();
    let mut groups: Vec<Vec<&ResultRow>> = Vec::new();
    for row in rows {
        let key = (row.mode.clone(), row.algorithm.clone(), row.n_tasks, row.n_agents, row.p.to_bits());
        match keys.iter().position(|k| *k == key) {
            Some(i) => groups[i].push(row),
            None => {
                keys.push(key);
                groups.push(vec![row]);
            }
        }
    }
    keys.into_iter()
        .zip(groups)
        .map(|((mode, algorithm, n_tasks, n_agents, p), rows)| {
            let col = |f: fn(&ResultRow) -> f64| rows.iter().map(|r| f(r)).collect::<Vec<_>>();
            let (mean_value, std_value) = mean_std(&col(|r| r.total_value));
            let (mean_oracle_calls, std_oracle_calls) = mean_std(&col(|r| r.oracle_calls as f64));
            let (mean_rounds, _) = mean_std(&col(|r| r.rounds as f64));
            let (mean_wall_time_ms, std_wall_time_ms) = mean_std(&col(|r| r.wall_time_ms));
            CellSummary {
                mode,
                algorithm,
                n_tasks,
                n_agents,
                p: f64::from_bits(p),
                trials: rows.len(),
                mean_value,
                std_value,
                mean_oracle_calls,
                std_oracle_calls,
                mean_rounds,
                mean_wall_time_ms,
                std_wall_time_ms,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mean_and_sample_std() {
        let (m, s) = mean_std(&[2.0, 4.0, 4.0, 4.0, 5.0, 5.0, 7.0, 9.0]);
        assert_eq!(m, 5.0);
        assert!((s - (32.0f64 / 7.0).sqrt()).abs() < 1e-12);
        assert_eq!(mean_std(&[3.0]), (3.0, 0.0));
        assert_eq!(mean_std(&[]), (0.0, 0.0));
    }
}
