//! Value and oracle calls as the sampling probability grows.

use dsta::algorithms::{guarantee_bound, Algorithm};
use dsta::harness::{sweep_p, CampaignConfig, GraphKind};
use dsta::model::Mode;

fn main() -> dsta::Result<()> {
    let config = CampaignConfig {
        n_tasks: vec![60],
        n_agents: vec![10],
        p: vec![0.1, 0.2, 0.25, 0.5, 0.75, 1.0],
        trials: 10,
        algorithms: vec![Algorithm::Dsta],
        graph: GraphKind::Ring,
        ..CampaignConfig::desk(Mode::Monotone)
    };
    let report = sweep_p(&config, 4)?;

    println!("   p   bound   mean value   mean calls");
    for &p in &config.p {
        let cell = report.output.summary(Algorithm::Dsta, 60, 10, p).expect("cell was run");
        println!(
            "{p:4}   {:.3}   {:10.3}   {:10.0}",
            guarantee_bound(p, true)?.ratio,
            cell.mean_value,
            cell.mean_oracle_calls
        );
    }
    for trend in &report.trends {
        println!(
            "{} at {} agents: {} value inversions, {} call inversions",
            trend.algorithm, trend.n_agents, trend.value_inversions, trend.calls_inversions
        );
    }
    Ok(())
}
