//! Desk-scale Monte Carlo campaign with the path-discount utility.
//!
//! ```text
//! cargo run --release --example monotone_campaign -- 4
//! ```

use dsta::algorithms::Algorithm;
use dsta::harness::{run_campaign, CampaignConfig};
use dsta::model::Mode;

fn main() -> dsta::Result<()> {
    let jobs = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    let config = CampaignConfig::desk(Mode::Monotone);
    let output = run_campaign(&config, jobs)?;

    println!("agents  dsta      greedy    ratio   dsta calls  greedy calls");
    for &a in &config.n_agents {
        let dsta = output.summary(Algorithm::Dsta, 60, a, 0.5).expect("cell was run");
        let greedy = output.summary(Algorithm::Greedy, 60, a, 1.0).expect("cell was run");
        println!(
            "{a:>6}  {:8.3}  {:8.3}  {:.3}   {:>10.0}  {:>12.0}",
            dsta.mean_value,
            greedy.mean_value,
            dsta.mean_value / greedy.mean_value,
            dsta.mean_oracle_calls,
            greedy.mean_oracle_calls
        );
    }
    Ok(())
}
