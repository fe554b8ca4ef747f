//! Mean DSTA value against the exhaustive optimum on tiny instances.

use dsta::harness::{verify_guarantee, VerifyConfig};
use dsta::model::Mode;

fn main() -> dsta::Result<()> {
    for mode in [Mode::Monotone, Mode::NonMonotone] {
        let config = VerifyConfig {
            n_instances: 10,
            n_seeds: 200,
            ..VerifyConfig::new(mode, 0.5)
        };
        let report = verify_guarantee(&config)?;
        println!(
            "{mode:>11}: bound {:.3}, worst mean ratio {:.3}, {}",
            report.bound,
            report.worst_ratio,
            if report.passes { "holds" } else { "VIOLATED" }
        );
        for inst in report.instances.iter().take(3) {
            println!("    instance {}: OPT {:.4}, mean {:.4}", inst.instance, inst.opt, inst.mean_value);
        }
    }
    Ok(())
}
