//! Sample greedy on a small path-discount instance, compared with the full
//! greedy and the exhaustive optimum.

use dsta::algorithms::{brute_force_optimal, guarantee_bound, sample_greedy, sequential_greedy, DEFAULT_MAX_GROUND};
use dsta::model::{generate_scenario, Mode, ScenarioParams};

fn main() -> dsta::Result<()> {
    let scenario = generate_scenario(&ScenarioParams::new(6, 3, Mode::Monotone, 7))?;
    let opt = brute_force_optimal(&scenario, DEFAULT_MAX_GROUND)?;
    let greedy = sequential_greedy(&scenario)?;
    println!("optimum      {:8.4}  ({} calls)\n{}", opt.total_value, opt.oracle_calls, opt.allocation);
    println!("greedy       {:8.4}  ({} calls)\n{}", greedy.total_value, greedy.oracle_calls, greedy.allocation);

    for p in [0.25, 0.5, 0.75] {
        let bound = guarantee_bound(p, true)?;
        let seeds = 200;
        let mut mean = 0.0;
        for seed in 0..seeds {
            mean += sample_greedy(&scenario, p, seed)?.total_value / seeds as f64;
        }
        println!(
            "p = {p:4}     mean {mean:8.4}  ratio {:.3}  (expected >= {:.3})",
            mean / opt.total_value,
            bound.ratio
        );
    }
    Ok(())
}
