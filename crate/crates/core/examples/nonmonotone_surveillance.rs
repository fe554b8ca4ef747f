//! The surveillance utility: detection risk and overlap penalty make it
//! non-monotone, so adding a task can lower an agent's value.

use dsta::algorithms::{centralized_dsta, sequential_greedy};
use dsta::model::{generate_scenario, Mode, ScenarioParams};
use dsta::{AgentId, TaskId};

fn main() -> dsta::Result<()> {
    let scenario = generate_scenario(&ScenarioParams::new(60, 10, Mode::NonMonotone, 5))?;
    let agent = AgentId(0);

    println!("survival probability of {agent} by bundle size:");
    for n in [0, 1, 2, 5, 10, 20] {
        println!("  {n:>2} tasks: {:.4}", scenario.survival_probability(agent, n)?);
    }

    let mut bundle = Vec::new();
    println!("value of {agent} while adding ordinary tasks:");
    for t in 10..18 {
        bundle.push(TaskId(t));
        println!(
            "  {:>2} tasks: {:8.4}",
            bundle.len(),
            scenario.unclamped_nonmonotone_value(agent, &bundle)?
        );
    }
    bundle.push(TaskId(1));
    println!(
        "  + an important task of another agent: {:8.4}",
        scenario.unclamped_nonmonotone_value(agent, &bundle)?
    );

    let greedy = sequential_greedy(&scenario)?;
    let dsta = centralized_dsta(&scenario, 0.5, 0)?;
    println!("greedy value {:.4} with {} tasks allocated", greedy.total_value, greedy.allocation.n_allocated());
    println!("dsta   value {:.4} with {} tasks allocated", dsta.total_value, dsta.allocation.n_allocated());
    Ok(())
}
