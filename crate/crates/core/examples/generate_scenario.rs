//! Generate a scenario, write it to disk and read it back.
//!
//! ```text
//! cargo run --example generate_scenario -- 40 6 nonmonotone
//! ```

use dsta::model::{generate_scenario, Mode, Scenario, ScenarioParams};

fn main() -> dsta::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n_tasks = args.first().and_then(|s| s.parse().ok()).unwrap_or(20);
    let n_agents = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(4);
    let mode: Mode = args.get(2).map_or(Ok(Mode::Monotone), |s| s.parse())?;

    let scenario = generate_scenario(&ScenarioParams::new(n_tasks, n_agents, mode, 42))?;
    let path = std::env::temp_dir().join("dsta-example-scenario.json");
    scenario.save(&path)?;
    let reloaded = Scenario::load(&path)?;
    assert_eq!(reloaded.tasks(), scenario.tasks());

    println!("{} tasks, {} agents, {mode} mode -> {}", n_tasks, n_agents, path.display());
    for task in scenario.tasks().iter().take(5) {
        println!(
            "  task {:>3} at ({:5.2}, {:5.2}) km  sigma {:.3}",
            task.id.0, task.x, task.y, task.sigma
        );
    }
    for agent in scenario.agents() {
        println!("  agent {:>2} starts at ({:5.2}, {:5.2}) km", agent.id.0, agent.x, agent.y);
    }
    Ok(())
}
