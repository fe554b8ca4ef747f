//! Randomised submodularity and monotonicity checks, plus the matroid axioms.

use dsta::harness::{run_suite, Suite, SuiteConfig};
use dsta::model::{generate_scenario, Mode, ScenarioParams};
use dsta::properties::sample_submodularity;
use dsta::{AgentId, TaskId};

fn main() -> dsta::Result<()> {
    for suite in [Suite::Submodular, Suite::Monotone, Suite::Matroid] {
        let report = run_suite(&SuiteConfig::new(suite))?;
        println!("{}", serde_json::to_string(&report).expect("report"));
    }

    // Any set function can be fed to the samplers; this one is not submodular.
    let scenario = generate_scenario(&ScenarioParams::new(8, 2, Mode::NonMonotone, 1))?;
    let ground: Vec<TaskId> = scenario.task_ids().collect();
    let square_of_value = |s: &[TaskId]| {
        let v = scenario.unclamped_nonmonotone_value(AgentId(1), s).unwrap();
        v * v.abs()
    };
    let report = sample_submodularity(square_of_value, &ground, 1000, 9);
    println!("signed square of the utility: {} violations in {} draws", report.violations, report.trials);
    Ok(())
}
