use dsta::algorithms::centralized_dsta;
use dsta::consensus::{decentralized_dsta, CommGraph};
use dsta::matroid::PartitionMatroid;
use dsta::model::{generate_scenario, Mode, ScenarioParams};
use dsta::oracle::{total_value, Utility};
use dsta::properties::sample_monotonicity;
use dsta::{AgentId, TaskId};
use proptest::prelude::*;

fn mode_strategy() -> impl Strategy<Value = Mode> {
    prop_oneof![Just(Mode::Monotone), Just(Mode::NonMonotone)]
}

fn p_strategy() -> impl Strategy<Value = f64> {
    prop_oneof![Just(0.1), Just(0.3), Just(0.5), Just(0.8), Just(1.0)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn runs_ascend_and_stay_independent(
        n_agents in 1usize..6,
        extra in 0usize..14,
        mode in mode_strategy(),
        p in p_strategy(),
        seed in any::<u64>(),
    ) {
        let scenario = generate_scenario(&ScenarioParams::new(n_agents + extra, n_agents, mode, seed)).unwrap();
        let run = centralized_dsta(&scenario, p, seed).unwrap();

        let mut previous = 0.0;
        for &v in &run.value_trace {
            prop_assert!(v > previous, "trace {:?}", run.value_trace);
            previous = v;
        }
        prop_assert_eq!(run.value_trace.len(), run.rounds);
        prop_assert_eq!(run.allocation.n_allocated(), run.rounds);
        prop_assert_eq!(run.total_value.to_bits(), total_value(&scenario, &run.allocation).to_bits());

        let matroid = PartitionMatroid::new(scenario.n_tasks(), scenario.n_agents());
        prop_assert!(matroid.is_independent(&run.allocation.pairs()).unwrap());
    }

    #[test]
    fn topology_changes_messages_but_not_the_allocation(
        n_agents in 2usize..7,
        extra in 0usize..12,
        mode in mode_strategy(),
        p in p_strategy(),
        seed in any::<u64>(),
    ) {
        let scenario = generate_scenario(&ScenarioParams::new(n_agents + extra, n_agents, mode, seed)).unwrap();
        let central = centralized_dsta(&scenario, p, seed).unwrap();
        for graph in [CommGraph::complete(n_agents).unwrap(), CommGraph::ring(n_agents).unwrap(), CommGraph::line(n_agents).unwrap()] {
            let run = decentralized_dsta(&scenario, &graph, p, seed, false).unwrap();
            prop_assert_eq!(&run.result.allocation, &central.allocation);

            // Every consensus round floods for `diameter` steps over at most every directed link.
            let rounds = run.result.rounds as u64 + 1;
            let bound = rounds * (graph.n_links() * graph.diameter()) as u64;
            prop_assert!(run.total_messages() <= bound, "{} > {}", run.total_messages(), bound);
            for (a, &sent) in run.messages_per_agent.iter().enumerate() {
                let per_agent = rounds * (graph.degree(AgentId(a)) * graph.diameter()) as u64;
                prop_assert!(sent <= per_agent);
            }
        }
    }

    #[test]
    fn path_utility_grows_under_end_appends(n_tasks in 2usize..10, seed in any::<u64>()) {
        let scenario = generate_scenario(&ScenarioParams::new(n_tasks, 2, Mode::Monotone, seed)).unwrap();
        let ground: Vec<TaskId> = scenario.task_ids().collect();
        for agent in [AgentId(0), AgentId(1)] {
            let report = sample_monotonicity(|s| scenario.monotone_value(agent, s).unwrap(), &ground, 200, seed ^ 7);
            prop_assert_eq!(report.violations, 0);
        }
    }
}

#[test]
fn sampling_probability_one_allocates_every_profitable_task() {
    for seed in 0..5 {
        let scenario = generate_scenario(&ScenarioParams::new(20, 4, Mode::Monotone, seed)).unwrap();
        let run = centralized_dsta(&scenario, 1.0, seed).unwrap();
        assert_eq!(run.allocation.n_allocated(), 20);
    }
}
