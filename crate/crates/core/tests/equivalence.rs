use dsta::algorithms::{centralized_dsta, sample_greedy, sequential_greedy};
use dsta::consensus::{decentralized_dsta, CommGraph};
use dsta::model::{generate_scenario, Mode, ScenarioParams};
use dsta::oracle::ModularUtility;
use dsta::rng::derive_seed;

fn graphs(n: usize) -> Vec<(&'static str, CommGraph)> {
    vec![
        ("complete", CommGraph::complete(n).unwrap()),
        ("ring", CommGraph::ring(n).unwrap()),
        ("line", CommGraph::line(n).unwrap()),
    ]
}

#[test]
fn decentralized_matches_centralized_and_pool_greedy() {
    for case in 0..24u64 {
        let n_agents = 1 + (case as usize % 7);
        let n_tasks = n_agents + 3 * (case as usize % 5);
        let mode = if case % 2 == 0 { Mode::Monotone } else { Mode::NonMonotone };
        let p = [0.1, 0.3, 0.5, 1.0][case as usize % 4];
        let seed = derive_seed(99, &[case]);
        let scenario = generate_scenario(&ScenarioParams::new(n_tasks, n_agents, mode, seed)).unwrap();

        let central = centralized_dsta(&scenario, p, seed).unwrap();
        let pooled = sample_greedy(&scenario, p, seed).unwrap();
        assert_eq!(central.allocation, pooled.allocation, "case {case}");
        assert_eq!(central.total_value.to_bits(), pooled.total_value.to_bits(), "case {case}");
        for (name, graph) in graphs(n_agents) {
            let run = decentralized_dsta(&scenario, &graph, p, seed, false).unwrap();
            assert_eq!(run.result.allocation, central.allocation, "case {case} on {name}");
            assert_eq!(run.result.oracle_calls, central.oracle_calls, "case {case} on {name}");
            assert_eq!(run.result.value_trace, central.value_trace, "case {case} on {name}");
        }
    }
}

#[test]
fn full_sampling_is_the_sequential_greedy() {
    for seed in 0..6 {
        let scenario = generate_scenario(&ScenarioParams::new(15, 4, Mode::Monotone, seed)).unwrap();
        let greedy = sequential_greedy(&scenario).unwrap();
        let dsta = centralized_dsta(&scenario, 1.0, seed * 31 + 5).unwrap();
        assert_eq!(greedy.allocation, dsta.allocation);
    }
}

#[test]
fn modular_utility_takes_the_best_agent_per_task() {
    let weights = vec![vec![1.0, 3.0, 2.0], vec![0.5, 0.2, 0.1], vec![0.0, 0.0, 4.0], vec![2.0, 2.0, 0.0]];
    let utility = ModularUtility::new(weights.clone()).unwrap();
    let run = sequential_greedy(&utility).unwrap();
    let expected: f64 = weights.iter().map(|row| row.iter().cloned().fold(0.0, f64::max)).sum();
    assert!((run.total_value - expected).abs() < 1e-12);
    // Tie between agents 0 and 1 on the last task goes to the lower id.
    assert_eq!(run.allocation.owner(dsta::TaskId(3)), Some(dsta::AgentId(0)));

    for (name, graph) in graphs(3) {
        let run = decentralized_dsta(&utility, &graph, 0.5, 4, false).unwrap();
        let central = centralized_dsta(&utility, 0.5, 4).unwrap();
        assert_eq!(run.result.allocation, central.allocation, "{name}");
    }
}
