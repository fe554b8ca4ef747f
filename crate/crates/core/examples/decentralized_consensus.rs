//! Decentralised DSTA over a ring, with the message trace.
//!
//! Every agent samples its own tasks, proposes its best insertion, and the
//! network agrees on the winning bid by max-consensus. The result equals the
//! centralised run with the same seed.

use dsta::algorithms::centralized_dsta;
use dsta::consensus::{decentralized_dsta, CommGraph, TraceEvent};
use dsta::model::{generate_scenario, Mode, ScenarioParams};

fn main() -> dsta::Result<()> {
    let scenario = generate_scenario(&ScenarioParams::new(30, 6, Mode::Monotone, 3))?;
    let seed = 11;
    let p = 0.5;

    for (name, graph) in [
        ("complete", CommGraph::complete(6)?),
        ("ring", CommGraph::ring(6)?),
        ("line", CommGraph::line(6)?),
    ] {
        let run = decentralized_dsta(&scenario, &graph, p, seed, name == "ring")?;
        println!(
            "{name:>8}: diameter {}  value {:.4}  rounds {}  messages {}  per agent {:?}",
            graph.diameter(),
            run.result.total_value,
            run.result.rounds,
            run.total_messages(),
            run.messages_per_agent
        );
        if name == "ring" {
            let wins = run.trace.records().iter().filter(|r| r.event == TraceEvent::Win).count();
            println!("          trace: {} records, {wins} wins", run.trace.records().len());
            for record in run.trace.records().iter().take(8) {
                println!("          {}", serde_json::to_string(record).expect("trace record"));
            }
        }
    }

    let central = centralized_dsta(&scenario, p, seed)?;
    println!("central : value {:.4}\n{}", central.total_value, central.allocation);
    Ok(())
}
