use std::path::Path;

use dsta::algorithms::Algorithm;
use dsta::harness::{replay_row, run_campaign, CampaignConfig, GraphKind, ResultRow, RESULTS_HEADER};
use dsta::model::Mode;

fn small(mode: Mode) -> CampaignConfig {
    CampaignConfig {
        n_tasks: vec![20],
        n_agents: vec![3, 5],
        p: vec![0.3, 0.5],
        trials: 4,
        master_seed: 17,
        algorithms: vec![Algorithm::Dsta, Algorithm::DstaCentral, Algorithm::Greedy],
        graph: GraphKind::Line,
        ..CampaignConfig::desk(mode)
    }
}

#[test]
fn rows_replay_from_their_own_fields() {
    for mode in [Mode::Monotone, Mode::NonMonotone] {
        let config = small(mode);
        let output = run_campaign(&config, 2).unwrap();
        for row in output.rows.iter().step_by(7).take(5) {
            let value = replay_row(row, &config).unwrap();
            assert_eq!(value.to_bits(), row.total_value.to_bits(), "{row:?}");
        }
    }
}

#[test]
fn summary_means_match_the_rows() {
    let output = run_campaign(&small(Mode::Monotone), 3).unwrap();
    for cell in &output.summaries {
        let rows: Vec<&ResultRow> = output
            .rows
            .iter()
            .filter(|r| r.algorithm == cell.algorithm && r.n_agents == cell.n_agents && r.p == cell.p)
            .collect();
        assert_eq!(rows.len(), cell.trials);
        let n = rows.len() as f64;
        let mean = rows.iter().map(|r| r.total_value).sum::<f64>() / n;
        let calls = rows.iter().map(|r| r.oracle_calls as f64).sum::<f64>() / n;
        let var = rows.iter().map(|r| (r.total_value - mean).powi(2)).sum::<f64>() / (n - 1.0);
        assert!((cell.mean_value - mean).abs() < 1e-12);
        assert!((cell.mean_oracle_calls - calls).abs() < 1e-12 * calls.max(1.0));
        assert!((cell.std_value - var.sqrt()).abs() < 1e-12);
    }
}

#[test]
fn p_free_algorithms_run_once_per_trial() {
    let output = run_campaign(&small(Mode::NonMonotone), 1).unwrap();
    let greedy: Vec<&ResultRow> = output.rows.iter().filter(|r| r.algorithm == "greedy").collect();
    assert_eq!(greedy.len(), 2 * 4);
    assert!(greedy.iter().all(|r| r.p == 1.0));
    let dsta = output.rows.iter().filter(|r| r.algorithm == "dsta").count();
    assert_eq!(dsta, 2 * 2 * 4);
}

#[test]
fn decentralized_and_centralized_rows_agree() {
    let output = run_campaign(&small(Mode::Monotone), 4).unwrap();
    let by = |algo: &str| -> Vec<(u64, String)> {
        output
            .rows
            .iter()
            .filter(|r| r.algorithm == algo)
            .map(|r| (r.seed, format!("{}:{}:{}", r.p, r.total_value, r.oracle_calls)))
            .collect()
    };
    assert_eq!(by("dsta"), by("dsta-central"));
}

#[test]
fn output_files_are_written_and_independent_of_jobs() {
    let dirs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
    for (dir, jobs) in dirs.iter().zip([1, 4]) {
        let config = CampaignConfig {
            output: Some(dir.path().to_path_buf()),
            ..small(Mode::Monotone)
        };
        run_campaign(&config, jobs).unwrap();
    }
    for name in ["results.csv", "summary.csv", "value_vs_agents.csv", "calls_vs_agents.csv", "value_vs_p.csv"] {
        let a = std::fs::read(dirs[0].path().join(name)).unwrap();
        let b = std::fs::read(dirs[1].path().join(name)).unwrap();
        assert!(!a.is_empty(), "{name}");
        assert_eq!(a, b, "{name}");
    }
    let results = std::fs::read_to_string(dirs[0].path().join("results.csv")).unwrap();
    assert_eq!(results.lines().next(), Some(RESULTS_HEADER));
}

#[test]
fn shipped_configs_parse_and_validate() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("configs");
    let mut seen = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let text = std::fs::read_to_string(&path).unwrap();
        let config: CampaignConfig = toml::from_str(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        config.validate().unwrap();
        seen += 1;
    }
    assert!(seen >= 3);
}

#[test]
fn bad_configs_are_rejected() {
    let mut config = small(Mode::Monotone);
    config.p = vec![0.0];
    assert!(run_campaign(&config, 1).is_err());
    let mut config = small(Mode::Monotone);
    config.n_agents = vec![30];
    assert!(run_campaign(&config, 1).is_err());
    assert!(toml::from_str::<CampaignConfig>("mode = \"monotone\"\nbogus = 1").is_err());
}
