//! Monte Carlo campaigns, p-sweeps and statistical guarantee checks.

mod campaign;
mod stats;
mod suites;
mod verify;

pub use campaign::{
    replay_row, run_algorithm, run_campaign, sweep_p, CampaignConfig, CampaignOutput, GraphKind, ResultRow, SweepReport,
    TrendCheck, RESULTS_HEADER,
};
pub use stats::{summarize, CellSummary};
pub use suites::{run_suite, Suite, SuiteConfig, SuiteReport};
pub use verify::{verify_guarantee, verify_guarantee_on, GuaranteeReport, InstanceReport, VerifyConfig, DEFAULT_SLACK};
