//! Sample-greedy task allocation for multi-robot systems.
//!
//! Tasks are allocated to agents by greedy maximisation of a per-agent
//! utility over a randomly sampled pool of task-agent pairs, subject to the
//! partition matroid "each task goes to at most one agent". The crate ships:
//!
//! - [`oracle`], [`matroid`], [`properties`]: set-function contracts, oracle-call
//!   counting, and randomized submodularity/monotonicity checks.
//! - [`model`]: the path-discounted (monotone) and surveillance (non-monotone)
//!   utilities plus seeded scenario generation and scenario files.
//! - [`algorithms`]: sample greedy over pairs, the centralised per-agent auction,
//!   the deterministic greedy baseline, exhaustive optimum, and the expected
//!   approximation ratio.
//! - [`consensus`]: per-agent simulation over a synchronous network with a
//!   flooding max-consensus.
//! - [`harness`]: Monte Carlo campaigns, p-sweeps and guarantee verification.
//! - [`cli`]: the `dsta` command-line front end.

pub mod algorithms;
pub mod cli;
pub mod consensus;
pub mod error;
pub mod harness;
pub mod ids;
pub mod matroid;
pub mod model;
pub mod oracle;
pub mod properties;
pub mod rng;

pub use error::{Error, Result};
pub use ids::{AgentId, Allocation, TaskAgentPair, TaskId};
