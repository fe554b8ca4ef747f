//! Line-delimited run trace.

use std::io::Write;

use serde::Serialize;

use crate::ids::{AgentId, TaskId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TraceEvent {
    Sample,
    Bid,
    Forward,
    Win,
    Drop,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceRecord {
    /// Auction round (one task committed per round).
    pub round: usize,
    /// Flooding step inside the consensus, 0 outside it.
    pub step: usize,
    pub agent: usize,
    pub event: TraceEvent,
    pub payload: serde_json::Value,
}

#[derive(Debug, Default)]
pub struct Trace {
    enabled: bool,
    records: Vec<TraceRecord>,
}

impl Trace {
    pub fn new(enabled: bool) -> Self {
        Self {
            enabled,
            records: Vec::new(),
        }
    }

    pub(crate) fn push(&mut self, round: usize, step: usize, agent: AgentId, event: TraceEvent, payload: impl FnOnce() -> serde_json::Value) {
        if self.enabled {
            self.records.push(TraceRecord {
                round,
                step,
                agent: agent.0,
                event,
                payload: payload(),
            });
        }
    }

    pub fn records(&self) -> &[TraceRecord] {
        &self.records
    }

    pub fn write_jsonl<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for r in &self.records {
            serde_json::to_writer(&mut out, r)?;
            out.write_all(b"\n")?;
        }
        Ok(())
    }

    pub(crate) fn bid_payload(task: TaskId, gain: f64) -> serde_json::Value {
        serde_json::json!({ "task": task.0, "gain": gain })
    }
}
