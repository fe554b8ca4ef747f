//! Versioned JSON scenario files. Floats carry 17 significant digits.

use std::path::Path;

use serde::de::Error as _;
use serde::ser::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::value::RawValue;

use super::{Agent, Mode, Scenario, Task};
use crate::ids::{AgentId, TaskId};
use crate::{Error, Result};

pub const SCENARIO_FORMAT: &str = "dsta-scenario";
pub const SCENARIO_VERSION: u32 = 1;

fn raw_f64(x: f64) -> std::result::Result<Box<RawValue>, String> {
    if !x.is_finite() {
        return Err(format!("cannot serialize non-finite value {x}"));
    }
    RawValue::from_string(format!("{x:.16e}")).map_err(|e| e.to_string())
}

fn ser_f64<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    raw_f64(*x).map_err(S::Error::custom)?.serialize(s)
}

fn ser_f64_vec<S: Serializer>(xs: &[f64], s: S) -> std::result::Result<S::Ok, S::Error> {
    let raw = xs
        .iter()
        .map(|&x| raw_f64(x))
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(S::Error::custom)?;
    raw.serialize(s)
}

fn de_format<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<String, D::Error> {
    let s = String::deserialize(d)?;
    if s != SCENARIO_FORMAT {
        return Err(D::Error::custom(format!("not a scenario file (format {s:?})")));
    }
    Ok(s)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct World {
    #[serde(serialize_with = "ser_f64")]
    pub size_km: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TaskRecord {
    pub id: usize,
    #[serde(serialize_with = "ser_f64")]
    pub x: f64,
    #[serde(serialize_with = "ser_f64")]
    pub y: f64,
    #[serde(serialize_with = "ser_f64")]
    pub sigma: f64,
    #[serde(serialize_with = "ser_f64")]
    pub b: f64,
    #[serde(serialize_with = "ser_f64")]
    pub lambda: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AgentRecord {
    pub id: usize,
    #[serde(serialize_with = "ser_f64")]
    pub x: f64,
    #[serde(serialize_with = "ser_f64")]
    pub y: f64,
    #[serde(rename = "P0", serialize_with = "ser_f64")]
    pub p0: f64,
    #[serde(serialize_with = "ser_f64")]
    pub alpha: f64,
    #[serde(serialize_with = "ser_f64")]
    pub lambda_scale: f64,
    #[serde(serialize_with = "ser_f64_vec")]
    pub fitness: Vec<f64>,
}

/// On-disk layout of a scenario.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScenarioFile {
    #[serde(deserialize_with = "de_format")]
    pub format: String,
    pub version: u32,
    pub mode: Mode,
    pub world: World,
    pub tasks: Vec<TaskRecord>,
    pub agents: Vec<AgentRecord>,
}

impl From<&Scenario> for ScenarioFile {
    fn from(s: &Scenario) -> Self {
        Self {
            format: SCENARIO_FORMAT.to_owned(),
            version: SCENARIO_VERSION,
            mode: s.mode,
            world: World { size_km: s.world_km },
            tasks: s
                .tasks
                .iter()
                .map(|t| TaskRecord {
                    id: t.id.0,
                    x: t.x,
                    y: t.y,
                    sigma: t.sigma,
                    b: t.score,
                    lambda: t.discount,
                })
                .collect(),
            agents: s
                .agents
                .iter()
                .map(|a| AgentRecord {
                    id: a.id.0,
                    x: a.x,
                    y: a.y,
                    p0: a.p0,
                    alpha: a.alpha,
                    lambda_scale: a.lambda_scale,
                    fitness: a.fitness.clone(),
                })
                .collect(),
        }
    }
}

impl TryFrom<ScenarioFile> for Scenario {
    type Error = Error;

    fn try_from(f: ScenarioFile) -> Result<Self> {
        if f.version != SCENARIO_VERSION {
            return Err(Error::Parse(format!(
                "unsupported scenario version {} (expected {SCENARIO_VERSION})",
                f.version
            )));
        }
        let tasks = f
            .tasks
            .into_iter()
            .map(|t| Task {
                id: TaskId(t.id),
                x: t.x,
                y: t.y,
                sigma: t.sigma,
                score: t.b,
                discount: t.lambda,
            })
            .collect();
        let agents = f
            .agents
            .into_iter()
            .map(|a| Agent {
                id: AgentId(a.id),
                x: a.x,
                y: a.y,
                p0: a.p0,
                alpha: a.alpha,
                lambda_scale: a.lambda_scale,
                fitness: a.fitness,
            })
            .collect();
        Scenario::new(f.mode, f.world.size_km, tasks, agents)
    }
}

impl Scenario {
    pub fn to_json(&self) -> Result<String> {
        let mut out = serde_json::to_string_pretty(&ScenarioFile::from(self))
            .map_err(|e| Error::Parse(e.to_string()))?;
        out.push('\n');
        Ok(out)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: ScenarioFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        file.try_into()
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()?).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::super::{generate_scenario, ScenarioParams};
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn floats_carry_seventeen_digits() {
        let s = generate_scenario(&ScenarioParams::new(3, 1, Mode::NonMonotone, 2)).unwrap();
        let text = s.to_json().unwrap();
        assert!(text.contains("\"format\": \"dsta-scenario\""));
        assert!(text.contains("\"P0\": "));
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["version"], 1);
        assert_eq!(v["mode"], "nonmonotone");
        assert!(text.contains("\"size_km\": 1.0000000000000000e1"));
    }

    #[test]
    fn rejects_foreign_and_future_files() {
        let s = generate_scenario(&ScenarioParams::new(3, 1, Mode::Monotone, 2)).unwrap();
        let text = s.to_json().unwrap();
        assert!(Scenario::from_json(&text.replace("dsta-scenario", "other")).is_err());
        assert!(Scenario::from_json(&text.replace("\"version\": 1", "\"version\": 2")).is_err());
        assert!(Scenario::from_json("{").is_err());
    }

    #[test]
    fn invalid_content_is_rejected_on_load() {
        let s = generate_scenario(&ScenarioParams::new(3, 1, Mode::Monotone, 2)).unwrap();
        let mut f = ScenarioFile::from(&s);
        f.tasks[1].lambda = 1.5;
        assert!(Scenario::try_from(f).is_err());
    }

    proptest! {
        #[test]
        fn json_round_trip_is_lossless(seed in any::<u64>(), n_agents in 1usize..5, extra in 0usize..6, nonmono in any::<bool>()) {
            let mode = if nonmono { Mode::NonMonotone } else { Mode::Monotone };
            let s = generate_scenario(&ScenarioParams::new(n_agents + extra, n_agents, mode, seed)).unwrap();
            let back = Scenario::from_json(&s.to_json().unwrap()).unwrap();
            prop_assert_eq!(&back, &s);
        }
    }
}
