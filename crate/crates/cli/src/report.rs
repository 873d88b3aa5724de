//! The JSON summary written to stderr after each pipeline command.

use std::time::Duration;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// One named check with its expected and observed values, both rendered as
/// exact strings.
#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub check: String,
    pub status: Status,
    pub expected: String,
    pub actual: String,
}

impl Verdict {
    pub fn compare(check: &str, expected: String, actual: String) -> Self {
        let status = if expected == actual { Status::Pass } else { Status::Fail };
        Verdict { check: check.to_string(), status, expected, actual }
    }

    pub fn skipped(check: &str, why: String) -> Self {
        Verdict { check: check.to_string(), status: Status::Skipped, expected: String::new(), actual: why }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RemovedEntry {
    pub q: u32,
    pub basket: String,
    pub reason: String,
}

#[derive(Debug, Default, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub config: serde_json::Map<String, serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
    pub wall_time_secs: f64,
    pub outputs: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub removed: Vec<RemovedEntry>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub verdicts: Vec<Verdict>,
}

impl RunReport {
    pub fn new(command: Vec<String>) -> Self {
        RunReport { command, ..Default::default() }
    }

    pub fn set(&mut self, key: &str, value: impl Serialize) {
        let value = serde_json::to_value(value).expect("serializable config value");
        self.config.insert(key.to_string(), value);
    }

    pub fn finish(&mut self, elapsed: Duration) {
        self.wall_time_secs = elapsed.as_secs_f64();
    }

    pub fn failed(&self) -> bool {
        self.verdicts.iter().any(|v| v.status == Status::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is plain data")
    }
}
