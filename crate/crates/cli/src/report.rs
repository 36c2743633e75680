//! Report model shared by the text and JSON outputs.

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// One-line human summary, also used by the text renderer.
    pub text: String,
    pub data: Value,
}

impl Check {
    pub fn new(
        name: impl Into<String>,
        passed: bool,
        text: impl Into<String>,
        data: impl Serialize,
    ) -> Self {
        Check {
            name: name.into(),
            passed,
            text: text.into(),
            data: serde_json::to_value(data).expect("report data serializes"),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Section {
    pub name: String,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl Section {
    pub fn new(name: impl Into<String>, checks: Vec<Check>) -> Self {
        Section {
            name: name.into(),
            passed: checks.iter().all(|c| c.passed),
            checks,
        }
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Parameters {
    pub n: usize,
    pub max_degree: i32,
    pub cutoff: Option<i32>,
    pub seed: u64,
    pub samples: usize,
    pub expr: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub checks: usize,
    pub passed: usize,
    pub failed: usize,
    pub ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema_version: &'static str,
    pub artifact_version: &'static str,
    pub command: String,
    pub parameters: Parameters,
    pub results: Vec<Section>,
    pub summary: Summary,
}

impl Report {
    pub fn new(command: impl Into<String>, parameters: Parameters, results: Vec<Section>) -> Self {
        let checks = results.iter().map(|s| s.checks.len()).sum();
        let passed = results
            .iter()
            .flat_map(|s| &s.checks)
            .filter(|c| c.passed)
            .count();
        Report {
            schema_version: SCHEMA_VERSION,
            artifact_version: env!("CARGO_PKG_VERSION"),
            command: command.into(),
            parameters,
            results,
            summary: Summary {
                checks,
                passed,
                failed: checks - passed,
                ok: passed == checks,
            },
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
