//! Machine-readable verification reports.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

/// Process exit codes.
pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Info,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Numeric {
    pub label: String,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub numeric: Vec<Numeric>,
}

impl Check {
    pub fn new(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            detail: detail.into(),
            numeric: Vec::new(),
        }
    }

    pub fn info(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            status: Status::Info,
            detail: detail.into(),
            numeric: Vec::new(),
        }
    }

    /// Attaches a labelled number. Non-finite values are stored as null-free
    /// sentinels so the report stays valid JSON.
    pub fn with(mut self, label: impl Into<String>, value: f64) -> Self {
        let value = if value.is_finite() {
            value
        } else {
            f64::MAX.copysign(value)
        };
        self.numeric.push(Numeric {
            label: label.into(),
            value,
        });
        self
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub schema_version: u32,
    pub suite: String,
    pub checks: Vec<Check>,
    pub meta: BTreeMap<String, serde_json::Value>,
}

impl SuiteReport {
    pub fn new(suite: impl Into<String>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            suite: suite.into(),
            checks: Vec::new(),
            meta: BTreeMap::new(),
        }
    }

    pub fn push(&mut self, check: Check) -> &mut Self {
        self.checks.push(check);
        self
    }

    pub fn check(&mut self, name: impl Into<String>, ok: bool, detail: impl Into<String>) -> &mut Self {
        self.push(Check::new(name, ok, detail))
    }

    pub fn info(&mut self, name: impl Into<String>, detail: impl Into<String>) -> &mut Self {
        self.push(Check::info(name, detail))
    }

    pub fn meta(&mut self, key: impl Into<String>, value: impl Into<serde_json::Value>) -> &mut Self {
        self.meta.insert(key.into(), value.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn find(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Folds another suite in, prefixing its check names and meta keys.
    pub fn absorb(&mut self, other: SuiteReport) {
        for mut c in other.checks {
            c.name = format!("{}/{}", other.suite, c.name);
            self.checks.push(c);
        }
        for (k, v) in other.meta {
            self.meta.insert(format!("{}.{}", other.suite, k), v);
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is serializable")
    }

    /// One line per failure plus a count line.
    pub fn exit_code(&self) -> u8 {
        if self.passed() {
            EXIT_PASS
        } else {
            EXIT_FAIL
        }
    }

    pub fn summary(&self) -> String {
        let mut out = String::new();
        for c in self.failures() {
            out.push_str(&format!("FAIL {}: {}\n", c.name, c.detail));
        }
        out.push_str(&format!(
            "{}: {} pass, {} fail, {} info\n",
            self.suite,
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Info)
        ));
        out
    }
}
