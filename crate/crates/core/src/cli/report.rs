use std::fmt::{self, Display};

use serde::{Serialize, Serializer};
use serde_json::Value;

/// Serializes a field through its `Display` impl.
pub fn serialize_display<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: Value,
    pub actual: Value,
    pub pass: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, expected: impl Serialize, actual: impl Serialize) -> Self {
        let expected = serde_json::to_value(expected).expect("check values serialize");
        let actual = serde_json::to_value(actual).expect("check values serialize");
        Check {
            name: name.into(),
            pass: expected == actual,
            expected,
            actual,
        }
    }

    /// A boolean check expected to hold.
    pub fn holds(name: impl Into<String>, actual: bool) -> Self {
        Self::new(name, true, actual)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Inputs {
    pub r: Option<usize>,
    pub seed: Option<u64>,
    pub config: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Inputs,
    pub checks: Vec<Check>,
    /// Wall-clock time; the only field that varies between identical runs.
    pub timing_ms: u128,
}

impl RunReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

fn show(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Table form without the timing field.
impl Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.command)?;
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            let status = if c.pass { "PASS" } else { "FAIL" };
            write!(f, "{status}  {:<width$}  expected {}", c.name, show(&c.expected))?;
            if c.pass {
                writeln!(f)?;
            } else {
                writeln!(f, ", got {}", show(&c.actual))?;
            }
        }
        let failed = self.failures().count();
        write!(f, "{} checks, {} failed", self.checks.len(), failed)
    }
}
