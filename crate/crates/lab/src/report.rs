//! Run reports.

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CheckJson {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckJson {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> CheckJson {
        CheckJson {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

impl From<&alcove_core::geometry::Check> for CheckJson {
    fn from(c: &alcove_core::geometry::Check) -> Self {
        CheckJson::new(c.name, c.passed, c.detail.clone())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub version: String,
    pub inputs_hash: String,
    pub passed: bool,
    pub checks: Vec<CheckJson>,
    pub warnings: Vec<String>,
    pub outputs: Value,
}

impl RunReport {
    pub fn new(command: &str, inputs_hash: String, outputs: Value, checks: Vec<CheckJson>, warnings: Vec<String>) -> Self {
        RunReport {
            command: command.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            inputs_hash,
            passed: checks.iter().all(|c| c.passed),
            checks,
            warnings,
            outputs,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// SHA-256 of the arguments and the configuration text.
pub fn inputs_hash(args: &[String], config: Option<&str>) -> String {
    let mut h = Sha256::new();
    for a in args {
        h.update((a.len() as u64).to_le_bytes());
        h.update(a.as_bytes());
    }
    if let Some(c) = config {
        h.update(b"config");
        h.update(c.as_bytes());
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hash_depends_on_every_input() {
        let a = inputs_hash(&["x".into(), "y".into()], None);
        assert_eq!(a.len(), 64);
        assert_eq!(a, inputs_hash(&["x".into(), "y".into()], None));
        assert_ne!(a, inputs_hash(&["xy".into()], None));
        assert_ne!(a, inputs_hash(&["x".into(), "y".into()], Some("{}")));
    }
}
