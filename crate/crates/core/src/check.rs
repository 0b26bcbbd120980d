use std::fmt;

use serde::Serialize;

/// One named check with an optional pair of compared values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckItem {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<String>,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl CheckItem {
    pub fn flag(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        CheckItem {
            name: name.into(),
            passed,
            lhs: None,
            rhs: None,
            detail: detail.into(),
        }
    }

    /// Records an identity `lhs == rhs`.
    pub fn identity<T: PartialEq + fmt::Display>(name: impl Into<String>, lhs: T, rhs: T) -> Self {
        CheckItem {
            name: name.into(),
            passed: lhs == rhs,
            lhs: Some(lhs.to_string()),
            rhs: Some(rhs.to_string()),
            detail: String::new(),
        }
    }
}

/// A list of checks whose verdict is their conjunction.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub items: Vec<CheckItem>,
}

impl CheckResult {
    pub fn push(&mut self, item: CheckItem) {
        self.items.push(item);
    }

    pub fn passed(&self) -> bool {
        self.items.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckItem> {
        self.items.iter().filter(|c| !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&CheckItem> {
        self.items.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.items {
            write!(f, "{:<4} {}", if c.passed { "ok" } else { "FAIL" }, c.name)?;
            if let (Some(l), Some(r)) = (&c.lhs, &c.rhs) {
                write!(f, ": {l} {} {r}", if c.passed { "==" } else { "!=" })?;
            }
            if !c.detail.is_empty() {
                write!(f, " ({})", c.detail)?;
            }
            writeln!(f)?;
        }
        write!(
            f,
            "verdict: {}",
            if self.passed() { "pass" } else { "fail" }
        )
    }
}
