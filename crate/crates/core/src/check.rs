//! Outcome records for the verification suites.

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub suite: String,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(suite: &str, name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check { suite: suite.to_string(), name: name.into(), passed, detail: detail.into() }
    }

    pub fn pass(suite: &str, name: impl Into<String>) -> Self {
        Self::new(suite, name, true, "")
    }
}

/// Collapses a list of (label, ok) results into one check.
pub fn summarize(suite: &str, name: &str, results: impl IntoIterator<Item = (String, bool)>) -> Check {
    let mut total = 0;
    let mut failed = Vec::new();
    for (label, ok) in results {
        total += 1;
        if !ok {
            failed.push(label);
        }
    }
    let detail = if failed.is_empty() {
        format!("{total} cases")
    } else {
        let shown: Vec<_> = failed.iter().take(5).cloned().collect();
        format!("{} of {total} failed: {}", failed.len(), shown.join("; "))
    };
    Check::new(suite, name, failed.is_empty(), detail)
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}
