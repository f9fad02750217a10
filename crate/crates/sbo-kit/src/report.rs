//! Verification reports and their stable JSON form.

use serde::{Deserialize, Serialize};

/// One verified case: descriptor, status, canonical forms on failure and
/// wall-clock time.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CaseReport {
    pub suite: String,
    pub case: String,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<String>,
    pub millis: u128,
}

impl CaseReport {
    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

/// A full suite run: one top-level object, schema version "v1".
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteReport {
    pub version: String,
    pub suite: String,
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub cases: Vec<CaseReport>,
}

impl SuiteReport {
    pub fn new(suite: &str, cases: Vec<CaseReport>) -> Self {
        let passed = cases.iter().filter(|c| c.passed()).count();
        SuiteReport {
            version: "v1".to_string(),
            suite: suite.to_string(),
            total: cases.len(),
            passed,
            failed: cases.len() - passed,
            cases,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.failed == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Merge several suite runs into one report.
    pub fn merged(name: &str, parts: Vec<SuiteReport>) -> SuiteReport {
        let mut cases = Vec::new();
        for p in parts {
            cases.extend(p.cases);
        }
        SuiteReport::new(name, cases)
    }

    pub fn summary_line(&self) -> String {
        format!(
            "{}: {}/{} cases pass{}",
            self.suite,
            self.passed,
            self.total,
            if self.all_pass() { "" } else { " [FAIL]" }
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_schema_fields() {
        let report = SuiteReport::new(
            "demo",
            vec![CaseReport {
                suite: "demo".into(),
                case: "n=2".into(),
                status: "pass".into(),
                lhs: None,
                rhs: None,
                millis: 3,
            }],
        );
        let v: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(v["version"], "v1");
        assert_eq!(v["suite"], "demo");
        assert_eq!(v["total"], 1);
        let case = &v["cases"][0];
        for key in ["suite", "case", "status", "millis"] {
            assert!(case.get(key).is_some(), "missing {}", key);
        }
    }
}
