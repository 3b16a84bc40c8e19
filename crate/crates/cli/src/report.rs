//! Machine-readable verification reports.
//!
//! Every suite produces a [`VerifyReport`]: an ordered list of cases, each
//! carrying a stable id, a one-line statement of the claim being checked,
//! the comparison mode, the worst observed error, and a pass flag. The
//! summary counts are derived from the case list, never stored separately,
//! so they cannot drift out of sync.

use serde::Serialize;

/// One verified claim.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyCase {
    /// Stable identifier, `suite/short-name`; reports sort by it.
    pub id: String,
    /// What is being asserted, in one sentence.
    pub claim: String,
    /// Comparison mode: `exact`, `phase`, or `sign`.
    pub mode: String,
    /// Worst observed deviation for this case.
    pub max_error: f64,
    pub pass: bool,
}

impl VerifyCase {
    pub fn new(
        id: impl Into<String>,
        claim: impl Into<String>,
        mode: &str,
        max_error: f64,
        pass: bool,
    ) -> Self {
        VerifyCase {
            id: id.into(),
            claim: claim.into(),
            mode: mode.to_string(),
            max_error,
            pass,
        }
    }
}

/// A whole suite's outcome.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub tol: f64,
    pub seed: u64,
    pub cases: Vec<VerifyCase>,
    pub passed: usize,
    pub failed: usize,
}

impl VerifyReport {
    /// Assembles a report: cases are sorted by id for deterministic output
    /// and the summary counts are computed from the list.
    pub fn new(suite: &str, tol: f64, seed: u64, mut cases: Vec<VerifyCase>) -> Self {
        cases.sort_by(|a, b| a.id.cmp(&b.id));
        let passed = cases.iter().filter(|c| c.pass).count();
        let failed = cases.len() - passed;
        VerifyReport {
            suite: suite.to_string(),
            tol,
            seed,
            cases,
            passed,
            failed,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.failed == 0
    }

    /// Human-readable rendering, one line per case plus a summary.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("suite {} (tol {:e})\n", self.suite, self.tol));
        for c in &self.cases {
            out.push_str(&format!(
                "  {} {:5} {} — {} (err {:.3e})\n",
                if c.pass { "PASS" } else { "FAIL" },
                c.mode,
                c.id,
                c.claim,
                c.max_error
            ));
        }
        out.push_str(&format!(
            "  {} passed, {} failed, {} total\n",
            self.passed,
            self.failed,
            self.cases.len()
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_follow_the_case_list() {
        let report = VerifyReport::new(
            "demo",
            1e-10,
            0,
            vec![
                VerifyCase::new("demo/b", "second", "exact", 0.0, true),
                VerifyCase::new("demo/a", "first", "sign", 2.0, false),
            ],
        );
        assert_eq!(report.passed, 1);
        assert_eq!(report.failed, 1);
        assert!(!report.all_pass());
        // Sorted by id.
        assert_eq!(report.cases[0].id, "demo/a");
        let text = report.render_text();
        assert!(text.contains("FAIL"));
        assert!(text.contains("1 passed, 1 failed, 2 total"));
    }
}
