//! Structured verification reports: named checks with expected/actual values
//! and a four-state status, serializable for the CLI front end.

use std::fmt::Display;

use serde::{Deserialize, Serialize};

/// Outcome of a single named check.
///
/// `PaperEstablished` marks facts established by external arguments (geometry,
/// period computations, classification tables) that the toolkit records but
/// does not re-derive; it counts as non-failing so the suite stays honest
/// about what is machine-verified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    Pass,
    Fail,
    NotApplicable,
    PaperEstablished,
}

impl Display for CheckStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::NotApplicable => "not-applicable",
            CheckStatus::PaperEstablished => "paper-established",
        };
        f.write_str(s)
    }
}

/// One verified statement: a stable name, a self-describing citation of the
/// mathematical fact being checked, and the expected/actual values compared.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub citation: String,
    pub expected: String,
    pub actual: String,
    pub status: CheckStatus,
}

/// A batch of checks for one parameter value `k` (and optionally one node
/// index `t`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub k: i64,
    pub t: Option<usize>,
    pub checks: Vec<Check>,
    pub runtime_ms: u64,
    pub version: String,
}

impl VerificationReport {
    pub fn new(k: i64, t: Option<usize>) -> Self {
        VerificationReport {
            k,
            t,
            checks: Vec::new(),
            runtime_ms: 0,
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    /// Record a check that passes iff the rendered expected and actual values
    /// agree exactly. Returns whether it passed.
    pub fn check<E: Display, A: Display>(
        &mut self,
        name: &str,
        citation: &str,
        expected: E,
        actual: A,
    ) -> bool {
        let expected = expected.to_string();
        let actual = actual.to_string();
        let status = if expected == actual {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        };
        self.checks.push(Check {
            name: name.to_string(),
            citation: citation.to_string(),
            expected,
            actual,
            status,
        });
        status == CheckStatus::Pass
    }

    /// Record a boolean condition as a true/false check.
    pub fn check_bool(&mut self, name: &str, citation: &str, condition: bool) -> bool {
        self.check(name, citation, true, condition)
    }

    /// Record a check with an explicit status (`NotApplicable`,
    /// `PaperEstablished`, or a forced pass/fail).
    pub fn note<E: Display, A: Display>(
        &mut self,
        name: &str,
        citation: &str,
        expected: E,
        actual: A,
        status: CheckStatus,
    ) {
        self.checks.push(Check {
            name: name.to_string(),
            citation: citation.to_string(),
            expected: expected.to_string(),
            actual: actual.to_string(),
            status,
        });
    }

    /// True when no check failed (`NotApplicable` and `PaperEstablished` do
    /// not count as failures).
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    /// Append all checks of `other`, prefixing their names with `prefix.`.
    pub fn absorb(&mut self, prefix: &str, other: VerificationReport) {
        for mut check in other.checks {
            if !prefix.is_empty() {
                check.name = format!("{prefix}.{}", check.name);
            }
            self.checks.push(check);
        }
    }

    pub fn failed_checks(&self) -> Vec<&Check> {
        self.checks
            .iter()
            .filter(|c| c.status == CheckStatus::Fail)
            .collect()
    }
}

/// Render a slice of displayable values as `(a, b, c)`.
pub fn format_tuple<T: Display>(items: &[T]) -> String {
    let body = items
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(", ");
    format!("({body})")
}
