//! Run reports: what a command did and which checks passed.

use std::fmt::Write as _;
use std::time::Duration;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skip,
}

/// The offending entry of a failed check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub kind: String,
    pub d: u32,
    pub n: usize,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Check {
    pub fn pass(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            status: CheckStatus::Pass,
            detail: detail.into(),
            witness: None,
        }
    }

    pub fn fail(name: impl Into<String>, detail: impl Into<String>, witness: Witness) -> Self {
        Self {
            name: name.into(),
            status: CheckStatus::Fail,
            detail: detail.into(),
            witness: Some(witness),
        }
    }

    pub fn skip(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            status: CheckStatus::Skip,
            detail: detail.into(),
            witness: None,
        }
    }

    /// Pass when `expected == actual`, otherwise fail with both values.
    pub fn compare(name: impl Into<String>, kind: &str, d: u32, n: usize, expected: String, actual: String) -> Self {
        let detail = format!("{expected} = {actual}");
        if expected == actual {
            Self::pass(name, detail)
        } else {
            Self::fail(
                name,
                format!("{expected} != {actual}"),
                Witness {
                    kind: kind.to_string(),
                    d,
                    n,
                    expected,
                    actual,
                },
            )
        }
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct RunReport {
    pub command: String,
    /// Free-form body: series, tables, per-item output.
    pub lines: Vec<String>,
    pub warnings: Vec<String>,
    pub checks: Vec<Check>,
    pub cache_hits: usize,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl RunReport {
    pub fn new(command: impl Into<String>) -> Self {
        Self {
            command: command.into(),
            ..Self::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    /// Machine-readable form. Timing is left out so identical runs give
    /// identical bytes.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises") + "\n"
    }

    /// Human-readable form; elapsed time only in the last line.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "$ magicount {}", self.command).unwrap();
        for line in &self.lines {
            writeln!(out, "{line}").unwrap();
        }
        for warning in &self.warnings {
            writeln!(out, "warning: {warning}").unwrap();
        }
        for check in &self.checks {
            let tag = match check.status {
                CheckStatus::Pass => "PASS",
                CheckStatus::Fail => "FAIL",
                CheckStatus::Skip => "SKIP",
            };
            writeln!(out, "[{tag}] {}: {}", check.name, check.detail).unwrap();
            if let Some(w) = &check.witness {
                writeln!(
                    out,
                    "       at {}(d={}, n={}): expected {}, got {}",
                    w.kind, w.d, w.n, w.expected, w.actual
                )
                .unwrap();
            }
        }
        let failed = self.checks.iter().filter(|c| c.status == CheckStatus::Fail).count();
        writeln!(
            out,
            "-- {} checks, {} failed, {} cache hits, elapsed {:.3} s",
            self.checks.len(),
            failed,
            self.cache_hits,
            self.elapsed.as_secs_f64()
        )
        .unwrap();
        out
    }
}
