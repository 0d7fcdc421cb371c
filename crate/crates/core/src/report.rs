use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Outcome of a verification run: which check, with what parameters, and
/// every counterexample found (an empty list means the check passed).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub check: String,
    pub parameters: Value,
    /// Number of individual cases compared.
    pub cases: u64,
    pub failures: Vec<Value>,
    /// Informational remarks that are not failures.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    /// Wall-clock seconds; `None` when timing is suppressed for reproducible output.
    pub elapsed: Option<f64>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn without_timing(mut self) -> Self {
        self.elapsed = None;
        self
    }
}

pub(crate) struct ReportBuilder {
    check: String,
    parameters: Value,
    cases: u64,
    failures: Vec<Value>,
    notes: Vec<String>,
    start: Instant,
}

impl ReportBuilder {
    pub fn new(check: impl Into<String>, parameters: Value) -> Self {
        ReportBuilder {
            check: check.into(),
            parameters,
            cases: 0,
            failures: Vec::new(),
            notes: Vec::new(),
            start: Instant::now(),
        }
    }

    pub fn case(&mut self, ok: bool, witness: impl FnOnce() -> Value) {
        self.cases += 1;
        if !ok {
            self.failures.push(witness());
        }
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn finish(self) -> Report {
        Report {
            check: self.check,
            parameters: self.parameters,
            cases: self.cases,
            failures: self.failures,
            notes: self.notes,
            elapsed: Some(self.start.elapsed().as_secs_f64()),
        }
    }
}
