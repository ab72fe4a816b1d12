//! Verification outcomes and their JSON/CSV serializations.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One failing case: the index of the offending element and a description.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub element: u64,
    pub witness: String,
}

/// Outcome of an exhaustive check. Passes iff `failures` is empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub model: String,
    pub check: String,
    pub total: u64,
    pub failures: Vec<Failure>,
    pub elapsed_ms: u64,
}

#[derive(Serialize)]
struct CsvRow<'a> {
    record: &'a str,
    model: &'a str,
    check: &'a str,
    element: Option<u64>,
    witness: &'a str,
    total: Option<u64>,
    elapsed_ms: Option<u64>,
}

impl CheckReport {
    pub fn new(model: impl Into<String>, check: impl Into<String>) -> Self {
        CheckReport { model: model.into(), check: check.into(), total: 0, failures: Vec::new(), elapsed_ms: 0 }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn fail(&mut self, element: u64, witness: impl Into<String>) {
        self.failures.push(Failure { element, witness: witness.into() });
    }

    /// Appends another report's cases, keeping failures sorted by element.
    pub fn absorb(&mut self, other: CheckReport) {
        self.total += other.total;
        self.failures.extend(other.failures);
        self.failures.sort_by_key(|f| f.element);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    /// One row per failure followed by a summary row.
    pub fn to_csv(&self) -> String {
        let mut writer = csv::Writer::from_writer(Vec::new());
        for f in &self.failures {
            writer
                .serialize(CsvRow {
                    record: "failure",
                    model: &self.model,
                    check: &self.check,
                    element: Some(f.element),
                    witness: &f.witness,
                    total: None,
                    elapsed_ms: None,
                })
                .expect("in-memory write");
        }
        writer
            .serialize(CsvRow {
                record: "summary",
                model: &self.model,
                check: &self.check,
                element: None,
                witness: if self.passed() { "pass" } else { "fail" },
                total: Some(self.total),
                elapsed_ms: Some(self.elapsed_ms),
            })
            .expect("in-memory write");
        String::from_utf8(writer.into_inner().expect("flush")).expect("utf-8")
    }
}

/// Runs `body` on a fresh report and records the wall time.
pub fn timed(model: &str, check: &str, body: impl FnOnce(&mut CheckReport) -> Result<()>) -> Result<CheckReport> {
    let start = Instant::now();
    let mut report = CheckReport::new(model, check);
    body(&mut report)?;
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

/// Checks the given elements in parallel. `check_one` returns a witness for
/// each failing element; failures come out ordered by element.
pub fn scan<I>(model: &str, check: &str, elements: I, check_one: impl Fn(usize) -> Option<String> + Sync) -> CheckReport
where
    I: IntoParallelIterator<Item = usize>,
    I::Iter: IndexedParallelIterator,
{
    let start = Instant::now();
    let mut report = CheckReport::new(model, check);
    let elements = elements.into_par_iter();
    report.total = elements.len() as u64;
    report.failures = elements
        .filter_map(|i| check_one(i).map(|witness| Failure { element: i as u64, witness }))
        .collect();
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    report
}
