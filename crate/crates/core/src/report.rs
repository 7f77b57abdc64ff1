//! Verification results.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::coeff::Ring;
use crate::matrix::NonzeroEntry;
use crate::multivector::TermJson;

/// Evidence attached to a failed (or notable) check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub what: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entry: Option<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub term: Option<TermJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trial: Option<usize>,
}

impl Witness {
    pub fn message(what: impl Into<String>) -> Witness {
        Witness {
            what: what.into(),
            entry: None,
            term: None,
            trial: None,
        }
    }

    pub fn nonzero(what: impl Into<String>, e: &NonzeroEntry) -> Witness {
        Witness {
            what: what.into(),
            entry: Some([e.row, e.col]),
            term: Some(TermJson {
                blade: e.blade.indices().collect(),
                coeff: e.coeff.to_string(),
            }),
            trial: None,
        }
    }

    pub fn trial(what: impl Into<String>, trial: usize) -> Witness {
        Witness {
            trial: Some(trial),
            ..Witness::message(what)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub n: usize,
    pub ring: Ring,
    pub params: BTreeMap<String, Value>,
    pub pass: bool,
    pub witness: Option<Witness>,
    pub elapsed_ms: u64,
    /// Largest multivector term count seen during the check.
    pub max_terms: usize,
    pub stats: BTreeMap<String, Value>,
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(check: &str, n: usize, ring: Ring) -> CheckReport {
        CheckReport {
            check: check.to_string(),
            n,
            ring,
            params: BTreeMap::new(),
            pass: false,
            witness: None,
            elapsed_ms: 0,
            max_terms: 0,
            stats: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> CheckReport {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn stat(&mut self, key: &str, value: impl Into<Value>) {
        self.stats.insert(key.to_string(), value.into());
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn observe_terms(&mut self, terms: usize) {
        self.max_terms = self.max_terms.max(terms);
    }

    /// Sets the verdict. A failing report always carries a witness.
    pub fn finish(mut self, pass: bool, witness: Option<Witness>, started: Instant) -> CheckReport {
        self.pass = pass;
        self.witness = match (pass, witness) {
            (false, None) => Some(Witness::message(format!("{} failed", self.check))),
            (_, w) => w,
        };
        self.elapsed_ms = started.elapsed().as_millis() as u64;
        self
    }

    /// A failed report for a check that aborted with an error.
    pub fn errored(self, err: &crate::Error, started: Instant) -> CheckReport {
        let w = Witness::message(format!("error: {err}"));
        self.finish(false, Some(w), started)
    }

    /// JSON object with sorted keys. Timing is wall-clock dependent, so it is
    /// only included on request.
    pub fn to_json(&self, timings: bool) -> Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if !timings {
            v.as_object_mut().unwrap().remove("elapsed_ms");
        }
        v
    }
}

/// Pretty-printed JSON array for a batch of reports.
pub fn reports_to_json(reports: &[CheckReport], timings: bool) -> String {
    let arr = Value::Array(reports.iter().map(|r| r.to_json(timings)).collect());
    serde_json::to_string_pretty(&arr).expect("json")
}
