//! Verdict reports emitted by every check.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Counterexamples kept verbatim in a report; the total is always in `stats`.
pub const MAX_COUNTEREXAMPLES: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    /// Passed, with annotated discrepancies against the printed source.
    Flagged,
    Fail,
}

impl Status {
    pub fn is_failure(self) -> bool {
        self == Status::Fail
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Flagged => "flagged",
            Status::Fail => "fail",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub check: String,
    pub params: BTreeMap<String, String>,
    pub status: Status,
    pub counterexamples: Vec<String>,
    pub notes: Vec<String>,
    pub stats: BTreeMap<String, String>,
}

impl VerdictReport {
    pub fn new(check: impl Into<String>) -> Self {
        VerdictReport {
            check: check.into(),
            params: BTreeMap::new(),
            status: Status::Pass,
            counterexamples: Vec::new(),
            notes: Vec::new(),
            stats: BTreeMap::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn set_param(&mut self, key: &str, value: impl ToString) {
        self.params.insert(key.to_string(), value.to_string());
    }

    /// Records a failing counterexample.
    pub fn fail(&mut self, counterexample: impl Into<String>) {
        self.status = Status::Fail;
        let failures = self.bump("failures");
        if failures <= MAX_COUNTEREXAMPLES {
            self.counterexamples.push(counterexample.into());
        }
    }

    /// Records a discrepancy with the printed source that does not fail the check.
    pub fn flag(&mut self, note: impl Into<String>) {
        if self.status == Status::Pass {
            self.status = Status::Flagged;
        }
        let note = note.into();
        if !self.notes.contains(&note) {
            self.notes.push(note);
        }
    }

    pub fn note(&mut self, note: impl Into<String>) {
        let note = note.into();
        if !self.notes.contains(&note) {
            self.notes.push(note);
        }
    }

    pub fn stat(&mut self, key: &str, value: impl ToString) {
        self.stats.insert(key.to_string(), value.to_string());
    }

    /// Increments an integer counter in `stats`, returning the new value.
    pub fn bump(&mut self, key: &str) -> usize {
        self.add_count(key, 1)
    }

    pub fn add_count(&mut self, key: &str, amount: usize) -> usize {
        let entry = self.stats.entry(key.to_string()).or_insert_with(|| "0".into());
        let value = entry.parse::<usize>().unwrap_or(0) + amount;
        *entry = value.to_string();
        value
    }

    pub fn count(&self, key: &str) -> usize {
        self.stats.get(key).and_then(|v| v.parse().ok()).unwrap_or(0)
    }

    pub fn passed(&self) -> bool {
        !self.status.is_failure()
    }

    /// Folds a sub-report into this one, prefixing its notes and counterexamples.
    pub fn absorb(&mut self, sub: VerdictReport) {
        let prefix = sub.check.clone();
        for cex in sub.counterexamples {
            self.status = Status::Fail;
            if self.counterexamples.len() < MAX_COUNTEREXAMPLES {
                self.counterexamples.push(format!("{prefix}: {cex}"));
            }
        }
        if sub.status == Status::Fail {
            self.status = Status::Fail;
        }
        if sub.status == Status::Flagged && self.status == Status::Pass {
            self.status = Status::Flagged;
        }
        for note in sub.notes {
            self.note(format!("{prefix}: {note}"));
        }
        for (key, value) in sub.stats {
            self.stats.insert(format!("{prefix}.{key}"), value);
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("[{}] {}\n", self.status, self.check);
        for (k, v) in &self.params {
            out.push_str(&format!("  param {k} = {v}\n"));
        }
        for (k, v) in &self.stats {
            out.push_str(&format!("  stat  {k} = {v}\n"));
        }
        for n in &self.notes {
            out.push_str(&format!("  note  {n}\n"));
        }
        for c in &self.counterexamples {
            out.push_str(&format!("  cex   {c}\n"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_transitions() {
        let mut r = VerdictReport::new("x");
        assert_eq!(r.status, Status::Pass);
        r.flag("typo");
        assert_eq!(r.status, Status::Flagged);
        r.fail("boom");
        assert_eq!(r.status, Status::Fail);
        r.flag("another");
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.count("failures"), 1);
    }

    #[test]
    fn counterexamples_are_capped() {
        let mut r = VerdictReport::new("x");
        for i in 0..50 {
            r.fail(format!("{i}"));
        }
        assert_eq!(r.counterexamples.len(), MAX_COUNTEREXAMPLES);
        assert_eq!(r.count("failures"), 50);
    }

    #[test]
    fn json_shape() {
        let r = VerdictReport::new("c").param("window", "-1..1");
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        for key in ["check", "params", "status", "counterexamples", "notes", "stats"] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert_eq!(v["status"], "pass");
    }

    #[test]
    fn json_matches_schema() {
        let schema: serde_json::Value = serde_json::from_str(include_str!("../schema/report.schema.json")).unwrap();
        let mut r = VerdictReport::new("c").param("window", "-1..1");
        r.stat("n", 3);
        r.note("a note");
        r.fail("cex");
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        let object = v.as_object().unwrap();
        let required: Vec<&str> = schema["required"].as_array().unwrap().iter().map(|k| k.as_str().unwrap()).collect();
        let mut keys: Vec<&str> = object.keys().map(String::as_str).collect();
        let mut expected = required.clone();
        keys.sort_unstable();
        expected.sort_unstable();
        assert_eq!(keys, expected);
        for (key, spec) in schema["properties"].as_object().unwrap() {
            let value = &object[key];
            match spec.get("type").and_then(|t| t.as_str()) {
                Some("string") => assert!(value.is_string(), "{key}"),
                Some("array") => assert!(value.as_array().unwrap().iter().all(|x| x.is_string()), "{key}"),
                Some("object") => assert!(value.as_object().unwrap().values().all(|x| x.is_string()), "{key}"),
                _ => assert!(spec["enum"].as_array().unwrap().contains(value), "{key}"),
            }
        }
        for status in [Status::Pass, Status::Flagged, Status::Fail] {
            assert!(schema["properties"]["status"]["enum"].as_array().unwrap().contains(&serde_json::to_value(status).unwrap()));
        }
    }
}
