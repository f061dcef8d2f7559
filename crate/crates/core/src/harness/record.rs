//! The JSON report written by every harness entry point.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::laws::LawTally;
use crate::report::{CheckReport, Outcome};

use super::scenario::SCHEMA_VERSION;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RecordVerdict {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CheckRecord {
    pub name: String,
    pub check: String,
    pub model: String,
    pub inputs: BTreeMap<String, Value>,
    pub verdict: RecordVerdict,
    /// Always present on failures.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub facts: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub witnesses: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub laws: Vec<LawTally>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CheckRecord {
    /// Converts a check report. A not-applicable report passes with a note.
    pub fn from_report(name: &str, inputs: BTreeMap<String, Value>, r: CheckReport) -> Self {
        let verdict = match r.verdict {
            Outcome::Pass | Outcome::NotApplicable => RecordVerdict::Pass,
            Outcome::Fail => RecordVerdict::Fail,
            Outcome::Inconclusive => RecordVerdict::Inconclusive,
        };
        let mut notes = r.notes;
        if r.verdict == Outcome::NotApplicable {
            notes.insert(0, "not applicable".into());
        }
        let mut record = CheckRecord {
            name: name.to_string(),
            check: r.check,
            model: r.model,
            inputs,
            verdict,
            witness: None,
            facts: r.facts,
            witnesses: r.witnesses,
            laws: r.laws,
            notes,
        };
        if let Some(s) = r.subject {
            record.inputs.entry("subject".into()).or_insert(s.into());
        }
        record.settle_witness();
        record
    }

    /// A check that raised an error before producing a report.
    pub fn errored(name: &str, check: &str, model: &str, inputs: BTreeMap<String, Value>, err: String) -> Self {
        CheckRecord {
            name: name.to_string(),
            check: check.to_string(),
            model: model.to_string(),
            inputs,
            verdict: RecordVerdict::Fail,
            witness: Some(format!("error: {err}")),
            facts: BTreeMap::new(),
            witnesses: BTreeMap::new(),
            laws: Vec::new(),
            notes: vec![err],
        }
    }

    pub fn fail(&mut self, why: String) {
        if self.verdict != RecordVerdict::Fail {
            self.verdict = RecordVerdict::Fail;
            self.witness = None;
        }
        if self.witness.is_none() {
            self.witness = Some(why.clone());
        }
        self.notes.push(why);
    }

    /// Picks a witness for a failing record: a failing law's counterexample,
    /// else a named witness, else the violation notes.
    fn settle_witness(&mut self) {
        if self.verdict != RecordVerdict::Fail || self.witness.is_some() {
            return;
        }
        let from_laws = self.laws.iter().find(|l| !l.ok()).and_then(|l| {
            l.witness.as_ref().map(|w| format!("{}: {w}", l.name))
        });
        let from_witnesses = || self.witnesses.iter().next().map(|(k, v)| format!("{k} = {v}"));
        let from_notes = || Some(self.notes.join("; ")).filter(|s| !s.is_empty());
        self.witness = from_laws
            .or_else(from_witnesses)
            .or_else(from_notes)
            .or_else(|| Some("unspecified failure".into()));
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Report {
    pub schema_version: u32,
    pub name: String,
    pub seed: u64,
    pub cutoff: usize,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

impl Report {
    pub fn new(name: impl Into<String>, seed: u64, cutoff: usize, checks: Vec<CheckRecord>) -> Self {
        let mut summary = Summary::default();
        for c in &checks {
            match c.verdict {
                RecordVerdict::Pass => summary.pass += 1,
                RecordVerdict::Fail => summary.fail += 1,
                RecordVerdict::Inconclusive => summary.inconclusive += 1,
            }
        }
        Report { schema_version: SCHEMA_VERSION, name: name.into(), seed, cutoff, checks, summary }
    }

    /// Concatenates reports, prefixing each check name with its report name.
    pub fn merge(name: impl Into<String>, seed: u64, cutoff: usize, parts: Vec<Report>) -> Self {
        let checks = parts
            .into_iter()
            .flat_map(|p| {
                let prefix = p.name;
                p.checks.into_iter().map(move |mut c| {
                    c.name = format!("{prefix}/{}", c.name);
                    c
                })
            })
            .collect();
        Report::new(name, seed, cutoff, checks)
    }

    pub fn passed(&self) -> bool {
        self.summary.fail == 0 && self.summary.inconclusive == 0
    }

    /// 0 when everything passed, 1 on any failure, 2 when the only problems
    /// are inconclusive checks.
    pub fn exit_code(&self) -> i32 {
        if self.summary.fail > 0 {
            1
        } else if self.summary.inconclusive > 0 {
            2
        } else {
            0
        }
    }

    pub fn check(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}
