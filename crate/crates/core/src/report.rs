//! Structured results of single checks, serialized into the harness report.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::laws::{inconclusive, LawTally, Verdict};
use crate::models::Ideal;
use crate::ops::SemistarOperation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Pass,
    Fail,
    Inconclusive,
    /// The hypotheses of the checked statement do not hold for the subject.
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub model: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub op: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subject: Option<String>,
    pub verdict: Outcome,
    pub facts: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub witnesses: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub laws: Vec<LawTally>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(check: impl Into<String>, op: &SemistarOperation) -> Self {
        let mut r = Self::for_model(check, &op.model().name());
        r.op = Some(op.name().to_string());
        r
    }

    pub fn for_model(check: impl Into<String>, model: &str) -> Self {
        CheckReport {
            check: check.into(),
            model: model.to_string(),
            op: None,
            subject: None,
            verdict: Outcome::Pass,
            facts: BTreeMap::new(),
            witnesses: BTreeMap::new(),
            laws: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn with_subject(mut self, subject: &Ideal) -> Self {
        self.subject = Some(subject.to_string());
        self
    }

    pub fn fact(&mut self, name: &str, value: impl Into<Value>) {
        self.facts.insert(name.to_string(), value.into());
    }

    pub fn witness(&mut self, name: &str, value: impl ToString) {
        self.witnesses.insert(name.to_string(), value.to_string());
    }

    /// Records an asserted statement; a false assertion fails the report.
    pub fn require(&mut self, what: &str, holds: bool) {
        if !holds {
            self.verdict = Outcome::Fail;
            self.notes.push(format!("violated: {what}"));
        }
    }

    pub fn not_applicable(mut self, why: &str) -> Self {
        self.verdict = Outcome::NotApplicable;
        self.notes.push(why.to_string());
        self
    }

    pub fn push_law(&mut self, tally: LawTally) {
        if !tally.ok() {
            self.verdict = Outcome::Fail;
            self.notes.push(format!("law {} failed", tally.name));
        }
        self.laws.push(tally);
    }

    pub fn passed(&self) -> bool {
        matches!(self.verdict, Outcome::Pass)
    }

    /// Collapses the report into a single law verdict.
    pub fn verdict(&self) -> Result<Verdict> {
        match self.verdict {
            Outcome::Pass => Ok(Verdict::Pass),
            Outcome::Fail => Ok(Verdict::Fail),
            Outcome::NotApplicable => Ok(Verdict::Vacuous),
            Outcome::Inconclusive => Err(Error::SearchExhausted(self.notes.join("; "))),
        }
    }
}

/// Runs a check body, turning inconclusive errors into an inconclusive report.
pub fn settle(mut base: CheckReport, body: impl FnOnce(&mut CheckReport) -> Result<()>) -> Result<CheckReport> {
    match body(&mut base) {
        Ok(()) => Ok(base),
        Err(e) if inconclusive(&e) => {
            if base.verdict != Outcome::Fail {
                base.verdict = Outcome::Inconclusive;
            }
            base.notes.push(e.to_string());
            Ok(base)
        }
        Err(e) => Err(e),
    }
}
