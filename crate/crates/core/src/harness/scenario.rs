//! Scenario files: a model, named operations, ideal and polynomial literals,
//! and an ordered list of checks with expected facts.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::models::ModelSpec;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Scenario {
    pub schema_version: u32,
    pub name: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub description: String,
    pub model: ModelSpec,
    /// Evaluated in order, so later literals may refer to earlier names.
    #[serde(default)]
    pub ops: Vec<OpDecl>,
    #[serde(default)]
    pub ideals: BTreeMap<String, String>,
    #[serde(default)]
    pub polynomials: BTreeMap<String, String>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub cutoff: Option<usize>,
    #[serde(default)]
    pub checks: Vec<CheckSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OpDecl {
    pub name: String,
    pub op: String,
}

/// Which group a `group` check inspects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CarrierName {
    Inv,
    Qinv,
}

fn default_n() -> usize {
    200
}

fn default_small_n() -> usize {
    50
}

/// One check and its parameters. Operation, ideal and polynomial fields hold
/// either a name declared in the scenario or a literal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "check", rename_all = "kebab-case", rename_all_fields = "camelCase", deny_unknown_fields)]
pub enum CheckKind {
    Closure { op: String, ideal: String },
    Colon { left: String, right: String },
    Product { left: String, right: String, #[serde(default)] op: Option<String> },
    Intersection { left: String, right: String },
    Invertible { op: String, ideal: String },
    Quasi { op: String, ideal: String },
    Spectrum { op: String },
    HDomain { op: String, #[serde(default = "default_small_n")] n: usize },
    Group { op: String, carrier: CarrierName, #[serde(default = "default_n")] n: usize },
    Localization { op: String, ideal: String },
    Nagata { op: String, ideal: String },
    Content { polynomial: String, #[serde(default)] op: Option<String> },
    ContentBridge { op: String, polynomial: String },
    Glue { op: String, generators: Vec<String> },
    Agree { op: String, other: String, #[serde(default = "default_n")] n: usize },
    Leq { op: String, other: String, #[serde(default = "default_n")] n: usize },
    PrincipalInvertibles { op: String, #[serde(default = "default_n")] n: usize },
    Saturation { op: String, #[serde(default = "default_n")] n: usize },
    Suite { op: String, #[serde(default = "default_n")] n: usize },
}

impl CheckKind {
    pub fn label(&self) -> &'static str {
        match self {
            CheckKind::Closure { .. } => "closure",
            CheckKind::Colon { .. } => "colon",
            CheckKind::Product { .. } => "product",
            CheckKind::Intersection { .. } => "intersection",
            CheckKind::Invertible { .. } => "invertible",
            CheckKind::Quasi { .. } => "quasi",
            CheckKind::Spectrum { .. } => "spectrum",
            CheckKind::HDomain { .. } => "h-domain",
            CheckKind::Group { .. } => "group",
            CheckKind::Localization { .. } => "localization",
            CheckKind::Nagata { .. } => "nagata",
            CheckKind::Content { .. } => "content",
            CheckKind::ContentBridge { .. } => "content-bridge",
            CheckKind::Glue { .. } => "glue",
            CheckKind::Agree { .. } => "agree",
            CheckKind::Leq { .. } => "leq",
            CheckKind::PrincipalInvertibles { .. } => "principal-invertibles",
            CheckKind::Saturation { .. } => "saturation",
            CheckKind::Suite { .. } => "suite",
        }
    }

    pub fn op_refs(&self) -> Vec<&str> {
        use CheckKind::*;
        match self {
            Closure { op, .. } | Invertible { op, .. } | Quasi { op, .. } | Spectrum { op } | HDomain { op, .. }
            | Group { op, .. } | Localization { op, .. } | Nagata { op, .. } | ContentBridge { op, .. }
            | Glue { op, .. } | PrincipalInvertibles { op, .. } | Saturation { op, .. } | Suite { op, .. } => {
                vec![op]
            }
            Agree { op, other, .. } | Leq { op, other, .. } => vec![op, other],
            Product { op, .. } | Content { op, .. } => op.iter().map(String::as_str).collect(),
            Colon { .. } | Intersection { .. } => vec![],
        }
    }

    pub fn ideal_refs(&self) -> Vec<&str> {
        use CheckKind::*;
        match self {
            Closure { ideal, .. } | Invertible { ideal, .. } | Quasi { ideal, .. } | Localization { ideal, .. }
            | Nagata { ideal, .. } => vec![ideal],
            Colon { left, right } | Product { left, right, .. } | Intersection { left, right } => vec![left, right],
            _ => vec![],
        }
    }

    pub fn polynomial_refs(&self) -> Vec<&str> {
        match self {
            CheckKind::Content { polynomial, .. } | CheckKind::ContentBridge { polynomial, .. } => vec![polynomial],
            CheckKind::Glue { generators, .. } => generators.iter().map(String::as_str).collect(),
            _ => vec![],
        }
    }

    /// Sample count, for checks that sample.
    pub fn samples(&self) -> Option<usize> {
        use CheckKind::*;
        match self {
            HDomain { n, .. } | Group { n, .. } | Agree { n, .. } | Leq { n, .. } | PrincipalInvertibles { n, .. }
            | Saturation { n, .. } | Suite { n, .. } => Some(*n),
            _ => None,
        }
    }
}

/// A named check with the facts and witnesses it is expected to report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Map<String, Value>", into = "Map<String, Value>")]
pub struct CheckSpec {
    pub name: String,
    pub kind: CheckKind,
    pub expect: BTreeMap<String, Value>,
    pub expect_witnesses: BTreeMap<String, String>,
}

impl TryFrom<Map<String, Value>> for CheckSpec {
    type Error = String;

    fn try_from(mut map: Map<String, Value>) -> std::result::Result<Self, String> {
        let name = match map.remove("name") {
            Some(Value::String(s)) => s,
            Some(_) => return Err("check name must be a string".into()),
            None => return Err("check without a name".into()),
        };
        let expect = match map.remove("expect") {
            Some(v) => serde_json::from_value(v).map_err(|e| format!("check {name:?}: expect: {e}"))?,
            None => BTreeMap::new(),
        };
        let expect_witnesses = match map.remove("expectWitnesses") {
            Some(v) => serde_json::from_value(v).map_err(|e| format!("check {name:?}: expectWitnesses: {e}"))?,
            None => BTreeMap::new(),
        };
        let kind = serde_json::from_value(Value::Object(map)).map_err(|e| format!("check {name:?}: {e}"))?;
        Ok(CheckSpec { name, kind, expect, expect_witnesses })
    }
}

impl From<CheckSpec> for Map<String, Value> {
    fn from(spec: CheckSpec) -> Self {
        let mut map = match serde_json::to_value(&spec.kind).expect("check kinds serialize") {
            Value::Object(m) => m,
            _ => unreachable!("internally tagged enums serialize to objects"),
        };
        map.insert("name".into(), spec.name.into());
        if !spec.expect.is_empty() {
            map.insert("expect".into(), serde_json::to_value(spec.expect).expect("values serialize"));
        }
        if !spec.expect_witnesses.is_empty() {
            map.insert("expectWitnesses".into(), serde_json::to_value(spec.expect_witnesses).expect("strings serialize"));
        }
        map
    }
}

impl Scenario {
    /// Parses scenario JSON. Unknown check names and fields are rejected here,
    /// before anything is executed.
    pub fn from_json(src: &str) -> Result<Self> {
        let scenario: Scenario = serde_json::from_str(src)
            .map_err(|e| Error::Scenario { line: e.line(), column: e.column(), message: e.to_string() })?;
        if scenario.schema_version != SCHEMA_VERSION {
            return Err(Error::Scenario {
                line: 1,
                column: 1,
                message: format!("unsupported schemaVersion {}", scenario.schema_version),
            });
        }
        Ok(scenario)
    }

    pub fn from_path(path: &std::path::Path) -> Result<Self> {
        let src = std::fs::read_to_string(path).map_err(|e| Error::Usage(format!("{}: {e}", path.display())))?;
        Self::from_json(&src)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{"schemaVersion": 1, "name": "m", "model": {"kind": "dvr"}}"#;

    #[test]
    fn minimal_scenario() {
        let s = Scenario::from_json(MINIMAL).unwrap();
        assert!(s.checks.is_empty() && s.ops.is_empty());
        assert_eq!(s.model, ModelSpec::Dvr);
    }

    #[test]
    fn checks_round_trip() {
        let src = r#"{"schemaVersion": 1, "name": "r", "model": {"kind": "semigroup", "generators": [3,4,5]},
            "checks": [
              {"name": "a", "check": "closure", "op": "v", "ideal": "Id{3,4,5}", "expect": {"closed": true}},
              {"name": "b", "check": "agree", "op": "w", "other": "d", "n": 20},
              {"name": "c", "check": "group", "op": "v", "carrier": "qinv"}
            ]}"#;
        let s = Scenario::from_json(src).unwrap();
        assert_eq!(s.checks[1].kind, CheckKind::Agree { op: "w".into(), other: "d".into(), n: 20 });
        assert_eq!(s.checks[2].kind.samples(), Some(200));
        let back = Scenario::from_json(&serde_json::to_string(&s).unwrap()).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn unknown_checks_and_fields_are_rejected() {
        let bad = r#"{"schemaVersion": 1, "name": "x", "model": {"kind": "dvr"},
            "checks": [{"name": "a", "check": "closur", "op": "v", "ideal": "V@1"}]}"#;
        let err = Scenario::from_json(bad).unwrap_err();
        assert!(matches!(err, Error::Scenario { line: 2, .. }), "{err}");
        let bad = r#"{"schemaVersion": 1, "name": "x", "model": {"kind": "dvr"},
            "checks": [{"name": "a", "check": "closure", "op": "v", "idael": "V@1"}]}"#;
        assert!(Scenario::from_json(bad).is_err());
        let bad = r#"{"schemaVersion": 2, "name": "x", "model": {"kind": "dvr"}}"#;
        assert!(Scenario::from_json(bad).is_err());
    }
}
