//! The seeded property suite over models and operations.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::models::{DomainModel, ModelSpec};
use crate::nagata::{content_bridge_suite, glue_suite, saturation_check};
use crate::ops::{catalogue, parse_op_with_cutoff, SemistarOperation, DEFAULT_CUTOFF};
use crate::report::CheckReport;

use super::record::{CheckRecord, Report};
use super::run::{suite_report, DEFAULT_SEED};

#[derive(Debug, Clone)]
pub struct SuiteOptions {
    pub models: Vec<ModelSpec>,
    /// Operation literals; the model's catalogue when empty. Literals that do
    /// not parse on a model are skipped for that model.
    pub ops: Vec<String>,
    pub n: usize,
    pub seed: u64,
    pub cutoff: usize,
    pub parallel: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            models: ModelSpec::catalogue(),
            ops: Vec::new(),
            n: 200,
            seed: DEFAULT_SEED,
            cutoff: DEFAULT_CUTOFF,
            parallel: true,
        }
    }
}

#[derive(Clone, Copy)]
enum Part {
    Laws,
    ContentBridge,
    Glue,
    Saturation,
}

impl Part {
    fn label(self) -> &'static str {
        match self {
            Part::Laws => "laws",
            Part::ContentBridge => "content-bridge",
            Part::Glue => "glue",
            Part::Saturation => "saturation",
        }
    }
}

fn operations(model: &DomainModel, options: &SuiteOptions) -> Vec<SemistarOperation> {
    let literals: Vec<String> = if options.ops.is_empty() {
        catalogue(model).iter().map(|op| op.name().to_string()).collect()
    } else {
        options.ops.clone()
    };
    let none = BTreeMap::new();
    literals
        .iter()
        .filter_map(|lit| parse_op_with_cutoff(model, lit, &none, options.cutoff).ok())
        .filter(|op| op.model() == model)
        .collect()
}

/// Runs the axioms and law suite for every (model, operation) pair, the
/// Nagata suites for finite-type operations, and the saturation check where
/// polynomial coefficients are actual elements. Records are sorted by name.
pub fn run_property_suite(options: &SuiteOptions) -> Result<Report> {
    if options.n == 0 {
        return Err(Error::Usage("n must be at least 1".into()));
    }
    if options.cutoff == 0 {
        return Err(Error::Usage("cutoff must be positive".into()));
    }
    let mut tasks = Vec::new();
    let mut used = vec![false; options.ops.len()];
    for spec in &options.models {
        let model = DomainModel::new(spec.clone())?;
        for op in operations(&model, options) {
            if let Some(k) = options.ops.iter().position(|l| l == op.name()) {
                used[k] = true;
            }
            tasks.push((op.clone(), Part::Laws));
            if op.flags().finite_type {
                tasks.push((op.clone(), Part::ContentBridge));
                tasks.push((op.clone(), Part::Glue));
            }
            if model.element_support() {
                tasks.push((op, Part::Saturation));
            }
        }
    }
    if let Some(k) = used.iter().position(|u| !u) {
        return Err(Error::Usage(format!("operation {:?} parses on none of the selected models", options.ops[k])));
    }
    let run = |(op, part): &(SemistarOperation, Part)| -> CheckRecord {
        let name = format!("{}/{}/{}", op.model().name(), op.name(), part.label());
        let mut inputs = BTreeMap::new();
        inputs.insert("op".to_string(), Value::from(op.name()));
        inputs.insert("n".to_string(), Value::from(options.n));
        let (n, seed) = (options.n, options.seed);
        let result: Result<CheckReport> = match part {
            Part::Laws => Ok(suite_report(op, n, seed)),
            Part::ContentBridge => content_bridge_suite(op, n, seed),
            Part::Glue => glue_suite(op, n, seed),
            Part::Saturation => saturation_check(op, n, seed),
        };
        match result {
            Ok(r) => CheckRecord::from_report(&name, inputs, r),
            Err(e) => CheckRecord::errored(&name, part.label(), &op.model().name(), inputs, e.to_string()),
        }
    };
    let mut records: Vec<CheckRecord> =
        if options.parallel { tasks.par_iter().map(run).collect() } else { tasks.iter().map(run).collect() };
    records.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(Report::new("property-suite", options.seed, options.cutoff, records))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(models: &[&str], ops: &[&str]) -> SuiteOptions {
        SuiteOptions {
            models: models.iter().map(|m| ModelSpec::parse(m).unwrap()).collect(),
            ops: ops.iter().map(|s| s.to_string()).collect(),
            n: 12,
            seed: 4,
            ..SuiteOptions::default()
        }
    }

    #[test]
    fn small_suite_passes_and_is_reproducible() {
        let opts = small(&["pid", "dvr"], &["d", "t"]);
        let a = run_property_suite(&opts).unwrap();
        assert!(a.passed(), "{}", a.to_json());
        let b = run_property_suite(&SuiteOptions { parallel: false, ..opts }).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert!(a.check("pid/t/saturation").is_some());
        assert!(a.check("dvr/t/glue").is_some());
    }

    #[test]
    fn bad_arguments() {
        assert!(run_property_suite(&SuiteOptions { n: 0, ..small(&["dvr"], &[]) }).is_err());
        assert!(run_property_suite(&small(&["dvr"], &["star{T=V@0}"])).is_err());
    }
}
