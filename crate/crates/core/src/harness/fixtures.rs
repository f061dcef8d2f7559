//! Worked examples shipped with the crate as scenario files.

use crate::error::{Error, Result};
use crate::ops::DEFAULT_CUTOFF;

use super::record::Report;
use super::run::{run_scenario, RunOptions, DEFAULT_SEED};
use super::scenario::Scenario;

const FIXTURES: &[(&str, &str)] = &[
    ("semigroup-maximal", include_str!("../../fixtures/semigroup-maximal.json")),
    ("pvd-overring", include_str!("../../fixtures/pvd-overring.json")),
    ("rank2-prime", include_str!("../../fixtures/rank2-prime.json")),
    ("staircase-maximal", include_str!("../../fixtures/staircase-maximal.json")),
    ("dense-maximal", include_str!("../../fixtures/dense-maximal.json")),
    ("pvd-groups", include_str!("../../fixtures/pvd-groups.json")),
];

pub fn fixture_names() -> Vec<&'static str> {
    FIXTURES.iter().map(|(n, _)| *n).collect()
}

pub fn fixture(name: &str) -> Result<Scenario> {
    let (_, src) = FIXTURES
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::Usage(format!("unknown fixture {name:?}; known: {}", fixture_names().join(", "))))?;
    Scenario::from_json(src)
}

/// Runs the selected fixtures (all when `only` is empty) into one report
/// whose check names are prefixed with the fixture name.
pub fn run_fixtures(only: &[String], options: RunOptions) -> Result<Report> {
    let names: Vec<&str> = if only.is_empty() { fixture_names() } else { only.iter().map(String::as_str).collect() };
    let scenarios = names.iter().map(|n| fixture(n)).collect::<Result<Vec<_>>>()?;
    let parts = scenarios.into_iter().map(|s| run_scenario(s, options)).collect::<Result<Vec<_>>>()?;
    let seed = options.seed.unwrap_or(DEFAULT_SEED);
    Ok(Report::merge("fixtures", seed, options.cutoff.unwrap_or(DEFAULT_CUTOFF), parts))
}
