//! Scenario files, the built-in fixtures, the property suite and the JSON
//! report they all produce.

pub mod fixtures;
pub mod record;
pub mod run;
pub mod scenario;
pub mod suite;

pub use fixtures::{fixture_names, run_fixtures};
pub use record::{CheckRecord, RecordVerdict, Report, Summary};
pub use run::{run_scenario, run_scenario_file, Prepared, RunOptions, DEFAULT_SEED};
pub use scenario::{CheckKind, CheckSpec, Scenario};
pub use suite::{run_property_suite, SuiteOptions};
