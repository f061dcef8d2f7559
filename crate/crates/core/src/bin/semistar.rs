use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use semistar::harness::scenario::{CarrierName, SCHEMA_VERSION};
use semistar::harness::{
    run_fixtures, run_property_suite, run_scenario, run_scenario_file, CheckKind, CheckSpec, Report, RunOptions,
    Scenario, SuiteOptions,
};
use semistar::models::ModelSpec;
use semistar::ops::DEFAULT_CUTOFF;
use semistar::Error;

/// Exact checks of semistar operations on a catalogue of integral domains.
///
/// Every command prints a JSON report. Exit status: 0 when every check
/// passes, 1 when any fails, 2 when some are inconclusive and none fail,
/// 3 on usage or parse errors.
#[derive(Parser)]
#[command(name = "semistar", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Common {
    /// Seed for every sampled check.
    #[arg(long, env = "SEMISTAR_SEED", global = true)]
    seed: Option<u64>,
    /// Chain cutoff for finite-type closures.
    #[arg(long, global = true)]
    cutoff: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file.
    Run {
        file: PathBuf,
        /// Run checks in parallel; records are then sorted by name.
        #[arg(long)]
        parallel: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Run the built-in worked examples.
    Fixtures {
        /// Run only the named fixture (repeatable).
        #[arg(long)]
        only: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Run the property suite.
    Suite {
        /// Models to include (repeatable); the catalogue when omitted.
        #[arg(long)]
        models: Vec<String>,
        /// Operation literals (repeatable); the catalogue when omitted.
        #[arg(long)]
        ops: Vec<String>,
        #[arg(short, long, default_value_t = 200)]
        n: usize,
        /// Evaluate on one thread.
        #[arg(long)]
        sequential: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Closure of an ideal.
    Eval {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        ideal: String,
        #[command(flatten)]
        common: Common,
    },
    /// Quasi-spectrum and quasi-maximal ideals of an operation.
    Spectrum {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        common: Common,
    },
    /// Invertibility, finiteness and local principality of an ideal.
    CheckInvertible {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        ideal: String,
        #[command(flatten)]
        common: Common,
    },
    /// Quasi-invertibility of an ideal.
    CheckQuasi {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        ideal: String,
        #[command(flatten)]
        common: Common,
    },
    /// The H(op) characterizations.
    HDomain {
        #[command(flatten)]
        target: Target,
        #[arg(short, long, default_value_t = 50)]
        n: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Group structure of the invertible or quasi-invertible closed ideals.
    GroupCheck {
        #[command(flatten)]
        target: Target,
        /// `inv` or `qinv`.
        #[arg(long, default_value = "qinv")]
        carrier: String,
        #[arg(short, long, default_value_t = 100)]
        n: usize,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Clone)]
struct Target {
    /// Model name: semigroup:3,4,5, dvr, dense, rank2, pvd, pid, staircase.
    #[arg(long)]
    model: String,
    /// Operation literal, e.g. `v`, `t`, `star{T=V@0}`, `tilde(v)`.
    #[arg(long)]
    op: String,
}

fn options(common: Common, parallel: bool) -> RunOptions {
    RunOptions { seed: common.seed, cutoff: common.cutoff, parallel }
}

fn single(target: &Target, kind: CheckKind, common: Common) -> Result<Report, Error> {
    let scenario = Scenario {
        schema_version: SCHEMA_VERSION,
        name: kind.label().to_string(),
        description: String::new(),
        model: ModelSpec::parse(&target.model)?,
        ops: Vec::new(),
        ideals: Default::default(),
        polynomials: Default::default(),
        seed: None,
        cutoff: None,
        checks: vec![CheckSpec {
            name: kind.label().to_string(),
            kind,
            expect: Default::default(),
            expect_witnesses: Default::default(),
        }],
    };
    run_scenario(scenario, options(common, false))
}

fn execute(command: Command) -> Result<Report, Error> {
    match command {
        Command::Run { file, parallel, common } => run_scenario_file(&file, options(common, parallel)),
        Command::Fixtures { only, common } => run_fixtures(&only, options(common, false)),
        Command::Suite { models, ops, n, sequential, common } => {
            let models = if models.is_empty() {
                ModelSpec::catalogue()
            } else {
                models.iter().map(|m| ModelSpec::parse(m)).collect::<Result<_, _>>()?
            };
            run_property_suite(&SuiteOptions {
                models,
                ops,
                n,
                seed: common.seed.unwrap_or(semistar::harness::DEFAULT_SEED),
                cutoff: common.cutoff.unwrap_or(DEFAULT_CUTOFF),
                parallel: !sequential,
            })
        }
        Command::Eval { target, ideal, common } => {
            single(&target, CheckKind::Closure { op: target.op.clone(), ideal }, common)
        }
        Command::Spectrum { target, common } => single(&target, CheckKind::Spectrum { op: target.op.clone() }, common),
        Command::CheckInvertible { target, ideal, common } => {
            single(&target, CheckKind::Invertible { op: target.op.clone(), ideal }, common)
        }
        Command::CheckQuasi { target, ideal, common } => {
            single(&target, CheckKind::Quasi { op: target.op.clone(), ideal }, common)
        }
        Command::HDomain { target, n, common } => single(&target, CheckKind::HDomain { op: target.op.clone(), n }, common),
        Command::GroupCheck { target, carrier, n, common } => {
            let carrier = match carrier.as_str() {
                "inv" => CarrierName::Inv,
                "qinv" => CarrierName::Qinv,
                other => return Err(Error::Usage(format!("unknown carrier {other:?}; use inv or qinv"))),
            };
            single(&target, CheckKind::Group { op: target.op.clone(), carrier, n }, common)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli.command) {
        Ok(report) => {
            // a closed pipe (e.g. `| head`) is not an error of the run
            let _ = writeln!(std::io::stdout(), "{}", report.to_json());
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("semistar: {e}");
            ExitCode::from(3)
        }
    }
}
