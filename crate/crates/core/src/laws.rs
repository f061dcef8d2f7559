//! Seeded evaluation of sampled laws with tallies and counterexample shrinking.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::models::sample::{sample, shrink, size, IdealClass};
use crate::models::{DomainModel, Ideal};

/// Outcome of one law instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    /// Hypotheses not met by the drawn inputs.
    Vacuous,
}

impl From<bool> for Verdict {
    fn from(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawTally {
    pub name: String,
    pub pass: usize,
    pub fail: usize,
    pub vacuous: usize,
    pub inconclusive: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl LawTally {
    pub fn new(name: impl Into<String>) -> Self {
        LawTally { name: name.into(), pass: 0, fail: 0, vacuous: 0, inconclusive: 0, witness: None }
    }

    pub fn ok(&self) -> bool {
        self.fail == 0
    }

    pub fn total(&self) -> usize {
        self.pass + self.fail + self.vacuous + self.inconclusive
    }

    pub fn fail_with(&mut self, witness: impl Into<String>) {
        self.fail += 1;
        if self.witness.is_none() {
            self.witness = Some(witness.into());
        }
    }

    /// Records a single exact check evaluated outside the sampler.
    pub fn record(&mut self, result: Result<Verdict>, witness: impl FnOnce() -> String) {
        match result {
            Ok(Verdict::Pass) => self.pass += 1,
            Ok(Verdict::Vacuous) => self.vacuous += 1,
            Ok(Verdict::Fail) => self.fail_with(witness()),
            Err(e) if inconclusive(&e) => self.inconclusive += 1,
            Err(e) => self.fail_with(format!("{}: {e}", witness())),
        }
    }

    pub fn absorb(&mut self, other: &LawTally) {
        self.pass += other.pass;
        self.fail += other.fail;
        self.vacuous += other.vacuous;
        self.inconclusive += other.inconclusive;
        if self.witness.is_none() {
            self.witness = other.witness.clone();
        }
    }
}

/// Errors that mean "could not decide" rather than "the law is violated".
pub fn inconclusive(e: &Error) -> bool {
    matches!(e, Error::SearchExhausted(_) | Error::CutoffNotStabilized { .. })
}

/// A set of law tallies for one subject (a model/operation pair).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub subject: String,
    pub seed: u64,
    /// Sampled checks are semi-decisions; exact checks say so in their name.
    pub sampled: bool,
    pub laws: Vec<LawTally>,
}

impl LawReport {
    pub fn new(subject: impl Into<String>, seed: u64) -> Self {
        LawReport { subject: subject.into(), seed, sampled: true, laws: Vec::new() }
    }

    pub fn ok(&self) -> bool {
        self.laws.iter().all(LawTally::ok)
    }

    pub fn law(&self, name: &str) -> Option<&LawTally> {
        self.laws.iter().find(|l| l.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &LawTally> {
        self.laws.iter().filter(|l| !l.ok())
    }
}

/// FNV-1a over the labels, mixed with the seed, so each law draws from its
/// own stream regardless of evaluation order.
pub fn law_rng(seed: u64, labels: &[&str]) -> ChaCha8Rng {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for label in labels {
        for b in label.bytes().chain(std::iter::once(0xff)) {
            h ^= u64::from(b);
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
    }
    ChaCha8Rng::seed_from_u64(seed ^ h)
}

fn describe(inputs: &[Ideal]) -> String {
    let parts: Vec<String> = inputs.iter().map(|i| i.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

/// Greedily shrinks a failing input tuple while `fails` keeps returning true.
pub fn shrink_inputs(mut inputs: Vec<Ideal>, fails: impl Fn(&[Ideal]) -> bool) -> Vec<Ideal> {
    loop {
        let mut improved = false;
        'outer: for k in 0..inputs.len() {
            let mut candidates = shrink(&inputs[k]);
            candidates.sort_by_key(size);
            for c in candidates {
                let mut trial = inputs.clone();
                trial[k] = c;
                if fails(&trial) {
                    inputs = trial;
                    improved = true;
                    break 'outer;
                }
            }
        }
        if !improved {
            return inputs;
        }
    }
}

/// Evaluates `check` on `n` seeded draws of the given classes.
pub fn run_law(
    model: &DomainModel,
    name: &str,
    labels: &[&str],
    seed: u64,
    n: usize,
    classes: &[IdealClass],
    check: impl Fn(&[Ideal]) -> Result<Verdict>,
) -> LawTally {
    let mut all_labels = vec![model.name()];
    all_labels.extend(labels.iter().map(|s| s.to_string()));
    all_labels.push(name.to_string());
    let refs: Vec<&str> = all_labels.iter().map(String::as_str).collect();
    let mut rng = law_rng(seed, &refs);
    let mut tally = LawTally::new(name);
    for _ in 0..n {
        let inputs: Vec<Ideal> = classes.iter().map(|c| sample(model, *c, &mut rng)).collect();
        match check(&inputs) {
            Ok(Verdict::Pass) => tally.pass += 1,
            Ok(Verdict::Vacuous) => tally.vacuous += 1,
            Ok(Verdict::Fail) => {
                let fails = |xs: &[Ideal]| matches!(check(xs), Ok(Verdict::Fail));
                let small = if tally.witness.is_none() { shrink_inputs(inputs, fails) } else { inputs };
                tally.fail_with(describe(&small));
            }
            Err(e) if inconclusive(&e) => tally.inconclusive += 1,
            Err(e) => tally.fail_with(format!("{}: {e}", describe(&inputs))),
        }
    }
    tally
}
