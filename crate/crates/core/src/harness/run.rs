//! Scenario execution: resolve every literal up front, then run the checks.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::invertibility::{
    group_check, h_star_equivalence_suite, inverse, invertibility_verdict, is_quasi_star_invertible,
    is_star_invertible, law_suite, localization_criterion, quasi_vs_star_bridge, Carrier,
};
use crate::laws::{run_law, Verdict};
use crate::models::sample::IdealClass;
use crate::models::{DomainModel, Ideal};
use crate::nagata::{
    content_invertible_bridge, glue_principal_generator, in_n_star, is_integral, nagata_invertible,
    saturation_check, ContentPolynomial, NagataIdealRef,
};
use crate::ops::{axiom_check, op_leq, parse_op_with_cutoff, quasi_spectrum, SemistarOperation, DEFAULT_CUTOFF};
use crate::report::{settle, CheckReport};

use super::record::{CheckRecord, RecordVerdict, Report};
use super::scenario::{CarrierName, CheckKind, CheckSpec, Scenario};

pub const DEFAULT_SEED: u64 = 0;

/// Overrides applied on top of a scenario.
#[derive(Debug, Clone, Copy, Default)]
pub struct RunOptions {
    pub seed: Option<u64>,
    pub cutoff: Option<usize>,
    /// Run checks on the rayon pool; records are then ordered by check name.
    pub parallel: bool,
}

/// A scenario whose literals have all been parsed against its model.
pub struct Prepared {
    pub scenario: Scenario,
    pub model: DomainModel,
    pub seed: u64,
    pub cutoff: usize,
    ops: BTreeMap<String, SemistarOperation>,
    ideals: BTreeMap<String, Ideal>,
    polynomials: BTreeMap<String, ContentPolynomial>,
}

fn in_context(what: &str, e: Error) -> Error {
    match e {
        Error::Parse { position, message } => Error::Parse { position, message: format!("{what}: {message}") },
        other => other,
    }
}

impl Prepared {
    pub fn new(scenario: Scenario, options: RunOptions) -> Result<Self> {
        let model = DomainModel::new(scenario.model.clone())?;
        let seed = options.seed.or(scenario.seed).unwrap_or(DEFAULT_SEED);
        let cutoff = options.cutoff.or(scenario.cutoff).unwrap_or(DEFAULT_CUTOFF);
        if cutoff == 0 {
            return Err(Error::Usage("cutoff must be positive".into()));
        }
        let mut named = BTreeMap::new();
        for decl in &scenario.ops {
            let op = parse_op_with_cutoff(&model, &decl.op, &named, cutoff)
                .map_err(|e| in_context(&format!("operation {}", decl.name), e))?;
            named.insert(decl.name.clone(), op.renamed(decl.name.clone()));
        }
        let mut ideals = BTreeMap::new();
        for (name, lit) in &scenario.ideals {
            let i = model.parse_ideal(lit).map_err(|e| in_context(&format!("ideal {name}"), e))?;
            ideals.insert(name.clone(), i);
        }
        let mut polynomials = BTreeMap::new();
        for (name, lit) in &scenario.polynomials {
            let h = ContentPolynomial::parse(&model, lit).map_err(|e| in_context(&format!("polynomial {name}"), e))?;
            polynomials.insert(name.clone(), h);
        }
        let mut ops = named.clone();
        for check in &scenario.checks {
            let ctx = |e| in_context(&format!("check {}", check.name), e);
            for r in check.kind.op_refs() {
                if !ops.contains_key(r) {
                    ops.insert(r.to_string(), parse_op_with_cutoff(&model, r, &named, cutoff).map_err(ctx)?);
                }
            }
            for r in check.kind.ideal_refs() {
                if !ideals.contains_key(r) {
                    ideals.insert(r.to_string(), model.parse_ideal(r).map_err(ctx)?);
                }
            }
            for r in check.kind.polynomial_refs() {
                if !polynomials.contains_key(r) {
                    polynomials.insert(r.to_string(), ContentPolynomial::parse(&model, r).map_err(ctx)?);
                }
            }
            if check.kind.samples() == Some(0) {
                return Err(Error::Usage(format!("check {}: n must be at least 1", check.name)));
            }
        }
        Ok(Prepared { scenario, model, seed, cutoff, ops, ideals, polynomials })
    }

    fn op(&self, r: &str) -> &SemistarOperation {
        &self.ops[r]
    }

    fn ideal(&self, r: &str) -> &Ideal {
        &self.ideals[r]
    }

    fn polynomial(&self, r: &str) -> &ContentPolynomial {
        &self.polynomials[r]
    }

    pub fn run(&self, parallel: bool) -> Report {
        let checks = &self.scenario.checks;
        let records = if parallel {
            let mut out: Vec<CheckRecord> = checks.par_iter().map(|c| self.execute(c)).collect();
            out.sort_by(|a, b| a.name.cmp(&b.name));
            out
        } else {
            checks.iter().map(|c| self.execute(c)).collect()
        };
        Report::new(self.scenario.name.clone(), self.seed, self.cutoff, records)
    }

    fn execute(&self, spec: &CheckSpec) -> CheckRecord {
        let mut inputs = match serde_json::to_value(&spec.kind).expect("check kinds serialize") {
            Value::Object(m) => m.into_iter().collect::<BTreeMap<_, _>>(),
            _ => BTreeMap::new(),
        };
        inputs.remove("check");
        for (key, value) in inputs.iter_mut() {
            // show what a name resolved to
            if let Value::String(s) = value {
                if let Some(i) = self.ideals.get(s.as_str()).filter(|_| self.scenario.ideals.contains_key(s.as_str())) {
                    *value = format!("{s} = {i}").into();
                } else if key == "op" || key == "other" {
                    if let Some(decl) = self.scenario.ops.iter().find(|d| d.name == *s) {
                        *value = format!("{s} = {}", decl.op).into();
                    }
                }
            }
        }
        let mut record = match self.evaluate(&spec.kind) {
            Ok(report) => CheckRecord::from_report(&spec.name, inputs, report),
            Err(e) => {
                CheckRecord::errored(&spec.name, spec.kind.label(), &self.model.name(), inputs, e.to_string())
            }
        };
        for (fact, expected) in &spec.expect {
            match record.facts.get(fact) {
                Some(actual) if actual == expected => {}
                Some(actual) => record.fail(format!("{fact}: expected {expected}, got {actual}")),
                None => record.fail(format!("{fact}: expected {expected}, not reported")),
            }
        }
        for (name, expected) in &spec.expect_witnesses {
            match record.witnesses.get(name) {
                Some(actual) if actual == expected => {}
                Some(actual) => record.fail(format!("witness {name}: expected {expected}, got {actual}")),
                None => record.fail(format!("witness {name}: expected {expected}, not reported")),
            }
        }
        record
    }

    fn evaluate(&self, kind: &CheckKind) -> Result<CheckReport> {
        let seed = self.seed;
        let model = &self.model;
        match kind {
            CheckKind::Closure { op, ideal } => {
                let (op, i) = (self.op(op), self.ideal(ideal));
                settle(CheckReport::new("closure", op).with_subject(i), |r| {
                    let c = op.closure(i)?;
                    r.fact("closure", c.to_string());
                    r.fact("closed", c == *i);
                    r.fact("fractional", c.is_fractional());
                    Ok(())
                })
            }
            CheckKind::Colon { left, right } => {
                let (a, b) = (self.ideal(left), self.ideal(right));
                let mut r = CheckReport::for_model("colon", &model.name());
                r.fact("colon", a.colon(b)?.map(|c| c.to_string()));
                Ok(r)
            }
            CheckKind::Product { left, right, op } => {
                let (a, b) = (self.ideal(left), self.ideal(right));
                let base = match op {
                    Some(op) => CheckReport::new("product", self.op(op)),
                    None => CheckReport::for_model("product", &model.name()),
                };
                settle(base, |r| {
                    let p = a.mul(b)?;
                    r.fact("product", p.to_string());
                    if let Some(op) = op {
                        r.fact("closure", self.op(op).closure(&p)?.to_string());
                    }
                    Ok(())
                })
            }
            CheckKind::Intersection { left, right } => {
                let mut r = CheckReport::for_model("intersection", &model.name());
                r.fact("intersection", self.ideal(left).intersect(self.ideal(right))?.to_string());
                Ok(r)
            }
            CheckKind::Invertible { op, ideal } => {
                let (op, i) = (self.op(op), self.ideal(ideal));
                settle(CheckReport::new("invertible", op).with_subject(i), |r| {
                    let v = invertibility_verdict(op, i)?;
                    r.fact("star-invertible", v.star_invertible);
                    r.fact("quasi-star-invertible", v.quasi_star_invertible);
                    r.fact("star-finite", v.star_finite);
                    r.fact("finite-witness", v.finite_witness);
                    r.fact("strict-witness", v.strict_witness);
                    r.fact("local-principal", serde_json::to_value(&v.local_principal).expect("maps serialize"));
                    if let Some((left, right)) = v.decomposition {
                        r.witness("decomposition", format!("{left} * {right}"));
                    }
                    if i.is_fractional() {
                        let inv = inverse(i)?;
                        let prod = i.mul(&inv)?;
                        r.fact("inverse", inv.to_string());
                        r.fact("inverse-product", prod.to_string());
                        r.fact("inverse-product-closure", op.closure(&prod)?.to_string());
                    }
                    Ok(())
                })
            }
            CheckKind::Quasi { op, ideal } => {
                let (op, i) = (self.op(op), self.ideal(ideal));
                let mut r = quasi_vs_star_bridge(op, i)?;
                r.fact("quasi-star-invertible", is_quasi_star_invertible(op, i)?);
                if let Some(dual) = op.d_star().colon(i)? {
                    let prod = i.mul(&dual)?;
                    r.fact("dual", dual.to_string());
                    r.fact("dual-product", prod.to_string());
                    r.fact("dual-product-closure", op.closure(&prod)?.to_string());
                }
                Ok(r)
            }
            CheckKind::Spectrum { op } => {
                let op = self.op(op);
                let mut r = CheckReport::new("spectrum", op);
                r.fact("d-star", op.d_star().to_string());
                let names = |v: &[crate::models::PrimeSite]| v.iter().map(|p| p.to_string()).collect::<Vec<_>>();
                match quasi_spectrum(op) {
                    Ok(s) => {
                        r.fact("trivial", false);
                        r.fact("quasi-maximals", names(&s.quasi_maximals));
                        r.fact("quasi-primes", names(&s.quasi_primes));
                        r.fact("pi-star", names(&s.pi_star));
                    }
                    Err(Error::TrivialOperation(_)) => {
                        r.fact("trivial", true);
                        r.fact("quasi-maximals", Vec::<String>::new());
                    }
                    Err(e) => return Err(e),
                }
                Ok(r)
            }
            CheckKind::HDomain { op, n } => {
                let mut r = h_star_equivalence_suite(self.op(op), *n, seed)?;
                let h = r.facts.get("i").cloned().unwrap_or(Value::Null);
                r.fact("h-domain", h);
                Ok(r)
            }
            CheckKind::Group { op, carrier, n } => {
                let carrier = match carrier {
                    CarrierName::Inv => Carrier::InvStar,
                    CarrierName::Qinv => Carrier::QInvStar,
                };
                group_check(self.op(op), carrier, *n, seed)
            }
            CheckKind::Localization { op, ideal } => localization_criterion(self.op(op), self.ideal(ideal)),
            CheckKind::Nagata { op, ideal } => {
                let (op, i) = (self.op(op), self.ideal(ideal));
                settle(CheckReport::new("nagata", op).with_subject(i), |r| {
                    let extended = nagata_invertible(&NagataIdealRef::new(op, i))?;
                    let star = i.is_fractional() && is_star_invertible(op, i)?;
                    r.fact("nagata-invertible", extended);
                    r.fact("star-invertible", star);
                    r.require("extension invertible <=> star-invertible", extended == star);
                    Ok(())
                })
            }
            CheckKind::Content { polynomial, op } => {
                let h = self.polynomial(polynomial);
                let base = match op {
                    Some(op) => CheckReport::new("content", self.op(op)),
                    None => CheckReport::for_model("content", &model.name()),
                };
                settle(base, |r| {
                    r.fact("polynomial", h.to_string());
                    r.fact("content", h.content()?.to_string());
                    r.fact("integral", is_integral(h)?);
                    if let Some(op) = op {
                        r.fact("in-n-star", in_n_star(self.op(op), h)?);
                    }
                    Ok(())
                })
            }
            CheckKind::ContentBridge { op, polynomial } => {
                content_invertible_bridge(self.op(op), self.polynomial(polynomial))
            }
            CheckKind::Glue { op, generators } => {
                let gens: Vec<ContentPolynomial> = generators.iter().map(|g| self.polynomial(g).clone()).collect();
                glue_principal_generator(self.op(op), &gens).map(|(_, r)| r)
            }
            CheckKind::Agree { op, other, n } => {
                let (a, b) = (self.op(op), self.op(other));
                let mut r = CheckReport::new("agree", a);
                let up = op_leq(a, b, *n, seed);
                let down = op_leq(b, a, *n, seed);
                let agree = up.holds && down.holds;
                r.fact("other", b.name());
                r.fact("agree", agree);
                r.fact("checked", up.checked.min(down.checked));
                r.fact("inconclusive", up.inconclusive + down.inconclusive);
                if let Some(w) = up.witness.or(down.witness) {
                    r.witness("disagreement", w);
                }
                Ok(r)
            }
            CheckKind::Leq { op, other, n } => {
                let (a, b) = (self.op(op), self.op(other));
                let mut r = CheckReport::new("leq", a);
                let out = op_leq(a, b, *n, seed);
                r.fact("other", b.name());
                r.fact("leq", out.holds);
                r.fact("checked", out.checked);
                r.fact("inconclusive", out.inconclusive);
                if let Some(w) = out.witness {
                    r.witness("counterexample", w);
                }
                Ok(r)
            }
            CheckKind::PrincipalInvertibles { op, n } => {
                let op = self.op(op);
                let mut r = CheckReport::new("principal-invertibles", op);
                let tally = run_law(model, "invertible-is-principal", &[op.name()], seed, *n, &[IdealClass::Fractional], |xs| {
                    if !is_star_invertible(op, &xs[0])? {
                        return Ok(Verdict::Vacuous);
                    }
                    Ok(xs[0].is_principal().into())
                });
                r.fact("samples", tally.total());
                r.fact("invertible-samples", tally.pass + tally.fail);
                r.fact("all-principal", tally.ok());
                r.push_law(tally);
                Ok(r)
            }
            CheckKind::Saturation { op, n } => saturation_check(self.op(op), *n, seed),
            CheckKind::Suite { op, n } => Ok(suite_report(self.op(op), *n, seed)),
        }
    }
}

/// Axioms and the invertibility law suite for one operation, as one report.
pub fn suite_report(op: &SemistarOperation, n: usize, seed: u64) -> CheckReport {
    let mut r = CheckReport::new("suite", op);
    let axioms = axiom_check(op, n, seed);
    let laws = law_suite(op, n, seed);
    let all: Vec<_> = axioms.laws.into_iter().chain(laws.laws).collect();
    let total: usize = all.iter().map(|l| l.total()).sum();
    let inconclusive: usize = all.iter().map(|l| l.inconclusive).sum();
    r.fact("laws", all.len());
    r.fact("instances", total);
    r.fact("inconclusive", inconclusive);
    for law in all {
        r.push_law(law);
    }
    r
}

/// Parses, prepares and runs a scenario.
pub fn run_scenario(scenario: Scenario, options: RunOptions) -> Result<Report> {
    Ok(Prepared::new(scenario, options)?.run(options.parallel))
}

pub fn run_scenario_file(path: &std::path::Path, options: RunOptions) -> Result<Report> {
    run_scenario(Scenario::from_path(path)?, options)
}

impl Report {
    /// Records that failed, for diagnostics.
    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| c.verdict == RecordVerdict::Fail)
    }
}
