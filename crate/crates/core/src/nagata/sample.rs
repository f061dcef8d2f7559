//! Seeded polynomial samplers and the sampled Nagata suites.

use std::collections::BTreeMap;

use num_rational::{BigRational, Rational64};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::laws::{law_rng, LawTally, Verdict};
use crate::models::{DomainModel, Element, ModelKind};
use crate::ops::{finite_type_of, stable_of, SemistarOperation};
use crate::report::CheckReport;

use super::{content_invertible_bridge, glue_principal_generator, in_n_star, Coeff, ContentPolynomial};

const UNITS: [i64; 6] = [1, 5, 7, -1, 11, 13];

fn coefficient(model: &DomainModel, rng: &mut impl Rng) -> Coeff {
    match model.kind() {
        ModelKind::SemilocalPid => {
            let v = 2i64.pow(rng.gen_range(0..3)) * 3i64.pow(rng.gen_range(0..3)) * UNITS.choose(rng).unwrap();
            Coeff::Rational(BigRational::from_integer(v.into()))
        }
        ModelKind::SemigroupRing => {
            let s = model.semigroup().unwrap();
            let members: Vec<i64> = (0..=2 * s.conductor() + s.max_generator()).filter(|e| s.contains(*e)).collect();
            let low = *members[..members.len().min(8)].choose(rng).unwrap();
            let mut series = BTreeMap::from([(low, BigRational::from_integer((*UNITS.choose(rng).unwrap()).into()))]);
            if rng.gen_bool(0.25) {
                // a unit factor 1 + cX^s keeps the principal ideal monomial
                let gap = *members[1..].choose(rng).unwrap();
                series.insert(low + gap, BigRational::from_integer(rng.gen_range(1..4).into()));
            }
            Coeff::Series(series)
        }
        ModelKind::ValuationRank1Discrete | ModelKind::PseudoValuationLattice => {
            Coeff::Value(Element::Int(rng.gen_range(0..4)))
        }
        ModelKind::ValuationRank1Dense => Coeff::Value(Element::Rational(Rational64::new(rng.gen_range(0..7), 2))),
        ModelKind::ValuationRank2Lex => {
            let a = rng.gen_range(0..3);
            let b = if a == 0 { rng.gen_range(0..3) } else { rng.gen_range(-2..3) };
            Coeff::Value(Element::Pair(a, b))
        }
        ModelKind::Staircase2D => Coeff::Value(Element::Pair(rng.gen_range(0..3), rng.gen_range(0..3))),
    }
}

/// A polynomial of degree at most 3 with coefficients in `D`.
pub fn random_polynomial(model: &DomainModel, rng: &mut impl Rng) -> ContentPolynomial {
    let degree = rng.gen_range(0..4u32);
    loop {
        let mut terms = Vec::new();
        for k in 0..=degree {
            if rng.gen_bool(0.75) {
                terms.push((k, coefficient(model, rng)));
            }
        }
        if let Ok(h) = ContentPolynomial::new(model, terms) {
            return h;
        }
    }
}

/// One to four generators.
pub fn random_glue_list(model: &DomainModel, rng: &mut impl Rng) -> Vec<ContentPolynomial> {
    let n = rng.gen_range(1..5);
    (0..n).map(|_| random_polynomial(model, rng)).collect()
}

fn record(t: &mut LawTally, subject: impl FnOnce() -> String, f: impl FnOnce() -> Result<Verdict>) {
    // products leaving the descriptor family cannot be judged
    let result = match f() {
        Err(Error::RawOutsideFamily { .. }) => Ok(Verdict::Vacuous),
        other => other,
    };
    t.record(result, subject);
}

/// `gh ∈ N(⋆)` iff `g, h ∈ N(⋆)` on `n` sampled pairs, together with
/// `N(⋆) = N(⋆_f) = N(⋆̃)` on every polynomial evaluated.
pub fn saturation_check(op: &SemistarOperation, n: usize, seed: u64) -> Result<CheckReport> {
    let model = op.model();
    let mut report = CheckReport::new("saturation", op);
    if !model.element_support() {
        return Ok(report.not_applicable("coefficients are value markers"));
    }
    let ft = finite_type_of(op);
    let tilde = match stable_of(op) {
        Ok(t) => Some(t),
        Err(Error::TrivialOperation(_)) => None,
        Err(e) => return Err(e),
    };
    let mut rng = law_rng(seed, &[&model.name(), op.name(), "saturation"]);
    let mut saturated = LawTally::new("saturated-multiplicative");
    let mut finite = LawTally::new("n-star-finite-type");
    let mut stable = LawTally::new("n-star-tilde");
    for _ in 0..n {
        let g = random_polynomial(model, &mut rng);
        let h = random_polynomial(model, &mut rng);
        let subject = || format!("g = {g}, h = {h}");
        record(&mut saturated, subject, || {
            let gh = g.mul(&h)?;
            Ok((in_n_star(op, &gh)? == (in_n_star(op, &g)? && in_n_star(op, &h)?)).into())
        });
        for p in [&g, &h] {
            record(&mut finite, || p.to_string(), || Ok((in_n_star(op, p)? == in_n_star(&ft, p)?).into()));
            if let Some(t) = &tilde {
                record(&mut stable, || p.to_string(), || Ok((in_n_star(op, p)? == in_n_star(t, p)?).into()));
            }
        }
    }
    report.fact("pairs", saturated.pass + saturated.fail);
    report.fact("outside-family", saturated.vacuous);
    for t in [saturated, finite, stable] {
        report.push_law(t);
    }
    Ok(report)
}

/// The content bridge on `n` sampled polynomials.
pub fn content_bridge_suite(op: &SemistarOperation, n: usize, seed: u64) -> Result<CheckReport> {
    let model = op.model();
    let mut rng = law_rng(seed, &[&model.name(), op.name(), "content-bridge"]);
    let mut report = CheckReport::new("content-bridge-suite", op);
    let mut tally = LawTally::new("content-invertible");
    let mut invertible = 0usize;
    for _ in 0..n {
        let h = random_polynomial(model, &mut rng);
        record(&mut tally, || h.to_string(), || {
            let r = content_invertible_bridge(op, &h)?;
            if r.facts.get("invertible") == Some(&true.into()) {
                invertible += 1;
            }
            r.verdict()
        });
    }
    report.fact("invertible-contents", invertible);
    report.push_law(tally);
    Ok(report)
}

/// Glues `n` sampled generator lists; lists whose extension is not
/// invertible are counted as vacuous.
pub fn glue_suite(op: &SemistarOperation, n: usize, seed: u64) -> Result<CheckReport> {
    let model = op.model();
    let mut rng = law_rng(seed, &[&model.name(), op.name(), "glue"]);
    let mut report = CheckReport::new("glue-suite", op);
    let mut tally = LawTally::new("glued-generator");
    for _ in 0..n {
        let gens = random_glue_list(model, &mut rng);
        let subject = || gens.iter().map(|g| g.to_string()).collect::<Vec<_>>().join("; ");
        record(&mut tally, subject, || match glue_principal_generator(op, &gens) {
            Ok((_, r)) => r.verdict(),
            Err(Error::NotInvertibleExtension(_)) => Ok(Verdict::Vacuous),
            Err(e) => Err(e),
        });
    }
    report.push_law(tally);
    Ok(report)
}
