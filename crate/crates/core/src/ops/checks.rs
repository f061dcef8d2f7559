//! Sampled checks of the semistar axioms and displayed laws.

use crate::error::Result;
use crate::laws::{run_law, LawReport, Verdict};
use crate::models::sample::IdealClass::{self, General, Principal};
use crate::models::Ideal;

use super::{finite_type_of, SemistarOperation};

/// Result of a sampled comparison `⋆₁ ≤ ⋆₂`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpLeqOutcome {
    pub holds: bool,
    /// An `E` with `E^{⋆₁} ⊄ E^{⋆₂}` when `holds` is false.
    pub witness: Option<Ideal>,
    pub checked: usize,
    pub inconclusive: usize,
}

/// Sampled semi-decision of `⋆₁ ≤ ⋆₂`. The given `extra` descriptors are
/// checked before the random ones.
pub fn op_leq(op1: &SemistarOperation, op2: &SemistarOperation, n: usize, seed: u64) -> OpLeqOutcome {
    op_leq_with(op1, op2, n, seed, &[])
}

pub fn op_leq_with(
    op1: &SemistarOperation,
    op2: &SemistarOperation,
    n: usize,
    seed: u64,
    extra: &[Ideal],
) -> OpLeqOutcome {
    let model = op1.model();
    let below = |e: &Ideal| -> Result<bool> { op1.closure(e)?.leq(&op2.closure(e)?) };
    let mut out = OpLeqOutcome { holds: true, witness: None, checked: 0, inconclusive: 0 };
    for e in extra {
        match below(e) {
            Ok(true) => out.checked += 1,
            Ok(false) => {
                out.checked += 1;
                out.holds = false;
                out.witness = Some(e.clone());
                return out;
            }
            Err(_) => out.inconclusive += 1,
        }
    }
    let tally = run_law(model, "op-leq", &[op1.name(), op2.name()], seed, n, &[General], |xs| {
        below(&xs[0]).map(Verdict::from)
    });
    out.checked += tally.pass + tally.fail;
    out.inconclusive += tally.inconclusive;
    if let Some(w) = tally.witness {
        out.holds = false;
        let lit = w.trim_start_matches('[').trim_end_matches(']');
        out.witness = model.parse_ideal(lit).ok();
    }
    out
}

fn eq_all(xs: &[Ideal]) -> bool {
    xs.windows(2).all(|w| w[0] == w[1])
}

/// Checks (⋆₁)–(⋆₃), the four displayed laws, and the declared flags on
/// `n` sampled inputs per law.
pub fn axiom_check(op: &SemistarOperation, n: usize, seed: u64) -> LawReport {
    let model = op.model();
    let mut report = LawReport::new(format!("{model} / {op}"), seed);
    let c = |e: &Ideal| op.closure(e);
    let labels = [op.name()];
    let mut law = |name: &str, classes: &[IdealClass], f: &dyn Fn(&[Ideal]) -> Result<Verdict>| {
        report.laws.push(run_law(model, name, &labels, seed, n, classes, f));
    };
    law("star1-scaling", &[Principal, General], &|xs| {
        Ok((c(&xs[0].mul(&xs[1])?)? == xs[0].mul(&c(&xs[1])?)?).into())
    });
    law("star2-monotone", &[General, General], &|xs| {
        let (e, f) = (&xs[0], &xs[1]);
        let big = e.add(f)?;
        let small = e.intersect(f)?;
        Ok((c(e)?.leq(&c(&big)?)? && c(&small)?.leq(&c(e)?)?).into())
    });
    law("star3-extensive", &[General], &|xs| Ok(xs[0].leq(&c(&xs[0])?)?.into()));
    law("star3-idempotent", &[General], &|xs| {
        let once = c(&xs[0])?;
        Ok((c(&once)? == once).into())
    });
    law("product-law", &[General, General], &|xs| {
        let (e, f) = (&xs[0], &xs[1]);
        let (es, fs) = (c(e)?, c(f)?);
        Ok(eq_all(&[c(&e.mul(f)?)?, c(&es.mul(f)?)?, c(&e.mul(&fs)?)?, c(&es.mul(&fs)?)?]).into())
    });
    law("sum-law", &[General, General], &|xs| {
        let (e, f) = (&xs[0], &xs[1]);
        let (es, fs) = (c(e)?, c(f)?);
        Ok(eq_all(&[c(&e.add(f)?)?, c(&es.add(f)?)?, c(&e.add(&fs)?)?, c(&es.add(&fs)?)?]).into())
    });
    law("colon-law", &[General, General], &|xs| {
        let (e, f) = (&xs[0], &xs[1]);
        let es = c(e)?;
        let right = es.colon(&c(f)?)?;
        if right != es.colon(f)? {
            return Ok(Verdict::Fail);
        }
        Ok(match (e.colon(f)?, right) {
            (None, _) => Verdict::Pass,
            (Some(_), None) => Verdict::Fail,
            (Some(l), Some(r)) => c(&l)?.leq(&r)?.into(),
        })
    });
    law("intersection-law", &[General, General], &|xs| {
        let (e, f) = (&xs[0], &xs[1]);
        Ok(c(&e.intersect(f)?)?.leq(&c(e)?.intersect(&c(f)?)?)?.into())
    });
    if op.flags().finite_type {
        let ft = finite_type_of(op);
        law("declared-finite-type", &[General], &|xs| Ok((c(&xs[0])? == ft.closure(&xs[0])?).into()));
    }
    if op.flags().stable {
        law("declared-stable", &[General, General], &|xs| {
            let (e, f) = (&xs[0], &xs[1]);
            Ok((c(&e.intersect(f)?)? == c(e)?.intersect(&c(f)?)?).into())
        });
    }
    report
}
