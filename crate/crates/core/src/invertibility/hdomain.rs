//! H(⋆)-domains: every integral `I` with `I^⋆ = D^⋆` contains a finitely
//! generated `J` with `J^⋆ = D^⋆`.

use crate::error::{Error, Result};
use crate::laws::law_rng;
use crate::models::sample::{sample, IdealClass};
use crate::models::{Ideal, PrimeSite};
use crate::ops::{finite_type_of, quasi_spectrum, stable_of, SemistarOperation};
use crate::report::{settle, CheckReport};

use super::{is_star_invertible, strict_finite_witness};

/// Each quasi-`⋆_f`-maximal ideal `Q` satisfies `Q^⋆ ∩ D = Q`.
pub fn is_h_star_domain(op: &SemistarOperation) -> Result<bool> {
    let d = op.model().d();
    for q in quasi_spectrum(&finite_type_of(op))?.quasi_maximals {
        let q = q.ideal();
        if op.closure(&q)?.intersect(&d)? != q {
            return Ok(false);
        }
    }
    Ok(true)
}

fn same_sites(a: &[PrimeSite], b: &[PrimeSite]) -> bool {
    a.len() == b.len() && a.iter().all(|p| b.contains(p))
}

fn names(sites: &[PrimeSite]) -> serde_json::Value {
    sites.iter().map(|p| p.to_string()).collect::<Vec<_>>().into()
}

/// Evaluates the four characterizations of H(⋆) and requires them to agree.
///
/// (i) via the quasi-maximal test, (iii) `ℳ(⋆_f) = ℳ(⋆)`, (iv)
/// `ℳ(⋆̃) = ℳ(⋆)`, and (ii) "⋆-invertible iff `⋆_f`-invertible" over the
/// primes of the model followed by `n` sampled fractional ideals. When (i)
/// fails some quasi-`⋆_f`-maximal prime separates the two invertibilities, so
/// listing the primes first makes (ii) exact.
pub fn h_star_equivalence_suite(op: &SemistarOperation, n: usize, seed: u64) -> Result<CheckReport> {
    let model = op.model().clone();
    let ft = finite_type_of(op);
    settle(CheckReport::new("h-domain", op), |r| {
        let h = is_h_star_domain(op)?;
        let m_op = quasi_spectrum(op)?.quasi_maximals;
        let m_ft = quasi_spectrum(&ft)?.quasi_maximals;
        let m_tilde = match stable_of(op) {
            Ok(tilde) => quasi_spectrum(&tilde)?.quasi_maximals,
            Err(Error::TrivialOperation(_)) => Vec::new(),
            Err(e) => return Err(e),
        };
        r.fact("M(op)", names(&m_op));
        r.fact("M(ft)", names(&m_ft));
        r.fact("M(tilde)", names(&m_tilde));
        let iii = same_sites(&m_ft, &m_op);
        let iv = same_sites(&m_tilde, &m_op);

        let mut rng = law_rng(seed, &[&model.name(), op.name(), "h-domain"]);
        let candidates: Vec<Ideal> = model
            .primes()
            .iter()
            .map(PrimeSite::ideal)
            .chain((0..n).map(|_| sample(&model, IdealClass::Fractional, &mut rng)))
            .collect();
        let mut separating = None;
        let mut inconclusive = 0usize;
        for i in &candidates {
            match is_star_invertible(op, i).and_then(|a| Ok((a, is_star_invertible(&ft, i)?))) {
                Ok((a, b)) if a != b => {
                    separating = Some(i.clone());
                    break;
                }
                Ok(_) => {}
                Err(e) if crate::laws::inconclusive(&e) => inconclusive += 1,
                Err(e) => return Err(e),
            }
        }
        let ii = separating.is_none();
        if let Some(w) = &separating {
            r.witness("ii", w);
        }

        // the definition itself on integral samples with I^⋆ = D^⋆
        let mut definition_checked = 0usize;
        for i in candidates.iter().filter(|i| i.is_integral()) {
            if op.closure(i)? != *op.d_star() {
                continue;
            }
            match strict_finite_witness(op, i) {
                Ok(w) => {
                    definition_checked += 1;
                    if w.is_none() && h {
                        r.witness("definition", i);
                        r.require("H(op) gives a finitely generated J with J^op = D^op", false);
                    }
                }
                Err(e) if crate::laws::inconclusive(&e) => inconclusive += 1,
                Err(e) => return Err(e),
            }
        }

        r.fact("i", h);
        r.fact("ii", ii);
        r.fact("iii", iii);
        r.fact("iv", iv);
        r.fact("candidates", candidates.len());
        r.fact("definition-checked", definition_checked);
        r.fact("inconclusive", inconclusive);
        r.require("(i) <=> (ii)", h == ii);
        r.require("(i) <=> (iii)", h == iii);
        r.require("(i) <=> (iv)", h == iv);
        Ok(())
    })
}
