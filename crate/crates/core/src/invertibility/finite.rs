//! ⋆-finiteness, strict ⋆-finiteness and the invertibility decomposition.

use std::fmt;

use crate::error::{Error, Result};
use crate::models::cuts::{PvdCut, Tier};
use crate::models::{DomainModel, Ideal, ModelKind, Shape};
use crate::ops::{finite_type_of, Basis, SemistarOperation, DEFAULT_CUTOFF};
use crate::report::{settle, CheckReport};

use super::{inverse, is_quasi_star_invertible, is_star_invertible};

/// A finitely generated module certifying finiteness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FgWitness {
    Ideal(Ideal),
    /// `X^n(D + uD)` in the pseudo-valuation model, with `u ∈ V` a unit whose
    /// residue lies outside the residue field of `D`. It sits strictly between
    /// `X^n D` and `X^n V` and is not itself a lattice descriptor.
    TwoGenerated { model: DomainModel, exp: i64 },
}

impl fmt::Display for FgWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FgWitness::Ideal(i) => write!(f, "{i}"),
            FgWitness::TwoGenerated { exp, .. } => write!(f, "X^{exp}(D+uD)"),
        }
    }
}

impl FgWitness {
    fn pvd(model: &DomainModel, cut: PvdCut) -> Ideal {
        model.ideal(Shape::Pvd(cut))
    }

    pub fn as_ideal(&self) -> Option<&Ideal> {
        match self {
            FgWitness::Ideal(i) => Some(i),
            FgWitness::TwoGenerated { .. } => None,
        }
    }

    /// `W^⋆`, or `None` when it is the two-generated module itself.
    pub fn closure(&self, op: &SemistarOperation) -> Result<Option<Ideal>> {
        match self {
            FgWitness::Ideal(i) => op.closure(i).map(Some),
            FgWitness::TwoGenerated { model, exp } => two_generated_closure(op, model, *exp),
        }
    }

    /// `W ⊆ I`. A two-generated `X^n(D+uD)` lies in a lattice member exactly
    /// when `X^n V` does.
    pub fn leq(&self, i: &Ideal) -> Result<bool> {
        match self {
            FgWitness::Ideal(w) => w.leq(i),
            FgWitness::TwoGenerated { model, exp } => Self::pvd(model, PvdCut::v(*exp)).leq(i),
        }
    }

    pub fn mul(&self, other: &FgWitness) -> Result<FgWitness> {
        use FgWitness::*;
        match (self, other) {
            (Ideal(a), Ideal(b)) => Ok(Ideal(a.mul(b)?)),
            (TwoGenerated { model, exp }, TwoGenerated { exp: e2, .. }) => {
                Ok(TwoGenerated { model: model.clone(), exp: exp + e2 })
            }
            (TwoGenerated { model, exp }, Ideal(i)) | (Ideal(i), TwoGenerated { model, exp }) => {
                Ok(match i.shape() {
                    Shape::Pvd(c) if c.tier == Tier::D => TwoGenerated { model: model.clone(), exp: exp + c.exp },
                    _ => Ideal(Self::pvd(model, PvdCut::v(*exp)).mul(i)?),
                })
            }
        }
    }
}

/// `(X^n(D+uD))^⋆`. Its `D`-dual is `X^{-n}M`, so divisorial-type closures and
/// extension to any overring containing `V` give `X^n V`; the identity-like
/// operations of the model fix it.
fn two_generated_closure(op: &SemistarOperation, model: &DomainModel, exp: i64) -> Result<Option<Ideal>> {
    let xv = model.ideal(Shape::Pvd(PvdCut::v(exp)));
    match op.basis() {
        Basis::Identity => Ok(None),
        Basis::V => Ok(Some(xv)),
        Basis::Overring(t) => Ok(if *t == model.d() { None } else { Some(xv.mul(t)?) }),
        Basis::Spectral(primes) | Basis::Stable { primes, .. } => {
            if primes.iter().any(|p| p.local_ring() == model.d()) {
                Ok(None)
            } else {
                Ok(Some(op.closure(&xv)?))
            }
        }
        Basis::VOfStarImage(_) => op.closure(&xv).map(Some),
        Basis::FiniteType { of, .. } => two_generated_closure(of, model, exp),
        Basis::Induced { of, overring } if overring.ring() == &model.d() => two_generated_closure(of, model, exp),
        Basis::Induced { .. } => Err(Error::SearchExhausted(format!("two-generated module under {op}"))),
    }
}

/// A finitely generated `J ⊆ I` with `J^⋆ = I^⋆`, `Ok(None)` when none exists.
///
/// Candidates are the members of the cofinal chain of `I`. Every finitely
/// generated subideal sits below some member, so when no member reaches `I^⋆`
/// the answer is negative as soon as either `I^{⋆_f} ≠ I^⋆` or the member
/// closures are still strictly growing at the end of the chain.
pub fn strict_finite_witness(op: &SemistarOperation, i: &Ideal) -> Result<Option<FgWitness>> {
    if i.is_whole() {
        // J ⊆ xD gives J^⋆ ⊆ xD^⋆ ≠ K
        return Ok(None);
    }
    if i.is_finitely_generated() {
        return Ok(Some(FgWitness::Ideal(i.clone())));
    }
    let target = op.closure(i)?;
    if i.model().kind() == ModelKind::PseudoValuationLattice {
        return pvd_strict_witness(op, i, &target);
    }
    let mut closures: Vec<Ideal> = Vec::new();
    for j in i.fg_cofinal_chain(DEFAULT_CUTOFF) {
        let c = op.closure(&j)?;
        if c == target {
            return Ok(Some(FgWitness::Ideal(j)));
        }
        closures.push(c);
    }
    if finite_type_of(op).closure(i)? != target {
        return Ok(None);
    }
    match closures.as_slice() {
        [.., a, b] if a != b => Ok(None),
        _ => Err(Error::SearchExhausted(format!("strict witness for {i} under {op}"))),
    }
}

/// In the pseudo-valuation lattice a finitely generated module with least
/// exponent `m` is either `X^m D` up to a unit or has a leading space of
/// dimension at least two, and then behaves like `X^m(D+uD)`. Closures keep
/// the least exponent, so only exponent `exp(I^⋆)` can match.
fn pvd_strict_witness(op: &SemistarOperation, i: &Ideal, target: &Ideal) -> Result<Option<FgWitness>> {
    let Shape::Pvd(cut) = target.shape() else {
        return Ok(None);
    };
    let model = i.model();
    let m = cut.exp;
    let principal = model.ideal(Shape::Pvd(PvdCut::d(m)));
    if principal.leq(i)? && op.closure(&principal)? == *target {
        return Ok(Some(FgWitness::Ideal(principal)));
    }
    let two = FgWitness::TwoGenerated { model: model.clone(), exp: m };
    if two.leq(i)? && two.closure(op)?.as_ref() == Some(target) {
        return Ok(Some(two));
    }
    Ok(None)
}

/// A finitely generated `J` with `J^⋆ = I^⋆`. A witness inside `I` is
/// preferred; otherwise `I` is ⋆-finite exactly when `I^⋆` is strictly so.
pub fn is_star_finite(op: &SemistarOperation, i: &Ideal) -> Result<Option<FgWitness>> {
    if let Ok(Some(w)) = strict_finite_witness(op, i) {
        return Ok(Some(w));
    }
    let star = op.closure(i)?;
    strict_finite_witness(op, &star)
}

/// `(I′, I″)` with `I′ ⊆ I`, `I″ ⊆ (D:I)` finitely generated and
/// `(I′I″)^⋆ = D^⋆`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessPair {
    pub left: FgWitness,
    pub right: FgWitness,
}

/// For a finite-type `op` and a ⋆-invertible `I`, the strict witnesses of
/// `I` and `(D:I)`. `Ok(None)` when `I` is not ⋆-invertible or when one of
/// the strict witnesses does not exist.
pub fn invertibility_witness(op: &SemistarOperation, i: &Ideal) -> Result<Option<WitnessPair>> {
    if !op.flags().finite_type {
        return Err(Error::NotFiniteType(op.to_string()));
    }
    if !is_star_invertible(op, i)? {
        return Ok(None);
    }
    let inv = inverse(i)?;
    let (Some(left), Some(right)) = (strict_finite_witness(op, i)?, strict_finite_witness(op, &inv)?) else {
        return Ok(None);
    };
    Ok(Some(WitnessPair { left, right }))
}

/// Checks every property promised for a decomposition of `I`.
pub fn verify_witness_pair(op: &SemistarOperation, i: &Ideal, pair: &WitnessPair) -> Result<bool> {
    let inv = inverse(i)?;
    let product = pair.left.mul(&pair.right)?;
    Ok(pair.left.leq(i)?
        && pair.right.leq(&inv)?
        && product.closure(op)?.as_ref() == Some(op.d_star())
        && pair.left.closure(op)? == Some(op.closure(i)?)
        && pair.right.closure(op)? == Some(op.closure(&inv)?))
}

fn finite_fact(report: &mut CheckReport, name: &str, w: &Option<FgWitness>) -> bool {
    report.fact(name, w.is_some());
    if let Some(w) = w {
        report.witness(name, w);
    }
    w.is_some()
}

/// `I` is `⋆_f`-invertible iff `I` and `(D:I)` are `⋆_f`-finite and `I` is
/// ⋆-invertible; both sides are evaluated and compared.
pub fn check_invertible_implies_finite(op: &SemistarOperation, i: &Ideal) -> Result<CheckReport> {
    let ft = finite_type_of(op);
    let inv = inverse(i)?;
    settle(CheckReport::new("invertible-implies-finite", op).with_subject(i), |r| {
        let left = is_star_invertible(&ft, i)?;
        r.fact("ft-invertible", left);
        let fin_i = finite_fact(r, "ft-finite", &is_star_finite(&ft, i)?);
        let fin_inv = finite_fact(r, "inverse-ft-finite", &is_star_finite(&ft, &inv)?);
        let star_inv = is_star_invertible(op, i)?;
        r.fact("star-invertible", star_inv);
        r.require("ft-invertible <=> finite and star-invertible", left == (fin_i && fin_inv && star_inv));
        Ok(())
    })
}

/// The quasi analogue, with `(D^⋆:I)` in place of `(D:I)`.
pub fn check_quasi_invertible_implies_finite(op: &SemistarOperation, i: &Ideal) -> Result<CheckReport> {
    let ft = finite_type_of(op);
    settle(CheckReport::new("quasi-invertible-implies-finite", op).with_subject(i), |r| {
        let left = is_quasi_star_invertible(&ft, i)?;
        r.fact("quasi-ft-invertible", left);
        let right = match op.d_star().colon(i)? {
            None => false,
            Some(h) => {
                let fin_i = finite_fact(r, "ft-finite", &is_star_finite(&ft, i)?);
                let fin_h = finite_fact(r, "quasi-inverse-ft-finite", &is_star_finite(&ft, &h)?);
                let q = is_quasi_star_invertible(op, i)?;
                r.fact("quasi-star-invertible", q);
                fin_i && fin_h && q
            }
        };
        r.require("quasi-ft-invertible <=> finite and quasi-invertible", left == right);
        Ok(())
    })
}
