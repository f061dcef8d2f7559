//! `Inv^⋆(D)` and `QInv^⋆(D)` under the composition `I × J = (IJ)^⋆`.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::laws::{inconclusive, law_rng, LawTally, Verdict};
use crate::models::sample::{sample, IdealClass};
use crate::models::Ideal;
use crate::ops::{induced_on_overring, SemistarOperation};
use crate::report::{settle, CheckReport};

use super::{is_quasi_star_invertible, is_star_invertible};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Carrier {
    /// ⋆-closed ⋆-invertible fractional ideals.
    InvStar,
    /// ⋆-closed quasi-⋆-invertible modules.
    QInvStar,
}

fn require_closed(op: &SemistarOperation, i: &Ideal) -> Result<()> {
    if op.closure(i)? != *i {
        return Err(Error::NotClosed(format!("{i} under {op}")));
    }
    Ok(())
}

pub fn semistar_product(op: &SemistarOperation, i: &Ideal, j: &Ideal) -> Result<Ideal> {
    require_closed(op, i)?;
    require_closed(op, j)?;
    op.closure(&i.mul(j)?)
}

/// `(D^⋆:I)` for a ⋆-closed `I`.
pub fn quasi_inverse(op: &SemistarOperation, i: &Ideal) -> Result<Ideal> {
    require_closed(op, i)?;
    op.d_star().colon(i)?.ok_or_else(|| Error::NotFractional(format!("{i} over {}", op.d_star())))
}

fn is_member(op: &SemistarOperation, carrier: Carrier, i: &Ideal) -> Result<bool> {
    if op.closure(i)? != *i {
        return Ok(false);
    }
    match carrier {
        Carrier::QInvStar => is_quasi_star_invertible(op, i),
        Carrier::InvStar => Ok(i.is_fractional() && is_star_invertible(op, i)?),
    }
}

/// Draws closures of sampled ideals until `n` members are found, mixing in
/// principal ideals so that every carrier is reachable.
fn sample_members(op: &SemistarOperation, carrier: Carrier, n: usize, seed: u64) -> Vec<Ideal> {
    let model = op.model();
    let mut rng = law_rng(seed, &[&model.name(), op.name(), "group-members"]);
    let mut out = Vec::with_capacity(n);
    for _ in 0..n * 20 {
        if out.len() == n {
            break;
        }
        let class = if rng.gen_bool(0.3) { IdealClass::Principal } else { IdealClass::General };
        let Ok(star) = op.closure(&sample(model, class, &mut rng)) else { continue };
        if let Ok(true) = is_member(op, carrier, &star) {
            out.push(star);
        }
    }
    out
}

fn tally(name: &str) -> LawTally {
    LawTally::new(name)
}

/// Checks the group structure of the carrier on `n` sampled members.
///
/// For `QInvStar`: closure of products, identity `D^⋆`, the inverse
/// `(D^⋆:I)`, associativity, and the identification with the ⋆_ι-invertible
/// ⋆_ι-ideals of `D^⋆` when `D^⋆` is a catalogue model. For `InvStar`: the
/// observed group structure against `(D:D^⋆) ≠ 0`, which it implies, and
/// against `(D:D^⋆)^⋆ = D^⋆`, which it is equivalent to. A member of
/// `QInv^⋆ ∖ Inv^⋆` is reported when one is found.
pub fn group_check(op: &SemistarOperation, carrier: Carrier, n: usize, seed: u64) -> Result<CheckReport> {
    let members = sample_members(op, carrier, n, seed);
    let mut report = CheckReport::new("group", op);
    report.fact("carrier", serde_json::to_value(carrier).expect("carrier serializes"));
    report.fact("members", members.len());
    if members.is_empty() && carrier == Carrier::QInvStar {
        return Ok(report.not_applicable("no members sampled"));
    }
    settle(report, |r| match carrier {
        Carrier::QInvStar => check_qinv(op, &members, seed, r),
        Carrier::InvStar => check_inv(op, &members, n, seed, r),
    })
}

fn record(t: &mut LawTally, subject: &[&Ideal], f: impl FnOnce() -> Result<bool>) {
    t.record(f().map(Verdict::from), || {
        subject.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(", ")
    });
}

fn check_qinv(op: &SemistarOperation, members: &[Ideal], seed: u64, r: &mut CheckReport) -> Result<()> {
    let unit = op.d_star().clone();
    let carrier = Carrier::QInvStar;
    let mut closed = tally("closed-product");
    let mut identity = tally("identity");
    let mut inverse = tally("inverse");
    let mut assoc = tally("associativity");
    let k = members.len();
    r.require("D^op is a member", is_member(op, carrier, &unit)?);
    for (idx, i) in members.iter().enumerate() {
        let j = &members[(idx * 7 + 1) % k];
        let l = &members[(idx * 13 + 2) % k];
        record(&mut closed, &[i, j], || is_member(op, carrier, &semistar_product(op, i, j)?));
        record(&mut identity, &[i], || Ok(semistar_product(op, &unit, i)? == *i));
        record(&mut inverse, &[i], || {
            let h = quasi_inverse(op, i)?;
            Ok(is_member(op, carrier, &h)? && semistar_product(op, i, &h)? == unit)
        });
        record(&mut assoc, &[i, j, l], || {
            let left = semistar_product(op, &semistar_product(op, i, j)?, l)?;
            let right = semistar_product(op, i, &semistar_product(op, j, l)?)?;
            Ok(left == right)
        });
    }
    for t in [closed, identity, inverse, assoc] {
        r.push_law(t);
    }
    identification(op, members, seed, r)
}

/// `QInv^⋆(D) = Inv^{⋆_ι}(D^⋆)`: members become ⋆_ι-closed ⋆_ι-invertible
/// ideals of `D^⋆` and the compositions correspond.
fn identification(op: &SemistarOperation, members: &[Ideal], seed: u64, r: &mut CheckReport) -> Result<()> {
    let unit = op.d_star();
    let overring = match op.model().overring(unit) {
        Ok(o) => o,
        Err(Error::OverringNotInCatalogue(_)) => {
            r.fact("identification", "unsupported");
            return Ok(());
        }
        Err(e) => return Err(e),
    };
    let iota = induced_on_overring(op, unit)?;
    r.fact("identification", iota.name());
    let mut forward = tally("identification");
    let mut products = tally("identification-product");
    let k = members.len();
    for (idx, i) in members.iter().enumerate() {
        let image = overring.restrict(i)?;
        record(&mut forward, &[i], || {
            Ok(overring.embed(&image)? == *i
                && iota.closure(&image)? == image
                && image.is_fractional()
                && is_star_invertible(&iota, &image)?)
        });
        let j = &members[(idx * 5 + 3) % k];
        record(&mut products, &[i, j], || {
            let left = overring.restrict(&semistar_product(op, i, j)?)?;
            let right = iota.closure(&image.mul(&overring.restrict(j)?)?)?;
            Ok(left == right)
        });
    }
    // and backwards: sampled ⋆_ι-invertible ⋆_ι-ideals of D^⋆ are members
    let mut backward = tally("identification-inverse");
    let mut rng = law_rng(seed, &[&op.model().name(), op.name(), "identification"]);
    for _ in 0..k {
        let e = sample(overring.model(), IdealClass::Fractional, &mut rng);
        let star = match iota.closure(&e) {
            Ok(s) => s,
            Err(err) if inconclusive(&err) => continue,
            Err(err) => return Err(err),
        };
        if !star.is_fractional() || !is_star_invertible(&iota, &star)? {
            continue;
        }
        record(&mut backward, &[&star], || is_member(op, Carrier::QInvStar, &overring.embed(&star)?));
    }
    for t in [forward, products, backward] {
        r.push_law(t);
    }
    Ok(())
}

fn check_inv(op: &SemistarOperation, members: &[Ideal], n: usize, seed: u64, r: &mut CheckReport) -> Result<()> {
    let model = op.model();
    let unit = op.d_star().clone();
    let dual = model.d().colon(&unit)?;
    let criterion = dual.is_some();
    // D^⋆ is ⋆-invertible exactly when (D:D^⋆)^⋆ = D^⋆
    let unit_invertible = match &dual {
        Some(h) => op.closure(h)? == unit,
        None => false,
    };
    let has_identity = is_member(op, Carrier::InvStar, &unit)?;
    let mut inverses = tally("inverse");
    let mut closed = tally("closed-product");
    let k = members.len();
    for (idx, i) in members.iter().enumerate() {
        let j = &members[(idx * 7 + 1) % k];
        record(&mut closed, &[i, j], || is_member(op, Carrier::InvStar, &semistar_product(op, i, j)?));
        record(&mut inverses, &[i], || {
            let h = quasi_inverse(op, i)?;
            Ok(is_member(op, Carrier::InvStar, &h)? && semistar_product(op, i, &h)? == unit)
        });
    }
    let observed = has_identity && inverses.ok() && closed.ok();
    r.fact("colon-nonzero", criterion);
    r.fact("has-identity", has_identity);
    r.fact("unit-invertible", unit_invertible);
    r.fact("group", observed);
    if let Some(h) = &dual {
        r.witness("(D:D^op)", h);
    }
    r.require("group implies (D:D^op) != 0", !observed || criterion);
    r.require("group <=> (D:D^op)^op = D^op", observed == unit_invertible);
    r.laws.extend([inverses, closed]);

    // a member of QInv^⋆ outside Inv^⋆
    let candidates = model
        .primes()
        .iter()
        .map(|p| op.closure(&p.ideal()))
        .chain(sample_members(op, Carrier::QInvStar, n, seed).into_iter().map(Ok))
        .collect::<Result<Vec<_>>>();
    for c in candidates? {
        if is_member(op, Carrier::QInvStar, &c)? && !is_member(op, Carrier::InvStar, &c)? {
            r.witness("quasi-not-invertible", &c);
            break;
        }
    }
    Ok(())
}
