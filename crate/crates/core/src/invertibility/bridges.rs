//! Comparisons between invertibility notions and with local principality.

use crate::error::{Error, Result};
use crate::models::Ideal;
use crate::ops::{finite_type_of, quasi_spectrum, stable_of, SemistarOperation};
use crate::report::{settle, CheckReport};

use super::{inverse, is_quasi_star_invertible, is_star_finite, is_star_invertible};

/// For quasi-⋆-invertible fractional `I`: ⋆-invertible iff
/// `(D:I)^⋆ = (D^⋆:I)`. When `D^⋆ = D`, or when the operation is stable and
/// `I` is finitely generated, the two notions must coincide.
pub fn quasi_vs_star_bridge(op: &SemistarOperation, i: &Ideal) -> Result<CheckReport> {
    let inv = inverse(i)?;
    let base = CheckReport::new("quasi-vs-star", op).with_subject(i);
    if !is_quasi_star_invertible(op, i)? {
        return Ok(base.not_applicable("subject is not quasi-invertible"));
    }
    settle(base, |r| {
        let star_inv = is_star_invertible(op, i)?;
        let left = op.closure(&inv)?;
        let right = op.d_star().colon(i)?.expect("quasi-invertible modules have a nonzero dual");
        r.witness("(D:I)^op", &left);
        r.witness("(D^op:I)", &right);
        r.fact("star-invertible", star_inv);
        r.fact("colons-agree", left == right);
        r.require("star-invertible <=> (D:I)^op = (D^op:I)", star_inv == (left == right));
        let proper = op.flags().semistar_proper;
        let stable_fg = op.flags().stable && i.is_finitely_generated();
        r.fact("semistar-proper", proper);
        r.fact("stable-and-fg", stable_fg);
        if proper || stable_fg {
            r.require("quasi-invertible implies invertible", star_inv);
        }
        Ok(())
    })
}

/// `⋆_f`-invertible iff `⋆̃`-invertible (for fractional `I`), and, when
/// `D^⋆ = D^⋆̃`, the same for quasi-invertibility.
pub fn star_f_tilde_bridge(op: &SemistarOperation, i: &Ideal) -> Result<CheckReport> {
    let ft = finite_type_of(op);
    let tilde = stable_of(op)?;
    settle(CheckReport::new("ft-vs-tilde", op).with_subject(i), |r| {
        if i.is_fractional() {
            let a = is_star_invertible(&ft, i)?;
            let b = is_star_invertible(&tilde, i)?;
            r.fact("ft-invertible", a);
            r.fact("tilde-invertible", b);
            r.require("ft-invertible <=> tilde-invertible", a == b);
        }
        let qa = is_quasi_star_invertible(&ft, i)?;
        let qb = is_quasi_star_invertible(&tilde, i)?;
        let same_base = op.d_star() == tilde.d_star();
        r.fact("quasi-ft-invertible", qa);
        r.fact("quasi-tilde-invertible", qb);
        r.fact("same-d-star", same_base);
        if same_base {
            r.require("quasi-ft-invertible <=> quasi-tilde-invertible", qa == qb);
        } else {
            // the quasi-tilde side always implies the quasi-ft side
            r.require("quasi-tilde-invertible implies quasi-ft-invertible", !qb || qa);
        }
        Ok(())
    })
}

/// For finite-type `op` and fractional `I`: (a) ⋆-invertibility, (b) `ID_Q`
/// principal for every `Q ∈ ℳ(⋆)`, (c) `(Q:I) ⊊ (D:I)` for every such `Q`.
/// All three agree for finitely generated `I`. In general (a) and (c) agree
/// and imply (b) together with `⋆`-finiteness.
pub fn localization_criterion(op: &SemistarOperation, i: &Ideal) -> Result<CheckReport> {
    if !op.flags().finite_type {
        return Err(Error::NotFiniteType(op.to_string()));
    }
    let inv = inverse(i)?;
    settle(CheckReport::new("localization", op).with_subject(i), |r| {
        let a = is_star_invertible(op, i)?;
        let mut b = true;
        let mut c = true;
        for q in quasi_spectrum(op)?.quasi_maximals {
            let local = i.localize(&q)?;
            b &= local.is_principal();
            r.fact(&format!("local-principal {q}"), local.is_principal());
            let qi = q.ideal().colon(i)?.expect("fractional ideals have nonzero colons");
            let strict = qi.leq(&inv)? && qi != inv;
            c &= strict;
            r.fact(&format!("colon-strict {q}"), strict);
        }
        r.fact("invertible", a);
        r.fact("locally-principal", b);
        r.fact("colon-criterion", c);
        r.require("invertible <=> colon criterion", a == c);
        if i.is_finitely_generated() {
            r.require("invertible <=> locally principal", a == b);
        } else if c {
            let finite = is_star_finite(op, i)?.is_some();
            r.fact("finite", finite);
            r.require("colon criterion implies finite and locally principal", b && finite);
        }
        Ok(())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::DomainModel;
    use crate::ops::parse_op;
    use crate::report::Outcome;
    use serde_json::json;

    fn setup(model: &str, op: &str, ideal: &str) -> (SemistarOperation, Ideal) {
        let m = DomainModel::from_name(model).unwrap();
        (parse_op(&m, op).unwrap(), m.parse_ideal(ideal).unwrap())
    }

    #[test]
    fn rank_two_prime_colons() {
        let (op, p) = setup("rank2", "star{T=Row(0)}", "Row(1)");
        let r = quasi_vs_star_bridge(&op, &p).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.witnesses["(D:I)^op"], "Row(0)");
        assert_eq!(r.witnesses["(D^op:I)"], "Row(-1)");
        assert_eq!(r.facts["star-invertible"], false);
        let r = localization_criterion(&op, &p).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.facts["invertible"], false);
        assert_eq!(r.facts["locally-principal"], true);
        assert_eq!(r.facts["colon-criterion"], false);
    }

    #[test]
    fn pvd_bridges() {
        let (op, max) = setup("pvd", "star{T=V@0}", "V@1");
        let r = star_f_tilde_bridge(&op, &max).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.facts["ft-invertible"], false);
        assert_eq!(r.facts["tilde-invertible"], false);
        assert_eq!(r.facts["quasi-ft-invertible"], true);
        assert_eq!(r.facts["quasi-tilde-invertible"], false);
        assert_eq!(r.facts["same-d-star"], false);
        let r = quasi_vs_star_bridge(&op, &max).unwrap();
        assert!(r.passed());
        assert_eq!(r.facts["stable-and-fg"], false);
        let (tilde, x) = setup("pvd", "tilde(star{T=V@0})", "D@2");
        let r = quasi_vs_star_bridge(&tilde, &x).unwrap();
        assert!(r.passed());
        assert_eq!(r.facts["star-invertible"], true);
    }

    #[test]
    fn local_criterion_examples() {
        let (d, x) = setup("pid", "d", "(2^1 3^1)");
        let r = localization_criterion(&d, &x).unwrap();
        assert!(r.passed());
        assert_eq!(r.facts["locally-principal"], json!(true));
        let (t, m) = setup("semigroup:3,4,5", "t", "Id{3,4,5}");
        let r = localization_criterion(&t, &m).unwrap();
        assert!(r.passed());
        assert_eq!(r.facts["invertible"], false);
        assert_eq!(r.facts["locally-principal"], false);
        let (v, _) = setup("semigroup:3,4,5", "v", "D");
        assert!(matches!(localization_criterion(&v, &m), Err(Error::NotFiniteType(_))));
    }

    #[test]
    fn quasi_bridge_needs_quasi_invertible_subject() {
        let (t, m) = setup("semigroup:3,4,5", "t", "Id{3,4,5}");
        assert_eq!(quasi_vs_star_bridge(&t, &m).unwrap().verdict, Outcome::NotApplicable);
    }
}
