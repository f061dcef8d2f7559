//! ⋆-invertibility, quasi-⋆-invertibility, ⋆-finiteness and the checkers
//! built on them.

mod bridges;
mod finite;
mod groups;
mod hdomain;
mod identities;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::models::Ideal;
use crate::ops::{quasi_spectrum, SemistarOperation};

pub use bridges::{localization_criterion, quasi_vs_star_bridge, star_f_tilde_bridge};
pub use finite::{
    check_invertible_implies_finite, check_quasi_invertible_implies_finite, invertibility_witness,
    is_star_finite, strict_finite_witness, verify_witness_pair, FgWitness, WitnessPair,
};
pub use groups::{group_check, quasi_inverse, semistar_product, Carrier};
pub use hdomain::{h_star_equivalence_suite, is_h_star_domain};
pub use identities::law_suite;

/// `(D:I)`, defined for fractional `I`.
pub fn inverse(i: &Ideal) -> Result<Ideal> {
    if !i.is_fractional() {
        return Err(Error::NotFractional(i.to_string()));
    }
    Ok(i.model().d().colon(i)?.expect("a fractional ideal has a nonzero inverse"))
}

/// `(I·(D:I))^⋆ = D^⋆`.
pub fn is_star_invertible(op: &SemistarOperation, i: &Ideal) -> Result<bool> {
    let inv = inverse(i)?;
    Ok(op.closure(&i.mul(&inv)?)? == *op.d_star())
}

/// `(I·(D^⋆:I))^⋆ = D^⋆`; returns `H = (D^⋆:I)` when it holds.
pub fn quasi_star_witness(op: &SemistarOperation, i: &Ideal) -> Result<Option<Ideal>> {
    let Some(h) = op.d_star().colon(i)? else {
        return Ok(None);
    };
    Ok((op.closure(&i.mul(&h)?)? == *op.d_star()).then_some(h))
}

pub fn is_quasi_star_invertible(op: &SemistarOperation, i: &Ideal) -> Result<bool> {
    Ok(quasi_star_witness(op, i)?.is_some())
}

/// Everything known about one ideal under one operation.
#[derive(Debug, Clone, Serialize)]
pub struct InvertibilityVerdict {
    pub subject: String,
    pub op: String,
    pub star_invertible: Option<bool>,
    pub quasi_star_invertible: bool,
    /// `None` when the witness search was inconclusive.
    pub star_finite: Option<bool>,
    pub finite_witness: Option<String>,
    pub strict_witness: Option<String>,
    pub decomposition: Option<(String, String)>,
    pub local_principal: BTreeMap<String, bool>,
}

/// Evaluates every predicate on `I`. Inconclusive searches leave the
/// corresponding fields empty.
pub fn invertibility_verdict(op: &SemistarOperation, i: &Ideal) -> Result<InvertibilityVerdict> {
    let star_invertible = if i.is_fractional() { Some(is_star_invertible(op, i)?) } else { None };
    let quasi_star_invertible = is_quasi_star_invertible(op, i)?;
    let (star_finite, finite_witness) = match is_star_finite(op, i) {
        Ok(w) => (Some(w.is_some()), w.map(|w| w.to_string())),
        Err(e) if crate::laws::inconclusive(&e) => (None, None),
        Err(e) => return Err(e),
    };
    let strict_witness = match strict_finite_witness(op, i) {
        Ok(w) => w.map(|w| w.to_string()),
        Err(e) if crate::laws::inconclusive(&e) => None,
        Err(e) => return Err(e),
    };
    let decomposition = if op.flags().finite_type && star_invertible == Some(true) {
        match invertibility_witness(op, i) {
            Ok(Some(pair)) => Some((pair.left.to_string(), pair.right.to_string())),
            Ok(None) => None,
            Err(e) if crate::laws::inconclusive(&e) => None,
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    let mut local_principal = BTreeMap::new();
    if !i.is_whole() {
        for q in quasi_spectrum(op)?.quasi_maximals {
            local_principal.insert(q.to_string(), i.localize(&q)?.is_principal());
        }
    }
    Ok(InvertibilityVerdict {
        subject: i.to_string(),
        op: op.name().to_string(),
        star_invertible,
        quasi_star_invertible,
        star_finite,
        finite_witness,
        strict_witness,
        decomposition,
        local_principal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::DomainModel;
    use crate::ops::parse_op;

    fn setup(model: &str, op: &str) -> (DomainModel, SemistarOperation) {
        let m = DomainModel::from_name(model).unwrap();
        let op = parse_op(&m, op).unwrap();
        (m, op)
    }

    #[test]
    fn pvd_maximal_ideal_under_valuation_overring() {
        let (m, op) = setup("pvd", "star{T=V@0}");
        let max = m.parse_ideal("V@1").unwrap();
        assert_eq!(inverse(&max).unwrap().to_string(), "V@0");
        assert!(!is_star_invertible(&op, &max).unwrap());
        let h = quasi_star_witness(&op, &max).unwrap().unwrap();
        assert_eq!(h.to_string(), "V@-1");
    }

    #[test]
    fn rank_two_height_one_prime() {
        let (m, op) = setup("rank2", "star{T=Row(0)}");
        let p = m.parse_ideal("Row(1)").unwrap();
        assert_eq!(op.closure(&p).unwrap(), p);
        assert!(!is_star_invertible(&op, &p).unwrap());
        assert!(is_quasi_star_invertible(&op, &p).unwrap());
        assert_eq!(inverse(&p).unwrap().to_string(), "Row(0)");
        assert_eq!(p.colon(&p).unwrap().unwrap().to_string(), "Row(0)");
    }

    #[test]
    fn staircase_maximal_ideal_is_v_invertible() {
        let (m, op) = setup("staircase", "v");
        let max = m.parse_ideal("St{(1,0),(0,1)}").unwrap();
        assert_eq!(op.closure(&max).unwrap(), m.d());
        assert!(is_star_invertible(&op, &max).unwrap());
        let prod = max.mul(&inverse(&max).unwrap()).unwrap();
        assert_eq!(prod, max);
        assert!(prod.leq(&m.d()).unwrap() && prod != m.d());
    }

    #[test]
    fn principal_and_unit_cases() {
        for spec in crate::models::ModelSpec::catalogue() {
            let m = DomainModel::new(spec).unwrap();
            for op in crate::ops::catalogue(&m) {
                let x = m.d().principal_inside().unwrap();
                assert!(is_star_invertible(&op, &x).unwrap(), "{m} {op}");
                assert_eq!(quasi_star_witness(&op, &m.d()).unwrap().as_ref(), Some(op.d_star()), "{m} {op}");
            }
        }
    }

    #[test]
    fn non_fractional_input_is_rejected() {
        let (m, op) = setup("pid", "d");
        let big = m.parse_ideal("(2^-inf 3^0)").unwrap();
        assert!(matches!(is_star_invertible(&op, &big), Err(Error::NotFractional(_))));
        assert!(matches!(is_star_invertible(&op, &m.k()), Err(Error::NotFractional(_))));
        assert!(!is_quasi_star_invertible(&op, &m.k()).unwrap());
    }
}
