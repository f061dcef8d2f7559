use crate::error::{Error, Result};
use crate::models::PrimeSite;

use super::SemistarOperation;

/// Quasi-⋆-primes, `Π^⋆` and `ℳ(⋆)` computed over the model's prime list.
#[derive(Debug, Clone)]
pub struct QuasiSpectrum {
    pub op: SemistarOperation,
    /// Primes `P` with `P^⋆ ∩ D = P`.
    pub quasi_primes: Vec<PrimeSite>,
    /// Inclusion-maximal members of `pi_star`.
    pub quasi_maximals: Vec<PrimeSite>,
    /// Primes `P` with `P^⋆ ∩ D ≠ D`.
    pub pi_star: Vec<PrimeSite>,
}

impl QuasiSpectrum {
    pub fn maximal_names(&self) -> Vec<String> {
        self.quasi_maximals.iter().map(|p| p.to_string()).collect()
    }
}

pub fn quasi_spectrum(op: &SemistarOperation) -> Result<QuasiSpectrum> {
    let model = op.model();
    let d = model.d();
    if op.d_star().is_whole() {
        return Err(Error::TrivialOperation(op.to_string()));
    }
    let mut quasi_primes = Vec::new();
    let mut pi_star = Vec::new();
    for p in model.primes() {
        let contracted = op.closure(&p.ideal())?.intersect(&d)?;
        if contracted != d {
            pi_star.push(p.clone());
        }
        if contracted == p.ideal() {
            quasi_primes.push(p);
        }
    }
    let mut quasi_maximals = Vec::new();
    for p in &pi_star {
        let mut maximal = true;
        for q in &pi_star {
            if q != p && p.ideal().leq(&q.ideal())? {
                maximal = false;
            }
        }
        if maximal {
            quasi_maximals.push(p.clone());
        }
    }
    Ok(QuasiSpectrum { op: op.clone(), quasi_primes, quasi_maximals, pi_star })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::DomainModel;
    use crate::ops::{finite_type_of, make_identity, make_v, parse_op};

    fn names(model: &str, op: &str) -> Vec<String> {
        let m = DomainModel::from_name(model).unwrap();
        quasi_spectrum(&parse_op(&m, op).unwrap()).unwrap().maximal_names()
    }

    #[test]
    fn worked_spectra() {
        assert_eq!(names("semigroup:3,4,5", "t"), ["Id{3,4,5}"]);
        assert_eq!(names("semigroup:3,4,5", "v"), ["Id{3,4,5}"]);
        assert_eq!(names("pvd", "ft(star{T=V@0})"), ["V@1"]);
        assert_eq!(names("pid", "d"), ["(2^1 3^0)", "(2^0 3^1)"]);
        assert_eq!(names("rank2", "spectral{Row(1)}"), ["Row(1)"]);
        assert_eq!(names("rank2", "d"), ["C(0,1)"]);
        assert!(names("dense", "v").is_empty());
        assert_eq!(names("dense", "t"), ["Seg(>0)"]);
        assert_eq!(names("staircase", "t"), ["St{(1,0)}", "St{(0,1)}"]);
    }

    #[test]
    fn finite_type_and_stable_share_maximals() {
        for spec in crate::models::ModelSpec::catalogue() {
            let m = DomainModel::new(spec).unwrap();
            for op in [make_identity(&m), make_v(&m)] {
                let f = quasi_spectrum(&finite_type_of(&op)).unwrap();
                let s = quasi_spectrum(&crate::ops::stable_of(&op).unwrap()).unwrap();
                assert_eq!(f.maximal_names(), s.maximal_names(), "{m} {op}");
            }
        }
    }
}
