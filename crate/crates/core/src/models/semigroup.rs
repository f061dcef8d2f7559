//! Numerical semigroups and their relative ideals.
//!
//! A monomial fractional ideal of `K[[S]]` is a set `I ⊆ ℤ` bounded below with
//! `I + S ⊆ I`. Past `min(I) + conductor` every integer is a member, so an
//! ideal is pinned down by a finite window and stored as its minimal
//! generators.

use crate::error::{Error, Result};

/// Hard stop for scans looking for the first member of a relative ideal.
const SCAN_LIMIT: i64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumericalSemigroup {
    generators: Vec<i64>,
    conductor: i64,
    members: Vec<bool>,
}

impl NumericalSemigroup {
    pub fn new(raw: &[i64]) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::InvalidModel("semigroup needs at least one generator".into()));
        }
        if raw.iter().any(|&g| g <= 0) {
            return Err(Error::InvalidModel("semigroup generators must be positive".into()));
        }
        let g = raw.iter().fold(0i64, |acc, &x| num_integer::gcd(acc, x));
        if g != 1 {
            return Err(Error::InvalidModel(format!(
                "semigroup generators {raw:?} have gcd {g}, not a numerical semigroup"
            )));
        }
        let lo = *raw.iter().min().unwrap();
        let hi = *raw.iter().max().unwrap();
        // Schur bound on the Frobenius number.
        let bound = (lo * hi + 1) as usize;
        let mut reach = vec![false; bound + 1];
        reach[0] = true;
        for z in 1..=bound {
            reach[z] = raw.iter().any(|&g| z as i64 >= g && reach[z - g as usize]);
        }
        let conductor = reach.iter().rposition(|&r| !r).map(|i| i as i64 + 1).unwrap_or(0);
        let members = reach[..conductor as usize].to_vec();

        let contains = |z: i64| z >= 0 && (z >= conductor || members[z as usize]);
        let mut generators: Vec<i64> = raw
            .iter()
            .copied()
            .filter(|&g| !(1..g).any(|s| contains(s) && contains(g - s)))
            .collect();
        generators.sort_unstable();
        generators.dedup();
        Ok(NumericalSemigroup { generators, conductor, members })
    }

    pub fn generators(&self) -> &[i64] {
        &self.generators
    }

    pub fn conductor(&self) -> i64 {
        self.conductor
    }

    pub fn max_generator(&self) -> i64 {
        *self.generators.last().unwrap()
    }

    pub fn contains(&self, z: i64) -> bool {
        z >= 0 && (z >= self.conductor || self.members[z as usize])
    }

    /// Membership of `z` in the relative ideal generated by `gens`.
    pub fn in_ideal(&self, gens: &[i64], z: i64) -> bool {
        gens.iter().any(|&g| self.contains(z - g))
    }

    /// Minimal generators of the relative ideal whose membership is `pred`.
    ///
    /// `pred` must describe a relative ideal with no members below `lo`.
    pub fn from_predicate(&self, lo: i64, pred: impl Fn(i64) -> bool) -> Vec<i64> {
        let first = (lo..lo + SCAN_LIMIT)
            .find(|&z| pred(z))
            .expect("relative ideal has no member in scan range");
        let hi = first + self.conductor + self.max_generator();
        (first..hi)
            .filter(|&x| pred(x) && self.generators.iter().all(|&g| !pred(x - g)))
            .collect()
    }

    pub fn normalize(&self, raw: &[i64]) -> Vec<i64> {
        let lo = *raw.iter().min().unwrap();
        self.from_predicate(lo, |z| self.in_ideal(raw, z))
    }

    pub fn add(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let mut all = a.to_vec();
        all.extend_from_slice(b);
        self.normalize(&all)
    }

    pub fn mul(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let sums: Vec<i64> = a.iter().flat_map(|x| b.iter().map(move |y| x + y)).collect();
        self.normalize(&sums)
    }

    pub fn intersect(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let lo = a[0].max(b[0]);
        self.from_predicate(lo, |z| self.in_ideal(a, z) && self.in_ideal(b, z))
    }

    /// `(A : B) = { z : z + B ⊆ A }`; never zero for nonzero relative ideals.
    pub fn colon(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let lo = a[0] - b[0];
        self.from_predicate(lo, |z| b.iter().all(|&y| self.in_ideal(a, z + y)))
    }

    pub fn leq(&self, a: &[i64], b: &[i64]) -> bool {
        a.iter().all(|&x| self.in_ideal(b, x))
    }
}
