//! Totally ordered descriptor families: the discrete and dense rank-one
//! valuation rings, the rank-two lexicographic valuation ring and the
//! pseudo-valuation lattice `{XⁿD, XⁿV}`.
//!
//! In each family a nonzero submodule is a final segment of the value group,
//! so containment is a total order. Every cut type orders so that a larger
//! key means a smaller module.

use num_rational::Rational64;

/// `{v ≥ q}` or `{v > q}` in a valuation ring with value group `ℚ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DenseCut {
    pub bound: Rational64,
    pub open: bool,
}

impl DenseCut {
    pub fn closed(bound: Rational64) -> Self {
        DenseCut { bound, open: false }
    }

    pub fn open(bound: Rational64) -> Self {
        DenseCut { bound, open: true }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: Self) -> Self {
        DenseCut { bound: self.bound + other.bound, open: self.open || other.open }
    }

    /// `(A : B)`: the only open result is `{>a} : {≥b} = {> a-b}`.
    pub fn colon(self, other: Self) -> Self {
        DenseCut { bound: self.bound - other.bound, open: self.open && !other.open }
    }
}

/// Final segment of `ℤ²` under the lexicographic order.
///
/// `col = Some(b)` is `C(a,b) = {v ≥ (a,b)}`; `col = None` is
/// `Row(a) = {v : v₁ ≥ a}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LexCut {
    pub row: i64,
    pub col: Option<i64>,
}

impl LexCut {
    pub fn point(row: i64, col: i64) -> Self {
        LexCut { row, col: Some(col) }
    }

    pub fn row(row: i64) -> Self {
        LexCut { row, col: None }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: Self) -> Self {
        let col = match (self.col, other.col) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
        LexCut { row: self.row + other.row, col }
    }

    pub fn colon(self, other: Self) -> Self {
        match (self.col, other.col) {
            (Some(a), Some(b)) => LexCut::point(self.row - other.row, a - b),
            // z + Row(c) ⊆ C(a,b) forces z₁ + c > a
            (Some(_), None) => LexCut::row(self.row - other.row + 1),
            (None, _) => LexCut::row(self.row - other.row),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tier {
    /// `XⁿD`
    D,
    /// `XⁿV`
    V,
}

/// `XⁿD` or `XⁿV` inside a pseudo-valuation domain `D = k + M`, `V = K[[X]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PvdCut {
    pub exp: i64,
    pub tier: Tier,
}

impl PvdCut {
    pub fn d(exp: i64) -> Self {
        PvdCut { exp, tier: Tier::D }
    }

    pub fn v(exp: i64) -> Self {
        PvdCut { exp, tier: Tier::V }
    }

    /// Position in the chain `… ⊂ XV ⊂ D ⊂ V ⊂ X⁻¹D ⊂ …`.
    pub fn rank(self) -> i64 {
        match self.tier {
            Tier::D => 2 * self.exp,
            Tier::V => 2 * self.exp - 1,
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: Self) -> Self {
        let tier = if self.tier == Tier::D && other.tier == Tier::D { Tier::D } else { Tier::V };
        PvdCut { exp: self.exp + other.exp, tier }
    }

    pub fn colon(self, other: Self) -> Self {
        match (self.tier, other.tier) {
            (Tier::D, Tier::D) => PvdCut::d(self.exp - other.exp),
            // zXᵇV ⊆ XᵃD ⟺ zXᵇ⁻ᵃ ∈ (D:V) = XV
            (Tier::D, Tier::V) => PvdCut::v(self.exp - other.exp + 1),
            (Tier::V, _) => PvdCut::v(self.exp - other.exp),
        }
    }
}

impl PartialOrd for PvdCut {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PvdCut {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.rank().cmp(&other.rank())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn dense_inverse_of_maximal_ideal_is_v() {
        let m = DenseCut::open(q(0, 1));
        let v = DenseCut::closed(q(0, 1));
        assert_eq!(v.colon(m), v);
        assert_eq!(v.colon(v), v);
        assert!(DenseCut::closed(q(1, 2)) < DenseCut::open(q(1, 2)));
    }

    #[test]
    fn lex_colons() {
        let d = LexCut::point(0, 0);
        let p = LexCut::row(1);
        assert_eq!(d.colon(p), LexCut::row(0));
        assert_eq!(p.colon(p), LexCut::row(0));
        assert_eq!(LexCut::row(1).mul(LexCut::row(-1)), LexCut::row(0));
        assert!(LexCut::row(1) > LexCut::point(0, 5));
    }

    #[test]
    fn pvd_chain_order() {
        assert!(PvdCut::v(1) > PvdCut::d(0));
        assert!(PvdCut::d(0) > PvdCut::v(0));
        assert_eq!(PvdCut::d(0).colon(PvdCut::v(1)), PvdCut::v(0));
        assert_eq!(PvdCut::d(0).colon(PvdCut::v(0)), PvdCut::v(1));
        assert_eq!(PvdCut::v(1).mul(PvdCut::v(0)), PvdCut::v(1));
    }
}
