//! Random descriptors for property checks, and shrinking of counterexamples.

use num_rational::Rational64;
use rand::Rng;

use super::cuts::{DenseCut, LexCut, PvdCut, Tier};
use super::{staircase, DomainModel, Ideal, ModelKind, Shape};

/// Exponents are drawn from `-BOUND..=BOUND`.
pub const BOUND: i64 = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IdealClass {
    /// Any descriptor, including non-fractional ones and `K`.
    General,
    Fractional,
    FinitelyGenerated,
    Principal,
    /// Contained in `D`.
    Integral,
}

fn small(rng: &mut impl Rng) -> i64 {
    rng.gen_range(-BOUND..=BOUND)
}

fn dyadic(rng: &mut impl Rng) -> Rational64 {
    Rational64::new(rng.gen_range(-16..=16), 1 << rng.gen_range(0..=2))
}

fn fg_shape(model: &DomainModel, principal: bool, rng: &mut impl Rng) -> Shape {
    let count = if principal { 1 } else { rng.gen_range(1..=4) };
    match model.kind() {
        ModelKind::SemigroupRing => {
            let s = model.semigroup().unwrap();
            if principal {
                Shape::Semigroup(vec![small(rng)])
            } else {
                let base = small(rng);
                let gens: Vec<i64> = (0..count).map(|_| base + rng.gen_range(0..=s.max_generator() + 2)).collect();
                Shape::Semigroup(s.normalize(&gens))
            }
        }
        ModelKind::ValuationRank1Discrete => Shape::Discrete(small(rng)),
        ModelKind::ValuationRank1Dense => Shape::Dense(DenseCut::closed(dyadic(rng))),
        ModelKind::ValuationRank2Lex => Shape::Lex(LexCut::point(small(rng), small(rng))),
        ModelKind::PseudoValuationLattice => Shape::Pvd(PvdCut::d(small(rng))),
        ModelKind::SemilocalPid => Shape::Pid([Some(small(rng)), Some(small(rng))]),
        ModelKind::Staircase2D => {
            let gens = (0..count).map(|_| [Some(small(rng)), Some(small(rng))]).collect();
            Shape::Stair(staircase::minimize(gens))
        }
    }
}

/// A descriptor outside the finitely generated part of the family, if the
/// family has any.
fn non_fg_shape(model: &DomainModel, fractional: bool, rng: &mut impl Rng) -> Option<Shape> {
    Some(match model.kind() {
        ModelKind::ValuationRank1Dense => Shape::Dense(DenseCut::open(dyadic(rng))),
        ModelKind::ValuationRank2Lex => Shape::Lex(LexCut::row(small(rng))),
        ModelKind::PseudoValuationLattice => Shape::Pvd(PvdCut::v(small(rng))),
        ModelKind::SemilocalPid if !fractional => {
            let mut e = [Some(small(rng)), Some(small(rng))];
            e[rng.gen_range(0..2)] = None;
            Shape::Pid(e)
        }
        ModelKind::Staircase2D if !fractional => {
            let n = rng.gen_range(1..=3);
            let gens = (0..n)
                .map(|_| {
                    let mut p = [Some(small(rng)), Some(small(rng))];
                    if rng.gen_bool(0.5) {
                        p[rng.gen_range(0..2)] = None;
                    }
                    p
                })
                .collect();
            Shape::Stair(staircase::minimize(gens))
        }
        _ => return None,
    })
}

/// Draws a descriptor of the requested class.
pub fn sample(model: &DomainModel, class: IdealClass, rng: &mut impl Rng) -> Ideal {
    match class {
        IdealClass::Principal => model.ideal(fg_shape(model, true, rng)),
        IdealClass::FinitelyGenerated => model.ideal(fg_shape(model, false, rng)),
        IdealClass::Fractional | IdealClass::General => {
            let general = class == IdealClass::General;
            if general && rng.gen_bool(0.04) {
                return model.k();
            }
            if rng.gen_bool(0.3) {
                if let Some(s) = non_fg_shape(model, !general, rng) {
                    return model.ideal(s);
                }
            }
            model.ideal(fg_shape(model, false, rng))
        }
        IdealClass::Integral => {
            let i = sample(model, IdealClass::Fractional, rng);
            i.intersect(&model.d()).unwrap()
        }
    }
}

/// Rough complexity used to order shrink candidates.
pub fn size(i: &Ideal) -> i64 {
    let e = |x: Option<i64>| x.map_or(BOUND + 1, i64::abs);
    match i.shape() {
        Shape::Whole => 0,
        Shape::Semigroup(g) => g.len() as i64 * 20 + g.iter().map(|x| x.abs()).sum::<i64>(),
        Shape::Discrete(n) => n.abs(),
        Shape::Dense(c) => (c.bound.numer().abs() + c.bound.denom()) + i64::from(c.open),
        Shape::Lex(c) => c.row.abs() + e(c.col),
        Shape::Pvd(c) => c.exp.abs() + i64::from(c.tier == Tier::V),
        Shape::Pid(x) => e(x[0]) + e(x[1]),
        Shape::Stair(g) => g.len() as i64 * 20 + g.iter().map(|p| e(p[0]) + e(p[1])).sum::<i64>(),
    }
}

fn toward_zero(n: i64) -> Vec<i64> {
    match n {
        0 => vec![],
        n if n.abs() == 1 => vec![0],
        n => vec![0, n / 2, n - n.signum()],
    }
}

/// Strictly simpler descriptors of the same model and class kind.
pub fn shrink(i: &Ideal) -> Vec<Ideal> {
    let m = i.model();
    let mut out: Vec<Shape> = Vec::new();
    match i.shape() {
        Shape::Whole => {}
        Shape::Semigroup(g) => {
            let s = m.semigroup().unwrap();
            if g.len() > 1 {
                for k in 0..g.len() {
                    let mut h = g.clone();
                    h.remove(k);
                    out.push(Shape::Semigroup(s.normalize(&h)));
                }
            }
            for t in toward_zero(g[0]) {
                let h: Vec<i64> = g.iter().map(|x| x - g[0] + t).collect();
                out.push(Shape::Semigroup(s.normalize(&h)));
            }
        }
        Shape::Discrete(n) => out.extend(toward_zero(*n).into_iter().map(Shape::Discrete)),
        Shape::Dense(c) => {
            if c.open {
                out.push(Shape::Dense(DenseCut::closed(c.bound)));
            }
            for t in toward_zero(c.bound.to_integer()) {
                out.push(Shape::Dense(DenseCut { bound: t.into(), open: c.open }));
            }
        }
        Shape::Lex(c) => {
            for r in toward_zero(c.row) {
                out.push(Shape::Lex(LexCut { row: r, col: c.col }));
            }
            if let Some(b) = c.col {
                out.extend(toward_zero(b).into_iter().map(|b| Shape::Lex(LexCut::point(c.row, b))));
            }
        }
        Shape::Pvd(c) => {
            out.extend(toward_zero(c.exp).into_iter().map(|e| Shape::Pvd(PvdCut { exp: e, tier: c.tier })));
        }
        Shape::Pid(x) => {
            for k in 0..2 {
                if let Some(v) = x[k] {
                    for t in toward_zero(v) {
                        let mut y = *x;
                        y[k] = Some(t);
                        out.push(Shape::Pid(y));
                    }
                }
            }
        }
        Shape::Stair(g) => {
            if g.len() > 1 {
                for k in 0..g.len() {
                    let mut h = g.clone();
                    h.remove(k);
                    out.push(Shape::Stair(h));
                }
            }
            for k in 0..g.len() {
                for c in 0..2 {
                    if let Some(v) = g[k][c] {
                        for t in toward_zero(v) {
                            let mut h = g.clone();
                            h[k][c] = Some(t);
                            out.push(Shape::Stair(staircase::minimize(h)));
                        }
                    }
                }
            }
        }
    }
    let here = size(i);
    let mut ideals: Vec<Ideal> = out.into_iter().map(|s| m.ideal(s)).filter(|j| size(j) < here).collect();
    ideals.dedup();
    ideals
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::ModelSpec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn classes_respected() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for spec in ModelSpec::catalogue() {
            let m = DomainModel::new(spec).unwrap();
            for _ in 0..200 {
                assert!(sample(&m, IdealClass::Principal, &mut rng).is_principal());
                assert!(sample(&m, IdealClass::FinitelyGenerated, &mut rng).is_finitely_generated());
                assert!(sample(&m, IdealClass::Fractional, &mut rng).is_fractional());
                assert!(sample(&m, IdealClass::Integral, &mut rng).is_integral());
            }
        }
    }

    #[test]
    fn shrink_decreases() {
        let m = DomainModel::from_name("staircase").unwrap();
        let i = m.parse_ideal("St{(0,5),(3,1),(6,-2)}").unwrap();
        let c = shrink(&i);
        assert!(!c.is_empty());
        assert!(c.iter().all(|j| size(j) < size(&i)));
    }
}
