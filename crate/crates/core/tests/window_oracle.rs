//! Descriptor arithmetic checked against brute-force membership over a
//! finite window of exponents.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use semistar::models::sample::{sample, IdealClass};
use semistar::models::{DomainModel, Ideal, Shape};

const W: i64 = 30;
const Z: i64 = 10;
const TRIALS: usize = 300;

/// Exponent vectors of monomials/values; second coordinate unused in rank-one
/// models.
type Mono = (i64, i64);

fn member(i: &Ideal, z: Mono) -> bool {
    let m = i.model();
    let ge = |bound: Option<i64>, v: i64| bound.is_none_or(|b| v >= b);
    match i.shape() {
        Shape::Whole => true,
        Shape::Semigroup(g) => {
            let s = m.semigroup().unwrap();
            g.iter().any(|&x| s.contains(z.0 - x))
        }
        Shape::Discrete(n) => z.0 >= *n,
        Shape::Lex(c) => match c.col {
            Some(b) => (z.0, z.1) >= (c.row, b),
            None => z.0 >= c.row,
        },
        // second coordinate 1 marks a unit outside the residue field
        Shape::Pvd(c) => match c.tier {
            semistar::models::cuts::Tier::V => z.0 >= c.exp,
            semistar::models::cuts::Tier::D => z.0 > c.exp || (z.0 == c.exp && z.1 == 0),
        },
        Shape::Pid(e) => ge(e[0], z.0) && ge(e[1], z.1),
        Shape::Stair(g) => g.iter().any(|p| ge(p[0], z.0) && ge(p[1], z.1)),
        Shape::Dense(_) => unreachable!(),
    }
}

fn grid(model: &DomainModel, r: i64) -> Vec<Mono> {
    use semistar::models::ModelKind::*;
    match model.kind() {
        SemigroupRing | ValuationRank1Discrete => (-r..=r).map(|a| (a, 0)).collect(),
        PseudoValuationLattice => (-r..=r).flat_map(|a| [(a, 0), (a, 1)]).collect(),
        _ => (-r..=r).flat_map(|a| (-r..=r).map(move |b| (a, b))).collect(),
    }
}

fn mono_mul(model: &DomainModel, x: Mono, y: Mono) -> Mono {
    if model.kind() == semistar::models::ModelKind::PseudoValuationLattice {
        (x.0 + y.0, x.1.max(y.1))
    } else {
        (x.0 + y.0, x.1 + y.1)
    }
}

fn in_product(a: &Ideal, b: &Ideal, z: Mono, w: i64) -> bool {
    let m = a.model();
    let pvd = m.kind() == semistar::models::ModelKind::PseudoValuationLattice;
    grid(m, w).into_iter().filter(|&x| member(a, x)).any(|x| {
        if pvd {
            [0, 1].into_iter().any(|f| x.1.max(f) == z.1 && member(b, (z.0 - x.0, f)))
        } else {
            member(b, (z.0 - x.0, z.1 - x.1))
        }
    })
}

fn in_colon(a: &Ideal, b: &Ideal, z: Mono, w: i64) -> bool {
    let m = a.model();
    grid(m, w).into_iter().filter(|&y| member(b, y)).all(|y| member(a, mono_mul(m, z, y)))
}

fn check_model(name: &str, with_sum: bool) {
    let model = DomainModel::from_name(name).unwrap();
    use semistar::models::ModelKind::*;
    let two_d = matches!(model.kind(), ValuationRank2Lex | SemilocalPid | Staircase2D);
    let (w, zr, trials) = if two_d { (W / 2 + 4, Z / 2 + 1, TRIALS / 3) } else { (W, Z, TRIALS) };
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let zs = grid(&model, zr);
    for _ in 0..trials {
        let a = sample(&model, IdealClass::General, &mut rng);
        let b = sample(&model, IdealClass::General, &mut rng);
        let inter = a.intersect(&b).unwrap();
        let prod = a.mul(&b).unwrap();
        let sum = a.add(&b).unwrap();
        let colon = a.colon(&b).unwrap();
        let contained = grid(&model, w).into_iter().all(|z| !member(&a, z) || member(&b, z));
        assert_eq!(a.leq(&b).unwrap(), contained, "{name}: {a} ⊆ {b}");
        for &z in &zs {
            assert_eq!(member(&inter, z), member(&a, z) && member(&b, z), "{name}: {a} ∩ {b} at {z:?}");
            if with_sum {
                assert_eq!(member(&sum, z), member(&a, z) || member(&b, z), "{name}: {a} + {b} at {z:?}");
            }
            if !(a.is_whole() || b.is_whole()) {
                assert_eq!(member(&prod, z), in_product(&a, &b, z, w), "{name}: {a}·{b} at {z:?}");
            }
            if !b.is_whole() {
                let expect = in_colon(&a, &b, z, w);
                let got = colon.as_ref().is_some_and(|c| member(c, z));
                assert_eq!(got, expect, "{name}: ({a} : {b}) at {z:?}");
            }
        }
    }
}

#[test]
fn semigroup_window() {
    check_model("semigroup:3,4,5", true);
    check_model("semigroup:3,5", true);
}

#[test]
fn dvr_window() {
    check_model("dvr", true);
}

#[test]
fn rank2_window() {
    check_model("rank2", true);
}

#[test]
fn pvd_window() {
    check_model("pvd", true);
}

#[test]
fn staircase_window() {
    check_model("staircase", true);
}

#[test]
fn pid_window() {
    // Sums in the PID are gcds, not unions of monomial sets.
    check_model("pid", false);
}

#[test]
fn dense_window() {
    use num_rational::Rational64;
    let model = DomainModel::from_name("dense").unwrap();
    let mem = |i: &Ideal, q: Rational64| match i.shape() {
        Shape::Whole => true,
        Shape::Dense(c) => if c.open { q > c.bound } else { q >= c.bound },
        _ => unreachable!(),
    };
    // values of z on a coarse grid, witnesses on a fine one
    let coarse: Vec<Rational64> = (-48..=48).map(|n| Rational64::new(n, 8)).collect();
    let fine: Vec<Rational64> = (-40 * 64..=40 * 64).map(|n| Rational64::new(n, 64)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0xd3);
    for _ in 0..TRIALS / 3 {
        let a = sample(&model, IdealClass::General, &mut rng);
        let b = sample(&model, IdealClass::General, &mut rng);
        if a.is_whole() || b.is_whole() {
            continue;
        }
        let (prod, colon) = (a.mul(&b).unwrap(), a.colon(&b).unwrap().unwrap());
        for &z in &coarse {
            let in_prod = fine.iter().any(|&x| mem(&a, x) && mem(&b, z - x));
            assert_eq!(mem(&prod, z), in_prod, "{a}·{b} at {z}");
            let in_colon = fine.iter().filter(|&&y| mem(&b, y)).all(|&y| mem(&a, z + y));
            assert_eq!(mem(&colon, z), in_colon, "({a} : {b}) at {z}");
            assert_eq!(mem(&a.add(&b).unwrap(), z), mem(&a, z) || mem(&b, z));
            assert_eq!(mem(&a.intersect(&b).unwrap(), z), mem(&a, z) && mem(&b, z));
        }
    }
}
