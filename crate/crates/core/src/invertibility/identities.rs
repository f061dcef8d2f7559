//! Sampled laws for invertible and quasi-invertible ideals.
//!
//! Inputs that must be (quasi-)invertible are drawn and, when the draw misses,
//! replaced by a principal ideal inside it, so every sample meets the
//! hypothesis of its law.

use crate::error::Result;
use crate::laws::{run_law, LawReport, Verdict};
use crate::models::sample::IdealClass::{self, Fractional, General, Principal};
use crate::models::Ideal;
use crate::ops::{finite_type_of, make_identity, make_v, make_v_of_star_image, stable_of, SemistarOperation};

use super::{
    check_invertible_implies_finite, check_quasi_invertible_implies_finite, inverse, invertibility_witness,
    is_quasi_star_invertible, is_star_finite, is_star_invertible, localization_criterion, quasi_vs_star_bridge,
    star_f_tilde_bridge, strict_finite_witness, verify_witness_pair,
};

struct Ctx {
    op: SemistarOperation,
    ft: SemistarOperation,
    tilde: Option<SemistarOperation>,
    /// `v(D^⋆)`.
    vds: SemistarOperation,
    v: SemistarOperation,
    d: SemistarOperation,
}

impl Ctx {
    fn c(&self, e: &Ideal) -> Result<Ideal> {
        self.op.closure(e)
    }

    fn inv(&self, i: &Ideal) -> Result<bool> {
        Ok(i.is_fractional() && is_star_invertible(&self.op, i)?)
    }

    fn q(&self, i: &Ideal) -> Result<bool> {
        is_quasi_star_invertible(&self.op, i)
    }

    /// `(D^⋆:E)`, with `None` for the zero module.
    fn dual(&self, e: &Ideal) -> Result<Option<Ideal>> {
        self.op.d_star().colon(e)
    }

    fn as_inv(&self, i: &Ideal) -> Result<Ideal> {
        Ok(if self.inv(i)? { i.clone() } else { fallback(i) })
    }

    fn as_qinv(&self, i: &Ideal) -> Result<Ideal> {
        Ok(if self.q(i)? { i.clone() } else { fallback(i) })
    }

    /// `(D^⋆:(D^⋆:E))`.
    fn vd(&self, e: &Ideal) -> Result<Ideal> {
        self.vds.closure(e)
    }

    fn star_pairs(&self) -> Vec<(&SemistarOperation, &SemistarOperation)> {
        let mut pairs = vec![(&self.ft, &self.op), (&self.op, &self.vds)];
        match &self.tilde {
            Some(t) => pairs.extend([(&self.d, t), (t, &self.ft)]),
            None => pairs.push((&self.d, &self.ft)),
        }
        pairs
    }
}

fn fallback(i: &Ideal) -> Ideal {
    i.principal_inside().expect("sampled modules are nonzero")
}

/// First candidate satisfying `keep`.
fn pick(candidates: Vec<Ideal>, mut keep: impl FnMut(&Ideal) -> Result<bool>) -> Result<Option<Ideal>> {
    for c in candidates {
        if keep(&c)? {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

fn all_eq(xs: &[Ideal]) -> bool {
    xs.windows(2).all(|w| w[0] == w[1])
}

/// Runs every invertibility law on `n` seeded samples for `op`.
pub fn law_suite(op: &SemistarOperation, n: usize, seed: u64) -> LawReport {
    let model = op.model().clone();
    let ctx = Ctx {
        op: op.clone(),
        ft: finite_type_of(op),
        tilde: stable_of(op).ok(),
        vds: make_v_of_star_image(op).expect("v(D^op) is nontrivial whenever op is"),
        v: make_v(&model),
        d: make_identity(&model),
    };
    let x = &ctx;
    let mut report = LawReport::new(format!("{model} / {op} invertibility"), seed);
    let labels = [op.name(), "invertibility"];
    let mut law = |name: &str, classes: &[IdealClass], f: &dyn Fn(&[Ideal]) -> Result<Verdict>| {
        report.laws.push(run_law(&model, name, &labels, seed, n, classes, f));
    };

    // Inv(D, ⋆)
    law("inv-0-unit", &[Principal], &|s| Ok((x.inv(&model.d())? && x.inv(&s[0])?).into()));
    law("inv-1-monotone", &[Fractional], &|s| {
        for (a, b) in x.star_pairs() {
            if is_star_invertible(a, &s[0])? && !is_star_invertible(b, &s[0])? {
                return Ok(Verdict::Fail);
            }
        }
        Ok(Verdict::Pass)
    });
    law("inv-2-product", &[Fractional, Fractional], &|s| {
        Ok(((x.inv(&s[0])? && x.inv(&s[1])?) == x.inv(&s[0].mul(&s[1])?)?).into())
    });
    law("inv-3-inverse", &[Fractional], &|s| {
        let i = x.as_inv(&s[0])?;
        x.inv(&inverse(&i)?).map(Verdict::from)
    });
    law("inv-4-divisorial", &[Fractional], &|s| {
        let i = x.as_inv(&s[0])?;
        x.inv(&x.v.closure(&i)?).map(Verdict::from)
    });
    law("inv-implies-quasi", &[Fractional], &|s| Ok((!x.inv(&s[0])? || x.q(&s[0])?).into()));
    law("inv-divisorial-image", &[Fractional], &|s| {
        let i = x.as_inv(&s[0])?;
        Ok((is_star_invertible(&x.vds, &i)? && x.c(&i)? == x.vd(&i)?).into())
    });

    // QInv(D, ⋆)
    law("qinv-0-unit", &[Principal], &|s| Ok((x.q(op.d_star())? && x.q(&s[0])?).into()));
    law("qinv-1-monotone", &[General], &|s| {
        for (a, b) in x.star_pairs() {
            if is_quasi_star_invertible(a, &s[0])? && !is_quasi_star_invertible(b, &s[0])? {
                return Ok(Verdict::Fail);
            }
        }
        Ok(Verdict::Pass)
    });
    law("qinv-2-product", &[General, General], &|s| {
        Ok(((x.q(&s[0])? && x.q(&s[1])?) == x.q(&s[0].mul(&s[1])?)?).into())
    });
    law("qinv-3-dual", &[General], &|s| {
        let i = x.as_qinv(&s[0])?;
        let h = x.dual(&i)?.expect("quasi-invertible modules have nonzero duals");
        x.q(&h).map(Verdict::from)
    });
    law("qinv-4-divisorial", &[General], &|s| {
        let i = x.as_qinv(&s[0])?;
        x.q(&x.vd(&i)?).map(Verdict::from)
    });
    law("quasi-divisorial-image", &[General], &|s| {
        let i = x.as_qinv(&s[0])?;
        Ok((is_quasi_star_invertible(&x.vds, &i)? && x.c(&i)? == x.vd(&i)?).into())
    });

    // J ⊆ I with J^⋆ = I^⋆
    law("sandwich", &[Fractional, General], &|s| {
        let i = x.as_inv(&s[0])?;
        let target = x.c(&i)?;
        let cand = vec![i.intersect(&s[1])?, i.intersect(&x.c(&s[1])?)?];
        match pick(cand, |j| Ok(x.c(j)? == target))? {
            Some(j) => x.inv(&j).map(Verdict::from),
            None => Ok(Verdict::Vacuous),
        }
    });
    law("sandwich-quasi", &[General, General], &|s| {
        let i = x.as_qinv(&s[0])?;
        let target = x.c(&i)?;
        let cand = vec![i.intersect(&s[1])?, i.intersect(&x.c(&s[1])?)?];
        match pick(cand, |j| Ok(x.c(j)? == target))? {
            Some(j) => x.q(&j).map(Verdict::from),
            None => Ok(Verdict::Vacuous),
        }
    });
    law("sandwich-converse", &[General, General], &|s| {
        let j = x.as_qinv(&s[0])?;
        let i = j.add(&s[1].intersect(&x.c(&j)?)?)?;
        Ok((x.q(&i)? && x.dual(&i)? == x.dual(&j)?).into())
    });

    // (b1)–(b8)
    law("b1", &[General, General], &|s| {
        let i = x.as_qinv(&s[0])?;
        let h1 = x.dual(&i)?.expect("nonzero dual");
        let unit = |h: &Ideal| -> Result<bool> { Ok(x.c(&i.mul(h)?)? == *op.d_star()) };
        let cand = vec![s[1].clone(), h1.intersect(&s[1])?, h1.intersect(&x.c(&s[1])?)?];
        let h2 = pick(cand, unit)?.unwrap_or_else(|| h1.clone());
        Ok(all_eq(&[x.c(&h1)?, x.c(&h2)?, h1.clone()]).into())
    });
    law("b2", &[General, General, General], &|s| {
        let i = x.as_qinv(&s[0])?;
        let (j, l) = (&s[1], &s[2]);
        let ij = i.mul(j)?;
        let cand = vec![l.clone(), l.add(&j.intersect(l)?)?, j.add(l)?];
        match pick(cand, |l| ij.leq(&i.mul(l)?))? {
            Some(l) => x.c(j)?.leq(&x.c(&l)?).map(Verdict::from),
            None => Ok(Verdict::Vacuous),
        }
    });
    law("b3", &[General, General], &|s| {
        let i = x.as_qinv(&s[0])?;
        let j = x.c(&i)?.intersect(&s[1])?;
        let l = x.dual(&i)?.expect("nonzero dual").mul(&j)?;
        Ok((x.c(&i.mul(&l)?)? == x.c(&j)?).into())
    });
    law("b4", &[General, General, General], &|s| {
        let (i, j) = (x.as_qinv(&s[0])?, x.as_qinv(&s[1])?);
        let target = x.c(&j)?;
        let built = x.dual(&i)?.expect("nonzero dual").mul(&j)?;
        let l = pick(vec![s[2].clone(), built], |l| Ok(x.c(&i.mul(l)?)? == target))?.expect("(D^op:I)J qualifies");
        x.q(&l).map(Verdict::from)
    });
    law("b5", &[General, General], &|s| {
        let (i, j) = (x.as_qinv(&s[0])?, x.as_qinv(&s[1])?);
        let whole = x.dual(&i.mul(&j)?)?.expect("nonzero dual");
        let parts = x.dual(&i)?.expect("nonzero dual").mul(&x.dual(&j)?.expect("nonzero dual"))?;
        Ok(all_eq(&[whole.clone(), x.c(&whole)?, x.c(&parts)?]).into())
    });
    law("b6", &[General, General], &|s| {
        let (i, j) = (x.as_qinv(&s[0])?, x.as_qinv(&s[1])?);
        let both = x.dual(&i)?.expect("nonzero dual").intersect(&x.dual(&j)?.expect("nonzero dual"))?;
        let z = both.principal_inside().expect("nonzero intersection");
        let l = z.mul(&i)?.mul(&j)?;
        Ok((x.q(&l)? && l.leq(&x.c(&i)?)? && l.leq(&x.c(&j)?)?).into())
    });
    law("b7", &[General, General], &|s| {
        let (i, j) = (x.as_qinv(&s[0])?, x.as_qinv(&s[1])?);
        if !x.q(&i.add(&j)?)? {
            return Ok(Verdict::Vacuous);
        }
        x.q(&x.vd(&i)?.intersect(&x.vd(&j)?)?).map(Verdict::from)
    });
    law("b8", &[General, General], &|s| {
        let (i, j) = (x.as_qinv(&s[0])?, x.as_qinv(&s[1])?);
        if !x.q(&x.vd(&i)?.intersect(&x.vd(&j)?)?)? {
            return Ok(Verdict::Vacuous);
        }
        is_quasi_star_invertible(&x.vds, &i.add(&j)?).map(Verdict::from)
    });

    // (d1)–(d8)
    law("d1", &[Fractional, Fractional], &|s| {
        let i = x.as_inv(&s[0])?;
        let h1 = inverse(&i)?;
        let unit = |h: &Ideal| -> Result<bool> { Ok(x.c(&i.mul(h)?)? == *op.d_star()) };
        let cand = vec![s[1].clone(), h1.intersect(&s[1])?];
        let h2 = pick(cand, unit)?.unwrap_or_else(|| h1.clone());
        Ok((x.c(&h1)? == x.c(&h2)?).into())
    });
    law("d2", &[Fractional, Fractional, Fractional], &|s| {
        let i = x.as_inv(&s[0])?;
        let (j, l) = (&s[1], &s[2]);
        let ij = i.mul(j)?;
        let cand = vec![l.clone(), l.add(&j.intersect(l)?)?, j.add(l)?];
        match pick(cand, |l| ij.leq(&i.mul(l)?))? {
            Some(l) => x.c(j)?.leq(&x.c(&l)?).map(Verdict::from),
            None => Ok(Verdict::Vacuous),
        }
    });
    law("d3", &[Fractional, Fractional], &|s| {
        let i = x.as_inv(&s[0])?;
        let j = x.c(&i)?.intersect(&s[1])?;
        let l = inverse(&i)?.mul(&j)?;
        Ok((l.is_fractional() && x.c(&i.mul(&l)?)? == x.c(&j)?).into())
    });
    law("d4", &[Fractional, Fractional, Fractional], &|s| {
        let (i, j) = (x.as_inv(&s[0])?, x.as_inv(&s[1])?);
        let target = x.c(&j)?;
        let built = inverse(&i)?.mul(&j)?;
        let l = pick(vec![s[2].clone(), built], |l| Ok(x.c(&i.mul(l)?)? == target))?.expect("(D:I)J qualifies");
        let expected = x.c(&i.mul(&inverse(&j)?)?)?;
        let quasi = x.q(&l)? && x.dual(&l)?.as_ref() == Some(&expected);
        let criterion = x.inv(&l)? == (x.c(&inverse(&l)?)? == expected);
        Ok((quasi && criterion).into())
    });
    law("d5", &[Fractional, Fractional], &|s| {
        let (i, j) = (x.as_inv(&s[0])?, x.as_inv(&s[1])?);
        let whole = inverse(&i.mul(&j)?)?;
        Ok((x.c(&whole)? == x.c(&inverse(&i)?.mul(&inverse(&j)?)?)?).into())
    });
    law("d6", &[Fractional, Fractional], &|s| {
        let (i, j) = (x.as_inv(&s[0])?, x.as_inv(&s[1])?);
        let z = inverse(&i)?.intersect(&inverse(&j)?)?.principal_inside().expect("nonzero intersection");
        let l = z.mul(&i)?.mul(&j)?;
        Ok((x.inv(&l)? && l.leq(&i)? && l.leq(&j)?).into())
    });
    // for ⋆-invertibles the divisorial operation is v itself
    law("d7", &[Fractional, Fractional], &|s| {
        let (i, j) = (x.as_inv(&s[0])?, x.as_inv(&s[1])?);
        if !x.inv(&i.add(&j)?)? {
            return Ok(Verdict::Vacuous);
        }
        x.inv(&x.v.closure(&i)?.intersect(&x.v.closure(&j)?)?).map(Verdict::from)
    });
    law("d8", &[Fractional, Fractional], &|s| {
        let (i, j) = (x.as_inv(&s[0])?, x.as_inv(&s[1])?);
        if !x.inv(&x.v.closure(&i)?.intersect(&x.v.closure(&j)?)?)? {
            return Ok(Verdict::Vacuous);
        }
        let sum = i.add(&j)?;
        Ok((sum.is_fractional() && is_star_invertible(&x.v, &sum)?).into())
    });

    // (IJ^v)^⋆ = (I:(D:J)) for ⋆-invertible ⋆-ideals, and the quasi analogue
    law("colon-identity", &[Fractional, Fractional], &|s| {
        let closed = x.c(&s[0])?;
        let i = if x.inv(&closed)? { closed } else { x.c(&fallback(&s[0]))? };
        if !x.inv(&i)? {
            return Ok(Verdict::Vacuous);
        }
        let j = &s[1];
        let right = i.colon(&inverse(j)?)?.unwrap_or_else(|| model.k());
        Ok((x.c(&i.mul(&x.v.closure(j)?)?)? == right).into())
    });
    law("colon-identity-quasi", &[General, General], &|s| {
        let i = x.c(&x.as_qinv(&s[0])?)?;
        let j = &s[1];
        let right = match x.dual(j)? {
            None => model.k(),
            Some(h) => i.colon(&h)?.unwrap_or_else(|| model.k()),
        };
        Ok((x.c(&i.mul(&x.vd(j)?)?)? == right).into())
    });

    // finiteness
    law("strict-finite-equivalence", &[General], &|s| {
        let strict = strict_finite_witness(&x.ft, &s[0])?.is_some();
        Ok((strict == is_star_finite(&x.ft, &s[0])?.is_some()).into())
    });
    law("witness-lemma", &[Fractional], &|s| {
        let inv = is_star_invertible(&x.ft, &s[0])?;
        Ok(match invertibility_witness(&x.ft, &s[0])? {
            Some(pair) => (inv && verify_witness_pair(&x.ft, &s[0], &pair)?).into(),
            None => (!inv).into(),
        })
    });
    law("invertible-implies-finite", &[Fractional], &|s| check_invertible_implies_finite(op, &s[0])?.verdict());
    law("quasi-invertible-implies-finite", &[General], &|s| {
        check_quasi_invertible_implies_finite(op, &s[0])?.verdict()
    });

    // bridges
    law("quasi-vs-star", &[Fractional], &|s| {
        let i = if x.q(&s[0])? { s[0].clone() } else { fallback(&s[0]) };
        quasi_vs_star_bridge(op, &i)?.verdict()
    });
    if x.tilde.is_some() {
        law("ft-vs-tilde", &[General], &|s| star_f_tilde_bridge(op, &s[0])?.verdict());
    }
    law("localization-criterion", &[Fractional], &|s| localization_criterion(&x.ft, &s[0])?.verdict());
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::DomainModel;
    use crate::ops::parse_op;

    #[test]
    fn suite_passes_on_the_examples() {
        for (model, op) in [("pvd", "star{T=V@0}"), ("rank2", "star{T=Row(0)}"), ("semigroup:3,4,5", "v")] {
            let m = DomainModel::from_name(model).unwrap();
            let op = parse_op(&m, op).unwrap();
            let report = law_suite(&op, 30, 11);
            let failures: Vec<_> = report.failures().collect();
            assert!(failures.is_empty(), "{model} {op}: {failures:?}");
        }
    }

    #[test]
    fn catalogue_laws() {
        for spec in crate::models::ModelSpec::catalogue() {
            let m = DomainModel::new(spec).unwrap();
            for op in crate::ops::catalogue(&m) {
                let report = law_suite(&op, 40, 4);
                let inc: usize = report.laws.iter().map(|l| l.inconclusive).sum();
                assert_eq!(inc, 0, "{m} {op}");
                let failures: Vec<_> = report.failures().collect();
                assert!(failures.is_empty(), "{m} {op}: {failures:?}");
            }
        }
    }
}
