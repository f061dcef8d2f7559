//! Content ideals and the Nagata ring `Na(D,⋆) = D[T]_{N(⋆)}`.
//!
//! The ring itself is never built. Membership in `N(⋆)` is decided from the
//! content, and statements about extended ideals are reduced to local
//! principality at the quasi-`⋆_f`-maximal ideals.

mod poly;
pub mod sample;

pub use poly::{is_integral, Coeff, ContentPolynomial};
pub use sample::{content_bridge_suite, glue_suite, random_glue_list, random_polynomial, saturation_check};

use crate::error::{Error, Result};
use crate::invertibility::{is_quasi_star_invertible, is_star_invertible};
use crate::models::{Ideal, PrimeSite};
use crate::ops::{finite_type_of, quasi_spectrum, stable_of, SemistarOperation};
use crate::report::{settle, CheckReport};

/// Quasi-maximal ideals of `op`, empty when `D^⋆ = K`.
fn quasi_maximals(op: &SemistarOperation) -> Result<Vec<PrimeSite>> {
    match quasi_spectrum(op) {
        Ok(s) => Ok(s.quasi_maximals),
        Err(Error::TrivialOperation(_)) => Ok(Vec::new()),
        Err(e) => Err(e),
    }
}

fn require_finite_type(op: &SemistarOperation) -> Result<()> {
    if op.flags().finite_type {
        Ok(())
    } else {
        Err(Error::NotFiniteType(op.to_string()))
    }
}

fn require_integral(h: &ContentPolynomial) -> Result<Ideal> {
    let c = h.content()?;
    if !c.is_integral() {
        return Err(Error::Usage(format!("{h} has coefficients outside D")));
    }
    Ok(c)
}

/// `h ∈ N(⋆)`, i.e. `c(h)^⋆ = D^⋆`.
pub fn in_n_star(op: &SemistarOperation, h: &ContentPolynomial) -> Result<bool> {
    Ok(op.closure(&require_integral(h)?)? == *op.d_star())
}

/// The extension `base·Na(D,⋆)`, kept symbolic.
#[derive(Debug, Clone)]
pub struct NagataIdealRef {
    pub op: SemistarOperation,
    pub base: Ideal,
}

impl NagataIdealRef {
    pub fn new(op: &SemistarOperation, base: &Ideal) -> Self {
        NagataIdealRef { op: op.clone(), base: base.clone() }
    }

    /// Equality of extensions, read off from the `⋆̃`-closures of the bases.
    pub fn same_extension(&self, other: &NagataIdealRef) -> Result<bool> {
        match stable_of(&self.op) {
            Ok(tilde) => Ok(tilde.closure(&self.base)? == tilde.closure(&other.base)?),
            // no quasi-⋆_f-maximal ideals: Na(D,⋆) is the field K(T)
            Err(Error::TrivialOperation(_)) => Ok(true),
            Err(e) => Err(e),
        }
    }
}

/// Whether `base·Na(D,⋆)` is invertible, decided by local principality of
/// `base` at every quasi-`⋆`-maximal ideal.
pub fn nagata_invertible(r: &NagataIdealRef) -> Result<bool> {
    require_finite_type(&r.op)?;
    if !r.base.is_finitely_generated() {
        return Err(Error::NotFinitelyGenerated(r.base.to_string()));
    }
    for q in quasi_maximals(&r.op)? {
        if !r.base.localize(&q)?.is_principal() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `c(h)` ⋆-invertible iff `c(h)` is principal at every quasi-⋆-maximal
/// ideal (equivalently `h·Na = c(h)·Na`), and, for stable operations or when
/// `D^⋆ = D`, iff `c(h)` is quasi-⋆-invertible. For every operation
/// ⋆-invertibility of `c(h)` is compared with quasi-`⋆̃`-invertibility, which
/// agrees on finitely generated ideals.
pub fn content_invertible_bridge(op: &SemistarOperation, h: &ContentPolynomial) -> Result<CheckReport> {
    require_finite_type(op)?;
    let c = require_integral(h)?;
    let mut base = CheckReport::new("content-invertible", op);
    base.fact("polynomial", h.to_string());
    base.fact("content", c.to_string());
    settle(base, |r| {
        let invertible = is_star_invertible(op, &c)?;
        let mut local = true;
        for q in quasi_maximals(op)? {
            let principal = c.localize(&q)?.is_principal();
            r.fact(&format!("local-principal {q}"), principal);
            local &= principal;
        }
        let nagata = nagata_invertible(&NagataIdealRef::new(op, &c))?;
        let quasi = is_quasi_star_invertible(op, &c)?;
        r.fact("invertible", invertible);
        r.fact("locally-principal", local);
        r.fact("nagata-invertible", nagata);
        r.fact("quasi-invertible", quasi);
        r.require("c(h) invertible <=> h Na = c(h) Na", invertible == local);
        r.require("nagata-invertible agrees with local principality", nagata == local);
        let applies = op.flags().stable || op.d_star() == &op.model().d();
        r.fact("quasi-clause-applies", applies);
        if applies {
            r.require("c(h) invertible <=> c(h) quasi-invertible", invertible == quasi);
        }
        if let Ok(tilde) = stable_of(op) {
            let quasi_tilde = is_quasi_star_invertible(&tilde, &c)?;
            r.fact("quasi-tilde-invertible", quasi_tilde);
            r.require("c(h) invertible <=> c(h) quasi-tilde-invertible", invertible == quasi_tilde);
        }
        Ok(())
    })
}

/// Glues generators of an invertible extended ideal into one generator and
/// verifies the local equality `H·D_Q(T) = h·D_Q(T)` at every `Q ∈ ℳ(⋆_f)`.
///
/// Locally the content of the glued polynomial must equal the sum of the
/// generator contents, be principal, and be generated by one coefficient.
pub fn glue_principal_generator(
    op: &SemistarOperation,
    gens: &[ContentPolynomial],
) -> Result<(ContentPolynomial, CheckReport)> {
    require_finite_type(op)?;
    let contents = gens.iter().map(require_integral).collect::<Result<Vec<_>>>()?;
    let sum = contents
        .iter()
        .skip(1)
        .try_fold(contents.first().cloned().ok_or_else(|| Error::Usage("no generators".into()))?, |a, b| a.add(b))?;
    if !nagata_invertible(&NagataIdealRef::new(op, &sum))? {
        return Err(Error::NotInvertibleExtension(format!("content sum {sum} under {op}")));
    }
    let h = ContentPolynomial::glue(gens)?;
    let mut base = CheckReport::new("glue", op);
    base.fact("generators", gens.iter().map(|g| g.to_string()).collect::<Vec<_>>());
    base.fact("offsets", ContentPolynomial::glue_offsets(gens));
    base.witness("glued", &h);
    let report = settle(base, |r| {
        let ch = h.content()?;
        for c in &contents {
            r.require("c(h)^op contains each c(h_i)^op", op.closure(c)?.leq(&op.closure(&ch)?)?);
        }
        let ft = finite_type_of(op);
        for q in quasi_maximals(&ft)? {
            let local = ch.localize(&q)?;
            let mut parts = contents[0].localize(&q)?;
            for c in &contents[1..] {
                parts = parts.add(&c.localize(&q)?)?;
            }
            r.require(&format!("c(h)D_Q = sum of c(h_i)D_Q at {q}"), local == parts);
            r.require(&format!("c(h)D_Q principal at {q}"), local.is_principal());
            let mut generator = None;
            for (k, coeff) in h.terms() {
                if coeff.principal(h.model())?.localize(&q)? == local {
                    generator = Some(*k);
                    break;
                }
            }
            match generator {
                Some(k) => r.fact(&format!("generator degree {q}"), k),
                None => r.require(&format!("a coefficient generates c(h)D_Q at {q}"), false),
            }
        }
        Ok(())
    })?;
    Ok((h, report))
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

    fn poly(m: &DomainModel, s: &str) -> ContentPolynomial {
        ContentPolynomial::parse(m, s).unwrap()
    }

    #[test]
    fn n_star_membership() {
        let (m, d) = setup("pid", "d");
        assert!(in_n_star(&d, &poly(&m, "2 + 3*T")).unwrap());
        assert!(in_n_star(&d, &poly(&m, "1")).unwrap());
        assert!(!in_n_star(&d, &poly(&m, "2 + 4*T")).unwrap());
        assert!(matches!(in_n_star(&d, &poly(&m, "(1/2)")), Err(Error::Usage(_))));
        // content inside the quasi-maximal (3) of the spectral operation
        let (m, s) = setup("pid", "spectral{(2^1 3^0)}");
        assert!(in_n_star(&s, &poly(&m, "3 + 9*T")).unwrap());
        let (m, t) = setup("semigroup:3,4,5", "t");
        assert!(!in_n_star(&t, &poly(&m, "X^3 + X^4*T")).unwrap());
        assert!(in_n_star(&t, &poly(&m, "X^3 + T")).unwrap());
    }

    #[test]
    fn nagata_invertibility() {
        let (m, d) = setup("pid", "d");
        let base = m.parse_ideal("(2^1 3^1)").unwrap();
        assert!(nagata_invertible(&NagataIdealRef::new(&d, &base)).unwrap());
        let (m, t) = setup("semigroup:3,4,5", "t");
        let max = m.parse_ideal("Id{3,4,5}").unwrap();
        assert!(!nagata_invertible(&NagataIdealRef::new(&t, &max)).unwrap());
        let (m, p) = setup("rank2", "star{T=Row(0)}");
        let base = m.parse_ideal("C(1,0)").unwrap();
        assert!(nagata_invertible(&NagataIdealRef::new(&p, &base)).unwrap());
        let row = m.parse_ideal("Row(1)").unwrap();
        assert!(matches!(nagata_invertible(&NagataIdealRef::new(&p, &row)), Err(Error::NotFinitelyGenerated(_))));
        let (_, v) = setup("semigroup:3,4,5", "v");
        assert!(matches!(nagata_invertible(&NagataIdealRef::new(&v, &max)), Err(Error::NotFiniteType(_))));
    }

    #[test]
    fn extensions_compare_by_tilde_closure() {
        let (m, t) = setup("semigroup:3,4,5", "t");
        let a = NagataIdealRef::new(&t, &m.parse_ideal("Id{3,4,5}").unwrap());
        let b = NagataIdealRef::new(&t, &m.parse_ideal("Id{3,4}").unwrap());
        let c = NagataIdealRef::new(&t, &m.parse_ideal("Id{3,4,5}").unwrap());
        assert!(!a.same_extension(&b).unwrap());
        assert!(a.same_extension(&c).unwrap());
    }

    #[test]
    fn content_bridge_examples() {
        let (m, d) = setup("pid", "d");
        let r = content_invertible_bridge(&d, &poly(&m, "2 + 3*T")).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.facts["invertible"], true);
        let r = content_invertible_bridge(&d, &poly(&m, "7")).unwrap();
        assert_eq!(r.facts["locally-principal"], true);
        let (m, t) = setup("semigroup:3,4,5", "t");
        let r = content_invertible_bridge(&t, &poly(&m, "X^3 + X^4*T + X^5*T^2")).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.facts["content"], "Id{3,4,5}");
        assert_eq!(r.facts["invertible"], false);
        assert_eq!(r.facts["locally-principal"], false);
    }

    #[test]
    fn quasi_clause_needs_stability() {
        // ⋆ = ⋆_{k[[X]]}: c(h) = M is quasi-invertible but not invertible
        let (m, star) = setup("semigroup:3,4,5", "star{T=Id{0,1,2}}");
        let r = content_invertible_bridge(&star, &poly(&m, "X^3 + X^4*T + X^5*T^2")).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.facts["invertible"], false);
        assert_eq!(r.facts["quasi-invertible"], true);
        assert_eq!(r.facts["quasi-clause-applies"], false);
    }

    #[test]
    fn glue_examples() {
        let (m, d) = setup("pid", "d");
        let (h, r) = glue_principal_generator(&d, &[poly(&m, "2 + 3*T"), poly(&m, "5")]).unwrap();
        assert_eq!(h.to_string(), "2 + 3*T + 5*T^2");
        assert!(r.passed(), "{r:?}");
        let (h, r) = glue_principal_generator(&d, &[poly(&m, "2"), poly(&m, "3")]).unwrap();
        assert_eq!(h.to_string(), "2 + 3*T");
        assert!(r.passed());
        assert_eq!(r.facts["generator degree (2^1 3^0)"], 1);
        assert_eq!(r.facts["generator degree (2^0 3^1)"], 0);
        let single = poly(&m, "6 + 4*T");
        let (h, _) = glue_principal_generator(&d, std::slice::from_ref(&single)).unwrap();
        assert_eq!(h, single);
        let (m, t) = setup("semigroup:3,4,5", "t");
        let err = glue_principal_generator(&t, &[poly(&m, "X^3"), poly(&m, "X^4")]).unwrap_err();
        assert!(matches!(err, Error::NotInvertibleExtension(_)));
    }
}
