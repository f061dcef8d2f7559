//! Semistar operations as first-class values.

mod checks;
mod literal;
mod spectrum;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::models::{DomainModel, Ideal, Overring, PrimeSite};

pub use checks::{axiom_check, op_leq, OpLeqOutcome};
pub use literal::{parse_op, parse_op_in, parse_op_with_cutoff};
pub use spectrum::{quasi_spectrum, QuasiSpectrum};

/// Default bound on the length of cofinal chains used by finite-type closures.
pub const DEFAULT_CUTOFF: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeclaredFlags {
    pub finite_type: bool,
    pub stable: bool,
    /// `D^⋆ = D`.
    pub semistar_proper: bool,
}

/// How an operation was built; determines its evaluator.
#[derive(Debug, Clone)]
pub enum Basis {
    Identity,
    V,
    /// `E ↦ E·T`.
    Overring(Ideal),
    /// `E ↦ ⋂ E·D_P`.
    Spectral(Vec<PrimeSite>),
    /// `E ↦ (D^⋆ : (D^⋆ : E))`.
    VOfStarImage(SemistarOperation),
    FiniteType { of: SemistarOperation, cutoff: usize },
    /// Spectral operation at the quasi-maximals of the finite-type companion.
    Stable { of: SemistarOperation, primes: Vec<PrimeSite> },
    /// The operation induced on an overring, living on the overring's model.
    Induced { of: SemistarOperation, overring: Overring },
}

struct OpInner {
    name: String,
    model: DomainModel,
    basis: Basis,
    flags: DeclaredFlags,
    d_star: Ideal,
}

/// A semistar operation on one catalogue model. Cheap to clone.
#[derive(Clone)]
pub struct SemistarOperation(Arc<OpInner>);

impl fmt::Debug for SemistarOperation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SemistarOperation({} on {})", self.0.name, self.0.model)
    }
}

impl fmt::Display for SemistarOperation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.name)
    }
}

impl SemistarOperation {
    fn build(name: String, model: DomainModel, basis: Basis, flags: DeclaredFlags) -> Result<Self> {
        let placeholder = model.d();
        let mut op = SemistarOperation(Arc::new(OpInner { name, model, basis, flags, d_star: placeholder }));
        let d = op.model().d();
        let d_star = op.eval(&d)?;
        if d_star.is_whole() {
            return Err(Error::TrivialOperation(op.name().to_string()));
        }
        let inner = Arc::get_mut(&mut op.0).expect("fresh operation is uniquely owned");
        inner.flags.semistar_proper = d_star == d;
        inner.d_star = d_star;
        Ok(op)
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    /// Same operation under another display name.
    pub fn renamed(&self, name: impl Into<String>) -> Self {
        let i = &self.0;
        SemistarOperation(Arc::new(OpInner {
            name: name.into(),
            model: i.model.clone(),
            basis: i.basis.clone(),
            flags: i.flags,
            d_star: i.d_star.clone(),
        }))
    }

    pub fn model(&self) -> &DomainModel {
        &self.0.model
    }

    pub fn basis(&self) -> &Basis {
        &self.0.basis
    }

    pub fn flags(&self) -> DeclaredFlags {
        self.0.flags
    }

    /// `D^⋆`.
    pub fn d_star(&self) -> &Ideal {
        &self.0.d_star
    }

    pub fn same_as(&self, other: &SemistarOperation) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    /// `E^⋆`.
    pub fn closure(&self, e: &Ideal) -> Result<Ideal> {
        if e.model() != self.model() {
            return Err(Error::ModelMismatch { left: e.model().name(), right: self.model().name() });
        }
        self.eval(e)
    }

    fn eval(&self, e: &Ideal) -> Result<Ideal> {
        let model = self.model();
        match &self.0.basis {
            Basis::Identity => Ok(e.clone()),
            Basis::V => double_colon(&model.d(), e),
            Basis::Overring(t) => e.mul(t),
            Basis::Spectral(primes) | Basis::Stable { primes, .. } => spectral(e, primes),
            Basis::VOfStarImage(op) => double_colon(op.d_star(), e),
            Basis::FiniteType { of, cutoff } => finite_type_closure(of, *cutoff, e),
            Basis::Induced { of, overring } => overring.restrict(&of.closure(&overring.embed(e)?)?),
        }
    }
}

fn double_colon(base: &Ideal, e: &Ideal) -> Result<Ideal> {
    match base.colon(e)? {
        None => Ok(e.model().k()),
        Some(j) => Ok(base.colon(&j)?.expect("(A:(A:E)) contains E")),
    }
}

fn spectral(e: &Ideal, primes: &[PrimeSite]) -> Result<Ideal> {
    let mut out = e.model().k();
    for p in primes {
        out = out.intersect(&e.mul(&p.local_ring())?)?;
    }
    Ok(out)
}

fn finite_type_closure(of: &SemistarOperation, cutoff: usize, e: &Ideal) -> Result<Ideal> {
    if e.is_finitely_generated() {
        return of.closure(e);
    }
    if e.is_whole() {
        return Ok(e.clone());
    }
    let model = e.model();
    let chain = e.fg_cofinal_chain(cutoff);
    let mut closures = Vec::with_capacity(chain.len());
    let stalled = || Error::CutoffNotStabilized { ideal: e.to_string(), cutoff };
    if chain.len() == 1 {
        closures.push(of.closure(&chain[0])?);
        let limit = model.chain_supremum(&closures).ok_or_else(stalled)?;
        return e.add(&limit);
    }
    for j in &chain {
        closures.push(of.closure(j)?);
        let k = closures.len();
        if k < 4 {
            continue;
        }
        let now = model.chain_supremum(&closures);
        if let Some(limit) = now.filter(|l| Some(l) == model.chain_supremum(&closures[..k - 1]).as_ref()) {
            if closures.iter().all(|c| c.leq(&limit).unwrap_or(false)) {
                return e.add(&limit);
            }
        }
    }
    Err(stalled())
}

/// The identity operation `d`.
pub fn make_identity(model: &DomainModel) -> SemistarOperation {
    let flags = DeclaredFlags { finite_type: true, stable: true, semistar_proper: true };
    SemistarOperation::build("d".into(), model.clone(), Basis::Identity, flags)
        .expect("the identity is never trivial")
}

/// `E ↦ (D:(D:E))`.
pub fn make_v(model: &DomainModel) -> SemistarOperation {
    let flags = DeclaredFlags { finite_type: false, stable: false, semistar_proper: true };
    SemistarOperation::build("v".into(), model.clone(), Basis::V, flags).expect("v is never trivial")
}

/// `E ↦ E·T` for an overring `T`.
pub fn make_overring(model: &DomainModel, t: &Ideal) -> Result<SemistarOperation> {
    if t.model() != model {
        return Err(Error::ModelMismatch { left: t.model().name(), right: model.name() });
    }
    if !model.d().leq(t)? || t.mul(t)? != *t {
        return Err(Error::NotAnOverring(t.to_string()));
    }
    let flat = *t == model.d() || model.primes().iter().any(|p| p.local_ring() == *t);
    let flags = DeclaredFlags { finite_type: true, stable: flat, semistar_proper: false };
    SemistarOperation::build(format!("star{{T={t}}}"), model.clone(), Basis::Overring(t.clone()), flags)
}

/// `E ↦ ⋂_{P ∈ Δ} E·D_P`.
pub fn make_spectral(model: &DomainModel, delta: &[PrimeSite]) -> Result<SemistarOperation> {
    if delta.is_empty() {
        return Err(Error::TrivialOperation("spectral{}".into()));
    }
    if let Some(p) = delta.iter().find(|p| p.model() != model) {
        return Err(Error::ModelMismatch { left: p.model().name(), right: model.name() });
    }
    let names: Vec<String> = delta.iter().map(|p| p.to_string()).collect();
    let flags = DeclaredFlags { finite_type: true, stable: true, semistar_proper: false };
    SemistarOperation::build(
        format!("spectral{{{}}}", names.join(",")),
        model.clone(),
        Basis::Spectral(delta.to_vec()),
        flags,
    )
}

/// `E ↦ (D^⋆:(D^⋆:E))` for the given `⋆`.
pub fn make_v_of_star_image(op: &SemistarOperation) -> Result<SemistarOperation> {
    let flags = DeclaredFlags { finite_type: false, stable: false, semistar_proper: false };
    SemistarOperation::build(format!("v({op})"), op.model().clone(), Basis::VOfStarImage(op.clone()), flags)
}

/// `⋆_f`, with the default chain cutoff.
pub fn finite_type_of(op: &SemistarOperation) -> SemistarOperation {
    finite_type_of_with_cutoff(op, DEFAULT_CUTOFF)
}

pub fn finite_type_of_with_cutoff(op: &SemistarOperation, cutoff: usize) -> SemistarOperation {
    if let Basis::FiniteType { .. } = op.basis() {
        return op.clone();
    }
    let f = op.flags();
    let flags = DeclaredFlags { finite_type: true, stable: f.stable && f.finite_type, semistar_proper: false };
    let basis = Basis::FiniteType { of: op.clone(), cutoff: cutoff.max(1) };
    SemistarOperation::build(format!("ft({op})"), op.model().clone(), basis, flags)
        .expect("⋆_f agrees with ⋆ on D")
}

/// `tilde-⋆`: the spectral operation at `ℳ(⋆_f)`.
pub fn stable_of(op: &SemistarOperation) -> Result<SemistarOperation> {
    let ft = finite_type_of(op);
    let spec = quasi_spectrum(&ft)?;
    if spec.quasi_maximals.is_empty() {
        return Err(Error::TrivialOperation(format!("tilde({op})")));
    }
    let flags = DeclaredFlags { finite_type: true, stable: true, semistar_proper: false };
    let basis = Basis::Stable { of: op.clone(), primes: spec.quasi_maximals };
    SemistarOperation::build(format!("tilde({op})"), op.model().clone(), basis, flags)
}

/// `⋆_ι` on the overring `T`, which must be a catalogue model.
pub fn induced_on_overring(op: &SemistarOperation, t: &Ideal) -> Result<SemistarOperation> {
    let overring = op.model().overring(t)?;
    let f = op.flags();
    let flags = DeclaredFlags { finite_type: f.finite_type, stable: f.stable, semistar_proper: false };
    let proper = t == op.d_star();
    let name = format!("induced({op},{t})");
    let model = overring.model().clone();
    let induced = SemistarOperation::build(name, model, Basis::Induced { of: op.clone(), overring }, flags)?;
    debug_assert_eq!(induced.flags().semistar_proper, proper);
    Ok(induced)
}

/// The catalogue of named operations for a model: `d`, `v`, `t`, `w` plus the
/// model's own overring and spectral operations.
pub fn catalogue(model: &DomainModel) -> Vec<SemistarOperation> {
    use crate::models::ModelKind::*;
    let d = make_identity(model);
    let v = make_v(model);
    let t = finite_type_of(&v).renamed("t");
    let w = stable_of(&v).expect("v is nontrivial").renamed("w");
    let mut ops = vec![d, v, t, w];
    let extra: &[&str] = match model.kind() {
        SemigroupRing => &["star{T=Id{0,1,2}}"],
        PseudoValuationLattice => &["star{T=V@0}"],
        ValuationRank2Lex => &["spectral{Row(1)}", "star{T=Row(0)}"],
        SemilocalPid => &["spectral{(2^1 3^0)}"],
        Staircase2D => &["spectral{St{(1,0)}}"],
        _ => &[],
    };
    for lit in extra {
        let op = parse_op(model, lit).expect("catalogue literal");
        ops.push(op.clone());
        ops.push(finite_type_of(&op));
        if let Ok(s) = stable_of(&op) {
            ops.push(s);
        }
        if let Ok(vv) = make_v_of_star_image(&op) {
            ops.push(vv);
        }
    }
    ops
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model(name: &str) -> DomainModel {
        DomainModel::from_name(name).unwrap()
    }

    #[test]
    fn v_closures() {
        let s = model("semigroup:3,4,5");
        let v = make_v(&s);
        let m = s.parse_ideal("Id{3,4,5}").unwrap();
        assert_eq!(v.closure(&m).unwrap(), m);
        let i = s.parse_ideal("Id{4,5}").unwrap();
        assert_eq!(v.closure(&i).unwrap().to_string(), "Id{4,5,6}");
        let dense = model("dense");
        let m = dense.parse_ideal("Seg(>0)").unwrap();
        assert_eq!(make_v(&dense).closure(&m).unwrap(), dense.d());
        let st = model("staircase");
        let m = st.parse_ideal("St{(1,0),(0,1)}").unwrap();
        assert_eq!(make_v(&st).closure(&m).unwrap(), st.d());
    }

    #[test]
    fn finite_type_limits() {
        let dense = model("dense");
        let t = finite_type_of(&make_v(&dense));
        let m = dense.parse_ideal("Seg(>0)").unwrap();
        assert_eq!(t.closure(&m).unwrap(), m);
        let r2 = model("rank2");
        let p = r2.parse_ideal("Row(1)").unwrap();
        assert_eq!(finite_type_of(&make_v(&r2)).closure(&p).unwrap(), p);
        assert_eq!(finite_type_of(&make_identity(&r2)).closure(&p).unwrap(), p);
        let pid = model("pid");
        let i = pid.parse_ideal("(2^-inf 3^1)").unwrap();
        let sp = parse_op(&pid, "spectral{(2^1 3^0)}").unwrap();
        assert_eq!(finite_type_of(&sp).closure(&i).unwrap(), pid.k());
        assert_eq!(sp.closure(&i).unwrap(), pid.k());
    }

    #[test]
    fn overring_operation() {
        let pvd = model("pvd");
        let op = make_overring(&pvd, &pvd.parse_ideal("V@0").unwrap()).unwrap();
        let x = pvd.parse_ideal("D@1").unwrap();
        assert_eq!(op.closure(&x).unwrap().to_string(), "V@1");
        assert_eq!(op.d_star().to_string(), "V@0");
        let m = pvd.parse_ideal("V@1").unwrap();
        assert!(matches!(make_overring(&pvd, &m), Err(Error::NotAnOverring(_))));
        assert!(matches!(make_overring(&pvd, &pvd.k()), Err(Error::TrivialOperation(_))));
    }

    #[test]
    fn stable_companions() {
        let pvd = model("pvd");
        let op = parse_op(&pvd, "star{T=V@0}").unwrap();
        let tilde = stable_of(&op).unwrap();
        assert_eq!(tilde.d_star(), &pvd.d());
        let r2 = model("rank2");
        let sp = parse_op(&r2, "spectral{Row(1)}").unwrap();
        let st = stable_of(&sp).unwrap();
        for lit in ["C(1,3)", "Row(2)", "C(-1,0)"] {
            let i = r2.parse_ideal(lit).unwrap();
            assert_eq!(st.closure(&i).unwrap(), sp.closure(&i).unwrap());
        }
    }

    #[test]
    fn induced_operations() {
        let pvd = model("pvd");
        let op = parse_op(&pvd, "star{T=V@0}").unwrap();
        let ind = induced_on_overring(&op, op.d_star()).unwrap();
        assert!(ind.flags().semistar_proper);
        let dvr = ind.model().clone();
        for n in -3..3 {
            let e = dvr.ideal(crate::models::Shape::Discrete(n));
            assert_eq!(ind.closure(&e).unwrap(), e);
        }
    }

    #[test]
    fn catalogue_builds() {
        for spec in crate::models::ModelSpec::catalogue() {
            let m = DomainModel::new(spec).unwrap();
            assert!(catalogue(&m).len() >= 4);
        }
    }
}
