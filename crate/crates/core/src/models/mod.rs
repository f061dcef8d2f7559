//! The catalogue of integral domains and exact arithmetic on their nonzero
//! submodules of the quotient field.
//!
//! Every model has a closed descriptor family: sums, products, colons,
//! intersections and localizations of descriptors are again descriptors (or
//! the zero signal for a colon). Descriptors are canonical, so structural
//! equality is equality of submodules.

pub mod cuts;
mod literal;
pub mod pid;
pub mod sample;
pub mod semigroup;
pub mod staircase;

use std::fmt;
use std::sync::Arc;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use cuts::{DenseCut, LexCut, PvdCut, Tier};
use pid::Exponents;
use semigroup::NumericalSemigroup;
use staircase::Point;

pub use literal::format_rational;

/// Longest cofinal chain produced for a dense cut.
pub const DENSE_CHAIN_MAX: usize = 24;

/// Parameters of a catalogue model, as written in scenario files.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ModelSpec {
    /// `K[[S]]` for a numerical semigroup `S`.
    Semigroup { generators: Vec<i64> },
    /// DVR with value group `ℤ`.
    Dvr,
    /// Rank-one valuation ring with value group `ℚ`.
    Dense,
    /// Rank-two valuation ring with value group `ℤ²` ordered lexicographically.
    Rank2,
    /// Pseudo-valuation domain `k + XK[[X]]`.
    Pvd,
    /// `ℤ` localized at the complement of `(2) ∪ (3)`.
    Pid,
    /// `k[x,y]_(x,y)` restricted to monomial submodules.
    Staircase,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelKind {
    SemigroupRing,
    ValuationRank1Discrete,
    ValuationRank1Dense,
    ValuationRank2Lex,
    PseudoValuationLattice,
    SemilocalPid,
    Staircase2D,
}

impl ModelSpec {
    pub fn kind(&self) -> ModelKind {
        match self {
            ModelSpec::Semigroup { .. } => ModelKind::SemigroupRing,
            ModelSpec::Dvr => ModelKind::ValuationRank1Discrete,
            ModelSpec::Dense => ModelKind::ValuationRank1Dense,
            ModelSpec::Rank2 => ModelKind::ValuationRank2Lex,
            ModelSpec::Pvd => ModelKind::PseudoValuationLattice,
            ModelSpec::Pid => ModelKind::SemilocalPid,
            ModelSpec::Staircase => ModelKind::Staircase2D,
        }
    }

    /// Short name used on the command line: `semigroup:3,4,5`, `pvd`, ...
    pub fn name(&self) -> String {
        match self {
            ModelSpec::Semigroup { generators } => {
                let g: Vec<String> = generators.iter().map(|x| x.to_string()).collect();
                format!("semigroup:{}", g.join(","))
            }
            ModelSpec::Dvr => "dvr".into(),
            ModelSpec::Dense => "dense".into(),
            ModelSpec::Rank2 => "rank2".into(),
            ModelSpec::Pvd => "pvd".into(),
            ModelSpec::Pid => "pid".into(),
            ModelSpec::Staircase => "staircase".into(),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let spec = match s {
            "dvr" => ModelSpec::Dvr,
            "dense" => ModelSpec::Dense,
            "rank2" => ModelSpec::Rank2,
            "pvd" => ModelSpec::Pvd,
            "pid" => ModelSpec::Pid,
            "staircase" => ModelSpec::Staircase,
            _ => {
                let rest = s
                    .strip_prefix("semigroup:")
                    .ok_or_else(|| Error::Usage(format!("unknown model {s:?}")))?;
                let generators = rest
                    .split(',')
                    .map(|g| g.trim().parse::<i64>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|e| Error::Usage(format!("bad semigroup generator in {s:?}: {e}")))?;
                ModelSpec::Semigroup { generators }
            }
        };
        Ok(spec)
    }

    /// The default catalogue exercised by the property suite.
    pub fn catalogue() -> Vec<ModelSpec> {
        vec![
            ModelSpec::Semigroup { generators: vec![3, 4, 5] },
            ModelSpec::Dvr,
            ModelSpec::Dense,
            ModelSpec::Rank2,
            ModelSpec::Pvd,
            ModelSpec::Pid,
            ModelSpec::Staircase,
        ]
    }
}

/// Canonical symbolic form of a nonzero submodule of the quotient field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Shape {
    /// The quotient field itself.
    Whole,
    /// Minimal generators of a relative ideal of the semigroup, ascending.
    Semigroup(Vec<i64>),
    /// `{v ≥ n}`.
    Discrete(i64),
    Dense(DenseCut),
    Lex(LexCut),
    Pvd(PvdCut),
    Pid(Exponents),
    /// Minimal antichain, sorted.
    Stair(Vec<Point>),
}

impl Shape {
    fn canonical(self) -> Shape {
        match self {
            Shape::Pid([None, None]) => Shape::Whole,
            Shape::Stair(ref g) if g.iter().any(|p| p[0].is_none() && p[1].is_none()) => Shape::Whole,
            other => other,
        }
    }
}

/// A generator handed to [`DomainModel::normalize`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Element {
    /// Exponent or value in ℤ.
    Int(i64),
    /// Value in ℚ (dense valuation ring).
    Rational(Rational64),
    /// Exponent pair: `(a,b)` for `2ᵃ3ᵇ`, `xᵃyᵇ` or a lexicographic value.
    Pair(i64, i64),
    /// `Xⁿ·u` in a pseudo-valuation domain; `residue` tags the class of the
    /// unit `u` modulo `k`. Distinct tags are treated as independent.
    PvdUnit { exp: i64, residue: String },
}

#[derive(Debug)]
struct PrimeData {
    ideal: Shape,
    local_ring: Shape,
}

#[derive(Debug)]
struct ModelInner {
    spec: ModelSpec,
    semigroup: Option<NumericalSemigroup>,
    primes: Vec<PrimeData>,
}

/// A catalogue entry: the ideal algebra of one integral domain together with
/// its (finite) list of nonzero primes.
#[derive(Clone)]
pub struct DomainModel(Arc<ModelInner>);

impl PartialEq for DomainModel {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec == other.0.spec
    }
}

impl Eq for DomainModel {}

impl fmt::Debug for DomainModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DomainModel({})", self.name())
    }
}

impl fmt::Display for DomainModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

fn pt(i: i64, j: i64) -> Point {
    [Some(i), Some(j)]
}

impl DomainModel {
    pub fn new(spec: ModelSpec) -> Result<Self> {
        let semigroup = match &spec {
            ModelSpec::Semigroup { generators } => Some(NumericalSemigroup::new(generators)?),
            _ => None,
        };
        let local = |ideal: Shape| PrimeData { ideal, local_ring: Shape::Whole };
        let mut primes = match &spec {
            ModelSpec::Semigroup { .. } => {
                let s = semigroup.as_ref().unwrap();
                vec![local(Shape::Semigroup(s.generators().to_vec()))]
            }
            ModelSpec::Dvr => vec![local(Shape::Discrete(1))],
            ModelSpec::Dense => vec![local(Shape::Dense(DenseCut::open(0.into())))],
            ModelSpec::Rank2 => vec![
                PrimeData { ideal: Shape::Lex(LexCut::row(1)), local_ring: Shape::Lex(LexCut::row(0)) },
                local(Shape::Lex(LexCut::point(0, 1))),
            ],
            ModelSpec::Pvd => vec![local(Shape::Pvd(PvdCut::v(1)))],
            ModelSpec::Pid => vec![
                PrimeData { ideal: Shape::Pid([Some(1), Some(0)]), local_ring: Shape::Pid([Some(0), None]) },
                PrimeData { ideal: Shape::Pid([Some(0), Some(1)]), local_ring: Shape::Pid([None, Some(0)]) },
            ],
            ModelSpec::Staircase => vec![
                PrimeData { ideal: Shape::Stair(vec![pt(1, 0)]), local_ring: Shape::Stair(vec![[Some(0), None]]) },
                PrimeData { ideal: Shape::Stair(vec![pt(0, 1)]), local_ring: Shape::Stair(vec![[None, Some(0)]]) },
                local(Shape::Stair(vec![pt(0, 1), pt(1, 0)])),
            ],
        };
        let inner_d = DomainModel::d_shape(&spec);
        for p in primes.iter_mut() {
            if p.local_ring == Shape::Whole {
                p.local_ring = inner_d.clone();
            }
        }
        Ok(DomainModel(Arc::new(ModelInner { spec, semigroup, primes })))
    }

    /// Catalogue model from its command-line name.
    pub fn from_name(s: &str) -> Result<Self> {
        DomainModel::new(ModelSpec::parse(s)?)
    }

    fn d_shape(spec: &ModelSpec) -> Shape {
        match spec {
            ModelSpec::Semigroup { .. } => Shape::Semigroup(vec![0]),
            ModelSpec::Dvr => Shape::Discrete(0),
            ModelSpec::Dense => Shape::Dense(DenseCut::closed(0.into())),
            ModelSpec::Rank2 => Shape::Lex(LexCut::point(0, 0)),
            ModelSpec::Pvd => Shape::Pvd(PvdCut::d(0)),
            ModelSpec::Pid => Shape::Pid([Some(0), Some(0)]),
            ModelSpec::Staircase => Shape::Stair(vec![pt(0, 0)]),
        }
    }

    pub fn spec(&self) -> &ModelSpec {
        &self.0.spec
    }

    pub fn kind(&self) -> ModelKind {
        self.0.spec.kind()
    }

    pub fn name(&self) -> String {
        self.0.spec.name()
    }

    pub fn semigroup(&self) -> Option<&NumericalSemigroup> {
        self.0.semigroup.as_ref()
    }

    /// Whether polynomial coefficients are actual ring elements (rather than
    /// value markers).
    pub fn element_support(&self) -> bool {
        matches!(self.kind(), ModelKind::SemigroupRing | ModelKind::SemilocalPid)
    }

    /// Wraps a shape belonging to this model.
    pub fn ideal(&self, shape: Shape) -> Ideal {
        Ideal { model: self.clone(), shape: shape.canonical() }
    }

    /// The domain itself.
    pub fn d(&self) -> Ideal {
        self.ideal(DomainModel::d_shape(self.spec()))
    }

    /// The quotient field.
    pub fn k(&self) -> Ideal {
        self.ideal(Shape::Whole)
    }

    pub fn primes(&self) -> Vec<PrimeSite> {
        (0..self.0.primes.len()).map(|index| PrimeSite { model: self.clone(), index }).collect()
    }

    /// The principal ideal `xD` for an element `x`.
    pub fn principal(&self, x: &Element) -> Result<Ideal> {
        self.normalize(std::slice::from_ref(x))
    }

    /// Canonical descriptor of the submodule generated by `raw`.
    pub fn normalize(&self, raw: &[Element]) -> Result<Ideal> {
        if raw.is_empty() {
            return Err(Error::ZeroModule);
        }
        let outside = |e: &Element| Error::RawOutsideFamily {
            model: self.name(),
            detail: format!("generator {e:?} has the wrong form"),
        };
        let ints = || -> Result<Vec<i64>> {
            raw.iter()
                .map(|e| match e {
                    Element::Int(n) => Ok(*n),
                    other => Err(outside(other)),
                })
                .collect()
        };
        let pairs = || -> Result<Vec<(i64, i64)>> {
            raw.iter()
                .map(|e| match e {
                    Element::Pair(a, b) => Ok((*a, *b)),
                    other => Err(outside(other)),
                })
                .collect()
        };
        let shape = match self.kind() {
            ModelKind::SemigroupRing => Shape::Semigroup(self.semigroup().unwrap().normalize(&ints()?)),
            ModelKind::ValuationRank1Discrete => Shape::Discrete(*ints()?.iter().min().unwrap()),
            ModelKind::ValuationRank1Dense => {
                let values = raw
                    .iter()
                    .map(|e| match e {
                        Element::Rational(q) => Ok(*q),
                        Element::Int(n) => Ok(Rational64::from_integer(*n)),
                        other => Err(outside(other)),
                    })
                    .collect::<Result<Vec<_>>>()?;
                Shape::Dense(DenseCut::closed(*values.iter().min().unwrap()))
            }
            ModelKind::ValuationRank2Lex => {
                let (a, b) = *pairs()?.iter().min().unwrap();
                Shape::Lex(LexCut::point(a, b))
            }
            ModelKind::SemilocalPid => {
                let p = pairs()?;
                let a = p.iter().map(|x| x.0).min().unwrap();
                let b = p.iter().map(|x| x.1).min().unwrap();
                Shape::Pid([Some(a), Some(b)])
            }
            ModelKind::Staircase2D => {
                Shape::Stair(staircase::minimize(pairs()?.into_iter().map(|(a, b)| pt(a, b)).collect()))
            }
            ModelKind::PseudoValuationLattice => {
                let units = raw
                    .iter()
                    .map(|e| match e {
                        Element::PvdUnit { exp, residue } => Ok((*exp, residue.clone())),
                        Element::Int(n) => Ok((*n, "1".to_string())),
                        other => Err(outside(other)),
                    })
                    .collect::<Result<Vec<_>>>()?;
                let low = units.iter().map(|u| u.0).min().unwrap();
                let mut residues: Vec<&String> =
                    units.iter().filter(|u| u.0 == low).map(|u| &u.1).collect();
                residues.sort();
                residues.dedup();
                if residues.len() > 1 {
                    return Err(Error::RawOutsideFamily {
                        model: self.name(),
                        detail: format!(
                            "independent residues {residues:?} at X^{low} span a module strictly between X^{low}D and X^{low}V"
                        ),
                    });
                }
                Shape::Pvd(PvdCut::d(low))
            }
        };
        Ok(self.ideal(shape))
    }

    /// Parses a descriptor literal such as `Id{3,4,5}`, `Row(1)` or `V@0`.
    pub fn parse_ideal(&self, s: &str) -> Result<Ideal> {
        literal::parse(self, s)
    }

    /// Recognizes `t` as an overring of this domain present in the catalogue.
    pub fn overring(&self, t: &Ideal) -> Result<Overring> {
        t.same_model(&self.d())?;
        if !self.d().leq(t)? || t.mul(t)? != *t {
            return Err(Error::NotAnOverring(t.to_string()));
        }
        if t.is_whole() {
            return Err(Error::OverringNotInCatalogue(t.to_string()));
        }
        if *t == self.d() {
            return Ok(Overring { ring: t.clone(), model: self.clone(), map: OverringMap::Identity });
        }
        let dvr = || DomainModel::new(ModelSpec::Dvr);
        let (model, map) = match (self.kind(), t.shape()) {
            (ModelKind::PseudoValuationLattice, Shape::Pvd(c)) if *c == PvdCut::v(0) => {
                (dvr()?, OverringMap::PvdValuation)
            }
            (ModelKind::ValuationRank2Lex, Shape::Lex(c)) if *c == LexCut::row(0) => {
                (dvr()?, OverringMap::Rank2Row)
            }
            (ModelKind::SemilocalPid, Shape::Pid([Some(0), None])) => (dvr()?, OverringMap::PidCoord(0)),
            (ModelKind::SemilocalPid, Shape::Pid([None, Some(0)])) => (dvr()?, OverringMap::PidCoord(1)),
            (ModelKind::Staircase2D, Shape::Stair(g)) if g == &vec![[Some(0), None]] => {
                (dvr()?, OverringMap::StairCoord(0))
            }
            (ModelKind::Staircase2D, Shape::Stair(g)) if g == &vec![[None, Some(0)]] => {
                (dvr()?, OverringMap::StairCoord(1))
            }
            (ModelKind::SemigroupRing, Shape::Semigroup(gens)) => {
                let mut all: Vec<i64> = gens.iter().copied().filter(|&g| g > 0).collect();
                all.extend_from_slice(self.semigroup().unwrap().generators());
                let bigger = NumericalSemigroup::new(&all)?;
                let model = DomainModel::new(ModelSpec::Semigroup { generators: bigger.generators().to_vec() })?;
                (model, OverringMap::Semigroup)
            }
            _ => return Err(Error::OverringNotInCatalogue(t.to_string())),
        };
        Ok(Overring { ring: t.clone(), model, map })
    }

    /// Symbolic supremum of an ascending chain of closures produced from
    /// [`Ideal::fg_cofinal_chain`]. Returns `None` when the tail of the chain
    /// shows no recognizable pattern.
    pub fn chain_supremum(&self, closures: &[Ideal]) -> Option<Ideal> {
        let n = closures.len();
        if n == 0 {
            return None;
        }
        if n >= 2 && closures[n - 1] == closures[n - 2] {
            return Some(closures[n - 1].clone());
        }
        if n == 1 {
            // Only the pseudo-valuation lattice produces one-element chains
            // for non-finitely-generated descriptors.
            return (self.kind() == ModelKind::PseudoValuationLattice).then(|| closures[0].clone());
        }
        if n < 3 {
            return None;
        }
        let (a, b, c) = (closures[n - 3].shape(), closures[n - 2].shape(), closures[n - 1].shape());
        let shape = match (a, b, c) {
            (Shape::Dense(x), Shape::Dense(y), Shape::Dense(z)) => {
                let (d1, d2) = (x.bound - y.bound, y.bound - z.bound);
                if x.open != y.open || y.open != z.open || d2 <= 0.into() || d1 != d2 * 2 {
                    return None;
                }
                Shape::Dense(DenseCut::open(z.bound * 2 - y.bound))
            }
            (Shape::Lex(x), Shape::Lex(y), Shape::Lex(z)) => {
                let (xc, yc, zc) = (x.col?, y.col?, z.col?);
                if x.row != y.row || y.row != z.row || xc - yc != yc - zc || yc <= zc {
                    return None;
                }
                Shape::Lex(LexCut::row(z.row))
            }
            (Shape::Pid(x), Shape::Pid(y), Shape::Pid(z)) => {
                Shape::Pid([drift(x[0], y[0], z[0])?, drift(x[1], y[1], z[1])?])
            }
            (Shape::Stair(x), Shape::Stair(y), Shape::Stair(z)) => {
                if x.len() != y.len() || y.len() != z.len() {
                    return None;
                }
                let mut out = Vec::with_capacity(z.len());
                for i in 0..z.len() {
                    out.push([drift(x[i][0], y[i][0], z[i][0])?, drift(x[i][1], y[i][1], z[i][1])?]);
                }
                Shape::Stair(staircase::minimize(out))
            }
            _ => return None,
        };
        Some(self.ideal(shape))
    }
}

/// Coordinate of a chain limit: constant stays, a steady decrease runs off
/// to `-∞`.
fn drift(x: Option<i64>, y: Option<i64>, z: Option<i64>) -> Option<Option<i64>> {
    if x == y && y == z {
        return Some(z);
    }
    let (x, y, z) = (x?, y?, z?);
    (x - y == y - z && y > z).then_some(None)
}

/// A nonzero submodule of the quotient field, in canonical form.
#[derive(Clone, PartialEq, Eq)]
pub struct Ideal {
    model: DomainModel,
    shape: Shape,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", literal::format(&self.shape))
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&literal::format(&self.shape))
    }
}

impl std::hash::Hash for Ideal {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.shape.hash(state)
    }
}

impl Ideal {
    pub fn model(&self) -> &DomainModel {
        &self.model
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn is_whole(&self) -> bool {
        self.shape == Shape::Whole
    }

    pub(crate) fn same_model(&self, other: &Ideal) -> Result<()> {
        if self.model == other.model {
            Ok(())
        } else {
            Err(Error::ModelMismatch { left: self.model.name(), right: other.model.name() })
        }
    }

    fn with(&self, shape: Shape) -> Ideal {
        self.model.ideal(shape)
    }

    fn semigroup(&self) -> &NumericalSemigroup {
        self.model.semigroup().expect("semigroup descriptor outside a semigroup model")
    }

    pub fn add(&self, other: &Ideal) -> Result<Ideal> {
        self.same_model(other)?;
        use Shape::*;
        let shape = match (&self.shape, &other.shape) {
            (Whole, _) | (_, Whole) => Whole,
            (Semigroup(a), Semigroup(b)) => Semigroup(self.semigroup().add(a, b)),
            (Discrete(a), Discrete(b)) => Discrete(*a.min(b)),
            (Dense(a), Dense(b)) => Dense(*a.min(b)),
            (Lex(a), Lex(b)) => Lex(*a.min(b)),
            (Pvd(a), Pvd(b)) => Pvd(*a.min(b)),
            (Pid(a), Pid(b)) => Pid(pid::add(*a, *b)),
            (Stair(a), Stair(b)) => Stair(staircase::add(a, b)),
            _ => unreachable!("shapes of one model always agree"),
        };
        Ok(self.with(shape))
    }

    pub fn mul(&self, other: &Ideal) -> Result<Ideal> {
        self.same_model(other)?;
        use Shape::*;
        let shape = match (&self.shape, &other.shape) {
            (Whole, _) | (_, Whole) => Whole,
            (Semigroup(a), Semigroup(b)) => Semigroup(self.semigroup().mul(a, b)),
            (Discrete(a), Discrete(b)) => Discrete(a + b),
            (Dense(a), Dense(b)) => Dense(a.mul(*b)),
            (Lex(a), Lex(b)) => Lex(a.mul(*b)),
            (Pvd(a), Pvd(b)) => Pvd(a.mul(*b)),
            (Pid(a), Pid(b)) => Pid(pid::mul(*a, *b)),
            (Stair(a), Stair(b)) => Stair(staircase::mul(a, b)),
            _ => unreachable!("shapes of one model always agree"),
        };
        Ok(self.with(shape))
    }

    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        self.same_model(other)?;
        use Shape::*;
        let shape = match (&self.shape, &other.shape) {
            (Whole, x) | (x, Whole) => x.clone(),
            (Semigroup(a), Semigroup(b)) => Semigroup(self.semigroup().intersect(a, b)),
            (Discrete(a), Discrete(b)) => Discrete(*a.max(b)),
            (Dense(a), Dense(b)) => Dense(*a.max(b)),
            (Lex(a), Lex(b)) => Lex(*a.max(b)),
            (Pvd(a), Pvd(b)) => Pvd(*a.max(b)),
            (Pid(a), Pid(b)) => Pid(pid::intersect(*a, *b)),
            (Stair(a), Stair(b)) => Stair(staircase::intersect(a, b)),
            _ => unreachable!("shapes of one model always agree"),
        };
        Ok(self.with(shape))
    }

    /// `(self : other) = { z ∈ K : z·other ⊆ self }`; `Ok(None)` is the zero module.
    pub fn colon(&self, other: &Ideal) -> Result<Option<Ideal>> {
        self.same_model(other)?;
        use Shape::*;
        let shape = match (&self.shape, &other.shape) {
            (Whole, _) => Whole,
            (_, Whole) => return Ok(None),
            (Semigroup(a), Semigroup(b)) => Semigroup(self.semigroup().colon(a, b)),
            (Discrete(a), Discrete(b)) => Discrete(a - b),
            (Dense(a), Dense(b)) => Dense(a.colon(*b)),
            (Lex(a), Lex(b)) => Lex(a.colon(*b)),
            (Pvd(a), Pvd(b)) => Pvd(a.colon(*b)),
            (Pid(a), Pid(b)) => match pid::colon(*a, *b) {
                Some(e) => Pid(e),
                None => return Ok(None),
            },
            (Stair(a), Stair(b)) => match staircase::colon(a, b) {
                Some(g) => Stair(g),
                None => return Ok(None),
            },
            _ => unreachable!("shapes of one model always agree"),
        };
        Ok(Some(self.with(shape)))
    }

    /// Containment `self ⊆ other`.
    pub fn leq(&self, other: &Ideal) -> Result<bool> {
        self.same_model(other)?;
        use Shape::*;
        Ok(match (&self.shape, &other.shape) {
            (_, Whole) => true,
            (Whole, _) => false,
            (Semigroup(a), Semigroup(b)) => self.semigroup().leq(a, b),
            (Discrete(a), Discrete(b)) => a >= b,
            (Dense(a), Dense(b)) => a >= b,
            (Lex(a), Lex(b)) => a >= b,
            (Pvd(a), Pvd(b)) => a >= b,
            (Pid(a), Pid(b)) => pid::leq(*a, *b),
            (Stair(a), Stair(b)) => staircase::leq(a, b),
            _ => unreachable!("shapes of one model always agree"),
        })
    }

    /// Equality of the denoted submodules.
    pub fn eq_ideal(&self, other: &Ideal) -> Result<bool> {
        self.same_model(other)?;
        Ok(self.shape == other.shape)
    }

    pub fn is_finitely_generated(&self) -> bool {
        match &self.shape {
            Shape::Whole => false,
            Shape::Semigroup(_) | Shape::Discrete(_) => true,
            Shape::Dense(c) => !c.open,
            Shape::Lex(c) => c.col.is_some(),
            Shape::Pvd(c) => c.tier == Tier::D,
            Shape::Pid(e) => e.iter().all(Option::is_some),
            Shape::Stair(g) => g.iter().flatten().all(Option::is_some),
        }
    }

    /// There is a nonzero `d ∈ D` with `d·self ⊆ D`.
    pub fn is_fractional(&self) -> bool {
        match &self.shape {
            Shape::Whole => false,
            Shape::Pid(_) | Shape::Stair(_) => self.is_finitely_generated(),
            _ => true,
        }
    }

    pub fn is_principal(&self) -> bool {
        match &self.shape {
            Shape::Semigroup(g) => g.len() == 1,
            Shape::Stair(g) => g.len() == 1 && self.is_finitely_generated(),
            _ => self.is_finitely_generated(),
        }
    }

    /// `self ⊆ D`.
    pub fn is_integral(&self) -> bool {
        self.leq(&self.model.d()).unwrap()
    }

    /// For a principal `xD`, the descriptor `x⁻¹D`.
    pub fn principal_inverse(&self) -> Option<Ideal> {
        if !self.is_principal() {
            return None;
        }
        self.model.d().colon(self).ok().flatten()
    }

    /// Some principal `xD ⊆ self`, or `None` for the zero module.
    pub fn principal_inside(&self) -> Option<Ideal> {
        let shape = match &self.shape {
            Shape::Whole => return Some(self.model.d()),
            Shape::Semigroup(g) => Shape::Semigroup(vec![g[0]]),
            Shape::Discrete(n) => Shape::Discrete(*n),
            Shape::Dense(c) => Shape::Dense(DenseCut::closed(c.bound + if c.open { 1 } else { 0 })),
            Shape::Lex(c) => match c.col {
                Some(b) => Shape::Lex(LexCut::point(c.row, b)),
                None => Shape::Lex(LexCut::point(c.row, 0)),
            },
            Shape::Pvd(c) => Shape::Pvd(PvdCut::d(c.exp + if c.tier == Tier::V { 1 } else { 0 })),
            Shape::Pid(e) => Shape::Pid([Some(e[0].unwrap_or(0)), Some(e[1].unwrap_or(0))]),
            Shape::Stair(g) => {
                let p = g[0];
                Shape::Stair(vec![[Some(p[0].unwrap_or(0)), Some(p[1].unwrap_or(0))]])
            }
        };
        let x = self.with(shape);
        debug_assert!(x.leq(self).unwrap());
        Some(x)
    }

    /// Ascending chain of finitely generated descriptors inside `self` whose
    /// union is `self` (cofinal among family subideals). At most `cutoff`
    /// members; a finitely generated descriptor is its own chain.
    pub fn fg_cofinal_chain(&self, cutoff: usize) -> Vec<Ideal> {
        let cutoff = cutoff.max(1);
        if self.is_finitely_generated() {
            return vec![self.clone()];
        }
        // Filled coordinates start strictly below every finite one, so the
        // relative position of generators is the same at every step.
        let finite: Vec<i64> = match &self.shape {
            Shape::Pid(e) => e.iter().flatten().copied().collect(),
            Shape::Stair(g) => g.iter().flatten().flatten().copied().collect(),
            _ => Vec::new(),
        };
        let floor = finite.into_iter().min().unwrap_or(0).min(0) - 1;
        let fill = |e: Option<i64>, k: i64| Some(e.unwrap_or(floor - k));
        (0..cutoff as i64)
            .map(|k| {
                let shape = match &self.shape {
                    Shape::Whole => return self.whole_chain_member(k),
                    Shape::Dense(c) => {
                        Shape::Dense(DenseCut::closed(c.bound + Rational64::new(1, 1 << k.min(DENSE_CHAIN_MAX as i64))))
                    }
                    Shape::Lex(c) => Shape::Lex(LexCut::point(c.row, -k)),
                    Shape::Pvd(c) => Shape::Pvd(PvdCut::d(c.exp)),
                    Shape::Pid(e) => Shape::Pid([fill(e[0], k), fill(e[1], k)]),
                    Shape::Stair(g) => Shape::Stair(staircase::minimize(
                        g.iter().map(|p| [fill(p[0], k), fill(p[1], k)]).collect(),
                    )),
                    Shape::Semigroup(_) | Shape::Discrete(_) => unreachable!(),
                };
                self.with(shape)
            })
            .take(match self.shape {
                Shape::Pvd(_) => 1,
                // dyadic steps past 2^-24 would overflow 64-bit rationals downstream
                Shape::Dense(_) => cutoff.min(DENSE_CHAIN_MAX),
                _ => cutoff,
            })
            .collect()
    }

    fn whole_chain_member(&self, k: i64) -> Ideal {
        let shape = match self.model.kind() {
            ModelKind::SemigroupRing => Shape::Semigroup(vec![-k]),
            ModelKind::ValuationRank1Discrete => Shape::Discrete(-k),
            ModelKind::ValuationRank1Dense => Shape::Dense(DenseCut::closed((-k).into())),
            ModelKind::ValuationRank2Lex => Shape::Lex(LexCut::point(-k, 0)),
            ModelKind::PseudoValuationLattice => Shape::Pvd(PvdCut::d(-k)),
            ModelKind::SemilocalPid => Shape::Pid([Some(-k), Some(-k)]),
            ModelKind::Staircase2D => Shape::Stair(vec![pt(-k, -k)]),
        };
        self.with(shape)
    }

    /// `self·D_P` viewed in the localized model.
    pub fn localize(&self, p: &PrimeSite) -> Result<Ideal> {
        if self.model != p.model {
            return Err(Error::ModelMismatch { left: self.model.name(), right: p.model.name() });
        }
        p.local_overring()?.restrict(self)
    }
}

/// A nonzero prime of a catalogue model.
#[derive(Clone, PartialEq, Eq)]
pub struct PrimeSite {
    model: DomainModel,
    index: usize,
}

impl fmt::Debug for PrimeSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PrimeSite({})", self.ideal())
    }
}

impl fmt::Display for PrimeSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ideal())
    }
}

impl PrimeSite {
    pub fn model(&self) -> &DomainModel {
        &self.model
    }

    pub fn ideal(&self) -> Ideal {
        self.model.ideal(self.model.0.primes[self.index].ideal.clone())
    }

    /// `D_P` as a submodule of `K`, in the base model.
    pub fn local_ring(&self) -> Ideal {
        self.model.ideal(self.model.0.primes[self.index].local_ring.clone())
    }

    pub fn local_overring(&self) -> Result<Overring> {
        self.model.overring(&self.local_ring())
    }

    /// The catalogue model of `D_P`.
    pub fn localized_model(&self) -> Result<DomainModel> {
        Ok(self.local_overring()?.model)
    }

    /// Looks up the prime whose ideal is `ideal`.
    pub fn find(ideal: &Ideal) -> Option<PrimeSite> {
        ideal.model().primes().into_iter().find(|p| p.ideal() == *ideal)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum OverringMap {
    Identity,
    PvdValuation,
    Rank2Row,
    PidCoord(usize),
    StairCoord(usize),
    Semigroup,
}

/// An overring `T` of a catalogue model together with `T`'s own model and the
/// translation of descriptors in both directions.
#[derive(Debug, Clone)]
pub struct Overring {
    ring: Ideal,
    model: DomainModel,
    map: OverringMap,
}

impl Overring {
    /// `T` as a descriptor of the base model.
    pub fn ring(&self) -> &Ideal {
        &self.ring
    }

    pub fn model(&self) -> &DomainModel {
        &self.model
    }

    pub fn base(&self) -> &DomainModel {
        self.ring.model()
    }

    /// A `T`-submodule written in `T`'s model, seen as a `D`-submodule.
    pub fn embed(&self, e: &Ideal) -> Result<Ideal> {
        if *e.model() != self.model {
            return Err(Error::ModelMismatch { left: e.model().name(), right: self.model.name() });
        }
        let base = self.base();
        if e.is_whole() {
            return Ok(base.k());
        }
        let shape = match (self.map, e.shape()) {
            (OverringMap::Identity, s) => s.clone(),
            (OverringMap::PvdValuation, Shape::Discrete(n)) => Shape::Pvd(PvdCut::v(*n)),
            (OverringMap::Rank2Row, Shape::Discrete(n)) => Shape::Lex(LexCut::row(*n)),
            (OverringMap::PidCoord(0), Shape::Discrete(n)) => Shape::Pid([Some(*n), None]),
            (OverringMap::PidCoord(_), Shape::Discrete(n)) => Shape::Pid([None, Some(*n)]),
            (OverringMap::StairCoord(0), Shape::Discrete(n)) => Shape::Stair(vec![[Some(*n), None]]),
            (OverringMap::StairCoord(_), Shape::Discrete(n)) => Shape::Stair(vec![[None, Some(*n)]]),
            (OverringMap::Semigroup, Shape::Semigroup(g)) => {
                let big = self.model.semigroup().unwrap();
                let lo = g[0];
                Shape::Semigroup(base.semigroup().unwrap().from_predicate(lo, |z| big.in_ideal(g, z)))
            }
            _ => unreachable!("overring model shapes are fixed by the map"),
        };
        Ok(base.ideal(shape))
    }

    /// `E·T` written in `T`'s model.
    pub fn restrict(&self, e: &Ideal) -> Result<Ideal> {
        let et = e.mul(&self.ring)?;
        if et.is_whole() {
            return Ok(self.model.k());
        }
        let shape = match (self.map, et.shape()) {
            (OverringMap::Identity, s) => s.clone(),
            (OverringMap::PvdValuation, Shape::Pvd(c)) => Shape::Discrete(c.exp),
            (OverringMap::Rank2Row, Shape::Lex(c)) => Shape::Discrete(c.row),
            (OverringMap::PidCoord(i), Shape::Pid(x)) => Shape::Discrete(x[i].unwrap()),
            (OverringMap::StairCoord(i), Shape::Stair(g)) => Shape::Discrete(g[0][i].unwrap()),
            (OverringMap::Semigroup, Shape::Semigroup(g)) => {
                Shape::Semigroup(self.model.semigroup().unwrap().normalize(g))
            }
            (map, s) => unreachable!("{map:?} cannot restrict {s:?}"),
        };
        Ok(self.model.ideal(shape))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model(name: &str) -> DomainModel {
        DomainModel::from_name(name).unwrap()
    }

    #[test]
    fn normalize_examples() {
        let s = model("semigroup:3,4,5");
        let i = s.normalize(&[3, 4, 5, 6].map(Element::Int)).unwrap();
        assert_eq!(i.to_string(), "Id{3,4,5}");
        let st = model("staircase");
        let m = st.normalize(&[Element::Pair(1, 0), Element::Pair(0, 1), Element::Pair(1, 1)]).unwrap();
        assert_eq!(m.to_string(), "St{(0,1),(1,0)}");
        assert_eq!(s.normalize(&[]), Err(Error::ZeroModule));
        let pvd = model("pvd");
        let bad = pvd.normalize(&[
            Element::PvdUnit { exp: 0, residue: "1".into() },
            Element::PvdUnit { exp: 0, residue: "u".into() },
        ]);
        assert!(matches!(bad, Err(Error::RawOutsideFamily { .. })));
        for m in ModelSpec::catalogue() {
            let m = DomainModel::new(m).unwrap();
            assert!(m.d().is_principal());
        }
    }

    #[test]
    fn colon_examples() {
        let pvd = model("pvd");
        let d = pvd.d();
        let m = pvd.parse_ideal("V@1").unwrap();
        assert_eq!(d.colon(&m).unwrap().unwrap().to_string(), "V@0");
        let r2 = model("rank2");
        let p = r2.parse_ideal("Row(1)").unwrap();
        assert_eq!(r2.d().colon(&p).unwrap().unwrap(), r2.parse_ideal("Row(0)").unwrap());
        assert_eq!(p.colon(&p).unwrap().unwrap(), r2.parse_ideal("Row(0)").unwrap());
        let pid = model("pid");
        let d2 = pid.primes()[0].local_ring();
        assert_eq!(pid.d().colon(&d2).unwrap(), None);
        assert_eq!(pid.d().colon(&pid.k()).unwrap(), None);
    }

    #[test]
    fn localization_examples() {
        let r2 = model("rank2");
        let p = &r2.primes()[0];
        let loc = r2.parse_ideal("Row(1)").unwrap().localize(p).unwrap();
        assert_eq!(loc.to_string(), "Seg(>=1)");
        assert!(loc.is_principal());
        let pid = model("pid");
        let i = pid.parse_ideal("(2^1 3^5)").unwrap();
        assert_eq!(i.localize(&pid.primes()[0]).unwrap().to_string(), "Seg(>=1)");
        let s = model("semigroup:3,4,5");
        let m = s.parse_ideal("Id{3,4,5}").unwrap();
        assert_eq!(m.localize(&s.primes()[0]).unwrap(), m);
    }

    #[test]
    fn model_mismatch() {
        let a = model("pvd").d();
        let b = model("dense").d();
        assert!(matches!(a.add(&b), Err(Error::ModelMismatch { .. })));
    }

    #[test]
    fn overrings() {
        let s = model("semigroup:3,4,5");
        let t = s.parse_ideal("Id{0,1,2}").unwrap();
        let o = s.overring(&t).unwrap();
        assert_eq!(o.model().name(), "semigroup:1");
        let back = o.embed(&o.model().d()).unwrap();
        assert_eq!(back, t);
        let m = s.parse_ideal("Id{3,4,5}").unwrap();
        assert_eq!(o.restrict(&m).unwrap().to_string(), "Id{3}");
        assert!(matches!(s.overring(&m), Err(Error::NotAnOverring(_))));
        assert!(matches!(s.overring(&s.k()), Err(Error::OverringNotInCatalogue(_))));
    }

    #[test]
    fn fg_chains() {
        let dense = model("dense");
        let m = dense.parse_ideal("Seg(>0)").unwrap();
        let chain = m.fg_cofinal_chain(3);
        let shown: Vec<String> = chain.iter().map(|c| c.to_string()).collect();
        assert_eq!(shown, ["Seg(>=1)", "Seg(>=1/2)", "Seg(>=1/4)"]);
        let pvd = model("pvd");
        let v = pvd.parse_ideal("V@0").unwrap();
        assert_eq!(v.fg_cofinal_chain(64), vec![pvd.d()]);
        let d = pvd.d();
        assert_eq!(d.fg_cofinal_chain(5), vec![d.clone()]);
    }
}
