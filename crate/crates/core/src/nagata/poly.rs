//! Polynomials in the Nagata indeterminate `T` with coefficients in a model.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::models::pid::valuations;
use crate::models::{DomainModel, Element, Ideal, ModelKind};

/// A nonzero coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Coeff {
    /// An element of the semilocal PID, as a rational number.
    Rational(BigRational),
    /// `Σ c_a X^a` in a semigroup ring: finitely many nonzero terms.
    Series(BTreeMap<i64, BigRational>),
    /// Stands for some element of the given value (valuation-type models).
    Value(Element),
}

/// `Σ c_k T^k` with nonzero coefficients, at least one term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContentPolynomial {
    model: DomainModel,
    terms: BTreeMap<u32, Coeff>,
}

type XPoly = BTreeMap<i64, BigRational>;

fn xpoly_mul(a: &XPoly, b: &XPoly) -> XPoly {
    let mut out = XPoly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            *out.entry(ea + eb).or_insert_with(BigRational::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn xpoly_add(a: &mut XPoly, b: &XPoly) {
    for (e, c) in b {
        *a.entry(*e).or_insert_with(BigRational::zero) += c;
    }
    a.retain(|_, c| !c.is_zero());
}

impl Coeff {
    fn as_xpoly(&self) -> Option<XPoly> {
        match self {
            Coeff::Rational(r) => Some(BTreeMap::from([(0, r.clone())])),
            Coeff::Series(s) => Some(s.clone()),
            Coeff::Value(_) => None,
        }
    }

    /// The generator of the principal ideal `cD`, as a model element.
    pub fn element(&self, model: &DomainModel) -> Result<Element> {
        match self {
            Coeff::Rational(r) => {
                let [a, b] = valuations(r);
                Ok(Element::Pair(a.expect("finite valuation"), b.expect("finite valuation")))
            }
            Coeff::Series(s) => {
                let semigroup = model.semigroup().expect("series coefficients live in semigroup rings");
                let low = *s.keys().next().expect("nonzero series");
                // c = X^low·u with u a unit of D exactly when every gap lies in S
                if let Some(gap) = s.keys().map(|e| e - low).find(|g| !semigroup.contains(*g)) {
                    return Err(Error::RawOutsideFamily {
                        model: model.name(),
                        detail: format!("coefficient {} has exponent gap {gap} outside the semigroup", fmt_series(s)),
                    });
                }
                Ok(Element::Int(low))
            }
            Coeff::Value(e) => Ok(e.clone()),
        }
    }

    pub fn principal(&self, model: &DomainModel) -> Result<Ideal> {
        model.principal(&self.element(model)?)
    }
}

impl ContentPolynomial {
    /// Builds a polynomial, dropping zero coefficients.
    pub fn new(model: &DomainModel, terms: impl IntoIterator<Item = (u32, Coeff)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (k, c) in terms {
            let keep = match &c {
                Coeff::Rational(r) => !r.is_zero(),
                Coeff::Series(s) => s.values().any(|x| !x.is_zero()),
                Coeff::Value(_) => true,
            };
            if keep {
                let c = match c {
                    Coeff::Series(mut s) => {
                        s.retain(|_, x| !x.is_zero());
                        Coeff::Series(s)
                    }
                    other => other,
                };
                if map.insert(k, c).is_some() {
                    return Err(Error::Usage(format!("two coefficients for T^{k}")));
                }
            }
        }
        if map.is_empty() {
            return Err(Error::ZeroModule);
        }
        Ok(ContentPolynomial { model: model.clone(), terms: map })
    }

    /// The constant polynomial `1`.
    pub fn one(model: &DomainModel) -> Self {
        let c = match model.kind() {
            ModelKind::SemilocalPid => Coeff::Rational(BigRational::one()),
            ModelKind::SemigroupRing => Coeff::Series(BTreeMap::from([(0, BigRational::one())])),
            _ => Coeff::Value(zero_value(model)),
        };
        ContentPolynomial { model: model.clone(), terms: BTreeMap::from([(0, c)]) }
    }

    pub fn parse(model: &DomainModel, s: &str) -> Result<Self> {
        parse(model, s)
    }

    pub fn model(&self) -> &DomainModel {
        &self.model
    }

    pub fn terms(&self) -> &BTreeMap<u32, Coeff> {
        &self.terms
    }

    pub fn degree(&self) -> u32 {
        *self.terms.keys().next_back().expect("nonzero polynomial")
    }

    /// `h·T^k`.
    pub fn shift(&self, k: u32) -> Self {
        let terms = self.terms.iter().map(|(d, c)| (d + k, c.clone())).collect();
        ContentPolynomial { model: self.model.clone(), terms }
    }

    /// `h₁ + h₂T^{d₁+1} + h₃T^{d₁+d₂+2} + …` with `dᵢ = deg hᵢ`.
    pub fn glue(gens: &[ContentPolynomial]) -> Result<Self> {
        let first = gens.first().ok_or_else(|| Error::Usage("no generators to glue".into()))?;
        let mut terms = BTreeMap::new();
        let mut offset = 0;
        for h in gens {
            check_model(first, h)?;
            terms.extend(h.shift(offset).terms);
            offset += h.degree() + 1;
        }
        Ok(ContentPolynomial { model: first.model.clone(), terms })
    }

    /// Degree offsets used by [`ContentPolynomial::glue`].
    pub fn glue_offsets(gens: &[ContentPolynomial]) -> Vec<u32> {
        gens.iter()
            .scan(0, |acc, h| {
                let here = *acc;
                *acc += h.degree() + 1;
                Some(here)
            })
            .collect()
    }

    /// Product of polynomials; needs actual elements as coefficients.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        check_model(self, other)?;
        let mut out: BTreeMap<u32, XPoly> = BTreeMap::new();
        for (i, a) in &self.terms {
            for (j, b) in &other.terms {
                let (Some(a), Some(b)) = (a.as_xpoly(), b.as_xpoly()) else {
                    return Err(Error::Usage(format!("value markers over {} cannot be multiplied", self.model)));
                };
                xpoly_add(out.entry(i + j).or_default(), &xpoly_mul(&a, &b));
            }
        }
        let rational = self.model.kind() == ModelKind::SemilocalPid;
        let terms = out.into_iter().map(|(k, p)| {
            let c = if rational { Coeff::Rational(p.get(&0).cloned().unwrap_or_else(BigRational::zero)) } else { Coeff::Series(p) };
            (k, c)
        });
        ContentPolynomial::new(&self.model, terms)
    }

    /// The content `c(h)`: the ideal generated by the coefficients.
    pub fn content(&self) -> Result<Ideal> {
        let elements = self.terms.values().map(|c| c.element(&self.model)).collect::<Result<Vec<_>>>()?;
        self.model.normalize(&elements)
    }
}

fn check_model(a: &ContentPolynomial, b: &ContentPolynomial) -> Result<()> {
    if a.model != b.model {
        return Err(Error::ModelMismatch { left: a.model.name(), right: b.model.name() });
    }
    Ok(())
}

fn zero_value(model: &DomainModel) -> Element {
    match model.kind() {
        ModelKind::ValuationRank2Lex | ModelKind::Staircase2D | ModelKind::SemilocalPid => Element::Pair(0, 0),
        _ => Element::Int(0),
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("({}/{})", r.numer(), r.denom())
    }
}

fn fmt_monomial(e: i64, c: &BigRational) -> String {
    let x = match e {
        0 => return fmt_rational(c),
        1 => "X".to_string(),
        _ => format!("X^{e}"),
    };
    if c.is_one() {
        x
    } else if *c == -BigRational::one() {
        format!("-{x}")
    } else {
        format!("{}*{x}", fmt_rational(c))
    }
}

fn fmt_series(s: &XPoly) -> String {
    let parts: Vec<String> = s.iter().map(|(e, c)| fmt_monomial(*e, c)).collect();
    if parts.len() == 1 {
        parts[0].clone()
    } else {
        format!("({})", parts.join(" + "))
    }
}

fn fmt_value(e: &Element) -> String {
    match e {
        Element::Int(n) => format!("val({n})"),
        Element::Rational(q) => format!("val({})", crate::models::format_rational(*q)),
        Element::Pair(a, b) => format!("val({a},{b})"),
        Element::PvdUnit { exp, .. } => format!("val({exp})"),
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Rational(r) => f.write_str(&fmt_rational(r)),
            Coeff::Series(s) => f.write_str(&fmt_series(s)),
            Coeff::Value(e) => f.write_str(&fmt_value(e)),
        }
    }
}

impl fmt::Display for ContentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, (k, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            let t = match k {
                0 => String::new(),
                1 => "T".to_string(),
                _ => format!("T^{k}"),
            };
            let coeff = c.to_string();
            match (coeff.as_str(), t.is_empty()) {
                (_, true) => f.write_str(&coeff)?,
                ("1", false) => f.write_str(&t)?,
                _ => write!(f, "{coeff}*{t}")?,
            }
        }
        Ok(())
    }
}

// ---- parsing ----

/// One product of factors: a Laurent polynomial in `X`, at most one value
/// marker, and a power of `T`.
#[derive(Default)]
struct Term {
    x: XPoly,
    marker: Option<Vec<BigRational>>,
    t: u32,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::parse(self.pos, message)
    }

    fn ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<BigInt> {
        self.ws();
        let start = self.pos;
        if matches!(self.src.get(self.pos), Some(b'-')) {
            self.pos += 1;
        }
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        text.parse().map_err(|_| Error::parse(start, format!("expected an integer, found {text:?}")))
    }

    fn small(&mut self) -> Result<i64> {
        let n = self.int()?;
        i64::try_from(n).map_err(|_| self.err("exponent out of range"))
    }

    fn rational(&mut self) -> Result<BigRational> {
        let n = self.int()?;
        if self.eat(b'/') {
            let d = self.int()?;
            if d.is_zero() {
                return Err(self.err("zero denominator"));
            }
            Ok(BigRational::new(n, d))
        } else {
            Ok(BigRational::from_integer(n))
        }
    }

    fn exponent(&mut self) -> Result<i64> {
        if self.eat(b'^') {
            self.small()
        } else {
            Ok(1)
        }
    }

    /// `term (('+' | '-') term)*`, grouped by power of `T`.
    fn sum(&mut self) -> Result<Vec<Term>> {
        let mut out = Vec::new();
        let mut negate = self.eat(b'-');
        loop {
            let mut term = self.product()?;
            if negate {
                if term.marker.is_some() {
                    return Err(self.err("value markers cannot be negated"));
                }
                term.x.values_mut().for_each(|c| *c = -c.clone());
            }
            out.push(term);
            if self.eat(b'+') {
                negate = false;
            } else if self.eat(b'-') {
                negate = true;
            } else {
                return Ok(out);
            }
        }
    }

    fn product(&mut self) -> Result<Term> {
        let mut term = Term { x: BTreeMap::from([(0, BigRational::one())]), ..Term::default() };
        loop {
            self.factor(&mut term)?;
            if !self.eat(b'*') {
                return Ok(term);
            }
        }
    }

    fn factor(&mut self, term: &mut Term) -> Result<()> {
        match self.peek() {
            Some(b'X') => {
                self.pos += 1;
                let e = self.exponent()?;
                term.x = term.x.iter().map(|(k, c)| (k + e, c.clone())).collect();
            }
            Some(b'T') => {
                self.pos += 1;
                let e = self.exponent()?;
                term.t += u32::try_from(e).map_err(|_| self.err("negative power of T"))?;
            }
            Some(b'v') => {
                for c in b"val(" {
                    if !self.eat(*c) {
                        return Err(self.err("expected val(...)"));
                    }
                }
                let mut args = vec![self.rational()?];
                while self.eat(b',') {
                    args.push(self.rational()?);
                }
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                if term.marker.replace(args).is_some() {
                    return Err(self.err("two value markers in one term"));
                }
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.sum()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                let mut x = XPoly::new();
                for t in inner {
                    if t.t != 0 || t.marker.is_some() {
                        return Err(self.err("parenthesized coefficients may only involve X and numbers"));
                    }
                    xpoly_add(&mut x, &t.x);
                }
                term.x = xpoly_mul(&term.x, &x);
            }
            Some(c) if c.is_ascii_digit() || c == b'-' => {
                let r = self.rational()?;
                term.x.values_mut().for_each(|c| *c = c.clone() * &r);
            }
            _ => return Err(self.err("expected a number, X, T, val(...) or '('")),
        }
        Ok(())
    }
}

fn int_arg(q: &BigRational, pos: usize) -> Result<i64> {
    if !q.is_integer() {
        return Err(Error::parse(pos, format!("value {q} must be an integer")));
    }
    i64::try_from(q.to_integer()).map_err(|_| Error::parse(pos, "value out of range"))
}

fn marker(model: &DomainModel, args: &[BigRational], pos: usize) -> Result<Element> {
    let arity = |n: usize| {
        if args.len() == n {
            Ok(())
        } else {
            Err(Error::parse(pos, format!("val(...) takes {n} argument(s) over {model}")))
        }
    };
    match model.kind() {
        ModelKind::ValuationRank1Discrete | ModelKind::PseudoValuationLattice => {
            arity(1)?;
            Ok(Element::Int(int_arg(&args[0], pos)?))
        }
        ModelKind::ValuationRank1Dense => {
            arity(1)?;
            let q = &args[0];
            let small = |n: &BigInt| i64::try_from(n.clone()).map_err(|_| Error::parse(pos, "value out of range"));
            Ok(Element::Rational(num_rational::Rational64::new(small(q.numer())?, small(q.denom())?)))
        }
        ModelKind::ValuationRank2Lex | ModelKind::Staircase2D => {
            arity(2)?;
            Ok(Element::Pair(int_arg(&args[0], pos)?, int_arg(&args[1], pos)?))
        }
        ModelKind::SemigroupRing | ModelKind::SemilocalPid => {
            Err(Error::parse(pos, format!("{model} takes element coefficients, not val(...)")))
        }
    }
}

fn parse(model: &DomainModel, s: &str) -> Result<ContentPolynomial> {
    let mut p = Parser { src: s.as_bytes(), pos: 0 };
    let terms = p.sum()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    let end = p.pos;
    let mut grouped: BTreeMap<u32, XPoly> = BTreeMap::new();
    let mut markers: BTreeMap<u32, Element> = BTreeMap::new();
    for t in terms {
        match model.kind() {
            ModelKind::SemilocalPid | ModelKind::SemigroupRing => {
                if t.marker.is_some() {
                    return Err(Error::parse(end, format!("{model} takes element coefficients, not val(...)")));
                }
                if model.kind() == ModelKind::SemilocalPid && t.x.keys().any(|e| *e != 0) {
                    return Err(Error::parse(end, "X is not an element of the semilocal PID"));
                }
                xpoly_add(grouped.entry(t.t).or_default(), &t.x);
            }
            _ => {
                if t.x.len() != 1 || !t.x.contains_key(&0) {
                    return Err(Error::parse(end, format!("coefficients over {model} are val(...) markers")));
                }
                let e = match &t.marker {
                    Some(args) => marker(model, args, end)?,
                    None => zero_value(model),
                };
                if markers.insert(t.t, e).is_some() {
                    return Err(Error::parse(end, format!("two markers for T^{}", t.t)));
                }
            }
        }
    }
    let terms: Vec<(u32, Coeff)> = if markers.is_empty() {
        grouped
            .into_iter()
            .map(|(k, x)| {
                let c = if model.kind() == ModelKind::SemilocalPid {
                    Coeff::Rational(x.get(&0).cloned().unwrap_or_else(BigRational::zero))
                } else {
                    Coeff::Series(x)
                };
                (k, c)
            })
            .collect()
    } else {
        markers.into_iter().map(|(k, e)| (k, Coeff::Value(e))).collect()
    };
    ContentPolynomial::new(model, terms)
}

/// Whether every coefficient lies in `D`.
pub fn is_integral(h: &ContentPolynomial) -> Result<bool> {
    Ok(h.content()?.is_integral())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(model: &str, s: &str) -> ContentPolynomial {
        ContentPolynomial::parse(&DomainModel::from_name(model).unwrap(), s).unwrap()
    }

    #[test]
    fn contents() {
        assert_eq!(poly("pid", "2 + 3*T").content().unwrap().to_string(), "(2^0 3^0)");
        assert_eq!(poly("pid", "12").content().unwrap().to_string(), "(2^2 3^1)");
        assert_eq!(poly("pid", "(4/5)*T^2 + 6*T^3").content().unwrap().to_string(), "(2^1 3^0)");
        assert_eq!(poly("semigroup:3,4,5", "X^3 + X^4*T").content().unwrap().to_string(), "Id{3,4}");
        assert_eq!(poly("rank2", "val(1,0) + val(0,2)*T").content().unwrap().to_string(), "C(0,2)");
        assert_eq!(poly("dense", "val(1/2)*T + val(3)").content().unwrap().to_string(), "Seg(>=1/2)");
    }

    #[test]
    fn unit_scaling_keeps_the_content() {
        let a = poly("pid", "2 + 3*T");
        let b = poly("pid", "10 - 21*T");
        assert_eq!(a.content().unwrap(), b.content().unwrap());
        let c = poly("semigroup:3,4,5", "(X^3 + 2*X^6)*T");
        assert_eq!(c.content().unwrap().to_string(), "Id{3}");
    }

    #[test]
    fn series_outside_the_family() {
        let h = poly("semigroup:3,4,5", "X^3 + X^4");
        assert!(matches!(h.content(), Err(Error::RawOutsideFamily { .. })));
    }

    #[test]
    fn display_round_trips() {
        for (m, s) in [
            ("pid", "2 + 3*T + 5*T^2"),
            ("pid", "(-1/5) + T^3"),
            ("semigroup:3,4,5", "X^3 + X^4*T"),
            ("semigroup:3,4,5", "1 + (X^3 + -2*X^7)*T"),
            ("rank2", "val(1,0) + val(0,2)*T"),
            ("dense", "val(1/2) + val(0)*T"),
        ] {
            let h = poly(m, s);
            assert_eq!(poly(m, &h.to_string()), h, "{s} -> {h}");
        }
        assert_eq!(poly("pid", "2 + 3*T + 5*T^2").to_string(), "2 + 3*T + 5*T^2");
    }

    #[test]
    fn products_and_gluing() {
        let g = poly("pid", "2 + 3*T");
        let h = poly("pid", "3 + 2*T");
        assert_eq!(g.mul(&h).unwrap().to_string(), "6 + 13*T + 6*T^2");
        let glued = ContentPolynomial::glue(&[g, poly("pid", "5")]).unwrap();
        assert_eq!(glued.to_string(), "2 + 3*T + 5*T^2");
        let glued = ContentPolynomial::glue(&[poly("pid", "2"), poly("pid", "3")]).unwrap();
        assert_eq!(glued.to_string(), "2 + 3*T");
        let a = poly("semigroup:3,4,5", "X^3 + X^4*T");
        assert_eq!(a.mul(&a).unwrap().to_string(), "X^6 + 2*X^7*T + X^8*T^2");
    }

    #[test]
    fn parse_errors() {
        let pid = DomainModel::from_name("pid").unwrap();
        for bad in ["", "2 +", "X", "val(1)", "2*T^-1", "1/0"] {
            assert!(ContentPolynomial::parse(&pid, bad).is_err(), "{bad}");
        }
        assert!(matches!(ContentPolynomial::parse(&pid, "0"), Err(Error::ZeroModule)));
        let rank2 = DomainModel::from_name("rank2").unwrap();
        assert!(ContentPolynomial::parse(&rank2, "val(1)").is_err());
        assert!(ContentPolynomial::parse(&rank2, "val(1,0) + val(2,0)").is_err());
    }
}
