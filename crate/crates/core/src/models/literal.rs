//! Text form of descriptors.

use num_rational::Rational64;

use super::cuts::{DenseCut, LexCut, PvdCut, Tier};
use super::{DomainModel, Ideal, ModelKind, Shape};
use crate::error::{Error, Result};

pub fn format_rational(q: Rational64) -> String {
    if *q.denom() == 1 {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn exp(e: Option<i64>) -> String {
    e.map_or_else(|| "-inf".to_string(), |v| v.to_string())
}

pub(super) fn format(shape: &Shape) -> String {
    match shape {
        Shape::Whole => "K".into(),
        Shape::Semigroup(g) => {
            let g: Vec<String> = g.iter().map(|x| x.to_string()).collect();
            format!("Id{{{}}}", g.join(","))
        }
        Shape::Discrete(n) => format!("Seg(>={n})"),
        Shape::Dense(c) => {
            format!("Seg({}{})", if c.open { ">" } else { ">=" }, format_rational(c.bound))
        }
        Shape::Lex(LexCut { row, col: Some(c) }) => format!("C({row},{c})"),
        Shape::Lex(LexCut { row, col: None }) => format!("Row({row})"),
        Shape::Pvd(PvdCut { exp, tier: Tier::D }) => format!("D@{exp}"),
        Shape::Pvd(PvdCut { exp, tier: Tier::V }) => format!("V@{exp}"),
        Shape::Pid(e) => format!("(2^{} 3^{})", exp(e[0]), exp(e[1])),
        Shape::Stair(g) => {
            let g: Vec<String> = g.iter().map(|p| format!("({},{})", exp(p[0]), exp(p[1]))).collect();
            format!("St{{{}}}", g.join(","))
        }
    }
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(Error::parse(self.pos, format!("expected {token:?}")))
        }
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[self.pos..];
        let len = rest
            .char_indices()
            .take_while(|&(i, c)| c.is_ascii_digit() || (i == 0 && (c == '-' || c == '+')))
            .count();
        self.pos += len;
        self.src[start..self.pos]
            .parse()
            .map_err(|_| Error::parse(start, "expected an integer"))
    }

    fn exponent(&mut self) -> Result<Option<i64>> {
        if self.eat("-inf") {
            Ok(None)
        } else {
            self.int().map(Some)
        }
    }

    fn rational(&mut self) -> Result<Rational64> {
        let start = self.pos;
        let n = self.int()?;
        if self.eat("/") {
            let d = self.int()?;
            if d <= 0 {
                return Err(Error::parse(start, "denominator must be positive"));
            }
            Ok(Rational64::new(n, d))
        } else {
            Ok(Rational64::from_integer(n))
        }
    }

    fn done(&mut self) -> Result<()> {
        self.skip_ws();
        if self.pos == self.src.len() {
            Ok(())
        } else {
            Err(Error::parse(self.pos, "trailing input"))
        }
    }
}

pub(super) fn parse(model: &DomainModel, src: &str) -> Result<Ideal> {
    let mut c = Cursor { src, pos: 0 };
    let kind = model.kind();
    let wrong = |pos: usize| Error::parse(pos, format!("literal does not belong to model {}", model.name()));
    let shape = if c.eat("K") {
        Shape::Whole
    } else if c.eat("Id{") {
        if kind != ModelKind::SemigroupRing {
            return Err(wrong(0));
        }
        let mut gens = vec![c.int()?];
        while c.eat(",") {
            gens.push(c.int()?);
        }
        c.expect("}")?;
        Shape::Semigroup(model.semigroup().unwrap().normalize(&gens))
    } else if c.eat("Seg(") {
        let open = if c.eat(">=") {
            false
        } else {
            c.expect(">")?;
            true
        };
        let at = c.pos;
        let q = c.rational()?;
        c.expect(")")?;
        match kind {
            ModelKind::ValuationRank1Dense => {
                Shape::Dense(if open { DenseCut::open(q) } else { DenseCut::closed(q) })
            }
            ModelKind::ValuationRank1Discrete => {
                if *q.denom() != 1 {
                    return Err(Error::parse(at, "discrete values are integers"));
                }
                Shape::Discrete(q.to_integer() + i64::from(open))
            }
            _ => return Err(wrong(0)),
        }
    } else if c.eat("C(") {
        if kind != ModelKind::ValuationRank2Lex {
            return Err(wrong(0));
        }
        let a = c.int()?;
        c.expect(",")?;
        let b = c.int()?;
        c.expect(")")?;
        Shape::Lex(LexCut::point(a, b))
    } else if c.eat("Row(") {
        if kind != ModelKind::ValuationRank2Lex {
            return Err(wrong(0));
        }
        let a = c.int()?;
        c.expect(")")?;
        Shape::Lex(LexCut::row(a))
    } else if c.eat("D@") {
        if kind != ModelKind::PseudoValuationLattice {
            return Err(wrong(0));
        }
        Shape::Pvd(PvdCut::d(c.int()?))
    } else if c.eat("V@") {
        if kind != ModelKind::PseudoValuationLattice {
            return Err(wrong(0));
        }
        Shape::Pvd(PvdCut::v(c.int()?))
    } else if c.eat("D") {
        c.done()?;
        return Ok(model.d());
    } else if c.eat("St{") {
        if kind != ModelKind::Staircase2D {
            return Err(wrong(0));
        }
        let mut pts = Vec::new();
        loop {
            c.expect("(")?;
            let i = c.exponent()?;
            c.expect(",")?;
            let j = c.exponent()?;
            c.expect(")")?;
            pts.push([i, j]);
            if !c.eat(",") {
                break;
            }
        }
        c.expect("}")?;
        Shape::Stair(super::staircase::minimize(pts))
    } else if c.eat("(") {
        if kind != ModelKind::SemilocalPid {
            return Err(wrong(0));
        }
        c.expect("2^")?;
        let a = c.exponent()?;
        c.expect("3^")?;
        let b = c.exponent()?;
        c.expect(")")?;
        Shape::Pid([a, b])
    } else {
        return Err(Error::parse(c.pos, "unrecognized descriptor literal"));
    };
    c.done()?;
    Ok(model.ideal(shape))
}
