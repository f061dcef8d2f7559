//! Text form of operations: `d`, `v`, `t`, `w`, `star{T=…}`, `spectral{P,…}`,
//! `v(op)`, `ft(op)`, `tilde(op)`, `induced(op,T)`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::models::{DomainModel, PrimeSite};

use super::*;

/// Parses an operation literal on `model`.
pub fn parse_op(model: &DomainModel, src: &str) -> Result<SemistarOperation> {
    parse_op_in(model, src, &BTreeMap::new())
}

/// Like [`parse_op`], but bare names (and names inside combinators) may refer
/// to previously defined operations.
pub fn parse_op_in(
    model: &DomainModel,
    src: &str,
    named: &BTreeMap<String, SemistarOperation>,
) -> Result<SemistarOperation> {
    parse_op_with_cutoff(model, src, named, DEFAULT_CUTOFF)
}

/// Like [`parse_op_in`], with an explicit chain cutoff for every `ft(...)`
/// and `t` in the literal.
pub fn parse_op_with_cutoff(
    model: &DomainModel,
    src: &str,
    named: &BTreeMap<String, SemistarOperation>,
    cutoff: usize,
) -> Result<SemistarOperation> {
    parse_at(model, src, 0, &Env { named, cutoff })
}

struct Env<'a> {
    named: &'a BTreeMap<String, SemistarOperation>,
    cutoff: usize,
}

/// Splits on commas that are not nested inside brackets.
fn split_top(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0usize);
    for (i, c) in s.char_indices() {
        match c {
            '(' | '{' => depth += 1,
            ')' | '}' => depth -= 1,
            ',' if depth == 0 => {
                out.push((start, &s[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push((start, &s[start..]));
    out
}

fn inner<'a>(s: &'a str, open: &str, close: char) -> Option<&'a str> {
    s.strip_prefix(open)?.strip_suffix(close)
}

fn parse_at(
    model: &DomainModel,
    raw: &str,
    offset: usize,
    env: &Env,
) -> Result<SemistarOperation> {
    let lead = raw.len() - raw.trim_start().len();
    let s = raw.trim();
    let at = offset + lead;
    let relocate = |e: Error, base: usize| match e {
        Error::Parse { position, message } => Error::Parse { position: position + base, message },
        other => other,
    };
    if let Some(op) = env.named.get(s) {
        return Ok(op.clone());
    }
    match s {
        "d" => return Ok(make_identity(model)),
        "v" => return Ok(make_v(model)),
        "t" => return Ok(finite_type_of_with_cutoff(&make_v(model), env.cutoff).renamed("t")),
        "w" => return Ok(stable_of(&make_v(model))?.renamed("w")),
        _ => {}
    }
    if let Some(body) = inner(s, "star{T=", '}') {
        let t = model.parse_ideal(body).map_err(|e| relocate(e, at + 7))?;
        return make_overring(model, &t);
    }
    if let Some(body) = inner(s, "spectral{", '}') {
        let mut primes = Vec::new();
        for (pos, part) in split_top(body) {
            let ideal = model.parse_ideal(part).map_err(|e| relocate(e, at + 9 + pos))?;
            let p = PrimeSite::find(&ideal)
                .ok_or_else(|| Error::parse(at + 9 + pos, format!("{ideal} is not a prime of {model}")))?;
            primes.push(p);
        }
        return make_spectral(model, &primes);
    }
    if let Some(body) = inner(s, "ft(", ')') {
        return Ok(finite_type_of_with_cutoff(&parse_at(model, body, at + 3, env)?, env.cutoff));
    }
    if let Some(body) = inner(s, "tilde(", ')') {
        return stable_of(&parse_at(model, body, at + 6, env)?);
    }
    if let Some(body) = inner(s, "v(", ')') {
        return make_v_of_star_image(&parse_at(model, body, at + 2, env)?);
    }
    if let Some(body) = inner(s, "induced(", ')') {
        let parts = split_top(body);
        if parts.len() != 2 {
            return Err(Error::parse(at, "induced takes an operation and an overring"));
        }
        let op = parse_at(model, parts[0].1, at + 8, env)?;
        let t = model.parse_ideal(parts[1].1).map_err(|e| relocate(e, at + 8 + parts[1].0))?;
        return induced_on_overring(&op, &t);
    }
    Err(Error::parse(at, format!("unknown operation {s:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_catalogue_literals() {
        let pvd = DomainModel::from_name("pvd").unwrap();
        for lit in ["d", "v", "t", "w", "star{T=V@0}", "ft(star{T=V@0})", "tilde(star{T=V@0})", "v(star{T=V@0})", "spectral{V@1}"] {
            let op = parse_op(&pvd, lit).unwrap();
            assert_eq!(op.model(), &pvd, "{lit}");
        }
        let ind = parse_op(&pvd, "induced(star{T=V@0}, V@0)").unwrap();
        assert_eq!(ind.model().name(), "dvr");
        let st = DomainModel::from_name("staircase").unwrap();
        assert!(parse_op(&st, "spectral{St{(1,0)},St{(0,1)}}").is_ok());
    }

    #[test]
    fn rejects_bad_literals() {
        let r2 = DomainModel::from_name("rank2").unwrap();
        assert!(matches!(parse_op(&r2, "vv"), Err(Error::Parse { .. })));
        assert!(matches!(parse_op(&r2, "spectral{C(0,0)}"), Err(Error::Parse { .. })));
        match parse_op(&r2, "ft(star{T=Row(x)})") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 14),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn named_references() {
        let pvd = DomainModel::from_name("pvd").unwrap();
        let mut named = BTreeMap::new();
        named.insert("star".to_string(), parse_op(&pvd, "star{T=V@0}").unwrap());
        let op = parse_op_in(&pvd, "v(star)", &named).unwrap();
        assert_eq!(op.d_star().to_string(), "V@0");
    }
}
