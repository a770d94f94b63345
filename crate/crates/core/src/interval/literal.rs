//! Element literal syntax shared by [`IntervalSet`](super::IntervalSet) and
//! [`Template`](super::Template):
//!
//! ```text
//! element := term ('|' term)*
//! term    := '0' | '1' | '(' end ',' end ')' | '!' end
//! end     := '-inf' | '+inf' | rational | parameter-name
//! ```

use alloc::format;
use alloc::vec::Vec;

use super::{parse_rational, Rational};
use crate::order::Param;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum RawEnd {
    NegInf,
    PosInf,
    Rat(Rational),
    Param(Param),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum RawTerm {
    Empty,
    Full,
    Open(RawEnd, RawEnd),
    PointComplement(RawEnd),
}

fn parse_end(s: &str, params: &[(&str, Param)]) -> Result<RawEnd> {
    let s = s.trim();
    match s {
        "-inf" => return Ok(RawEnd::NegInf),
        "+inf" | "inf" => return Ok(RawEnd::PosInf),
        _ => {}
    }
    if let Some(&(_, p)) = params.iter().find(|(n, _)| *n == s) {
        return Ok(RawEnd::Param(p));
    }
    if s.starts_with(|c: char| c.is_ascii_alphabetic() || c == '_') {
        return Err(Error::Parse(format!("unknown parameter `{s}`")));
    }
    parse_rational(s).map(RawEnd::Rat)
}

pub(crate) fn parse_literal(s: &str, params: &[(&str, Param)]) -> Result<Vec<RawTerm>> {
    let mut terms = Vec::new();
    for term in s.split('|') {
        let t = term.trim();
        let raw = if t == "0" {
            RawTerm::Empty
        } else if t == "1" {
            RawTerm::Full
        } else if let Some(rest) = t.strip_prefix('!') {
            RawTerm::PointComplement(parse_end(rest, params)?)
        } else if let Some(inner) = t.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            let (l, r) = inner.split_once(',').ok_or_else(|| Error::Parse(format!("expected `(l,r)`, got `{t}`")))?;
            RawTerm::Open(parse_end(l, params)?, parse_end(r, params)?)
        } else {
            return Err(Error::Parse(format!("malformed interval term `{t}`")));
        };
        if let RawTerm::PointComplement(RawEnd::NegInf | RawEnd::PosInf) = raw {
            return Err(Error::Parse(format!("`{t}` needs a finite point")));
        }
        terms.push(raw);
    }
    Ok(terms)
}
