//! Concrete hereditarily finite sets.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

/// A hereditarily finite set in canonical form: members sorted and
/// distinct, so structural equality is set equality.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Hf(Vec<Hf>);

impl Hf {
    pub fn empty() -> Hf {
        Hf(Vec::new())
    }

    pub fn from_members(mut members: Vec<Hf>) -> Hf {
        members.sort();
        members.dedup();
        Hf(members)
    }

    /// The von Neumann numeral `n`.
    pub fn numeral(n: u32) -> Hf {
        let mut members = Vec::new();
        for _ in 0..n {
            let next = Hf::from_members(members.clone());
            members.push(next);
        }
        Hf::from_members(members)
    }

    pub fn members(&self) -> &[Hf] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: &Hf) -> bool {
        self.0.binary_search(x).is_ok()
    }

    pub fn is_subset(&self, other: &Hf) -> bool {
        self.0.iter().all(|m| other.contains(m))
    }

    pub fn rank(&self) -> u32 {
        self.0.iter().map(|m| m.rank() + 1).max().unwrap_or(0)
    }

    /// `Some(n)` if this is the numeral `n`.
    pub fn as_numeral(&self) -> Option<u32> {
        let n = self.0.len() as u32;
        (*self == Hf::numeral(n)).then_some(n)
    }

    /// `{x} ∪ x ∪ ⋃x ∪ ⋃⋃x ∪ …`, sorted.
    pub fn transitive_closure(&self) -> Vec<Hf> {
        let mut out: Vec<Hf> = Vec::new();
        let mut stack = alloc::vec![self.clone()];
        while let Some(y) = stack.pop() {
            if let Err(pos) = out.binary_search(&y) {
                stack.extend(y.0.iter().cloned());
                out.insert(pos, y);
            }
        }
        out
    }

    /// Every subset, in a fixed order (by bitmask over the sorted members).
    pub fn subsets(&self) -> Vec<Hf> {
        assert!(self.0.len() < 32, "too many members to list subsets");
        (0u32..1 << self.0.len())
            .map(|mask| {
                Hf::from_members(
                    self.0.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, m)| m.clone()).collect(),
                )
            })
            .collect()
    }

    /// The Kuratowski pair `{{a}, {a, b}}`.
    pub fn pair(a: &Hf, b: &Hf) -> Hf {
        let single = Hf::from_members(alloc::vec![a.clone()]);
        let double = Hf::from_members(alloc::vec![a.clone(), b.clone()]);
        Hf::from_members(alloc::vec![single, double])
    }

    /// Every set of rank below `r`, i.e. `V_r`, sorted.
    pub fn universe_below(r: u32) -> Vec<Hf> {
        let mut v = alloc::vec![];
        for _ in 0..r {
            v = Hf::from_members(v).subsets();
            v.sort();
        }
        v
    }

    /// Parse nested braces over numerals, e.g. `{0,{0}}`.
    pub fn parse(s: &str) -> Result<Hf> {
        let bytes = s.as_bytes();
        let mut pos = 0;
        let x = parse_at(bytes, &mut pos)?;
        skip_ws(bytes, &mut pos);
        if pos != bytes.len() {
            return Err(Error::Parse(format!("trailing input in set literal `{s}`")));
        }
        Ok(x)
    }
}

fn skip_ws(b: &[u8], pos: &mut usize) {
    while *pos < b.len() && b[*pos].is_ascii_whitespace() {
        *pos += 1;
    }
}

fn bad(pos: usize, what: &str) -> Error {
    Error::Parse(format!("set literal: {what} at byte {pos}"))
}

fn parse_at(b: &[u8], pos: &mut usize) -> Result<Hf> {
    skip_ws(b, pos);
    match b.get(*pos) {
        Some(b'{') => {
            *pos += 1;
            let mut members = Vec::new();
            skip_ws(b, pos);
            if b.get(*pos) == Some(&b'}') {
                *pos += 1;
                return Ok(Hf::empty());
            }
            loop {
                members.push(parse_at(b, pos)?);
                skip_ws(b, pos);
                match b.get(*pos) {
                    Some(b',') => *pos += 1,
                    Some(b'}') => {
                        *pos += 1;
                        return Ok(Hf::from_members(members));
                    }
                    _ => return Err(bad(*pos, "expected `,` or `}`")),
                }
            }
        }
        Some(c) if c.is_ascii_digit() => {
            let start = *pos;
            while *pos < b.len() && b[*pos].is_ascii_digit() {
                *pos += 1;
            }
            let n: u32 = core::str::from_utf8(&b[start..*pos])
                .unwrap()
                .parse()
                .map_err(|_| bad(*pos, "numeral out of range"))?;
            if n > 64 {
                return Err(bad(*pos, "numeral too large"));
            }
            Ok(Hf::numeral(n))
        }
        _ => Err(bad(*pos, "expected `{` or a numeral")),
    }
}

impl fmt::Display for Hf {
    /// Numerals print as digits, everything else as braces.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = self.as_numeral() {
            return write!(f, "{n}");
        }
        f.write_str("{")?;
        for (i, m) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{m}")?;
        }
        f.write_str("}")
    }
}

impl core::str::FromStr for Hf {
    type Err = Error;

    fn from_str(s: &str) -> Result<Hf> {
        Hf::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn parse_and_print() {
        let two = Hf::parse("{0, {0}}").unwrap();
        assert_eq!(two, Hf::numeral(2));
        assert_eq!(two.to_string(), "2");
        let x = Hf::parse("{{1}}").unwrap();
        assert_eq!(x.to_string(), "{{1}}");
        assert_eq!(Hf::parse(&x.to_string()).unwrap(), x);
        assert!(Hf::parse("{0,").is_err());
        assert!(Hf::parse("{0} x").is_err());
    }

    #[test]
    fn closure_ranks_and_universes() {
        let two = Hf::numeral(2);
        assert_eq!(two.transitive_closure(), [Hf::numeral(0), Hf::numeral(1), Hf::numeral(2)]);
        assert_eq!(two.rank(), 2);
        assert_eq!(Hf::universe_below(3).len(), 4);
        assert_eq!(Hf::universe_below(4).len(), 16);
        assert_eq!(Hf::numeral(3).subsets().len(), 8);
    }

    #[test]
    fn kuratowski_pairs_are_injective() {
        let v = Hf::universe_below(2);
        for a in &v {
            for b in &v {
                for c in &v {
                    for d in &v {
                        assert_eq!(Hf::pair(a, b) == Hf::pair(c, d), a == c && b == d);
                    }
                }
            }
        }
    }
}
