use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::literal::{parse_literal, RawEnd, RawTerm};
use super::{Endpoint, Rational};
use crate::{Error, Result};

/// A canonical finite union of open intervals of ℚ.
///
/// Canonical means sorted, pairwise disjoint, and never two intervals that
/// could be merged: `(0,1)|(1,2)` stays split because the point 1 is absent.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct IntervalSet {
    intervals: Vec<(Endpoint, Endpoint)>,
}

/// Membership of a set on the regions cut out by `points`: region `2i` is the
/// open gap below `points[i]`, region `2i + 1` the point itself, and the last
/// region the gap above every point.
pub(crate) type Profile = Vec<bool>;

impl IntervalSet {
    pub fn empty() -> IntervalSet {
        IntervalSet::default()
    }

    pub fn full() -> IntervalSet {
        IntervalSet { intervals: vec![(Endpoint::NegInf, Endpoint::PosInf)] }
    }

    /// `(-inf, r) | (r, +inf)`.
    pub fn point_complement(r: Rational) -> IntervalSet {
        IntervalSet {
            intervals: vec![(Endpoint::NegInf, Endpoint::Finite(r.clone())), (Endpoint::Finite(r), Endpoint::PosInf)],
        }
    }

    /// Canonicalise an arbitrary list of open intervals; empty ones
    /// (`lo >= hi`) are dropped.
    pub fn canon(raw: &[(Endpoint, Endpoint)]) -> IntervalSet {
        let raw: Vec<_> = raw.iter().filter(|(l, h)| l < h).cloned().collect();
        let points = endpoints(raw.iter());
        let profile = profile_of(&raw, &points);
        IntervalSet::from_profile(&points, &profile)
    }

    pub fn intervals(&self) -> &[(Endpoint, Endpoint)] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.intervals == [(Endpoint::NegInf, Endpoint::PosInf)]
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let x = Endpoint::Finite(x.clone());
        self.intervals.iter().any(|(l, h)| *l < x && x < *h)
    }

    /// The finite endpoints, sorted and distinct.
    pub fn endpoints(&self) -> Vec<Rational> {
        endpoints(self.intervals.iter())
    }

    pub fn meet(&self, other: &IntervalSet) -> IntervalSet {
        self.zip(other, |a, b| a && b)
    }

    pub fn join(&self, other: &IntervalSet) -> IntervalSet {
        self.zip(other, |a, b| a || b)
    }

    /// Interior of `complement(self) ∪ other`.
    pub fn imp(&self, other: &IntervalSet) -> IntervalSet {
        self.zip(other, |a, b| !a || b)
    }

    pub fn neg(&self) -> IntervalSet {
        self.imp(&IntervalSet::empty())
    }

    pub fn le(&self, other: &IntervalSet) -> bool {
        self.meet(other) == *self
    }

    fn zip(&self, other: &IntervalSet, f: impl Fn(bool, bool) -> bool) -> IntervalSet {
        let points = endpoints(self.intervals.iter().chain(other.intervals.iter()));
        let a = profile_of(&self.intervals, &points);
        let b = profile_of(&other.intervals, &points);
        let combined: Profile = a.iter().zip(&b).map(|(&x, &y)| f(x, y)).collect();
        IntervalSet::from_profile(&points, &combined)
    }

    /// Membership on the regions cut out by `points` (which must include
    /// every endpoint of `self`).
    pub(crate) fn profile(&self, points: &[Rational]) -> Profile {
        profile_of(&self.intervals, points)
    }

    /// Rebuild from a region profile, keeping only its interior.
    pub(crate) fn from_profile(points: &[Rational], profile: &[bool]) -> IntervalSet {
        debug_assert_eq!(profile.len(), 2 * points.len() + 1);
        let k = points.len();
        let lower = |g: usize| if g == 0 { Endpoint::NegInf } else { Endpoint::Finite(points[g - 1].clone()) };
        let upper = |g: usize| if g == k { Endpoint::PosInf } else { Endpoint::Finite(points[g].clone()) };
        let mut intervals = Vec::new();
        let mut start: Option<usize> = None;
        for g in 0..=k {
            if profile[2 * g] {
                if start.is_none() {
                    start = Some(g);
                }
                // A point continues the run only if it and the next gap are in.
                let continues = g < k && profile[2 * g + 1] && profile[2 * g + 2];
                if !continues {
                    intervals.push((lower(start.take().unwrap()), upper(g)));
                }
            }
        }
        IntervalSet { intervals }
    }

    pub fn parse(s: &str) -> Result<IntervalSet> {
        let mut raw = Vec::new();
        for term in parse_literal(s, &[])? {
            let end = |e: RawEnd| match e {
                RawEnd::NegInf => Ok(Endpoint::NegInf),
                RawEnd::PosInf => Ok(Endpoint::PosInf),
                RawEnd::Rat(r) => Ok(Endpoint::Finite(r)),
                RawEnd::Param(_) => Err(Error::Parse(String::from("parameters need a template"))),
            };
            match term {
                RawTerm::Empty => {}
                RawTerm::Full => raw.push((Endpoint::NegInf, Endpoint::PosInf)),
                RawTerm::Open(l, h) => raw.push((end(l)?, end(h)?)),
                RawTerm::PointComplement(e) => {
                    let e = end(e)?;
                    raw.push((Endpoint::NegInf, e.clone()));
                    raw.push((e, Endpoint::PosInf));
                }
            }
        }
        Ok(IntervalSet::canon(&raw))
    }
}

fn endpoints<'a>(it: impl Iterator<Item = &'a (Endpoint, Endpoint)>) -> Vec<Rational> {
    let mut pts: Vec<Rational> = it.flat_map(|(l, h)| [l.finite().cloned(), h.finite().cloned()]).flatten().collect();
    pts.sort();
    pts.dedup();
    pts
}

fn profile_of(intervals: &[(Endpoint, Endpoint)], points: &[Rational]) -> Profile {
    let k = points.len();
    let mut out = vec![false; 2 * k + 1];
    for (l, h) in intervals {
        for g in 0..=k {
            let lo = if g == 0 { Endpoint::NegInf } else { Endpoint::Finite(points[g - 1].clone()) };
            let hi = if g == k { Endpoint::PosInf } else { Endpoint::Finite(points[g].clone()) };
            if *l <= lo && hi <= *h {
                out[2 * g] = true;
            }
            if g < k {
                let p = Endpoint::Finite(points[g].clone());
                if *l < p && p < *h {
                    out[2 * g + 1] = true;
                }
            }
        }
    }
    out
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("0");
        }
        if self.is_full() {
            return f.write_str("1");
        }
        for (i, (l, h)) in self.intervals.iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            write!(f, "({l},{h})")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::rat;
    use alloc::string::ToString;

    fn iv(s: &str) -> IntervalSet {
        IntervalSet::parse(s).unwrap()
    }

    #[test]
    fn canon_keeps_touching_intervals_apart() {
        assert_eq!(iv("(0,1)|(1,2)").intervals().len(), 2);
        assert_eq!(iv("(0,2)|(1,3)"), iv("(0,3)"));
        assert_eq!(IntervalSet::canon(&[]), IntervalSet::empty());
        // Empty entries vanish.
        assert_eq!(iv("(2,1)|(3,3)"), IntervalSet::empty());
        assert_eq!(iv("(-inf,0)|(0,+inf)|(-1,1)"), IntervalSet::full());
    }

    #[test]
    fn lattice_examples() {
        let (a, b) = (iv("(0,2)"), iv("(1,3)"));
        assert_eq!(a.meet(&b), iv("(1,2)"));
        assert_eq!(a.join(&b), iv("(0,3)"));
        let bot = IntervalSet::empty();
        assert_eq!(bot.meet(&b), bot);
        assert_eq!(bot.join(&b), b);
        let q = rat(1, 3);
        let pc = IntervalSet::point_complement(q.clone());
        let upper = IntervalSet::canon(&[(Endpoint::Finite(q), Endpoint::PosInf)]);
        assert_eq!(pc.meet(&upper), upper);
        assert_eq!(pc.join(&upper), pc);
    }

    #[test]
    fn implication_takes_the_interior() {
        assert_eq!(iv("(0,1)").imp(&iv("(0,1/2)")), iv("(-inf,1/2)|(1,+inf)"));
        assert_eq!(IntervalSet::empty().imp(&iv("(5,6)")), IntervalSet::full());
        assert_eq!(iv("!7/3").neg(), IntervalSet::empty());
    }

    #[test]
    fn display_round_trips() {
        for s in ["0", "1", "(0,1)|(2,+inf)", "(-inf,-1/2)|(-1/2,+inf)"] {
            assert_eq!(iv(s).to_string(), s);
        }
    }
}
