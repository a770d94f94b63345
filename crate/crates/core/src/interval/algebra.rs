use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::set::IntervalSet;
use super::template::{Template, MAX_PARAMS};
use super::{parse_rational, Endpoint, Rational};
use crate::order::{Heyting, Param, Parametric, Quantifier};
use crate::{Error, Result};

/// Range of a family parameter: all rationals or an open rational interval.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ParamDomain {
    All,
    Open(Endpoint, Endpoint),
}

impl ParamDomain {
    /// The open interval `(lo, hi)`; `(-inf, +inf)` normalises to `All`.
    pub fn open(lo: Endpoint, hi: Endpoint) -> Result<ParamDomain> {
        if lo == Endpoint::PosInf || hi == Endpoint::NegInf || lo >= hi {
            return Err(Error::Parse(format!("empty parameter range ({lo},{hi})")));
        }
        Ok(match (&lo, &hi) {
            (Endpoint::NegInf, Endpoint::PosInf) => ParamDomain::All,
            _ => ParamDomain::Open(lo, hi),
        })
    }

    /// Finite lower and upper bounds.
    pub fn bounds(&self) -> (Option<&Rational>, Option<&Rational>) {
        match self {
            ParamDomain::All => (None, None),
            ParamDomain::Open(lo, hi) => (lo.finite(), hi.finite()),
        }
    }

    pub fn contains(&self, q: &Rational) -> bool {
        let (lo, hi) = self.bounds();
        lo.is_none_or(|l| l < q) && hi.is_none_or(|h| q < h)
    }

    /// `QQ` or `(l,r)`.
    pub fn parse(s: &str) -> Result<ParamDomain> {
        let s = s.trim();
        if s == "QQ" {
            return Ok(ParamDomain::All);
        }
        let bad = || Error::Parse(format!("malformed parameter range `{s}`"));
        let inner = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')).ok_or_else(bad)?;
        let (l, r) = inner.split_once(',').ok_or_else(bad)?;
        let end = |t: &str| -> Result<Endpoint> {
            match t.trim() {
                "-inf" => Ok(Endpoint::NegInf),
                "+inf" | "inf" => Ok(Endpoint::PosInf),
                x => parse_rational(x).map(Endpoint::Finite),
            }
        };
        ParamDomain::open(end(l)?, end(r)?)
    }
}

impl core::fmt::Display for ParamDomain {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            ParamDomain::All => f.write_str("QQ"),
            ParamDomain::Open(lo, hi) => write!(f, "({lo},{hi})"),
        }
    }
}

/// Open subsets of ℚ, with parametric elements for family labels.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct IntervalAlgebra;

impl IntervalAlgebra {
    pub fn new() -> IntervalAlgebra {
        IntervalAlgebra
    }

    pub fn from_set(&self, s: &IntervalSet) -> Template {
        Template::from_set(s)
    }
}

impl Heyting for IntervalAlgebra {
    type Elem = Template;

    fn name(&self) -> String {
        "interval".to_string()
    }

    fn bottom(&self) -> Template {
        Template::bottom()
    }

    fn top(&self) -> Template {
        Template::top()
    }

    fn meet(&self, a: &Template, b: &Template) -> Template {
        a.meet(b)
    }

    fn join(&self, a: &Template, b: &Template) -> Template {
        a.join(b)
    }

    fn imp(&self, a: &Template, b: &Template) -> Template {
        a.imp(b)
    }

    fn is_bottom(&self, a: &Template) -> bool {
        a.is_bottom()
    }

    fn is_top(&self, a: &Template) -> bool {
        a.is_top()
    }

    fn contains(&self, a: &Template) -> bool {
        a.arity() <= MAX_PARAMS
    }

    fn elements(&self) -> Result<Vec<Template>> {
        Err(Error::NotEnumerable)
    }

    fn format(&self, a: &Template) -> String {
        a.to_string()
    }

    fn parse_with_params(&self, s: &str, params: &[(&str, Param)]) -> Result<Template> {
        Template::parse(s, params)
    }
}

impl Parametric for IntervalAlgebra {
    type Domain = ParamDomain;

    fn mentions(&self, a: &Template, p: Param) -> bool {
        a.mentions(p)
    }

    fn rename(&self, a: &Template, map: &[(Param, Param)]) -> Template {
        a.rename(map)
    }

    fn quantify(&self, a: &Template, p: Param, domain: &ParamDomain, q: Quantifier) -> Result<Template> {
        Ok(a.quantify(p, domain, q))
    }

    fn parse_domain(&self, s: &str) -> Result<ParamDomain> {
        ParamDomain::parse(s)
    }

    fn format_domain(&self, d: &ParamDomain) -> String {
        d.to_string()
    }
}

fn eliminate_sole(t: &Template, range: &ParamDomain, mode: Quantifier) -> Result<IntervalSet> {
    match t.params() {
        [] => Ok(t.to_interval_set().expect("closed template")),
        [q] => Ok(t.quantify(*q, range, mode).to_interval_set().expect("sole parameter eliminated")),
        ps => Err(Error::Arity { found: ps.len(), expected: 1 }),
    }
}

/// Interior of the intersection of `t(q)` over `q` in `range`.
pub fn family_meet(t: &Template, range: &ParamDomain) -> Result<IntervalSet> {
    eliminate_sole(t, range, Quantifier::Meet)
}

/// Union of `t(q)` over `q` in `range`.
pub fn family_join(t: &Template, range: &ParamDomain) -> Result<IntervalSet> {
    eliminate_sole(t, range, Quantifier::Join)
}

/// Eliminate parameter `bind` of `t`, keeping the others symbolic.
pub fn template_reduce(t: &Template, bind: Param, range: &ParamDomain, mode: Quantifier) -> Result<Template> {
    if t.arity() > MAX_PARAMS {
        return Err(Error::DepthExceeded);
    }
    Ok(t.quantify(bind, range, mode))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::rat;

    fn t(s: &str) -> Template {
        Template::parse(s, &[("q", 1), ("r", 2)]).unwrap()
    }

    fn set(s: &str) -> IntervalSet {
        IntervalSet::parse(s).unwrap()
    }

    #[test]
    fn family_meet_examples() {
        assert_eq!(family_meet(&t("!q"), &ParamDomain::All).unwrap(), IntervalSet::empty());
        assert_eq!(family_meet(&t("(0,1)|(2,3)"), &ParamDomain::All).unwrap(), set("(0,1)|(2,3)"));
        let unit = ParamDomain::parse("(0,1)").unwrap();
        assert_eq!(family_meet(&t("(q,+inf)"), &unit).unwrap(), set("(1,+inf)"));
        assert_eq!(family_meet(&t("(q,r)"), &unit), Err(Error::Arity { found: 2, expected: 1 }));
    }

    #[test]
    fn family_join_examples() {
        let unit = ParamDomain::parse("(0,1)").unwrap();
        assert_eq!(family_join(&t("(q,+inf)"), &unit).unwrap(), set("(0,+inf)"));
        assert_eq!(family_join(&t("0"), &unit).unwrap(), IntervalSet::empty());
        assert_eq!(family_join(&t("!q"), &ParamDomain::All).unwrap(), IntervalSet::full());
    }

    #[test]
    fn template_reduce_examples() {
        let a = IntervalAlgebra;
        let all = ParamDomain::All;
        let r = template_reduce(&t("!r"), 2, &all, Quantifier::Join).unwrap();
        assert!(r.is_top());
        let iff = a.meet(&a.imp(&t("!q"), &t("!r")), &a.imp(&t("!r"), &t("!q")));
        assert_eq!(iff.arity(), 2);
        assert!(template_reduce(&iff, 2, &all, Quantifier::Join).unwrap().is_top());
        assert_eq!(template_reduce(&t("!q"), 2, &all, Quantifier::Join).unwrap(), t("!q"));
    }

    #[test]
    fn lattice_and_imp_examples() {
        let a = IntervalAlgebra;
        assert_eq!(a.meet(&t("(0,2)"), &t("(1,3)")), t("(1,2)"));
        assert_eq!(a.join(&t("(0,2)"), &t("(1,3)")), t("(0,3)"));
        assert_eq!(a.meet(&t("!q"), &t("(q,+inf)")), t("(q,+inf)"));
        assert_eq!(a.join(&t("!q"), &t("(q,+inf)")), t("!q"));
        assert_eq!(a.imp(&t("(0,1)"), &t("(0,1/2)")), t("(-inf,1/2)|(1,+inf)"));
        assert!(a.neg(&t("!q")).is_bottom());
        assert!(a.neg(&t("!3")).is_bottom());
    }

    #[test]
    fn domains_parse_and_print() {
        assert_eq!(ParamDomain::parse("QQ").unwrap(), ParamDomain::All);
        assert_eq!(ParamDomain::parse("(-inf,+inf)").unwrap(), ParamDomain::All);
        let d = ParamDomain::parse("(0, 1/2)").unwrap();
        assert_eq!(d.to_string(), "(0,1/2)");
        assert!(d.contains(&rat(1, 3)) && !d.contains(&rat(1, 2)));
        assert!(ParamDomain::parse("(1,0)").is_err());
        assert!(ParamDomain::parse("[0,1]").is_err());
    }

    #[test]
    fn elements_are_not_enumerable() {
        assert_eq!(IntervalAlgebra.elements(), Err(Error::NotEnumerable));
    }
}
