//! The interval algebra: open subsets of ℚ given as finite unions of open
//! intervals with rational or infinite endpoints.
//!
//! [`IntervalSet`] is the closed (parameter-free) carrier with direct sweep
//! implementations of the lattice operations. [`Template`] generalises it to
//! sets whose endpoints may be family parameters; it is the element type of
//! [`IntervalAlgebra`] and supports exact elimination of parameters by
//! infinite meets and joins.

mod algebra;
mod literal;
mod set;
mod template;

pub use algebra::{family_join, family_meet, template_reduce, IntervalAlgebra, ParamDomain};
pub use set::IntervalSet;
pub use template::{Template, MAX_PARAMS};

use alloc::string::{String, ToString};
use core::fmt;

pub type Rational = num_rational::BigRational;

/// Parse `p`, `-p` or `p/q` as an exact rational.
pub fn parse_rational(s: &str) -> crate::Result<Rational> {
    let bad = || crate::Error::Parse(alloc::format!("malformed rational `{s}`"));
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let digits = |t: &str, signed: bool| {
        let body = if signed { t.strip_prefix('-').or(t.strip_prefix('+')).unwrap_or(t) } else { t };
        !body.is_empty() && body.bytes().all(|b| b.is_ascii_digit())
    };
    if !digits(num, true) || !digits(den, false) {
        return Err(bad());
    }
    let n: num_bigint::BigInt = num.trim_start_matches('+').parse().map_err(|_| bad())?;
    let d: num_bigint::BigInt = den.parse().map_err(|_| bad())?;
    if d == num_bigint::BigInt::from(0) {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

pub(crate) fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// An interval endpoint. The derived order puts `NegInf` below every
/// rational and `PosInf` above.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Endpoint {
    NegInf,
    Finite(Rational),
    PosInf,
}

impl Endpoint {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Endpoint::Finite(r) => Some(r),
            _ => None,
        }
    }
}

impl From<Rational> for Endpoint {
    fn from(r: Rational) -> Self {
        Endpoint::Finite(r)
    }
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Endpoint::NegInf => f.write_str("-inf"),
            Endpoint::PosInf => f.write_str("+inf"),
            Endpoint::Finite(r) => f.write_str(&format_rational(r)),
        }
    }
}

/// Shorthand for an integer rational, handy in tests.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}
