//! Truth-value algebras.
//!
//! [`Heyting`] is the interface the set semantics is written against.
//! [`Parametric`] extends it with the symbolic parameters family entries
//! need; finite up-set algebras implement it trivially (they admit no
//! families), the interval algebra implements it for real.

mod upset;
mod validate;
pub mod zoo;

pub use upset::{NoFamilies, Poset, Upset, UpsetAlgebra};
pub use validate::{validate_algebra, LawCheck, LawReport};

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Debug;
use core::hash::Hash;

use crate::Result;

/// Identifier of a family parameter inside a symbolic truth value.
pub type Param = u8;

/// Whether a parameter is eliminated by an infinite meet or an infinite join.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Quantifier {
    Meet,
    Join,
}

/// A Heyting algebra with a literal syntax for its elements.
pub trait Heyting {
    type Elem: Clone + Eq + Ord + Hash + Debug;

    /// Short human-readable name, used in reports.
    fn name(&self) -> String;

    fn bottom(&self) -> Self::Elem;
    fn top(&self) -> Self::Elem;
    fn meet(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn join(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Relative pseudo-complement: the largest `c` with `meet(a, c) <= b`.
    fn imp(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.imp(a, &self.bottom())
    }

    fn le(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.meet(a, b) == *a
    }

    fn is_bottom(&self, a: &Self::Elem) -> bool {
        *a == self.bottom()
    }

    fn is_top(&self, a: &Self::Elem) -> bool {
        *a == self.top()
    }

    /// Whether `a` is a well-formed element of this carrier.
    fn contains(&self, a: &Self::Elem) -> bool;

    /// Every element exactly once, in a deterministic order.
    fn elements(&self) -> Result<Vec<Self::Elem>>;

    fn format(&self, a: &Self::Elem) -> String;

    fn parse(&self, s: &str) -> Result<Self::Elem> {
        self.parse_with_params(s, &[])
    }

    /// Parse an element literal in which the given names denote parameters.
    fn parse_with_params(&self, s: &str, params: &[(&str, Param)]) -> Result<Self::Elem>;
}

/// Heyting algebras whose elements may depend on family parameters.
pub trait Parametric: Heyting {
    /// The range a family parameter runs over.
    type Domain: Clone + Eq + Ord + Hash + Debug;

    fn mentions(&self, a: &Self::Elem, p: Param) -> bool;

    /// Rename parameters simultaneously; unmapped parameters stay put.
    fn rename(&self, a: &Self::Elem, map: &[(Param, Param)]) -> Self::Elem;

    /// Eliminate `p` by a meet or join over `domain`.
    fn quantify(&self, a: &Self::Elem, p: Param, domain: &Self::Domain, q: Quantifier) -> Result<Self::Elem>;

    fn parse_domain(&self, s: &str) -> Result<Self::Domain>;

    fn format_domain(&self, d: &Self::Domain) -> String;
}
