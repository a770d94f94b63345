//! Exact Heyting-valued models of intuitionistic set theory.
//!
//! The crate is organised bottom-up:
//!
//! - [`order`]: finite posets, their up-set Heyting algebras and the
//!   [`Heyting`](order::Heyting) interface every other module consumes.
//! - [`interval`]: open subsets of the rationals as finite unions of open
//!   intervals, plus parametric [`Template`](interval::Template)s that carry
//!   the infinite meets and joins needed by family entries.
//! - [`hset`]: hash-consed H-valued sets, the mutually recursive membership
//!   and equality semantics, bounded formulas and small-universe enumeration.
//! - [`ordinal`]: successor, uniform addition, incomparability, the
//!   excluded-middle-deficient ordinal, pair encoding and the `Θ` predicate.
//! - [`pipeline`]: lifts, subset coding, merging and the transitive-closure
//!   hierarchy that build antichains of ordinals for hereditarily finite sets.
//! - [`lab`]: pool generation and the lemma verification harness.
//!
//! Everything here is pure computation over `alloc`; file formats, timing and
//! the command line live in the `hvo` crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod error;
pub mod hset;
pub mod interval;
pub mod lab;
pub mod order;
pub mod ordinal;
pub mod pipeline;

pub use error::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;
