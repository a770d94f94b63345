//! Command-line front end for `hvo-core`: poset and definitions files,
//! JSON reports and the `hvo` subcommands.

pub mod cli;
pub mod files;
pub mod json;
pub mod runs;
