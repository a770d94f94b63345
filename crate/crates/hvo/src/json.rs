//! JSON documents written by `--out`.

use hvo_core::lab::Report;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FailureJson {
    pub tuple: Vec<String>,
    pub premise: String,
    pub conclusion: String,
}

/// A lemma report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportJson {
    pub lemma: String,
    pub algebra: String,
    pub pool_rank: u32,
    pub instances: u64,
    pub failures: Vec<FailureJson>,
    pub elapsed_ms: u64,
}

impl From<&Report> for ReportJson {
    fn from(r: &Report) -> ReportJson {
        ReportJson {
            lemma: r.lemma.to_string(),
            algebra: r.algebra.clone(),
            pool_rank: r.pool_rank,
            instances: r.instances,
            failures: r
                .failures
                .iter()
                .map(|f| FailureJson {
                    tuple: f.tuple.clone(),
                    premise: f.premise.clone(),
                    conclusion: f.conclusion.clone(),
                })
                .collect(),
            elapsed_ms: r.elapsed_ms,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Definition {
    pub name: String,
    pub literal: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValueJson {
    pub key: String,
    /// An H-set literal over `definitions`.
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThetaJson {
    pub a: String,
    pub b: String,
    pub theta: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResidueJson {
    pub key: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RoundTripJson {
    pub subset: String,
    pub decoded: String,
    pub residue: Vec<ResidueJson>,
}

/// An antichain build.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AntichainJson {
    pub algebra: String,
    pub x: String,
    pub gamma: u32,
    pub minimal_gamma: u32,
    pub perp_value: String,
    pub certified: bool,
    pub pairs: Vec<ThetaJson>,
    pub round_trip: Vec<RoundTripJson>,
    pub definitions: Vec<Definition>,
    pub values: Vec<ValueJson>,
    pub elapsed_ms: u64,
}

/// Pretty JSON with a trailing newline.
pub fn to_pretty<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serialisable");
    s.push('\n');
    s
}
