//! The work behind each subcommand, independent of argument parsing.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;
use std::time::Instant;

use anyhow::Result;
use hvo_core::hset::{Hf, Universe};
use hvo_core::interval::IntervalAlgebra;
use hvo_core::lab::{self, LabConfig, LemmaId, Pools, Report};
use hvo_core::order::{Heyting, Parametric};
use hvo_core::ordinal::{self, WitnessPair};
use hvo_core::pipeline::{self, Certify};

use crate::files::Source;
use crate::json::{AntichainJson, Definition, ResidueJson, RoundTripJson, ThetaJson, ValueJson};

fn lemmas_on<H: Parametric + Clone>(
    u: &mut Universe<H>,
    pools: &Pools,
    pair: Option<&WitnessPair<H::Elem>>,
    lemmas: &[LemmaId],
    cfg: &LabConfig,
) -> Vec<Report> {
    lemmas
        .iter()
        .map(|&id| {
            let start = Instant::now();
            let mut r = lab::run_lemma(u, id, pools, pair, cfg);
            r.elapsed_ms = start.elapsed().as_millis() as u64;
            u.clear_memo();
            r
        })
        .collect()
}

/// All requested lemmas over one algebra, optionally with equality
/// broken. The interval algebra uses its fixed pool and the shipped
/// witness pair.
pub fn lemmas_for(source: &Source, lemmas: &[LemmaId], cfg: &LabConfig, broken: bool) -> Result<Vec<Report>> {
    match source {
        Source::Finite(alg) => {
            let mut u = Universe::new(alg.clone());
            if broken {
                u.inject_one_sided_eq();
            }
            let pools = lab::finite_pools(&mut u, cfg)?;
            Ok(lemmas_on(&mut u, &pools, None, lemmas, cfg))
        }
        Source::Interval => {
            let mut u = Universe::new(IntervalAlgebra);
            if broken {
                u.inject_one_sided_eq();
            }
            let (pools, p) = lab::interval_pools(&mut u)?;
            Ok(lemmas_on(&mut u, &pools, Some(&p), lemmas, cfg))
        }
    }
}

/// [`lemmas_for`] over several algebras on up to `jobs` threads. Reports
/// come back in source order, lemmas ascending.
pub fn run_lemmas(sources: &[Source], lemmas: &[LemmaId], cfg: &LabConfig, jobs: usize) -> Result<Vec<Report>> {
    run_lemmas_with(sources, lemmas, cfg, jobs, false)
}

/// [`run_lemmas`], optionally with equality broken to its `⊆` half, to
/// check that failures are detected and reported.
pub fn run_lemmas_with(
    sources: &[Source],
    lemmas: &[LemmaId],
    cfg: &LabConfig,
    jobs: usize,
    broken: bool,
) -> Result<Vec<Report>> {
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<Result<Vec<Report>>>>> = Mutex::new(sources.iter().map(|_| None).collect());
    thread::scope(|s| {
        for _ in 0..jobs.clamp(1, sources.len().max(1)) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                if i >= sources.len() {
                    break;
                }
                let r = lemmas_for(&sources[i], lemmas, cfg, broken);
                results.lock().expect("no poisoning")[i] = Some(r);
            });
        }
    });
    let mut out = Vec::new();
    for r in results.into_inner().expect("no poisoning") {
        out.extend(r.expect("every source ran")?);
    }
    Ok(out)
}

/// The outcome of `antichain build`.
pub struct AntichainRun {
    pub json: AntichainJson,
    /// Whether something that should hold failed: a `Θ` below the pair's
    /// incomparability value, or a subset that does not decode to itself.
    pub violated: bool,
}

/// Build `f_{x,γ}` (γ defaults to the minimal stage), certify it per
/// `mode` and, for a certified function on at most ten keys, round-trip
/// every subset of its domain.
pub fn build_antichain<H: Parametric>(
    u: &mut Universe<H>,
    p: &WitnessPair<H::Elem>,
    x: &Hf,
    gamma: Option<u32>,
    mode: Certify,
) -> Result<AntichainRun> {
    let start = Instant::now();
    let gamma = gamma.unwrap_or_else(|| pipeline::minimal_stage(x));
    let a = pipeline::build_antichain(u, p, x, gamma, mode)?;
    let f = &a.function;
    let mut violated = false;
    let mut pairs = Vec::new();
    let certified = f.is_certified();
    if let Some(c) = f.certificate() {
        for (y, z, t) in &c.pairs {
            violated |= !u.algebra().le(&p.perp_value, t);
            pairs.push(ThetaJson { a: y.to_string(), b: z.to_string(), theta: u.algebra().format(t) });
        }
    }
    let mut round_trip = Vec::new();
    if certified && f.len() <= 10 {
        let domain = Hf::from_members(f.keys().cloned().collect());
        for y in domain.subsets() {
            let tau = pipeline::subset_encode(u, f, &y)?;
            let d = pipeline::subset_decode(u, f, tau)?;
            let decoded = Hf::from_members(d.keys);
            violated |= decoded != y || !d.residue.is_empty();
            let residue = d
                .residue
                .iter()
                .map(|(k, v)| ResidueJson { key: k.to_string(), value: u.algebra().format(v) })
                .collect();
            round_trip.push(RoundTripJson { subset: y.to_string(), decoded: decoded.to_string(), residue });
        }
    }
    let ids: Vec<_> = f.entries().iter().map(|(_, v)| *v).collect();
    let shared = u.format_shared(&ids);
    let json = AntichainJson {
        algebra: u.algebra().name(),
        x: x.to_string(),
        gamma,
        minimal_gamma: a.minimal_gamma,
        perp_value: u.algebra().format(&p.perp_value),
        certified,
        pairs,
        round_trip,
        definitions: shared.defs.into_iter().map(|(name, literal)| Definition { name, literal }).collect(),
        values: f.keys().zip(shared.roots).map(|(k, v)| ValueJson { key: k.to_string(), value: v }).collect(),
        elapsed_ms: start.elapsed().as_millis() as u64,
    };
    Ok(AntichainRun { json, violated })
}

/// The certification values of the shipped witness pair.
pub struct WitnessCheck {
    pub lines: Vec<(String, String)>,
    pub incomparable: bool,
}

pub fn witness_check() -> Result<WitnessCheck> {
    let mut u = Universe::new(IntervalAlgebra);
    let p = ordinal::witness_pair(&mut u)?;
    let [ab, aeb, ba, bea] = ordinal::constituents(&mut u, p.a, p.b)?;
    let tri = ordinal::trichotomy(&mut u, p.a, p.b)?;
    let alg = u.algebra();
    let lines = [
        ("A", u.format_hset(p.a)),
        ("B", u.format_hset(p.b)),
        ("A in B", alg.format(&ab)),
        ("A = B", alg.format(&aeb)),
        ("B in A", alg.format(&ba)),
        ("B = A", alg.format(&bea)),
        ("tri(A,B)", alg.format(&tri)),
        ("perp(A,B)", alg.format(&p.perp_value)),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v))
    .collect();
    Ok(WitnessCheck { lines, incomparable: p.is_incomparable(&u) })
}
