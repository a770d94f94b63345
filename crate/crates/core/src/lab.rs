//! Lemma verification.
//!
//! Every statement `Hyp → Concl` is checked in its lattice form
//! `⟦Hyp⟧ ≤ ⟦Concl⟧` on each tuple of a pool; negative statements
//! `Hyp → ¬φ` are checked as `⟦Hyp⟧ ∧ ⟦φ⟧ = ⊥`. Pools are enumerated
//! H-sets, usually restricted to those whose ordinal value is ⊤.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::hset::{enumerate_hsets, Hf, NodeId, Universe};
use crate::interval::{IntervalAlgebra, Template};
use crate::order::{Heyting, Parametric};
use crate::ordinal::{self, WitnessPair};
use crate::pipeline::{self, MetaFunction};
use crate::{Error, Result};

type Elem<H> = <H as Heyting>::Elem;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LemmaId {
    L1,
    L2,
    L3,
    L4,
    L5,
    L6,
    L7,
    L8,
    L9,
    L10,
    L11,
}

impl LemmaId {
    pub const ALL: [LemmaId; 11] = [
        LemmaId::L1,
        LemmaId::L2,
        LemmaId::L3,
        LemmaId::L4,
        LemmaId::L5,
        LemmaId::L6,
        LemmaId::L7,
        LemmaId::L8,
        LemmaId::L9,
        LemmaId::L10,
        LemmaId::L11,
    ];

    pub fn info(self) -> LemmaInfo {
        use LemmaId::*;
        use PoolFilter::*;
        let (statement, arity, filter) = match self {
            L1 => ("⟦x ∈ x⟧ = ⊥", 1, Everything),
            L2 => ("Ord α ∧ Ord β ∧ α + β ∈ α = ⊥", 2, TopOrdinals),
            L3 => ("α + β ∈ α + γ ≤ β ∈ γ, α + β = α + γ ≤ β = γ", 3, TopOrdinals),
            L4 => ("α ⊥ β ≤ α ⊥ β⁺ + γ", 3, TopOrdinals),
            L5 => ("α ⊥ β ∧ (α⁺+γ₁)∪(β⁺+γ₂) = (α⁺+δ₁)∪(β⁺+δ₂) ≤ γ₁ = δ₁ ∧ γ₂ = δ₂", 6, TopOrdinals),
            L6 => ("α ⊥ β ≤ Θ(γ, α⁺∪(β⁺+γ), δ, α⁺∪(β⁺+δ))", 4, TopOrdinals),
            L7 => ("f pairwise incomparable ≤ (z ∈ y ↔ f(z) ∈ ⋃_{t∈y} f(t)⁺)", 2, TopOrdinals),
            L8 => ("α ⊥ β ∧ f pairwise incomparable ≤ Θ for the pow-lift", 2, TopOrdinals),
            L9 => ("α ⊥ β ∧ stages pairwise incomparable ≤ Θ for the merge", 2, TopOrdinals),
            L10 => ("y ∈ tc(x) ⇒ y ∈ tc(x)_{rank(y)+1}; stages monotone and transitive", 0, Everything),
            L11 => ("f_{x,γ}(y) = f_{y,γ}(y) for y ∈ tc(x)", 0, Everything),
        };
        LemmaInfo { id: self, statement, arity, filter }
    }

    /// Checked through pipeline constructions rather than pool tuples.
    pub fn uses_pipeline(self) -> bool {
        matches!(self, LemmaId::L7 | LemmaId::L8 | LemmaId::L9 | LemmaId::L11)
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for LemmaId {
    type Err = Error;

    fn from_str(s: &str) -> Result<LemmaId> {
        LemmaId::ALL
            .into_iter()
            .find(|l| l.to_string().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Parse(format!("unknown lemma `{s}` (expected L1 … L11)")))
    }
}

/// Which pool members a lemma draws from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PoolFilter {
    Everything,
    /// Only sets whose ordinal value is ⊤.
    TopOrdinals,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaInfo {
    pub id: LemmaId,
    /// The checked inequality, informally.
    pub statement: &'static str,
    /// Tuple length drawn from the pool (0 for meta-level lemmas).
    pub arity: usize,
    pub filter: PoolFilter,
}

/// One instance where the inequality fails, or whose evaluation errored
/// (then `premise` is `error` and `conclusion` the message).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub tuple: Vec<String>,
    pub premise: String,
    pub conclusion: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub lemma: LemmaId,
    pub algebra: String,
    pub pool_rank: u32,
    pub pool_size: usize,
    pub instances: u64,
    /// Tuples outside the supported fragment (both addends carrying
    /// families), not evaluated.
    pub skipped: u64,
    pub failures: Vec<Failure>,
    /// Filled in by callers that measure time.
    pub elapsed_ms: u64,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Run parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabConfig {
    pub rank: u32,
    /// Largest pool materialised exhaustively.
    pub pool_budget: usize,
    /// Largest pool scanned exhaustively in chunks; beyond it pools are
    /// sampled down to `pool_budget`.
    pub scan_limit: u64,
    /// Largest number of tuples checked exhaustively per lemma.
    pub tuple_budget: usize,
    /// Largest number of witness pairs for pipeline lemmas.
    pub pipeline_budget: usize,
    pub seed: u64,
}

impl Default for LabConfig {
    fn default() -> LabConfig {
        LabConfig {
            rank: 2,
            pool_budget: 100_000,
            scan_limit: 1 << 25,
            tuple_budget: 20_000,
            pipeline_budget: 50,
            seed: 0,
        }
    }
}

/// Sets per fresh universe when scanning an index space.
const CHUNK: usize = 1 << 17;

/// The H-sets of one rank as a mixed-radix number: index `i` spells the
/// labels of the sets of the previous rank in base `|H|`, least
/// significant first, in the order of [`enumerate_hsets`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexSpace {
    rank: u32,
    members: usize,
    radix: usize,
}

impl IndexSpace {
    /// `None` when the previous rank has more than `budget` sets.
    pub fn new<H: Parametric>(u: &mut Universe<H>, rank: u32, budget: usize) -> Result<Option<IndexSpace>> {
        let radix = u.algebra().elements()?.len();
        if rank == 0 {
            return Ok(Some(IndexSpace { rank, members: 0, radix }));
        }
        let below = enumerate_hsets(u, rank - 1, budget, 0)?;
        Ok(below.exhaustive.then_some(IndexSpace { rank, members: below.sets.len(), radix }))
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    /// Number of indices, if it fits in 64 bits.
    pub fn size(&self) -> Option<u64> {
        (self.radix as u64).checked_pow(self.members as u32)
    }

    /// The sets of the previous rank, which every index labels.
    pub fn level<H: Parametric>(&self, u: &mut Universe<H>) -> Result<Vec<NodeId>> {
        if self.rank == 0 {
            return Ok(Vec::new());
        }
        Ok(enumerate_hsets(u, self.rank - 1, usize::MAX, 0)?.sets)
    }

    pub fn get<H: Parametric>(&self, u: &mut Universe<H>, level: &[NodeId], labels: &[Elem<H>], mut i: u64) -> NodeId {
        let mut entries = Vec::with_capacity(level.len());
        for &m in level {
            entries.push((m, labels[(i % self.radix as u64) as usize].clone()));
            i /= self.radix as u64;
        }
        u.set(entries)
    }
}

/// Sets a lemma draws from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Pool {
    Sets(Vec<NodeId>),
    /// Positions in an index space (all of them when `indices` is `None`),
    /// built on demand. `level` lives in the universe the pool was made for.
    Indexed {
        space: IndexSpace,
        level: Vec<NodeId>,
        indices: Option<Vec<u32>>,
    },
}

impl Pool {
    pub fn len(&self) -> usize {
        match self {
            Pool::Sets(s) => s.len(),
            Pool::Indexed { indices: Some(v), .. } => v.len(),
            Pool::Indexed { space, .. } => space.size().map_or(usize::MAX, |n| n as usize),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn index(&self, i: usize) -> u64 {
        match self {
            Pool::Indexed { indices: Some(v), .. } => v[i] as u64,
            _ => i as u64,
        }
    }

    /// The `i`-th member, built in `u` if necessary.
    pub fn get<H: Parametric>(&self, u: &mut Universe<H>, i: usize) -> Result<NodeId> {
        match self {
            Pool::Sets(s) => Ok(s[i]),
            Pool::Indexed { space, level, .. } => {
                let labels = u.algebra().elements()?;
                Ok(space.get(u, level, &labels, self.index(i)))
            }
        }
    }

    /// Visit every member in order. Indexed members are built in a fresh
    /// universe per chunk, so memory stays bounded.
    fn scan<H: Parametric + Clone>(
        &self,
        u: &mut Universe<H>,
        mut visit: impl FnMut(&mut Universe<H>, usize, NodeId) -> Result<()>,
    ) -> Result<()> {
        match self {
            Pool::Sets(s) => {
                for (i, &x) in s.iter().enumerate() {
                    visit(u, i, x)?;
                }
                Ok(())
            }
            Pool::Indexed { space, .. } => {
                let n = self.len();
                let labels = u.algebra().elements()?;
                let mut start = 0;
                while start < n {
                    let mut fresh = Universe::new(u.algebra().clone());
                    let level = space.level(&mut fresh)?;
                    for i in start..(start + CHUNK).min(n) {
                        let x = space.get(&mut fresh, &level, &labels, self.index(i));
                        visit(&mut fresh, i, x)?;
                    }
                    start += CHUNK;
                }
                Ok(())
            }
        }
    }
}

/// The sets lemmas are checked on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pools {
    pub rank: u32,
    pub all: Pool,
    pub ordinals: Pool,
    pub exhaustive: bool,
}

impl Pools {
    pub fn from_sets(rank: u32, all: Vec<NodeId>, ordinals: Vec<NodeId>, exhaustive: bool) -> Pools {
        Pools { rank, all: Pool::Sets(all), ordinals: Pool::Sets(ordinals), exhaustive }
    }

    pub fn get(&self, filter: PoolFilter) -> &Pool {
        match filter {
            PoolFilter::Everything => &self.all,
            PoolFilter::TopOrdinals => &self.ordinals,
        }
    }
}

/// The pool of `enumerate_hsets`, optionally cut down to ⊤-ordinals.
pub fn generate_pool<H: Parametric>(
    u: &mut Universe<H>,
    filter: PoolFilter,
    rank: u32,
    budget: usize,
    seed: u64,
) -> Result<Vec<NodeId>> {
    let all = enumerate_hsets(u, rank, budget, seed)?.sets;
    match filter {
        PoolFilter::Everything => Ok(all),
        PoolFilter::TopOrdinals => top_ordinals(u, &all),
    }
}

fn is_top_ordinal<H: Parametric>(u: &mut Universe<H>, x: NodeId) -> Result<bool> {
    let v = ordinal::is_ord(u, x)?;
    Ok(u.algebra().is_top(&v))
}

fn top_ordinals<H: Parametric>(u: &mut Universe<H>, sets: &[NodeId]) -> Result<Vec<NodeId>> {
    let mut out = Vec::new();
    for &x in sets {
        if is_top_ordinal(u, x)? {
            out.push(x);
        }
    }
    Ok(out)
}

/// Both pools for a finite algebra: materialised when the rank has at most
/// `pool_budget` sets, scanned in chunks up to `scan_limit`, sampled beyond.
pub fn finite_pools<H: Parametric + Clone>(u: &mut Universe<H>, cfg: &LabConfig) -> Result<Pools> {
    let space = IndexSpace::new(u, cfg.rank, cfg.pool_budget)?;
    let size = space.as_ref().and_then(IndexSpace::size);
    match (space, size) {
        (Some(space), Some(n)) if n > cfg.pool_budget as u64 && n <= cfg.scan_limit.min(u32::MAX as u64) => {
            let level = space.level(u)?;
            let all = Pool::Indexed { space: space.clone(), level: level.clone(), indices: None };
            let mut ords = Vec::new();
            all.scan(u, |w, i, x| {
                if is_top_ordinal(w, x)? {
                    ords.push(i as u32);
                }
                Ok(())
            })?;
            let ordinals = Pool::Indexed { space, level, indices: Some(ords) };
            Ok(Pools { rank: cfg.rank, all, ordinals, exhaustive: true })
        }
        _ => {
            let e = enumerate_hsets(u, cfg.rank, cfg.pool_budget, cfg.seed)?;
            let ordinals = top_ordinals(u, &e.sets)?;
            Ok(Pools::from_sets(cfg.rank, e.sets, ordinals, e.exhaustive))
        }
    }
}

/// The interval pool `0̌, 1̌, 2̌, 3̌, A` together with the witness pair.
pub fn interval_pools(u: &mut Universe<IntervalAlgebra>) -> Result<(Pools, WitnessPair<Template>)> {
    let p = ordinal::witness_pair(u)?;
    let mut all = ordinal::numerals(u, 3);
    all.push(p.a);
    let ordinals = top_ordinals(u, &all)?;
    Ok((Pools::from_sets(3, all, ordinals, true), p))
}

/// All `n^k` index tuples if that is within `budget`, else `budget` seeded
/// random ones.
pub fn index_tuples(n: usize, k: usize, budget: usize, seed: u64) -> (Vec<Vec<usize>>, bool) {
    if n == 0 {
        return (Vec::new(), true);
    }
    let total = (n as u128).checked_pow(k as u32);
    if total.is_some_and(|t| t <= budget as u128) {
        let mut out = Vec::new();
        let mut digits = vec![0usize; k];
        loop {
            out.push(digits.clone());
            let mut i = k;
            loop {
                if i == 0 {
                    return (out, true);
                }
                i -= 1;
                digits[i] += 1;
                if digits[i] < n {
                    break;
                }
                digits[i] = 0;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let out = (0..budget).map(|_| (0..k).map(|_| rng.gen_range(0..n)).collect()).collect();
    (out, false)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    /// `premise ≤ conclusion`.
    Le,
    /// `premise ∧ conclusion = ⊥`.
    Disjoint,
}

struct Check<E> {
    premise: E,
    conclusion: E,
    kind: Kind,
}

/// Checks grouped under a tuple label.
type Labelled<E> = Vec<(String, Vec<Check<E>>)>;

impl<E> Check<E> {
    fn le(premise: E, conclusion: E) -> Check<E> {
        Check { premise, conclusion, kind: Kind::Le }
    }
}

struct Run<'a, H: Parametric> {
    u: &'a mut Universe<H>,
    report: Report,
}

impl<H: Parametric> Run<'_, H> {
    fn record(&mut self, tuple: impl FnOnce(&Universe<H>) -> Vec<String>, outcome: Result<Vec<Check<Elem<H>>>>) {
        record(self.u, &mut self.report, tuple, outcome);
    }
}

fn record<H: Parametric>(
    u: &Universe<H>,
    report: &mut Report,
    tuple: impl FnOnce(&Universe<H>) -> Vec<String>,
    outcome: Result<Vec<Check<Elem<H>>>>,
) {
    match outcome {
        Ok(checks) => {
            report.instances += 1;
            let alg = u.algebra();
            let bad = checks.into_iter().find(|c| match c.kind {
                Kind::Le => !alg.le(&c.premise, &c.conclusion),
                Kind::Disjoint => !alg.is_bottom(&alg.meet(&c.premise, &c.conclusion)),
            });
            if let Some(c) = bad {
                let (premise, conclusion) = (alg.format(&c.premise), alg.format(&c.conclusion));
                report.failures.push(Failure { tuple: tuple(u), premise, conclusion });
            }
        }
        Err(Error::UnsupportedAddend(_)) => report.skipped += 1,
        Err(e) => {
            report.instances += 1;
            report.failures.push(Failure { tuple: tuple(u), premise: "error".into(), conclusion: e.to_string() });
        }
    }
}

fn names<H: Parametric>(u: &Universe<H>, ids: &[NodeId]) -> Vec<String> {
    ids.iter().map(|&i| u.format_hset(i)).collect()
}

/// Check one lemma.
///
/// `pair` fixes the incomparable pair used by the pipeline lemmas; without
/// one, pairs are drawn from the ⊤-ordinal pool. Per-instance evaluation
/// errors are recorded as failures.
pub fn run_lemma<H: Parametric + Clone>(
    u: &mut Universe<H>,
    id: LemmaId,
    pools: &Pools,
    pair: Option<&WitnessPair<Elem<H>>>,
    cfg: &LabConfig,
) -> Report {
    let info = id.info();
    let pool = pools.get(info.filter);
    let report = Report {
        lemma: id,
        algebra: u.algebra().name(),
        pool_rank: pools.rank,
        pool_size: pool.len(),
        instances: 0,
        skipped: 0,
        failures: Vec::new(),
        elapsed_ms: 0,
    };
    let mut run = Run { u, report };
    match id {
        LemmaId::L10 => covering(&mut run, cfg.rank),
        LemmaId::L11 => agreement(&mut run, pair, pool),
        LemmaId::L7 | LemmaId::L8 | LemmaId::L9 => {
            let pairs: Vec<Result<(NodeId, NodeId)>> = match pair {
                Some(p) => vec![Ok((p.a, p.b))],
                None => {
                    let (ts, _) = index_tuples(pool.len(), 2, cfg.pipeline_budget, cfg.seed);
                    ts.into_iter().map(|t| Ok((pool.get(run.u, t[0])?, pool.get(run.u, t[1])?))).collect()
                }
            };
            for ab in pairs {
                let outcome = ab.and_then(|(a, b)| Ok(((a, b), pipeline_instance(run.u, id, a, b)?)));
                match outcome {
                    Ok(((a, b), instances)) => {
                        for (label, checks) in instances {
                            run.record(|u| [names(u, &[a, b]), vec![label]].concat(), Ok(checks));
                        }
                    }
                    Err(e) => run.record(|_| Vec::new(), Err(e)),
                }
            }
        }
        _ if info.arity == 1 => {
            let Run { u, report } = &mut run;
            let scanned = pool.scan(u, |w, _, x| {
                let outcome = tuple_instance(w, id, &[x]);
                record(w, report, |w| names(w, &[x]), outcome);
                Ok(())
            });
            if let Err(e) = scanned {
                run.record(|_| Vec::new(), Err(e));
            }
        }
        _ => {
            let (tuples, _) = index_tuples(pool.len(), info.arity, cfg.tuple_budget, cfg.seed);
            for t in tuples {
                let ids: Result<Vec<NodeId>> = t.iter().map(|&i| pool.get(run.u, i)).collect();
                match ids {
                    Ok(ids) => {
                        let outcome = tuple_instance(run.u, id, &ids);
                        run.record(|u| names(u, &ids), outcome);
                    }
                    Err(e) => run.record(|_| Vec::new(), Err(e)),
                }
            }
        }
    }
    run.report
}

fn tuple_instance<H: Parametric>(u: &mut Universe<H>, id: LemmaId, t: &[NodeId]) -> Result<Vec<Check<Elem<H>>>> {
    let top = u.algebra().top();
    Ok(match id {
        LemmaId::L1 => vec![Check { premise: top, conclusion: u.mem(t[0], t[0])?, kind: Kind::Disjoint }],
        LemmaId::L2 => {
            let s = ordinal::ord_add(u, t[0], t[1])?;
            vec![Check { premise: top, conclusion: u.mem(s, t[0])?, kind: Kind::Disjoint }]
        }
        LemmaId::L3 => {
            let (x, y) = (ordinal::ord_add(u, t[0], t[1])?, ordinal::ord_add(u, t[0], t[2])?);
            vec![Check::le(u.mem(x, y)?, u.mem(t[1], t[2])?), Check::le(u.eq(x, y)?, u.eq(t[1], t[2])?)]
        }
        LemmaId::L4 => {
            let s = ordinal::hsucc(u, t[1]);
            let s = ordinal::ord_add(u, s, t[2])?;
            vec![Check::le(ordinal::perp(u, t[0], t[1])?, ordinal::perp(u, t[0], s)?)]
        }
        LemmaId::L5 => {
            let perp = ordinal::perp(u, t[0], t[1])?;
            let x = ordinal::pair_encode_raw(u, t[0], t[1], t[2], t[3])?;
            let y = ordinal::pair_encode_raw(u, t[0], t[1], t[4], t[5])?;
            let e = u.eq(x, y)?;
            let (c1, c2) = (u.eq(t[2], t[4])?, u.eq(t[3], t[5])?);
            let alg = u.algebra();
            vec![Check::le(alg.meet(&perp, &e), alg.meet(&c1, &c2))]
        }
        LemmaId::L6 => {
            let perp = ordinal::perp(u, t[0], t[1])?;
            let zero = u.empty();
            let x = ordinal::pair_encode_raw(u, t[0], t[1], zero, t[2])?;
            let y = ordinal::pair_encode_raw(u, t[0], t[1], zero, t[3])?;
            vec![Check::le(perp, ordinal::theta(u, t[2], x, t[3], y)?)]
        }
        _ => unreachable!("not a tuple lemma"),
    })
}

fn meet_all<H: Parametric>(u: &Universe<H>, xs: impl IntoIterator<Item = Elem<H>>) -> Elem<H> {
    let alg = u.algebra();
    xs.into_iter().fold(alg.top(), |acc, x| alg.meet(&acc, &x))
}

/// Meet of the `Θ` values of a certified function.
fn incomparability<H: Parametric>(u: &mut Universe<H>, f: &mut MetaFunction<Elem<H>>) -> Result<Elem<H>> {
    if f.certificate().is_none_or(|c| c.pairs.len() != f.len() * f.len().saturating_sub(1) / 2) {
        pipeline::certify(u, f)?;
    }
    let vals: Vec<Elem<H>> = f.certificate().unwrap().pairs.iter().map(|(_, _, t)| t.clone()).collect();
    Ok(meet_all(u, vals))
}

fn numeral_function<H: Parametric>(u: &mut Universe<H>, keys: &[u32]) -> Result<MetaFunction<Elem<H>>> {
    MetaFunction::new(keys.iter().map(|&k| (Hf::numeral(k), u.numeral(k))).collect())
}

fn theta_checks<H: Parametric>(
    u: &mut Universe<H>,
    premise: &Elem<H>,
    g: &mut MetaFunction<Elem<H>>,
) -> Result<Labelled<Elem<H>>> {
    pipeline::certify(u, g)?;
    Ok(g.certificate()
        .unwrap()
        .pairs
        .iter()
        .map(|(y, z, t)| (format!("Θ({y},{z})"), vec![Check::le(premise.clone(), t.clone())]))
        .collect())
}

/// Instances of the subset-decoding, pow-lift and merge statements for the
/// pair `(a, b)`, each labelled for reporting.
#[allow(clippy::type_complexity)]
fn pipeline_instance<H: Parametric>(
    u: &mut Universe<H>,
    id: LemmaId,
    a: NodeId,
    b: NodeId,
) -> Result<Labelled<Elem<H>>> {
    let p = WitnessPair::new(u, a, b)?;
    let f0 = numeral_function(u, &[0, 1])?;
    let mut f = pipeline::perp_lift(u, &p, &f0, false)?;
    let pi = incomparability(u, &mut f)?;
    let keys = Hf::numeral(2);
    let mut out = Vec::new();
    match id {
        LemmaId::L7 => {
            for y in keys.subsets() {
                let tau = pipeline::subset_encode(u, &f, &y)?;
                let cy = u.check(&y);
                for (z, fz) in f.entries().to_vec() {
                    let cz = u.check(&z);
                    let lhs = u.mem(cz, cy)?;
                    let rhs = u.mem(fz, tau)?;
                    let alg = u.algebra();
                    let iff = alg.meet(&alg.imp(&lhs, &rhs), &alg.imp(&rhs, &lhs));
                    out.push((format!("z={z}, y={y}"), vec![Check::le(pi.clone(), iff)]));
                }
            }
        }
        LemmaId::L8 => {
            let mut g = pipeline::pow_lift(u, &p, &f, &keys.subsets(), false)?;
            let premise = u.algebra().meet(&p.perp_value, &pi);
            out = theta_checks(u, &premise, &mut g)?;
        }
        LemmaId::L9 => {
            let f1_0 = numeral_function(u, &[1, 2])?;
            let mut f1 = pipeline::perp_lift(u, &p, &f1_0, false)?;
            let pi1 = incomparability(u, &mut f1)?;
            let mut g = pipeline::merge_families(u, &p, &[(0, f), (1, f1)], false)?;
            let premise = meet_all(u, [p.perp_value.clone(), pi, pi1]);
            out = theta_checks(u, &premise, &mut g)?;
        }
        _ => unreachable!("not a pipeline lemma"),
    }
    Ok(out)
}

/// Covering, monotonicity and transitivity of the stages `tc(x)_n` for all
/// `x` of rank at most `rank + 1` (capped at 4).
fn covering<H: Parametric>(run: &mut Run<'_, H>, rank: u32) {
    let r = (rank + 1).min(4);
    for x in Hf::universe_below(r + 1) {
        let tc = x.transitive_closure();
        let last = pipeline::minimal_stage(&x) + 1;
        let stages: Vec<Hf> = (0..=last).map(|n| Hf::from_members(pipeline::tc_stage(&x, n))).collect();
        let mut problems: Vec<String> = Vec::new();
        for y in &tc {
            if !stages[(y.rank() + 1) as usize].contains(y) {
                problems.push(format!("{y} not covered"));
            }
        }
        for (n, w) in stages.windows(2).enumerate() {
            if !w[0].is_subset(&w[1]) {
                problems.push(format!("stage {n} not below stage {}", n + 1));
            }
            if w[0].members().iter().any(|m| !m.is_subset(&w[0])) {
                problems.push(format!("stage {n} not transitive"));
            }
        }
        if !stages[last as usize - 1].contains(&x) {
            problems.push(format!("{x} missing from its minimal stage"));
        }
        let top = run.u.algebra().top();
        let bottom = run.u.algebra().bottom();
        let conclusion = if problems.is_empty() { top.clone() } else { bottom };
        let label = if problems.is_empty() { x.to_string() } else { format!("{x}: {}", problems.join("; ")) };
        run.record(|_| vec![label], Ok(vec![Check::le(top, conclusion)]));
    }
}

/// `f_{x,γ}(y)` against `f_{y,γ}(y)` for all `x` of rank at most 3 and
/// `y ∈ tc(x)`, at the minimal sufficient stage of `x`.
fn agreement<H: Parametric>(run: &mut Run<'_, H>, pair: Option<&WitnessPair<Elem<H>>>, pool: &Pool) {
    let p = match pair {
        Some(p) => p.clone(),
        None => {
            let mut a = run.u.numeral(1);
            for i in 0..pool.len().min(64) {
                match pool.get(run.u, i) {
                    Ok(x) if !run.u.is_check(x) => {
                        a = x;
                        break;
                    }
                    _ => {}
                }
            }
            let b = run.u.numeral(2);
            match WitnessPair::new(run.u, a, b) {
                Ok(p) => p,
                Err(e) => return run.record(|_| vec![], Err(e)),
            }
        }
    };
    for x in Hf::universe_below(4) {
        let gamma = pipeline::minimal_stage(&x);
        let fx = match pipeline::build_antichain(run.u, &p, &x, gamma, pipeline::Certify::None) {
            Ok(a) => a.function,
            Err(e) => {
                run.record(|_| vec![x.to_string()], Err(e));
                continue;
            }
        };
        for y in x.transitive_closure() {
            let outcome = (|| {
                let fy = pipeline::build_antichain(run.u, &p, &y, gamma, pipeline::Certify::None)?.function;
                let (vx, vy) = (fx.get(&y).expect("y in tc(x)"), fy.get(&y).expect("y in tc(y)"));
                let e = run.u.eq(vx, vy)?;
                let top = run.u.algebra().top();
                Ok(vec![Check::le(top, e)])
            })();
            run.record(|_| vec![x.to_string(), y.to_string(), format!("γ={gamma}")], outcome);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::zoo::zoo;
    use crate::order::UpsetAlgebra;

    fn universe(name: &str) -> Universe<UpsetAlgebra> {
        let (_, p) = zoo().into_iter().find(|(n, _)| *n == name).unwrap();
        Universe::new(UpsetAlgebra::named(name, p))
    }

    #[test]
    fn lemma_ids_parse() {
        assert_eq!("l11".parse::<LemmaId>().unwrap(), LemmaId::L11);
        assert!("L12".parse::<LemmaId>().is_err());
    }

    #[test]
    fn tuples_exhaustive_then_sampled() {
        let (t, ex) = index_tuples(3, 2, 9, 0);
        assert!(ex);
        assert_eq!(t.len(), 9);
        assert_eq!(t[1], [0, 1]);
        let (s, ex) = index_tuples(3, 3, 9, 0);
        assert!(!ex);
        assert_eq!(s, index_tuples(3, 3, 9, 0).0);
    }

    #[test]
    fn three_chain_pool_and_lemmas() {
        let mut u = universe("chain2");
        let cfg = LabConfig { pipeline_budget: 4, ..LabConfig::default() };
        let pools = finite_pools(&mut u, &cfg).unwrap();
        assert_eq!(pools.all.len(), 27);
        assert_eq!(pools.ordinals.len(), 16);
        let not_ord = u.parse_hset("{#1}").unwrap();
        let Pool::Sets(ords) = &pools.ordinals else { panic!("materialised") };
        assert!(!ords.contains(&not_ord));
        let uh = u.parse_hset("{#0 @ {q}}").unwrap();
        assert!(ords.contains(&uh));
        for id in LemmaId::ALL {
            let r = run_lemma(&mut u, id, &pools, None, &cfg);
            assert!(r.passed(), "{id}: {:?}", r.failures.first());
            assert!(r.instances > 0, "{id}");
        }
    }

    #[test]
    fn boolean_numerals_satisfy_cancellation() {
        let mut u = universe("chain1");
        let all = ordinal::numerals(&mut u, 4);
        let pools = Pools::from_sets(4, all.clone(), all, true);
        let r = run_lemma(&mut u, LemmaId::L3, &pools, None, &LabConfig::default());
        assert!(r.passed());
        assert_eq!(r.instances, 125);
    }

    #[test]
    fn scanned_pool_matches_materialised() {
        let mut u = universe("chain2");
        let small = LabConfig::default();
        let scanned = LabConfig { pool_budget: 10, ..small.clone() };
        let a = finite_pools(&mut u, &small).unwrap();
        let mut w = universe("chain2");
        let b = finite_pools(&mut w, &scanned).unwrap();
        assert!(matches!(b.all, Pool::Indexed { .. }));
        assert_eq!((a.all.len(), a.ordinals.len()), (b.all.len(), b.ordinals.len()));
        for i in 0..a.all.len() {
            let (x, y) = (a.all.get(&mut u, i).unwrap(), b.all.get(&mut w, i).unwrap());
            assert_eq!(u.format_hset(x), w.format_hset(y));
        }
        for id in [LemmaId::L1, LemmaId::L3] {
            let (ra, rb) = (run_lemma(&mut u, id, &a, None, &small), run_lemma(&mut w, id, &b, None, &small));
            assert_eq!((ra.instances, ra.failures), (rb.instances, rb.failures));
        }
    }

    #[test]
    fn one_sided_equality_is_caught() {
        let mut u = universe("chain2");
        u.inject_one_sided_eq();
        let cfg = LabConfig::default();
        let pools = finite_pools(&mut u, &cfg).unwrap();
        let caught = [LemmaId::L1, LemmaId::L3].iter().any(|&id| !run_lemma(&mut u, id, &pools, None, &cfg).passed());
        assert!(caught);
    }

    #[test]
    fn interval_witness_passes_the_pairing_lemma() {
        let mut u = Universe::new(IntervalAlgebra);
        let (pools, p) = interval_pools(&mut u).unwrap();
        let r = run_lemma(&mut u, LemmaId::L6, &pools, Some(&p), &LabConfig::default());
        assert!(r.passed(), "{:?}", r.failures.first());
        assert!(r.skipped > 0);
    }
}
