//! Building antichains of ordinals for hereditarily finite sets.
//!
//! Functions here are meta-level: their domains are concrete sets ([`Hf`]
//! keys, embedded as check sets when compared) and their values are
//! H-sets. Given an incomparable pair `α ⊥ β`:
//!
//! - [`perp_lift`] turns an injective `f` into `y ↦ α⁺ ∪ (β⁺ + f(y))`;
//! - [`subset_encode`] codes a subset `y` of the domain as `⋃_{t∈y} f(t)⁺`,
//!   and [`subset_decode`] reads it back through membership;
//! - [`pow_lift`] lifts a function on `x` to one on a family of subsets;
//! - [`merge_families`] glues functions on a stage-indexed family of
//!   domains through tagged pairs `⟨γ, x⟩`;
//! - [`build_antichain`] iterates the last two along the stages
//!   `tc(x)_n = {y ∈ tc(x) : y ⊆ tc(x)_{n-1}}`.

use alloc::string::ToString;
use alloc::vec::Vec;

use crate::hset::{Hf, NodeId, Universe};
use crate::order::{Heyting, Parametric};
use crate::ordinal::{self, WitnessPair};
use crate::{Error, Result};

type Elem<H> = <H as Heyting>::Elem;

/// `Θ` values of every unordered pair of distinct keys.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate<E> {
    pub pairs: Vec<(Hf, Hf, E)>,
    /// Whether every value is ⊤.
    pub certified: bool,
}

/// A function from concrete sets to H-sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetaFunction<E> {
    entries: Vec<(Hf, NodeId)>,
    certificate: Option<Certificate<E>>,
}

impl<E: Clone> MetaFunction<E> {
    pub fn new(mut entries: Vec<(Hf, NodeId)>) -> Result<MetaFunction<E>> {
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        if let Some(w) = entries.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::DuplicateKey(w[0].0.to_string()));
        }
        Ok(MetaFunction { entries, certificate: None })
    }

    pub fn empty() -> MetaFunction<E> {
        MetaFunction { entries: Vec::new(), certificate: None }
    }

    pub fn entries(&self) -> &[(Hf, NodeId)] {
        &self.entries
    }

    pub fn keys(&self) -> impl Iterator<Item = &Hf> {
        self.entries.iter().map(|(k, _)| k)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, key: &Hf) -> Option<NodeId> {
        self.entries.binary_search_by(|(k, _)| k.cmp(key)).ok().map(|i| self.entries[i].1)
    }

    pub fn certificate(&self) -> Option<&Certificate<E>> {
        self.certificate.as_ref()
    }

    pub fn is_certified(&self) -> bool {
        self.certificate.as_ref().is_some_and(|c| c.certified)
    }

    /// The restriction to keys in `x`.
    pub fn restrict(&self, x: &Hf) -> MetaFunction<E> {
        let entries = self.entries.iter().filter(|(k, _)| x.contains(k)).cloned().collect();
        MetaFunction { entries, certificate: None }
    }
}

/// Compute `Θ(y̌, f(y), ž, f(z))` for all pairs and attach the result.
pub fn certify<H: Parametric>(u: &mut Universe<H>, f: &mut MetaFunction<Elem<H>>) -> Result<()> {
    let mut pairs = Vec::new();
    let mut certified = true;
    for i in 0..f.entries.len() {
        for j in i + 1..f.entries.len() {
            let (y, fy) = f.entries[i].clone();
            let (z, fz) = f.entries[j].clone();
            let (cy, cz) = (u.check(&y), u.check(&z));
            let t = ordinal::theta(u, cy, fy, cz, fz)?;
            certified &= u.algebra().is_top(&t);
            pairs.push((y, z, t));
        }
    }
    f.certificate = Some(Certificate { pairs, certified });
    Ok(())
}

/// `y ↦ α⁺ ∪ (β⁺ + f(y))`.
///
/// With `verify` set and `α ⊥ β` holding with value ⊤, the injectivity
/// premise `⟦f(y) = f(z)⟧ = ⊥` is checked for distinct keys (unless `f` is
/// already certified) and the result is certified.
pub fn perp_lift<H: Parametric>(
    u: &mut Universe<H>,
    p: &WitnessPair<Elem<H>>,
    f: &MetaFunction<Elem<H>>,
    verify: bool,
) -> Result<MetaFunction<Elem<H>>> {
    let strong = u.algebra().is_top(&p.perp_value);
    if verify && strong && !f.is_certified() {
        for i in 0..f.entries.len() {
            for j in i + 1..f.entries.len() {
                let e = u.eq(f.entries[i].1, f.entries[j].1)?;
                if !u.algebra().is_bottom(&e) {
                    return Err(Error::NotInjective(f.entries[i].0.to_string(), f.entries[j].0.to_string()));
                }
            }
        }
    }
    let mut entries = Vec::with_capacity(f.entries.len());
    for (k, v) in &f.entries {
        entries.push((k.clone(), ordinal::lift_value(u, p, *v)?));
    }
    let mut out = MetaFunction { entries, certificate: None };
    if verify {
        certify(u, &mut out)?;
    }
    Ok(out)
}

/// `⋃_{t ∈ y} f(t)⁺`, with `0̌` for the empty subset.
pub fn subset_encode<H: Parametric>(u: &mut Universe<H>, f: &MetaFunction<Elem<H>>, y: &Hf) -> Result<NodeId> {
    let mut acc = u.empty();
    for t in y.members() {
        let v = f.get(t).ok_or_else(|| Error::KeyOutsideDomain(t.to_string()))?;
        let s = ordinal::hsucc(u, v);
        acc = u.union(acc, s)?;
    }
    Ok(acc)
}

/// The keys `z` with `⟦f(z) ∈ τ⟧ = ⊤`, and the keys whose value lies
/// strictly between ⊥ and ⊤.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decoded<E> {
    pub keys: Vec<Hf>,
    pub residue: Vec<(Hf, E)>,
}

pub fn subset_decode<H: Parametric>(
    u: &mut Universe<H>,
    f: &MetaFunction<Elem<H>>,
    tau: NodeId,
) -> Result<Decoded<Elem<H>>> {
    let mut keys = Vec::new();
    let mut residue = Vec::new();
    for (k, v) in &f.entries {
        let m = u.mem(*v, tau)?;
        if u.algebra().is_top(&m) {
            keys.push(k.clone());
        } else if !u.algebra().is_bottom(&m) {
            residue.push((k.clone(), m));
        }
    }
    Ok(Decoded { keys, residue })
}

/// `y ↦ α⁺ ∪ (β⁺ + ⋃_{t ∈ y} f(t)⁺)` on the subsets `ys` of `f`'s domain.
pub fn pow_lift<H: Parametric>(
    u: &mut Universe<H>,
    p: &WitnessPair<Elem<H>>,
    f: &MetaFunction<Elem<H>>,
    ys: &[Hf],
    verify: bool,
) -> Result<MetaFunction<Elem<H>>> {
    let mut entries = Vec::with_capacity(ys.len());
    for y in ys {
        entries.push((y.clone(), subset_encode(u, f, y)?));
    }
    let mut h = MetaFunction::new(entries)?;
    if f.is_certified() {
        // Injectivity of the encoding follows from the decoding property.
        h.certificate = Some(Certificate { pairs: Vec::new(), certified: true });
    }
    let mut g = perp_lift(u, p, &h, verify)?;
    if !verify {
        g.certificate = None;
    }
    Ok(g)
}

/// Glue `stages[i] = (γ, f_γ)` into one function on the union of their
/// domains: tag each `x ∈ dom f_γ` as the pair `⟨γ, x⟩`, lift
/// `⟨γ, x⟩ ↦ (α⁺ + γ̌) ∪ (β⁺ + f_γ(x))`, and send `x` to the pow-lift of
/// its fibre `{⟨γ, x⟩ : γ}`.
pub fn merge_families<H: Parametric>(
    u: &mut Universe<H>,
    p: &WitnessPair<Elem<H>>,
    stages: &[(u32, MetaFunction<Elem<H>>)],
    verify: bool,
) -> Result<MetaFunction<Elem<H>>> {
    let mut tagged = Vec::new();
    let mut fibres: Vec<(Hf, Vec<Hf>)> = Vec::new();
    for (gamma, f) in stages {
        let g_hf = Hf::numeral(*gamma);
        let g_node = u.numeral(*gamma);
        for (x, v) in &f.entries {
            let t = Hf::pair(&g_hf, x);
            tagged.push((t.clone(), ordinal::pair_encode(u, p, g_node, *v)?));
            match fibres.binary_search_by(|(k, _)| k.cmp(x)) {
                Ok(i) => fibres[i].1.push(t),
                Err(i) => fibres.insert(i, (x.clone(), alloc::vec![t])),
            }
        }
    }
    let mut f_tilde = MetaFunction::new(tagged)?;
    if stages.iter().all(|(_, f)| f.is_certified()) {
        // Pair-encoding injectivity under certified stages.
        f_tilde.certificate = Some(Certificate { pairs: Vec::new(), certified: true });
    }
    let lifted = perp_lift(u, p, &f_tilde, verify)?;
    let lifted = if verify {
        lifted
    } else {
        MetaFunction { certificate: Some(Certificate { pairs: Vec::new(), certified: true }), ..lifted }
    };
    let fibre_sets: Vec<Hf> = fibres.iter().map(|(_, ts)| Hf::from_members(ts.clone())).collect();
    let h = pow_lift(u, p, &lifted, &fibre_sets, false)?;
    let mut entries = Vec::with_capacity(fibres.len());
    for ((x, _), b) in fibres.iter().zip(&fibre_sets) {
        entries.push((x.clone(), h.get(b).expect("fibre in domain")));
    }
    let mut g = MetaFunction::new(entries)?;
    if verify {
        certify(u, &mut g)?;
    }
    Ok(g)
}

/// `tc(x)_n`, sorted.
pub fn tc_stage(x: &Hf, n: u32) -> Vec<Hf> {
    let tc = x.transitive_closure();
    let mut stage: Vec<Hf> = Vec::new();
    for _ in 0..n {
        let prev = Hf::from_members(stage);
        stage = tc.iter().filter(|y| y.is_subset(&prev)).cloned().collect();
    }
    stage
}

/// The least `n` with `x ∈ tc(x)_n`.
pub fn minimal_stage(x: &Hf) -> u32 {
    x.rank() + 1
}

/// How much of a pipeline run is checked through `Θ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Certify {
    None,
    /// Only the final function.
    #[default]
    Final,
    /// Every intermediate function as well.
    All,
}

/// The output of [`build_antichain`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Antichain<E> {
    pub x: Hf,
    pub gamma: u32,
    pub minimal_gamma: u32,
    /// `f_{x,γ}` on `tc(x)_γ`.
    pub function: MetaFunction<E>,
}

/// `f_{x,γ}`: `f_0` is empty, `g_δ` is the pow-lift of `f_δ` to
/// `tc(x)_{δ+1}`, and `f_n` merges `g_0, …, g_{n-1}`.
pub fn build_antichain<H: Parametric>(
    u: &mut Universe<H>,
    p: &WitnessPair<Elem<H>>,
    x: &Hf,
    gamma: u32,
    mode: Certify,
) -> Result<Antichain<Elem<H>>> {
    let minimal_gamma = minimal_stage(x);
    if gamma < minimal_gamma {
        return Err(Error::StageIncomplete { given: gamma, minimal: minimal_gamma });
    }
    let all = mode == Certify::All;
    let mut f = MetaFunction::empty();
    let mut gs: Vec<(u32, MetaFunction<Elem<H>>)> = Vec::new();
    for n in 1..=gamma {
        let stage = tc_stage(x, n);
        let g = pow_lift(u, p, &f, &stage, all)?;
        gs.push((n - 1, g));
        let last = n == gamma;
        f = merge_families(u, p, &gs, all || (last && mode == Certify::Final))?;
    }
    Ok(Antichain { x: x.clone(), gamma, minimal_gamma, function: f })
}
