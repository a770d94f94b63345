//! Small universes: every H-set up to a rank, or one representative per
//! extensional class.

use alloc::vec;
use alloc::vec::Vec;
use hashbrown::HashSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Elem, NodeId, Universe};
use crate::order::Parametric;
use crate::Result;

/// The outcome of [`enumerate_hsets`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    /// Sets in a deterministic order.
    pub sets: Vec<NodeId>,
    /// Whether every set of the requested rank is present.
    pub exhaustive: bool,
}

/// Every H-set of rank at most `rank` whose members are drawn from the
/// previous rank and whose labels range over the whole carrier.
///
/// A level with more than `budget` candidates is sampled instead: the
/// previous level is kept and the rest is filled with label vectors drawn
/// from a ChaCha generator seeded with `seed`.
pub fn enumerate_hsets<H: Parametric>(u: &mut Universe<H>, rank: u32, budget: usize, seed: u64) -> Result<Enumeration> {
    let labels = u.algebra().elements()?;
    let mut level = vec![u.empty()];
    let mut exhaustive = true;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..rank {
        let n = level.len();
        let k = labels.len();
        let total = (k as u128).checked_pow(n as u32);
        let mut next = Vec::new();
        if total.is_some_and(|t| t <= budget as u128) {
            let mut digits = vec![0usize; n];
            loop {
                next.push(build(u, &level, &labels, &digits));
                if !increment(&mut digits, k) {
                    break;
                }
            }
        } else {
            exhaustive = false;
            let mut seen: HashSet<NodeId> = level.iter().copied().collect();
            next.extend(level.iter().copied());
            let mut attempts = 0usize;
            while next.len() < budget && attempts < budget.saturating_mul(4) {
                attempts += 1;
                let digits: Vec<usize> = (0..n).map(|_| rng.gen_range(0..k)).collect();
                let id = build(u, &level, &labels, &digits);
                if seen.insert(id) {
                    next.push(id);
                }
            }
        }
        level = next;
    }
    Ok(Enumeration { sets: level, exhaustive })
}

fn build<H: Parametric>(u: &mut Universe<H>, members: &[NodeId], labels: &[Elem<H>], digits: &[usize]) -> NodeId {
    let entries = members.iter().zip(digits).map(|(&m, &d)| (m, labels[d].clone())).collect();
    u.set(entries)
}

fn increment(digits: &mut [usize], radix: usize) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < radix {
            return true;
        }
        *d = 0;
    }
    false
}

/// One representative for each class of H-sets of rank at most `rank`
/// under `⟦x = y⟧ = ⊤`.
///
/// A class is determined by its membership profile `p` on the
/// representatives `R` of the previous rank; the profiles that occur are
/// exactly the extensional ones (`p(x) ∧ ⟦x = y⟧ ≤ p(y)`), and the set
/// `{x @ p(x) : x ∈ R}` realises `p`.
pub fn extensional_classes<H: Parametric>(u: &mut Universe<H>, rank: u32) -> Result<Vec<NodeId>> {
    let labels = u.algebra().elements()?;
    let mut reps = vec![u.empty()];
    for _ in 0..rank {
        let n = reps.len();
        let mut eq = vec![vec![u.top(); n]; n];
        for i in 0..n {
            for j in 0..i {
                let v = u.eq(reps[i], reps[j])?;
                eq[i][j] = v.clone();
                eq[j][i] = v;
            }
        }
        let mut out = Vec::new();
        let mut profile: Vec<usize> = Vec::with_capacity(n);
        extend(u, &reps, &labels, &eq, &mut profile, &mut out);
        reps = out;
    }
    Ok(reps)
}

fn extend<H: Parametric>(
    u: &mut Universe<H>,
    reps: &[NodeId],
    labels: &[Elem<H>],
    eq: &[Vec<Elem<H>>],
    profile: &mut Vec<usize>,
    out: &mut Vec<NodeId>,
) {
    let i = profile.len();
    if i == reps.len() {
        out.push(build(u, reps, labels, profile));
        return;
    }
    for (d, l) in labels.iter().enumerate() {
        let alg = u.algebra();
        let consistent = profile.iter().enumerate().all(|(j, &dj)| {
            let lj = &labels[dj];
            alg.le(&alg.meet(lj, &eq[i][j]), l) && alg.le(&alg.meet(l, &eq[i][j]), lj)
        });
        if consistent {
            profile.push(d);
            extend(u, reps, labels, eq, profile, out);
            profile.pop();
        }
    }
}
