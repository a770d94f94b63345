//! Ordinal operations on H-sets.
//!
//! Successor `α⁺ = α ∪ {α}`, the uniform addition (entry-wise
//! `α + β = α ∪ {α + γ @ l : (γ, l) ∈ β}`, which agrees with
//! `α ∪ ⋃_{γ ∈ β} (α + γ)⁺` whenever `β` is transitive), and the
//! measurements built from them:
//! the ordinal predicate, trichotomy, incomparability
//! `α ⊥ β ≔ ¬α ∈ β⁺ ∧ ¬β ∈ α⁺` and the pairing predicate
//! `Θ(a, a′, b, b′) ≔ ¬a′ ∈ b′ ∧ ¬b′ ∈ a′ ∧ (a′ = b′ ↔ a = b)`.

use alloc::format;
use alloc::vec::Vec;

use crate::hset::{Bound, Family, Formula, NodeId, Universe};
use crate::interval::IntervalAlgebra;
use crate::order::{Heyting, Parametric};
use crate::{Error, Result};

type Elem<H> = <H as Heyting>::Elem;

/// `α ∪ {α}`.
pub fn hsucc<H: Parametric>(u: &mut Universe<H>, a: NodeId) -> NodeId {
    let mut entries = u.entries(a).to_vec();
    entries.push((a, u.algebra().top()));
    let families = u.families(a).to_vec();
    u.make(entries, families).expect("successor of a well-formed node")
}

/// Uniform addition, recursing on the entries (and families) of `b`.
///
/// A family-bearing right addend is accepted only when the left addend has
/// no families of its own: otherwise the family bodies of the sum would be
/// open nodes carrying families.
pub fn ord_add<H: Parametric>(u: &mut Universe<H>, a: NodeId, b: NodeId) -> Result<NodeId> {
    if let Some(&r) = u.add_cache.get(&(a, b)) {
        return Ok(r);
    }
    if !u.families(b).is_empty() && !u.families(a).is_empty() {
        return Err(Error::UnsupportedAddend(format!(
            "both addends carry families: {} + {}",
            u.format_hset(a),
            u.format_hset(b)
        )));
    }
    let mut entries = u.entries(a).to_vec();
    let mut families = u.families(a).to_vec();
    for (g, l) in u.entries(b).to_vec() {
        let s = ord_add(u, a, g)?;
        entries.push((s, l));
    }
    for f in u.families(b).to_vec() {
        let s = ord_add(u, a, f.body)?;
        families.push(Family { domain: f.domain, body: s, label: f.label });
    }
    let r = u.make(entries, families).map_err(|e| match e {
        Error::DepthExceeded => Error::UnsupportedAddend(format!(
            "{} + {} would put families inside a family body",
            u.format_hset(a),
            u.format_hset(b)
        )),
        e => e,
    })?;
    u.add_cache.insert((a, b), r);
    Ok(r)
}

/// `⟦x is a transitive set of transitive sets⟧`.
pub fn is_ord<H: Parametric>(u: &mut Universe<H>, x: impl Into<Bound>) -> Result<Elem<H>> {
    let f =
        Formula::parse("A y : x . (A z : y . z in x) & (A z : y . A w : z . w in y)").expect("ordinal formula parses");
    u.eval(&f, &[("x", x.into())])
}

/// `{0̌, 1̌, {0̌ @ a}}`: equal to 2̌ exactly to the degree that `a ∨ ¬a`
/// holds.
pub fn ord_em<H: Parametric>(u: &mut Universe<H>, a: &Elem<H>) -> NodeId {
    let zero = u.empty();
    let one = u.numeral(1);
    let ua = u.set(alloc::vec![(zero, a.clone())]);
    u.set_top(&[zero, one, ua])
}

fn succ_bound<H: Parametric>(u: &mut Universe<H>, a: Bound) -> Bound {
    let s = hsucc(u, a.id);
    Bound { id: s, var: a.var }
}

/// `⟦¬α ∈ β⁺ ∧ ¬β ∈ α⁺⟧`.
pub fn perp<H: Parametric>(u: &mut Universe<H>, a: impl Into<Bound>, b: impl Into<Bound>) -> Result<Elem<H>> {
    let (a, b) = (a.into(), b.into());
    let sb = succ_bound(u, b);
    let x = u.mem(a, sb)?;
    let nx = u.algebra().neg(&x);
    if u.algebra().is_bottom(&nx) {
        return Ok(nx);
    }
    let sa = succ_bound(u, a);
    let y = u.mem(b, sa)?;
    let alg = u.algebra();
    Ok(alg.meet(&nx, &alg.neg(&y)))
}

/// `⟦α ∈ β ∨ α = β ∨ β ∈ α⟧`.
pub fn trichotomy<H: Parametric>(u: &mut Universe<H>, a: impl Into<Bound>, b: impl Into<Bound>) -> Result<Elem<H>> {
    let (a, b) = (a.into(), b.into());
    let [x, y, z] = [u.mem(a, b)?, u.eq(a, b)?, u.mem(b, a)?];
    let alg = u.algebra();
    Ok(alg.join(&alg.join(&x, &y), &z))
}

/// `⟦Θ(a, a′, b, b′)⟧`.
pub fn theta<H: Parametric>(
    u: &mut Universe<H>,
    a: impl Into<Bound>,
    a2: impl Into<Bound>,
    b: impl Into<Bound>,
    b2: impl Into<Bound>,
) -> Result<Elem<H>> {
    let (a, a2, b, b2) = (a.into(), a2.into(), b.into(), b2.into());
    let [x, y, e2, e] = [u.mem(a2, b2)?, u.mem(b2, a2)?, u.eq(a2, b2)?, u.eq(a, b)?];
    let alg = u.algebra();
    let apart = alg.meet(&alg.neg(&x), &alg.neg(&y));
    let iff = alg.meet(&alg.imp(&e2, &e), &alg.imp(&e, &e2));
    Ok(alg.meet(&apart, &iff))
}

/// Two ordinals with their cached incomparability value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessPair<E> {
    pub a: NodeId,
    pub b: NodeId,
    pub perp_value: E,
}

impl<E: Clone> WitnessPair<E> {
    pub fn new<H: Parametric<Elem = E>>(u: &mut Universe<H>, a: NodeId, b: NodeId) -> Result<WitnessPair<E>> {
        let perp_value = perp(u, a, b)?;
        Ok(WitnessPair { a, b, perp_value })
    }

    pub fn is_incomparable<H: Parametric<Elem = E>>(&self, u: &Universe<H>) -> bool {
        u.algebra().is_top(&self.perp_value)
    }
}

/// The literal of the shipped witness `A`.
pub const WITNESS_A: &str = "{#0, #1, fam q in QQ : {#0 @ !q} @ 1}";

/// `A = 2̌ ∪ {{0̌ @ !q} : q ∈ ℚ}` and `B = 2̌` over the interval algebra,
/// bound as the constants `A` and `B`.
pub fn witness_pair(u: &mut Universe<IntervalAlgebra>) -> Result<WitnessPair<crate::interval::Template>> {
    let a = u.parse_hset(WITNESS_A)?;
    let b = u.numeral(2);
    u.define("A", a);
    u.define("B", b);
    WitnessPair::new(u, a, b)
}

/// `[⟦A ∈ B⟧, ⟦A = B⟧, ⟦B ∈ A⟧, ⟦B = A⟧]`.
pub fn constituents<H: Parametric>(u: &mut Universe<H>, a: NodeId, b: NodeId) -> Result<[Elem<H>; 4]> {
    Ok([u.mem(a, b)?, u.eq(a, b)?, u.mem(b, a)?, u.eq(b, a)?])
}

/// `(α⁺ + γ₁) ∪ (β⁺ + γ₂)`.
pub fn pair_encode<H: Parametric>(
    u: &mut Universe<H>,
    p: &WitnessPair<Elem<H>>,
    g1: NodeId,
    g2: NodeId,
) -> Result<NodeId> {
    pair_encode_raw(u, p.a, p.b, g1, g2)
}

pub(crate) fn pair_encode_raw<H: Parametric>(
    u: &mut Universe<H>,
    a: NodeId,
    b: NodeId,
    g1: NodeId,
    g2: NodeId,
) -> Result<NodeId> {
    let sa = hsucc(u, a);
    let sb = hsucc(u, b);
    let left = ord_add(u, sa, g1)?;
    let right = ord_add(u, sb, g2)?;
    u.union(left, right)
}

/// `α⁺ ∪ (β⁺ + γ)`, the value the incomparable lift assigns to `γ`.
pub fn lift_value<H: Parametric>(u: &mut Universe<H>, p: &WitnessPair<Elem<H>>, g: NodeId) -> Result<NodeId> {
    let zero = u.empty();
    pair_encode(u, p, zero, g)
}

/// Numerals `0̌ … ňmax`.
pub fn numerals<H: Parametric>(u: &mut Universe<H>, max: u32) -> Vec<NodeId> {
    (0..=max).map(|n| u.numeral(n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::zoo::zoo;
    use crate::order::UpsetAlgebra;

    fn chain2() -> (Universe<UpsetAlgebra>, crate::order::Upset) {
        let (_, p) = zoo().into_iter().find(|(n, _)| *n == "chain2").unwrap();
        let u = Universe::new(UpsetAlgebra::named("chain2", p));
        let h = u.algebra().parse("{q}").unwrap();
        (u, h)
    }

    #[test]
    fn successor_and_addition_examples() {
        let (mut u, h) = chain2();
        let n: Vec<NodeId> = numerals(&mut u, 3);
        assert_eq!(hsucc(&mut u, n[0]), n[1]);
        assert_eq!(hsucc(&mut u, n[2]), n[3]);
        let uh = u.set(alloc::vec![(n[0], h)]);
        let s = hsucc(&mut u, uh);
        let t = u.algebra().top();
        assert_eq!(s, u.set(alloc::vec![(n[0], h), (uh, t)]));
        assert_eq!(ord_add(&mut u, n[1], n[1]).unwrap(), n[2]);
        assert_eq!(ord_add(&mut u, uh, n[0]).unwrap(), uh);
        assert_eq!(ord_add(&mut u, n[2], n[1]).unwrap(), n[3]);
    }

    #[test]
    fn ordinal_and_comparison_examples() {
        let (mut u, h) = chain2();
        let alg = u.algebra().clone();
        let n = numerals(&mut u, 2);
        let uh = u.set(alloc::vec![(n[0], h)]);
        assert!(alg.is_top(&is_ord(&mut u, n[2]).unwrap()));
        assert!(alg.is_top(&is_ord(&mut u, uh).unwrap()));
        let not_ord = u.set_top(&[n[1]]);
        assert!(alg.is_bottom(&is_ord(&mut u, not_ord).unwrap()));
        let em = ord_em(&mut u, &h);
        assert_eq!(u.eq(em, n[2]).unwrap(), h);
        assert!(alg.is_bottom(&u.mem(em, n[2]).unwrap()));
        assert!(alg.is_bottom(&u.mem(n[2], em).unwrap()));
        assert!(alg.is_top(&is_ord(&mut u, em).unwrap()));
        let em_top = ord_em(&mut u, &alg.top());
        assert!(alg.is_top(&u.eq(em_top, n[2]).unwrap()));
        assert!(alg.is_bottom(&perp(&mut u, n[2], n[2]).unwrap()));
        assert!(alg.is_bottom(&perp(&mut u, em, n[2]).unwrap()));
        assert_eq!(trichotomy(&mut u, n[1], uh).unwrap(), h);
        assert!(alg.is_top(&trichotomy(&mut u, n[0], n[1]).unwrap()));
        assert!(alg.is_bottom(&theta(&mut u, n[0], n[0], n[1], n[1]).unwrap()));
        assert!(alg.is_top(&theta(&mut u, uh, em, uh, em).unwrap()));
    }

    #[test]
    fn witness_is_incomparable_with_two() {
        let mut u = Universe::new(IntervalAlgebra);
        let p = witness_pair(&mut u).unwrap();
        assert!(p.is_incomparable(&u));
        for v in constituents(&mut u, p.a, p.b).unwrap() {
            assert!(v.is_bottom(), "{v}");
        }
        assert!(trichotomy(&mut u, p.a, p.b).unwrap().is_bottom());
        assert!(is_ord(&mut u, p.a).unwrap().is_top());
        let n = numerals(&mut u, 1);
        let x = lift_value(&mut u, &p, n[0]).unwrap();
        let y = lift_value(&mut u, &p, n[1]).unwrap();
        assert!(theta(&mut u, n[0], x, n[1], y).unwrap().is_top());
        assert!(is_ord(&mut u, x).unwrap().is_top());
    }
}
