//! Membership and equality values.
//!
//! `⟦u ∈ v⟧ = ⋁_{(e,l) ∈ v} l ∧ ⟦e = u⟧` and
//! `⟦u = v⟧ = ⋀_{(e,l) ∈ u} (l → ⟦e ∈ v⟧) ∧ ⋀_{(e,l) ∈ v} (l → ⟦e ∈ u⟧)`,
//! where a family contributes the join (for `∈`) or meet (for `=`) of its
//! instances, eliminated symbolically through [`Parametric::quantify`].
//!
//! Memo entries are stored in a local parameter convention (the first open
//! argument uses parameter 1, a second independent one parameter 2) and
//! renamed on the way out, so one entry serves every binding of the same
//! shape.

use alloc::vec::Vec;

use super::{Elem, NodeId, Rel, Universe, SELF};
use crate::order::{Param, Parametric, Quantifier};
use crate::Result;

/// A node together with the parameter its `SELF` is bound to (`None` for
/// closed nodes).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bound {
    pub id: NodeId,
    pub var: Option<Param>,
}

impl From<NodeId> for Bound {
    fn from(id: NodeId) -> Bound {
        Bound { id, var: None }
    }
}

fn fresh(taken: Option<Param>) -> Param {
    if taken == Some(1) {
        2
    } else {
        1
    }
}

impl<H: Parametric> Universe<H> {
    /// `id` with its `SELF` bound to `var`, if it is open at all.
    pub fn bind(&self, id: NodeId, var: Param) -> Bound {
        Bound { id, var: self.is_open(id).then_some(var) }
    }

    /// A label written in `SELF`, rewritten for the given binding.
    pub(crate) fn relabel(&self, l: &Elem<H>, var: Option<Param>) -> Elem<H> {
        match var {
            Some(p) if p != SELF => self.alg.rename(l, &[(SELF, p)]),
            _ => l.clone(),
        }
    }

    /// `⟦u ∈ v⟧`.
    pub fn mem(&mut self, u: impl Into<Bound>, v: impl Into<Bound>) -> Result<Elem<H>> {
        self.rel(Rel::Mem, u.into(), v.into())
    }

    /// `⟦u = v⟧`.
    pub fn eq(&mut self, u: impl Into<Bound>, v: impl Into<Bound>) -> Result<Elem<H>> {
        self.rel(Rel::Eq, u.into(), v.into())
    }

    fn rel(&mut self, op: Rel, u: Bound, v: Bound) -> Result<Elem<H>> {
        if op == Rel::Eq && u == v {
            return Ok(self.top());
        }
        if self.is_check(u.id) && self.is_check(v.id) {
            let holds = match op {
                Rel::Eq => u.id == v.id,
                Rel::Mem => self.entries(v.id).binary_search_by_key(&u.id, |(e, _)| *e).is_ok(),
            };
            return Ok(if holds { self.top() } else { self.bottom() });
        }
        let (u, v) = if op == Rel::Eq && u.id > v.id { (v, u) } else { (u, v) };
        let lu = u.var.map(|_| 1);
        let lv = match (u.var, v.var) {
            (_, None) => None,
            (Some(a), Some(b)) if a != b => Some(2),
            _ => Some(1),
        };
        let key = (op, u.id, v.id, lu, lv);
        let local = match self.memo_enabled.then(|| self.memo.get(&key)).flatten() {
            Some(x) => x.clone(),
            None => {
                let (lb, rb) = (Bound { id: u.id, var: lu }, Bound { id: v.id, var: lv });
                let x = match op {
                    Rel::Mem => self.compute_mem(lb, rb)?,
                    Rel::Eq => self.compute_eq(lb, rb)?,
                };
                if self.memo_enabled {
                    self.memo.insert(key, x.clone());
                }
                x
            }
        };
        let mut map: Vec<(Param, Param)> = Vec::new();
        if let Some(a) = u.var {
            map.push((1, a));
        }
        match (lv, v.var) {
            (Some(2), Some(b)) => map.push((2, b)),
            (Some(1), Some(b)) if lu.is_none() => map.push((1, b)),
            _ => {}
        }
        map.retain(|(a, b)| a != b);
        Ok(if map.is_empty() { local } else { self.alg.rename(&local, &map) })
    }

    fn compute_mem(&mut self, u: Bound, v: Bound) -> Result<Elem<H>> {
        let mut acc = self.bottom();
        let entries = self.entries(v.id).to_vec();
        for (e, l) in entries {
            if self.alg.is_top(&acc) {
                return Ok(acc);
            }
            let l = self.relabel(&l, v.var);
            let eb = Bound { id: e, var: if self.is_open(e) { v.var } else { None } };
            let x = self.rel(Rel::Eq, eb, u)?;
            acc = self.alg.join(&acc, &self.alg.meet(&l, &x));
        }
        let families = self.families(v.id).to_vec();
        for fam in families {
            if self.alg.is_top(&acc) {
                break;
            }
            let f = fresh(u.var);
            let body = self.bind(fam.body, f);
            let l = self.relabel(&fam.label, Some(f));
            let x = self.rel(Rel::Eq, body, u)?;
            let inst = self.alg.meet(&l, &x);
            let q = self.alg.quantify(&inst, f, &fam.domain, Quantifier::Join)?;
            acc = self.alg.join(&acc, &q);
        }
        Ok(acc)
    }

    /// One half of equality: every member of `u` is a member of `v`.
    fn subset(&mut self, u: Bound, v: Bound, mut acc: Elem<H>) -> Result<Elem<H>> {
        let entries = self.entries(u.id).to_vec();
        for (e, l) in entries {
            if self.alg.is_bottom(&acc) {
                return Ok(acc);
            }
            let l = self.relabel(&l, u.var);
            let eb = Bound { id: e, var: if self.is_open(e) { u.var } else { None } };
            let x = self.rel(Rel::Mem, eb, v)?;
            acc = self.alg.meet(&acc, &self.alg.imp(&l, &x));
        }
        let families = self.families(u.id).to_vec();
        for fam in families {
            if self.alg.is_bottom(&acc) {
                break;
            }
            let f = fresh(v.var);
            let body = self.bind(fam.body, f);
            let l = self.relabel(&fam.label, Some(f));
            let x = self.rel(Rel::Mem, body, v)?;
            let inst = self.alg.imp(&l, &x);
            let q = self.alg.quantify(&inst, f, &fam.domain, Quantifier::Meet)?;
            acc = self.alg.meet(&acc, &q);
        }
        Ok(acc)
    }

    fn compute_eq(&mut self, u: Bound, v: Bound) -> Result<Elem<H>> {
        let top = self.top();
        let half = self.subset(u, v, top)?;
        if self.one_sided_eq {
            return Ok(half);
        }
        self.subset(v, u, half)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::zoo::zoo;
    use crate::order::{Heyting, UpsetAlgebra};

    fn chain2() -> (Universe<UpsetAlgebra>, crate::order::Upset) {
        let (_, p) = zoo().into_iter().find(|(n, _)| *n == "chain2").unwrap();
        let u = Universe::new(UpsetAlgebra::named("chain2", p));
        let h = u.algebra().parse("{q}").unwrap();
        (u, h)
    }

    #[test]
    fn membership_examples_on_three_chain() {
        let (mut u, h) = chain2();
        let alg = u.algebra().clone();
        let zero = u.empty();
        let one = u.numeral(1);
        let two = u.numeral(2);
        let uh = u.set(alloc::vec![(zero, h)]);
        assert_eq!(u.mem(uh, two).unwrap(), h);
        assert!(alg.is_bottom(&u.mem(uh, uh).unwrap()));
        assert!(alg.is_top(&u.mem(zero, one).unwrap()));
        assert_eq!(u.eq(uh, one).unwrap(), h);
        assert!(alg.is_bottom(&u.eq(one, two).unwrap()));
        assert!(alg.is_bottom(&u.eq(uh, zero).unwrap()));
    }

    #[test]
    fn memo_does_not_change_values() {
        let (mut u, h) = chain2();
        let zero = u.empty();
        let one = u.numeral(1);
        let uh = u.set(alloc::vec![(zero, h)]);
        let t = u.top();
        let x = u.set(alloc::vec![(uh, t), (one, h)]);
        let pairs = [(uh, x), (x, uh), (one, x), (x, x)];
        let with: Vec<_> = pairs.iter().map(|&(a, b)| (u.mem(a, b).unwrap(), u.eq(a, b).unwrap())).collect();
        u.set_memo(false);
        let without: Vec<_> = pairs.iter().map(|&(a, b)| (u.mem(a, b).unwrap(), u.eq(a, b).unwrap())).collect();
        assert_eq!(with, without);
        assert_eq!(u.memo_len(), 0);
    }
}
