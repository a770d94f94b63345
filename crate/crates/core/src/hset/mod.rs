//! H-valued sets.
//!
//! A [`Universe`] owns one truth-value algebra and a hash-consed DAG of
//! H-sets. Each node is a finite list of labelled entries plus, for
//! parametric algebras, *family* entries: a parameter domain, a body node
//! and a label, both of which may mention the family's parameter. Inside a
//! family body the parameter is always [`SELF`]; when a body is evaluated
//! the parameter is renamed to whatever is free at that point.
//!
//! A node that mentions `SELF` (through a label or a child) is *open*. Open
//! nodes may not carry families of their own, which bounds the number of
//! simultaneously live parameters by two.

mod enumerate;
mod eval;
mod formula;
mod hf;
mod literal;

pub use enumerate::{enumerate_hsets, extensional_classes, Enumeration};
pub use eval::Bound;
pub use formula::{Formula, Pred, Term};
pub use hf::Hf;
pub use literal::SharedLiteral;

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use hashbrown::HashMap;

use crate::order::{Param, Parametric};
use crate::{Error, Result};

/// The parameter a family body is written in.
pub const SELF: Param = 1;

/// Interned identity of an H-set within its universe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(u32);

impl NodeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// An infinite bundle of members `body(q) @ label(q)` for `q` in `domain`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Family<E, D> {
    pub domain: D,
    pub body: NodeId,
    pub label: E,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Shape<E, D> {
    entries: Vec<(NodeId, E)>,
    families: Vec<Family<E, D>>,
}

#[derive(Debug, Clone)]
struct Node<E, D> {
    shape: Shape<E, D>,
    open: bool,
    check: bool,
    rank: u32,
    families_deep: bool,
    /// `Some(n)` for the numeral `n`.
    numeral: Option<u32>,
}

pub(crate) type Elem<H> = <H as crate::order::Heyting>::Elem;
pub(crate) type Dom<H> = <H as Parametric>::Domain;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) enum Rel {
    Mem,
    Eq,
}

type MemoKey = (Rel, NodeId, NodeId, Option<Param>, Option<Param>);

/// An algebra together with the H-sets built over it.
pub struct Universe<H: Parametric> {
    alg: H,
    nodes: Vec<Node<Elem<H>, Dom<H>>>,
    index: HashMap<Shape<Elem<H>, Dom<H>>, NodeId>,
    memo: HashMap<MemoKey, Elem<H>>,
    memo_enabled: bool,
    pub(crate) one_sided_eq: bool,
    constants: BTreeMap<String, NodeId>,
    pub(crate) add_cache: HashMap<(NodeId, NodeId), NodeId>,
    top: Elem<H>,
    bottom: Elem<H>,
}

impl<H: Parametric> Universe<H> {
    pub fn new(alg: H) -> Universe<H> {
        let top = alg.top();
        let bottom = alg.bottom();
        let mut u = Universe {
            alg,
            nodes: Vec::new(),
            index: HashMap::new(),
            memo: HashMap::new(),
            memo_enabled: true,
            one_sided_eq: false,
            constants: BTreeMap::new(),
            add_cache: HashMap::new(),
            top,
            bottom,
        };
        u.empty();
        u
    }

    pub fn algebra(&self) -> &H {
        &self.alg
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Turn memoisation of membership and equality values on or off. Turning
    /// it off also clears the table.
    pub fn set_memo(&mut self, enabled: bool) {
        self.memo_enabled = enabled;
        if !enabled {
            self.memo.clear();
        }
    }

    /// Deliberately break equality to its `u ⊆ v` half. Only for checking
    /// that the lemma harness notices.
    #[doc(hidden)]
    pub fn inject_one_sided_eq(&mut self) {
        self.one_sided_eq = true;
        self.memo.clear();
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    pub fn clear_memo(&mut self) {
        self.memo.clear();
    }

    pub(crate) fn top(&self) -> Elem<H> {
        self.top.clone()
    }

    pub(crate) fn bottom(&self) -> Elem<H> {
        self.bottom.clone()
    }

    fn node(&self, id: NodeId) -> &Node<Elem<H>, Dom<H>> {
        &self.nodes[id.index()]
    }

    pub fn entries(&self, id: NodeId) -> &[(NodeId, Elem<H>)] {
        &self.node(id).shape.entries
    }

    pub fn families(&self, id: NodeId) -> &[Family<Elem<H>, Dom<H>>] {
        &self.node(id).shape.families
    }

    /// Whether the node mentions the family parameter [`SELF`].
    pub fn is_open(&self, id: NodeId) -> bool {
        self.node(id).open
    }

    /// Whether the node is the embedding of a concrete set: all labels ⊤,
    /// no families, hereditarily.
    pub fn is_check(&self, id: NodeId) -> bool {
        self.node(id).check
    }

    pub fn rank(&self, id: NodeId) -> u32 {
        self.node(id).rank
    }

    /// Whether any family occurs in the node or below it.
    pub fn has_families(&self, id: NodeId) -> bool {
        self.node(id).families_deep
    }

    /// Number of distinct nodes reachable from `id`, itself included.
    pub fn dag_size(&self, id: NodeId) -> usize {
        let mut seen = hashbrown::HashSet::new();
        let mut stack = vec![id];
        while let Some(n) = stack.pop() {
            if seen.insert(n) {
                stack.extend(self.entries(n).iter().map(|(e, _)| *e));
                stack.extend(self.families(n).iter().map(|f| f.body));
            }
        }
        seen.len()
    }

    /// Intern a node. Entries are sorted by identity, duplicates are joined
    /// and ⊥-labelled entries and families are dropped.
    pub fn make(
        &mut self,
        mut entries: Vec<(NodeId, Elem<H>)>,
        mut families: Vec<Family<Elem<H>, Dom<H>>>,
    ) -> Result<NodeId> {
        entries.sort_by_key(|(e, _)| *e);
        let mut merged: Vec<(NodeId, Elem<H>)> = Vec::with_capacity(entries.len());
        for (e, l) in entries {
            match merged.last_mut() {
                Some((last, acc)) if *last == e => *acc = self.alg.join(acc, &l),
                _ => merged.push((e, l)),
            }
        }
        merged.retain(|(_, l)| !self.alg.is_bottom(l));
        families.retain(|f| !self.alg.is_bottom(&f.label));
        families.sort();
        families.dedup();

        let shape = Shape { entries: merged, families };
        if let Some(&id) = self.index.get(&shape) {
            return Ok(id);
        }
        let mut open = false;
        let mut check = shape.families.is_empty();
        let mut rank = 0;
        let mut families_deep = !shape.families.is_empty();
        for (e, l) in &shape.entries {
            let n = self.node(*e);
            open |= n.open || self.alg.mentions(l, SELF);
            check &= n.check && self.alg.is_top(l);
            rank = rank.max(n.rank + 1);
            families_deep |= n.families_deep;
        }
        for f in &shape.families {
            let n = self.node(f.body);
            rank = rank.max(n.rank + 1);
            families_deep |= n.families_deep;
        }
        if open && !shape.families.is_empty() {
            return Err(Error::DepthExceeded);
        }
        let numeral = if check {
            let mut values: Vec<u32> = shape.entries.iter().filter_map(|(e, _)| self.node(*e).numeral).collect();
            values.sort_unstable();
            (values.len() == shape.entries.len() && values.iter().enumerate().all(|(i, &v)| i as u32 == v))
                .then_some(values.len() as u32)
        } else {
            None
        };
        let id = NodeId(u32::try_from(self.nodes.len()).expect("node count fits in u32"));
        self.nodes.push(Node { shape: shape.clone(), open, check, rank, families_deep, numeral });
        self.index.insert(shape, id);
        Ok(id)
    }

    /// A node with plain entries only; cannot fail.
    pub fn set(&mut self, entries: Vec<(NodeId, Elem<H>)>) -> NodeId {
        self.make(entries, Vec::new()).expect("family-free nodes always intern")
    }

    /// Same members with every label ⊤.
    pub fn set_top(&mut self, members: &[NodeId]) -> NodeId {
        let top = self.top();
        self.set(members.iter().map(|&m| (m, top.clone())).collect())
    }

    pub fn empty(&mut self) -> NodeId {
        self.set(Vec::new())
    }

    /// The von Neumann numeral `n`, as a check set.
    pub fn numeral(&mut self, n: u32) -> NodeId {
        let mut members = Vec::new();
        let mut cur = self.empty();
        for _ in 0..n {
            members.push(cur);
            cur = self.set_top(&members);
        }
        cur
    }

    /// The check embedding of a concrete hereditarily finite set.
    pub fn check(&mut self, x: &Hf) -> NodeId {
        let members: Vec<NodeId> = x.members().iter().map(|m| self.check(m)).collect();
        self.set_top(&members)
    }

    /// `Some(n)` if the node is the numeral `n`.
    pub fn numeral_value(&self, id: NodeId) -> Option<u32> {
        self.node(id).numeral
    }

    /// The concrete set a check node embeds.
    pub fn uncheck(&self, id: NodeId) -> Option<Hf> {
        if !self.is_check(id) {
            return None;
        }
        Some(Hf::from_members(self.entries(id).iter().map(|(e, _)| self.uncheck(*e).expect("check child")).collect()))
    }

    /// Entry-wise union; labels of shared members are joined.
    pub fn union(&mut self, a: NodeId, b: NodeId) -> Result<NodeId> {
        let mut entries = self.entries(a).to_vec();
        entries.extend_from_slice(self.entries(b));
        let mut families = self.families(a).to_vec();
        families.extend_from_slice(self.families(b));
        self.make(entries, families)
    }

    /// Bind `name` in the constant table, replacing any previous binding.
    pub fn define(&mut self, name: &str, id: NodeId) {
        self.constants.insert(name.into(), id);
    }

    pub fn constant(&self, name: &str) -> Option<NodeId> {
        self.constants.get(name).copied()
    }

    pub fn constants(&self) -> impl Iterator<Item = (&str, NodeId)> {
        self.constants.iter().map(|(k, v)| (k.as_str(), *v))
    }

    /// Merge entries whose members are provably equal (value ⊤), joining
    /// their labels. Applied recursively; families are kept as they are.
    pub fn canonicalize(&mut self, id: NodeId) -> Result<NodeId> {
        let entries = self.entries(id).to_vec();
        let families = self.families(id).to_vec();
        let mut out: Vec<(NodeId, Elem<H>)> = Vec::with_capacity(entries.len());
        for (e, l) in entries {
            let e = self.canonicalize(e)?;
            let mut merged = false;
            for (o, ol) in out.iter_mut() {
                let v = {
                    let (bo, be) = (self.bind(*o, SELF), self.bind(e, SELF));
                    self.eq(bo, be)?
                };
                if self.alg.is_top(&v) {
                    *ol = self.alg.join(ol, &l);
                    merged = true;
                    break;
                }
            }
            if !merged {
                out.push((e, l));
            }
        }
        self.make(out, families)
    }
}

impl<H: Parametric> core::fmt::Debug for Universe<H> {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Universe")
            .field("algebra", &self.alg.name())
            .field("nodes", &self.nodes.len())
            .field("memo", &self.memo.len())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::zoo::zoo;
    use crate::order::{Heyting, UpsetAlgebra};

    fn chain2() -> Universe<UpsetAlgebra> {
        let (_, p) = zoo().into_iter().find(|(n, _)| *n == "chain2").unwrap();
        Universe::new(UpsetAlgebra::named("chain2", p))
    }

    #[test]
    fn numerals_are_hash_consed() {
        let mut u = chain2();
        let two = u.numeral(2);
        let hf = Hf::parse("{0,{0}}").unwrap();
        assert_eq!(u.check(&hf), two);
        assert_eq!(u.uncheck(two), Some(hf));
        assert_eq!(u.rank(two), 2);
        assert!(u.is_check(two) && !u.is_open(two));
    }

    #[test]
    fn bottom_entries_vanish_and_duplicates_join() {
        let mut u = chain2();
        let zero = u.empty();
        let b = u.bottom();
        assert_eq!(u.set(vec![(zero, b)]), zero);
        let h = u.algebra().parse("{q}").unwrap();
        let t = u.top();
        let x = u.set(vec![(zero, h), (zero, t)]);
        assert_eq!(x, u.numeral(1));
        let y = u.set(vec![(zero, h)]);
        assert!(!u.is_check(y));
    }
}
