use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{Heyting, Param, Parametric, Quantifier};
use crate::{Error, Result};

/// Largest poset an [`UpsetAlgebra`] can be built over (one bit per point).
pub const MAX_POINTS: usize = 64;

/// A finite poset given by its cover relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    names: Vec<String>,
    covers: Vec<(usize, usize)>,
    /// `up[i]` is the principal up-set of point `i`, as a bitmask.
    up: Vec<u64>,
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Poset {
    /// Build a poset from point names and `(lower, upper)` cover pairs.
    ///
    /// The reflexive-transitive closure of the covers must be antisymmetric.
    pub fn new<S: AsRef<str>>(elements: &[S], covers: &[(S, S)]) -> Result<Poset> {
        if elements.len() > MAX_POINTS {
            return Err(Error::MalformedPoset(format!("{} points exceed the limit of {MAX_POINTS}", elements.len())));
        }
        let mut names: Vec<String> = Vec::with_capacity(elements.len());
        for e in elements {
            let e = e.as_ref();
            if !is_identifier(e) {
                return Err(Error::MalformedPoset(format!("`{e}` is not an identifier")));
            }
            if names.iter().any(|n| n == e) {
                return Err(Error::MalformedPoset(format!("point `{e}` declared twice")));
            }
            names.push(e.to_string());
        }
        let index = |s: &str| {
            names.iter().position(|n| n == s).ok_or_else(|| Error::MalformedPoset(format!("unknown point `{s}`")))
        };
        let mut cover_idx = Vec::with_capacity(covers.len());
        for (lo, hi) in covers {
            cover_idx.push((index(lo.as_ref())?, index(hi.as_ref())?));
        }
        let n = names.len();
        let mut up: Vec<u64> = (0..n).map(|i| 1u64 << i).collect();
        for &(lo, hi) in &cover_idx {
            up[lo] |= 1 << hi;
        }
        // Warshall closure over bitmasks.
        for k in 0..n {
            for i in 0..n {
                if up[i] >> k & 1 == 1 {
                    up[i] |= up[k];
                }
            }
        }
        for &(lo, hi) in &cover_idx {
            if lo == hi || up[hi] >> lo & 1 == 1 {
                return Err(Error::MalformedPoset(format!("cycle through `{}` and `{}`", names[lo], names[hi])));
            }
        }
        Ok(Poset { names, covers: cover_idx, up })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn covers(&self) -> impl Iterator<Item = (&str, &str)> {
        self.covers.iter().map(|&(a, b)| (self.names[a].as_str(), self.names[b].as_str()))
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.up[a] >> b & 1 == 1
    }

    /// True when no two distinct points are comparable.
    pub fn is_antichain(&self) -> bool {
        self.up.iter().enumerate().all(|(i, &u)| u == 1 << i)
    }

    fn mask(&self) -> u64 {
        if self.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.len()) - 1
        }
    }
}

/// An up-closed subset of a poset, as a bitmask over its points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Upset(pub u64);

/// The Heyting algebra of up-sets of a finite poset.
#[derive(Debug, Clone)]
pub struct UpsetAlgebra {
    name: String,
    poset: Poset,
}

impl UpsetAlgebra {
    pub fn new(poset: Poset) -> UpsetAlgebra {
        UpsetAlgebra::named("poset", poset)
    }

    pub fn named(name: &str, poset: Poset) -> UpsetAlgebra {
        UpsetAlgebra { name: name.to_string(), poset }
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    /// [`Heyting::imp`], rejecting arguments outside the carrier.
    pub fn try_imp(&self, a: &Upset, b: &Upset) -> Result<Upset> {
        for x in [a, b] {
            if !self.contains(x) {
                return Err(Error::ForeignElement(format!("{:#b}", x.0)));
            }
        }
        Ok(self.imp(a, b))
    }

    /// The up-set of points `>= i`.
    pub fn principal(&self, i: usize) -> Upset {
        Upset(self.poset.up[i])
    }

    fn collect_upsets(&self, order: &[usize], pos: usize, acc: u64, out: &mut Vec<Upset>) {
        if pos == order.len() {
            out.push(Upset(acc));
            return;
        }
        let i = order[pos];
        self.collect_upsets(order, pos + 1, acc, out);
        // Points are visited top-down, so everything above `i` is decided.
        if self.poset.up[i] & !(1 << i) & !acc == 0 {
            self.collect_upsets(order, pos + 1, acc | 1 << i, out);
        }
    }
}

/// Uninhabited family domain: finite up-set algebras carry no families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NoFamilies {}

impl Heyting for UpsetAlgebra {
    type Elem = Upset;

    fn name(&self) -> String {
        self.name.clone()
    }

    fn bottom(&self) -> Upset {
        Upset(0)
    }

    fn top(&self) -> Upset {
        Upset(self.poset.mask())
    }

    fn meet(&self, a: &Upset, b: &Upset) -> Upset {
        Upset(a.0 & b.0)
    }

    fn join(&self, a: &Upset, b: &Upset) -> Upset {
        Upset(a.0 | b.0)
    }

    fn imp(&self, a: &Upset, b: &Upset) -> Upset {
        let bad = a.0 & !b.0;
        let mut out = 0u64;
        for (i, &u) in self.poset.up.iter().enumerate() {
            if u & bad == 0 {
                out |= 1 << i;
            }
        }
        Upset(out)
    }

    fn le(&self, a: &Upset, b: &Upset) -> bool {
        a.0 & !b.0 == 0
    }

    fn contains(&self, a: &Upset) -> bool {
        a.0 & !self.poset.mask() == 0
            && (0..self.poset.len()).all(|i| a.0 >> i & 1 == 0 || self.poset.up[i] & !a.0 == 0)
    }

    fn elements(&self) -> Result<Vec<Upset>> {
        // Linear extension from the top: sort by decreasing size of up-set.
        let mut order: Vec<usize> = (0..self.poset.len()).collect();
        order.sort_by_key(|&i| (self.poset.up[i].count_ones(), i));
        let mut out = Vec::new();
        self.collect_upsets(&order, 0, 0, &mut out);
        out.sort_by_key(|u| (u.0.count_ones(), u.0));
        Ok(out)
    }

    fn format(&self, a: &Upset) -> String {
        let mut s = String::from("{");
        let mut first = true;
        for (i, n) in self.poset.names.iter().enumerate() {
            if a.0 >> i & 1 == 1 {
                if !first {
                    s.push(',');
                }
                s.push_str(n);
                first = false;
            }
        }
        s.push('}');
        s
    }

    fn parse_with_params(&self, s: &str, _params: &[(&str, Param)]) -> Result<Upset> {
        let t = s.trim();
        match t {
            "0" => return Ok(self.bottom()),
            "1" => return Ok(self.top()),
            _ => {}
        }
        let inner = t
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| Error::Parse(format!("expected an up-set literal `{{p,q}}`, got `{t}`")))?;
        let mut bits = 0u64;
        for name in inner.split(',').map(str::trim).filter(|n| !n.is_empty()) {
            let i = self
                .poset
                .names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| Error::Parse(format!("unknown point `{name}`")))?;
            bits |= 1 << i;
        }
        let u = Upset(bits);
        if !self.contains(&u) {
            return Err(Error::ForeignElement(format!("{t} is not up-closed")));
        }
        Ok(u)
    }
}

impl Parametric for UpsetAlgebra {
    type Domain = NoFamilies;

    fn mentions(&self, _a: &Upset, _p: Param) -> bool {
        false
    }

    fn rename(&self, a: &Upset, _map: &[(Param, Param)]) -> Upset {
        *a
    }

    fn quantify(&self, _a: &Upset, _p: Param, domain: &NoFamilies, _q: Quantifier) -> Result<Upset> {
        match *domain {}
    }

    fn parse_domain(&self, _s: &str) -> Result<NoFamilies> {
        Err(Error::FamiliesUnsupported)
    }

    fn format_domain(&self, domain: &NoFamilies) -> String {
        match *domain {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn chain2() -> UpsetAlgebra {
        UpsetAlgebra::new(Poset::new(&["p", "q"], &[("p", "q")]).unwrap())
    }

    #[test]
    fn two_chain_has_three_upsets() {
        let h = chain2();
        let els = h.elements().unwrap();
        // p < q: the up-sets are {}, {q}, {p,q}
        assert_eq!(els, vec![Upset(0), Upset(0b10), Upset(0b11)]);
        assert_eq!(h.format(&els[1]), "{q}");
    }

    #[test]
    fn empty_poset_is_degenerate() {
        let h = UpsetAlgebra::new(Poset::new::<&str>(&[], &[]).unwrap());
        assert_eq!(h.elements().unwrap(), vec![Upset(0)]);
        assert_eq!(h.bottom(), h.top());
    }

    #[test]
    fn antichain_gives_boolean_algebra() {
        let h = UpsetAlgebra::new(Poset::new(&["a", "b"], &[]).unwrap());
        let els = h.elements().unwrap();
        assert_eq!(els.len(), 4);
        for a in &els {
            assert_eq!(h.join(a, &h.neg(a)), h.top());
        }
    }

    #[test]
    fn implication_on_three_chain() {
        let h = chain2();
        let (bot, mid, top) = (Upset(0), Upset(0b10), Upset(0b11));
        assert_eq!(h.imp(&mid, &bot), bot);
        for x in [bot, mid, top] {
            assert_eq!(h.imp(&bot, &x), top);
        }
        assert_eq!(h.imp(&top, &mid), mid);
    }

    #[test]
    fn checked_imp_rejects_foreign_elements() {
        let h = chain2();
        // {p} alone is not up-closed.
        assert!(matches!(h.try_imp(&Upset(0b01), &Upset(0)), Err(Error::ForeignElement(_))));
        assert!(matches!(h.try_imp(&Upset(0b100), &Upset(0)), Err(Error::ForeignElement(_))));
        assert_eq!(h.try_imp(&Upset(0b10), &Upset(0)), Ok(Upset(0)));
    }

    #[test]
    fn cycles_and_unknown_names_are_rejected() {
        assert!(matches!(Poset::new(&["a", "b"], &[("a", "b"), ("b", "a")]), Err(Error::MalformedPoset(_))));
        assert!(matches!(Poset::new(&["a"], &[("a", "a")]), Err(Error::MalformedPoset(_))));
        assert!(matches!(Poset::new(&["a"], &[("a", "z")]), Err(Error::MalformedPoset(_))));
        assert!(matches!(Poset::new(&["a", "a"], &[]), Err(Error::MalformedPoset(_))));
        assert!(matches!(Poset::new(&["1x"], &[]), Err(Error::MalformedPoset(_))));
    }

    #[test]
    fn literals_round_trip() {
        let h = chain2();
        for e in h.elements().unwrap() {
            assert_eq!(h.parse(&h.format(&e)).unwrap(), e);
        }
        assert_eq!(h.parse("1").unwrap(), h.top());
        assert_eq!(h.parse(" { } ").unwrap(), h.bottom());
        assert!(matches!(h.parse("{p}"), Err(Error::ForeignElement(_))));
        assert!(matches!(h.parse("{r}"), Err(Error::Parse(_))));
    }
}
