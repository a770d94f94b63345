//! H-set literals: `#n`, constant names, `{e @ l, …}` and
//! `fam q in D : body @ label`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use hashbrown::{HashMap, HashSet};

use super::{Family, NodeId, Universe, SELF};
use crate::order::{Heyting, Param, Parametric};
use crate::{Error, Result};

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn ws(&mut self) {
        let r = self.rest();
        self.pos += r.len() - r.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at byte {} of `{}`", self.pos, self.src))
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected `{c}`")))
        }
    }

    fn ident(&mut self) -> Option<&'a str> {
        self.ws();
        let r = self.rest();
        let first = r.chars().next()?;
        if !(first.is_ascii_alphabetic() || first == '_') {
            return None;
        }
        let len = r.find(|c: char| !(c.is_ascii_alphanumeric() || c == '_')).unwrap_or(r.len());
        self.pos += len;
        Some(&r[..len])
    }

    fn number(&mut self) -> Option<u32> {
        self.ws();
        let r = self.rest();
        let len = r.find(|c: char| !c.is_ascii_digit()).unwrap_or(r.len());
        let n = r[..len].parse().ok()?;
        self.pos += len;
        Some(n)
    }

    /// Raw text up to (not including) a depth-0 character from `stops`.
    fn raw_until(&mut self, stops: &[char]) -> &'a str {
        let r = self.rest();
        let mut depth = 0i32;
        let mut end = r.len();
        for (i, c) in r.char_indices() {
            match c {
                '(' | '{' | '[' => depth += 1,
                ')' | '}' | ']' if depth > 0 => depth -= 1,
                _ if depth == 0 && stops.contains(&c) => {
                    end = i;
                    break;
                }
                _ => {}
            }
        }
        self.pos += end;
        r[..end].trim()
    }
}

/// Parameter names in scope: the innermost family's name maps to `SELF`,
/// the enclosing one to parameter 2.
#[derive(Clone, Default)]
struct Scope<'a> {
    names: Vec<(&'a str, Param)>,
}

impl<'a> Scope<'a> {
    fn enter(&self, name: &'a str) -> Scope<'a> {
        let mut names: Vec<(&'a str, Param)> = self.names.iter().map(|&(n, _)| (n, 2)).collect();
        names.push((name, SELF));
        Scope { names }
    }
}

/// Largest numeral `#n` the literal syntax accepts.
const MAX_NUMERAL: u32 = 64;

impl<H: Parametric> Universe<H> {
    /// Parse an H-set literal; names refer to the constant table.
    pub fn parse_hset(&mut self, s: &str) -> Result<NodeId> {
        let mut c = Cursor { src: s, pos: 0 };
        let id = self.hset_at(&mut c, &Scope::default())?;
        c.ws();
        if c.pos != s.len() {
            return Err(c.err("trailing input"));
        }
        Ok(id)
    }

    fn label_at(&self, c: &mut Cursor<'_>, scope: &Scope<'_>) -> Result<<H as Heyting>::Elem> {
        let text = c.raw_until(&[',', '}']);
        if text.is_empty() {
            return Err(c.err("empty label"));
        }
        let l = self.alg.parse_with_params(text, &scope.names)?;
        if self.alg.mentions(&l, 2) {
            return Err(Error::DepthExceeded);
        }
        Ok(l)
    }

    fn hset_at<'s>(&mut self, c: &mut Cursor<'s>, scope: &Scope<'s>) -> Result<NodeId> {
        match c.peek() {
            Some('#') => {
                c.pos += 1;
                match c.number() {
                    Some(n) if n <= MAX_NUMERAL => Ok(self.numeral(n)),
                    _ => Err(c.err("expected a numeral after `#`")),
                }
            }
            Some('{') => {
                c.pos += 1;
                let mut entries = Vec::new();
                let mut families = Vec::new();
                if c.eat('}') {
                    return Ok(self.empty());
                }
                loop {
                    let save = c.pos;
                    let is_fam = c.ident() == Some("fam") && c.peek().is_some_and(|ch| ch.is_ascii_alphabetic());
                    if is_fam {
                        families.push(self.family_at(c, scope)?);
                    } else {
                        c.pos = save;
                        let e = self.hset_at(c, scope)?;
                        let l = if c.eat('@') { self.label_at(c, scope)? } else { self.top() };
                        entries.push((e, l));
                    }
                    if c.eat('}') {
                        break;
                    }
                    c.expect(',')?;
                }
                self.make(entries, families)
            }
            _ => {
                let name = c.ident().ok_or_else(|| c.err("expected an H-set"))?;
                self.constant(name).ok_or_else(|| Error::UnknownConstant(name.to_string()))
            }
        }
    }

    fn family_at<'s>(
        &mut self,
        c: &mut Cursor<'s>,
        scope: &Scope<'s>,
    ) -> Result<Family<<H as Heyting>::Elem, H::Domain>> {
        let name = c.ident().ok_or_else(|| c.err("expected a parameter name"))?;
        if c.ident() != Some("in") {
            return Err(c.err("expected `in`"));
        }
        c.ws();
        let dom_text = c.raw_until(&[':']);
        let domain = self.alg.parse_domain(dom_text)?;
        c.expect(':')?;
        let inner = scope.enter(name);
        let body = self.hset_at(c, &inner)?;
        let label = if c.eat('@') { self.label_at(c, &inner)? } else { self.top() };
        Ok(Family { domain, body, label })
    }

    /// Print an H-set literal that [`Universe::parse_hset`] reads back.
    /// Numerals print as `#n`, ⊤ labels are omitted and family parameters
    /// are named `q1`.
    pub fn format_hset(&self, id: NodeId) -> String {
        let mut out = String::new();
        self.write_child(id, &HashMap::new(), &mut out);
        out
    }

    /// Print several H-sets with shared subterms named once. Closed
    /// subterms other than numerals become definitions `s1, s2, …` in
    /// dependency order; reading the definitions back in order and then the
    /// roots reproduces the same nodes.
    pub fn format_shared(&self, roots: &[NodeId]) -> SharedLiteral {
        let mut names = HashMap::new();
        let mut defs = Vec::new();
        let mut seen = HashSet::new();
        for &r in roots {
            self.name_children(r, &mut seen, &mut names, &mut defs);
        }
        let roots = roots
            .iter()
            .map(|&r| {
                let mut out = String::new();
                self.write_child(r, &names, &mut out);
                out
            })
            .collect();
        SharedLiteral { defs, roots }
    }

    fn name_children(
        &self,
        id: NodeId,
        seen: &mut HashSet<NodeId>,
        names: &mut HashMap<NodeId, String>,
        defs: &mut Vec<(String, String)>,
    ) {
        let children: Vec<NodeId> =
            self.entries(id).iter().map(|(e, _)| *e).chain(self.families(id).iter().map(|f| f.body)).collect();
        for c in children {
            if self.numeral_value(c).is_some() || !seen.insert(c) {
                continue;
            }
            self.name_children(c, seen, names, defs);
            if !self.is_open(c) {
                let mut out = String::new();
                self.write_node(c, names, &mut out);
                let name = format!("s{}", defs.len() + 1);
                defs.push((name.clone(), out));
                names.insert(c, name);
            }
        }
    }

    fn write_child(&self, id: NodeId, names: &HashMap<NodeId, String>, out: &mut String) {
        if let Some(n) = self.numeral_value(id) {
            out.push_str(&format!("#{n}"));
        } else if let Some(name) = names.get(&id) {
            out.push_str(name);
        } else {
            self.write_node(id, names, out);
        }
    }

    fn write_node(&self, id: NodeId, names: &HashMap<NodeId, String>, out: &mut String) {
        out.push('{');
        let mut first = true;
        for (e, l) in self.entries(id) {
            if !first {
                out.push_str(", ");
            }
            first = false;
            self.write_child(*e, names, out);
            if !self.alg.is_top(l) {
                out.push_str(" @ ");
                out.push_str(&self.alg.format(l));
            }
        }
        for f in self.families(id) {
            if !first {
                out.push_str(", ");
            }
            first = false;
            out.push_str(&format!("fam q{SELF} in {} : ", self.alg.format_domain(&f.domain)));
            self.write_child(f.body, names, out);
            out.push_str(" @ ");
            out.push_str(&self.alg.format(&f.label));
        }
        out.push('}');
    }
}

/// The output of [`Universe::format_shared`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SharedLiteral {
    /// `(name, literal)` in dependency order.
    pub defs: Vec<(String, String)>,
    /// One literal per root, over the defined names.
    pub roots: Vec<String>,
}

#[cfg(test)]
mod tests {
    use crate::hset::Universe;
    use crate::interval::IntervalAlgebra;
    use crate::order::zoo::zoo;
    use crate::order::{Heyting, UpsetAlgebra};
    use crate::Error;

    fn chain2() -> Universe<UpsetAlgebra> {
        let (_, p) = zoo().into_iter().find(|(n, _)| *n == "chain2").unwrap();
        Universe::new(UpsetAlgebra::named("chain2", p))
    }

    #[test]
    fn shared_literals_read_back() {
        let mut u = Universe::new(IntervalAlgebra);
        let x = u.parse_hset("{{#1, {#2 @ (0,1)}} @ (0,2), {{#2 @ (0,1)}}, fam q in QQ : {#0 @ !q} @ 1}").unwrap();
        let y = u.parse_hset("{{#2 @ (0,1)}, #3}").unwrap();
        let shared = u.format_shared(&[x, y]);
        assert_eq!(shared.defs[0], ("s1".into(), "{#2 @ (0,1)}".into()));
        let mut w = Universe::new(IntervalAlgebra);
        for (name, lit) in &shared.defs {
            let id = w.parse_hset(lit).unwrap();
            w.define(name, id);
        }
        let back = [w.parse_hset(&shared.roots[0]).unwrap(), w.parse_hset(&shared.roots[1]).unwrap()];
        assert_eq!([w.format_hset(back[0]), w.format_hset(back[1])], [u.format_hset(x), u.format_hset(y)]);
    }

    #[test]
    fn finite_literals_round_trip() {
        let mut u = chain2();
        let two = u.parse_hset("#2").unwrap();
        assert_eq!(two, u.numeral(2));
        assert_eq!(u.parse_hset("{#0, {#0}}").unwrap(), two);
        let x = u.parse_hset("{#0 @ {q}, #1 @ {p,q}}").unwrap();
        assert_eq!(u.format_hset(x), "{#0 @ {q}, #1}");
        let printed = u.format_hset(x);
        assert_eq!(u.parse_hset(&printed).unwrap(), x);
        u.define("u", x);
        let y = u.parse_hset("{u @ 1, #0 @ 0}").unwrap();
        assert_eq!(u.entries(y).len(), 1);
        assert_eq!(u.parse_hset("nope"), Err(Error::UnknownConstant("nope".into())));
        assert!(u.parse_hset("{#0 @ {z}}").is_err());
        assert!(u.parse_hset("{#0,").is_err());
    }

    #[test]
    fn family_literals_round_trip() {
        let mut u = Universe::new(IntervalAlgebra);
        let a = u.parse_hset("{#0, #1, fam q in QQ : {#0 @ !q} @ 1}").unwrap();
        assert_eq!(u.families(a).len(), 1);
        assert!(!u.is_open(a) && u.is_open(u.families(a)[0].body));
        let printed = u.format_hset(a);
        assert_eq!(printed, "{#0, #1, fam q1 in QQ : {#0 @ !q1} @ 1}");
        assert_eq!(u.parse_hset(&printed).unwrap(), a);
        let ranged = u.parse_hset("{fam r in (0,1) : {#0 @ (r,+inf)} @ (-inf,r)}").unwrap();
        assert_eq!(u.parse_hset(&u.format_hset(ranged)).unwrap(), ranged);
    }

    #[test]
    fn nested_families_are_limited() {
        let mut u = Universe::new(IntervalAlgebra);
        // A family inside an open body is refused.
        let r = u.parse_hset("{fam q in QQ : {#0 @ !q, fam r in QQ : {#0 @ !r} @ 1} @ 1}");
        assert_eq!(r, Err(Error::DepthExceeded));
        let r = u.parse_hset("{fam q in QQ : {fam r in QQ : {#0 @ !q} @ 1} @ 1}");
        assert_eq!(r, Err(Error::DepthExceeded));
        // A closed inner family is fine.
        assert!(u.parse_hset("{fam q in QQ : {#0 @ !q, {fam r in QQ : {#0 @ !r} @ 1} @ 1} @ 1}").is_ok());
        assert!(u.algebra().parse("!q").is_err());
    }
}
