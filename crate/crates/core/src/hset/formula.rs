//! Bounded (Δ0) formulas over H-sets and their truth values.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! φ ::= ψ -> φ | ψ              (right associative)
//! ψ ::= χ \/ χ \/ …
//! χ ::= η & η & …
//! η ::= ~η | ( φ ) | tt | ff | A v : t . φ | E v : t . φ
//!     | perp(t,t) | tri(t,t) | theta(t,t,t,t) | ord(t) | t in t | t = t
//! t ::= #n | {hset literal} | name | succ(t) | add(t,t) | pairenc(t,t) | ordem(label)
//! ```

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{Bound, Elem, NodeId, Universe};
use crate::order::{Param, Parametric, Quantifier};
use crate::{ordinal, Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    Name(String),
    Numeral(u32),
    /// An H-set literal, parsed when evaluated.
    Literal(String),
    Succ(Box<Term>),
    Add(Box<Term>, Box<Term>),
    /// `(A⁺ + γ₁) ∪ (B⁺ + γ₂)` for the constants `A` and `B`.
    PairEnc(Box<Term>, Box<Term>),
    /// `{#0, #1, {#0 @ l}}` for an element literal `l`.
    OrdEm(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pred {
    Perp,
    Tri,
    Theta,
    Ord,
}

impl Pred {
    fn arity(self) -> usize {
        match self {
            Pred::Ord => 1,
            Pred::Perp | Pred::Tri => 2,
            Pred::Theta => 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Formula {
    True,
    False,
    Mem(Term, Term),
    Eq(Term, Term),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Forall(String, Term, Box<Formula>),
    Exists(String, Term, Box<Formula>),
    Pred(Pred, Vec<Term>),
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn ws(&mut self) {
        let r = self.rest();
        self.pos += r.len() - r.trim_start().len();
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at byte {} of `{}`", self.pos, self.src))
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.err(&format!("expected `{tok}`")))
        }
    }

    fn peek_ident(&mut self) -> Option<&'a str> {
        self.ws();
        let r = self.rest();
        let first = r.chars().next()?;
        if !(first.is_ascii_alphabetic() || first == '_') {
            return None;
        }
        let len = r.find(|c: char| !(c.is_ascii_alphanumeric() || c == '_')).unwrap_or(r.len());
        Some(&r[..len])
    }

    fn ident(&mut self) -> Option<&'a str> {
        let id = self.peek_ident()?;
        self.pos += id.len();
        Some(id)
    }

    /// Raw text of a balanced group starting at the current `open`
    /// character, delimiters included when `keep` is set.
    fn balanced(&mut self, open: char, close: char, keep: bool) -> Result<&'a str> {
        self.ws();
        let r = self.rest();
        if !r.starts_with(open) {
            return Err(self.err(&format!("expected `{open}`")));
        }
        let mut depth = 0;
        for (i, c) in r.char_indices() {
            if c == open {
                depth += 1;
            } else if c == close {
                depth -= 1;
                if depth == 0 {
                    self.pos += i + 1;
                    return Ok(if keep { &r[..=i] } else { &r[1..i] });
                }
            }
        }
        Err(self.err(&format!("unbalanced `{open}`")))
    }

    fn formula(&mut self) -> Result<Formula> {
        let lhs = self.disjunction()?;
        if self.eat("->") {
            let rhs = self.formula()?;
            return Ok(Formula::Imp(Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut lhs = self.conjunction()?;
        while self.eat("\\/") {
            let rhs = self.conjunction()?;
            lhs = Formula::Or(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut lhs = self.unary()?;
        while self.eat("&") {
            let rhs = self.unary()?;
            lhs = Formula::And(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula> {
        if self.eat("~") {
            return Ok(Formula::Not(Box::new(self.unary()?)));
        }
        if self.eat("(") {
            let f = self.formula()?;
            self.expect(")")?;
            return Ok(f);
        }
        let save = self.pos;
        if let Some(id) = self.ident() {
            match id {
                "tt" => return Ok(Formula::True),
                "ff" => return Ok(Formula::False),
                "A" | "E" => {
                    let after = self.pos;
                    if let Some(var) = self.ident() {
                        if self.eat(":") {
                            let dom = self.term()?;
                            self.expect(".")?;
                            let body = Box::new(self.formula()?);
                            let var = var.to_string();
                            return Ok(if id == "A" {
                                Formula::Forall(var, dom, body)
                            } else {
                                Formula::Exists(var, dom, body)
                            });
                        }
                    }
                    self.pos = after;
                }
                "perp" | "tri" | "theta" | "ord" if self.rest().trim_start().starts_with('(') => {
                    let pred = match id {
                        "perp" => Pred::Perp,
                        "tri" => Pred::Tri,
                        "theta" => Pred::Theta,
                        _ => Pred::Ord,
                    };
                    let args = self.args()?;
                    if args.len() != pred.arity() {
                        return Err(self.err(&format!("`{id}` takes {} arguments", pred.arity())));
                    }
                    return Ok(Formula::Pred(pred, args));
                }
                _ => {}
            }
        }
        self.pos = save;
        let lhs = self.term()?;
        if self.peek_ident() == Some("in") {
            self.pos += 2;
            return Ok(Formula::Mem(lhs, self.term()?));
        }
        if self.eat("=") {
            return Ok(Formula::Eq(lhs, self.term()?));
        }
        Err(self.err("expected `in` or `=`"))
    }

    fn args(&mut self) -> Result<Vec<Term>> {
        self.expect("(")?;
        let mut out = alloc::vec![self.term()?];
        while self.eat(",") {
            out.push(self.term()?);
        }
        self.expect(")")?;
        Ok(out)
    }

    fn term(&mut self) -> Result<Term> {
        self.ws();
        if self.eat("#") {
            let r = self.rest();
            let len = r.find(|c: char| !c.is_ascii_digit()).unwrap_or(r.len());
            let n = r[..len].parse().map_err(|_| self.err("expected a numeral after `#`"))?;
            self.pos += len;
            return Ok(Term::Numeral(n));
        }
        if self.rest().starts_with('{') {
            return Ok(Term::Literal(self.balanced('{', '}', true)?.to_string()));
        }
        let id = self.ident().ok_or_else(|| self.err("expected a term"))?;
        let call = self.rest().trim_start().starts_with('(');
        let two = |p: &mut Self| -> Result<(Box<Term>, Box<Term>)> {
            let mut a = p.args()?;
            if a.len() != 2 {
                return Err(p.err(&format!("`{id}` takes 2 arguments")));
            }
            let y = a.pop().unwrap();
            Ok((Box::new(a.pop().unwrap()), Box::new(y)))
        };
        Ok(match id {
            "succ" if call => {
                let mut a = self.args()?;
                if a.len() != 1 {
                    return Err(self.err("`succ` takes 1 argument"));
                }
                Term::Succ(Box::new(a.pop().unwrap()))
            }
            "add" if call => {
                let (a, b) = two(self)?;
                Term::Add(a, b)
            }
            "pairenc" if call => {
                let (a, b) = two(self)?;
                Term::PairEnc(a, b)
            }
            "ordem" if call => Term::OrdEm(self.balanced('(', ')', false)?.trim().to_string()),
            _ => Term::Name(id.to_string()),
        })
    }
}

impl Formula {
    pub fn parse(s: &str) -> Result<Formula> {
        let mut p = Parser { src: s, pos: 0 };
        let f = p.formula()?;
        p.ws();
        if p.pos != s.len() {
            return Err(p.err("trailing input"));
        }
        Ok(f)
    }
}

impl Term {
    pub fn parse(s: &str) -> Result<Term> {
        let mut p = Parser { src: s, pos: 0 };
        let t = p.term()?;
        p.ws();
        if p.pos != s.len() {
            return Err(p.err("trailing input"));
        }
        Ok(t)
    }
}

type Env = Vec<(String, Bound)>;

impl<H: Parametric> Universe<H> {
    /// Truth value of `phi` with the given variable bindings.
    pub fn eval(&mut self, phi: &Formula, env: &[(&str, Bound)]) -> Result<Elem<H>> {
        let mut env: Env = env.iter().map(|(n, b)| (n.to_string(), *b)).collect();
        self.eval_in(phi, &mut env)
    }

    /// Parse and evaluate a closed formula.
    pub fn eval_str(&mut self, phi: &str) -> Result<Elem<H>> {
        let f = Formula::parse(phi)?;
        self.eval(&f, &[])
    }

    /// The H-set a term denotes.
    pub fn eval_term(&mut self, t: &Term, env: &[(&str, Bound)]) -> Result<Bound> {
        let env: Env = env.iter().map(|(n, b)| (n.to_string(), *b)).collect();
        self.term_in(t, &env)
    }

    fn term_in(&mut self, t: &Term, env: &Env) -> Result<Bound> {
        let same_var = |a: Bound, b: Bound| -> Result<Option<Param>> {
            match (a.var, b.var) {
                (Some(x), Some(y)) if x != y => Err(Error::DepthExceeded),
                (x, y) => Ok(x.or(y)),
            }
        };
        let bound =
            |id: NodeId, var: Option<Param>, u: &Self| Bound { id, var: if u.is_open(id) { var } else { None } };
        match t {
            Term::Name(n) => {
                if let Some((_, b)) = env.iter().rev().find(|(m, _)| m == n) {
                    return Ok(*b);
                }
                self.constant(n).map(Bound::from).ok_or_else(|| Error::UnboundVariable(n.clone()))
            }
            Term::Numeral(n) => Ok(self.numeral(*n).into()),
            Term::Literal(s) => Ok(self.parse_hset(s)?.into()),
            Term::Succ(a) => {
                let a = self.term_in(a, env)?;
                let id = ordinal::hsucc(self, a.id);
                Ok(bound(id, a.var, self))
            }
            Term::Add(a, b) => {
                let (a, b) = (self.term_in(a, env)?, self.term_in(b, env)?);
                let var = same_var(a, b)?;
                let id = ordinal::ord_add(self, a.id, b.id)?;
                Ok(bound(id, var, self))
            }
            Term::PairEnc(a, b) => {
                let (a, b) = (self.term_in(a, env)?, self.term_in(b, env)?);
                let var = same_var(a, b)?;
                let pa = self.constant("A").ok_or_else(|| Error::UnknownConstant("A".into()))?;
                let pb = self.constant("B").ok_or_else(|| Error::UnknownConstant("B".into()))?;
                let id = ordinal::pair_encode_raw(self, pa, pb, a.id, b.id)?;
                Ok(bound(id, var, self))
            }
            Term::OrdEm(l) => {
                let l = self.alg.parse(l)?;
                Ok(ordinal::ord_em(self, &l).into())
            }
        }
    }

    fn eval_in(&mut self, phi: &Formula, env: &mut Env) -> Result<Elem<H>> {
        Ok(match phi {
            Formula::True => self.top(),
            Formula::False => self.bottom(),
            Formula::Mem(a, b) => {
                let (a, b) = (self.term_in(a, env)?, self.term_in(b, env)?);
                self.mem(a, b)?
            }
            Formula::Eq(a, b) => {
                let (a, b) = (self.term_in(a, env)?, self.term_in(b, env)?);
                self.eq(a, b)?
            }
            Formula::Not(a) => {
                let a = self.eval_in(a, env)?;
                self.alg.neg(&a)
            }
            Formula::And(a, b) => {
                let a = self.eval_in(a, env)?;
                if self.alg.is_bottom(&a) {
                    return Ok(a);
                }
                let b = self.eval_in(b, env)?;
                self.alg.meet(&a, &b)
            }
            Formula::Or(a, b) => {
                let a = self.eval_in(a, env)?;
                if self.alg.is_top(&a) {
                    return Ok(a);
                }
                let b = self.eval_in(b, env)?;
                self.alg.join(&a, &b)
            }
            Formula::Imp(a, b) => {
                let a = self.eval_in(a, env)?;
                if self.alg.is_bottom(&a) {
                    return Ok(self.top());
                }
                let b = self.eval_in(b, env)?;
                self.alg.imp(&a, &b)
            }
            Formula::Forall(v, t, body) => self.bounded(v, t, body, env, Quantifier::Meet)?,
            Formula::Exists(v, t, body) => self.bounded(v, t, body, env, Quantifier::Join)?,
            Formula::Pred(p, args) => {
                let mut b = Vec::with_capacity(args.len());
                for a in args {
                    b.push(self.term_in(a, env)?);
                }
                match p {
                    Pred::Perp => ordinal::perp(self, b[0], b[1])?,
                    Pred::Tri => ordinal::trichotomy(self, b[0], b[1])?,
                    Pred::Theta => ordinal::theta(self, b[0], b[1], b[2], b[3])?,
                    Pred::Ord => ordinal::is_ord(self, b[0])?,
                }
            }
        })
    }

    fn bounded(&mut self, v: &str, t: &Term, body: &Formula, env: &mut Env, q: Quantifier) -> Result<Elem<H>> {
        let tb = self.term_in(t, env)?;
        let forall = q == Quantifier::Meet;
        let mut acc = if forall { self.top() } else { self.bottom() };
        let done = |u: &Self, acc: &Elem<H>| if forall { u.alg.is_bottom(acc) } else { u.alg.is_top(acc) };
        let combine =
            |u: &Self, l: &Elem<H>, val: &Elem<H>| if forall { u.alg.imp(l, val) } else { u.alg.meet(l, val) };
        let fold = |u: &Self, acc: &Elem<H>, x: &Elem<H>| if forall { u.alg.meet(acc, x) } else { u.alg.join(acc, x) };
        let entries = self.entries(tb.id).to_vec();
        for (e, l) in entries {
            if done(self, &acc) {
                return Ok(acc);
            }
            let l = self.relabel(&l, tb.var);
            let eb = Bound { id: e, var: if self.is_open(e) { tb.var } else { None } };
            env.push((v.to_string(), eb));
            let val = self.eval_in(body, env);
            env.pop();
            let x = combine(self, &l, &val?);
            acc = fold(self, &acc, &x);
        }
        let families = self.families(tb.id).to_vec();
        for fam in families {
            if done(self, &acc) {
                break;
            }
            let live: Vec<Param> = env.iter().filter_map(|(_, b)| b.var).chain(tb.var).collect();
            let f = [1, 2].into_iter().find(|p| !live.contains(p)).ok_or(Error::DepthExceeded)?;
            let body_b = self.bind(fam.body, f);
            let l = self.relabel(&fam.label, Some(f));
            env.push((v.to_string(), body_b));
            let val = self.eval_in(body, env);
            env.pop();
            let x = combine(self, &l, &val?);
            let x = self.alg.quantify(&x, f, &fam.domain, q)?;
            acc = fold(self, &acc, &x);
        }
        Ok(acc)
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
    fn parses_precedence_and_quantifiers() {
        let f = Formula::parse("~a in b & tt \\/ ff -> a = b -> tt").unwrap();
        match f {
            Formula::Imp(lhs, rhs) => {
                assert!(matches!(*lhs, Formula::Or(..)));
                assert!(matches!(*rhs, Formula::Imp(..)));
            }
            other => panic!("{other:?}"),
        }
        let q = Formula::parse("A y : #2 . E z : y . z in A").unwrap();
        assert!(matches!(q, Formula::Forall(ref v, Term::Numeral(2), _) if v == "y"));
        // `A` alone is a constant name.
        assert!(matches!(Formula::parse("A in B").unwrap(), Formula::Mem(Term::Name(_), Term::Name(_))));
        assert!(matches!(Formula::parse("ord(succ(#1))").unwrap(), Formula::Pred(Pred::Ord, _)));
        assert!(matches!(Term::parse("ordem({p,q})").unwrap(), Term::OrdEm(ref s) if s == "{p,q}"));
        assert!(Formula::parse("a in").is_err());
        assert!(Formula::parse("perp(a)").is_err());
        assert!(Formula::parse("(a in b").is_err());
    }

    #[test]
    fn evaluates_examples_on_three_chain() {
        let mut u = chain2();
        let alg = u.algebra().clone();
        let h = u.algebra().parse("{q}").unwrap();
        let uh = u.parse_hset("{#0 @ {q}}").unwrap();
        u.define("u", uh);
        assert_eq!(u.eval_str("u in #2").unwrap(), h);
        assert_eq!(u.eval_str("(u in #1 & u = #0) \\/ u = #1 \\/ #1 in u").unwrap(), h);
        assert!(alg.is_top(&u.eval_str("A y : #3 . A z : y . z in #3").unwrap()));
        assert!(alg.is_bottom(&u.eval_str("E y : #0 . tt").unwrap()));
        assert_eq!(u.eval_str("x in #1"), Err(Error::UnboundVariable("x".into())));
        assert!(alg.is_top(&u.eval_str("add(#2, #1) = #3").unwrap()));
    }
}
