//! Parametric interval sets.
//!
//! A [`Template`] with parameters `q1, …, qk` denotes a map from parameter
//! values to open subsets of ℚ. Over the dense order (ℚ, <) every such map
//! that is definable from finitely many rational constants is determined by
//! the *order type* of the point `p`, the parameters and the constants. A
//! template therefore stores the set of order-type cells in which `p` belongs
//! to the set. Meets, joins and implication act cell-wise; eliminating a
//! parameter by an infinite meet or join inspects every position the
//! parameter can take relative to the remaining terms, which is exact by
//! density.
//!
//! Cells are encoded per variable as `(slot, block)`: slot `2g` is the open
//! gap below constant `g` (slot `2m` is above all `m` constants), slot
//! `2j + 1` is constant `j` itself, and `block` orders the variables sharing
//! a gap. Variable 0 is always the point `p`.

use alloc::collections::btree_map::{BTreeMap, Entry};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::literal::{parse_literal, RawEnd, RawTerm};
use super::set::IntervalSet;
use super::{format_rational, ParamDomain, Rational};
use crate::order::{Param, Quantifier};
use crate::{Error, Result};

/// Largest number of parameters a template may carry.
pub const MAX_PARAMS: usize = 2;
const MAX_VARS: usize = MAX_PARAMS + 1;
const SPACING: i64 = 16;

type Code = [u8; 2 * MAX_VARS];

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Template {
    params: Vec<Param>,
    consts: Vec<Rational>,
    cells: Vec<Code>,
}

/// All surjections of `k` items onto an initial segment `0..b`, i.e. the
/// ordered partitions of the items, as block indices.
fn ordered_partitions(k: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let total = (k as u32).pow(k as u32).max(1);
    for mut n in 0..total {
        let mut f = vec![0u8; k];
        for slot in f.iter_mut() {
            *slot = (n % k as u32) as u8;
            n /= k as u32;
        }
        let max = f.iter().copied().max().unwrap_or(0);
        if (0..=max).all(|b| f.contains(&b)) || k == 0 {
            out.push(f);
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Every cell for `nvars` variables over `m` constants, sorted.
fn space(nvars: usize, m: usize) -> Vec<Code> {
    let slots = 2 * m + 1;
    let mut out = Vec::new();
    let mut assign = vec![0usize; nvars];
    loop {
        // Variables in each even (gap) slot need an ordered partition.
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for g in (0..slots).step_by(2) {
            let members: Vec<usize> = (0..nvars).filter(|&v| assign[v] == g).collect();
            if !members.is_empty() {
                groups.push(members);
            }
        }
        let choices: Vec<Vec<Vec<u8>>> = groups.iter().map(|g| ordered_partitions(g.len())).collect();
        let mut pick = vec![0usize; groups.len()];
        loop {
            let mut code = [0u8; 2 * MAX_VARS];
            for v in 0..nvars {
                code[2 * v] = assign[v] as u8;
            }
            for (gi, members) in groups.iter().enumerate() {
                for (k, &v) in members.iter().enumerate() {
                    code[2 * v + 1] = choices[gi][pick[gi]][k];
                }
            }
            out.push(code);
            // Odometer over partition choices.
            let mut i = 0;
            while i < pick.len() {
                pick[i] += 1;
                if pick[i] < choices[i].len() {
                    break;
                }
                pick[i] = 0;
                i += 1;
            }
            if i == pick.len() {
                break;
            }
        }
        let mut i = 0;
        while i < nvars {
            assign[i] += 1;
            if assign[i] < slots {
                break;
            }
            assign[i] = 0;
            i += 1;
        }
        if i == nvars {
            break;
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Integer witnesses realising a cell: coordinates of the variables and of
/// the constants.
fn coords(code: &Code, nvars: usize, m: usize) -> (Vec<i64>, Vec<i64>) {
    let consts = (0..m).map(|j| SPACING * (j as i64 + 1)).collect();
    let vars = (0..nvars)
        .map(|v| {
            let (slot, block) = (code[2 * v] as i64, code[2 * v + 1] as i64);
            if slot % 2 == 1 {
                SPACING * ((slot - 1) / 2 + 1)
            } else {
                SPACING * (slot / 2) + 2 + 2 * block
            }
        })
        .collect();
    (vars, consts)
}

/// The cell of concrete values. `consts` must be sorted and distinct.
fn code_of<T: Ord>(vars: &[T], consts: &[T]) -> Code {
    let mut code = [0u8; 2 * MAX_VARS];
    let pos: Vec<core::result::Result<usize, usize>> = vars.iter().map(|v| consts.binary_search(v)).collect();
    for (i, v) in vars.iter().enumerate() {
        match pos[i] {
            Ok(j) => code[2 * i] = (2 * j + 1) as u8,
            Err(g) => {
                code[2 * i] = (2 * g) as u8;
                let mut below: Vec<&T> =
                    vars.iter().zip(&pos).filter(|(w, pw)| **pw == Err(g) && *w < v).map(|(w, _)| w).collect();
                below.sort();
                below.dedup();
                code[2 * i + 1] = below.len() as u8;
            }
        }
    }
    code
}

fn merge_sorted<T: Ord + Clone>(a: &[T], b: &[T]) -> Vec<T> {
    let mut out: Vec<T> = a.iter().chain(b).cloned().collect();
    out.sort();
    out.dedup();
    out
}

/// How a template's variables and constants sit inside a larger frame.
struct Embedding {
    vars: Vec<usize>,
    consts: Vec<usize>,
}

impl Embedding {
    fn new(t: &Template, params: &[Param], consts: &[Rational]) -> Embedding {
        let mut vars = vec![0];
        vars.extend(t.params.iter().map(|p| 1 + params.binary_search(p).expect("param in frame")));
        let consts = t.consts.iter().map(|c| consts.binary_search(c).expect("const in frame")).collect();
        Embedding { vars, consts }
    }

    fn holds(&self, t: &Template, fv: &[i64], fc: &[i64]) -> bool {
        let v: Vec<i64> = self.vars.iter().map(|&i| fv[i]).collect();
        let c: Vec<i64> = self.consts.iter().map(|&j| fc[j]).collect();
        t.holds(&code_of(&v, &c))
    }
}

impl Template {
    pub fn bottom() -> Template {
        Template { params: Vec::new(), consts: Vec::new(), cells: Vec::new() }
    }

    pub fn top() -> Template {
        Template { params: Vec::new(), consts: Vec::new(), cells: vec![[0; 2 * MAX_VARS]] }
    }

    /// The parameter-free template denoting `set`.
    pub fn from_set(set: &IntervalSet) -> Template {
        let consts = set.endpoints();
        let cells = set
            .profile(&consts)
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(r, _)| {
                let mut c = [0u8; 2 * MAX_VARS];
                c[0] = r as u8;
                c
            })
            .collect();
        Template { params: Vec::new(), consts, cells }
    }

    /// `(-inf, q) | (q, +inf)` for the parameter `q`.
    pub fn point_complement(q: Param) -> Template {
        Template::build(vec![q], Vec::new(), |v, _| v[0] != v[1])
    }

    /// Build from a predicate on cell witnesses; the result is simplified.
    fn build(mut params: Vec<Param>, consts: Vec<Rational>, pred: impl FnMut(&[i64], &[i64]) -> bool) -> Template {
        params.sort();
        params.dedup();
        Template::build_raw(params, consts, pred).simplify()
    }

    fn build_raw(params: Vec<Param>, consts: Vec<Rational>, mut pred: impl FnMut(&[i64], &[i64]) -> bool) -> Template {
        let (n, m) = (params.len() + 1, consts.len());
        let cells = space(n, m)
            .into_iter()
            .filter(|code| {
                let (v, c) = coords(code, n, m);
                pred(&v, &c)
            })
            .collect();
        Template { params, consts, cells }
    }

    pub fn params(&self) -> &[Param] {
        &self.params
    }

    pub fn arity(&self) -> usize {
        self.params.len()
    }

    pub fn constants(&self) -> &[Rational] {
        &self.consts
    }

    pub fn is_bottom(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn is_top(&self) -> bool {
        *self == Template::top()
    }

    pub fn mentions(&self, p: Param) -> bool {
        self.params.binary_search(&p).is_ok()
    }

    fn nvars(&self) -> usize {
        self.params.len() + 1
    }

    fn holds(&self, code: &Code) -> bool {
        self.cells.binary_search(code).is_ok()
    }

    /// Concrete membership of `p` for the given parameter values; `None` if
    /// a mentioned parameter has no value.
    pub fn evaluate(&self, p: &Rational, values: &[(Param, Rational)]) -> Option<bool> {
        let mut vars = vec![p.clone()];
        for q in &self.params {
            vars.push(values.iter().find(|(n, _)| n == q)?.1.clone());
        }
        Some(self.holds(&code_of(&vars, &self.consts)))
    }

    /// The closed interval set, if no parameter is mentioned.
    pub fn to_interval_set(&self) -> Option<IntervalSet> {
        if !self.params.is_empty() {
            return None;
        }
        let regions = 2 * self.consts.len() + 1;
        let profile: Vec<bool> = (0..regions)
            .map(|r| {
                let mut c = [0u8; 2 * MAX_VARS];
                c[0] = r as u8;
                self.holds(&c)
            })
            .collect();
        Some(IntervalSet::from_profile(&self.consts, &profile))
    }

    fn combine(&self, other: &Template, f: impl Fn(bool, bool) -> bool) -> Template {
        if self.params == other.params && self.consts == other.consts {
            let cells = space(self.nvars(), self.consts.len())
                .into_iter()
                .filter(|c| f(self.holds(c), other.holds(c)))
                .collect();
            return Template { params: self.params.clone(), consts: self.consts.clone(), cells };
        }
        let params = merge_sorted(&self.params, &other.params);
        let consts = merge_sorted(&self.consts, &other.consts);
        let (ea, eb) = (Embedding::new(self, &params, &consts), Embedding::new(other, &params, &consts));
        Template::build_raw(params, consts, |v, c| f(ea.holds(self, v, c), eb.holds(other, v, c)))
    }

    pub fn meet(&self, other: &Template) -> Template {
        if self.is_bottom() || other.is_top() {
            return self.clone();
        }
        if other.is_bottom() || self.is_top() {
            return other.clone();
        }
        if self.params == other.params && self.consts == other.consts {
            let cells = self.cells.iter().filter(|c| other.holds(c)).copied().collect();
            return Template { params: self.params.clone(), consts: self.consts.clone(), cells }.simplify();
        }
        self.combine(other, |a, b| a && b).simplify()
    }

    pub fn join(&self, other: &Template) -> Template {
        if self.is_bottom() || other.is_top() {
            return other.clone();
        }
        if other.is_bottom() || self.is_top() {
            return self.clone();
        }
        if self.params == other.params && self.consts == other.consts {
            let cells = merge_sorted(&self.cells, &other.cells);
            return Template { params: self.params.clone(), consts: self.consts.clone(), cells }.simplify();
        }
        self.combine(other, |a, b| a || b).simplify()
    }

    /// Cell-wise interior of `complement(self) ∪ other` in the point variable.
    pub fn imp(&self, other: &Template) -> Template {
        if self.is_bottom() || other.is_top() {
            return Template::top();
        }
        if self.is_top() {
            return other.clone();
        }
        self.combine(other, |a, b| !a || b).interior().simplify()
    }

    /// Keep a cell only if `p` has an open neighbourhood inside the set,
    /// for the cell's fixed parameter values.
    fn interior(&self) -> Template {
        let (n, m) = (self.nvars(), self.consts.len());
        let cells = self
            .cells
            .iter()
            .filter(|code| {
                let at_const = code[0] % 2 == 1;
                let shares_block = (1..n).any(|v| code[2 * v] == code[0] && code[2 * v + 1] == code[1]);
                if !at_const && !shares_block {
                    return true;
                }
                let (mut v, mut c) = coords(code, n, m);
                v.iter_mut().chain(c.iter_mut()).for_each(|x| *x *= 2);
                let t = v[0];
                let others = v[1..].iter().chain(&c).copied();
                let left = others.clone().filter(|&x| x < t).max().map_or(t - 2, |x| (x + t) / 2);
                let right = others.filter(|&x| x > t).min().map_or(t + 2, |x| (x + t) / 2);
                [left, right].iter().all(|&x| {
                    v[0] = x;
                    self.holds(&code_of(&v, &c))
                })
            })
            .copied()
            .collect();
        Template { params: self.params.clone(), consts: self.consts.clone(), cells }
    }

    /// Remove parameter index `var` (into `params`) or constant index
    /// `konst` if membership does not depend on it.
    fn reduce(&self, var: Option<usize>, konst: Option<usize>) -> Option<Template> {
        let (n, m) = (self.nvars(), self.consts.len());
        let mut reduced: BTreeMap<Code, bool> = BTreeMap::new();
        for code in space(n, m) {
            let (mut v, mut c) = coords(&code, n, m);
            if let Some(i) = var {
                v.remove(1 + i);
            }
            if let Some(j) = konst {
                c.remove(j);
            }
            let member = self.holds(&code);
            match reduced.entry(code_of(&v, &c)) {
                Entry::Vacant(e) => {
                    e.insert(member);
                }
                Entry::Occupied(e) => {
                    if *e.get() != member {
                        return None;
                    }
                }
            }
        }
        let mut params = self.params.clone();
        let mut consts = self.consts.clone();
        if let Some(i) = var {
            params.remove(i);
        }
        if let Some(j) = konst {
            consts.remove(j);
        }
        let cells = reduced.into_iter().filter(|(_, b)| *b).map(|(c, _)| c).collect();
        Some(Template { params, consts, cells })
    }

    /// Canonical form: drop every parameter and constant that membership
    /// does not depend on.
    fn simplify(mut self) -> Template {
        if self.cells.is_empty() {
            return Template::bottom();
        }
        'again: loop {
            for i in (0..self.params.len()).rev() {
                if let Some(t) = self.reduce(Some(i), None) {
                    self = t;
                    continue 'again;
                }
            }
            for j in (0..self.consts.len()).rev() {
                if let Some(t) = self.reduce(None, Some(j)) {
                    self = t;
                    continue 'again;
                }
            }
            return self;
        }
    }

    /// Eliminate parameter `q` by a meet (interior of the intersection) or a
    /// join (union) over `domain`.
    pub fn quantify(&self, q: Param, domain: &ParamDomain, mode: Quantifier) -> Template {
        let Ok(qi) = self.params.binary_search(&q) else {
            return self.clone();
        };
        let params: Vec<Param> = self.params.iter().copied().filter(|&x| x != q).collect();
        let (lo, hi) = domain.bounds();
        let bounds: Vec<Rational> = [lo, hi].into_iter().flatten().cloned().collect();
        let consts = merge_sorted(&self.consts, &bounds);
        let lo_idx = lo.map(|r| consts.binary_search(r).unwrap());
        let hi_idx = hi.map(|r| consts.binary_search(r).unwrap());
        let own_consts: Vec<usize> = self.consts.iter().map(|c| consts.binary_search(c).unwrap()).collect();
        let result = Template::build_raw(params, consts, |fv, fc| {
            let v2: Vec<i64> = fv.iter().map(|x| 2 * x).collect();
            let c2: Vec<i64> = fc.iter().map(|x| 2 * x).collect();
            let mut terms: Vec<i64> = v2.iter().chain(&c2).copied().collect();
            terms.sort();
            terms.dedup();
            let mut candidates = vec![terms[0] - 2, terms[terms.len() - 1] + 2];
            for w in terms.windows(2) {
                candidates.push((w[0] + w[1]) / 2);
            }
            candidates.extend(&terms);
            let lo = lo_idx.map(|j| c2[j]);
            let hi = hi_idx.map(|j| c2[j]);
            let own_c: Vec<i64> = own_consts.iter().map(|&j| c2[j]).collect();
            let mut vals =
                candidates.into_iter().filter(|&x| lo.is_none_or(|l| l < x) && hi.is_none_or(|h| x < h)).map(|x| {
                    let mut vars = v2.clone();
                    vars.insert(1 + qi, x);
                    self.holds(&code_of(&vars, &own_c))
                });
            match mode {
                Quantifier::Meet => vals.all(|b| b),
                Quantifier::Join => vals.any(|b| b),
            }
        });
        match mode {
            Quantifier::Meet => result.interior().simplify(),
            Quantifier::Join => result.simplify(),
        }
    }

    /// Rename parameters simultaneously; the targets must stay distinct.
    pub fn rename(&self, map: &[(Param, Param)]) -> Template {
        if self.params.is_empty() {
            return self.clone();
        }
        let renamed: Vec<Param> =
            self.params.iter().map(|p| map.iter().find(|(from, _)| from == p).map_or(*p, |(_, to)| *to)).collect();
        let mut order: Vec<usize> = (0..renamed.len()).collect();
        order.sort_by_key(|&i| renamed[i]);
        let params: Vec<Param> = order.iter().map(|&i| renamed[i]).collect();
        debug_assert!(params.windows(2).all(|w| w[0] < w[1]), "rename merged parameters");
        if params == self.params && order.iter().enumerate().all(|(k, &i)| k == i) {
            return self.clone();
        }
        let mut cells: Vec<Code> = self
            .cells
            .iter()
            .map(|code| {
                let mut out = *code;
                for (k, &i) in order.iter().enumerate() {
                    out[2 * (1 + k)] = code[2 * (1 + i)];
                    out[2 * (1 + k) + 1] = code[2 * (1 + i) + 1];
                }
                out
            })
            .collect();
        cells.sort();
        Template { params, consts: self.consts.clone(), cells }
    }

    /// Parse an element literal; `names` binds parameter names.
    pub fn parse(s: &str, names: &[(&str, Param)]) -> Result<Template> {
        let terms = parse_literal(s, names)?;
        let mut params = Vec::new();
        let mut consts = Vec::new();
        for t in &terms {
            let ends: &[&RawEnd] = match t {
                RawTerm::Open(a, b) => &[a, b],
                RawTerm::PointComplement(a) => &[a],
                _ => &[],
            };
            for e in ends {
                match e {
                    RawEnd::Param(p) => params.push(*p),
                    RawEnd::Rat(r) => consts.push(r.clone()),
                    _ => {}
                }
            }
        }
        params.sort();
        params.dedup();
        if params.len() > MAX_PARAMS {
            return Err(Error::DepthExceeded);
        }
        consts.sort();
        consts.dedup();
        let (ps, cs) = (params.clone(), consts.clone());
        let val = |e: &RawEnd, v: &[i64], c: &[i64]| match e {
            RawEnd::NegInf => i64::MIN,
            RawEnd::PosInf => i64::MAX,
            RawEnd::Param(p) => v[1 + ps.binary_search(p).unwrap()],
            RawEnd::Rat(r) => c[cs.binary_search(r).unwrap()],
        };
        Ok(Template::build(params, consts, |v, c| {
            terms.iter().any(|t| match t {
                RawTerm::Empty => false,
                RawTerm::Full => true,
                RawTerm::Open(a, b) => val(a, v, c) < v[0] && v[0] < val(b, v, c),
                RawTerm::PointComplement(a) => v[0] != val(a, v, c),
            })
        }))
    }
}

/// Display name of a parameter.
pub(crate) fn param_name(p: Param) -> String {
    format!("q{p}")
}

impl fmt::Display for Template {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(set) = self.to_interval_set() {
            return write!(f, "{set}");
        }
        if self.params.len() == 1 && self.consts.is_empty() {
            // Cells: p below, at, above the parameter.
            let q = param_name(self.params[0]);
            let below = self.holds(&[0, 0, 0, 1, 0, 0]);
            let at = self.holds(&[0, 0, 0, 0, 0, 0]);
            let above = self.holds(&[0, 1, 0, 0, 0, 0]);
            return match (below, at, above) {
                (true, true, true) => f.write_str("1"),
                (true, false, true) => write!(f, "!{q}"),
                (true, false, false) => write!(f, "(-inf,{q})"),
                (false, false, true) => write!(f, "({q},+inf)"),
                _ => f.write_str("0"),
            };
        }
        // General case: one clause per order type of the parameters.
        let (n, m) = (self.nvars(), self.consts.len());
        let mut by_case: BTreeMap<Vec<u8>, Code> = BTreeMap::new();
        for code in space(n, m) {
            by_case.entry(code[2..2 * n].to_vec()).or_insert(code);
        }
        f.write_str("[")?;
        for (k, code) in by_case.values().enumerate() {
            if k > 0 {
                f.write_str("; ")?;
            }
            let (v, c) = coords(code, n, m);
            let mut terms: Vec<(i64, String)> = c
                .iter()
                .zip(&self.consts)
                .map(|(&x, r)| (x, format_rational(r)))
                .chain(v[1..].iter().zip(&self.params).map(|(&x, &p)| (x, param_name(p))))
                .collect();
            terms.sort();
            let mut chain = String::new();
            for (i, (x, name)) in terms.iter().enumerate() {
                if i > 0 {
                    chain.push_str(if terms[i - 1].0 == *x { "=" } else { "<" });
                }
                chain.push_str(name);
            }
            let mut pts: Vec<(i64, String)> = Vec::new();
            for (x, name) in terms {
                if pts.last().is_none_or(|(y, _)| *y != x) {
                    pts.push((x, name));
                }
            }
            let mut parts: Vec<String> = Vec::new();
            let mut vv = v.clone();
            let mut member = |x: i64| {
                vv[0] = 2 * x;
                let cc: Vec<i64> = c.iter().map(|y| 2 * y).collect();
                let vvv: Vec<i64> = vv.iter().enumerate().map(|(i, y)| if i == 0 { *y } else { 2 * y }).collect();
                self.holds(&code_of(&vvv, &cc))
            };
            let k = pts.len();
            let mut start: Option<String> = None;
            for g in 0..=k {
                let lo_name = if g == 0 { "-inf".to_string() } else { pts[g - 1].1.clone() };
                let hi_name = if g == k { "+inf".to_string() } else { pts[g].1.clone() };
                let mid = match (g, k) {
                    (0, 0) => 0,
                    (0, _) => pts[0].0 - 1,
                    (g, k) if g == k => pts[k - 1].0 + 1,
                    _ => (pts[g - 1].0 + pts[g].0) / 2,
                };
                // Witness coordinates are even, so halves stay integral after doubling.
                if member(mid) {
                    if start.is_none() {
                        start = Some(lo_name);
                    }
                    if !(g < k && member(pts[g].0) && {
                        let next = if g + 1 == k { pts[g].0 + 1 } else { (pts[g].0 + pts[g + 1].0) / 2 };
                        member(next)
                    }) {
                        parts.push(format!("({},{})", start.take().unwrap(), hi_name));
                    }
                }
            }
            let body = if parts.is_empty() { "0".to_string() } else { parts.join("|") };
            write!(f, "{chain}: {body}")?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::rat;

    #[test]
    fn partitions_and_spaces_have_expected_sizes() {
        assert_eq!(ordered_partitions(1).len(), 1);
        assert_eq!(ordered_partitions(2).len(), 3);
        assert_eq!(ordered_partitions(3).len(), 13);
        // Point alone over two constants: 5 regions.
        assert_eq!(space(1, 2).len(), 5);
        // p and one parameter, no constants: below, equal, above.
        assert_eq!(space(2, 0).len(), 3);
        assert_eq!(space(3, 0).len(), 13);
    }

    #[test]
    fn code_of_matches_coords() {
        for (n, m) in [(1, 0), (2, 1), (3, 2)] {
            for code in space(n, m) {
                let (v, c) = coords(&code, n, m);
                assert_eq!(code_of(&v, &c), code);
            }
        }
    }

    #[test]
    fn point_complement_evaluates() {
        let t = Template::point_complement(1);
        assert_eq!(t.evaluate(&rat(1, 2), &[(1, rat(1, 2))]), Some(false));
        assert_eq!(t.evaluate(&rat(1, 3), &[(1, rat(1, 2))]), Some(true));
        assert_eq!(t.evaluate(&rat(1, 3), &[]), None);
        assert_eq!(t.to_string(), "!q1");
    }

    #[test]
    fn closed_templates_round_trip_through_sets() {
        for s in ["0", "1", "(0,1)|(1,2)", "(-inf,-3/4)|(5,+inf)"] {
            let set = IntervalSet::parse(s).unwrap();
            let t = Template::from_set(&set);
            assert_eq!(t.to_interval_set().unwrap(), set);
            assert_eq!(Template::parse(s, &[]).unwrap(), t);
        }
    }

    #[test]
    fn simplify_drops_irrelevant_structure() {
        let q = Template::point_complement(1);
        // !q ∨ ¬!q is independent of q only in the trivial sense: ¬!q = 0.
        assert!(q.imp(&Template::bottom()).is_bottom());
        let below = Template::parse("(-inf,q)", &[("q", 1)]).unwrap();
        let above = Template::parse("(q,+inf)", &[("q", 1)]).unwrap();
        assert_eq!(below.join(&above), q);
        let everything = Template::parse("(-inf,q)|(q,+inf)|(q,q)|(-inf,+inf)", &[("q", 1)]).unwrap();
        assert!(everything.is_top());
        let t = Template::parse("(0,1)|(-5,5)", &[]).unwrap();
        assert_eq!(t.constants().len(), 2);
    }

    #[test]
    fn quantifier_examples() {
        let all = ParamDomain::All;
        let unit = ParamDomain::open(rat(0, 1).into(), rat(1, 1).into()).unwrap();
        let pc = Template::point_complement(1);
        assert!(pc.quantify(1, &all, Quantifier::Meet).is_bottom());
        assert!(pc.quantify(1, &all, Quantifier::Join).is_top());
        let above = Template::parse("(q,+inf)", &[("q", 1)]).unwrap();
        assert_eq!(above.quantify(1, &unit, Quantifier::Meet).to_string(), "(1,+inf)");
        assert_eq!(above.quantify(1, &unit, Quantifier::Join).to_string(), "(0,+inf)");
    }

    #[test]
    fn rename_permutes_parameters() {
        let t = Template::parse("(q,r)", &[("q", 1), ("r", 2)]).unwrap();
        let swapped = t.rename(&[(1, 2), (2, 1)]);
        let direct = Template::parse("(r,q)", &[("q", 1), ("r", 2)]).unwrap();
        assert_eq!(swapped, direct);
        assert_eq!(swapped.rename(&[(1, 2), (2, 1)]), t);
        let moved = Template::point_complement(1).rename(&[(1, 2)]);
        assert_eq!(moved, Template::point_complement(2));
    }

    #[test]
    fn general_display_lists_cases() {
        let t = Template::parse("(q,r)", &[("q", 1), ("r", 2)]).unwrap();
        let s = t.to_string();
        assert!(s.starts_with('['), "{s}");
        assert!(s.contains("q1<q2: (q1,q2)"), "{s}");
    }
}
