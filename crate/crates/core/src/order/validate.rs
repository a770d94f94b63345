use alloc::vec;
use alloc::vec::Vec;

use super::Heyting;

/// Outcome of one algebraic law over a sample set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawCheck<E> {
    pub law: &'static str,
    pub passed: bool,
    /// The first failing instance, in argument order.
    pub counterexample: Option<Vec<E>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawReport<E> {
    pub laws: Vec<LawCheck<E>>,
}

impl<E> LawReport<E> {
    pub fn passed(&self) -> bool {
        self.laws.iter().all(|l| l.passed)
    }
}

type Unary<H> = fn(&H, &<H as Heyting>::Elem) -> bool;
type Binary<H> = fn(&H, &<H as Heyting>::Elem, &<H as Heyting>::Elem) -> bool;
type Ternary<H> = fn(&H, &<H as Heyting>::Elem, &<H as Heyting>::Elem, &<H as Heyting>::Elem) -> bool;

fn leq<H: Heyting>(h: &H, a: &H::Elem, b: &H::Elem) -> bool {
    h.meet(a, b) == *a
}

/// Check the bounded distributive lattice laws and residuation over every
/// tuple drawn from `samples`.
pub fn validate_algebra<H: Heyting>(h: &H, samples: &[H::Elem]) -> LawReport<H::Elem> {
    let unary: [(&'static str, Unary<H>); 4] = [
        ("meet identity", |h, a| h.meet(a, &h.top()) == *a),
        ("join identity", |h, a| h.join(a, &h.bottom()) == *a),
        ("bounds", |h, a| h.meet(a, &h.bottom()) == h.bottom() && h.join(a, &h.top()) == h.top()),
        ("idempotence", |h, a| h.meet(a, a) == *a && h.join(a, a) == *a),
    ];
    let binary: [(&'static str, Binary<H>); 4] = [
        ("meet commutativity", |h, a, b| h.meet(a, b) == h.meet(b, a)),
        ("join commutativity", |h, a, b| h.join(a, b) == h.join(b, a)),
        ("absorption", |h, a, b| h.meet(a, &h.join(a, b)) == *a && h.join(a, &h.meet(a, b)) == *a),
        ("modus ponens", |h, a, b| leq(h, &h.meet(a, &h.imp(a, b)), b)),
    ];
    let ternary: [(&'static str, Ternary<H>); 4] = [
        ("meet associativity", |h, a, b, c| h.meet(a, &h.meet(b, c)) == h.meet(&h.meet(a, b), c)),
        ("join associativity", |h, a, b, c| h.join(a, &h.join(b, c)) == h.join(&h.join(a, b), c)),
        ("distributivity", |h, a, b, c| h.meet(a, &h.join(b, c)) == h.join(&h.meet(a, b), &h.meet(a, c))),
        ("residuation", |h, a, b, c| leq(h, &h.meet(a, c), b) == leq(h, c, &h.imp(a, b))),
    ];

    let mut laws = Vec::new();
    for (law, f) in unary {
        let bad = samples.iter().find(|a| !f(h, a));
        laws.push(LawCheck { law, passed: bad.is_none(), counterexample: bad.map(|a| vec![a.clone()]) });
    }
    for (law, f) in binary {
        let mut bad = None;
        'outer: for a in samples {
            for b in samples {
                if !f(h, a, b) {
                    bad = Some(vec![a.clone(), b.clone()]);
                    break 'outer;
                }
            }
        }
        laws.push(LawCheck { law, passed: bad.is_none(), counterexample: bad });
    }
    for (law, f) in ternary {
        let mut bad = None;
        'outer3: for a in samples {
            for b in samples {
                for c in samples {
                    if !f(h, a, b, c) {
                        bad = Some(vec![a.clone(), b.clone(), c.clone()]);
                        break 'outer3;
                    }
                }
            }
        }
        laws.push(LawCheck { law, passed: bad.is_none(), counterexample: bad });
    }
    LawReport { laws }
}
