//! A fixed collection of small posets used by the test suites.

use alloc::vec::Vec;

use super::Poset;

/// The named posets: chains of 1 to 4 points, antichains of 2 and 3, a
/// "vee" (one point below two) and the four-point "diamond".
pub fn zoo() -> Vec<(&'static str, Poset)> {
    let p = |els: &[&str], covers: &[(&str, &str)]| Poset::new(els, covers).expect("zoo poset");
    alloc::vec![
        ("chain1", p(&["p"], &[])),
        ("chain2", p(&["p", "q"], &[("p", "q")])),
        ("chain3", p(&["p", "q", "r"], &[("p", "q"), ("q", "r")])),
        ("chain4", p(&["p", "q", "r", "s"], &[("p", "q"), ("q", "r"), ("r", "s")])),
        ("antichain2", p(&["a", "b"], &[])),
        ("antichain3", p(&["a", "b", "c"], &[])),
        ("vee", p(&["a", "b", "c"], &[("a", "b"), ("a", "c")])),
        ("diamond", p(&["a", "b", "c", "d"], &[("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")])),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::{Heyting, UpsetAlgebra};

    #[test]
    fn carrier_sizes() {
        let sizes: Vec<usize> =
            zoo().into_iter().map(|(_, p)| UpsetAlgebra::new(p).elements().unwrap().len()).collect();
        assert_eq!(sizes, [2, 3, 4, 5, 4, 8, 5, 6]);
    }

    #[test]
    fn triple_negation_and_excluded_middle() {
        for (name, poset) in zoo() {
            let antichain = poset.is_antichain();
            let h = UpsetAlgebra::new(poset);
            let els = h.elements().unwrap();
            for a in &els {
                assert_eq!(h.neg(&h.neg(&h.neg(a))), h.neg(a), "{name}");
            }
            let boolean = els.iter().all(|a| h.join(a, &h.neg(a)) == h.top());
            assert_eq!(boolean, antichain, "{name}");
        }
    }
}
