use hvo_core::interval::{IntervalAlgebra, IntervalSet, Template};
use hvo_core::order::{validate_algebra, zoo, Heyting, Poset, UpsetAlgebra};
use proptest::prelude::*;

#[test]
fn zoo_algebras_satisfy_every_law_exhaustively() {
    for (name, poset) in zoo::zoo() {
        let alg = UpsetAlgebra::named(name, poset);
        let els = alg.elements().unwrap();
        let report = validate_algebra(&alg, &els);
        assert!(report.passed(), "{name}: {:?}", report.laws.iter().find(|l| !l.passed));
    }
}

/// A poset on `n` points from an upper-triangular relation mask.
fn poset(n: usize, mask: u16) -> Poset {
    let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let mut covers = Vec::new();
    let mut bit = 0;
    for i in 0..n {
        for j in i + 1..n {
            if mask >> bit & 1 == 1 {
                covers.push((names[i].clone(), names[j].clone()));
            }
            bit += 1;
        }
    }
    Poset::new(&names, &covers).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn residuation_on_random_posets(n in 1usize..=5, mask in any::<u16>(), picks in any::<[usize; 3]>()) {
        let alg = UpsetAlgebra::new(poset(n, mask));
        let els = alg.elements().unwrap();
        let [a, b, c] = picks.map(|i| els[i % els.len()]);
        prop_assert_eq!(alg.le(&alg.meet(&a, &c), &b), alg.le(&c, &alg.imp(&a, &b)));
        prop_assert!(alg.le(&alg.meet(&a, &alg.imp(&a, &b)), &b));
        prop_assert_eq!(alg.meet(&a, &alg.join(&b, &c)), alg.join(&alg.meet(&a, &b), &alg.meet(&a, &c)));
    }
}

fn interval_set() -> impl Strategy<Value = IntervalSet> {
    let end = prop_oneof![Just(None), (-4i64..=4, 1i64..=3).prop_map(Some)];
    prop::collection::vec((end.clone(), end), 0..4).prop_map(|raw| {
        use hvo_core::interval::{rat, Endpoint};
        let iv: Vec<(Endpoint, Endpoint)> = raw
            .into_iter()
            .map(|(l, h)| {
                let l = l.map_or(Endpoint::NegInf, |(n, d)| Endpoint::Finite(rat(n, d)));
                let h = h.map_or(Endpoint::PosInf, |(n, d)| Endpoint::Finite(rat(n, d)));
                (l, h)
            })
            .collect();
        IntervalSet::canon(&iv)
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn interval_residuation(a in interval_set(), b in interval_set(), c in interval_set()) {
        prop_assert_eq!(a.meet(&c).le(&b), c.le(&a.imp(&b)));
        prop_assert_eq!(a.meet(&b.join(&c)), a.meet(&b).join(&a.meet(&c)));
        prop_assert!(a.le(&a.neg().neg()));
    }

    #[test]
    fn templates_agree_with_interval_sets(a in interval_set(), b in interval_set()) {
        let (ta, tb) = (Template::from_set(&a), Template::from_set(&b));
        prop_assert_eq!(ta.meet(&tb).to_interval_set(), Some(a.meet(&b)));
        prop_assert_eq!(ta.join(&tb).to_interval_set(), Some(a.join(&b)));
        prop_assert_eq!(ta.imp(&tb).to_interval_set(), Some(a.imp(&b)));
        let alg = IntervalAlgebra;
        prop_assert_eq!(alg.parse(&alg.format(&ta)).unwrap(), ta);
    }
}
