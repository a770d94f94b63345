use hvo_core::hset::{Hf, Universe};
use hvo_core::interval::IntervalAlgebra;
use hvo_core::order::{zoo, Heyting, UpsetAlgebra};
use hvo_core::ordinal::{self, WitnessPair};
use hvo_core::pipeline::{self, build_antichain, Certify, MetaFunction};
use hvo_core::Error;

fn hf(s: &str) -> Hf {
    Hf::parse(s).unwrap()
}

#[test]
fn pow_lift_of_a_two_key_lift_is_certified() {
    let mut u = Universe::new(IntervalAlgebra);
    let p = ordinal::witness_pair(&mut u).unwrap();
    let (zero, one) = (u.numeral(0), u.numeral(1));
    let f0 = MetaFunction::new(vec![(hf("0"), zero), (hf("1"), one)]).unwrap();
    let f = pipeline::perp_lift(&mut u, &p, &f0, true).unwrap();
    assert!(f.is_certified());
    let g = pipeline::pow_lift(&mut u, &p, &f, &hf("2").subsets(), true).unwrap();
    assert_eq!(g.len(), 4);
    let c = g.certificate().unwrap();
    assert_eq!(c.pairs.len(), 6);
    assert!(c.pairs.iter().all(|(_, _, t)| IntervalAlgebra.is_top(t)));
    let dup = pipeline::pow_lift(&mut u, &p, &f, &[hf("0"), hf("0")], true);
    assert!(matches!(dup, Err(Error::DuplicateKey(_))));
}

#[test]
fn decoding_needs_incomparability() {
    let (_, poset) = zoo::zoo().remove(0);
    let mut u = Universe::new(UpsetAlgebra::named("chain1", poset));
    let (zero, one) = (u.numeral(0), u.numeral(1));
    let f = MetaFunction::new(vec![(hf("0"), zero), (hf("1"), one)]).unwrap();
    let tau = pipeline::subset_encode(&mut u, &f, &hf("{1}")).unwrap();
    assert_eq!(tau, u.numeral(2));
    let d = pipeline::subset_decode(&mut u, &f, tau).unwrap();
    assert_eq!(d.keys, [hf("0"), hf("1")]);
}

#[test]
fn merging_two_singleton_stages() {
    let mut u = Universe::new(IntervalAlgebra);
    let p = ordinal::witness_pair(&mut u).unwrap();
    let (zero, one) = (u.numeral(0), u.numeral(1));
    let f0 = pipeline::perp_lift(&mut u, &p, &MetaFunction::new(vec![(hf("0"), zero)]).unwrap(), true).unwrap();
    let f1 = pipeline::perp_lift(&mut u, &p, &MetaFunction::new(vec![(hf("1"), one)]).unwrap(), true).unwrap();
    let g = pipeline::merge_families(&mut u, &p, &[(0, f0.clone()), (1, f1)], true).unwrap();
    assert_eq!(g.keys().cloned().collect::<Vec<_>>(), [hf("0"), hf("1")]);
    assert!(g.is_certified());
    let f0b = pipeline::perp_lift(&mut u, &p, &MetaFunction::new(vec![(hf("0"), one)]).unwrap(), true).unwrap();
    let h = pipeline::merge_families(&mut u, &p, &[(0, f0), (1, f0b)], true).unwrap();
    assert_eq!(h.len(), 1);
}

#[test]
fn antichains_for_small_sets() {
    let mut u = Universe::new(IntervalAlgebra);
    let p = ordinal::witness_pair(&mut u).unwrap();
    let a = build_antichain(&mut u, &p, &hf("{0}"), 2, Certify::Final).unwrap();
    assert_eq!(a.function.len(), 2);
    assert!(a.function.is_certified());
    let b = build_antichain(&mut u, &p, &hf("2"), 3, Certify::All).unwrap();
    assert!(b.function.is_certified());
    assert_eq!(b.function.len(), 3);
    let again = build_antichain(&mut u, &p, &hf("2"), 3, Certify::None).unwrap();
    assert_eq!(again.function.entries(), b.function.entries());
    assert_eq!(
        build_antichain(&mut u, &p, &hf("2"), 2, Certify::None).map(|_| ()),
        Err(Error::StageIncomplete { given: 2, minimal: 3 })
    );
}

#[test]
fn stages_cover_and_grow() {
    for x in Hf::universe_below(4) {
        let tc = x.transitive_closure();
        for n in 0..=x.rank() + 2 {
            let (s, t) = (Hf::from_members(pipeline::tc_stage(&x, n)), Hf::from_members(pipeline::tc_stage(&x, n + 1)));
            assert!(s.is_subset(&t));
            assert!(s.members().iter().all(|m| tc.contains(m)));
        }
        assert!(pipeline::tc_stage(&x, pipeline::minimal_stage(&x)).contains(&x));
    }
}

#[test]
fn finite_pairs_still_run_and_stay_sound() {
    let (_, poset) = zoo::zoo().into_iter().find(|(n, _)| *n == "chain2").unwrap();
    let mut u = Universe::new(UpsetAlgebra::named("chain2", poset));
    let h = u.algebra().parse("{q}").unwrap();
    let (a, b) = (ordinal::ord_em(&mut u, &h), u.numeral(2));
    let p = WitnessPair::new(&mut u, a, b).unwrap();
    let x = build_antichain(&mut u, &p, &hf("{0,{0}}"), 3, Certify::Final).unwrap();
    for (_, _, t) in &x.function.certificate().unwrap().pairs {
        assert!(u.algebra().le(&p.perp_value, t));
    }
}
