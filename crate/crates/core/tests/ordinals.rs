use hvo_core::hset::Universe;
use hvo_core::interval::IntervalAlgebra;
use hvo_core::order::{zoo, Heyting, UpsetAlgebra};
use hvo_core::ordinal::{self, WitnessPair};

fn universe(name: &str) -> Universe<UpsetAlgebra> {
    let (_, p) = zoo::zoo().into_iter().find(|(n, _)| *n == name).unwrap();
    Universe::new(UpsetAlgebra::named(name, p))
}

#[test]
fn addition_of_numerals_is_classical() {
    let mut u = universe("chain1");
    let alg = u.algebra().clone();
    for m in 0..=6 {
        for n in 0..=6 {
            let (a, b) = (u.numeral(m), u.numeral(n));
            assert_eq!(ordinal::ord_add(&mut u, a, b).unwrap(), u.numeral(m + n), "{m}+{n}");
            assert!(alg.is_top(&ordinal::trichotomy(&mut u, a, b).unwrap()));
        }
    }
}

#[test]
fn three_chain_measurements() {
    let mut u = universe("chain2");
    let h = u.algebra().parse("{q}").unwrap();
    let uh = u.parse_hset("{#0 @ {q}}").unwrap();
    let one = u.numeral(1);
    assert_eq!(ordinal::trichotomy(&mut u, one, uh).unwrap(), h);
    assert_eq!(ordinal::is_ord(&mut u, uh).unwrap(), u.algebra().top());
    let em = ordinal::ord_em(&mut u, &h);
    let two = u.numeral(2);
    let v = ordinal::perp(&mut u, em, two).unwrap();
    assert!(u.algebra().is_bottom(&v));
    let not_ord = u.parse_hset("{#1}").unwrap();
    let v = ordinal::is_ord(&mut u, not_ord).unwrap();
    assert!(!u.algebra().is_top(&v));
}

#[test]
fn witness_pair_is_incomparable() {
    let mut u = Universe::new(IntervalAlgebra);
    let p = ordinal::witness_pair(&mut u).unwrap();
    assert!(p.is_incomparable(&u));
    for v in ordinal::constituents(&mut u, p.a, p.b).unwrap() {
        assert!(IntervalAlgebra.is_bottom(&v));
    }
    assert!(IntervalAlgebra.is_bottom(&ordinal::trichotomy(&mut u, p.a, p.b).unwrap()));
    let (zero, one) = (u.numeral(0), u.numeral(1));
    let x = ordinal::pair_encode(&mut u, &p, zero, one).unwrap();
    let y = ordinal::pair_encode(&mut u, &p, one, zero).unwrap();
    assert!(IntervalAlgebra.is_bottom(&u.eq(x, y).unwrap()));
    let (lx, ly) = (ordinal::lift_value(&mut u, &p, zero).unwrap(), ordinal::lift_value(&mut u, &p, one).unwrap());
    assert!(IntervalAlgebra.is_top(&ordinal::theta(&mut u, zero, lx, one, ly).unwrap()));
}

#[test]
fn boolean_pair_is_comparable_and_injectivity_is_vacuous() {
    let mut u = universe("chain1");
    let two = u.numeral(2);
    let p = WitnessPair::new(&mut u, two, two).unwrap();
    assert!(u.algebra().is_bottom(&p.perp_value));
    let (zero, one) = (u.numeral(0), u.numeral(1));
    let v = ordinal::theta(&mut u, zero, zero, one, one).unwrap();
    assert!(u.algebra().is_bottom(&v));
    let x = ordinal::pair_encode(&mut u, &p, zero, zero).unwrap();
    let s = ordinal::hsucc(&mut u, two);
    assert_eq!(x, u.union(s, s).unwrap());
}

#[test]
fn formulas_reach_the_ordinal_operations() {
    let mut u = Universe::new(IntervalAlgebra);
    ordinal::witness_pair(&mut u).unwrap();
    for (text, want) in [
        ("perp(A, B)", "1"),
        ("tri(A, B)", "0"),
        ("add(#2, #3) = #5", "1"),
        ("succ(#1) = #2", "1"),
        ("ord(A)", "1"),
        ("theta(#0, pairenc(#0, #0), #1, pairenc(#0, #1))", "1"),
    ] {
        let v = u.eval_str(text).unwrap();
        assert_eq!(IntervalAlgebra.format(&v), want, "{text}");
    }
}
