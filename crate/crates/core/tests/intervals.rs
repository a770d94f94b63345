use hvo_core::interval::{family_join, family_meet, rat, IntervalSet, ParamDomain, Rational, Template};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn samples(range: &ParamDomain, n: usize, seed: u64) -> Vec<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < n {
        let r = rat(rng.gen_range(-40..=40), rng.gen_range(1..=7));
        if range.contains(&r) {
            out.push(r);
        }
    }
    out
}

const TEMPLATES: &[&str] =
    &["!q", "(-inf,q)", "(q,+inf)", "(q,1)|(2,+inf)", "(-inf,0)|(q,+inf)", "(0,q)", "(-1,q)|(q,1)"];

#[test]
fn family_meets_and_joins_bound_their_instances() {
    let ranges = [ParamDomain::All, ParamDomain::parse("(0,1)").unwrap(), ParamDomain::parse("(-2,1/2)").unwrap()];
    for text in TEMPLATES {
        let t = Template::parse(text, &[("q", 1)]).unwrap();
        for range in &ranges {
            let meet = family_meet(&t, range).unwrap();
            let join = family_join(&t, range).unwrap();
            for (i, r) in samples(range, 50, 7).into_iter().enumerate() {
                for p in samples(&ParamDomain::All, 20, i as u64) {
                    let inst = t.evaluate(&p, &[(1, r.clone())]).unwrap();
                    assert!(!meet.contains(&p) || inst, "{text} over {range}: meet not below instance q={r} at {p}");
                    assert!(!inst || join.contains(&p), "{text} over {range}: instance q={r} not below join at {p}");
                }
            }
        }
    }
}

#[test]
fn point_complements_meet_to_nothing_over_the_rationals() {
    let t = Template::point_complement(1);
    assert_eq!(family_meet(&t, &ParamDomain::All).unwrap(), IntervalSet::empty());
    assert_eq!(family_join(&t, &ParamDomain::All).unwrap(), IntervalSet::full());
    let half = family_meet(&t, &ParamDomain::parse("(0,1)").unwrap()).unwrap();
    assert_eq!(half.to_string(), "(-inf,0)|(1,+inf)");
}

proptest! {
    #[test]
    fn evaluation_matches_substitution(n in -6i64..=6, d in 1i64..=4, pn in -12i64..=12) {
        let t = Template::parse("(q,1)|(2,+inf)", &[("q", 1)]).unwrap();
        let (q, p) = (rat(n, d), rat(pn, 2));
        let direct = (q < p && p < rat(1, 1)) || p > rat(2, 1);
        prop_assert_eq!(t.evaluate(&p, &[(1, q)]), Some(direct));
    }
}
