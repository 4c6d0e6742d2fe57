use posit_core::automata::Dpa;
use posit_core::games::{random_arena, Arena, ArenaParams};
use posit_core::positionality::{compare_lassos, MonoidElement, Preorder};
use posit_core::{fixtures, Alphabet, FiniteWord, LassoWord};
use proptest::prelude::*;

fn word(max: usize, min: usize) -> impl Strategy<Value = Vec<char>> {
    prop::collection::vec(prop::sample::select(vec!['a', 'b', 'c']), min..=max)
}

fn lasso_parts() -> impl Strategy<Value = (Vec<char>, Vec<char>)> {
    (word(4, 0), word(4, 1))
}

fn make(parts: &(Vec<char>, Vec<char>)) -> LassoWord {
    LassoWord::new(FiniteWord::from(parts.0.clone()), FiniteWord::from(parts.1.clone())).unwrap()
}

fn restrict(w: &LassoWord, a: &Dpa) -> Option<LassoWord> {
    let ok = |x: &FiniteWord| x.letters().iter().all(|&c| a.alphabet().contains(c));
    (ok(w.prefix()) && ok(w.period())).then(|| w.clone())
}

/// Accepting iff the minimum priority on the cycle of `(state, offset)`
/// pairs reached while reading the period is even.
fn member_by_simulation(a: &Dpa, w: &LassoWord) -> bool {
    let (mut q, _) = a.run_finite(a.initial(), w.prefix()).unwrap();
    let period = w.period().letters();
    let mut seen = std::collections::HashMap::new();
    let mut trace = Vec::new();
    loop {
        if let Some(&start) = seen.get(&q) {
            let min: u8 = trace[start..].iter().copied().min().unwrap();
            return min.is_multiple_of(2);
        }
        seen.insert(q, trace.len());
        for &c in period {
            let t = a.step_char(q, c).unwrap();
            trace.push(t.priority);
            q = t.target;
        }
        // one entry per boundary state: collapse the period's priorities
        let n = trace.len();
        let m = trace[n - period.len()..].iter().copied().min().unwrap();
        trace.truncate(n - period.len());
        trace.push(m);
    }
}

fn fixture(i: usize) -> Dpa {
    fixtures::all()[i % 8].1.clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn normalize_is_idempotent(p in lasso_parts()) {
        let w = make(&p).normalize();
        prop_assert_eq!(w.normalize(), w);
    }

    #[test]
    fn normalize_preserves_the_word(p in lasso_parts()) {
        let w = make(&p);
        prop_assert_eq!(w.unroll(40), w.normalize().unroll(40));
        prop_assert!(w.normalize().period().len() <= w.period().len());
    }

    #[test]
    fn same_word_matches_unrolling(p in lasso_parts(), q in lasso_parts()) {
        let (x, y) = (make(&p), make(&q));
        // prefixes differ at most before max prefix + lcm of periods
        let n = 4 + 2 * x.period().len() * y.period().len() + 4;
        prop_assert_eq!(x.same_word(&y), x.unroll(n) == y.unroll(n));
    }

    #[test]
    fn parse_display_round_trip(p in lasso_parts()) {
        let abc = Alphabet::new("abc".chars()).unwrap();
        let w = make(&p);
        prop_assert_eq!(LassoWord::parse(&w.to_string(), &abc).unwrap(), w);
    }

    #[test]
    fn membership_matches_simulation(i in 0usize..8, p in lasso_parts()) {
        let a = fixture(i);
        if let Some(w) = restrict(&make(&p), &a) {
            prop_assert_eq!(a.member(&w).unwrap(), member_by_simulation(&a, &w));
        }
    }

    #[test]
    fn membership_ignores_representation(i in 0usize..8, p in lasso_parts()) {
        let a = fixture(i);
        if let Some(w) = restrict(&make(&p), &a) {
            let doubled = LassoWord::new(w.prefix().concat(w.period()), w.period().concat(w.period())).unwrap();
            prop_assert_eq!(a.member(&w).unwrap(), a.member(&doubled).unwrap());
        }
    }

    #[test]
    fn complement_negates(i in 0usize..8, p in lasso_parts()) {
        let a = fixture(i);
        if let Some(w) = restrict(&make(&p), &a) {
            prop_assert_ne!(a.member(&w).unwrap(), a.complement_shift().member(&w).unwrap());
        }
    }

    #[test]
    fn monoid_composition_is_concatenation(i in 0usize..8, u in word(4, 1), v in word(4, 1)) {
        let a = fixture(i);
        let (u, v) = (FiniteWord::from(u), FiniteWord::from(v));
        if u.check(a.alphabet()).is_ok() && v.check(a.alphabet()).is_ok() {
            let uv = MonoidElement::of_word(&a, &u.concat(&v)).unwrap();
            let composed = MonoidElement::of_word(&a, &u).unwrap().then(&MonoidElement::of_word(&a, &v).unwrap());
            prop_assert_eq!((uv.f, uv.g), (composed.f, composed.g));
        }
    }

    #[test]
    fn comparison_is_antisymmetric_in_form(i in 0usize..8, p in lasso_parts(), q in lasso_parts()) {
        let a = fixture(i);
        if let (Some(x), Some(y)) = (restrict(&make(&p), &a), restrict(&make(&q), &a)) {
            let there = compare_lassos(&a, &x, &y).unwrap();
            let back = compare_lassos(&a, &y, &x).unwrap();
            prop_assert_eq!(there.left_le_right(), back.right_le_left());
            prop_assert_eq!(there.right_le_left(), back.left_le_right());
            prop_assert_eq!(
                matches!(there, Preorder::Incomparable { .. }),
                matches!(back, Preorder::Incomparable { .. })
            );
            prop_assert_eq!(compare_lassos(&a, &x, &x).unwrap(), Preorder::Equivalent);
        }
    }

    #[test]
    fn arenas_round_trip(seed in any::<u64>(), n in 1usize..8, d in 1usize..4, f in 0.0f64..=1.0) {
        let ab = Alphabet::new("ab".chars()).unwrap();
        let params = ArenaParams { vertices: n, out_degree: d, eve_fraction: f };
        let arena = random_arena(params, &ab, seed).unwrap();
        prop_assert_eq!(Arena::parse(&arena.to_string()).unwrap(), arena);
    }
}

#[test]
fn inclusion_is_a_preorder_with_valid_witnesses() {
    for (name, a) in fixtures::all() {
        let n = a.num_states();
        let inc = |p, q| a.residual_included(p, q);
        for p in 0..n {
            assert!(inc(p, p).is_none(), "{name}");
            for q in 0..n {
                match inc(p, q) {
                    Some(w) => {
                        assert!(a.member_from(p, &w).unwrap(), "{name} {p} {q}");
                        assert!(!a.member_from(q, &w).unwrap(), "{name} {p} {q}");
                    }
                    None => {
                        for r in 0..n {
                            if inc(q, r).is_none() {
                                assert!(inc(p, r).is_none(), "{name} {p} {q} {r}");
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn fixtures_round_trip() {
    for (name, a) in fixtures::all() {
        let again = Dpa::parse(&a.to_string()).unwrap();
        assert_eq!(again.to_string(), a.to_string(), "{name}");
    }
}
