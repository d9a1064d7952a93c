mod common;

use proptest::prelude::*;
use twa::semiring::{negate_weight, otimes};
use twa::{oracle, SemiringTag, WeightedAutomaton};

fn tag(max: bool) -> SemiringTag {
    if max {
        SemiringTag::MaxPlus
    } else {
        SemiringTag::MinPlus
    }
}

fn sample(seed: u64, max: bool) -> WeightedAutomaton {
    let mut rng = common::rng(seed);
    let n = 1 + (seed % 4) as usize;
    let letters = 1 + (seed / 4 % 2) as usize;
    common::random_automaton(&mut rng, tag(max), n, letters, 0.4, -4, 4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn eval_matches_path_enumeration(seed in any::<u64>(), max in any::<bool>()) {
        let a = sample(seed, max);
        for w in common::words(a.alphabet(), 6) {
            prop_assert_eq!(a.eval(&w).unwrap(), oracle::eval_bruteforce(&a, &w).unwrap());
        }
    }

    #[test]
    fn trim_preserves_series(seed in any::<u64>(), max in any::<bool>()) {
        let a = sample(seed, max);
        let t = a.trim();
        prop_assert!(t.is_trim());
        prop_assert_eq!(t.trim(), t.clone());
        prop_assert!(oracle::equal_upto(&a, &t, 6).unwrap().holds());
    }

    #[test]
    fn support_accepts_exactly_nonzero_words(seed in any::<u64>(), max in any::<bool>()) {
        let a = sample(seed, max);
        let s = a.support();
        for w in common::words(a.alphabet(), 6) {
            prop_assert_eq!(s.accepts(&w).unwrap(), a.eval(&w).unwrap().is_finite());
        }
    }

    #[test]
    fn hadamard_is_pointwise_product(s1 in any::<u64>(), s2 in any::<u64>(), max in any::<bool>()) {
        let mut rng = common::rng(s1);
        let a = common::random_automaton(&mut rng, tag(max), 3, 2, 0.4, -3, 3);
        let mut rng = common::rng(s2);
        let b = common::random_automaton(&mut rng, tag(max), 2, 2, 0.5, -3, 3);
        let h = a.hadamard(&b).unwrap();
        prop_assert_eq!(h.num_states(), 6);
        for w in common::words(a.alphabet(), 5) {
            let expected = otimes(&a.eval(&w).unwrap(), &b.eval(&w).unwrap(), tag(max)).unwrap();
            prop_assert_eq!(h.eval(&w).unwrap(), expected);
        }
    }

    #[test]
    fn negate_series_is_pointwise(seed in any::<u64>(), max in any::<bool>()) {
        let a = sample(seed, max);
        let n = a.negate_series().unwrap();
        prop_assert_eq!(n.tag(), tag(!max));
        prop_assert_eq!(n.negate_series().unwrap(), a.clone());
        for w in common::words(a.alphabet(), 6) {
            prop_assert_eq!(n.eval(&w).unwrap(), negate_weight(&a.eval(&w).unwrap()));
        }
    }
}

#[test]
fn unambiguous_series_ignore_the_semiring() {
    let a = twa::corpus::pair_one_valued();
    let u = twa::disambiguation::disambiguate(&a, &twa::Limits::default()).unwrap();
    let as_min = u.retag(SemiringTag::MinPlus).unwrap();
    assert!(twa::decisions::decide_series_equal(&u, &as_min).unwrap().holds());
}

#[test]
fn enum_paths_examples() {
    let a = twa::corpus::pair_max();
    let paths = oracle::enum_paths(&a, &"a".into()).unwrap();
    assert_eq!(paths.len(), 1);
    assert_eq!(paths[0].0, vec![0, 1]);
    assert_eq!(paths[0].1, twa::Weight::from_int(2));
    let eps = oracle::enum_paths(&a, &twa::Word::empty()).unwrap();
    assert_eq!(eps, vec![(vec![0], twa::Weight::from_int(0))]);
}
