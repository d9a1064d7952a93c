mod common;

use proptest::prelude::*;
use twa::decisions::decide_series_equal;
use twa::disambiguation::{covering, disambiguate, extract_one_valued, pair_product, unambiguous_from_pair};
use twa::{oracle, Limits};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn blow_ups_are_equal_and_one_valued(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let (a, b) = common::random_ambiguous_pair(&mut rng, 2);
        prop_assert!(oracle::one_valued_upto(&a, 6).unwrap().holds());
        prop_assert!(oracle::equal_upto(&a, &b, 6).unwrap().holds());
        prop_assert!(decide_series_equal(&a, &b).unwrap().holds());
    }

    #[test]
    fn pair_product_coordinates(s1 in any::<u64>(), s2 in any::<u64>()) {
        let mut rng = common::rng(s1);
        let a = common::random_automaton(&mut rng, twa::SemiringTag::MaxPlus, 3, 2, 0.4, -3, 3);
        let mut rng = common::rng(s2);
        let b = common::random_automaton(&mut rng, twa::SemiringTag::MaxPlus, 2, 2, 0.5, -3, 3);
        let p = pair_product(&a, &b).unwrap();
        let h = a.hadamard(&b).unwrap();
        for w in common::words(a.alphabet(), 6) {
            let x = p.eval(&w).unwrap();
            prop_assert_eq!(x.second(), &h.eval(&w).unwrap());
            if x.second().is_finite() {
                prop_assert_eq!(x.first(), &a.eval(&w).unwrap());
            }
        }
    }

    #[test]
    fn one_valued_extraction(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let (a, b) = common::random_ambiguous_pair(&mut rng, 2);
        let out = extract_one_valued(&a, &b, true).unwrap();
        prop_assert!(out.num_states() <= a.num_states() * b.num_states());
        prop_assert!(oracle::one_valued_upto(&out, 8).unwrap().holds());
        prop_assert!(oracle::equal_upto(&out, &a, 8).unwrap().holds());
    }

    #[test]
    fn covering_preserves_series(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let a = common::random_automaton(&mut rng, twa::SemiringTag::MinPlus, 3, 2, 0.4, -3, 3);
        let c = covering(&a, 1000).unwrap();
        prop_assert!(oracle::equal_upto(&c.automaton, &a, 6).unwrap().holds());
    }

    #[test]
    fn disambiguation_of_one_valued_input(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let (a, _) = common::random_ambiguous_pair(&mut rng, 2);
        let u = disambiguate(&a, &Limits::default()).unwrap();
        prop_assert!(oracle::max_ambiguity_upto(&u, 8).unwrap().0 <= 1);
        prop_assert!(oracle::equal_upto(&u, &a, 8).unwrap().holds());
    }

    #[test]
    fn full_pipeline(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let (a, b) = common::random_ambiguous_pair(&mut rng, 2);
        let u = unambiguous_from_pair(&a, &b, true, &Limits::default()).unwrap();
        prop_assert!(oracle::max_ambiguity_upto(&u, 8).unwrap().0 <= 1);
        prop_assert!(oracle::equal_upto(&u, &b, 8).unwrap().holds());
    }
}
