use proptest::prelude::*;
use twa::semiring::{boolean_projection, negate_weight, oplus, otimes};
use twa::{SemiringTag, Weight};

fn weight() -> impl Strategy<Value = Weight> {
    prop_oneof![
        1 => Just(Weight::Zero),
        6 => (-50i64..50, 1i64..7).prop_map(|(n, d)| Weight::from_ratio(n, d)),
    ]
}

fn tag() -> impl Strategy<Value = SemiringTag> {
    prop_oneof![Just(SemiringTag::MaxPlus), Just(SemiringTag::MinPlus)]
}

fn add(t: SemiringTag, x: &Weight, y: &Weight) -> Weight {
    oplus(x, y, t).unwrap()
}

fn mul(t: SemiringTag, x: &Weight, y: &Weight) -> Weight {
    otimes(x, y, t).unwrap()
}

proptest! {
    #[test]
    fn oplus_laws(t in tag(), x in weight(), y in weight(), z in weight()) {
        prop_assert_eq!(add(t, &add(t, &x, &y), &z), add(t, &x, &add(t, &y, &z)));
        prop_assert_eq!(add(t, &x, &y), add(t, &y, &x));
        prop_assert_eq!(add(t, &x, &x), x.clone());
        prop_assert_eq!(add(t, &x, &Weight::Zero), x);
    }

    #[test]
    fn otimes_laws(t in tag(), x in weight(), y in weight(), z in weight()) {
        prop_assert_eq!(mul(t, &mul(t, &x, &y), &z), mul(t, &x, &mul(t, &y, &z)));
        prop_assert_eq!(mul(t, &x, &add(t, &y, &z)), add(t, &mul(t, &x, &y), &mul(t, &x, &z)));
        prop_assert_eq!(mul(t, &add(t, &y, &z), &x), add(t, &mul(t, &y, &x), &mul(t, &z, &x)));
        prop_assert_eq!(mul(t, &x, &Weight::Zero), Weight::Zero);
        prop_assert_eq!(mul(t, &Weight::one(), &x), x);
    }

    #[test]
    fn negation_exchanges_max_and_min(x in weight(), y in weight()) {
        prop_assert_eq!(negate_weight(&negate_weight(&x)), x.clone());
        let lhs = negate_weight(&add(SemiringTag::MaxPlus, &x, &y));
        let rhs = add(SemiringTag::MinPlus, &negate_weight(&x), &negate_weight(&y));
        prop_assert_eq!(lhs, rhs);
        let lhs = negate_weight(&mul(SemiringTag::MaxPlus, &x, &y));
        prop_assert_eq!(lhs, mul(SemiringTag::MinPlus, &negate_weight(&x), &negate_weight(&y)));
    }

    #[test]
    fn projection_is_a_morphism(t in tag(), x in weight(), y in weight()) {
        let p = boolean_projection;
        prop_assert_eq!(p(&add(t, &x, &y)), add(t, &p(&x), &p(&y)));
        prop_assert_eq!(p(&mul(t, &x, &y)), mul(t, &p(&x), &p(&y)));
    }

    #[test]
    fn literals_round_trip(x in weight()) {
        if x.is_finite() {
            let back: Weight = x.to_string().parse().unwrap();
            prop_assert_eq!(back, x);
        }
    }
}
