mod common;

use proptest::prelude::*;
use twa::spectral::{mat_star, max_mean_cycle, star_times_vector};
use twa::{oracle, Error, Rational, SemiringTag, TropicalMatrix, Weight};

fn brute_rho(m: &TropicalMatrix) -> Weight {
    oracle::simple_circuits(m)
        .into_iter()
        .map(|(_, mean)| mean)
        .max()
        .map_or(Weight::Zero, Weight::Finite)
}

fn sample(seed: u64) -> TropicalMatrix {
    let mut rng = common::rng(seed);
    let n = 1 + (seed % 6) as usize;
    common::random_matrix(&mut rng, n, 0.5, -5, 5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn karp_matches_circuit_enumeration(seed in any::<u64>()) {
        let m = sample(seed);
        prop_assert_eq!(max_mean_cycle(&m).unwrap(), brute_rho(&m));
    }

    #[test]
    fn rescaling_shifts_rho(seed in any::<u64>(), num in -20i64..20, den in 1i64..5) {
        let m = sample(seed);
        let c = Rational::new(num.into(), den.into());
        let shifted = m.map_entries(|_, _, w| w.shifted(&c));
        let expected = max_mean_cycle(&m).unwrap().shifted(&c);
        prop_assert_eq!(max_mean_cycle(&shifted).unwrap(), expected);
    }

    #[test]
    fn star_exists_iff_rho_nonpositive(seed in any::<u64>()) {
        let m = sample(seed);
        let rho = max_mean_cycle(&m).unwrap();
        match mat_star(&m) {
            Ok(star) => {
                prop_assert!(!rho.is_positive());
                let n = m.dim();
                let id = TropicalMatrix::identity(SemiringTag::MaxPlus, n);
                let mut sum = id.clone();
                for k in 1..n.max(1) {
                    sum = sum.oplus(&m.pow(k)).unwrap();
                }
                prop_assert_eq!(&star, &sum);
                prop_assert_eq!(m.mat_mul(&star).unwrap().oplus(&id).unwrap(), star.clone());
                let v: Vec<Weight> = (0..n).map(|i| Weight::from_int(i as i64 - 2)).collect();
                prop_assert_eq!(star_times_vector(&m, &v).unwrap(), star.mul_vec(&v));
            }
            Err(Error::PositiveCycle) => prop_assert!(rho.is_positive()),
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }
}

#[test]
fn simple_circuits_of_small_matrix() {
    let m = TropicalMatrix::from_dense(
        SemiringTag::MaxPlus,
        vec![
            vec![Weight::from_int(-1), Weight::from_int(2)],
            vec![Weight::from_int(0), Weight::Zero],
        ],
    )
    .unwrap();
    let mut means: Vec<Rational> = oracle::simple_circuits(&m).into_iter().map(|(_, x)| x).collect();
    means.sort();
    assert_eq!(means, vec![Rational::from_integer((-1).into()), Rational::from_integer(1.into())]);
}
