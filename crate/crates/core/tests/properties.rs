use parity_lab::arith::Place;
use parity_lab::curve::{self, TwoTorsionModel, WeierstrassModel};
use parity_lab::descent2;
use parity_lab::fields::{self, Behavior, LocalCondition, Sign};
use parity_lab::larsen;
use parity_lab::rootnumber;
use proptest::prelude::*;

fn small_model() -> impl Strategy<Value = WeierstrassModel> {
    prop::array::uniform5(-10i128..=10).prop_filter_map("singular", |a| {
        WeierstrassModel::new(a[0], a[1], a[2], a[3], a[4]).ok()
    })
}

fn local_summary(e: &WeierstrassModel) -> Vec<(u128, String, u32, u32, u32)> {
    curve::local_data(e)
        .unwrap()
        .into_iter()
        .map(|d| {
            (
                d.prime,
                d.kodaira.to_string(),
                d.tamagawa,
                d.conductor_exponent,
                d.minimal_disc_valuation,
            )
        })
        .collect()
}

fn condition() -> impl Strategy<Value = LocalCondition> {
    let primes = prop::sample::select(vec![2u128, 3, 5, 7, 11, 13]);
    let behavior = prop::sample::select(vec![Behavior::Split, Behavior::Nonsplit]);
    prop_oneof![
        (primes, behavior).prop_map(|(p, b)| LocalCondition::new(Place::Finite(p), b).unwrap()),
        prop::sample::select(vec![Behavior::Split, Behavior::Complex])
            .prop_map(|b| LocalCondition::new(Place::Infinite, b).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tate_is_invariant_under_change_of_model(
        e in small_model(),
        r in -4i128..=4,
        s in -2i128..=2,
        t in -4i128..=4,
        u in prop::sample::select(vec![1i128, 2, 3, 5]),
    ) {
        let other = e.translate(r, s, t).scale_up(u);
        prop_assert_eq!(local_summary(&e), local_summary(&other));
        prop_assert_eq!(curve::conductor(&e).unwrap(), curve::conductor(&other).unwrap());
    }

    #[test]
    fn root_number_is_a_curve_invariant(e in small_model(), r in -4i128..=4, t in -4i128..=4) {
        let other = e.translate(r, 0, t).scale_up(2);
        match (rootnumber::global_root_number(&e), rootnumber::global_root_number(&other)) {
            (Ok(a), Ok(b)) => prop_assert_eq!(a.value, b.value),
            (Err(a), Err(b)) => prop_assert!(a.is_unsupported() && b.is_unsupported()),
            (a, b) => prop_assert!(false, "{:?} vs {:?}", a, b),
        }
    }

    #[test]
    fn twist_is_isomorphic_over_the_field(
        e in small_model(),
        m in prop::sample::select(vec![-1i128, -2, -3, -7, 2, 5, -11, 13]),
    ) {
        let twist = e.quadratic_twist(m).unwrap();
        let a = rootnumber::root_number_over_quadratic(&e, m);
        let b = rootnumber::root_number_over_quadratic(&twist, m);
        if let (Ok(a), Ok(b)) = (a, b) {
            prop_assert_eq!(a.value, b.value);
        }
    }

    #[test]
    fn cassels_parity_matches_root_number(a in -30i128..=30, b in -30i128..=30) {
        prop_assume!(TwoTorsionModel::new(a, b).is_ok());
        let t = TwoTorsionModel::new(a, b).unwrap();
        if let Ok(w) = rootnumber::global_root_number(&t.to_weierstrass()) {
            prop_assert_eq!(descent2::cassels_parity(&t).unwrap().value, w.value);
        }
        for v in descent2::cassels_support(&t).unwrap() {
            let image = descent2::delta_image(&t, v).unwrap();
            prop_assert!(image.is_subgroup());
            prop_assert!(image.contains(t.isogenous_b()));
        }
    }

    #[test]
    fn sieve_ignores_condition_order(
        conditions in prop::collection::vec(condition(), 1..5),
        seed in any::<u64>(),
    ) {
        let mut shuffled = conditions.clone();
        let n = shuffled.len();
        for i in (1..n).rev() {
            shuffled.swap(i, (seed.rotate_left(i as u32) as usize) % (i + 1));
        }
        let found = fields::sieve(&conditions, 300);
        prop_assert_eq!(&found, &fields::sieve(&shuffled, 300));
        for m in &found {
            prop_assert!(conditions.iter().all(|c| c.holds(*m)));
        }
        // nothing smaller was skipped
        let first = found.first().copied();
        let smallest = fields::candidates(300).find(|&m| conditions.iter().all(|c| c.holds(m)));
        prop_assert_eq!(first, smallest);
    }

    #[test]
    fn split_all_bad_splits_every_bad_prime(e in small_model(), negative in any::<bool>()) {
        let sign = if negative { Sign::Negative } else { Sign::Positive };
        if let Ok(field) = fields::find_split_all_bad(&e, sign, 20_000) {
            prop_assert_eq!(field.m < 0, negative);
            for d in curve::local_data(&e).unwrap() {
                prop_assert!(field.splitting(Place::Finite(d.prime)).is_split());
            }
        }
    }
}

#[test]
fn selmer_bound_grows_with_r() {
    for p in [3u128, 5, 7, 11] {
        let bounds: Vec<u128> = (1..=4)
            .map(|r| larsen::selmer_rank_lower_bound(p, r).unwrap())
            .collect();
        assert!(bounds.windows(2).all(|w| w[0] < w[1]), "{p}: {bounds:?}");
    }
}
