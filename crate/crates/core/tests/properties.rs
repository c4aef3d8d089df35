mod common;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use onematrix::characters::{character, power_to_schur, schur_to_power};
use onematrix::partitions::enumerate_partitions;
use onematrix::polyalg::{
    interpolate, rising_product, Coeff, EvalVec, Series, SeriesTermJson, Space,
};
use onematrix::wick::genus_census;
use onematrix::{Graded, NPoly, Partition};
use proptest::prelude::*;

fn npoly() -> impl Strategy<Value = NPoly> {
    prop::collection::vec(-20i64..20, 0..6).prop_map(|c| NPoly::from_ascending(&c))
}

fn partition(max: usize) -> impl Strategy<Value = Partition> {
    (1..=max).prop_flat_map(|n| {
        let all = enumerate_partitions(n);
        (0..all.len()).prop_map(move |i| all[i].clone())
    })
}

fn series2(cap: i64) -> impl Strategy<Value = Series<NPoly>> {
    prop::collection::vec(((0i32..4, 0i32..4), -5i64..5), 0..8).prop_map(move |terms| {
        let mut s = Series::zero(Space::total_degree(2, cap));
        for ((a, b), c) in terms {
            s.add_term(vec![a, b], NPoly::from_ascending(&[c, 1]));
        }
        s
    })
}

fn sign_of(mu: &Partition) -> i64 {
    if (mu.weight() - mu.len()).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polynomial_ring_axioms(a in npoly(), b in npoly(), c in npoly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &NPoly::one(), a.clone());
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in npoly(), b in npoly(), x in -10i64..10) {
        prop_assert_eq!((&a * &b).eval_int(x), a.eval_int(x) * b.eval_int(x));
        prop_assert_eq!((&a + &b).eval_int(x), a.eval_int(x) + b.eval_int(x));
        prop_assert_eq!(a.shift(3).eval_int(x), a.eval_int(x + 3));
    }

    #[test]
    fn shifts_compose(a in npoly(), s in -5i64..5, t in -5i64..5) {
        prop_assert_eq!(a.shift(s).shift(t), a.shift(s + t));
    }

    #[test]
    fn rising_product_identities(k in -6i64..4, len in 1i64..6) {
        let l = k + len;
        // [N-1]_k^l = [N]_{k-1}^{l-1}
        prop_assert_eq!(rising_product(k, l).unwrap().shift(-1), rising_product(k - 1, l - 1).unwrap());
        // [N]_k^l - [N]_{k-1}^{l-1} = (l-k+1) [N]_k^{l-1}
        let lhs = &rising_product(k, l).unwrap() - &rising_product(k - 1, l - 1).unwrap();
        let rhs = rising_product(k, l - 1).unwrap().scale(&BigRational::from_integer(BigInt::from(l - k + 1)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn interpolation_recovers_polynomials(a in npoly()) {
        let pts: Vec<(i64, BigRational)> = (0..7).map(|x| (x, a.eval_int(x))).collect();
        prop_assert_eq!(interpolate(&pts), a);
    }

    #[test]
    fn sampled_arithmetic_matches(a in npoly(), b in npoly()) {
        let points: Vec<i64> = (0..12).collect();
        let (x, y) = (EvalVec::sample(&a, &points).unwrap(), EvalVec::sample(&b, &points).unwrap());
        let mut sum = x.clone();
        sum.add_to(&y);
        prop_assert_eq!(sum.interpolate(&points).unwrap(), &a + &b);
        prop_assert_eq!(x.times(&y).interpolate(&points).unwrap(), &a * &b);
        prop_assert_eq!(x.negated().interpolate(&points).unwrap(), -&a);
    }

    #[test]
    fn series_products(a in series2(6), b in series2(6), c in series2(6)) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        let sum = b.add(&c).unwrap();
        prop_assert_eq!(a.mul(&sum).unwrap(), a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap());
    }

    #[test]
    fn series_json_round_trip(a in series2(6), gs in -3i64..3) {
        let text = serde_json::to_string(&a.to_json_terms(gs)).unwrap();
        let terms: Vec<SeriesTermJson> = serde_json::from_str(&text).unwrap();
        prop_assert!(terms.iter().all(|t| t.gs == gs));
        prop_assert_eq!(Series::from_json_terms(a.space().clone(), &terms).unwrap(), a);
    }

    #[test]
    fn polynomial_json_round_trip(a in npoly(), gs in -4i64..4) {
        let text = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<NPoly>(&text).unwrap(), a.clone());
        let g = Graded::new(a, gs);
        let text = serde_json::to_string(&g).unwrap();
        prop_assert_eq!(serde_json::from_str::<Graded>(&text).unwrap(), g);
    }

    #[test]
    fn partition_round_trips(l in partition(12)) {
        prop_assert_eq!(l.to_string().parse::<Partition>().unwrap(), l.clone());
        let text = serde_json::to_string(&l).unwrap();
        prop_assert_eq!(serde_json::from_str::<Partition>(&text).unwrap(), l.clone());
        prop_assert_eq!(l.conjugate().conjugate(), l.clone());
        prop_assert_eq!(l.conjugate().weight(), l.weight());
    }

    #[test]
    fn conjugation_twists_characters_by_sign(l in partition(10), seed in 0usize..1000) {
        let classes = enumerate_partitions(l.weight());
        let mu = &classes[seed % classes.len()];
        prop_assert_eq!(character(&l.conjugate(), mu).unwrap(), sign_of(mu) * character(&l, mu).unwrap());
    }

    #[test]
    fn basis_changes_are_inverse(l in partition(9)) {
        let mut back: BTreeMap<Partition, BigRational> = BTreeMap::new();
        for (mu, c) in schur_to_power(&l).unwrap() {
            for (nu, d) in power_to_schur(&mu).unwrap() {
                *back.entry(nu).or_insert_with(|| BigRational::from_integer(0.into())) +=
                    &c * BigRational::from_integer(d.into());
            }
        }
        back.retain(|_, v| *v != BigRational::from_integer(0.into()));
        let want: BTreeMap<Partition, BigRational> =
            [(l.clone(), BigRational::from_integer(1.into()))].into_iter().collect();
        prop_assert_eq!(back, want);
    }

    #[test]
    fn census_json_round_trip(l in partition(8)) {
        prop_assume!(l.weight() % 2 == 0);
        let c = genus_census(&l).unwrap();
        let text = serde_json::to_string(&c).unwrap();
        prop_assert_eq!(serde_json::from_str::<onematrix::wick::GluingCensus>(&text).unwrap(), c);
    }
}
