use std::collections::BTreeSet;

use apunion_core::arith::{PosRational, Rational};
use apunion_core::gcd_sum::gcd_sum;
use apunion_core::progression::{
    dawson_sankoff_bound, gcd_union_bound, intersect, intersection_size_bound_check,
    lemma_intersection_check, union_census, w_count_family, APFamily, ArithmeticProgression,
};
use num_bigint::BigInt;
use proptest::prelude::*;

fn rational_ap() -> impl Strategy<Value = ArithmeticProgression> {
    (-30i64..30, 1u64..6, 1u64..12, 1u64..6, 1u64..25).prop_map(|(sn, sd, dn, dd, len)| {
        ArithmeticProgression::new(
            Rational::new(BigInt::from(sn), BigInt::from(sd)),
            PosRational::from_ratio(dn, dd).unwrap(),
            len,
        )
        .unwrap()
    })
}

fn integer_family() -> impl Strategy<Value = APFamily> {
    (1u64..20, prop::collection::btree_map(1u64..25, 0i64..40, 1..8)).prop_map(|(len, m)| {
        APFamily::new(
            m.into_iter().map(|(d, s)| ArithmeticProgression::integer(s, d, len).unwrap()).collect(),
        )
        .unwrap()
    })
}

fn elements(p: &ArithmeticProgression) -> BTreeSet<Rational> {
    p.elements().into_iter().collect()
}

proptest! {
    #[test]
    fn intersect_matches_element_sets(p in rational_ap(), q in rational_ap()) {
        let oracle: BTreeSet<Rational> = elements(&p).intersection(&elements(&q)).cloned().collect();
        let got = intersect(&p, &q).map(|r| elements(&r)).unwrap_or_default();
        prop_assert_eq!(got, oracle);
    }

    #[test]
    fn lemma_and_size_bound(a1 in 0i64..60, b1 in 1u64..30, a2 in 0i64..60, b2 in 1u64..30, len in 2u64..40) {
        let p = ArithmeticProgression::integer(a1, b1, len).unwrap();
        let q = ArithmeticProgression::integer(a2, b2, len).unwrap();
        prop_assert!(lemma_intersection_check(&p, &q).unwrap().holds);
        prop_assert!(intersection_size_bound_check(&p, &q).unwrap().holds);
    }

    #[test]
    fn union_census_identities(f in integer_family()) {
        let census = union_census(&f);
        let oracle: BTreeSet<Rational> = f.members().iter().flat_map(elements).collect();
        prop_assert_eq!(census.cardinality(), oracle.len() as u64);
        prop_assert_eq!(census.total_multiplicity(), f.total_length());
        let w: u64 = census.multiplicity.values().map(|&a| a * (a - 1) / 2).sum();
        prop_assert_eq!(w_count_family(&f), w);
        prop_assert_eq!(census.pair_incidences(), w);
    }

    #[test]
    fn union_census_rational_family(ps in prop::collection::vec(rational_ap(), 1..6)) {
        let mut seen = BTreeSet::new();
        let ps: Vec<_> = ps.into_iter().filter(|p| seen.insert(p.diff().clone())).collect();
        let f = APFamily::new(ps).unwrap();
        let census = union_census(&f);
        let mut oracle = std::collections::BTreeMap::new();
        for p in f.members() {
            for x in p.elements() {
                *oracle.entry(x).or_insert(0u64) += 1;
            }
        }
        prop_assert_eq!(census.multiplicity, oracle);
    }

    #[test]
    fn union_lower_bounds_hold(f in integer_family()) {
        let u = Rational::from_integer(BigInt::from(union_census(&f).cardinality()));
        prop_assert!(u >= dawson_sankoff_bound(&f).unwrap());
        prop_assert!(u >= gcd_union_bound(&f).unwrap());
        let diffs: Vec<u64> = f.integer_diffs().unwrap().iter().map(|d| u64::try_from(d).unwrap()).collect();
        prop_assert!(gcd_sum(&diffs).is_ok());
    }
}

#[test]
fn family_rejects_duplicate_differences() {
    let p = ArithmeticProgression::integer(0, 3, 4).unwrap();
    let q = ArithmeticProgression::integer(5, 3, 4).unwrap();
    assert!(APFamily::new(vec![p, q]).is_err());
}
