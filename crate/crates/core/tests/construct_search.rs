use std::collections::BTreeSet;

use apunion_core::construct::{
    lowerg_sets, mult_table_card, mult_table_family, prop_three_sets, ruzsa_triple_family,
    sidon_set, sumset, u2_value, u2_witness, MULT_TABLE_BUDGET,
};
use apunion_core::progression::union_census;
use apunion_core::search::{
    u_exact_in_box, u_upper_heuristic, union_lower_bound, SearchBox,
};
use num_bigint::BigInt;
use proptest::prelude::*;

#[test]
fn sidon_differences_distinct() {
    let s = sidon_set(30);
    let mut diffs = BTreeSet::new();
    for (i, a) in s.iter().enumerate() {
        for b in &s[i + 1..] {
            assert!(diffs.insert(b - a));
        }
    }
}

#[test]
fn u2_witness_meets_formula() {
    for n in 1..=200 {
        let w = u2_witness(n).unwrap();
        assert_eq!(w.union_size, u2_value(n), "n = {n}");
        assert_eq!(w.family.len() as u64, n);
        assert!(w.pairs_below < n && n <= w.pairs_at);
    }
}

#[test]
fn box_search_matches_u2_small() {
    for n in 1..=7u64 {
        let m = u2_value(n);
        let sbox = SearchBox::new(2 * m, 2 * m.max(n), n as usize, 2).unwrap();
        assert_eq!(u_exact_in_box(&sbox, 1 << 26).unwrap().value, m, "n = {n}");
    }
}

#[test]
fn box_search_monotone_and_below_heuristic() {
    for l in 2..=4u64 {
        let mut prev = 0;
        for n in 1..=4usize {
            let sbox = SearchBox::new(8, 8, n, l).unwrap();
            let r = u_exact_in_box(&sbox, 1 << 26).unwrap();
            assert!(r.value >= prev && r.value >= union_lower_bound(n as u64, l));
            assert_eq!(union_census(&r.witness).cardinality(), r.value);
            prev = r.value;
            let h = u_upper_heuristic(n, l, 3000, 11).unwrap();
            // The heuristic's domain can exceed this box; only the floor applies.
            assert!(h.cardinality >= union_lower_bound(n as u64, l));
        }
    }
}

#[test]
fn heuristic_never_beats_box_when_box_contains_its_domain() {
    for n in 1..=3usize {
        for l in 2..=3u64 {
            let span = 2 * n as u64;
            let exact = u_exact_in_box(&SearchBox::new(span, span, n, l).unwrap(), 1 << 26).unwrap();
            let h = u_upper_heuristic(n, l, 2000, 5).unwrap();
            assert!(h.cardinality >= exact.value, "n = {n}, l = {l}");
        }
    }
}

#[test]
fn mult_table_matches_union() {
    for n in 1..=60 {
        let f = mult_table_family(n).unwrap();
        let products: BTreeSet<u64> = (1..=n).flat_map(|i| (1..=n).map(move |j| i * j)).collect();
        assert_eq!(union_census(&f).cardinality(), products.len() as u64);
        assert_eq!(mult_table_card(n, MULT_TABLE_BUDGET).unwrap(), products.len() as u64);
    }
}

#[test]
fn construction_grid() {
    for m in 1..=8 {
        for n in 1..=8 {
            for d in 1..=8 {
                let out = lowerg_sets(m, n, d).unwrap();
                if m <= 4 * n * d && n <= 4 * m * d && d <= 4 * m * n {
                    assert_eq!(out.verified, Some(true), "lowerg({m},{n},{d})");
                } else {
                    assert_eq!(out.verified, None);
                }
                for case in 1..=3 {
                    if let Ok(o) = prop_three_sets(case, m, n, d) {
                        assert_eq!(o.verified, Some(true), "case {case} ({m},{n},{d})");
                    }
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn ruzsa_family_invariants(a in prop::collection::btree_set(-500i64..500, 2..25)) {
        let a: Vec<BigInt> = a.into_iter().map(BigInt::from).collect();
        let f = ruzsa_triple_family(&a).unwrap();
        let diffs: BTreeSet<BigInt> = a.iter().enumerate()
            .flat_map(|(i, x)| a[i + 1..].iter().map(move |y| y - x))
            .collect();
        prop_assert_eq!(f.len(), diffs.len());
        let sums = sumset(&a);
        for p in f.members() {
            prop_assert_eq!(p.length(), 3);
            for x in p.elements() {
                prop_assert!(x.is_integer() && sums.contains(&x.to_integer()));
            }
        }
    }
}
