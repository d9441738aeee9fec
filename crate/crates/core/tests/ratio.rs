use std::collections::BTreeSet;

use apunion_core::arith::{ratio_of, PosRational};
use apunion_core::ratio::{
    cycle_census, f_count, g_census, g_easy_bounds, in_rd, quotient_degree, rd_members,
    rd_size, reciprocal_transform, w_chain_check, w_triple_count, FiniteSet, RatioBound,
};
use proptest::prelude::*;

fn rb(d: u32) -> RatioBound {
    RatioBound::new(d).unwrap()
}

fn in_rd_naive(r: &PosRational, d: u32) -> bool {
    (1..=d as u64).any(|k| (1..=d as u64).any(|l| PosRational::from_ratio(k, l).unwrap() == *r))
}

fn integer_set() -> impl Strategy<Value = FiniteSet> {
    prop::collection::btree_set(1u64..200, 0..25)
        .prop_map(|s| FiniteSet::from_integers(s).unwrap())
}

fn rational_set() -> impl Strategy<Value = FiniteSet> {
    prop::collection::vec((1u64..60, 1u64..8), 0..20).prop_map(|v| {
        FiniteSet::new(v.into_iter().map(|(n, d)| PosRational::from_ratio(n, d).unwrap()))
    })
}

fn g_naive(set: &FiniteSet, d: u32) -> u64 {
    let e = set.elements();
    let mut c = 0;
    for i in 0..e.len() {
        for j in i + 1..e.len() {
            if in_rd_naive(&ratio_of(&e[i], &e[j]), d) {
                c += 1;
            }
        }
    }
    c
}

/// All ordered tuples of distinct indices, filtered by the cyclic ratio test.
fn cycle_naive(set: &FiniteSet, d: u32, len: usize) -> u64 {
    fn rec(e: &[PosRational], d: u32, len: usize, tuple: &mut Vec<usize>, used: &mut [bool]) -> u64 {
        if tuple.len() == len {
            let ok = (0..len).all(|i| in_rd_naive(&ratio_of(&e[tuple[i]], &e[tuple[(i + 1) % len]]), d));
            return ok as u64;
        }
        let mut c = 0;
        for v in 0..e.len() {
            if !used[v] {
                used[v] = true;
                tuple.push(v);
                c += rec(e, d, len, tuple, used);
                tuple.pop();
                used[v] = false;
            }
        }
        c
    }
    let e = set.elements();
    rec(e, d, len, &mut Vec::new(), &mut vec![false; e.len()])
}

#[test]
fn rd_members_match_naive() {
    for d in 1..=12 {
        let members = rd_members(rb(d));
        let naive: BTreeSet<PosRational> = (1..=d as u64)
            .flat_map(|k| (1..=d as u64).map(move |l| PosRational::from_ratio(k, l).unwrap()))
            .collect();
        assert_eq!(members.elements(), naive.into_iter().collect::<Vec<_>>().as_slice());
        assert_eq!(rd_size(rb(d)), members.len() as u64);
    }
}

#[test]
fn cycles_match_permutation_oracle_on_small_subsets() {
    for mask in 0u32..(1 << 7) {
        let set = FiniteSet::from_integers((1..=7).filter(|i| mask >> (i - 1) & 1 == 1)).unwrap();
        for d in 1..=3 {
            for len in [4, 6] {
                assert_eq!(cycle_census(&set, rb(d), len).unwrap(), cycle_naive(&set, d, len));
            }
        }
    }
}

#[test]
fn cycle_census_rejects_bad_lengths() {
    let s = FiniteSet::from_integers([1, 2, 3]).unwrap();
    assert!(cycle_census(&s, rb(2), 3).is_err());
    assert!(cycle_census(&s, rb(2), 2).is_err());
}

proptest! {
    #[test]
    fn in_rd_matches_naive(n in 1u64..40, m in 1u64..40, d in 1u32..15) {
        let r = PosRational::from_ratio(n, m).unwrap();
        prop_assert_eq!(in_rd(&r, rb(d)), in_rd_naive(&r, d));
    }

    #[test]
    fn g_census_matches_naive_and_bounds(set in rational_set(), d in 1u32..8) {
        let g = g_census(&set, rb(d));
        prop_assert_eq!(g, g_naive(&set, d));
        let (easy, square) = g_easy_bounds(set.len(), rb(d));
        prop_assert!(g <= easy);
        prop_assert!(set.is_empty() || g < square);
    }

    #[test]
    fn g_census_monotone_in_d(set in integer_set(), d in 1u32..10) {
        prop_assert!(g_census(&set, rb(d)) <= g_census(&set, rb(d + 1)));
    }

    #[test]
    fn cycle_counts_divisible(set in prop::collection::btree_set(1u64..40, 0..9), d in 1u32..4) {
        let set = FiniteSet::from_integers(set).unwrap();
        for len in [4usize, 6] {
            let c = cycle_census(&set, rb(d), len).unwrap();
            prop_assert_eq!(c % (2 * len as u64), 0);
        }
    }

    #[test]
    fn f_count_reciprocal_symmetry(a in rational_set(), b in rational_set(), d in 1u32..7) {
        // a/b = k  <=>  (1/b)/(1/a) = k
        let f = f_count(&a, &b, rb(d));
        prop_assert_eq!(f, f_count(&reciprocal_transform(&b), &reciprocal_transform(&a), rb(d)));
        let naive = a.iter().flat_map(|x| b.iter().map(move |y| ratio_of(x, y)))
            .filter(|r| r.is_integer() && *r.numer() <= d.into())
            .count() as u64;
        prop_assert_eq!(f, naive);
    }

    #[test]
    fn w_matches_triples_and_degrees(a in integer_set(), b in rational_set(), d in 1u32..7) {
        let w = w_triple_count(&a, &b, rb(d));
        let degree_form: u64 = a.iter().map(|x| {
            let k = quotient_degree(x, &b, rb(d));
            k * k.saturating_sub(1) / 2
        }).sum();
        prop_assert_eq!(w, degree_form);
        let mut brute = 0u64;
        let ok = |x: &PosRational, y: &PosRational| {
            let r = ratio_of(x, y);
            r.is_integer() && *r.numer() <= d.into()
        };
        for x in a.iter() {
            for (i, y1) in b.iter().enumerate() {
                for y2 in &b.elements()[i + 1..] {
                    brute += (ok(x, y1) && ok(x, y2)) as u64;
                }
            }
        }
        prop_assert_eq!(w, brute);
        prop_assert!(w_chain_check(&a, &b, rb(d)).holds);
    }
}
