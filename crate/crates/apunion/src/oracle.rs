//! Brute-force references for the audit suites. Each one recomputes a
//! library quantity from its definition, sharing no code with the fast path.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use apunion_core::arith::{gcd_u64, PosRational, Rational};
use apunion_core::progression::ArithmeticProgression;
use num_bigint::BigInt;
use num_traits::One;

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// `x / y in R_d` for positive integers.
pub fn int_ratio_in_rd(x: u64, y: u64, d: u64) -> bool {
    let g = gcd(x, y);
    x / g <= d && y / g <= d
}

/// `r in R_d` by trying every `k / l`.
pub fn in_rd(r: &Rational, d: u64) -> bool {
    (1..=d).any(|k| (1..=d).any(|l| Rational::new(BigInt::from(k), BigInt::from(l)) == *r))
}

pub fn rd_size(d: u64) -> u64 {
    let set: BTreeSet<(u64, u64)> = (1..=d)
        .flat_map(|k| (1..=d).map(move |l| (k / gcd(k, l), l / gcd(k, l))))
        .collect();
    set.len() as u64
}

pub fn ap_elements(p: &ArithmeticProgression) -> BTreeSet<Rational> {
    let mut x = p.start().clone();
    let mut out = BTreeSet::new();
    for _ in 0..p.length() {
        out.insert(x.clone());
        x += p.diff().as_rational();
    }
    out
}

pub fn int_ap(a: i64, b: i64, len: u64) -> HashSet<i64> {
    (0..len as i64).map(|j| a + j * b).collect()
}

/// Ordered `len`-tuples of distinct vertices, all enumerated, then filtered
/// by adjacency of cyclically consecutive entries.
pub fn cycle_tuples(adj: &[Vec<bool>], len: usize) -> u64 {
    fn rec(adj: &[Vec<bool>], len: usize, t: &mut Vec<usize>, used: &mut [bool]) -> u64 {
        if t.len() == len {
            return (0..len).all(|i| adj[t[i]][t[(i + 1) % len]]) as u64;
        }
        let mut c = 0;
        for v in 0..adj.len() {
            if !used[v] {
                used[v] = true;
                t.push(v);
                c += rec(adj, len, t, used);
                t.pop();
                used[v] = false;
            }
        }
        c
    }
    rec(adj, len, &mut Vec::with_capacity(len), &mut vec![false; adj.len()])
}

pub fn int_adjacency(b: &[u64], d: u64) -> Vec<Vec<bool>> {
    b.iter().map(|&x| b.iter().map(|&y| x != y && int_ratio_in_rd(x, y, d)).collect()).collect()
}

/// Pairs `(a, b)` with `a / b` an integer in `[1, d]`.
pub fn f_count(a: &[PosRational], b: &[PosRational], d: u64) -> u64 {
    let mut c = 0;
    for x in a {
        for y in b {
            let r = x.as_rational() / y.as_rational();
            if r.is_integer() && r >= Rational::one() && r <= Rational::from_integer(d.into()) {
                c += 1;
            }
        }
    }
    c
}

/// `{x + y : x <= y in A}`.
pub fn sumset(a: &[BigInt]) -> BTreeSet<BigInt> {
    let mut s = BTreeSet::new();
    for (i, x) in a.iter().enumerate() {
        for y in &a[i..] {
            s.insert(x + y);
        }
    }
    s
}

pub fn gcd_sum(a: &[u64]) -> Rational {
    let mut s = Rational::from_integer(0.into());
    for j in 0..a.len() {
        for i in 0..j {
            s += Rational::new(gcd_u64(a[i], a[j]).into(), a[j].into());
        }
    }
    s
}

/// Divisor counts by trial division up to the square root.
pub fn divisor_count(m: u64) -> u64 {
    let mut c = 0;
    let mut k = 1;
    while k * k <= m {
        if m % k == 0 {
            c += if k * k == m { 1 } else { 2 };
        }
        k += 1;
    }
    c
}

/// Point multiplicities of a family of integer progressions `(start, diff, len)`.
pub fn int_multiplicity(family: &[(i64, i64, u64)]) -> BTreeMap<i64, u64> {
    let mut m = BTreeMap::new();
    for &(a, b, l) in family {
        for x in int_ap(a, b, l) {
            *m.entry(x).or_insert(0) += 1;
        }
    }
    m
}
