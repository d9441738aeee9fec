//! Explicit constructions, each returned together with what it claims and
//! what was actually counted.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::arith::{floor_sqrt_ratio, isqrt, PosRational, Rational};
use crate::progression::{APFamily, ArithmeticProgression};
use crate::ratio::{f_count, FiniteSet, RatioBound};
use crate::{Error, Result};

/// The `n` progressions `A_j = {i j : i in [n]}`, `j = 1..n`.
pub fn mult_table_family(n: u64) -> Result<APFamily> {
    if n == 0 {
        return Err(Error::NotPositive("n"));
    }
    let members = (1..=n)
        .map(|j| ArithmeticProgression::integer(j as i64, j, n))
        .collect::<Result<Vec<_>>>()?;
    APFamily::new(members)
}

/// Default cap on the number of products enumerated by [`mult_table_card`].
pub const MULT_TABLE_BUDGET: u128 = 100_000_000_000;

const BLOCK_BITS: u64 = 1 << 21;

/// `M(n) = |{i j : i, j in [n]}|` by a segmented bitset sieve over
/// `[1, n^2]`. Work is about `n^2 / 2` products; memory is one block.
pub fn mult_table_card(n: u64, budget: u128) -> Result<u64> {
    if n == 0 {
        return Err(Error::NotPositive("n"));
    }
    let work = (n as u128) * (n as u128 + 1) / 2;
    if work > budget {
        return Err(Error::BudgetExceeded { what: "multiplication table", needed: work, budget });
    }
    let top = n * n;
    let mut bits = vec![0u64; (BLOCK_BITS / 64) as usize];
    let mut total = 0u64;
    let mut lo = 1u64;
    while lo <= top {
        let hi = (lo + BLOCK_BITS).min(top + 1);
        bits.iter_mut().for_each(|w| *w = 0);
        // x = i j with i <= j <= n lands in [lo, hi) only if lo/n <= i <= sqrt(hi - 1).
        let i_min = lo.div_ceil(n).max(1);
        let i_max = isqrt(hi - 1).min(n);
        for i in i_min..=i_max {
            let j_min = i.max(lo.div_ceil(i));
            let j_max = n.min((hi - 1) / i);
            let mut x = i * j_min;
            let end = i * j_max;
            while x <= end {
                let off = x - lo;
                bits[(off >> 6) as usize] |= 1 << (off & 63);
                x += i;
            }
        }
        total += bits.iter().map(|w| w.count_ones() as u64).sum::<u64>();
        lo = hi;
    }
    Ok(total)
}

/// Bit cap for [`mult_table_card_prefix`] (512 MiB).
pub const MULT_TABLE_PREFIX_BITS: u128 = 1 << 32;

/// `M(1), ..., M(n_max)` (slot 0 is 0) from one growing table: step `n` adds
/// the products `n j`, `j <= n`, not already present. Work about
/// `n_max^2 / 2`, memory `n_max^2` bits.
pub fn mult_table_card_prefix(n_max: u64, budget: u128) -> Result<Vec<u64>> {
    let bits = (n_max as u128) * (n_max as u128) + 1;
    let work = (n_max as u128) * (n_max as u128 + 1) / 2;
    if bits > MULT_TABLE_PREFIX_BITS {
        let budget = MULT_TABLE_PREFIX_BITS;
        return Err(Error::BudgetExceeded { what: "multiplication table bits", needed: bits, budget });
    }
    if work > budget {
        return Err(Error::BudgetExceeded { what: "multiplication table", needed: work, budget });
    }
    let mut seen = vec![0u64; (bits as usize).div_ceil(64)];
    let mut out = Vec::with_capacity(n_max as usize + 1);
    out.push(0);
    let mut total = 0;
    for n in 1..=n_max {
        for j in 1..=n {
            let x = (n * j) as usize;
            let (w, b) = (x >> 6, 1u64 << (x & 63));
            if seen[w] & b == 0 {
                seen[w] |= b;
                total += 1;
            }
        }
        out.push(total);
    }
    Ok(out)
}

/// A construction together with its claim and the verified count.
#[derive(Clone, Debug, PartialEq)]
pub struct ConstructionOutput {
    pub name: &'static str,
    pub a: FiniteSet,
    pub b: FiniteSet,
    /// Named integer parameters (`m`, `n`, `d`, `k`, `l`, `t`, ...).
    pub params: BTreeMap<&'static str, u64>,
    pub claimed_bound: Rational,
    pub verified_count: u64,
    pub hypotheses_hold: bool,
    /// `None` when verification was skipped because a hypothesis failed.
    pub verified: Option<bool>,
    pub note: Option<&'static str>,
}

fn pos(n: u64) -> PosRational {
    PosRational::from_integer(n).expect("positive")
}

fn power(base: u64, e: u32) -> PosRational {
    PosRational::new(BigInt::from(base).pow(e), BigInt::one()).expect("positive")
}

fn ratio_bound(d: u64) -> Result<RatioBound> {
    RatioBound::new(u32::try_from(d).map_err(|_| Error::Precondition("d exceeds u32".into()))?)
}

/// Sets with `f_d(A, B) >= sqrt(m n d) / 8`, for `m <= 4nd`, `n <= 4md`,
/// `d <= 4mn`.
///
/// With `k = floor(sqrt(md/n))`, `l = floor(sqrt(nd/m))`,
/// `t = floor(sqrt(mn/d))` the sets are `A = {(k+l)^r i}` and
/// `B = {(k+l)^r / j}`, `r in [t]`, `i in [k]`, `j in [l]`. When exactly one
/// of `k, l, t` floors to zero the matching exact-value construction of
/// [`prop_three_sets`] is used instead; it still meets the bound under the
/// hypotheses.
pub fn lowerg_sets(m: u64, n: u64, d: u64) -> Result<ConstructionOutput> {
    if m == 0 || n == 0 || d == 0 {
        return Err(Error::NotPositive("m, n, d"));
    }
    let hypotheses_hold = m <= 4 * n * d && n <= 4 * m * d && d <= 4 * m * n;
    let k = floor_sqrt_ratio(m * d, n);
    let l = floor_sqrt_ratio(n * d, m);
    let t = floor_sqrt_ratio(m * n, d);
    let rb = ratio_bound(d)?;

    let fallback = match (k, l, t) {
        (0, _, _) => Some(1),
        (_, 0, _) => Some(2),
        (_, _, 0) => Some(0),
        _ => None,
    };
    let mut out = if let (Some(which), true) = (fallback, hypotheses_hold) {
        // which: 0 -> d >= mn, 1 -> n >= md, 2 -> m >= nd
        let mut o = prop_three_sets(which + 1, m, n, d)?;
        o.name = "lowerg";
        o.note = Some("a floor vanished; used the matching exact-value construction");
        o
    } else {
        let base = k + l;
        let mut a = Vec::new();
        let mut b = Vec::new();
        for r in 1..=t as u32 {
            let p = power(base, r);
            a.extend((1..=k).map(|i| p.scale(i)));
            b.extend((1..=l).map(|j| p.mul(&pos(j).recip())));
        }
        let a = FiniteSet::new(a);
        let b = FiniteSet::new(b);
        let count = f_count(&a, &b, rb);
        let claim = t * k * l;
        ConstructionOutput {
            name: "lowerg",
            verified: None,
            params: BTreeMap::new(),
            claimed_bound: Rational::from_integer(BigInt::from(claim)),
            verified_count: count,
            hypotheses_hold,
            note: None,
            a,
            b,
        }
    };
    out.params = BTreeMap::from([("m", m), ("n", n), ("d", d), ("k", k), ("l", l), ("t", t)]);
    out.hypotheses_hold = hypotheses_hold;
    if hypotheses_hold {
        let c = out.verified_count as u128;
        let meets_sqrt = 64 * c * c >= (m as u128) * (n as u128) * (d as u128);
        let sizes = out.a.len() as u64 <= m && out.b.len() as u64 <= n;
        let meets_claim = Rational::from_integer(BigInt::from(out.verified_count)) >= out.claimed_bound;
        out.verified = Some(sizes && meets_claim && meets_sqrt);
    } else {
        out.verified = None;
    }
    Ok(out)
}

/// The three exact-value regimes of `f_d(m, n)`:
///
/// 1. `d >= mn`: `A = [m]`, `B = {1/j : j in [n]}`, count `mn`;
/// 2. `n >= md`: `A = {(d+1)^i}`, `B = {(d+1)^i / k}`, count `md`;
/// 3. `m >= nd`: `A = {(d+1)^j k}`, `B = {(d+1)^j}`, count `nd`.
///
/// Each is checked against `f <= |A||B|`, `f <= |A| d` and `f <= |B| d`.
pub fn prop_three_sets(case: u8, m: u64, n: u64, d: u64) -> Result<ConstructionOutput> {
    if m == 0 || n == 0 || d == 0 {
        return Err(Error::NotPositive("m, n, d"));
    }
    let rb = ratio_bound(d)?;
    let (a, b, target): (Vec<PosRational>, Vec<PosRational>, u64) = match case {
        1 => {
            if d < m * n {
                return Err(Error::Precondition("case 1 needs d >= m n".into()));
            }
            ((1..=m).map(pos).collect(), (1..=n).map(|j| pos(j).recip()).collect(), m * n)
        }
        2 => {
            if n < m * d {
                return Err(Error::Precondition("case 2 needs n >= m d".into()));
            }
            let a: Vec<_> = (1..=m as u32).map(|i| power(d + 1, i)).collect();
            let b = a.iter().flat_map(|p| (1..=d).map(move |k| p.mul(&pos(k).recip()))).collect();
            (a, b, m * d)
        }
        3 => {
            if m < n * d {
                return Err(Error::Precondition("case 3 needs m >= n d".into()));
            }
            let b: Vec<_> = (1..=n as u32).map(|j| power(d + 1, j)).collect();
            let a = b.iter().flat_map(|p| (1..=d).map(move |k| p.scale(k))).collect();
            (a, b, n * d)
        }
        _ => return Err(Error::Precondition("case must be 1, 2 or 3".into())),
    };
    let a = FiniteSet::new(a);
    let b = FiniteSet::new(b);
    let count = f_count(&a, &b, rb);
    let (la, lb) = (a.len() as u64, b.len() as u64);
    let verified = count == target
        && la <= m
        && lb <= n
        && count <= la * lb
        && count <= la * d
        && count <= lb * d;
    Ok(ConstructionOutput {
        name: "prop-three",
        a,
        b,
        params: BTreeMap::from([("case", case as u64), ("m", m), ("n", n), ("d", d)]),
        claimed_bound: Rational::from_integer(BigInt::from(target)),
        verified_count: count,
        hypotheses_hold: true,
        verified: Some(verified),
        note: None,
    })
}

/// The first `m` terms of the Mian–Chowla sequence: greedy positive integers
/// with all pairwise differences distinct.
pub fn sidon_set(m: usize) -> Vec<u64> {
    let mut set: Vec<u64> = Vec::with_capacity(m);
    let mut used: Vec<bool> = Vec::new();
    let mut candidate = 1u64;
    while set.len() < m {
        let fits = set.iter().all(|&s| {
            let diff = (candidate - s) as usize;
            !used.get(diff).copied().unwrap_or(false)
        });
        if fits {
            let top = (candidate - set.first().copied().unwrap_or(candidate)) as usize;
            if used.len() <= top {
                used.resize(top + 1, false);
            }
            for &s in &set {
                used[(candidate - s) as usize] = true;
            }
            set.push(candidate);
        }
        candidate += 1;
    }
    set
}

/// Smallest `m` with `C(m, 2) >= n`, which is `ceil(1/2 + sqrt(2n + 1/4))`.
pub fn u2_value(n: u64) -> u64 {
    // m(m-1)/2 >= n  <=>  (2m - 1)^2 >= 8n + 1
    let disc = 8 * n + 1;
    let s = isqrt(disc);
    let root_ceil = if s * s == disc { s } else { s + 1 };
    let mut m = root_ceil.div_ceil(2).max(1);
    if m * (m - 1) / 2 < n {
        m += 1;
    }
    while m > 1 && (m - 1) * (m - 2) / 2 >= n {
        m -= 1;
    }
    m
}

/// A union-size-optimal family of `n` two-term progressions.
#[derive(Clone, Debug, PartialEq)]
pub struct U2Witness {
    pub family: APFamily,
    pub union_size: u64,
    /// The Sidon set the pairs are drawn from.
    pub sidon: Vec<u64>,
    /// Lower-bound certificate: a union of `u` points realises at most
    /// `C(u, 2)` distinct differences, and `C(u - 1, 2) < n <= C(u, 2)`.
    pub pairs_below: u64,
    pub pairs_at: u64,
}

pub fn u2_witness(n: u64) -> Result<U2Witness> {
    if n == 0 {
        return Err(Error::NotPositive("n"));
    }
    let m = u2_value(n);
    let sidon = sidon_set(m as usize);
    // Pairs ordered by their larger index, so the first C(m-1, 2) use only
    // the first m - 1 points and the rest bring in the last one.
    let mut members = Vec::with_capacity(n as usize);
    'outer: for j in 1..sidon.len() {
        for i in 0..j {
            if members.len() as u64 == n {
                break 'outer;
            }
            members.push(ArithmeticProgression::integer(sidon[i] as i64, sidon[j] - sidon[i], 2)?);
        }
    }
    let family = APFamily::new(members)?;
    let union_size = crate::progression::union_census(&family).cardinality();
    Ok(U2Witness {
        family,
        union_size,
        sidon,
        pairs_below: (m - 1) * m.saturating_sub(2) / 2,
        pairs_at: m * (m - 1) / 2,
    })
}

/// For each positive difference `δ` of `A`, the three-term progression
/// `(2a, a + b, 2b)` where `(a, b)` is the pair with `b - a = δ` and smallest
/// `a`.
pub fn ruzsa_triple_family(a: &[BigInt]) -> Result<APFamily> {
    if a.len() < 2 {
        return Err(Error::Precondition("need at least two integers".into()));
    }
    if let Some(i) = a.windows(2).position(|w| w[0] >= w[1]) {
        return Err(Error::NotStrictlyIncreasing(i + 1));
    }
    let mut chosen: BTreeMap<BigInt, &BigInt> = BTreeMap::new();
    for (i, lo) in a.iter().enumerate() {
        for hi in &a[i + 1..] {
            chosen.entry(hi - lo).or_insert(lo);
        }
    }
    let two = BigInt::from(2);
    let members = chosen
        .into_iter()
        .map(|(delta, lo)| {
            debug_assert!(delta.is_positive());
            ArithmeticProgression::new(
                Rational::from_integer(lo * &two),
                PosRational::new(delta, BigInt::one())?,
                3,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    APFamily::new(members)
}

/// `A + A`.
pub fn sumset(a: &[BigInt]) -> BTreeSet<BigInt> {
    let mut s = BTreeSet::new();
    for (i, x) in a.iter().enumerate() {
        for y in &a[i..] {
            s.insert(x + y);
        }
    }
    s
}
