//! Bounded-ratio machinery: the sets `R_d = {k/l : k, l in [d]}`, the pair
//! census `G_d(B)`, the cyclic tuple census `C_{d,2k}(B)`, integer-quotient
//! counts `f` and the triple counts `W` built from them.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{divisor_count_table, rat, ratio_of, PosRational, Rational};
use crate::{Error, Result};

/// The bound `d` of `R_d`; always at least 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RatioBound(u32);

impl RatioBound {
    pub fn new(d: u32) -> Result<Self> {
        if d == 0 {
            return Err(Error::NotPositive("d"));
        }
        Ok(RatioBound(d))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

/// A finite set of positive rationals, stored strictly increasing.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FiniteSet {
    elements: Vec<PosRational>,
}

impl FiniteSet {
    /// Collects, sorts and deduplicates.
    pub fn new<I: IntoIterator<Item = PosRational>>(items: I) -> Self {
        let mut elements: Vec<PosRational> = items.into_iter().collect();
        elements.sort();
        elements.dedup();
        FiniteSet { elements }
    }

    /// Accepts an already strictly increasing list.
    pub fn from_sorted(elements: Vec<PosRational>) -> Result<Self> {
        if let Some(i) = elements.windows(2).position(|w| w[0] >= w[1]) {
            return Err(Error::NotStrictlyIncreasing(i + 1));
        }
        Ok(FiniteSet { elements })
    }

    /// Positive integers; zeros are rejected.
    pub fn from_integers<I: IntoIterator<Item = u64>>(items: I) -> Result<Self> {
        let v = items
            .into_iter()
            .map(PosRational::from_integer)
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(v))
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[PosRational] {
        &self.elements
    }

    pub fn iter(&self) -> core::slice::Iter<'_, PosRational> {
        self.elements.iter()
    }

    pub fn contains(&self, x: &PosRational) -> bool {
        self.elements.binary_search(x).is_ok()
    }

    /// Subset selected by a mask of the same length.
    pub fn select(&self, keep: &[bool]) -> FiniteSet {
        FiniteSet {
            elements: self
                .elements
                .iter()
                .zip(keep)
                .filter(|(_, &k)| k)
                .map(|(x, _)| x.clone())
                .collect(),
        }
    }
}

impl<'a> IntoIterator for &'a FiniteSet {
    type Item = &'a PosRational;
    type IntoIter = core::slice::Iter<'a, PosRational>;

    fn into_iter(self) -> Self::IntoIter {
        self.elements.iter()
    }
}

/// `r in R_d`: numerator and denominator (lowest terms) both at most `d`.
pub fn in_rd(r: &PosRational, d: RatioBound) -> bool {
    let bound = BigInt::from(d.get());
    *r.numer() <= bound && *r.denom() <= bound
}

/// All distinct values `k/l` with `k, l in [d]`.
pub fn rd_members(d: RatioBound) -> FiniteSet {
    let d = d.get() as u64;
    let mut out = Vec::new();
    for k in 1..=d {
        for l in 1..=d {
            if num_integer::gcd(k, l) == 1 {
                out.push(PosRational::from_ratio(k, l).expect("positive"));
            }
        }
    }
    FiniteSet::new(out)
}

/// Index pairs `(i, j)`, `i < j`, of elements whose ratio lies in `R_d`.
/// Elements are distinct, so the ratio is never 1.
pub fn ratio_edges(set: &FiniteSet, d: RatioBound) -> Vec<(usize, usize)> {
    let xs = set.elements();
    let mut edges = Vec::new();
    for (i, lo) in xs.iter().enumerate() {
        // xs[j] / xs[i] > 1 lies in R_d only if xs[j] <= d * xs[i].
        let cap = lo.scale(d.get() as u64);
        for (j, hi) in xs.iter().enumerate().skip(i + 1) {
            if *hi > cap {
                break;
            }
            if in_rd(&ratio_of(hi, lo), d) {
                edges.push((i, j));
            }
        }
    }
    edges
}

/// `|G_d(B)|`: unordered pairs of distinct elements with ratio in `R_d`.
pub fn g_census(set: &FiniteSet, d: RatioBound) -> u64 {
    ratio_edges(set, d).len() as u64
}

/// The ratio graph on `B`: vertices are elements, edges join pairs whose
/// ratio lies in `R_d`.
#[derive(Clone, Debug)]
pub struct RatioGraph {
    adj: Vec<Vec<usize>>,
    matrix: Vec<bool>,
    edges: Vec<(usize, usize)>,
}

impl RatioGraph {
    pub fn new(set: &FiniteSet, d: RatioBound) -> Self {
        Self::from_edges(set.len(), ratio_edges(set, d))
    }

    pub fn from_edges(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        let mut matrix = vec![false; n * n];
        for &(i, j) in &edges {
            adj[i].push(j);
            adj[j].push(i);
            matrix[i * n + j] = true;
            matrix[j * n + i] = true;
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        RatioGraph { adj, matrix, edges }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.matrix[i * self.adj.len() + j]
    }

    /// Edges with both ends kept.
    pub fn edge_count_within(&self, keep: &[bool]) -> u64 {
        self.edges.iter().filter(|&&(i, j)| keep[i] && keep[j]).count() as u64
    }

    /// Ordered tuples of `len` pairwise distinct kept vertices, cyclically
    /// adjacent. Each undirected cycle is found from its smallest vertex in
    /// both directions and then multiplied out by the `len` rotations.
    pub fn cycle_tuples_within(&self, len: usize, keep: Option<&[bool]>) -> u64 {
        let n = self.adj.len();
        if n < len || len < 3 {
            return 0;
        }
        let kept = |v: usize| keep.map_or(true, |k| k[v]);
        let mut on_path = vec![false; n];
        let mut directed = 0u64;
        for start in 0..n {
            if !kept(start) {
                continue;
            }
            on_path[start] = true;
            directed += self.extend(start, start, 1, len, &mut on_path, &kept);
            on_path[start] = false;
        }
        directed * len as u64
    }

    fn extend(
        &self,
        start: usize,
        at: usize,
        depth: usize,
        len: usize,
        on_path: &mut [bool],
        kept: &dyn Fn(usize) -> bool,
    ) -> u64 {
        if depth == len {
            return self.adjacent(at, start) as u64;
        }
        let mut total = 0;
        for &next in &self.adj[at] {
            if next <= start || on_path[next] || !kept(next) {
                continue;
            }
            on_path[next] = true;
            total += self.extend(start, next, depth + 1, len, on_path, kept);
            on_path[next] = false;
        }
        total
    }
}

fn check_cycle_length(two_k: usize) -> Result<()> {
    if two_k < 4 || two_k % 2 == 1 {
        return Err(Error::BadCycleLength(two_k));
    }
    Ok(())
}

/// `|C_{d,2k}(B)|`: ordered tuples of `two_k` pairwise distinct elements whose
/// consecutive ratios, cyclically, all lie in `R_d`.
pub fn cycle_census(set: &FiniteSet, d: RatioBound, two_k: usize) -> Result<u64> {
    check_cycle_length(two_k)?;
    if set.len() < two_k {
        return Ok(0);
    }
    Ok(RatioGraph::new(set, d).cycle_tuples_within(two_k, None))
}

/// Both sides of `|C_{d,2k}(B)| / 4k >= |G_d(B)| - 100 k |B|^(1 + 1/k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BasicLowerReport {
    pub cycle_tuples: u64,
    pub g_count: u64,
    /// Exact left side `|C| / 4k`.
    pub lhs: Rational,
    /// Right side with the power term rounded upward (approximate).
    pub rhs_approx: f64,
    pub holds: bool,
}

pub fn basic_lower_check(set: &FiniteSet, d: RatioBound, k: usize) -> Result<BasicLowerReport> {
    if k < 2 {
        return Err(Error::Precondition("k must be at least 2".into()));
    }
    let graph = RatioGraph::new(set, d);
    let cycle_tuples = graph.cycle_tuples_within(2 * k, None);
    let g_count = graph.edges().len() as u64;
    let lhs = rat(cycle_tuples, 4 * k as u64);
    let power = libm::pow(set.len() as f64, 1.0 + 1.0 / k as f64).next_up();
    let rhs_approx = g_count as f64 - 100.0 * k as f64 * power;
    let holds = rhs_approx <= 0.0 || crate::arith::rational_to_f64(&lhs) >= rhs_approx;
    Ok(BasicLowerReport { cycle_tuples, g_count, lhs, rhs_approx, holds })
}

/// Monte Carlo mean with its standard error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SampleMean {
    pub mean: f64,
    pub std_error: f64,
    pub predicted: f64,
    pub pass: bool,
}

impl SampleMean {
    /// Tolerance in standard errors.
    pub const SIGMAS: f64 = 4.0;

    /// The slack adds one unit of sample-mean resolution (`1/trials`) so an
    /// all-zero sample of a rare event, whose empirical error is 0, is judged
    /// on resolution rather than rejected outright.
    fn judge(samples: &Welford, predicted: f64) -> SampleMean {
        let std_error = samples.std_error();
        let mean = samples.mean;
        let resolution = 1.0 / samples.count as f64;
        let pass = (mean - predicted).abs() <= Self::SIGMAS * std_error + resolution;
        SampleMean { mean, std_error, predicted, pass }
    }
}

#[derive(Default)]
struct Welford {
    count: u64,
    mean: f64,
    m2: f64,
}

impl Welford {
    fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    fn std_error(&self) -> f64 {
        if self.count < 2 {
            return 0.0;
        }
        let var = self.m2 / (self.count - 1) as f64;
        libm::sqrt(var / self.count as f64)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SubsampleReport {
    pub g_exact: u64,
    pub cycle_exact: u64,
    pub probability: f64,
    pub trials: u64,
    pub seed: u64,
    pub g: SampleMean,
    pub cycles: SampleMean,
    pub pass: bool,
}

/// Compare Monte Carlo means of `|G_d(B_p)|` and `|C_{d,2k}(B_p)|` over random
/// subsets `B_p` (each element kept independently with probability `p`)
/// against `|G_d(B)| p^2` and `|C_{d,2k}(B)| p^(2k)`.
///
/// `p = 1` is accepted and reproduces the exact censuses.
pub fn subsample_expectation_check(
    set: &FiniteSet,
    d: RatioBound,
    k: usize,
    p: f64,
    trials: u64,
    seed: u64,
) -> Result<SubsampleReport> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::BadProbability(p));
    }
    if trials == 0 {
        return Err(Error::NotPositive("trials"));
    }
    check_cycle_length(2 * k)?;
    let graph = RatioGraph::new(set, d);
    let g_exact = graph.edges().len() as u64;
    let cycle_exact = graph.cycle_tuples_within(2 * k, None);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut keep = vec![false; set.len()];
    let (mut g_acc, mut c_acc) = (Welford::default(), Welford::default());
    for _ in 0..trials {
        for slot in keep.iter_mut() {
            *slot = p >= 1.0 || rng.random_bool(p);
        }
        g_acc.push(graph.edge_count_within(&keep) as f64);
        c_acc.push(graph.cycle_tuples_within(2 * k, Some(&keep)) as f64);
    }
    let g = SampleMean::judge(&g_acc, g_exact as f64 * p * p);
    let cycles = SampleMean::judge(&c_acc, cycle_exact as f64 * libm::pow(p, (2 * k) as f64));
    Ok(SubsampleReport {
        g_exact,
        cycle_exact,
        probability: p,
        trials,
        seed,
        g,
        cycles,
        pass: g.pass && cycles.pass,
    })
}

/// `N(m) = #{t-tuples in [d]^t with product m}` for `0..=d^t` (slot 0 is 0).
pub fn product_representation_counts(d: RatioBound, t: u32, budget: u64) -> Result<Vec<u64>> {
    let d = d.get() as u64;
    let support = (d as u128).checked_pow(t).unwrap_or(u128::MAX);
    if support > budget as u128 {
        return Err(Error::BudgetExceeded {
            what: "product representation table",
            needed: support,
            budget: budget as u128,
        });
    }
    let support = support as usize;
    let mut counts = vec![0u64; support + 1];
    counts[1] = 1;
    let mut reach = 1usize;
    for _ in 0..t {
        let mut next = vec![0u64; support + 1];
        for m in 1..=reach {
            if counts[m] == 0 {
                continue;
            }
            for f in 1..=d as usize {
                next[m * f] += counts[m];
            }
        }
        counts = next;
        reach *= d as usize;
    }
    Ok(counts)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductRepReport {
    pub d: u32,
    pub t: u32,
    /// `d^t`, the largest reachable product.
    pub support: u64,
    pub sum_of_squares: BigUint,
    /// `sum_{m <= d^t} d(m)^t`.
    pub divisor_power_sum: BigUint,
    pub holds: bool,
}

/// Check `sum_m N(m)^2 <= sum_{m <= d^t} d(m)^t`.
pub fn product_rep_audit(d: RatioBound, t: u32, budget: u64) -> Result<ProductRepReport> {
    let counts = product_representation_counts(d, t, budget)?;
    let support = counts.len() - 1;
    let sum_of_squares: BigUint = counts.iter().map(|&c| BigUint::from(c) * c).sum();
    let divisors = divisor_count_table(support);
    let divisor_power_sum: BigUint =
        divisors[1..].iter().map(|&dm| BigUint::from(dm).pow(t)).sum();
    Ok(ProductRepReport {
        d: d.get(),
        t,
        support: support as u64,
        holds: sum_of_squares <= divisor_power_sum,
        sum_of_squares,
        divisor_power_sum,
    })
}

/// Number of `b` in `B` with `a / b in [d]`.
pub fn quotient_degree(a: &PosRational, b_set: &FiniteSet, d: RatioBound) -> u64 {
    (1..=d.get() as u64)
        .filter(|&k| b_set.contains(&ratio_of(a, &PosRational::from_integer(k).expect("k >= 1"))))
        .count() as u64
}

/// Ordered pairs `(a, b)` in `A x B` with `a / b` a positive integer `<= d`.
pub fn f_count(a_set: &FiniteSet, b_set: &FiniteSet, d: RatioBound) -> u64 {
    // Iterate the smaller side and look the multiples up in the other.
    if a_set.len() <= b_set.len() {
        a_set.iter().map(|a| quotient_degree(a, b_set, d)).sum()
    } else {
        let d64 = d.get() as u64;
        b_set
            .iter()
            .map(|b| (1..=d64).filter(|&k| a_set.contains(&b.scale(k))).count() as u64)
            .sum()
    }
}

/// `{1/s : s in S}`.
pub fn reciprocal_transform(set: &FiniteSet) -> FiniteSet {
    let mut v: Vec<PosRational> = set.iter().map(PosRational::recip).collect();
    v.reverse();
    FiniteSet::from_sorted(v).expect("reciprocal reverses a strict order")
}

/// Triples `(a, b1, b2)` with `b1 < b2` and `a/b1, a/b2 in [d]`.
pub fn w_triple_count(a_set: &FiniteSet, b_set: &FiniteSet, d: RatioBound) -> u64 {
    let d = d.get() as u64;
    let mut total = 0;
    for a in a_set {
        let hits: Vec<u64> = (1..=d)
            .filter(|&k| b_set.contains(&ratio_of(a, &PosRational::from_integer(k).expect("k >= 1"))))
            .collect();
        // b = a / k, so b1 < b2 exactly when k1 > k2; each unordered pair of
        // hits is one triple.
        for (i, _) in hits.iter().enumerate() {
            total += (hits.len() - 1 - i) as u64;
        }
    }
    total
}

/// The counting chain bounding `|W|` by pair censuses:
/// `|W| <= sum_{q=2}^d (|G_q| - |G_{q-1}|) floor(d/q)
///      <= |G_d| + sum_{q=2}^{d-1} |G_q| d / (q (q+1))`.
#[derive(Clone, Debug, PartialEq)]
pub struct WChainReport {
    pub w: u64,
    pub floor_sum: u64,
    pub chain_bound: Rational,
    pub holds: bool,
}

pub fn w_chain_check(a_set: &FiniteSet, b_set: &FiniteSet, d: RatioBound) -> WChainReport {
    let w = w_triple_count(a_set, b_set, d);
    let dd = d.get() as u64;
    let g: Vec<u64> = (1..=dd)
        .map(|q| g_census(b_set, RatioBound::new(q as u32).expect("q >= 1")))
        .collect();
    let gq = |q: u64| g[(q - 1) as usize];
    let floor_sum: u64 = (2..=dd).map(|q| (gq(q) - gq(q - 1)) * (dd / q)).sum();
    let mut chain_bound = Rational::from_integer(BigInt::from(gq(dd)));
    for q in 2..dd {
        chain_bound += rat(gq(q) * dd, q * (q + 1));
    }
    let holds = w <= floor_sum && Rational::from_integer(BigInt::from(floor_sum)) <= chain_bound;
    WChainReport { w, floor_sum, chain_bound, holds }
}

/// Results bundle for the censuses on a pair of sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatioCensus {
    pub g_count: u64,
    /// Keyed by cycle length `2k`.
    pub cycle_counts: BTreeMap<usize, u64>,
    pub f_count: u64,
    pub w_count: u64,
}

impl RatioCensus {
    pub fn compute(
        a_set: &FiniteSet,
        b_set: &FiniteSet,
        d: RatioBound,
        cycle_lengths: &[usize],
    ) -> Result<Self> {
        let graph = RatioGraph::new(b_set, d);
        let mut cycle_counts = BTreeMap::new();
        for &len in cycle_lengths {
            check_cycle_length(len)?;
            cycle_counts.insert(len, graph.cycle_tuples_within(len, None));
        }
        Ok(RatioCensus {
            g_count: graph.edges().len() as u64,
            cycle_counts,
            f_count: f_count(a_set, b_set, d),
            w_count: w_triple_count(a_set, b_set, d),
        })
    }

    /// `g <= C(|B|, 2)` and every nonzero cycle count divisible by `2 * 2k`.
    pub fn is_consistent(&self, b_len: usize) -> bool {
        let pairs = (b_len as u64) * (b_len.saturating_sub(1) as u64) / 2;
        self.g_count <= pairs
            && self.cycle_counts.iter().all(|(&len, &c)| c % (2 * len as u64) == 0)
    }
}

/// `|R_d| = 2 sum_{q <= d} φ(q) - 1`.
pub fn rd_size(d: RatioBound) -> u64 {
    let phi = crate::arith::euler_phi_table(d.get() as usize);
    2 * phi[1..].iter().sum::<u64>() - 1
}

/// `(|B| - 1) |R_d|` and `|B| d^2`, the two easy ceilings on `g_census`.
pub fn g_easy_bounds(b_len: usize, d: RatioBound) -> (u64, u64) {
    let n = b_len as u64;
    let dd = d.get() as u64;
    (n.saturating_sub(1) * rd_size(d), n * dd * dd)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn ints(v: &[u64]) -> FiniteSet {
        FiniteSet::from_integers(v.iter().copied()).unwrap()
    }

    fn rb(d: u32) -> RatioBound {
        RatioBound::new(d).unwrap()
    }

    fn pr(n: u64, d: u64) -> PosRational {
        PosRational::from_ratio(n, d).unwrap()
    }

    #[test]
    fn rd_examples() {
        assert_eq!(rd_members(rb(1)), ints(&[1]));
        assert_eq!(rd_members(rb(2)), FiniteSet::new([pr(1, 2), pr(1, 1), pr(2, 1)]));
        assert_eq!(rd_members(rb(3)).len(), 7);
        for d in 1..=30 {
            assert_eq!(rd_members(rb(d)).len() as u64, rd_size(rb(d)));
        }
        assert!(RatioBound::new(0).is_err());
    }

    #[test]
    fn in_rd_examples() {
        assert!(in_rd(&pr(4, 6), rb(3)));
        assert!(!in_rd(&pr(2, 3), rb(2)));
        assert!(in_rd(&pr(7, 7), rb(1)));
    }

    #[test]
    fn g_examples() {
        assert_eq!(g_census(&ints(&[1, 2, 3]), rb(2)), 1);
        assert_eq!(g_census(&ints(&[1, 2]), rb(1)), 0);
        assert_eq!(g_census(&ints(&[1, 2, 3]), rb(3)), 3);
        assert_eq!(g_census(&ints(&[5]), rb(3)), 0);
    }

    #[test]
    fn cycle_examples() {
        assert_eq!(cycle_census(&ints(&[1, 2, 4, 8]), rb(2), 4).unwrap(), 0);
        assert_eq!(cycle_census(&ints(&[1, 2, 3, 6]), rb(3), 4).unwrap(), 8);
        assert_eq!(cycle_census(&ints(&[1, 2, 3]), rb(3), 4).unwrap(), 0);
        assert_eq!(cycle_census(&ints(&[1, 2, 3, 6]), rb(3), 5), Err(Error::BadCycleLength(5)));
        assert_eq!(cycle_census(&ints(&[1, 2, 3, 6]), rb(3), 2), Err(Error::BadCycleLength(2)));
    }

    #[test]
    fn basic_lower_examples() {
        let r = basic_lower_check(&ints(&[1, 2, 3, 6]), rb(3), 2).unwrap();
        assert!(r.holds);
        assert_eq!(r.cycle_tuples, 8);
        assert_eq!(r.g_count, 5);
        assert_eq!(r.lhs, rat(1, 1));
        assert!(r.rhs_approx < 0.0);
        assert!(basic_lower_check(&ints(&[7]), rb(3), 2).unwrap().holds);
        assert!(basic_lower_check(&ints(&[7]), rb(3), 1).is_err());
    }

    #[test]
    fn subsample_p_one_is_exact() {
        let r = subsample_expectation_check(&ints(&[1, 2, 3, 6]), rb(3), 2, 1.0, 50, 7).unwrap();
        assert!(r.pass);
        assert_eq!(r.g.mean, r.g_exact as f64);
        assert_eq!(r.cycles.mean, 8.0);
        assert_eq!(r.g.std_error, 0.0);
    }

    #[test]
    fn subsample_rejects_bad_p() {
        let b = ints(&[1, 2]);
        assert!(subsample_expectation_check(&b, rb(2), 2, 0.0, 10, 1).is_err());
        assert!(subsample_expectation_check(&b, rb(2), 2, 1.5, 10, 1).is_err());
        assert!(subsample_expectation_check(&b, rb(2), 2, f64::NAN, 10, 1).is_err());
    }

    #[test]
    fn subsample_small_p_predicts_near_zero() {
        let r = subsample_expectation_check(&ints(&[1, 2, 3, 6]), rb(3), 2, 1e-6, 100, 3).unwrap();
        assert!(r.g.predicted < 1e-10 && r.cycles.predicted < 1e-20);
        assert!(r.pass);
    }

    #[test]
    fn product_rep_examples() {
        let c = product_representation_counts(rb(2), 2, 1000).unwrap();
        assert_eq!(&c[1..], &[1, 2, 0, 1]);
        let r = product_rep_audit(rb(2), 2, 1000).unwrap();
        assert_eq!(r.sum_of_squares, BigUint::from(6u32));
        assert!(r.holds);
        for t in 1..6 {
            assert_eq!(product_rep_audit(rb(1), t, 10).unwrap().sum_of_squares, BigUint::one());
        }
        let r = product_rep_audit(rb(3), 2, 1000).unwrap();
        assert_eq!(r.sum_of_squares, BigUint::from(15u32));
        assert!(product_rep_audit(rb(10), 9, 1_000_000).is_err());
    }

    #[test]
    fn f_examples() {
        assert_eq!(f_count(&ints(&[2, 4]), &ints(&[1, 2]), rb(2)), 3);
        assert_eq!(f_count(&ints(&[4, 8, 16, 32]), &ints(&[2, 4, 8, 16]), rb(4)), 10);
        // A = B * integers with d large enough: every pair counts.
        assert_eq!(f_count(&ints(&[6, 12]), &ints(&[1, 2, 3]), rb(12)), 6);
    }

    #[test]
    fn reciprocal_examples() {
        let s = ints(&[1, 2]);
        assert_eq!(reciprocal_transform(&s), FiniteSet::new([pr(1, 2), pr(1, 1)]));
        assert_eq!(reciprocal_transform(&reciprocal_transform(&s)), s);
        let (a, b) = (ints(&[2, 4]), ints(&[1, 2]));
        assert_eq!(f_count(&reciprocal_transform(&b), &reciprocal_transform(&a), rb(2)), 3);
    }

    #[test]
    fn w_examples() {
        assert_eq!(w_triple_count(&ints(&[2, 4]), &ints(&[1, 2]), rb(2)), 1);
        assert_eq!(w_triple_count(&ints(&[2, 4]), &ints(&[2]), rb(2)), 0);
        assert_eq!(w_triple_count(&ints(&[6]), &ints(&[1, 2, 3, 6]), rb(6)), 6);
    }

    #[test]
    fn w_chain_examples() {
        let r = w_chain_check(&ints(&[6]), &ints(&[1, 2, 3, 6]), rb(6));
        assert_eq!(r.w, 6);
        assert!(r.holds);
    }

    #[test]
    fn census_bundle() {
        let b = ints(&[1, 2, 3, 6]);
        let c = RatioCensus::compute(&ints(&[6]), &b, rb(3), &[4]).unwrap();
        assert_eq!(c.g_count, 5);
        assert_eq!(c.cycle_counts[&4], 8);
        assert_eq!(c.f_count, 3);
        assert_eq!(c.w_count, 3);
        assert!(c.is_consistent(b.len()));
    }

    #[test]
    fn easy_bound_values() {
        assert_eq!(g_easy_bounds(4, rb(3)), (21, 36));
    }
}
