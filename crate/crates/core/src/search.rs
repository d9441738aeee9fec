//! Minimising the union of `n` length-`l` progressions with distinct
//! differences, and evaluating the lower-bound formulas.
//!
//! Any rational family can be scaled to integers and translated so its
//! smallest start is 0 without changing union size or difference
//! distinctness, so the exhaustive search works on integer boxes. Its
//! answers are exact *within the box* only.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{divisor_bound_constant, int, rat, rational_to_f64, PosRational, Rational};
use crate::construct::{u2_value, u2_witness, U2Witness};
use crate::progression::{union_census, w_count_family, APFamily, ArithmeticProgression};
use crate::{Error, Result};

/// Integer search domain: starts in `[0, max_start]`, distinct differences
/// in `[1, max_diff]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBox {
    pub max_start: u64,
    pub max_diff: u64,
    pub n: usize,
    pub length: u64,
}

impl SearchBox {
    pub fn new(max_start: u64, max_diff: u64, n: usize, length: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::NotPositive("n"));
        }
        if length == 0 {
            return Err(Error::NotPositive("length"));
        }
        if max_diff < n as u64 {
            return Err(Error::Precondition("max_diff must be at least n".into()));
        }
        Ok(SearchBox { max_start, max_diff, n, length })
    }

    fn span(&self) -> usize {
        (self.max_start + (self.length - 1) * self.max_diff + 1) as usize
    }
}

/// `u_2(n)` with a witness and its counting certificate.
pub fn u2_exact(n: u64) -> Result<(u64, U2Witness)> {
    let w = u2_witness(n)?;
    Ok((u2_value(n), w))
}

/// Union size no family of `n` length-`l` progressions with distinct
/// differences can beat: the two-term prefixes already need `u_2(n)` points.
pub fn union_lower_bound(n: u64, length: u64) -> u64 {
    if length == 1 {
        1
    } else {
        u2_value(n).max(length)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoxOptimum {
    pub value: u64,
    pub witness: APFamily,
    pub nodes: u64,
    /// The search stopped early because `value` met [`union_lower_bound`].
    pub met_lower_bound: bool,
}

struct Search<'a> {
    sbox: &'a SearchBox,
    counts: Vec<u16>,
    union: u64,
    chosen: Vec<(u64, u64)>,
    best: u64,
    best_family: Vec<(u64, u64)>,
    floor: u64,
    nodes: u64,
    budget: u64,
    over_budget: bool,
}

impl Search<'_> {
    fn added(&self, start: u64, diff: u64) -> u64 {
        (0..self.sbox.length)
            .filter(|j| self.counts[(start + j * diff) as usize] == 0)
            .count() as u64
    }

    fn place(&mut self, start: u64, diff: u64) {
        for j in 0..self.sbox.length {
            let c = &mut self.counts[(start + j * diff) as usize];
            if *c == 0 {
                self.union += 1;
            }
            *c += 1;
        }
        self.chosen.push((start, diff));
    }

    fn unplace(&mut self) {
        let (start, diff) = self.chosen.pop().expect("placed");
        for j in 0..self.sbox.length {
            let c = &mut self.counts[(start + j * diff) as usize];
            *c -= 1;
            if *c == 0 {
                self.union -= 1;
            }
        }
    }

    fn done(&self) -> bool {
        self.over_budget || self.best <= self.floor
    }

    fn run(&mut self, min_diff: u64) {
        if self.done() {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.over_budget = true;
            return;
        }
        let slot = self.chosen.len();
        if slot == self.sbox.n {
            if self.union < self.best {
                self.best = self.union;
                self.best_family = self.chosen.clone();
            }
            return;
        }
        let remaining = (self.sbox.n - slot) as u64;
        let needs_zero = remaining == 1 && self.chosen.iter().all(|&(s, _)| s != 0);
        let max_start = if needs_zero { 0 } else { self.sbox.max_start };
        for diff in min_diff..=self.sbox.max_diff - (remaining - 1) {
            let mut options: Vec<(u64, u64)> = (0..=max_start)
                .map(|s| (self.added(s, diff), s))
                .filter(|&(add, _)| self.union + add < self.best)
                .collect();
            options.sort_unstable();
            for (add, start) in options {
                if self.union + add >= self.best || self.done() {
                    break;
                }
                self.place(start, diff);
                self.run(diff + 1);
                self.unplace();
            }
            if self.done() {
                return;
            }
        }
    }
}

/// Exact minimum union size over all families inside `sbox`, by
/// branch-and-bound. Differences are assigned in increasing order, starts
/// are tried cheapest-first, and a branch is cut once its partial union
/// reaches the incumbent. `budget` caps the number of search nodes.
pub fn u_exact_in_box(sbox: &SearchBox, budget: u64) -> Result<BoxOptimum> {
    let floor = union_lower_bound(sbox.n as u64, sbox.length);
    let mut search = Search {
        sbox,
        counts: vec![0; sbox.span()],
        union: 0,
        chosen: Vec::with_capacity(sbox.n),
        best: sbox.n as u64 * sbox.length + 1,
        best_family: Vec::new(),
        floor,
        nodes: 0,
        budget,
        over_budget: false,
    };
    search.run(1);
    if search.over_budget {
        return Err(Error::BudgetExceeded {
            what: "box search",
            needed: search.nodes as u128,
            budget: budget as u128,
        });
    }
    let witness = integer_family(&search.best_family, sbox.length)?;
    Ok(BoxOptimum {
        value: search.best,
        witness,
        nodes: search.nodes,
        met_lower_bound: search.best <= floor,
    })
}

fn integer_family(members: &[(u64, u64)], length: u64) -> Result<APFamily> {
    APFamily::new(
        members
            .iter()
            .map(|&(s, d)| ArithmeticProgression::integer(s as i64, d, length))
            .collect::<Result<Vec<_>>>()?,
    )
}

#[derive(Clone, Debug, PartialEq)]
pub struct HeuristicResult {
    pub cardinality: u64,
    pub family: APFamily,
    pub moves: u64,
}

/// Seeded local search for small unions. Starts from the dilates
/// `{j, 2j, ..., l j}`, `j = 1..n`, then repeatedly moves one progression
/// (new start or new unused difference) and keeps the move unless the union
/// grows. Never claims optimality.
pub fn u_upper_heuristic(n: usize, length: u64, budget: u64, seed: u64) -> Result<HeuristicResult> {
    if n == 0 {
        return Err(Error::NotPositive("n"));
    }
    if length == 0 {
        return Err(Error::NotPositive("length"));
    }
    if budget == 0 {
        return Err(Error::NotPositive("budget"));
    }
    let max_start = 2 * n as u64;
    let max_diff = 2 * n as u64;
    let span = (max_start + (length - 1) * max_diff + 1) as usize;
    let mut counts = vec![0u32; span];
    let mut union = 0u64;
    let mut members: Vec<(u64, u64)> = (1..=n as u64).map(|j| (j, j)).collect();
    let mut used = vec![false; max_diff as usize + 1];

    let apply = |counts: &mut Vec<u32>, union: &mut u64, (s, d): (u64, u64), add: bool| {
        for j in 0..length {
            let c = &mut counts[(s + j * d) as usize];
            if add {
                if *c == 0 {
                    *union += 1;
                }
                *c += 1;
            } else {
                *c -= 1;
                if *c == 0 {
                    *union -= 1;
                }
            }
        }
    };
    for &m in &members {
        apply(&mut counts, &mut union, m, true);
        used[m.1 as usize] = true;
    }
    let mut best = (union, members.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..budget {
        let i = rng.random_range(0..n);
        let old = members[i];
        let new = if rng.random_bool(0.5) {
            (rng.random_range(0..=max_start), old.1)
        } else {
            let d = rng.random_range(1..=max_diff);
            if used[d as usize] {
                continue;
            }
            (old.0, d)
        };
        let before = union;
        apply(&mut counts, &mut union, old, false);
        apply(&mut counts, &mut union, new, true);
        if union > before {
            apply(&mut counts, &mut union, new, false);
            apply(&mut counts, &mut union, old, true);
            continue;
        }
        used[old.1 as usize] = false;
        used[new.1 as usize] = true;
        members[i] = new;
        if union < best.0 {
            best = (union, members.clone());
        }
    }
    Ok(HeuristicResult { cardinality: best.0, family: integer_family(&best.1, length)?, moves: budget })
}

/// Constants of the asymptotic lower bounds. Defaults are 1 and flagged
/// non-rigorous: the true constants are implicit or astronomically large.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundConstants {
    pub epsilon: PosRational,
    pub c1: f64,
    pub c5: f64,
    pub c6: f64,
    pub c7: f64,
    pub non_rigorous: bool,
}

impl BoundConstants {
    pub fn defaulted(epsilon: PosRational) -> Result<Self> {
        if epsilon >= PosRational::one() {
            return Err(Error::Precondition("epsilon must lie in (0, 1)".into()));
        }
        Ok(BoundConstants { epsilon, c1: 1.0, c5: 1.0, c6: 1.0, c7: 1.0, non_rigorous: true })
    }

    pub fn with_c1(mut self, c1: f64) -> Result<Self> {
        if !(c1 > 0.0 && c1.is_finite()) {
            return Err(Error::NotPositive("c1"));
        }
        self.c1 = c1;
        self.non_rigorous = false;
        Ok(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    /// `l <= n^(1/2 - eps)`: bound `c1 n^(1/2 - eps) l`.
    Short,
    /// `n^(1/2 - eps) <= l <= n^(1 - eps)`: bound `c1 l^2`.
    Middle,
    /// `l >= n^(1 - eps)`: bound `c1 n^(1 - eps) l`.
    Long,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TheoremBound {
    pub regime: Regime,
    pub value: f64,
    pub non_rigorous: bool,
}

/// `x <= n^e` for a rational exponent, decided exactly.
fn le_power(x: u64, n: u64, e: &Rational) -> bool {
    let p = e.numer().abs().to_u32().expect("small exponent numerator");
    let q = e.denom().to_u32().expect("small exponent denominator");
    let lhs = BigUint::from(x).pow(q);
    let np = BigUint::from(n).pow(p);
    if e.is_negative() {
        lhs * np <= BigUint::one()
    } else {
        lhs <= np
    }
}

/// Evaluate the piecewise lower bound on `u_l(n)`. Ties go to the earlier
/// regime; at the `Middle`/`Long` boundary both formulas agree.
pub fn theorem_bound(n: u64, length: u64, consts: &BoundConstants) -> Result<TheoremBound> {
    if n < 2 || length < 2 {
        return Err(Error::Precondition("n and l must be at least 2".into()));
    }
    let eps = consts.epsilon.as_rational();
    let short_exp = rat(1, 2) - eps;
    let long_exp = Rational::one() - eps;
    let nf = n as f64;
    let lf = length as f64;
    let (regime, value) = if le_power(length, n, &short_exp) {
        (Regime::Short, consts.c1 * libm::pow(nf, rational_to_f64(&short_exp)) * lf)
    } else if le_power(length, n, &long_exp) {
        (Regime::Middle, consts.c1 * lf * lf)
    } else {
        (Regime::Long, consts.c1 * libm::pow(nf, rational_to_f64(&long_exp)) * lf)
    };
    Ok(TheoremBound { regime, value, non_rigorous: consts.non_rigorous })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Prop43Report {
    pub union: u64,
    pub w: u64,
    pub n: u64,
    pub length: u64,
    /// `(n l)^2 / (n l + 2 W)`.
    pub convexity_bound: Rational,
    pub holds: bool,
    /// `n l / (1 + 2 c max(n/l, n^eps))` with the caller's `c`; informational.
    pub asymptotic_shape: f64,
}

/// Check `|U| >= (n l)^2 / (n l + 2W)` exactly on a uniform-length family.
pub fn prop43_bound_audit(family: &APFamily, epsilon: &PosRational, c: f64) -> Result<Prop43Report> {
    let length = family
        .uniform_length()
        .ok_or_else(|| Error::Precondition("family lengths must agree".into()))?;
    let n = family.len() as u64;
    let union = union_census(family).cardinality();
    let w = w_count_family(family);
    let nl = n * length;
    let convexity_bound = rat(nl * nl, nl + 2 * w);
    let holds = int(union as i64) >= convexity_bound;
    let spread = (n as f64 / length as f64).max(libm::pow(n as f64, epsilon.to_f64()));
    Ok(Prop43Report {
        union,
        w,
        n,
        length,
        convexity_bound,
        holds,
        asymptotic_shape: nl as f64 / (1.0 + 2.0 * c * spread),
    })
}

/// Natural logarithms of the proof constants `c3(1/16k^3)`,
/// `c4(k) = c3^(2k)` and `c2(k) = (c4 / 4k)^(4k)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProofConstants {
    pub k: u64,
    pub ln_c3: f64,
    pub ln_c4: f64,
    pub ln_c2: f64,
}

/// Only `k = 1` is feasible: `k >= 2` needs primes up to `e^128`.
pub fn proof_constants(k: u64) -> Result<ProofConstants> {
    if k == 0 {
        return Err(Error::NotPositive("k"));
    }
    let delta = PosRational::new(BigInt::one(), BigInt::from(16 * k * k * k))?;
    let c3 = divisor_bound_constant(&delta)?;
    let ln_c4 = 2.0 * k as f64 * c3.ln_c3;
    let ln_c2 = 4.0 * k as f64 * (ln_c4 - libm::log(4.0 * k as f64));
    Ok(ProofConstants { k, ln_c3: c3.ln_c3, ln_c4, ln_c2 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{mult_table_card, mult_table_family, MULT_TABLE_BUDGET};

    fn eps(n: u64, d: u64) -> BoundConstants {
        BoundConstants::defaulted(PosRational::from_ratio(n, d).unwrap()).unwrap()
    }

    #[test]
    fn u2_exact_examples() {
        assert_eq!(u2_exact(1).unwrap().0, 2);
        assert_eq!(u2_exact(3).unwrap().0, 3);
        assert_eq!(u2_exact(10).unwrap().0, 5);
        assert_eq!(u2_exact(10).unwrap().1.union_size, 5);
    }

    #[test]
    fn box_examples() {
        let r = u_exact_in_box(&SearchBox::new(4, 4, 2, 2).unwrap(), 1 << 20).unwrap();
        assert_eq!(r.value, 3);
        assert_eq!(union_census(&r.witness).cardinality(), 3);
        let r = u_exact_in_box(&SearchBox::new(6, 4, 2, 3).unwrap(), 1 << 20).unwrap();
        assert_eq!(r.value, 4);
        assert!(!r.met_lower_bound);
        for l in 1..6 {
            let r = u_exact_in_box(&SearchBox::new(3, 3, 1, l).unwrap(), 1 << 20).unwrap();
            assert_eq!(r.value, l);
        }
    }

    #[test]
    fn box_rejects_small_diff_range() {
        assert!(SearchBox::new(4, 2, 3, 2).is_err());
    }

    #[test]
    fn box_budget() {
        let sbox = SearchBox::new(10, 10, 5, 4).unwrap();
        assert!(matches!(u_exact_in_box(&sbox, 10), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn heuristic_examples() {
        let r = u_upper_heuristic(8, 8, 5_000, 1).unwrap();
        assert!(r.cardinality <= mult_table_card(8, MULT_TABLE_BUDGET).unwrap());
        assert_eq!(union_census(&r.family).cardinality(), r.cardinality);
        let r = u_upper_heuristic(2, 2, 2_000, 9).unwrap();
        assert_eq!(r.cardinality, 3);
        assert_eq!(r.family.len(), 2);
    }

    #[test]
    fn theorem_bound_regimes() {
        let c = eps(1, 4);
        let b = theorem_bound(16, 2, &c).unwrap();
        assert_eq!(b.regime, Regime::Short);
        assert!((b.value - 4.0).abs() < 1e-12);
        assert!(b.non_rigorous);
        let b = theorem_bound(16, 16, &c).unwrap();
        assert_eq!(b.regime, Regime::Long);
        assert!((b.value - 128.0).abs() < 1e-9);
        let b = theorem_bound(16, 4, &c).unwrap();
        assert_eq!(b.regime, Regime::Middle);
        assert!((b.value - 16.0).abs() < 1e-12);
        // boundary l = n^(3/4) = 8
        assert_eq!(theorem_bound(16, 8, &c).unwrap().regime, Regime::Middle);
        let c = c.with_c1(0.5).unwrap();
        assert!(!c.non_rigorous);
        assert!((theorem_bound(16, 4, &c).unwrap().value - 8.0).abs() < 1e-12);
        assert!(theorem_bound(1, 4, &c).is_err());
    }

    #[test]
    fn theorem_bound_large_epsilon() {
        // eps = 3/4: never Short, and l = n^(1/4) = 2 ties into Middle.
        let c = eps(3, 4);
        assert_eq!(theorem_bound(16, 2, &c).unwrap().regime, Regime::Middle);
        assert_eq!(theorem_bound(16, 3, &c).unwrap().regime, Regime::Long);
        assert!(BoundConstants::defaulted(PosRational::one()).is_err());
    }

    #[test]
    fn prop43_examples() {
        let e = PosRational::from_ratio(1, 4).unwrap();
        let disjoint = APFamily::new(vec![
            ArithmeticProgression::integer(0, 1, 3).unwrap(),
            ArithmeticProgression::integer(100, 2, 3).unwrap(),
        ])
        .unwrap();
        let r = prop43_bound_audit(&disjoint, &e, 1.0).unwrap();
        assert_eq!(r.w, 0);
        assert_eq!(r.convexity_bound, int(6));
        assert!(r.holds);

        let fam = APFamily::new(vec![
            ArithmeticProgression::integer(0, 1, 3).unwrap(),
            ArithmeticProgression::integer(0, 2, 3).unwrap(),
        ])
        .unwrap();
        let r = prop43_bound_audit(&fam, &e, 1.0).unwrap();
        assert_eq!(r.union, 4);
        assert_eq!(r.convexity_bound, rat(36, 10));
        assert!(r.holds);

        let r = prop43_bound_audit(&mult_table_family(4).unwrap(), &e, 1.0).unwrap();
        assert_eq!(r.union, 9);
        assert!(r.holds);
    }

    #[test]
    fn proof_constants_only_for_k_one() {
        let p = proof_constants(1).unwrap();
        assert!(p.ln_c3 > 1000.0);
        assert!((p.ln_c4 - 2.0 * p.ln_c3).abs() < 1e-6);
        assert!(matches!(proof_constants(2), Err(Error::DeltaTooSmall { .. })));
    }
}
