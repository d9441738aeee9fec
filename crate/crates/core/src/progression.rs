//! Finite arithmetic progressions over the rationals.
//!
//! Intersections are computed by clearing denominators, solving the linear
//! congruence for the first common element and stepping by the lcm of the
//! (scaled) differences, so the cost per pair is logarithmic rather than
//! linear in the lengths.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::ToString;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use crate::arith::{int, rat, PosRational, Rational};
use crate::ratio::{in_rd, RatioBound};
use crate::{Error, Result};

/// `start + j * diff` for `j = 0 .. length`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ArithmeticProgression {
    start: Rational,
    diff: PosRational,
    length: u64,
}

impl ArithmeticProgression {
    pub fn new(start: Rational, diff: PosRational, length: u64) -> Result<Self> {
        if length == 0 {
            return Err(Error::NotPositive("length"));
        }
        Ok(ArithmeticProgression { start, diff, length })
    }

    /// Integer progression; `diff` must be positive.
    pub fn integer(start: i64, diff: u64, length: u64) -> Result<Self> {
        Self::new(int(start), PosRational::from_integer(diff)?, length)
    }

    pub fn start(&self) -> &Rational {
        &self.start
    }

    pub fn diff(&self) -> &PosRational {
        &self.diff
    }

    pub fn length(&self) -> u64 {
        self.length
    }

    pub fn last(&self) -> Rational {
        &self.start + self.diff.as_rational() * int((self.length - 1) as i64)
    }

    pub fn nth(&self, j: u64) -> Rational {
        &self.start + self.diff.as_rational() * Rational::from_integer(BigInt::from(j))
    }

    pub fn elements(&self) -> Vec<Rational> {
        (0..self.length).map(|j| self.nth(j)).collect()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let steps = (x - &self.start) / self.diff.as_rational();
        steps.is_integer()
            && !steps.is_negative()
            && steps.to_integer() < BigInt::from(self.length)
    }

    /// Integer difference, if the difference is integral.
    pub fn integer_diff(&self) -> Option<BigInt> {
        self.diff.is_integer().then(|| self.diff.numer().clone())
    }
}

/// Common elements of two progressions, as a progression; `None` if disjoint.
/// A single common element comes back with length 1 and the lcm step.
pub fn intersect(
    p: &ArithmeticProgression,
    q: &ArithmeticProgression,
) -> Option<ArithmeticProgression> {
    // Scale everything by a common denominator so both become integer APs.
    let scale = [
        p.start.denom(),
        p.diff.denom(),
        q.start.denom(),
        q.diff.denom(),
    ]
    .iter()
    .fold(BigInt::one(), |acc, d| acc.lcm(d));
    let lift = |r: &Rational| -> BigInt { (r * Rational::from_integer(scale.clone())).to_integer() };
    let (a1, b1) = (lift(&p.start), lift(p.diff.as_rational()));
    let (a2, b2) = (lift(&q.start), lift(q.diff.as_rational()));

    // x = a1 (mod b1), x = a2 (mod b2)
    let eg = b1.extended_gcd(&b2);
    let g = eg.gcd;
    let gap = &a2 - &a1;
    if !gap.is_multiple_of(&g) {
        return None;
    }
    let step = &b1 / &g * &b2;
    // a1 + b1 * t with b1 * t = gap (mod b2): t = (gap / g) * x (mod b2 / g)
    let m = &b2 / &g;
    let t = ((&gap / &g) * &eg.x).mod_floor(&m);
    let residue = (&a1 + &b1 * t).mod_floor(&step);

    let lo = a1.clone().max(a2.clone());
    let hi = (&a1 + &b1 * BigInt::from(p.length - 1)).min(&a2 + &b2 * BigInt::from(q.length - 1));
    // smallest x >= lo with x = residue (mod step)
    let first = &lo + (&residue - &lo).mod_floor(&step);
    if first > hi {
        return None;
    }
    let count = (&hi - &first) / &step + BigInt::one();
    let unscale = |x: BigInt| Rational::new(x, scale.clone());
    Some(ArithmeticProgression {
        start: unscale(first),
        diff: PosRational::try_from_rational(unscale(step)).expect("positive step"),
        length: count.to_u64().expect("count bounded by lengths"),
    })
}

/// Size of the intersection.
pub fn intersection_size(p: &ArithmeticProgression, q: &ArithmeticProgression) -> u64 {
    intersect(p, q).map_or(0, |r| r.length)
}

#[derive(Clone, Debug, PartialEq)]
pub struct IntersectionSizeReport {
    pub size: u64,
    /// `1 + l * gcd(q, q') / max(q, q')`.
    pub bound: Rational,
    pub holds: bool,
}

/// `|P ∩ P'| <= 1 + l gcd(q, q') / max(q, q')` for integer differences and a
/// common length `l`.
pub fn intersection_size_bound_check(
    p: &ArithmeticProgression,
    q: &ArithmeticProgression,
) -> Result<IntersectionSizeReport> {
    let dp = p.integer_diff().ok_or_else(|| Error::NonIntegerDifference(p.diff.to_string()))?;
    let dq = q.integer_diff().ok_or_else(|| Error::NonIntegerDifference(q.diff.to_string()))?;
    if p.length != q.length {
        return Err(Error::LengthMismatch(p.length, q.length));
    }
    let size = intersection_size(p, q);
    let bound = Rational::one()
        + Rational::new(BigInt::from(p.length) * dp.gcd(&dq), dp.clone().max(dq));
    let holds = Rational::from_integer(BigInt::from(size)) <= bound;
    Ok(IntersectionSizeReport { size, bound, holds })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionLemmaReport {
    /// Number of common elements `r`.
    pub common: u64,
    /// `floor((l - 1) / (r - 1))` when `r >= 2`.
    pub ratio_bound: Option<u64>,
    pub diff_ratio: PosRational,
    pub holds: bool,
}

/// If two length-`l` progressions share `r >= 2` elements, the ratio of their
/// differences lies in `R_{floor((l-1)/(r-1))}`.
pub fn lemma_intersection_check(
    p: &ArithmeticProgression,
    q: &ArithmeticProgression,
) -> Result<IntersectionLemmaReport> {
    if p.length != q.length {
        return Err(Error::LengthMismatch(p.length, q.length));
    }
    if p.length < 2 {
        return Err(Error::Precondition("progression length must be at least 2".into()));
    }
    let common = intersection_size(p, q);
    let diff_ratio = crate::arith::ratio_of(&p.diff, &q.diff);
    if common < 2 {
        return Ok(IntersectionLemmaReport { common, ratio_bound: None, diff_ratio, holds: true });
    }
    let bound = (p.length - 1) / (common - 1);
    let holds = u32::try_from(bound)
        .ok()
        .and_then(|b| RatioBound::new(b).ok())
        .map_or(false, |b| in_rd(&diff_ratio, b));
    Ok(IntersectionLemmaReport { common, ratio_bound: Some(bound), diff_ratio, holds })
}

/// Progressions with pairwise distinct differences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct APFamily {
    members: Vec<ArithmeticProgression>,
}

impl APFamily {
    pub fn new(members: Vec<ArithmeticProgression>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for m in &members {
            if !seen.insert(m.diff.clone()) {
                return Err(Error::DuplicateDifference(m.diff.to_string()));
            }
        }
        Ok(APFamily { members })
    }

    pub fn members(&self) -> &[ArithmeticProgression] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Sum of the lengths, `sum_x α(x)`.
    pub fn total_length(&self) -> u64 {
        self.members.iter().map(|m| m.length).sum()
    }

    /// Common length, if all members share one.
    pub fn uniform_length(&self) -> Option<u64> {
        let first = self.members.first()?.length;
        self.members.iter().all(|m| m.length == first).then_some(first)
    }

    /// Differences, all integral, in increasing order.
    pub fn integer_diffs(&self) -> Result<Vec<BigInt>> {
        let mut v = self
            .members
            .iter()
            .map(|m| m.integer_diff().ok_or_else(|| Error::NonIntegerDifference(m.diff.to_string())))
            .collect::<Result<Vec<_>>>()?;
        v.sort();
        Ok(v)
    }
}

/// Union of a family together with the multiplicity `α(x)` of every point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnionCensus {
    pub multiplicity: BTreeMap<Rational, u64>,
    /// `α` value -> number of points with that multiplicity.
    pub histogram: BTreeMap<u64, u64>,
}

impl UnionCensus {
    pub fn cardinality(&self) -> u64 {
        self.multiplicity.len() as u64
    }

    /// `sum_x C(α(x), 2)`.
    pub fn pair_incidences(&self) -> u64 {
        self.histogram.iter().map(|(&a, &c)| c * (a * a.saturating_sub(1) / 2)).sum()
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.histogram.iter().map(|(&a, &c)| a * c).sum()
    }
}

pub fn union_census(family: &APFamily) -> UnionCensus {
    let multiplicity = scaled_multiplicity(family).unwrap_or_else(|| {
        let mut multiplicity: BTreeMap<Rational, u64> = BTreeMap::new();
        for m in &family.members {
            for x in m.elements() {
                *multiplicity.entry(x).or_insert(0) += 1;
            }
        }
        multiplicity
    });
    let mut histogram = BTreeMap::new();
    for &a in multiplicity.values() {
        *histogram.entry(a).or_insert(0) += 1;
    }
    UnionCensus { multiplicity, histogram }
}

/// Multiplicities computed on the points scaled by the lcm of all
/// denominators, sorted as machine integers. `None` if a scaled point leaves
/// `i128`.
fn scaled_multiplicity(family: &APFamily) -> Option<BTreeMap<Rational, u64>> {
    let scale = family
        .members
        .iter()
        .flat_map(|m| [m.start.denom(), m.diff.denom()])
        .fold(BigInt::one(), |acc, d| acc.lcm(d));
    let lift = |r: &Rational| (r * Rational::from_integer(scale.clone())).to_integer().to_i128();
    let mut points: Vec<i128> = Vec::with_capacity(family.total_length() as usize);
    for m in &family.members {
        let a = lift(&m.start)?;
        let b = lift(m.diff.as_rational())?;
        b.checked_mul(i128::from(m.length - 1))?.checked_add(a)?;
        points.extend((0..m.length as i128).map(|j| a + j * b));
    }
    points.sort_unstable();
    let unscale = |x: i128| {
        if scale.is_one() {
            Rational::from_integer(BigInt::from(x))
        } else {
            Rational::new(BigInt::from(x), scale.clone())
        }
    };
    let mut runs: Vec<(Rational, u64)> = Vec::new();
    let mut i = 0;
    while i < points.len() {
        let x = points[i];
        let j = i + points[i..].iter().take_while(|&&y| y == x).count();
        runs.push((unscale(x), (j - i) as u64));
        i = j;
    }
    Some(runs.into_iter().collect())
}

/// `W = sum_{i1 < i2} |P_i1 ∩ P_i2|`.
pub fn w_count_family(family: &APFamily) -> u64 {
    let ms = &family.members;
    let mut w = 0;
    for (i, p) in ms.iter().enumerate() {
        for q in &ms[i + 1..] {
            w += intersection_size(p, q);
        }
    }
    w
}

/// `(sum |A_i|)^2 / sum_{i,j} |A_i ∩ A_j|`, a lower bound on the union size.
pub fn dawson_sankoff_bound(family: &APFamily) -> Result<Rational> {
    let total = family.total_length();
    if total == 0 {
        return Err(Error::Precondition("family has no elements".into()));
    }
    let denom = total + 2 * w_count_family(family);
    Ok(rat(total * total, denom))
}

/// `(n l)^2 / (n l + n^2 + 2 l sum_{i<j} gcd(a_i, a_j)/a_j)` for a family of
/// `n` length-`l` progressions with integer differences `a_1 < ... < a_n`.
pub fn gcd_union_bound(family: &APFamily) -> Result<Rational> {
    let l = family
        .uniform_length()
        .ok_or_else(|| Error::Precondition("family lengths must agree".into()))?;
    let diffs: Vec<u64> = family
        .integer_diffs()?
        .iter()
        .map(|d| d.to_u64().ok_or_else(|| Error::Precondition("difference exceeds u64".into())))
        .collect::<Result<_>>()?;
    let n = family.len() as u64;
    let gsum = crate::gcd_sum::gcd_sum(&diffs)?;
    let nl = Rational::from_integer(BigInt::from(n * l));
    let denom = &nl + int((n * n) as i64) + gsum * int(2 * l as i64);
    Ok(&nl * &nl / denom)
}
