//! Sums of gcd quotients `sum_{i<j} gcd(a_i, a_j) / a_j` and the Graham
//! quotient `max a_j / gcd(a_i, a_j)`.

use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::Zero;

use crate::arith::{gcd_u64, lcm_up_to, pillai_table, Rational};
use crate::{Error, Result};

fn check_increasing(a: &[u64]) -> Result<()> {
    if a.first() == Some(&0) {
        return Err(Error::NotPositive("a_1"));
    }
    if let Some(i) = a.windows(2).position(|w| w[0] >= w[1]) {
        return Err(Error::NotStrictlyIncreasing(i + 1));
    }
    Ok(())
}

/// Exact value of `sum_{1 <= i < j <= n} gcd(a_i, a_j) / a_j` by direct
/// enumeration of the pairs.
pub fn gcd_sum(a: &[u64]) -> Result<Rational> {
    Ok(gcd_sum_prefixes(a)?.pop().unwrap_or_else(Rational::zero))
}

/// The direct sum over every prefix: entry `j` is the value for `a[..=j]`.
pub fn gcd_sum_prefixes(a: &[u64]) -> Result<Vec<Rational>> {
    check_increasing(a)?;
    let mut out = Vec::with_capacity(a.len());
    let mut acc = Rational::zero();
    for (j, &aj) in a.iter().enumerate() {
        let inner: u64 = a[..j].iter().map(|&ai| gcd_u64(ai, aj)).sum();
        if inner > 0 {
            acc += Rational::new(BigInt::from(inner), BigInt::from(aj));
        }
        out.push(acc.clone());
    }
    Ok(out)
}

/// Work cap for the fast range sum, in units of `n`.
pub const FAST_RANGE_LIMIT: u64 = 1 << 24;

/// `S(n) = gcd_sum([1..n]) = sum_{j=2}^n (P(j) - j) / j` through Pillai's
/// function, summed over the common denominator `lcm(1..n)`.
pub fn gcd_sum_fast_range(n: u64) -> Result<Rational> {
    if n == 0 {
        return Err(Error::NotPositive("n"));
    }
    if n > FAST_RANGE_LIMIT {
        return Err(Error::BudgetExceeded {
            what: "gcd sum over 1..n",
            needed: n as u128,
            budget: FAST_RANGE_LIMIT as u128,
        });
    }
    let pillai = pillai_table(n as usize);
    let l = lcm_up_to(n);
    let mut numer = BigUint::zero();
    for j in 2..=n {
        let excess = pillai[j as usize] - j;
        numer += (&l / j) * excess;
    }
    Ok(Rational::new(BigInt::from(numer), BigInt::from(l)))
}

/// `S(1), ..., S(n)` from one Pillai table.
pub fn gcd_sum_fast_prefixes(n: u64) -> Result<Vec<Rational>> {
    if n == 0 {
        return Err(Error::NotPositive("n"));
    }
    let pillai = pillai_table(n as usize);
    let mut acc = Rational::zero();
    let mut out = Vec::with_capacity(n as usize);
    out.push(acc.clone());
    for j in 2..=n {
        acc += Rational::new(BigInt::from(pillai[j as usize] - j), BigInt::from(j));
        out.push(acc.clone());
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrahamQuotient {
    /// `max_{i<j} a_j / gcd(a_i, a_j)`.
    pub value: u64,
    /// Indices `(i, j)` of the first pair attaining it.
    pub pair: (usize, usize),
    /// Whether `value >= n`.
    pub meets_n: bool,
}

pub fn graham_quotient(a: &[u64]) -> Result<GrahamQuotient> {
    check_increasing(a)?;
    if a.len() < 2 {
        return Err(Error::Precondition("need at least two integers".into()));
    }
    let mut best = (0u64, (0usize, 1usize));
    for j in 1..a.len() {
        for i in 0..j {
            let q = a[j] / a[i].gcd(&a[j]);
            if q > best.0 {
                best = (q, (i, j));
            }
        }
    }
    Ok(GrahamQuotient { value: best.0, pair: best.1, meets_n: best.0 >= a.len() as u64 })
}

/// The averaging lower bound `n^(1-eps) / (2c)` on the Graham quotient
/// (informational, `c` caller supplied).
pub fn graham_average_bound(n: usize, epsilon: f64, c: f64) -> f64 {
    libm::pow(n as f64, 1.0 - epsilon) / (2.0 * c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn gcd_sum_examples() {
        assert_eq!(gcd_sum(&[1]).unwrap(), Rational::zero());
        assert_eq!(gcd_sum(&[1, 2, 3]).unwrap(), rat(7, 6));
        assert_eq!(gcd_sum(&[2, 4, 8]).unwrap(), rat(5, 4));
        assert_eq!(gcd_sum(&[]).unwrap(), Rational::zero());
    }

    #[test]
    fn gcd_sum_rejects_bad_input() {
        assert_eq!(gcd_sum(&[3, 2]), Err(Error::NotStrictlyIncreasing(1)));
        assert_eq!(gcd_sum(&[2, 2]), Err(Error::NotStrictlyIncreasing(1)));
        assert_eq!(gcd_sum(&[0, 2]), Err(Error::NotPositive("a_1")));
    }

    #[test]
    fn fast_range_small() {
        assert_eq!(gcd_sum_fast_range(1).unwrap(), Rational::zero());
        assert_eq!(gcd_sum_fast_range(3).unwrap(), rat(7, 6));
        let range: Vec<u64> = (1..=300).collect();
        let brute = gcd_sum_prefixes(&range).unwrap();
        let fast = gcd_sum_fast_prefixes(300).unwrap();
        assert_eq!(brute, fast);
        for n in [1u64, 2, 10, 97, 300] {
            assert_eq!(gcd_sum_fast_range(n).unwrap(), brute[n as usize - 1]);
        }
    }

    #[test]
    fn graham_examples() {
        let r: Vec<u64> = (1..=9).collect();
        let g = graham_quotient(&r).unwrap();
        assert_eq!(g.value, 9);
        assert_eq!(g.pair, (0, 8));
        assert!(g.meets_n);
        assert_eq!(graham_quotient(&[5, 10]).unwrap().value, 2);
        let g = graham_quotient(&[2, 3, 5]).unwrap();
        assert_eq!(g.value, 5);
        assert_eq!(g.pair, (0, 2));
        assert!(graham_quotient(&[4]).is_err());
    }
}
