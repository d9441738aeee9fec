//! Exact rationals and the elementary number-theoretic kernels shared by the
//! other modules.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Signed exact rational, always in lowest terms.
pub type Rational = BigRational;

/// An exact positive rational in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PosRational(Rational);

impl PosRational {
    pub fn new(num: BigInt, den: BigInt) -> Result<Self> {
        if !num.is_positive() {
            return Err(Error::NotPositive("numerator"));
        }
        if !den.is_positive() {
            return Err(Error::NotPositive("denominator"));
        }
        Ok(PosRational(Rational::new(num, den)))
    }

    pub fn from_ratio(num: u64, den: u64) -> Result<Self> {
        Self::new(BigInt::from(num), BigInt::from(den))
    }

    pub fn from_integer(n: u64) -> Result<Self> {
        Self::from_ratio(n, 1)
    }

    pub fn one() -> Self {
        PosRational(Rational::one())
    }

    pub fn try_from_rational(r: Rational) -> Result<Self> {
        if r.is_positive() {
            Ok(PosRational(r))
        } else {
            Err(Error::NotPositive("rational"))
        }
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn as_rational(&self) -> &Rational {
        &self.0
    }

    pub fn into_rational(self) -> Rational {
        self.0
    }

    pub fn recip(&self) -> Self {
        PosRational(self.0.recip())
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// Product of two positive rationals.
    pub fn mul(&self, other: &PosRational) -> PosRational {
        PosRational(&self.0 * &other.0)
    }

    /// Multiply by a positive integer.
    pub fn scale(&self, k: u64) -> PosRational {
        PosRational(&self.0 * Rational::from_integer(BigInt::from(k)))
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.0)
    }
}

impl fmt::Display for PosRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl FromStr for PosRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let r = parse_rational(s)?;
        PosRational::try_from_rational(r)
    }
}

/// Parse `"p/q"` or `"p"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Precondition(alloc::format!("cannot parse rational `{s}`"));
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

/// Exact quotient `a / b` in lowest terms.
pub fn ratio_of(a: &PosRational, b: &PosRational) -> PosRational {
    PosRational(&a.0 / &b.0)
}

/// Nearest-ish `f64` to an exact rational; only for report convenience.
pub fn rational_to_f64(r: &Rational) -> f64 {
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() {
            return n / d;
        }
    }
    // Huge operands: shift both down to keep 64 significant bits.
    let nb = r.numer().bits() as i64;
    let db = r.denom().bits() as i64;
    let shift_n = (nb - 64).max(0) as usize;
    let shift_d = (db - 64).max(0) as usize;
    let n = (r.numer() >> shift_n).to_f64().unwrap_or(0.0);
    let d = (r.denom() >> shift_d).to_f64().unwrap_or(1.0);
    n / d * libm::pow(2.0, (shift_n as f64) - (shift_d as f64))
}

/// Integer floor of the square root.
pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut x = libm::sqrt(n as f64) as u64;
    while x.checked_mul(x).map_or(true, |sq| sq > n) {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).is_some_and(|sq| sq <= n) {
        x += 1;
    }
    x
}

/// `floor(sqrt(p / q))` for positive integers, computed exactly.
pub fn floor_sqrt_ratio(p: u64, q: u64) -> u64 {
    // largest k with k^2 * q <= p
    let mut k = isqrt(p / q);
    while ((k + 1) as u128) * ((k + 1) as u128) * (q as u128) <= p as u128 {
        k += 1;
    }
    while k > 0 && (k as u128) * (k as u128) * (q as u128) > p as u128 {
        k -= 1;
    }
    k
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Number of divisors of `m`, by trial division.
pub fn divisor_count(m: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::NotPositive("m"));
    }
    let mut rest = m;
    let mut count = 1u64;
    let mut p = 2u64;
    while p.saturating_mul(p) <= rest {
        if rest % p == 0 {
            let mut e = 0;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            count *= 1 + e;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        count *= 2;
    }
    Ok(count)
}

/// `d(m)` for every `m <= n`; slot 0 is 0.
pub fn divisor_count_table(n: usize) -> Vec<u32> {
    let mut d = vec![0u32; n + 1];
    for i in 1..=n {
        for j in (i..=n).step_by(i) {
            d[j] += 1;
        }
    }
    d
}

/// All primes `<= n` by the sieve of Eratosthenes.
pub fn primes_up_to(n: usize) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

/// Euler's totient for `0..=n` by a linear sieve; slot 0 is 0, so the
/// values φ(1..n) are `&table[1..]`.
pub fn euler_phi_table(n: usize) -> Vec<u64> {
    let mut phi = vec![0u64; n + 1];
    if n == 0 {
        return phi;
    }
    phi[1] = 1;
    let mut primes: Vec<usize> = Vec::new();
    for i in 2..=n {
        if phi[i] == 0 {
            phi[i] = (i - 1) as u64;
            primes.push(i);
        }
        for &p in &primes {
            let ip = i * p;
            if ip > n {
                break;
            }
            if i % p == 0 {
                phi[ip] = phi[i] * p as u64;
                break;
            }
            phi[ip] = phi[i] * (p as u64 - 1);
        }
    }
    phi
}

/// Pillai's function `P(j) = sum_{i<=j} gcd(i, j) = sum_{d | j} d * φ(j/d)`
/// for `0..=n` (slot 0 is 0).
pub fn pillai_table(n: usize) -> Vec<u64> {
    let phi = euler_phi_table(n);
    let mut p = vec![0u64; n + 1];
    for d in 1..=n {
        for (q, j) in (d..=n).step_by(d).enumerate() {
            p[j] += d as u64 * phi[q + 1];
        }
    }
    p
}

/// `lcm(1, 2, ..., n)`.
pub fn lcm_up_to(n: u64) -> BigUint {
    let mut l = BigUint::one();
    for p in primes_up_to(n as usize) {
        let mut pk = p;
        while pk.checked_mul(p).is_some_and(|v| v <= n) {
            pk *= p;
        }
        l *= pk;
    }
    l
}

/// The constant `c3(delta)` with `d(m) < c3 * m^delta` for every `m >= 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct DivisorBoundParams {
    pub delta: PosRational,
    /// Largest prime entering the product (0 when the product is empty).
    pub largest_prime: u64,
    pub prime_count: usize,
    /// `ln c3`, always finite.
    pub ln_c3: f64,
    /// `c3` rounded one ulp upward; `+inf` when it overflows `f64`.
    pub c3: f64,
}

impl DivisorBoundParams {
    /// Whether `divisors < c3 * m^delta`, evaluated in floating point.
    /// Falls back to the logarithmic form when `c3` overflows.
    pub fn admits(&self, m: u64, divisors: u64) -> bool {
        let delta = self.delta.to_f64();
        if self.c3.is_finite() {
            (divisors as f64) < self.c3 * libm::pow(m as f64, delta)
        } else {
            libm::log(divisors as f64) < self.ln_c3 + delta * libm::log(m as f64)
        }
    }
}

/// Evaluate `c3(delta) = prod_{p prime, p <= e^(1/delta)} 1/(delta ln p)`.
///
/// Only `delta >= 1/16` is accepted; the prime range grows like `e^(1/delta)`
/// (already about 8.9 million at the guard).
pub fn divisor_bound_constant(delta: &PosRational) -> Result<DivisorBoundParams> {
    let guard = PosRational::from_ratio(1, 16)?;
    let d = delta.to_f64();
    if *delta < guard {
        return Err(Error::DeltaTooSmall {
            delta: delta.to_string(),
            prime_limit: alloc::format!("{:e}", libm::exp(1.0 / d)),
        });
    }
    // e^(1/delta) is irrational for rational delta, so the floor is unambiguous.
    let limit = libm::floor(libm::exp(1.0 / d)) as usize;
    let primes = primes_up_to(limit);
    let ln_c3: f64 = primes.iter().map(|&p| -libm::log(d * libm::log(p as f64))).sum();
    let c3 = libm::exp(ln_c3);
    let c3 = if c3.is_finite() { c3.next_up() } else { f64::INFINITY };
    Ok(DivisorBoundParams {
        delta: delta.clone(),
        largest_prime: primes.last().copied().unwrap_or(0),
        prime_count: primes.len(),
        ln_c3,
        c3,
    })
}

/// Sweep `d(m) < c3 * m^delta` over `1..=m_max`; returns the first failing
/// `m`, if any.
pub fn divisor_bound_sweep(params: &DivisorBoundParams, m_max: usize) -> Option<u64> {
    let table = divisor_count_table(m_max);
    (1..=m_max).find(|&m| !params.admits(m as u64, table[m] as u64)).map(|m| m as u64)
}

/// Positive integer helper for rationals built from `u64`.
pub(crate) fn rat(n: u64, d: u64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub(crate) fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pr(n: u64, d: u64) -> PosRational {
        PosRational::from_ratio(n, d).unwrap()
    }

    #[test]
    fn ratio_examples() {
        assert_eq!(ratio_of(&pr(4, 6), &pr(1, 3)), pr(2, 1));
        let x = pr(5, 7);
        assert_eq!(ratio_of(&x, &x), PosRational::one());
        assert_eq!(ratio_of(&pr(3, 2), &pr(9, 4)), pr(2, 3));
    }

    #[test]
    fn pos_rational_rejects_nonpositive() {
        assert!(PosRational::from_ratio(0, 3).is_err());
        assert!(PosRational::new(BigInt::from(1), BigInt::from(-2)).is_err());
        assert!("-3/4".parse::<PosRational>().is_err());
        assert_eq!("6/8".parse::<PosRational>().unwrap(), pr(3, 4));
    }

    #[test]
    fn divisor_count_examples() {
        assert_eq!(divisor_count(1).unwrap(), 1);
        assert_eq!(divisor_count(12).unwrap(), 6);
        assert_eq!(divisor_count(1 << 10).unwrap(), 11);
        assert_eq!(divisor_count(0), Err(Error::NotPositive("m")));
    }

    #[test]
    fn divisor_table_matches_trial_division() {
        let t = divisor_count_table(3000);
        for m in 1..=3000u64 {
            let brute = (1..=m).filter(|k| m % k == 0).count() as u32;
            assert_eq!(t[m as usize], brute);
            assert_eq!(divisor_count(m).unwrap(), brute as u64);
        }
    }

    #[test]
    fn phi_examples() {
        assert_eq!(&euler_phi_table(1)[1..], &[1]);
        let phi = euler_phi_table(500);
        assert_eq!(phi[6], 2);
        for n in 1..=500u64 {
            let brute = (1..=n).filter(|&i| gcd_u64(i, n) == 1).count() as u64;
            assert_eq!(phi[n as usize], brute);
        }
        assert_eq!(phi[1] + phi[2] + phi[3], 4);
    }

    #[test]
    fn pillai_matches_gcd_sum() {
        let p = pillai_table(400);
        assert_eq!(p[6], 15);
        for j in 1..=400u64 {
            let brute: u64 = (1..=j).map(|i| gcd_u64(i, j)).sum();
            assert_eq!(p[j as usize], brute);
        }
    }

    #[test]
    fn c3_values() {
        let one = divisor_bound_constant(&pr(1, 1)).unwrap();
        assert_eq!(one.largest_prime, 2);
        assert!((one.c3 - 1.0 / core::f64::consts::LN_2).abs() < 1e-12);
        let half = divisor_bound_constant(&pr(1, 2)).unwrap();
        assert_eq!(half.prime_count, 4);
        assert_eq!(half.largest_prime, 7);
        // prod over {2,3,5,7} of 1/(0.5 ln p), evaluated independently.
        assert!((half.c3 - 6.708926877119639).abs() < 1e-9);
        let quarter = divisor_bound_constant(&pr(1, 4)).unwrap();
        assert_eq!(quarter.largest_prime, 53);
        assert!((quarter.c3 - 1255.6841527653503).abs() < 1e-6);
    }

    #[test]
    fn c3_guard() {
        assert!(matches!(
            divisor_bound_constant(&pr(1, 17)),
            Err(Error::DeltaTooSmall { .. })
        ));
    }

    #[test]
    fn c3_small_sweep() {
        for delta in [pr(1, 1), pr(1, 2), pr(1, 4)] {
            let params = divisor_bound_constant(&delta).unwrap();
            assert_eq!(divisor_bound_sweep(&params, 100_000), None);
        }
    }

    #[test]
    fn isqrt_edges() {
        for n in 0..10_000u64 {
            let r = isqrt(n);
            assert!(r * r <= n && (r + 1) * (r + 1) > n);
        }
        assert_eq!(isqrt(u64::MAX), u32::MAX as u64);
        assert_eq!(floor_sqrt_ratio(16, 9), 1);
        assert_eq!(floor_sqrt_ratio(1, 4), 0);
        assert_eq!(floor_sqrt_ratio(36, 4), 3);
    }

    #[test]
    fn lcm_small() {
        assert_eq!(lcm_up_to(10), BigUint::from(2520u32));
        assert_eq!(lcm_up_to(1), BigUint::one());
    }

    #[test]
    fn to_f64_huge() {
        let big = Rational::new(BigInt::from(3) << 2000usize, BigInt::from(1) << 1999usize);
        assert!((rational_to_f64(&big) - 6.0).abs() < 1e-12);
    }
}
