//! Modular combinatorics: binomial and multinomial coefficients mod p via
//! p-digit (Lucas) arithmetic, the Steenrod-decomposability criterion and
//! the d = l·p^t characterization.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Deterministic trial-division primality check. Inputs are small
/// (p <= 10^6 in practice).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// A prime power p^m used as a coefficient modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimePower {
    p: u64,
    m: u32,
}

impl PrimePower {
    pub fn new(p: u64, m: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        assert!(m >= 1, "exponent must be positive");
        Ok(PrimePower { p, m })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn modulus(&self) -> BigInt {
        BigInt::from(self.p).pow(self.m)
    }
}

/// Factorial table mod p for Lucas-style digit arithmetic.
struct FactorialsModP {
    p: u64,
    fac: Vec<u64>,
}

impl FactorialsModP {
    fn new(p: u64) -> Self {
        let mut fac = vec![1u64; p as usize];
        for i in 1..p as usize {
            fac[i] = fac[i - 1] * i as u64 % p;
        }
        FactorialsModP { p, fac }
    }

    fn inv(&self, a: u64) -> u64 {
        // Fermat inverse; a != 0 mod p
        mod_pow(a, self.p - 2, self.p)
    }

    /// binom(n, k) mod p for digits n, k < p.
    fn binom_digit(&self, n: u64, k: u64) -> u64 {
        if k > n {
            return 0;
        }
        self.fac[n as usize] * self.inv(self.fac[k as usize] * self.fac[(n - k) as usize] % self.p)
            % self.p
    }
}

fn mod_pow(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

/// binom(n, k) mod p by Lucas' theorem (0 when k > n).
pub fn binom_mod_p(mut n: u64, mut k: u64, p: u64) -> u64 {
    debug_assert!(is_prime(p));
    let tables = FactorialsModP::new(p);
    let mut acc = 1u64;
    while k > 0 || n > 0 {
        let nd = n % p;
        let kd = k % p;
        acc = acc * tables.binom_digit(nd, kd) % p;
        if acc == 0 {
            return 0;
        }
        n /= p;
        k /= p;
    }
    acc
}

/// Multinomial coefficient (top; parts..., top−Σparts) mod p, computed as a
/// product of Lucas binomials rather than by factorial evaluation.
pub fn multinom_mod_p(top: u64, parts: &[u64], p: u64) -> Result<u64> {
    let sum: u64 = parts.iter().sum();
    if sum > top {
        return Err(Error::PartsExceedTop { top, sum });
    }
    let mut remaining = top;
    let mut acc = 1u64;
    for &part in parts {
        acc = acc * binom_mod_p(remaining, part, p) % p;
        remaining -= part;
        if acc == 0 {
            return Ok(0);
        }
    }
    Ok(acc)
}

/// The Steenrod-image leading coefficient binom(d − kp + k − 1, k) mod p.
/// Zero when d − kp + k − 1 < k.
pub fn stch_coefficient(d: u64, k: u64, p: u64) -> Result<u64> {
    let max = d / p;
    if k == 0 || k > max {
        return Err(Error::IndexOutOfRange { k, max });
    }
    let n = d - k * p + k - 1; // >= k - 1 since d >= kp
    Ok(binom_mod_p(n, k, p))
}

/// True iff some k in [1, ⌊d/p⌋] has a non-vanishing Steenrod coefficient;
/// returns the least witness.
pub fn stch_decomposable(d: u64, p: u64) -> Option<u64> {
    debug_assert!(d >= 1);
    (1..=d / p).find(|&k| stch_coefficient(d, k, p).unwrap() != 0)
}

/// Writes d = l·p^t with 1 <= l < p if possible (unique when it exists).
pub fn l_power_form(d: u64, p: u64) -> Option<(u64, u32)> {
    debug_assert!(d >= 1);
    let mut l = d;
    let mut t = 0u32;
    while l % p == 0 {
        l /= p;
        t += 1;
    }
    if l < p {
        Some((l, t))
    } else {
        None
    }
}

/// True iff adding a and b in base p produces a carry; by Kummer's theorem
/// this is equivalent to p | binom(a+b, a).
pub fn base_p_addition_carries(mut a: u64, mut b: u64, p: u64) -> bool {
    let mut carry = 0u64;
    while a > 0 || b > 0 || carry > 0 {
        let s = a % p + b % p + carry;
        if s >= p {
            return true;
        }
        carry = 0;
        a /= p;
        b /= p;
    }
    false
}

/// Inverse of `a` modulo `modulus` (extended gcd); None when not coprime.
pub fn mod_inverse(a: &BigInt, modulus: &BigInt) -> Option<BigInt> {
    let egcd = num_integer::Integer::extended_gcd(a, modulus);
    if !egcd.gcd.is_one() {
        return None;
    }
    let mut x = egcd.x % modulus;
    if x.is_negative() {
        x += modulus;
    }
    Some(x)
}

/// Exact big-integer binomial for oracle comparisons.
pub fn binom_exact(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for j in 1..=k {
        acc *= n - k + j;
        acc /= j;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(is_prime(2));
        assert!(is_prime(13));
        assert!(!is_prime(1));
        assert!(!is_prime(91));
        assert!(PrimePower::new(4, 1).is_err());
        assert_eq!(PrimePower::new(3, 2).unwrap().modulus(), BigInt::from(9));
    }

    #[test]
    fn multinomial_examples() {
        assert_eq!(multinom_mod_p(3, &[1], 2).unwrap(), 1);
        assert_eq!(multinom_mod_p(2, &[1], 2).unwrap(), 0);
        assert_eq!(multinom_mod_p(2, &[1, 1], 3).unwrap(), 2);
        assert!(matches!(
            multinom_mod_p(2, &[2, 1], 3),
            Err(Error::PartsExceedTop { .. })
        ));
    }

    #[test]
    fn stch_coefficient_examples() {
        assert_eq!(stch_coefficient(3, 1, 2).unwrap(), 1);
        assert_eq!(stch_coefficient(4, 1, 2).unwrap(), 0);
        assert_eq!(stch_coefficient(7, 1, 3).unwrap(), 1);
        assert!(matches!(
            stch_coefficient(7, 3, 3),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn decomposability_examples() {
        assert_eq!(stch_decomposable(3, 2), Some(1));
        assert_eq!(stch_decomposable(4, 2), None);
        assert_eq!(stch_decomposable(7, 3), Some(1));
    }

    #[test]
    fn l_power_form_examples() {
        assert_eq!(l_power_form(3, 5), Some((3, 0)));
        assert_eq!(l_power_form(50, 5), Some((2, 2)));
        assert_eq!(l_power_form(12, 5), None);
    }

    #[test]
    fn kummer_small() {
        // binom(2,1) = 2: adding 1+1 in base 2 carries
        assert!(base_p_addition_carries(1, 1, 2));
        assert!(!base_p_addition_carries(1, 2, 2));
    }

    #[test]
    fn inverse() {
        let inv = mod_inverse(&BigInt::from(2), &BigInt::from(5)).unwrap();
        assert_eq!(inv, BigInt::from(3));
        assert!(mod_inverse(&BigInt::from(3), &BigInt::from(9)).is_none());
    }
}
