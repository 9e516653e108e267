//! Small-integer number theory used across the crate.

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization `n = p_1^a_1 ... p_s^a_s`, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Number of distinct prime divisors.
pub fn distinct_prime_count(n: u64) -> usize {
    factorize(n).len()
}

pub fn pow_mod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1 % modulus;
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

/// Multiplicative inverse modulo a prime. `a` must be nonzero mod `p`.
pub fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a as u64, p as u64 - 2, p as u64) as u32
}

/// A prime modulus, checked at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u32);

impl Prime {
    pub fn new(p: u32) -> Result<Self> {
        if p > crate::MAX_MODULUS {
            return Err(Error::ModulusRange(p as u64));
        }
        if is_prime(p as u64) {
            Ok(Prime(p))
        } else {
            Err(Error::Modulus(p))
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn inv(self, a: u32) -> u32 {
        inv_mod(a, self.0)
    }
}

impl std::fmt::Display for Prime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

pub(crate) fn check_modulus(m: u64) -> Result<u32> {
    if (2..=crate::MAX_MODULUS as u64).contains(&m) {
        Ok(m as u32)
    } else {
        Err(Error::ModulusRange(m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorizations() {
        assert_eq!(factorize(2), vec![(2, 1)]);
        assert_eq!(factorize(12), vec![(2, 2), (3, 1)]);
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factorize(97), vec![(97, 1)]);
        assert!(factorize(1).is_empty());
    }

    #[test]
    fn inverses() {
        for p in [2u32, 3, 5, 7, 11, 65521] {
            for a in 1..p.min(200) {
                assert_eq!(a as u64 * inv_mod(a, p) as u64 % p as u64, 1);
            }
        }
    }

    #[test]
    fn prime_newtype() {
        assert!(Prime::new(4).is_err());
        assert_eq!(Prime::new(4), Err(Error::Modulus(4)));
        assert_eq!(Prime::new(5).unwrap().get(), 5);
    }
}
