use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Serialize, Serializer};

use crate::arith::factorize;
use crate::error::{Error, Result};

fn as_decimal<S: Serializer>(k: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&k.to_str_radix(10))
}

/// Closure order sufficient for the sharp `2^{floor(n/l)}` bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KThreshold {
    pub l: u64,
    /// `l = prod p_r^{alpha_r}`, primes ascending.
    pub factorization: Vec<(u64, u32)>,
    /// `12 l sum alpha_r`.
    pub t: u64,
    /// `2^(t+1) max (p_r + alpha_r)`, serialized as a decimal string.
    #[serde(serialize_with = "as_decimal")]
    pub k: BigUint,
}

fn max_p_plus_alpha(factorization: &[(u64, u32)]) -> u64 {
    factorization
        .iter()
        .map(|&(p, a)| p + a as u64)
        .max()
        .unwrap_or(0)
}

fn order(t: u64, factorization: &[(u64, u32)]) -> Result<BigUint> {
    let shift =
        usize::try_from(t + 1).map_err(|_| Error::Argument(format!("exponent {t} too large")))?;
    Ok((BigUint::from(1u32) << shift) * BigUint::from(max_p_plus_alpha(factorization)))
}

pub fn compute_k_threshold(l: u64) -> Result<KThreshold> {
    if l < 2 {
        return Err(Error::Argument(format!("l must be at least 2, got {l}")));
    }
    let factorization = factorize(l);
    let alpha_sum: u64 = factorization.iter().map(|&(_, a)| a as u64).sum();
    let t = 12 * l * alpha_sum;
    let k = order(t, &factorization)?;
    Ok(KThreshold {
        l,
        factorization,
        t,
        k,
    })
}

/// A positive rational `num / den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Epsilon {
    pub num: u64,
    pub den: u64,
}

impl Epsilon {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if num == 0 || den == 0 {
            return Err(Error::Argument(
                "epsilon must be a positive rational".into(),
            ));
        }
        let g = gcd(num, den);
        Ok(Epsilon {
            num: num / g,
            den: den / g,
        })
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl FromStr for Epsilon {
    type Err = Error;

    /// Accepts `3`, `1/4` or `0.25`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Argument(format!("`{s}` is not a positive rational"));
        let s = s.trim();
        if let Some((a, b)) = s.split_once('/') {
            return Epsilon::new(
                a.trim().parse().map_err(|_| bad())?,
                b.trim().parse().map_err(|_| bad())?,
            );
        }
        if let Some((int, frac)) = s.split_once('.') {
            if frac.len() > 18 || !frac.chars().all(|c| c.is_ascii_digit()) {
                return Err(bad());
            }
            let den = 10u64.pow(frac.len() as u32);
            let int: u64 = if int.is_empty() {
                0
            } else {
                int.parse().map_err(|_| bad())?
            };
            let frac_val: u64 = if frac.is_empty() {
                0
            } else {
                frac.parse().map_err(|_| bad())?
            };
            let num = int
                .checked_mul(den)
                .and_then(|x| x.checked_add(frac_val))
                .ok_or_else(bad)?;
            return Epsilon::new(num, den);
        }
        Epsilon::new(s.parse().map_err(|_| bad())?, 1)
    }
}

impl fmt::Display for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Closure order for the projection-stability statement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabThreshold {
    pub l: u64,
    pub epsilon: Epsilon,
    pub factorization: Vec<(u64, u32)>,
    /// `ceil(6 sum alpha_r / epsilon)`.
    pub t: u64,
    #[serde(serialize_with = "as_decimal")]
    pub k: BigUint,
}

pub fn compute_stab_threshold(l: u64, epsilon: Epsilon) -> Result<StabThreshold> {
    if l < 2 {
        return Err(Error::Argument(format!("l must be at least 2, got {l}")));
    }
    let factorization = factorize(l);
    let alpha_sum: u128 = factorization.iter().map(|&(_, a)| a as u128).sum();
    let num = 6 * alpha_sum * epsilon.den as u128;
    let t = num.div_ceil(epsilon.num as u128);
    let t = u64::try_from(t).map_err(|_| Error::Argument("epsilon too small".into()))?;
    let k = order(t, &factorization)?;
    Ok(StabThreshold {
        l,
        epsilon,
        factorization,
        t,
        k,
    })
}
