use serde::Serialize;

use crate::arith::distinct_prime_count;
use crate::error::{Error, Result};
use crate::verdict::Status;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OddtownReport {
    pub status: Status,
    pub n: usize,
    pub modulus: u32,
    /// Number of pairs.
    pub m: usize,
    /// Number of distinct primes dividing the modulus.
    pub s: usize,
    /// `s n`.
    pub bound: usize,
    /// First `(i, j)` breaking the premise: `i == j` with a divisible
    /// diagonal intersection, or `i != j` with a non-divisible one.
    pub premise_witness: Option<(usize, usize)>,
}

fn intersection_size(a: &[bool], b: &[usize]) -> usize {
    b.iter().filter(|&&x| a[x]).count()
}

/// Checks `m <= s n` for pairs `(A_i, B_i)` with `l ∤ |A_i ∩ B_i|` and
/// `l | |A_i ∩ B_j|` for `i != j`.
pub fn oddtown_pairs_check(
    n: usize,
    pairs: &[(Vec<usize>, Vec<usize>)],
    modulus: u32,
) -> Result<OddtownReport> {
    if modulus < 2 {
        return Err(Error::Argument("oddtown check needs modulus >= 2".into()));
    }
    let mut indicators = Vec::with_capacity(pairs.len());
    for (a, b) in pairs {
        if let Some(&bad) = a.iter().chain(b).find(|&&x| x >= n) {
            return Err(Error::Shape(format!(
                "coordinate {bad} outside ground set of size {n}"
            )));
        }
        let mut ind = vec![false; n];
        for &x in a {
            ind[x] = true;
        }
        indicators.push(ind);
    }
    let m = modulus as usize;
    let mut premise_witness = None;
    'outer: for (i, ind) in indicators.iter().enumerate() {
        for (j, (_, b)) in pairs.iter().enumerate() {
            let divisible = intersection_size(ind, b).is_multiple_of(m);
            if divisible == (i == j) {
                premise_witness = Some((i, j));
                break 'outer;
            }
        }
    }
    let s = distinct_prime_count(modulus as u64);
    let bound = s * n;
    let status = if premise_witness.is_some() {
        Status::NotApplicable
    } else {
        Status::from_bool(pairs.len() <= bound)
    };
    Ok(OddtownReport {
        status,
        n,
        modulus,
        m: pairs.len(),
        s,
        bound,
        premise_witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn singletons_are_tight() {
        let pairs: Vec<_> = (0..5).map(|i| (vec![i], vec![i])).collect();
        let r = oddtown_pairs_check(5, &pairs, 2).unwrap();
        assert_eq!(r.status, Status::Holds);
        assert_eq!((r.m, r.bound), (5, 5));
    }

    #[test]
    fn two_primes_double_the_bound() {
        // each singleton pair works for both prime-power parts of 6
        let pairs: Vec<_> = (0..3).map(|i| (vec![i], vec![i])).collect();
        let r = oddtown_pairs_check(3, &pairs, 6).unwrap();
        assert_eq!((r.s, r.bound, r.status), (2, 6, Status::Holds));
    }

    #[test]
    fn premise_violation() {
        let pairs = vec![(vec![0], vec![0]), (vec![0, 1], vec![1])];
        let r = oddtown_pairs_check(2, &pairs, 2).unwrap();
        assert_eq!(r.status, Status::NotApplicable);
        assert_eq!(r.premise_witness, Some((1, 0)));
    }
}
