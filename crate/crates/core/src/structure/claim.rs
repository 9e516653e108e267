use serde::{Serialize, Serializer};

use crate::arith::Prime;
use crate::error::{Error, Result};
use crate::linalg::{express_in, Echelon, ModVector};

/// Which branch of the case analysis produced a resolution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClaimCase {
    /// Some `k` with `w_k(c) != 0` lies outside the chosen basis subset.
    OutsideBasis,
    /// Every such `k` is in the basis subset and one of them has `lambda_{c,k} = 0`.
    ZeroCoefficient,
    /// Every such `k` is in the basis subset with `lambda_{c,k} != 0`.
    Combined,
}

impl ClaimCase {
    pub fn number(self) -> u8 {
        match self {
            ClaimCase::OutsideBasis => 1,
            ClaimCase::ZeroCoefficient => 2,
            ClaimCase::Combined => 3,
        }
    }
}

impl Serialize for ClaimCase {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u8(self.number())
    }
}

/// Output of the case analysis for one position `c` of `C`:
/// `1_c + alpha 1_{c'} = (sum x(i) w_i) · (sum y(i) w_i)` with `x`, `y`
/// supported on disjoint index sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaimResolution {
    pub case: ClaimCase,
    /// Position in `C` being resolved.
    pub c: usize,
    /// Partner position; absent only when `|C| = 1` (then `alpha = 0`).
    pub c_prime: Option<usize>,
    pub alpha: u32,
    /// The multiplier `-lambda_{c,k} / lambda_{c',k}` of the combined case.
    pub beta: Option<u32>,
    /// Row index carrying `y`.
    pub k: usize,
    pub x: Vec<u32>,
    pub y: Vec<u32>,
}

/// Precomputed data shared by every `c` of one instance: the restricted
/// rows, a greedy leftmost basis subset of them, and the coefficients of
/// each unit vector in that basis.
pub(crate) struct ClaimContext {
    prime: Prime,
    w: Vec<ModVector>,
    /// Row indices of the basis subset, ascending.
    basis_rows: Vec<usize>,
    /// `lambda[u][j]`: coefficient of `w_{basis_rows[j]}` in `1_u`.
    lambda: Vec<Vec<u32>>,
}

impl ClaimContext {
    pub(crate) fn new(prime: Prime, w: Vec<ModVector>) -> Result<Self> {
        let r = w.first().map_or(0, ModVector::len);
        if let Some(bad) = w
            .iter()
            .find(|v| v.len() != r || v.modulus() != prime.get())
        {
            return Err(Error::shape(format!(
                "restricted row over Z_{} of length {} where F_{prime}^{r} was expected",
                bad.modulus(),
                bad.len()
            )));
        }
        let mut echelon = Echelon::new(prime, r);
        for v in &w {
            echelon.insert(v)?;
        }
        if echelon.rank() != r {
            return Err(Error::Structure(format!(
                "restricted rows span a space of dimension {} inside F^{r}",
                echelon.rank()
            )));
        }
        let basis_rows = echelon.accepted().to_vec();
        let generators: Vec<ModVector> = basis_rows.iter().map(|&i| w[i].clone()).collect();
        let mut lambda = Vec::with_capacity(r);
        for u in 0..r {
            let unit = ModVector::indicator(prime.get(), r, [u])?;
            lambda.push(express_in(prime, &unit, &generators)?.expect("generators span the space"));
        }
        Ok(ClaimContext {
            prime,
            w,
            basis_rows,
            lambda,
        })
    }

    fn position_in_basis(&self, row: usize) -> Option<usize> {
        self.basis_rows.iter().position(|&b| b == row)
    }

    pub(crate) fn resolve(&self, c: usize) -> Result<ClaimResolution> {
        let p = self.prime.get();
        let d = self.w.len();
        let r = self.lambda.len();
        if c >= r {
            return Err(Error::Argument(format!(
                "position {c} outside C of size {r}"
            )));
        }
        let support: Vec<usize> = (0..d).filter(|&i| self.w[i].get(c) != 0).collect();
        if support.len() < 2 {
            return Err(Error::Structure(format!(
                "column {c} has {} nonzero entries; at least two are required",
                support.len()
            )));
        }
        let lam = |u: usize, row: usize| self.position_in_basis(row).map(|j| self.lambda[u][j]);
        let expand = |coeffs: &[u32]| {
            let mut x = vec![0u32; d];
            for (j, &row) in self.basis_rows.iter().enumerate() {
                x[row] = coeffs[j];
            }
            x
        };
        let unit_y = |k: usize| {
            let mut y = vec![0u32; d];
            y[k] = self.prime.inv(self.w[k].get(c));
            y
        };
        let default_partner = (0..r).find(|&u| u != c);

        let outside = support
            .iter()
            .copied()
            .find(|&k| self.position_in_basis(k).is_none());
        let zero_coeff = support.iter().copied().find(|&k| lam(c, k) == Some(0));
        let resolution = if let Some(k) = outside.or(zero_coeff) {
            ClaimResolution {
                case: if outside.is_some() {
                    ClaimCase::OutsideBasis
                } else {
                    ClaimCase::ZeroCoefficient
                },
                c,
                c_prime: default_partner,
                alpha: 0,
                beta: None,
                k,
                x: expand(&self.lambda[c]),
                y: unit_y(k),
            }
        } else {
            let (c_prime, k) = (0..r)
                .filter(|&u| u != c)
                .find_map(|u| {
                    support
                        .iter()
                        .find(|&&k| lam(u, k) != Some(0))
                        .map(|&k| (u, k))
                })
                .ok_or_else(|| {
                    Error::Structure(format!("no partner coordinate for position {c}"))
                })?;
            let lc = lam(c, k).expect("k in basis");
            let lcp = lam(c_prime, k).expect("k in basis");
            let beta = ((p - lc) as u64 * self.prime.inv(lcp) as u64 % p as u64) as u32;
            let combined: Vec<u32> = self.lambda[c]
                .iter()
                .zip(&self.lambda[c_prime])
                .map(|(&a, &b)| ((a as u64 + beta as u64 * b as u64) % p as u64) as u32)
                .collect();
            let alpha = (beta as u64 * self.w[k].get(c_prime) as u64 % p as u64
                * self.prime.inv(self.w[k].get(c)) as u64
                % p as u64) as u32;
            ClaimResolution {
                case: ClaimCase::Combined,
                c,
                c_prime: Some(c_prime),
                alpha,
                beta: Some(beta),
                k,
                x: expand(&combined),
                y: unit_y(k),
            }
        };
        self.verify(&resolution)?;
        Ok(resolution)
    }

    fn combine(&self, coeffs: &[u32]) -> ModVector {
        let r = self.lambda.len();
        let mut out = ModVector::zeros(self.prime.get(), r).expect("valid modulus");
        for (v, &a) in self.w.iter().zip(coeffs) {
            out.add_scaled(a, v).expect("same shape");
        }
        out
    }

    fn verify(&self, res: &ClaimResolution) -> Result<()> {
        let lhs = self.combine(&res.x).hadamard(&self.combine(&res.y))?;
        let mut rhs = ModVector::indicator(self.prime.get(), self.lambda.len(), [res.c])?;
        if let Some(cp) = res.c_prime {
            rhs.set(cp, res.alpha)?;
        }
        let disjoint = res.x.iter().zip(&res.y).all(|(&a, &b)| a == 0 || b == 0);
        if lhs != rhs || !disjoint {
            return Err(Error::Structure(format!(
                "case analysis for position {} failed its own check",
                res.c
            )));
        }
        Ok(())
    }
}

/// Resolves position `c` of `C` given the restricted rows `w_1..w_d`, which
/// must span `F_p^{|C|}`. The basis subset is chosen greedily from the left
/// and every candidate index is scanned in ascending order, so the output is
/// deterministic.
pub fn claim_c_prime(c: usize, w: &[ModVector], prime: Prime) -> Result<ClaimResolution> {
    ClaimContext::new(prime, w.to_vec())?.resolve(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(p: u32, data: &[&[u32]]) -> Vec<ModVector> {
        data.iter()
            .map(|r| ModVector::from_residues(p, r).unwrap())
            .collect()
    }

    #[test]
    fn single_column() {
        let w = rows(5, &[&[1], &[3]]);
        let res = claim_c_prime(0, &w, Prime::new(5).unwrap()).unwrap();
        assert_eq!(res.case, ClaimCase::OutsideBasis);
        assert_eq!(res.c_prime, None);
        assert_eq!(res.x, vec![1, 0]);
        assert_eq!(res.y, vec![0, 2]);
    }

    #[test]
    fn rejects_single_nonzero() {
        let w = rows(3, &[&[1, 0], &[0, 1], &[0, 1]]);
        assert!(matches!(
            claim_c_prime(0, &w, Prime::new(3).unwrap()),
            Err(Error::Structure(_))
        ));
    }

    #[test]
    fn rejects_non_spanning() {
        let w = rows(3, &[&[1, 1], &[2, 2]]);
        assert!(matches!(
            claim_c_prime(0, &w, Prime::new(3).unwrap()),
            Err(Error::Structure(_))
        ));
    }
}
