use std::collections::HashMap;

use num_bigint::BigUint;
use serde::{Serialize, Serializer};

use crate::arith::{factorize, Prime};
use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::linalg::ModVector;
use crate::verdict::Status;

fn as_decimal<S: Serializer>(k: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&k.to_str_radix(10))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossReport {
    pub status: Status,
    pub n: usize,
    pub k: usize,
    pub modulus: u32,
    pub sizes: Vec<usize>,
    #[serde(serialize_with = "as_decimal")]
    pub product: BigUint,
    /// `2^((k-1) n)`.
    #[serde(serialize_with = "as_decimal")]
    pub bound: BigUint,
    pub equality: bool,
    /// One member per family, as index sets, whose common intersection has
    /// size not divisible by the modulus.
    pub premise_witness: Option<Vec<Vec<usize>>>,
    /// Smallest prime dividing the modulus.
    pub prime: u32,
    /// `dim <F_i>_p` for each family.
    pub dims: Vec<usize>,
    pub dim_sum: usize,
    /// `(k-1) n`.
    pub dim_bound: usize,
}

/// Searches for a choice `F_1 ∈ 𝓕_1, ..., F_k ∈ 𝓕_k` with non-divisible
/// intersection. Only distinct running intersections are carried from one
/// family to the next.
fn cross_premise_witness(families: &[SetFamily], m: usize) -> Result<Option<Vec<usize>>> {
    let n = families[0].ground_size();
    let mut frontier: Vec<(ModVector, Vec<usize>)> = vec![(ModVector::ones(2, n)?, Vec::new())];
    for fam in families {
        let mut seen: HashMap<ModVector, usize> = HashMap::new();
        let mut next: Vec<(ModVector, Vec<usize>)> = Vec::new();
        for (acc, trail) in &frontier {
            for (j, member) in fam.iter().enumerate() {
                let y = acc.hadamard(member)?;
                if seen.contains_key(&y) {
                    continue;
                }
                seen.insert(y.clone(), next.len());
                let mut t = trail.clone();
                t.push(j);
                next.push((y, t));
            }
        }
        frontier = next;
    }
    Ok(frontier
        .into_iter()
        .find(|(v, _)| v.weight() % m != 0)
        .map(|(_, t)| t))
}

/// Checks `|𝓕_1| ... |𝓕_k| <= 2^((k-1) n)` for families whose cross
/// `k`-wise intersections all have size divisible by the modulus, together
/// with the dimension inequality `sum dim <𝓕_i>_p <= (k-1) n` that implies it.
pub fn cross_product_bound_check(families: &[SetFamily], modulus: u32) -> Result<CrossReport> {
    if families.len() < 2 {
        return Err(Error::Argument(
            "cross check needs at least two families".into(),
        ));
    }
    if modulus < 2 {
        return Err(Error::Argument("cross check needs modulus >= 2".into()));
    }
    let n = families[0].ground_size();
    if let Some(f) = families.iter().find(|f| f.ground_size() != n) {
        return Err(Error::Shape(format!(
            "families over {n} and {} coordinates",
            f.ground_size()
        )));
    }
    let k = families.len();
    let sizes: Vec<usize> = families.iter().map(SetFamily::len).collect();
    let product = sizes
        .iter()
        .fold(BigUint::from(1u32), |acc, &s| acc * BigUint::from(s));
    let bound = BigUint::from(1u32) << ((k - 1) * n);
    let prime = factorize(modulus as u64)[0].0 as u32;
    let p = Prime::new(prime)?;
    let dims = families
        .iter()
        .map(|f| f.dim_span(p))
        .collect::<Result<Vec<_>>>()?;
    let dim_sum = dims.iter().sum();
    let dim_bound = (k - 1) * n;
    let premise_witness = cross_premise_witness(families, modulus as usize)?.map(|t| {
        t.iter()
            .zip(families)
            .map(|(&j, f)| f.members()[j].support())
            .collect()
    });
    let status = if premise_witness.is_some() {
        Status::NotApplicable
    } else {
        Status::from_bool(product <= bound && dim_sum <= dim_bound)
    };
    Ok(CrossReport {
        status,
        n,
        k,
        modulus,
        sizes,
        equality: product == bound,
        product,
        bound,
        premise_witness,
        prime,
        dims,
        dim_sum,
        dim_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{consecutive_parts, cross_extremal_families};

    #[test]
    fn extremal_construction_is_tight() {
        let fams = cross_extremal_families(3, &consecutive_parts(&[1, 1, 1])).unwrap();
        let r = cross_product_bound_check(&fams, 3).unwrap();
        assert_eq!(r.status, Status::Holds);
        assert!(r.equality);
        assert_eq!(r.product, BigUint::from(64u32));
        assert_eq!(r.dim_sum, r.dim_bound);
    }

    #[test]
    fn empty_set_families() {
        let f = SetFamily::empty_set_only(4);
        let r = cross_product_bound_check(&[f.clone(), f], 2).unwrap();
        assert_eq!(r.status, Status::Holds);
        assert_eq!(r.product, BigUint::from(1u32));
        assert_eq!(r.bound, BigUint::from(16u32));
        assert!(!r.equality);
    }

    #[test]
    fn premise_failure() {
        let f = SetFamily::from_sets(2, [vec![0]]).unwrap();
        let r = cross_product_bound_check(&[f.clone(), f], 2).unwrap();
        assert_eq!(r.status, Status::NotApplicable);
        assert_eq!(r.premise_witness, Some(vec![vec![0], vec![0]]));
    }
}
