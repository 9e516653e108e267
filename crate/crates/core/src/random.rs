//! Seeded generators for property tests and batch verification.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::analysis::{cross_product_bound_check, is_eventown};
use crate::constructions::s_family;
use crate::error::{Error, Result};
use crate::family::{is_weakly_k_closed, SetFamily};
use crate::linalg::ModVector;
use crate::verdict::Status;

/// Uniformly random subset of `[n]` as sorted indices.
pub fn random_subset<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<usize> {
    (0..n).filter(|_| rng.gen_bool(0.5)).collect()
}

/// A family of between 1 and `max_size` uniformly random subsets (fewer if
/// duplicates are drawn).
pub fn random_family<R: Rng + ?Sized>(rng: &mut R, n: usize, max_size: usize) -> SetFamily {
    let m = rng.gen_range(1..=max_size.max(1));
    let sets: Vec<Vec<usize>> = (0..m).map(|_| random_subset(rng, n)).collect();
    SetFamily::from_sets(n, sets).expect("indices are in range")
}

/// `dim` uniformly random vectors of `F_p^n`; their span has dimension at
/// most `dim`.
pub fn random_vectors<R: Rng + ?Sized>(
    rng: &mut R,
    p: u32,
    n: usize,
    dim: usize,
) -> Vec<ModVector> {
    (0..dim)
        .map(|_| {
            let entries: Vec<u32> = (0..n).map(|_| rng.gen_range(0..p)).collect();
            ModVector::from_residues(p, &entries).expect("residues below p")
        })
        .collect()
}

/// A weakly `k`-closed family over `Z_l` that is usually not `k`-closed:
/// `S(n, l)`, the singletons on the coordinates it leaves uncovered, and
/// random subsets kept only when the premise survives.
pub fn random_weakly_closed<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    k: u64,
    l: u32,
) -> Result<SetFamily> {
    if k < 2 {
        return Err(Error::Argument(
            "weakly closed instances need k >= 2".into(),
        ));
    }
    let base = s_family(n, l as usize);
    let uncovered = n - (n / l as usize) * l as usize;
    let mut family = base;
    for x in n - uncovered..n {
        family = family.with_member(ModVector::indicator(2, n, [x])?)?;
    }
    for _ in 0..2 * n {
        let candidate = family.with_member(ModVector::indicator(2, n, random_subset(rng, n))?)?;
        if is_weakly_k_closed(&candidate, k, l)?.holds {
            family = candidate;
        }
    }
    Ok(family)
}

/// `k` families of one to three random subsets each whose cross `k`-wise
/// intersections are all divisible by `l`, by rejection sampling.
pub fn random_cross_instance<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    k: usize,
    l: u32,
) -> Result<Vec<SetFamily>> {
    const ATTEMPTS: usize = 1_000_000;
    for _ in 0..ATTEMPTS {
        let fams: Vec<SetFamily> = (0..k)
            .map(|_| {
                let m = rng.gen_range(1..=3);
                SetFamily::from_sets(n, (0..m).map(|_| random_subset(rng, n)))
                    .expect("indices are in range")
            })
            .collect();
        if cross_product_bound_check(&fams, l)?.status != Status::NotApplicable {
            return Ok(fams);
        }
    }
    Err(Error::Argument(format!(
        "no premise-satisfying cross instance found in {ATTEMPTS} attempts"
    )))
}

/// Pairs `(A_i, B_i)` with `l ∤ |A_i ∩ B_i|` and `l | |A_i ∩ B_j|` for
/// `i != j`, grown by proposing random pairs and keeping those that preserve
/// the premise.
pub fn random_oddtown_pairs<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    l: u32,
    proposals: usize,
) -> Vec<(Vec<usize>, Vec<usize>)> {
    let m = l as usize;
    let meet = |a: &[usize], b: &[usize]| a.iter().filter(|x| b.contains(x)).count();
    let mut pairs: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for _ in 0..proposals {
        let a = random_subset(rng, n);
        let b = random_subset(rng, n);
        let ok = meet(&a, &b) % m != 0
            && pairs
                .iter()
                .all(|(ai, bi)| meet(ai, &b) % m == 0 && meet(&a, bi) % m == 0);
        if ok {
            pairs.push((a, b));
        }
    }
    pairs
}

/// A random eventown family: even subsets proposed in random order, kept
/// while pairwise intersections stay even, stopping after `keep` members.
pub fn random_eventown<R: Rng + ?Sized>(rng: &mut R, n: usize, keep: usize) -> SetFamily {
    let mut order: Vec<u64> = (0..1u64 << n).filter(|m| m.count_ones() % 2 == 0).collect();
    order.shuffle(rng);
    let mut family = SetFamily::empty(n);
    for mask in order {
        if family.len() >= keep {
            break;
        }
        let v =
            ModVector::indicator(2, n, (0..n).filter(|&i| mask >> i & 1 == 1)).expect("in range");
        let next = family.with_member(v).expect("same ground set");
        if is_eventown(&next) {
            family = next;
        }
    }
    family
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::oddtown_pairs_check;
    use crate::family::is_k_closed;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn weakly_closed_instances_satisfy_the_premise() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let f = random_weakly_closed(&mut rng, 7, 3, 2).unwrap();
        assert!(is_weakly_k_closed(&f, 3, 2).unwrap().holds);
        assert!(!is_k_closed(&f, 3, 2).unwrap().holds);
    }

    #[test]
    fn oddtown_pairs_satisfy_the_premise() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let pairs = random_oddtown_pairs(&mut rng, 5, 6, 200);
        assert!(!pairs.is_empty());
        assert_ne!(
            oddtown_pairs_check(5, &pairs, 6).unwrap().status,
            Status::NotApplicable
        );
    }

    #[test]
    fn generators_are_seeded() {
        let a = random_family(&mut ChaCha8Rng::seed_from_u64(1), 10, 8);
        let b = random_family(&mut ChaCha8Rng::seed_from_u64(1), 10, 8);
        assert_eq!(a, b);
    }
}
