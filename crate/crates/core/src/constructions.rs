//! Generators for the explicit extremal families.

use crate::arith::Prime;
use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::linalg::ModVector;

/// Disjoint nonempty atoms inside `[0, ground_size)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomSpec {
    ground_size: usize,
    atoms: Vec<Vec<usize>>,
}

impl AtomSpec {
    pub fn new(ground_size: usize, atoms: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; ground_size];
        let mut atoms = atoms;
        for atom in &mut atoms {
            atom.sort_unstable();
            atom.dedup();
            if atom.is_empty() {
                return Err(Error::spec("atoms must be nonempty"));
            }
            for &c in atom.iter() {
                if c >= ground_size {
                    return Err(Error::spec(format!(
                        "coordinate {c} outside ground set of size {ground_size}"
                    )));
                }
                if seen[c] {
                    return Err(Error::spec(format!("coordinate {c} lies in two atoms")));
                }
                seen[c] = true;
            }
        }
        Ok(AtomSpec { ground_size, atoms })
    }

    /// Consecutive blocks of the given sizes starting at coordinate 0.
    pub fn consecutive(ground_size: usize, sizes: &[usize]) -> Result<Self> {
        let mut start = 0;
        let mut atoms = Vec::with_capacity(sizes.len());
        for &s in sizes {
            atoms.push((start..start + s).collect());
            start += s;
        }
        Self::new(ground_size, atoms)
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn atoms(&self) -> &[Vec<usize>] {
        &self.atoms
    }
}

/// All `2^d` unions of atoms.
pub fn atomic_family(spec: &AtomSpec) -> SetFamily {
    let n = spec.ground_size;
    let mut members = vec![ModVector::zeros_unchecked(2, n)];
    for atom in &spec.atoms {
        let mut with_atom = Vec::with_capacity(members.len());
        for m in &members {
            let mut v = m.clone();
            for &c in atom {
                v.set_unchecked(c, 1);
            }
            with_atom.push(v);
        }
        members.extend(with_atom);
    }
    SetFamily::new(n, members).expect("atoms are disjoint and in range")
}

/// `S(n, l)`: atoms `{0..l-1}, {l..2l-1}, ...`, `floor(n/l)` of them; the
/// trailing `n mod l` coordinates are covered by no member.
pub fn s_family(n: usize, l: usize) -> SetFamily {
    assert!(l >= 1, "atom size must be positive");
    let spec = AtomSpec::consecutive(n, &vec![l; n / l]).expect("blocks fit");
    atomic_family(&spec)
}

/// Hyperplanes of `F_p^{dim}` (kernels of nonzero functionals up to scale),
/// each as the sorted list of indices of its points. Point `x` has index
/// `sum x_i p^{dim-1-i}`, i.e. radix-`p` counting with `x_0` most significant.
pub fn hyperplanes(p: u32, dim: u32) -> Vec<Vec<usize>> {
    let size = (p as usize).pow(dim);
    let digits = |mut idx: usize| {
        let mut d = vec![0u32; dim as usize];
        for slot in d.iter_mut().rev() {
            *slot = (idx % p as usize) as u32;
            idx /= p as usize;
        }
        d
    };
    let mut out = Vec::new();
    for f in 1..size {
        let a = digits(f);
        // normalized: first nonzero coefficient equals 1
        if a.iter().find(|&&x| x != 0) != Some(&1) {
            continue;
        }
        let plane: Vec<usize> = (0..size)
            .filter(|&x| {
                let xs = digits(x);
                a.iter()
                    .zip(&xs)
                    .map(|(&ai, &xi)| ai as u64 * xi as u64)
                    .sum::<u64>()
                    % p as u64
                    == 0
            })
            .collect();
        out.push(plane);
    }
    out
}

/// The subspace family: atoms `A_1..A_q` of size `p`, then blocks
/// `B_1..B_r` each identified with `F_p^{k+1}`. A member is any union of atoms
/// together with one `k`-dimensional subspace inside every block.
///
/// Ground size is `p*q + p^{k+1}*r`, member count `2^q ((p^{k+1}-1)/(p-1))^r`.
pub fn subspace_stability_family(p: u32, k: u32, q: usize, r: usize) -> Result<SetFamily> {
    Prime::new(p)?;
    if k == 0 {
        return Err(Error::spec("subspace dimension k must be at least 1"));
    }
    let block = (p as usize)
        .checked_pow(k + 1)
        .ok_or_else(|| Error::spec("block size overflows"))?;
    let planes = hyperplanes(p, k + 1);
    let count = (planes.len() as u128)
        .checked_pow(r as u32)
        .and_then(|c| c.checked_mul(1u128 << q.min(127)))
        .filter(|&c| q < 127 && c <= 1 << 24)
        .ok_or_else(|| Error::spec("family would exceed 2^24 members"))?;
    let a_len = p as usize * q;
    let n = a_len + block * r;
    let atoms = AtomSpec::consecutive(n, &vec![p as usize; q])?;
    let mut members = atomic_family(&atoms).members().to_vec();
    for j in 0..r {
        let offset = a_len + j * block;
        let mut next = Vec::with_capacity(members.len() * planes.len());
        for m in &members {
            for plane in &planes {
                let mut v = m.clone();
                for &x in plane {
                    v.set_unchecked(offset + x, 1);
                }
                next.push(v);
            }
        }
        members = next;
    }
    let family = SetFamily::new(n, members)?;
    debug_assert_eq!(family.len() as u128, count);
    Ok(family)
}

/// `F_i = 2^{[n] \ A_i}` for a partition `A_1..A_k` of `[n]`.
pub fn cross_extremal_families(n: usize, parts: &[Vec<usize>]) -> Result<Vec<SetFamily>> {
    if parts.len() < 2 {
        return Err(Error::spec("need at least two parts"));
    }
    let spec = AtomSpec::new(n, parts.to_vec())?;
    let covered: usize = spec.atoms().iter().map(Vec::len).sum();
    if covered != n {
        return Err(Error::spec(format!(
            "parts cover {covered} of {n} coordinates"
        )));
    }
    if n > 24 {
        return Err(Error::spec(
            "ground set too large to list 2^(n - |A_i|) members",
        ));
    }
    Ok(spec
        .atoms()
        .iter()
        .map(|part| {
            let rest = crate::family::complement(n, part);
            let singletons =
                AtomSpec::new(n, rest.iter().map(|&c| vec![c]).collect()).expect("disjoint");
            atomic_family(&singletons)
        })
        .collect())
}

/// Partition of `[n]` into consecutive blocks of the given sizes.
pub fn consecutive_parts(sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut start = 0;
    sizes
        .iter()
        .map(|&s| {
            let part = (start..start + s).collect();
            start += s;
            part
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn atomic_examples() {
        assert_eq!(
            atomic_family(&AtomSpec::new(3, vec![]).unwrap()),
            SetFamily::empty_set_only(3)
        );
        let f = atomic_family(&AtomSpec::new(5, vec![vec![0, 1], vec![2, 3]]).unwrap());
        assert_eq!(f.len(), 4);
        assert!(f.members().iter().all(|m| m.get(4) == 0));
        assert!(AtomSpec::new(4, vec![vec![0, 1], vec![1, 2]]).is_err());
        assert!(AtomSpec::new(4, vec![vec![]]).is_err());
    }

    #[test]
    fn s_family_examples() {
        let s = s_family(4, 2);
        assert_eq!(
            s.as_sets(),
            vec![vec![], vec![2, 3], vec![0, 1], vec![0, 1, 2, 3]]
        );
        assert_eq!(s_family(5, 2).len(), 4);
        assert_eq!(s_family(5, 2).covered(), vec![0, 1, 2, 3]);
        assert_eq!(s_family(3, 5), SetFamily::empty_set_only(3));
    }

    #[test]
    fn hyperplane_counts() {
        assert_eq!(hyperplanes(2, 2), vec![vec![0, 2], vec![0, 1], vec![0, 3]]);
        for (p, dim) in [(2u32, 3u32), (3, 2), (3, 3), (5, 2)] {
            let planes = hyperplanes(p, dim);
            assert_eq!(planes.len() as u32, (p.pow(dim) - 1) / (p - 1));
            assert!(planes
                .iter()
                .all(|h| h.len() as u32 == p.pow(dim - 1) && h[0] == 0));
        }
    }

    #[test]
    fn subspace_family_size() {
        let f = subspace_stability_family(2, 1, 1, 1).unwrap();
        assert_eq!(f.ground_size(), 6);
        assert_eq!(f.len(), 6);
        assert!(matches!(
            subspace_stability_family(4, 1, 1, 1),
            Err(Error::Modulus(4))
        ));
    }

    #[test]
    fn cross_examples() {
        let fs = cross_extremal_families(2, &consecutive_parts(&[1, 1])).unwrap();
        assert_eq!(
            fs.iter().map(SetFamily::len).collect::<Vec<_>>(),
            vec![2, 2]
        );
        let fs = cross_extremal_families(3, &consecutive_parts(&[1, 1, 1])).unwrap();
        assert_eq!(fs.iter().map(SetFamily::len).product::<usize>(), 64);
        assert!(cross_extremal_families(3, &consecutive_parts(&[1, 1])).is_err());
    }
}
