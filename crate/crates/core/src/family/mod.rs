//! Set families over a ground set `[n]`, stored as packed 0/1 vectors.
//!
//! Coordinates are 0-based throughout. Members are kept duplicate-free and
//! sorted lexicographically by their 0/1 strings, so two equal families have
//! identical member lists.

mod closure;
mod text;
mod twins;

use std::collections::HashSet;

use crate::arith::Prime;
use crate::error::{Error, Result};
use crate::linalg::{self, ModVector, SubspaceBasis};

pub use closure::{is_k_closed, is_weakly_k_closed, ClosureReport};
pub use text::{format_family, parse_family, parse_header, parse_vectors, FamilyFile};
pub use twins::{twin_decomposition, TwinClass, TwinDecomposition};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SetFamily {
    ground_size: usize,
    members: Vec<ModVector>,
}

impl SetFamily {
    /// Builds a family from 0/1 vectors of length `ground_size`, dropping
    /// duplicates. Vectors over any modulus are accepted as long as every
    /// entry is 0 or 1.
    pub fn new(ground_size: usize, members: impl IntoIterator<Item = ModVector>) -> Result<Self> {
        let mut out = Vec::new();
        for m in members {
            if m.len() != ground_size {
                return Err(Error::shape(format!(
                    "member of length {} in a family over {ground_size} coordinates",
                    m.len()
                )));
            }
            if !m.is_binary() {
                return Err(Error::shape("family members must be 0/1 vectors"));
            }
            out.push(if m.modulus() == 2 { m } else { m.lift(2)? });
        }
        Ok(Self::from_sorted_unchecked(ground_size, out))
    }

    fn from_sorted_unchecked(ground_size: usize, mut members: Vec<ModVector>) -> Self {
        members.sort_by(|a, b| a.lex_cmp(b));
        members.dedup();
        SetFamily {
            ground_size,
            members,
        }
    }

    /// Builds a family from explicit index sets.
    pub fn from_sets<I, S>(ground_size: usize, sets: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: IntoIterator<Item = usize>,
    {
        let members = sets
            .into_iter()
            .map(|s| ModVector::indicator(2, ground_size, s))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ground_size, members)
    }

    /// The family `{∅}`.
    pub fn empty_set_only(ground_size: usize) -> Self {
        SetFamily {
            ground_size,
            members: vec![ModVector::zeros_unchecked(2, ground_size)],
        }
    }

    /// The family with no members.
    pub fn empty(ground_size: usize) -> Self {
        SetFamily {
            ground_size,
            members: Vec::new(),
        }
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[ModVector] {
        &self.members
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ModVector> {
        self.members.iter()
    }

    pub fn contains(&self, v: &ModVector) -> bool {
        self.members.binary_search_by(|m| m.lex_cmp(v)).is_ok()
    }

    /// Members as sorted coordinate lists.
    pub fn as_sets(&self) -> Vec<Vec<usize>> {
        self.members.iter().map(|m| m.support()).collect()
    }

    /// Characteristic vectors over `Z_modulus`.
    pub fn vectors_mod(&self, modulus: u32) -> Result<Vec<ModVector>> {
        self.members.iter().map(|m| m.lift(modulus)).collect()
    }

    /// Reduced row-echelon basis of the span over `F_p`.
    pub fn span(&self, prime: Prime) -> Result<SubspaceBasis> {
        linalg::rref_rows(prime, self.ground_size, self.vectors_mod(prime.get())?)
    }

    /// `dim <F>_p`.
    pub fn dim_span(&self, prime: Prime) -> Result<usize> {
        Ok(self.span(prime)?.dim())
    }

    pub fn union(&self, other: &SetFamily) -> Result<SetFamily> {
        self.check_same_ground(other)?;
        let mut all = self.members.clone();
        all.extend(other.members.iter().cloned());
        Ok(Self::from_sorted_unchecked(self.ground_size, all))
    }

    pub fn is_subfamily_of(&self, other: &SetFamily) -> bool {
        self.ground_size == other.ground_size && self.members.iter().all(|m| other.contains(m))
    }

    pub fn with_member(&self, v: ModVector) -> Result<SetFamily> {
        let mut all = self.members.clone();
        all.push(v);
        Self::new(self.ground_size, all)
    }

    /// Coordinates covered by at least one member.
    pub fn covered(&self) -> Vec<usize> {
        let mut acc = ModVector::zeros_unchecked(2, self.ground_size);
        for m in &self.members {
            for i in m.support() {
                acc.set_unchecked(i, 1);
            }
        }
        acc.support()
    }

    fn check_same_ground(&self, other: &SetFamily) -> Result<()> {
        if self.ground_size != other.ground_size {
            return Err(Error::shape(format!(
                "families over {} and {} coordinates",
                self.ground_size, other.ground_size
            )));
        }
        Ok(())
    }
}

impl<'a> IntoIterator for &'a SetFamily {
    type Item = &'a ModVector;
    type IntoIter = std::slice::Iter<'a, ModVector>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

/// `F·G = {A ∩ B : A ∈ F, B ∈ G}`.
pub fn product(f: &SetFamily, g: &SetFamily) -> Result<SetFamily> {
    f.check_same_ground(g)?;
    let mut seen = HashSet::with_capacity(f.len() * g.len());
    for a in &f.members {
        for b in &g.members {
            seen.insert(a.hadamard(b)?);
        }
    }
    Ok(SetFamily::from_sorted_unchecked(
        f.ground_size,
        seen.into_iter().collect(),
    ))
}

/// `F^k`, the family of all intersections of `k` members (with repetition).
///
/// For 0/1 families `F^i ⊆ F^{i+1}`, and the sequence is constant once two
/// consecutive terms agree, so large `k` costs no more than the fixed point.
pub fn power(f: &SetFamily, k: u64) -> Result<SetFamily> {
    if k == 0 {
        return Err(Error::Argument("power needs k >= 1".into()));
    }
    let mut current = f.clone();
    let mut i = 1;
    while i < k {
        let next = product(&current, f)?;
        if next == current {
            break;
        }
        current = next;
        i += 1;
    }
    Ok(current)
}

/// Result of dropping the coordinates on which every member vanishes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub family: SetFamily,
    /// Original coordinates kept, ascending; position `j` in the reduced
    /// family is original coordinate `kept[j]`.
    pub kept: Vec<usize>,
    pub dropped: Vec<usize>,
}

/// Projects onto the covered coordinates, making the family non-reducible.
pub fn reduce(f: &SetFamily) -> Reduction {
    let kept = f.covered();
    let dropped = complement(f.ground_size, &kept);
    let family = project(f, &kept).expect("covered coordinates are in range");
    Reduction {
        family,
        kept,
        dropped,
    }
}

/// `F|_X = {F ∩ X}`, reindexed so coordinate `X[j]` becomes `j`. `X` is
/// sorted and deduplicated first.
pub fn project(f: &SetFamily, coords: &[usize]) -> Result<SetFamily> {
    let mut x = coords.to_vec();
    x.sort_unstable();
    x.dedup();
    if let Some(&bad) = x.iter().find(|&&c| c >= f.ground_size) {
        return Err(Error::shape(format!(
            "coordinate {bad} outside ground set of size {}",
            f.ground_size
        )));
    }
    let members = f.members.iter().map(|m| m.restrict(&x)).collect();
    Ok(SetFamily::from_sorted_unchecked(x.len(), members))
}

/// `[0, n) \ set`, ascending. `set` must be sorted.
pub fn complement(n: usize, set: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(n.saturating_sub(set.len()));
    let mut it = set.iter().peekable();
    for i in 0..n {
        if it.peek() == Some(&&i) {
            it.next();
        } else {
            out.push(i);
        }
    }
    out
}
