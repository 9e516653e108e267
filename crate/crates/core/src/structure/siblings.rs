use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{Echelon, SubspaceBasis};

/// Coordinates whose basis column is a nonzero multiple of one pivot column.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SiblingClass {
    /// Index of the basis row (and pivot) the class belongs to.
    pub row: usize,
    /// Ascending coordinates, the pivot itself included.
    pub coords: Vec<usize>,
    /// `scalars[j]` is the entry of row `row` at `coords[j]`.
    pub scalars: Vec<u32>,
}

impl SiblingClass {
    /// Coordinates grouped by scalar, each group ascending, groups ordered by
    /// their smallest coordinate. These are the maximal twin classes inside
    /// the sibling class.
    pub fn value_groups(&self) -> Vec<(u32, Vec<usize>)> {
        let mut groups: Vec<(u32, Vec<usize>)> = Vec::new();
        for (&c, &s) in self.coords.iter().zip(&self.scalars) {
            match groups.iter_mut().find(|(v, _)| *v == s) {
                Some((_, g)) => g.push(c),
                None => groups.push((s, vec![c])),
            }
        }
        groups
    }

    /// Whether every coordinate of the class carries the same value.
    pub fn is_twin_class(&self) -> bool {
        self.scalars.windows(2).all(|w| w[0] == w[1])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SiblingDecomposition {
    pub ncols: usize,
    /// One class per basis row, in row order.
    pub classes: Vec<SiblingClass>,
    /// Coordinates whose column has at least two nonzero entries.
    pub b_prime: Vec<usize>,
}

impl SiblingDecomposition {
    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.coords.len()).collect()
    }
}

/// Splits the coordinates of an RREF basis into sibling classes and `B'`.
///
/// A column with exactly one nonzero entry, in row `i`, is a sibling of pivot
/// `i`. Every remaining column has at least two nonzero entries. An all-zero
/// column is rejected.
pub fn sibling_decomposition(basis: &SubspaceBasis) -> Result<SiblingDecomposition> {
    let n = basis.ncols();
    let mut count = vec![0u32; n];
    let mut owner = vec![0usize; n];
    for (i, row) in basis.rows().iter().enumerate() {
        for j in row.support() {
            count[j] += 1;
            owner[j] = i;
        }
    }
    let mut classes: Vec<SiblingClass> = (0..basis.dim())
        .map(|row| SiblingClass {
            row,
            coords: Vec::new(),
            scalars: Vec::new(),
        })
        .collect();
    let mut b_prime = Vec::new();
    for j in 0..n {
        match count[j] {
            0 => return Err(Error::Reduction(j)),
            1 => {
                let class = &mut classes[owner[j]];
                class.coords.push(j);
                class.scalars.push(basis.rows()[owner[j]].get(j));
            }
            _ => b_prime.push(j),
        }
    }
    Ok(SiblingDecomposition {
        ncols: n,
        classes,
        b_prime,
    })
}

/// Greedy leftmost subset of `b_prime` whose basis columns form a basis of
/// the column space spanned by `b_prime`.
pub fn choose_c(basis: &SubspaceBasis, b_prime: &[usize]) -> Result<Vec<usize>> {
    let mut echelon = Echelon::new(basis.prime(), basis.dim());
    let mut c = Vec::new();
    for &j in b_prime {
        if echelon.insert(&basis.column(j))? {
            c.push(j);
        }
    }
    Ok(c)
}
