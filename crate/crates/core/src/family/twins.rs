use std::collections::HashMap;

use serde::Serialize;

use super::SetFamily;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwinClass {
    /// Coordinates of the class, ascending.
    pub coords: Vec<usize>,
    /// Index of a member containing the whole class.
    pub witness: usize,
}

impl TwinClass {
    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }
}

/// Maximal twin classes of a family plus the coordinates it never covers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwinDecomposition {
    pub ground_size: usize,
    /// Ordered by smallest coordinate.
    pub classes: Vec<TwinClass>,
    pub uncovered: Vec<usize>,
}

impl TwinDecomposition {
    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(TwinClass::len).collect()
    }

    /// Index of the class containing `coord`, if it is covered.
    pub fn class_of(&self, coord: usize) -> Option<usize> {
        self.classes
            .iter()
            .position(|c| c.coords.binary_search(&coord).is_ok())
    }

    pub fn class_sets(&self) -> Vec<Vec<usize>> {
        self.classes.iter().map(|c| c.coords.clone()).collect()
    }
}

/// Groups covered coordinates by their membership pattern across the family.
/// Two covered coordinates are twins exactly when every member contains both
/// or neither.
pub fn twin_decomposition(family: &SetFamily) -> TwinDecomposition {
    let n = family.ground_size();
    let words = family.len().div_ceil(64);
    let mut columns = vec![vec![0u64; words]; n];
    for (idx, m) in family.members().iter().enumerate() {
        for c in m.support() {
            columns[c][idx / 64] |= 1 << (idx % 64);
        }
    }
    let mut index: HashMap<&[u64], usize> = HashMap::new();
    let mut classes: Vec<TwinClass> = Vec::new();
    let mut uncovered = Vec::new();
    for (c, col) in columns.iter().enumerate() {
        if col.iter().all(|&w| w == 0) {
            uncovered.push(c);
            continue;
        }
        match index.get(col.as_slice()) {
            Some(&k) => classes[k].coords.push(c),
            None => {
                let witness = col
                    .iter()
                    .enumerate()
                    .find(|(_, &w)| w != 0)
                    .map(|(w, &bits)| w * 64 + bits.trailing_zeros() as usize)
                    .expect("nonzero column");
                index.insert(col.as_slice(), classes.len());
                classes.push(TwinClass {
                    coords: vec![c],
                    witness,
                });
            }
        }
    }
    TwinDecomposition {
        ground_size: n,
        classes,
        uncovered,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::s_family;

    #[test]
    fn atomic_classes() {
        let t = twin_decomposition(&s_family(6, 2));
        assert_eq!(t.class_sets(), vec![vec![0, 1], vec![2, 3], vec![4, 5]]);
        assert!(t.uncovered.is_empty());
        let s = s_family(6, 2);
        for class in &t.classes {
            let w = &s.members()[class.witness];
            assert!(class.coords.iter().all(|&c| w.get(c) == 1));
        }
    }

    #[test]
    fn empty_set_family_is_all_uncovered() {
        let t = twin_decomposition(&SetFamily::empty_set_only(4));
        assert!(t.classes.is_empty());
        assert_eq!(t.uncovered, vec![0, 1, 2, 3]);
    }

    #[test]
    fn trailing_coordinates_uncovered() {
        let t = twin_decomposition(&s_family(7, 3));
        assert_eq!(t.class_sizes(), vec![3, 3]);
        assert_eq!(t.uncovered, vec![6]);
    }
}
