use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::{project, twin_decomposition, SetFamily};
use crate::verdict::Status;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StabilityReport {
    pub status: Status,
    pub l: u32,
    /// Union of the twin classes whose size is divisible by `l`.
    pub x: Vec<usize>,
    /// `x` split into blocks of exactly `l` coordinates, each twin class cut
    /// in ascending order.
    pub blocks: Vec<Vec<usize>>,
    pub family_size: usize,
    pub projected_size: usize,
    /// `projected_size / family_size`.
    pub ratio: f64,
    /// Every projected member is a union of blocks.
    pub embeds: bool,
}

/// Projects `F` onto the twin classes of size divisible by `l` and checks
/// that the projection sits inside the atomic family on the `l`-blocks.
pub fn stability_projection(family: &SetFamily, l: u32) -> Result<StabilityReport> {
    if l < 2 {
        return Err(Error::Argument(format!("l must be at least 2, got {l}")));
    }
    let twins = twin_decomposition(family);
    let mut blocks = Vec::new();
    let mut x = Vec::new();
    for class in twins.classes.iter().filter(|c| c.len() % l as usize == 0) {
        x.extend(&class.coords);
        blocks.extend(class.coords.chunks(l as usize).map(<[usize]>::to_vec));
    }
    x.sort_unstable();
    let projected = project(family, &x)?;
    // positions of each block inside the projection's reindexed coordinates
    let local: Vec<Vec<usize>> = blocks
        .iter()
        .map(|blk| {
            blk.iter()
                .map(|c| x.binary_search(c).expect("block inside x"))
                .collect()
        })
        .collect();
    let embeds = projected.members().iter().all(|m| {
        let covered = local
            .iter()
            .map(|blk| blk.iter().filter(|&&j| m.get(j) == 1).count());
        let all_or_nothing = covered
            .clone()
            .zip(&local)
            .all(|(k, blk)| k == 0 || k == blk.len());
        all_or_nothing && covered.sum::<usize>() == m.weight()
    });
    let family_size = family.len();
    let projected_size = projected.len();
    Ok(StabilityReport {
        status: Status::from_bool(embeds),
        l,
        x,
        blocks,
        family_size,
        projected_size,
        ratio: if family_size == 0 {
            1.0
        } else {
            projected_size as f64 / family_size as f64
        },
        embeds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{s_family, subspace_stability_family};

    #[test]
    fn atomic_family_projects_to_itself() {
        let r = stability_projection(&s_family(6, 3), 3).unwrap();
        assert_eq!(r.x, (0..6).collect::<Vec<_>>());
        assert_eq!(r.ratio, 1.0);
        assert_eq!(r.status, Status::Holds);
    }

    #[test]
    fn subspace_family() {
        let f = subspace_stability_family(2, 1, 2, 1).unwrap();
        let r = stability_projection(&f, 2).unwrap();
        assert_eq!(r.x, vec![0, 1, 2, 3]);
        assert_eq!((r.projected_size, r.family_size), (4, 12));
        assert!(r.embeds);
    }

    #[test]
    fn vanishing_family() {
        let r = stability_projection(&SetFamily::empty_set_only(4), 2).unwrap();
        assert!(r.x.is_empty());
        assert_eq!(r.ratio, 1.0);
    }

    #[test]
    fn large_class_is_split() {
        let r = stability_projection(&s_family(4, 4), 2).unwrap();
        assert_eq!(r.blocks, vec![vec![0, 1], vec![2, 3]]);
        assert!(r.embeds);
    }
}
