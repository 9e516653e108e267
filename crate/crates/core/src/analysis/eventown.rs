use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::linalg::ModVector;

/// Largest ground set for which every subset is tried during completion.
pub const MAX_COMPLETION_N: usize = 20;

/// Every member has even size and any two members meet in an even set.
pub fn is_eventown(family: &SetFamily) -> bool {
    let m = family.members();
    m.iter().enumerate().all(|(i, a)| {
        a.weight() % 2 == 0
            && m[i + 1..]
                .iter()
                .all(|b| a.hadamard(b).expect("same ground set").weight() % 2 == 0)
    })
}

/// Greedily adds subsets of `[n]`, in increasing order of their bitmask,
/// while the family stays an eventown family.
pub fn complete_eventown(family: &SetFamily) -> Result<SetFamily> {
    let n = family.ground_size();
    if n > MAX_COMPLETION_N {
        return Err(Error::Argument(format!(
            "eventown completion enumerates all subsets; n = {n} exceeds {MAX_COMPLETION_N}"
        )));
    }
    if !is_eventown(family) {
        return Err(Error::Argument(
            "starting family is not an eventown family".into(),
        ));
    }
    let mut members: Vec<ModVector> = family.members().to_vec();
    for mask in 0u64..(1 << n) {
        if mask.count_ones() % 2 == 1 {
            continue;
        }
        let v = ModVector::indicator(2, n, (0..n).filter(|&i| mask >> i & 1 == 1))?;
        if members.contains(&v) {
            continue;
        }
        if members
            .iter()
            .all(|m| m.hadamard(&v).expect("same ground set").weight() % 2 == 0)
        {
            members.push(v);
        }
    }
    SetFamily::new(n, members)
}
