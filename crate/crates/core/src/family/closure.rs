use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::ModVector;

use super::SetFamily;

/// Outcome of a k-closure check over `Z_l`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosureReport {
    pub k: u64,
    pub modulus: u32,
    pub holds: bool,
    /// Member indices (into `SetFamily::members`) whose intersection has size
    /// not divisible by the modulus. At most `k` entries.
    pub witness: Option<Vec<usize>>,
    /// Number of factors after which the power family stopped growing, when
    /// that happened before `k`.
    pub stabilized_at: Option<u64>,
}

impl ClosureReport {
    pub fn witness_sets<'a>(&self, family: &'a SetFamily) -> Vec<&'a ModVector> {
        self.witness
            .iter()
            .flatten()
            .map(|&i| &family.members()[i])
            .collect()
    }
}

fn check_args(k: u64, modulus: u32) -> Result<()> {
    if k == 0 {
        return Err(Error::Argument("closure needs k >= 1".into()));
    }
    if modulus < 2 {
        return Err(Error::Argument("closure needs modulus >= 2".into()));
    }
    Ok(())
}

/// Does every intersection of at most `k` members (repetition allowed) have
/// size divisible by `modulus`?
///
/// The power families `F, F^2, ...` are generated level by level; only the
/// members new at a level are multiplied by `F` again. Once a level adds
/// nothing the remaining exponents cannot produce new sets, so `k` may be
/// astronomically large.
pub fn is_k_closed(family: &SetFamily, k: u64, modulus: u32) -> Result<ClosureReport> {
    check_args(k, modulus)?;
    let m = modulus as usize;
    let mut report = ClosureReport {
        k,
        modulus,
        holds: true,
        witness: None,
        stabilized_at: None,
    };
    let members = family.members();
    let mut seen: HashMap<ModVector, Vec<usize>> = HashMap::new();
    let mut frontier: Vec<ModVector> = Vec::new();
    for (i, v) in members.iter().enumerate() {
        if v.weight() % m != 0 {
            report.holds = false;
            report.witness = Some(vec![i]);
            return Ok(report);
        }
        seen.insert(v.clone(), vec![i]);
        frontier.push(v.clone());
    }
    let mut level = 1u64;
    while level < k {
        let mut next = Vec::new();
        for x in &frontier {
            let trail = seen[x].clone();
            for (j, v) in members.iter().enumerate() {
                let y = x.hadamard(v)?;
                if seen.contains_key(&y) {
                    continue;
                }
                let mut t = trail.clone();
                t.push(j);
                if y.weight() % m != 0 {
                    report.holds = false;
                    report.witness = Some(t);
                    return Ok(report);
                }
                seen.insert(y.clone(), t);
                next.push(y);
            }
        }
        if next.is_empty() {
            report.stabilized_at = Some(level);
            break;
        }
        // deterministic traversal order for the witness search
        next.sort_by(|a, b| a.lex_cmp(b));
        frontier = next;
        level += 1;
    }
    Ok(report)
}

/// Does every intersection of exactly `k` distinct members have size
/// divisible by `modulus`? Vacuously true when the family has fewer than `k`
/// members. The first failing `k`-subset in lexicographic index order is the
/// witness.
pub fn is_weakly_k_closed(family: &SetFamily, k: u64, modulus: u32) -> Result<ClosureReport> {
    check_args(k, modulus)?;
    let mut report = ClosureReport {
        k,
        modulus,
        holds: true,
        witness: None,
        stabilized_at: None,
    };
    let members = family.members();
    if (members.len() as u64) < k {
        return Ok(report);
    }
    let k = k as usize;
    let full = ModVector::ones(2, family.ground_size())?;
    let mut chosen = Vec::with_capacity(k);
    if let Some(w) = first_bad_subset(members, k, modulus as usize, 0, &full, &mut chosen) {
        report.holds = false;
        report.witness = Some(w);
    }
    Ok(report)
}

fn first_bad_subset(
    members: &[ModVector],
    k: usize,
    m: usize,
    start: usize,
    acc: &ModVector,
    chosen: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    if chosen.len() == k {
        return (!acc.weight().is_multiple_of(m)).then(|| chosen.clone());
    }
    let need = k - chosen.len();
    for i in start..=members.len() - need {
        let next = acc.hadamard(&members[i]).expect("same shape");
        // an empty running intersection stays empty and divisible
        if next.is_zero() {
            continue;
        }
        chosen.push(i);
        let found = first_bad_subset(members, k, m, i + 1, &next, chosen);
        chosen.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}
