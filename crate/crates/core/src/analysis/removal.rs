use serde::{Serialize, Serializer};

use crate::arith::distinct_prime_count;
use crate::error::{Error, Result};
use crate::family::{is_k_closed, is_weakly_k_closed, SetFamily};
use crate::linalg::ModVector;
use crate::verdict::Status;

fn family_as_sets<S: Serializer>(f: &SetFamily, s: S) -> std::result::Result<S::Ok, S::Error> {
    f.as_sets().serialize(s)
}

/// One removal step: a maximal matching of `t`-sets with non-divisible
/// intersection, all of whose members are deleted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RemovalRound {
    pub t: usize,
    /// Each edge lists `t` member sets, as index sets.
    pub matching: Vec<Vec<Vec<usize>>>,
    pub removed: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RemovalTrace {
    pub status: Status,
    pub k: u64,
    pub modulus: u32,
    pub n: usize,
    pub initial_size: usize,
    /// Set when the input is not weakly k-closed: the first failing k
    /// distinct members, as index sets. No rounds are run in that case.
    pub premise_witness: Option<Vec<Vec<usize>>>,
    pub rounds: Vec<RemovalRound>,
    pub removed_total: usize,
    /// `s k^2 n`, with `s` the number of distinct primes dividing the modulus.
    pub bound: u64,
    pub final_closed: bool,
    #[serde(serialize_with = "family_as_sets")]
    pub final_family: SetFamily,
}

/// Index tuples of `t` distinct members whose intersection has size not
/// divisible by `m`, in lexicographic order. Branches whose running
/// intersection is already empty are cut.
fn bad_tuples(members: &[ModVector], t: usize, m: usize, full: &ModVector) -> Vec<Vec<usize>> {
    fn go(
        members: &[ModVector],
        t: usize,
        m: usize,
        start: usize,
        acc: &ModVector,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if chosen.len() == t {
            if !acc.weight().is_multiple_of(m) {
                out.push(chosen.clone());
            }
            return;
        }
        if acc.is_zero() {
            return;
        }
        for i in start..members.len() {
            if members.len() - i < t - chosen.len() {
                break;
            }
            let next = acc.hadamard(&members[i]).expect("same ground set");
            chosen.push(i);
            go(members, t, m, i + 1, &next, chosen, out);
            chosen.pop();
        }
    }
    let mut out = Vec::new();
    go(members, t, m, 0, full, &mut Vec::new(), &mut out);
    out
}

/// Deletes members of a weakly k-closed family until it is k-closed.
///
/// Each round takes the largest `t` for which some `t` distinct members meet
/// in a set of size not divisible by the modulus (scanning down from
/// `k - 1`), builds a maximal matching of such `t`-tuples greedily in
/// lexicographic order, and removes every matched member.
pub fn greedy_removal_to_closed(family: &SetFamily, k: u64, modulus: u32) -> Result<RemovalTrace> {
    if k == 0 || modulus < 2 {
        return Err(Error::Argument(
            "removal needs k >= 1 and modulus >= 2".into(),
        ));
    }
    let n = family.ground_size();
    let s = distinct_prime_count(modulus as u64) as u64;
    let bound = s
        .saturating_mul(k.saturating_mul(k))
        .saturating_mul(n as u64);
    let mut trace = RemovalTrace {
        status: Status::NotApplicable,
        k,
        modulus,
        n,
        initial_size: family.len(),
        premise_witness: None,
        rounds: Vec::new(),
        removed_total: 0,
        bound,
        final_closed: false,
        final_family: family.clone(),
    };
    let weak = is_weakly_k_closed(family, k, modulus)?;
    if !weak.holds {
        trace.premise_witness = Some(
            weak.witness_sets(family)
                .iter()
                .map(|v| v.support())
                .collect(),
        );
        return Ok(trace);
    }
    let full = ModVector::ones(2, n)?;
    let m = modulus as usize;
    let mut current = family.clone();
    while !is_k_closed(&current, k, modulus)?.holds {
        let members = current.members();
        let top = (k.saturating_sub(1)).min(members.len() as u64) as usize;
        let (t, edges) = (1..=top)
            .rev()
            .map(|t| (t, bad_tuples(members, t, m, &full)))
            .find(|(_, e)| !e.is_empty())
            .ok_or_else(|| {
                Error::Structure("family is not k-closed but no bad tuple below k exists".into())
            })?;
        let mut used = vec![false; members.len()];
        let mut matching = Vec::new();
        for e in edges {
            if e.iter().all(|&i| !used[i]) {
                for &i in &e {
                    used[i] = true;
                }
                matching.push(e);
            }
        }
        let removed = used.iter().filter(|&&u| u).count();
        let kept = members
            .iter()
            .zip(&used)
            .filter(|(_, &u)| !u)
            .map(|(v, _)| v.clone());
        let next = SetFamily::new(n, kept)?;
        trace.rounds.push(RemovalRound {
            t,
            matching: matching
                .iter()
                .map(|e| e.iter().map(|&i| members[i].support()).collect())
                .collect(),
            removed,
        });
        trace.removed_total += removed;
        current = next;
    }
    trace.final_closed = true;
    trace.status = Status::from_bool(trace.removed_total as u64 <= bound);
    trace.final_family = current;
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::s_family;

    #[test]
    fn closed_family_is_untouched() {
        let t = greedy_removal_to_closed(&s_family(6, 2), 3, 2).unwrap();
        assert_eq!(t.status, Status::Holds);
        assert!(t.rounds.is_empty());
        assert_eq!(t.removed_total, 0);
    }

    #[test]
    fn odd_singletons_are_removed() {
        // weakly 2-closed: every two distinct members are disjoint or meet evenly
        let f = SetFamily::from_sets(5, [vec![0, 1], vec![2, 3], vec![4], vec![]]).unwrap();
        let t = greedy_removal_to_closed(&f, 2, 2).unwrap();
        assert_eq!(t.status, Status::Holds);
        assert_eq!(t.rounds.len(), 1);
        assert_eq!(t.rounds[0].t, 1);
        assert_eq!(t.removed_total, 1);
        assert!(is_k_closed(&t.final_family, 2, 2).unwrap().holds);
    }

    #[test]
    fn premise_failure_is_not_applicable() {
        let f = SetFamily::from_sets(3, [vec![0, 1], vec![1, 2]]).unwrap();
        let t = greedy_removal_to_closed(&f, 2, 2).unwrap();
        assert_eq!(t.status, Status::NotApplicable);
        assert_eq!(t.premise_witness, Some(vec![vec![1, 2], vec![0, 1]]));
    }
}
