//! Exhaustive search against brute force over every family on a tiny ground
//! set.

use ldiv::analysis::{exhaustive_max_family, SearchConfig, SearchMode};

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn valid(members: &[u32], modulus: u32, k: usize, mode: SearchMode) -> bool {
    let levels: Vec<usize> = match mode {
        SearchMode::Pairwise => vec![1, 2],
        SearchMode::Distinct => vec![k],
        SearchMode::Repetition => (1..=k).collect(),
    };
    let m = members.len();
    // every subset of member indices of an allowed size
    (1u32..1 << m).all(|pick| {
        if !levels.contains(&(pick.count_ones() as usize)) {
            return true;
        }
        let meet = (0..m)
            .filter(|i| pick >> i & 1 == 1)
            .fold(u32::MAX, |acc, i| acc & members[i]);
        meet.count_ones() % modulus == 0
    })
}

/// Maximum size and number of isomorphism classes attaining it.
fn brute_force(n: usize, modulus: u32, k: usize, mode: SearchMode) -> (usize, usize) {
    let subsets = 1usize << n;
    let perms = permutations(n);
    let mut best = 0;
    let mut classes = std::collections::BTreeSet::new();
    for fam in 0u64..1 << subsets {
        let members: Vec<u32> = (0..subsets as u32).filter(|a| fam >> a & 1 == 1).collect();
        if members.len() < best || !valid(&members, modulus, k, mode) {
            continue;
        }
        let canon = perms
            .iter()
            .map(|p| {
                members.iter().fold(0u64, |acc, &a| {
                    let img = (0..n)
                        .filter(|&i| a >> i & 1 == 1)
                        .fold(0, |x, i| x | 1 << p[i]);
                    acc | 1 << img
                })
            })
            .min()
            .unwrap();
        if members.len() > best {
            best = members.len();
            classes.clear();
        }
        classes.insert(canon);
    }
    (best, classes.len())
}

fn check(n: usize, modulus: u32, k: u64, mode: SearchMode) {
    let r = exhaustive_max_family(&SearchConfig::new(n, modulus, k, mode)).unwrap();
    let expected = brute_force(n, modulus, r.k as usize, mode);
    assert_eq!(
        (r.max_size, r.count_extremal),
        expected,
        "n={n} mod={modulus} k={k} mode={mode}"
    );
    assert!(r.rechecked);
}

#[test]
fn agrees_with_brute_force_up_to_three_points() {
    for n in 1..=3 {
        for modulus in [2, 3] {
            check(n, modulus, 2, SearchMode::Pairwise);
            for k in [2, 3] {
                check(n, modulus, k, SearchMode::Distinct);
                check(n, modulus, k, SearchMode::Repetition);
            }
        }
    }
}

#[test]
fn agrees_with_brute_force_on_four_points() {
    check(4, 2, 2, SearchMode::Pairwise);
    check(4, 3, 2, SearchMode::Pairwise);
    check(4, 2, 3, SearchMode::Repetition);
}
