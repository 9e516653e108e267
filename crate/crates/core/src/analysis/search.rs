//! Exhaustive search for the largest family satisfying a divisibility
//! predicate, level by level over isomorphism classes.
//!
//! A family on `n <= 6` points is a `u64` bitset over the `2^n` subset
//! masks. Validity of an extension is decided from the bitset of
//! intersections of `j` distinct members, `j < k`, which is also a `u64`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::family::{is_k_closed, is_weakly_k_closed, SetFamily};

/// Largest ground set the bitset representation supports.
pub const MAX_SEARCH_N: usize = 6;

/// Default node budget when none is configured.
pub const DEFAULT_BUDGET_NODES: u64 = 200_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMode {
    /// Every member and every pairwise intersection divisible.
    Pairwise,
    /// Every intersection of exactly `k` distinct members divisible.
    Distinct,
    /// Every intersection of at most `k` members divisible.
    Repetition,
}

impl FromStr for SearchMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pairwise" => Ok(SearchMode::Pairwise),
            "distinct" | "k-distinct" => Ok(SearchMode::Distinct),
            "repetition" | "k-with-repetition" => Ok(SearchMode::Repetition),
            _ => Err(Error::Argument(format!(
                "unknown search mode `{s}` (expected pairwise, distinct or repetition)"
            ))),
        }
    }
}

impl fmt::Display for SearchMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SearchMode::Pairwise => "pairwise",
            SearchMode::Distinct => "distinct",
            SearchMode::Repetition => "repetition",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub n: usize,
    pub modulus: u32,
    /// Ignored in pairwise mode, which always uses 2.
    pub k: u64,
    pub mode: SearchMode,
    pub budget_nodes: u64,
    /// Worker threads; `None` uses the global rayon pool.
    pub threads: Option<usize>,
}

impl SearchConfig {
    pub fn new(n: usize, modulus: u32, k: u64, mode: SearchMode) -> Self {
        SearchConfig {
            n,
            modulus,
            k,
            mode,
            budget_nodes: DEFAULT_BUDGET_NODES,
            threads: None,
        }
    }

    pub fn effective_k(&self) -> u64 {
        match self.mode {
            SearchMode::Pairwise => 2,
            _ => self.k,
        }
    }
}

fn families_as_sets<S: Serializer>(
    fams: &[SetFamily],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(fams.iter().map(SetFamily::as_sets))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub n: usize,
    pub modulus: u32,
    pub k: u64,
    pub mode: SearchMode,
    pub max_size: usize,
    pub count_extremal: usize,
    /// One representative per isomorphism class, in canonical order.
    #[serde(serialize_with = "families_as_sets")]
    pub extremal_families: Vec<SetFamily>,
    /// Number of isomorphism classes of each size that survived pruning.
    pub classes_per_size: Vec<usize>,
    pub nodes_explored: u64,
    /// Size reached by greedy completion, used as the pruning bound.
    pub greedy_lower_bound: usize,
    /// Every representative passed the closure check in `family`.
    pub rechecked: bool,
}

struct Tables {
    n: usize,
    masks: usize,
    /// Per permutation, the image of each mask.
    images: Vec<Vec<u8>>,
    /// Per permutation, `inverse[p][pos]` is the coordinate sent to `pos`.
    inverse: Vec<Vec<usize>>,
    /// `good[a]` has bit `x` set when `|x ∩ a|` is divisible by the modulus.
    good: Vec<u64>,
    k: usize,
    mode: SearchMode,
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn bits(mut x: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if x == 0 {
            return None;
        }
        let i = x.trailing_zeros() as usize;
        x &= x - 1;
        Some(i)
    })
}

impl Tables {
    fn new(cfg: &SearchConfig) -> Result<Self> {
        if cfg.n > MAX_SEARCH_N {
            return Err(Error::Argument(format!(
                "search supports n <= {MAX_SEARCH_N}, got {}",
                cfg.n
            )));
        }
        if cfg.modulus < 2 {
            return Err(Error::Argument("search needs modulus >= 2".into()));
        }
        if cfg.effective_k() == 0 {
            return Err(Error::Argument("search needs k >= 1".into()));
        }
        let n = cfg.n;
        let masks = 1usize << n;
        let m = cfg.modulus;
        let mut images = Vec::new();
        let mut inverse = Vec::new();
        for p in permutations(n) {
            let img = (0..masks)
                .map(|a| bits(a as u64).fold(0u8, |acc, i| acc | (1 << p[i])))
                .collect();
            let mut inv = vec![0; n];
            for (i, &pi) in p.iter().enumerate() {
                inv[pi] = i;
            }
            images.push(img);
            inverse.push(inv);
        }
        let good = (0..masks)
            .map(|a| {
                (0..masks)
                    .filter(|&x| (x & a).count_ones() % m == 0)
                    .fold(0u64, |acc, x| acc | (1 << x))
            })
            .collect();
        // at most 64 members, so larger k adds no constraint in repetition mode
        let k = cfg.effective_k().min(masks as u64 + 1) as usize;
        Ok(Tables {
            n,
            masks,
            images,
            inverse,
            good,
            k,
            mode: cfg.mode,
        })
    }

    fn full(&self) -> usize {
        self.masks - 1
    }

    /// Intersections that a new member must meet in a multiple of the
    /// modulus.
    fn constraints(&self, fam: u64) -> u64 {
        let k = self.k;
        if self.mode == SearchMode::Distinct && fam.count_ones() as usize + 1 < k {
            return 0;
        }
        let mut levels = vec![0u64; k];
        levels[0] = 1 << self.full();
        for (count, a) in bits(fam).enumerate() {
            for j in (1..k.min(count + 2)).rev() {
                let mut add = 0u64;
                for x in bits(levels[j - 1]) {
                    add |= 1 << (x & a);
                }
                levels[j] |= add;
            }
        }
        match self.mode {
            SearchMode::Distinct => levels[k - 1],
            _ => levels.iter().fold(0, |acc, l| acc | l),
        }
    }

    fn compatible(&self, fam: u64) -> u64 {
        let need = self.constraints(fam);
        (0..self.masks)
            .filter(|&a| fam >> a & 1 == 0 && need & !self.good[a] == 0)
            .fold(0u64, |acc, a| acc | (1 << a))
    }

    fn canonical(&self, fam: u64) -> u64 {
        let mut degree = [0u32; MAX_SEARCH_N];
        for a in bits(fam) {
            for (i, d) in degree.iter_mut().enumerate().take(self.n) {
                *d += (a >> i & 1) as u32;
            }
        }
        let mut best = u64::MAX;
        for (img, inv) in self.images.iter().zip(&self.inverse) {
            if inv.windows(2).any(|w| degree[w[0]] < degree[w[1]]) {
                continue;
            }
            let image = bits(fam).fold(0u64, |acc, a| acc | (1 << img[a]));
            best = best.min(image);
        }
        best
    }

    fn greedy(&self) -> u64 {
        let mut fam = 0u64;
        loop {
            let c = self.compatible(fam);
            if c == 0 {
                return fam;
            }
            fam |= 1 << c.trailing_zeros();
        }
    }

    fn to_family(&self, fam: u64) -> SetFamily {
        let sets = bits(fam).map(|a| bits(a as u64).collect::<Vec<_>>());
        SetFamily::from_sets(self.n, sets).expect("masks fit the ground set")
    }
}

fn run(cfg: &SearchConfig, t: &Tables) -> Result<SearchResult> {
    let greedy = t.greedy();
    let lower = greedy.count_ones();
    let nodes = AtomicU64::new(0);
    let exhausted = AtomicBool::new(false);
    let mut frontier = vec![0u64];
    let mut classes_per_size = vec![1usize];
    loop {
        let children: Vec<Vec<u64>> = frontier
            .par_iter()
            .map(|&fam| {
                if exhausted.load(Ordering::Relaxed) {
                    return Vec::new();
                }
                let comp = t.compatible(fam);
                if fam.count_ones() + comp.count_ones() < lower {
                    return Vec::new();
                }
                let out: Vec<u64> = bits(comp).map(|a| t.canonical(fam | 1 << a)).collect();
                if nodes.fetch_add(out.len() as u64, Ordering::Relaxed) + out.len() as u64
                    > cfg.budget_nodes
                {
                    exhausted.store(true, Ordering::Relaxed);
                }
                out
            })
            .collect();
        if exhausted.load(Ordering::Relaxed) {
            let best = (frontier[0].count_ones() as usize).max(lower as usize);
            return Err(Error::SearchBudget {
                nodes: nodes.load(Ordering::Relaxed),
                budget: cfg.budget_nodes,
                best,
            });
        }
        let next: BTreeSet<u64> = children.into_iter().flatten().collect();
        if next.is_empty() {
            break;
        }
        classes_per_size.push(next.len());
        frontier = next.into_iter().collect();
    }
    let k = cfg.effective_k();
    let extremal_families: Vec<SetFamily> = frontier.iter().map(|&f| t.to_family(f)).collect();
    let mut rechecked = true;
    for fam in &extremal_families {
        let report = match cfg.mode {
            SearchMode::Distinct => is_weakly_k_closed(fam, k, cfg.modulus)?,
            _ => is_k_closed(fam, k, cfg.modulus)?,
        };
        rechecked &= report.holds;
    }
    Ok(SearchResult {
        n: cfg.n,
        modulus: cfg.modulus,
        k,
        mode: cfg.mode,
        max_size: frontier[0].count_ones() as usize,
        count_extremal: frontier.len(),
        extremal_families,
        classes_per_size,
        nodes_explored: nodes.into_inner(),
        greedy_lower_bound: lower as usize,
        rechecked,
    })
}

/// Finds the largest valid family on `[n]` and one representative of each
/// isomorphism class attaining it.
///
/// Families are grown one member at a time; after each step the frontier is
/// replaced by canonical forms (the least image under permutations that sort
/// coordinates by degree), so each class is expanded once. A family whose
/// size plus its number of compatible extensions cannot reach the greedy
/// lower bound is not expanded. The output does not depend on the thread
/// count.
pub fn exhaustive_max_family(cfg: &SearchConfig) -> Result<SearchResult> {
    let tables = Tables::new(cfg)?;
    match cfg.threads {
        Some(threads) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .map_err(|e| Error::Argument(format!("cannot start {threads} threads: {e}")))?;
            pool.install(|| run(cfg, &tables))
        }
        None => run(cfg, &tables),
    }
}
