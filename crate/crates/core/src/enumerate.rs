//! Bounded exhaustive search for integral closed friezes, orbit counting,
//! and the unitary classification.
//!
//! Search results are complete only with respect to the bound: every
//! fragment whose columns 0 and 1 have entries in `1..=B` is found.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_bigint::BigInt;
use rand::Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::cluster::{eval_ev, ClusterError, MutationSequence};
use crate::frieze::{complete_from_integer_columns, period_of, Fragment};
use crate::symmetry::{canonical_form, orbit};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error("CapExceeded: more than {cap} results")]
    CapExceeded { cap: usize },
    #[error("Config: {0}")]
    Config(String),
    #[error(transparent)]
    Cluster(#[from] ClusterError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub width: usize,
    pub bound: u64,
    pub workers: Option<usize>,
    pub cap: Option<usize>,
}

impl SearchConfig {
    pub fn new(width: usize, bound: u64) -> Self {
        SearchConfig { width, bound, workers: None, cap: None }
    }
}

/// Propagates in `i128`. `None` means overflow, so the caller must decide
/// exactly; `Some(false)` is a definite rejection.
fn quick_check(col0: &[i128], col1: &[i128]) -> Option<bool> {
    let m = col0.len();
    let period = period_of(m);
    let mut prev: Vec<i128> = col0.to_vec();
    let mut cur: Vec<i128> = col1.to_vec();
    for _ in 2..period + 2 {
        let mut next = vec![0i128; m];
        for r in 0..m {
            let up = if r == 0 { 1 } else { cur[r - 1] };
            let down = if r + 1 == m { 1 } else { cur[r + 1] };
            let num = up.checked_mul(down)?.checked_add(cur[r])?;
            if num % prev[r] != 0 {
                return Some(false);
            }
            next[r] = num / prev[r];
        }
        prev = cur;
        cur = next;
    }
    Some(prev == col0 && cur == col1)
}

fn confirm(col0: &[i128], col1: &[i128]) -> Option<Fragment> {
    let big = |c: &[i128]| c.iter().map(|&v| BigInt::from(v)).collect::<Vec<_>>();
    match quick_check(col0, col1) {
        Some(false) => None,
        _ => complete_from_integer_columns(&big(col0), &big(col1)).ok().filter(|f| f.is_valid()),
    }
}

/// All second columns compatible with `col0`: `b_r` divides
/// `a_r + a_{r-1} a_{r+1}` (column -1 is integral) and `a_r` divides
/// `b_r + b_{r-1} b_{r+1}` (column 2 is integral).
fn second_columns(col0: &[i128], bound: i128) -> Vec<Vec<i128>> {
    let m = col0.len();
    let a = |r: isize| if r < 0 || r >= m as isize { 1 } else { col0[r as usize] };
    let choices: Vec<Vec<i128>> = (0..m as isize)
        .map(|r| {
            let t = a(r) + a(r - 1) * a(r + 1);
            (1..=bound.min(t)).filter(|d| t % d == 0).collect()
        })
        .collect();
    // Row `i` of column 2 is integral once b_{i-1}, b_i, b_{i+1} are known.
    fn row_ok(col0: &[i128], b: &[i128], i: usize) -> bool {
        let at = |k: isize| if k < 0 || k as usize >= b.len() { 1 } else { b[k as usize] };
        let i = i as isize;
        (at(i) + at(i - 1) * at(i + 1)) % col0[i as usize] == 0
    }
    fn rec(r: usize, choices: &[Vec<i128>], col0: &[i128], b: &mut Vec<i128>, out: &mut Vec<Vec<i128>>) {
        let m = col0.len();
        if r == m {
            if row_ok(col0, b, m - 1) {
                out.push(b.clone());
            }
            return;
        }
        for &v in &choices[r] {
            b.push(v);
            if r == 0 || row_ok(col0, b, r - 1) {
                rec(r + 1, choices, col0, b, out);
            }
            b.pop();
        }
    }
    let mut out = Vec::new();
    let mut b = Vec::with_capacity(m);
    rec(0, &choices, col0, &mut b, &mut out);
    out
}

/// Every fragment whose seed columns have entries in `1..=bound`, in
/// ascending order.
pub fn enumerate_fragments(cfg: &SearchConfig) -> Result<BTreeSet<Fragment>, EnumerateError> {
    if cfg.bound == 0 {
        return Err(EnumerateError::Config("bound must be at least 1".into()));
    }
    let m = cfg.width;
    let bound = cfg.bound as i128;
    if m == 0 {
        return Ok([Fragment::trivial()].into_iter().collect());
    }
    // Prefixes of the first column split the work across threads.
    let prefix_len = m.min(2);
    let prefixes: Vec<Vec<i128>> = product(prefix_len, bound);
    let search = || {
        prefixes
            .par_iter()
            .map(|prefix| {
                let mut found = Vec::new();
                for tail in product(m - prefix_len, bound) {
                    let col0: Vec<i128> = prefix.iter().chain(tail.iter()).copied().collect();
                    for col1 in second_columns(&col0, bound) {
                        if let Some(f) = confirm(&col0, &col1) {
                            found.push(f);
                        }
                    }
                    if let Some(cap) = cfg.cap {
                        if found.len() > cap {
                            return Err(EnumerateError::CapExceeded { cap });
                        }
                    }
                }
                Ok(found)
            })
            .collect::<Result<Vec<_>, _>>()
    };
    let batches = match cfg.workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build()
            .map_err(|e| EnumerateError::Config(e.to_string()))?
            .install(search)?,
        None => search()?,
    };
    let out: BTreeSet<Fragment> = batches.into_iter().flatten().collect();
    if let Some(cap) = cfg.cap {
        if out.len() > cap {
            return Err(EnumerateError::CapExceeded { cap });
        }
    }
    Ok(out)
}

/// `[1..=bound]^len` in lexicographic order.
fn product(len: usize, bound: i128) -> Vec<Vec<i128>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|p| {
                (1..=bound).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitClass {
    pub representative: Fragment,
    pub size: usize,
    /// How many of the input fragments fall in this orbit.
    pub present: usize,
}

/// Groups fragments by canonical form, ordered by representative.
pub fn count_orbits<'a>(frags: impl IntoIterator<Item = &'a Fragment>) -> Vec<OrbitClass> {
    let mut groups: BTreeMap<Fragment, usize> = BTreeMap::new();
    for f in frags {
        *groups.entry(canonical_form(f)).or_default() += 1;
    }
    groups
        .into_iter()
        .map(|(rep, present)| OrbitClass { size: orbit(&rep).len(), representative: rep, present })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    /// Fragment with the shortest word found whose `ev` gives it.
    pub unitary: BTreeMap<Fragment, MutationSequence>,
    /// Input fragments without a witness.
    pub unknown: BTreeSet<Fragment>,
    /// Whether the search closed up, so `unknown` is certified non-unitary.
    pub exhaustive: bool,
    /// Every unitary fragment reached, including ones not in the input.
    pub reached: usize,
}

/// Breadth-first search over mutation words up to `depth`, identifying
/// words with equal `ev` fragments.
pub fn unitary_fragments(m: usize, depth: usize) -> Result<(BTreeMap<Fragment, MutationSequence>, bool), EnumerateError> {
    let mut seen: BTreeMap<Fragment, MutationSequence> = BTreeMap::new();
    let start = MutationSequence::empty();
    seen.insert(eval_ev(m, &start)?, start.clone());
    let mut frontier = vec![start];
    for _ in 0..depth {
        let children: Vec<Vec<(Fragment, MutationSequence)>> = frontier
            .par_iter()
            .map(|w| {
                (1..=2 * m)
                    .map(|k| {
                        let mut next = w.clone();
                        next.push_reduced(k);
                        eval_ev(m, &next).map(|f| (f, next))
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut next = Vec::new();
        for (f, w) in children.into_iter().flatten() {
            if let std::collections::btree_map::Entry::Vacant(e) = seen.entry(f) {
                e.insert(w.clone());
                next.push(w);
            }
        }
        if next.is_empty() {
            return Ok((seen, true));
        }
        frontier = next;
    }
    Ok((seen, false))
}

pub fn classify_unitary(frags: &BTreeSet<Fragment>, m: usize, depth: usize) -> Result<Classification, EnumerateError> {
    let (all, exhaustive) = unitary_fragments(m, depth)?;
    let mut unitary = BTreeMap::new();
    let mut unknown = BTreeSet::new();
    for f in frags {
        match all.get(f) {
            Some(w) => {
                unitary.insert(f.clone(), w.clone());
            }
            None => {
                unknown.insert(f.clone());
            }
        }
    }
    Ok(Classification { unitary, unknown, exhaustive, reached: all.len() })
}

/// A random word of `len` letters in `1..=2m` with no letter repeated
/// twice in a row.
pub fn random_word<R: Rng>(m: usize, len: usize, rng: &mut R) -> MutationSequence {
    let mut w: Vec<usize> = Vec::with_capacity(len);
    while w.len() < len {
        let k = rng.gen_range(1..=2 * m);
        if w.last() != Some(&k) {
            w.push(k);
        }
    }
    MutationSequence::new(w)
}

/// `ev` of each word, then the number of distinct canonical forms among
/// the first `checkpoints[i]` words.
pub fn distinct_unitary_counts(m: usize, words: &[MutationSequence], checkpoints: &[usize]) -> Result<Vec<usize>, EnumerateError> {
    let canon: Vec<Fragment> = words
        .par_iter()
        .map(|w| eval_ev(m, w).map(|f| canonical_form(&f)))
        .collect::<Result<Vec<_>, _>>()?;
    let mut index: HashSet<&Fragment> = HashSet::new();
    let mut counts = Vec::new();
    let mut cps = checkpoints.iter().peekable();
    for (i, f) in canon.iter().enumerate() {
        index.insert(f);
        while cps.peek().is_some_and(|&&c| c == i + 1) {
            counts.push(index.len());
            cps.next();
        }
    }
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn width_one() {
        let got = enumerate_fragments(&SearchConfig::new(1, 5)).unwrap();
        assert_eq!(got.len(), 5);
        let orbits = count_orbits(&got);
        assert_eq!(orbits.len(), 1);
        assert_eq!(orbits[0].size, 5);
    }

    #[test]
    fn width_one_brute_force() {
        let mut brute = BTreeSet::new();
        for a in 1..=5 {
            for b in 1..=5 {
                if let Ok(f) = complete_from_integer_columns(&[BigInt::from(a)], &[BigInt::from(b)]) {
                    brute.insert(f);
                }
            }
        }
        assert_eq!(enumerate_fragments(&SearchConfig::new(1, 5)).unwrap(), brute);
    }

    #[test]
    fn second_column_filter_is_exact_for_width_two() {
        for a in 1..=6i128 {
            for c in 1..=6i128 {
                let col0 = [a, c];
                let filtered: BTreeSet<Vec<i128>> = second_columns(&col0, 6).into_iter().collect();
                for b0 in 1..=6 {
                    for b1 in 1..=6 {
                        let ok = confirm(&col0, &[b0, b1]).is_some();
                        if ok {
                            assert!(filtered.contains(&vec![b0, b1]));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn width_two() {
        let got = enumerate_fragments(&SearchConfig::new(2, 10)).unwrap();
        assert_eq!(got.len(), 51);
        let orbits = count_orbits(&got);
        let mut sizes: Vec<usize> = orbits.iter().map(|o| o.size).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 6, 8, 12, 24]);
        for name in ["width2_a", "width2_b", "width2_c", "width2_d", "width2_e"] {
            assert!(got.contains(&corpus::get(name).unwrap()), "{name}");
        }
        let with_workers = enumerate_fragments(&SearchConfig { workers: Some(2), ..SearchConfig::new(2, 10) }).unwrap();
        assert_eq!(with_workers, got);
        assert_eq!(
            enumerate_fragments(&SearchConfig { cap: Some(10), ..SearchConfig::new(2, 10) }),
            Err(EnumerateError::CapExceeded { cap: 10 })
        );
    }

    #[test]
    fn monotone_in_bound() {
        let small = enumerate_fragments(&SearchConfig::new(2, 3)).unwrap();
        let big = enumerate_fragments(&SearchConfig::new(2, 6)).unwrap();
        assert!(small.is_subset(&big));
        assert_eq!(big.len(), 51);
    }

    #[test]
    fn classify_width_two() {
        let frags = enumerate_fragments(&SearchConfig::new(2, 10)).unwrap();
        let c = classify_unitary(&frags, 2, 50).unwrap();
        assert!(c.exhaustive);
        assert_eq!(c.unitary.len(), 50);
        assert_eq!(c.reached, 50);
        let e = corpus::get("width2_e").unwrap();
        assert_eq!(c.unknown.iter().collect::<Vec<_>>(), vec![&e]);
        assert!(c.unitary[&corpus::get("width2_a").unwrap()].is_empty());
    }
}
