//! Quivers, seeds and mutation; the bipartite belt, the evaluation map
//! `ev` onto unitary friezes, and enumeration of finite-type clusters.
//!
//! Vertices are numbered `1..=2m`. For the product quiver `Q_m` the top row
//! is `1..=m` and the bottom row `m+1..=2m`; vertex 1 is in the `+` class.

mod quiver;
mod seed;

use std::collections::{BTreeSet, HashSet};

use num_rational::BigRational;
use rayon::prelude::*;
use thiserror::Error;

use crate::exact::{LaurentError, LaurentPoly};
use crate::frieze::{complete_from_columns, complete_symbolic, seed_columns, seed_layout, Fragment, FriezeError};

pub use quiver::{DynkinType, Quiver};
pub use seed::{MutationSequence, Seed};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClusterError {
    #[error("NotSkewSymmetric: {0}")]
    NotSkewSymmetric(String),
    #[error("VertexOutOfRange: vertex {vertex} not in 1..={size}")]
    VertexOutOfRange { vertex: usize, size: usize },
    #[error("NotBipartite: vertices {first} and {second} are adjacent and share a sign")]
    NotBipartite { first: usize, second: usize },
    #[error("SizeMismatch: quiver has {quiver} vertices but {vars} variables were given")]
    SizeMismatch { quiver: usize, vars: usize },
    #[error("NotDivisible: {0} (internal error: exchange relations are Laurent)")]
    NotDivisible(LaurentError),
    #[error("CapExceeded: more than {cap} clusters")]
    CapExceeded { cap: usize },
    #[error("DifferentInitialSeeds: the two seeds do not share an initial quiver")]
    DifferentInitialSeeds,
    #[error("internal error: ev produced an invalid fragment: {0}")]
    Frieze(FriezeError),
    #[error("Parse: {0}")]
    Parse(String),
}

impl From<LaurentError> for ClusterError {
    fn from(e: LaurentError) -> Self {
        ClusterError::NotDivisible(e)
    }
}

/// Seeds of the bipartite belt over `Q_m`: the initial seed, then
/// alternately `mu_plus` and `mu_minus`. Returns `steps + 1` seeds.
///
/// In belt seed `k` the `+` class carries column `k + (k mod 2)` of the
/// formal frieze and the `-` class column `k + 1 - (k mod 2)`.
pub fn belt_seeds(m: usize, steps: usize) -> Vec<Seed<LaurentPoly>> {
    let mut seeds = vec![Seed::initial_symbolic(m)];
    for k in 0..steps {
        let last = seeds.last().expect("nonempty");
        let next = if k % 2 == 0 { last.mu_plus() } else { last.mu_minus() };
        seeds.push(next.expect("Q_m is bipartite"));
    }
    seeds
}

/// Columns `(left, right)` of the formal frieze read off a belt seed at
/// step `k`, using the seed column layout.
pub fn belt_columns(seed: &Seed<LaurentPoly>, k: usize) -> (usize, Vec<LaurentPoly>, Vec<LaurentPoly>) {
    let m = seed.vars().len() / 2;
    let (l0, l1) = seed_layout(m);
    let plus: Vec<LaurentPoly> = l0.iter().map(|&v| seed.var(v).clone()).collect();
    let minus: Vec<LaurentPoly> = l1.iter().map(|&v| seed.var(v).clone()).collect();
    if k % 2 == 0 {
        (k, plus, minus)
    } else {
        (k, minus, plus)
    }
}

/// Position `(row, col)` of a Laurent polynomial in the formal frieze of
/// width `m`, if it occurs there. Not every cluster variable does.
pub fn belt_position(m: usize, poly: &LaurentPoly) -> Option<(usize, usize)> {
    let formal = complete_symbolic(m).expect("formal frieze exists");
    for (r, row) in formal.rows().iter().enumerate() {
        if let Some(c) = row.iter().position(|p| p == poly) {
            return Some((r + 1, c));
        }
    }
    None
}

/// Values of the initial cluster at which the cluster reached by `seq`
/// from `(x, quiver)` is all ones.
pub fn ev_point_from(quiver: &Quiver, seq: &MutationSequence) -> Result<Vec<BigRational>, ClusterError> {
    seq.check_range(quiver.size())?;
    let last = quiver.mutate_sequence(seq.as_slice())?;
    let back = Seed::ones(last).mutate_sequence(seq.reversed().as_slice())?;
    Ok(back.vars().to_vec())
}

/// [`ev_point_from`] over `Q_m`.
pub fn ev_point(m: usize, seq: &MutationSequence) -> Result<Vec<BigRational>, ClusterError> {
    ev_point_from(&Quiver::product_a2_am(m), seq)
}

/// The unitary fragment `ev(seq)`: the formal frieze evaluated where the
/// cluster `mu_seq(x)` equals one.
pub fn eval_ev(m: usize, seq: &MutationSequence) -> Result<Fragment, ClusterError> {
    let x = ev_point(m, seq)?;
    let (c0, c1) = seed_columns(&x);
    complete_from_columns(&c0, &c1).map_err(ClusterError::Frieze)
}

/// All clusters reachable from the initial seed over `Q_m`, one
/// representative seed each, in breadth-first order. Clusters are compared
/// as sets of Laurent polynomials.
pub fn enumerate_clusters(m: usize, cap: usize) -> Result<Vec<Seed<LaurentPoly>>, ClusterError> {
    enumerate_clusters_from(Seed::initial_symbolic(m), cap)
}

pub fn enumerate_clusters_from(initial: Seed<LaurentPoly>, cap: usize) -> Result<Vec<Seed<LaurentPoly>>, ClusterError> {
    let n = initial.quiver().size();
    let mut seen: HashSet<Vec<String>> = HashSet::new();
    seen.insert(initial.cluster_key());
    let mut found = vec![initial];
    let mut frontier = vec![0usize];
    if found.len() > cap {
        return Err(ClusterError::CapExceeded { cap });
    }
    while !frontier.is_empty() {
        let children: Vec<Result<Vec<(Vec<String>, Seed<LaurentPoly>)>, ClusterError>> = frontier
            .par_iter()
            .map(|&idx| {
                let s = &found[idx];
                (1..=n)
                    .map(|k| s.mutate(k).map(|t| (t.cluster_key(), t)))
                    .collect()
            })
            .collect();
        let mut next = Vec::new();
        for batch in children {
            for (key, seed) in batch? {
                if seen.insert(key) {
                    found.push(seed);
                    if found.len() > cap {
                        return Err(ClusterError::CapExceeded { cap });
                    }
                    next.push(found.len() - 1);
                }
            }
        }
        frontier = next;
    }
    Ok(found)
}

/// Clusters as sorted lists of polynomial strings, ready for JSON export.
pub fn cluster_strings(seeds: &[Seed<LaurentPoly>]) -> Vec<Vec<String>> {
    seeds.iter().map(|s| s.cluster_key()).collect()
}

/// `c ~ d`: setting the variables of `c` to one forces those of `d` to one.
/// Both seeds are located by their mutation histories.
pub fn cluster_equivalent<V: crate::exact::ExactRing, W: crate::exact::ExactRing>(
    c: &Seed<V>,
    d: &Seed<W>,
) -> Result<bool, ClusterError> {
    let q = c.initial_quiver();
    if q != d.initial_quiver() {
        return Err(ClusterError::DifferentInitialSeeds);
    }
    let x = ev_point_from(&q, c.history())?;
    let reached = Seed::new(q, x)?.mutate_sequence(d.history().as_slice())?;
    Ok(reached.is_all_ones())
}

/// Sorted value multisets of every cluster over `Q_m` evaluated at `point`.
pub fn value_multisets(m: usize, point: &[BigRational], cap: usize) -> Result<BTreeSet<Vec<BigRational>>, ClusterError> {
    let clusters = enumerate_clusters(m, cap)?;
    Ok(clusters
        .iter()
        .map(|s| {
            let mut v = s.evaluate(point);
            v.sort();
            v
        })
        .collect())
}
