use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::One;

use super::{ClusterError, Quiver};
use crate::exact::{ExactRing, LaurentPoly};

/// A word of 1-based vertex indices, applied left to right.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MutationSequence(Vec<usize>);

impl MutationSequence {
    pub fn new(word: Vec<usize>) -> Self {
        MutationSequence(word)
    }

    pub fn empty() -> Self {
        MutationSequence(Vec::new())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Appends `k`, cancelling it against an equal last letter.
    pub fn push_reduced(&mut self, k: usize) {
        if self.0.last() == Some(&k) {
            self.0.pop();
        } else {
            self.0.push(k);
        }
    }

    pub fn then(&self, more: &[usize]) -> Self {
        let mut out = self.clone();
        out.0.extend_from_slice(more);
        out
    }

    pub fn reversed(&self) -> Self {
        MutationSequence(self.0.iter().rev().copied().collect())
    }

    /// Each index `i` replaced by `i + m mod 2m` (in `1..=2m`).
    pub fn barred(&self, m: usize) -> Self {
        MutationSequence(self.0.iter().map(|&i| (i + m - 1) % (2 * m) + 1).collect())
    }

    pub fn check_range(&self, size: usize) -> Result<(), ClusterError> {
        match self.0.iter().find(|&&k| k == 0 || k > size) {
            Some(&k) => Err(ClusterError::VertexOutOfRange { vertex: k, size }),
            None => Ok(()),
        }
    }
}

impl fmt::Display for MutationSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|k| k.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl fmt::Debug for MutationSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "mu[{}]", self)
    }
}

impl FromStr for MutationSequence {
    type Err = ClusterError;

    /// Comma-separated indices; the empty string is the empty word.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(MutationSequence::empty());
        }
        s.split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| ClusterError::Parse(format!("bad vertex index {t:?}"))))
            .collect::<Result<Vec<_>, _>>()
            .map(MutationSequence)
    }
}

impl From<Vec<usize>> for MutationSequence {
    fn from(v: Vec<usize>) -> Self {
        MutationSequence(v)
    }
}

/// A quiver with one variable per vertex, plus the mutation word that
/// produced it from its initial seed. Equality ignores the word.
#[derive(Clone)]
pub struct Seed<V> {
    quiver: Quiver,
    vars: Vec<V>,
    history: MutationSequence,
}

impl<V: PartialEq> PartialEq for Seed<V> {
    fn eq(&self, other: &Self) -> bool {
        self.quiver == other.quiver && self.vars == other.vars
    }
}

impl<V: Eq> Eq for Seed<V> {}

impl<V: std::hash::Hash> std::hash::Hash for Seed<V> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.quiver.hash(state);
        self.vars.hash(state);
    }
}

impl<V: ExactRing> Seed<V> {
    pub fn new(quiver: Quiver, vars: Vec<V>) -> Result<Self, ClusterError> {
        if quiver.size() != vars.len() {
            return Err(ClusterError::SizeMismatch { quiver: quiver.size(), vars: vars.len() });
        }
        Ok(Seed { quiver, vars, history: MutationSequence::empty() })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn vars(&self) -> &[V] {
        &self.vars
    }

    /// Variable at a 1-based vertex.
    pub fn var(&self, k: usize) -> &V {
        &self.vars[k - 1]
    }

    pub fn history(&self) -> &MutationSequence {
        &self.history
    }

    /// Exchange at vertex `k`: `t_k' = (prod_{i->k} t_i + prod_{k->i} t_i) / t_k`
    /// with arrow multiplicities as exponents, and matrix mutation of the quiver.
    pub fn mutate(&self, k: usize) -> Result<Seed<V>, ClusterError> {
        self.quiver.check_vertex(k)?;
        let one = self.vars[0].unit_like();
        let mut incoming = one.clone();
        let mut outgoing = one;
        for i in 1..=self.quiver.size() {
            let w = self.quiver.weight(i, k);
            for _ in 0..w.unsigned_abs() {
                if w > 0 {
                    incoming = incoming.times(&self.vars[i - 1]);
                } else {
                    outgoing = outgoing.times(&self.vars[i - 1]);
                }
            }
        }
        let exchanged = incoming.plus(&outgoing).divide(&self.vars[k - 1])?;
        let mut vars = self.vars.clone();
        vars[k - 1] = exchanged;
        let mut history = self.history.clone();
        history.push_reduced(k);
        Ok(Seed { quiver: self.quiver.mutate(k)?, vars, history })
    }

    pub fn mutate_sequence(&self, seq: &[usize]) -> Result<Seed<V>, ClusterError> {
        seq.iter().try_fold(self.clone(), |s, &k| s.mutate(k))
    }

    /// Mutation at every vertex of the `+` class (vertex 1's class).
    pub fn mu_plus(&self) -> Result<Seed<V>, ClusterError> {
        let (plus, _) = self.quiver.sign_classes()?;
        self.mutate_sequence(&plus)
    }

    /// Mutation at every vertex of the `-` class.
    pub fn mu_minus(&self) -> Result<Seed<V>, ClusterError> {
        let (_, minus) = self.quiver.sign_classes()?;
        self.mutate_sequence(&minus)
    }

    /// Same quiver and variables, forgetting the history.
    pub fn with_empty_history(&self) -> Seed<V> {
        Seed { quiver: self.quiver.clone(), vars: self.vars.clone(), history: MutationSequence::empty() }
    }

    /// Quiver of the seed this one was reached from.
    pub fn initial_quiver(&self) -> Quiver {
        self.quiver
            .mutate_sequence(self.history.reversed().as_slice())
            .expect("history vertices are in range")
    }
}

impl Seed<LaurentPoly> {
    /// `((x1, …, x_{2m}), Q_m)`.
    pub fn initial_symbolic(m: usize) -> Self {
        let n = 2 * m;
        let vars = (0..n).map(|i| LaurentPoly::var(n, i)).collect();
        Seed::new(Quiver::product_a2_am(m), vars).expect("sizes agree")
    }

    /// Sorted canonical text forms of the variables: the identity of the
    /// cluster, independent of vertex labels.
    pub fn cluster_key(&self) -> Vec<String> {
        let mut key: Vec<String> = self.vars.iter().map(|p| p.to_string()).collect();
        key.sort();
        key
    }

    pub fn evaluate(&self, point: &[BigRational]) -> Vec<BigRational> {
        self.vars.iter().map(|p| p.evaluate(point)).collect()
    }
}

impl Seed<BigRational> {
    /// Numeric seed over `Q_m` with the given initial values.
    pub fn initial_numeric(m: usize, values: Vec<BigRational>) -> Result<Self, ClusterError> {
        Seed::new(Quiver::product_a2_am(m), values)
    }

    /// All variables equal to one.
    pub fn ones(quiver: Quiver) -> Self {
        let n = quiver.size();
        Seed::new(quiver, vec![BigRational::one(); n]).expect("sizes agree")
    }

    pub fn is_all_ones(&self) -> bool {
        self.vars.iter().all(|v| v.is_one())
    }
}

impl<V: fmt::Display> fmt::Debug for Seed<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars: Vec<String> = self.vars.iter().map(|v| v.to_string()).collect();
        write!(f, "Seed {{ {:?}, vars: [{}], history: {:?} }}", self.quiver, vars.join(", "), self.history)
    }
}
