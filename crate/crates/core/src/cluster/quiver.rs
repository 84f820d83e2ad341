use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use super::ClusterError;

/// Quiver without loops or 2-cycles, stored as its skew-symmetric exchange
/// matrix: `b[i][j]` is the number of arrows `i -> j` minus the number of
/// arrows `j -> i`. Vertices are 1-based in the public API.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Quiver {
    b: Vec<Vec<i64>>,
}

/// Simply-laced Dynkin diagram recognised from an underlying graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DynkinType {
    A(usize),
    D(usize),
    E(usize),
}

impl Quiver {
    pub fn from_matrix(b: Vec<Vec<i64>>) -> Result<Self, ClusterError> {
        let n = b.len();
        for (i, row) in b.iter().enumerate() {
            if row.len() != n {
                return Err(ClusterError::NotSkewSymmetric(format!("row {} has length {}", i + 1, row.len())));
            }
            for j in 0..n {
                if row[j] != -b[j][i] {
                    return Err(ClusterError::NotSkewSymmetric(format!("entries ({}, {}) and ({}, {})", i + 1, j + 1, j + 1, i + 1)));
                }
            }
        }
        Ok(Quiver { b })
    }

    /// Builds a quiver on `n` vertices from 1-based arrows `(tail, head)`;
    /// repeated arrows add up and opposite arrows cancel.
    pub fn from_arrows(n: usize, arrows: &[(usize, usize)]) -> Result<Self, ClusterError> {
        let mut b = vec![vec![0i64; n]; n];
        for &(i, j) in arrows {
            if i == 0 || j == 0 || i > n || j > n {
                return Err(ClusterError::VertexOutOfRange { vertex: i.max(j), size: n });
            }
            if i == j {
                return Err(ClusterError::NotSkewSymmetric(format!("loop at vertex {i}")));
            }
            b[i - 1][j - 1] += 1;
            b[j - 1][i - 1] -= 1;
        }
        Ok(Quiver { b })
    }

    /// The product quiver `A_2 × A_m` on vertices `1..=2m`: top row `1..=m`,
    /// bottom row `m+1..=2m`, every square an oriented cycle, starting with
    /// the arrows `1 -> 2` and `m+1 -> 1`.
    pub fn product_a2_am(m: usize) -> Self {
        assert!(m >= 1);
        let mut arrows = Vec::new();
        for i in 1..m {
            // top row alternates 1 -> 2 <- 3 -> 4 ...
            if i % 2 == 1 {
                arrows.push((i, i + 1));
            } else {
                arrows.push((i + 1, i));
            }
            // bottom row alternates m+1 <- m+2 -> m+3 <- ...
            if i % 2 == 1 {
                arrows.push((m + i + 1, m + i));
            } else {
                arrows.push((m + i, m + i + 1));
            }
        }
        for i in 1..=m {
            if i % 2 == 1 {
                arrows.push((m + i, i));
            } else {
                arrows.push((i, m + i));
            }
        }
        Quiver::from_arrows(2 * m, &arrows).expect("well-formed grid")
    }

    pub fn size(&self) -> usize {
        self.b.len()
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.b
    }

    /// `b[i][j]` for 1-based vertices.
    pub fn weight(&self, i: usize, j: usize) -> i64 {
        self.b[i - 1][j - 1]
    }

    /// Arrows `(tail, head, multiplicity)`, 1-based, in row-major order.
    pub fn arrows(&self) -> Vec<(usize, usize, u64)> {
        let mut out = Vec::new();
        for (i, row) in self.b.iter().enumerate() {
            for (j, &w) in row.iter().enumerate() {
                if w > 0 {
                    out.push((i + 1, j + 1, w as u64));
                }
            }
        }
        out
    }

    pub(crate) fn check_vertex(&self, k: usize) -> Result<(), ClusterError> {
        if k == 0 || k > self.size() {
            return Err(ClusterError::VertexOutOfRange { vertex: k, size: self.size() });
        }
        Ok(())
    }

    /// Matrix mutation at vertex `k`:
    /// `b'_ij = -b_ij` if `i = k` or `j = k`, otherwise
    /// `b'_ij = b_ij + sign(b_ik) * max(b_ik * b_kj, 0)`.
    pub fn mutate(&self, k: usize) -> Result<Quiver, ClusterError> {
        self.check_vertex(k)?;
        let k = k - 1;
        let n = self.size();
        let mut b = self.b.clone();
        for i in 0..n {
            for j in 0..n {
                if i == k || j == k {
                    b[i][j] = -self.b[i][j];
                } else {
                    let bik = self.b[i][k];
                    let bkj = self.b[k][j];
                    b[i][j] = self.b[i][j] + bik.signum() * (bik * bkj).max(0);
                }
            }
        }
        Ok(Quiver { b })
    }

    pub fn mutate_sequence(&self, seq: &[usize]) -> Result<Quiver, ClusterError> {
        seq.iter().try_fold(self.clone(), |q, &k| q.mutate(k))
    }

    /// All arrows reversed.
    pub fn opposite(&self) -> Quiver {
        Quiver { b: self.b.iter().map(|r| r.iter().map(|w| -w).collect()).collect() }
    }

    /// Relabels vertices: vertex `i` becomes `perm[i-1]` (1-based images).
    pub fn relabel(&self, perm: &[usize]) -> Quiver {
        let n = self.size();
        let mut b = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                b[perm[i] - 1][perm[j] - 1] = self.b[i][j];
            }
        }
        Quiver { b }
    }

    /// Undirected edges `{i, j}` with `i < j`, 1-based, with multiplicity.
    pub fn underlying_edges(&self) -> Vec<(usize, usize, u64)> {
        let mut out = Vec::new();
        for i in 0..self.size() {
            for j in i + 1..self.size() {
                if self.b[i][j] != 0 {
                    out.push((i + 1, j + 1, self.b[i][j].unsigned_abs()));
                }
            }
        }
        out
    }

    fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.b[v].iter().enumerate().filter(|(_, &w)| w != 0).map(|(j, _)| j)
    }

    /// Two-colouring of the underlying graph with vertex 1 (and the first
    /// vertex of every other component) coloured `+`. Returns `true` for `+`.
    pub fn bipartition(&self) -> Result<Vec<bool>, ClusterError> {
        let n = self.size();
        let mut colour: Vec<Option<bool>> = vec![None; n];
        for start in 0..n {
            if colour[start].is_some() {
                continue;
            }
            colour[start] = Some(true);
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                let cv = colour[v].expect("queued vertices are coloured");
                for w in self.neighbours(v) {
                    match colour[w] {
                        None => {
                            colour[w] = Some(!cv);
                            queue.push_back(w);
                        }
                        Some(cw) if cw == cv => {
                            return Err(ClusterError::NotBipartite { first: v + 1, second: w + 1 });
                        }
                        _ => {}
                    }
                }
            }
        }
        Ok(colour.into_iter().map(|c| c.expect("all coloured")).collect())
    }

    /// Recognises an orientation of a simply-laced Dynkin diagram.
    pub fn dynkin_type(&self) -> Option<DynkinType> {
        let n = self.size();
        let edges = self.underlying_edges();
        if edges.iter().any(|e| e.2 != 1) || edges.len() + 1 != n {
            return None;
        }
        // connected + n-1 edges = tree
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for w in self.neighbours(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return None;
        }
        let degree: Vec<usize> = (0..n).map(|v| self.neighbours(v).count()).collect();
        let branch: Vec<usize> = (0..n).filter(|&v| degree[v] >= 3).collect();
        match branch.as_slice() {
            [] => Some(DynkinType::A(n)),
            [c] if degree[*c] == 3 => {
                let mut arms: Vec<usize> = self
                    .neighbours(*c)
                    .map(|start| {
                        let (mut prev, mut cur, mut len) = (*c, start, 1);
                        loop {
                            let next: Vec<usize> = self.neighbours(cur).filter(|&w| w != prev).collect();
                            match next.as_slice() {
                                [] => return len,
                                [w] => {
                                    prev = cur;
                                    cur = *w;
                                    len += 1;
                                }
                                _ => return usize::MAX,
                            }
                        }
                    })
                    .collect();
                arms.sort_unstable();
                match arms.as_slice() {
                    [1, 1, _] => Some(DynkinType::D(n)),
                    [1, 2, 2] | [1, 2, 3] | [1, 2, 4] => Some(DynkinType::E(n)),
                    _ => None,
                }
            }
            _ => None,
        }
    }

    /// Breadth-first search through the labelled mutation class for a
    /// quiver whose underlying graph is Dynkin. Returns the mutation word
    /// and type, or `None` if `cap` quivers were visited without success.
    pub fn find_dynkin_form(&self, cap: usize) -> Option<(Vec<usize>, DynkinType)> {
        let mut seen: HashSet<Quiver> = HashSet::new();
        let mut queue = VecDeque::from([(self.clone(), Vec::new())]);
        seen.insert(self.clone());
        while let Some((q, word)) = queue.pop_front() {
            if let Some(t) = q.dynkin_type() {
                return Some((word, t));
            }
            if seen.len() >= cap {
                continue;
            }
            for k in 1..=q.size() {
                let next = q.mutate(k).expect("vertex in range");
                if seen.insert(next.clone()) {
                    let mut w = word.clone();
                    w.push(k);
                    queue.push_back((next, w));
                }
            }
        }
        None
    }

    /// Sign classes `(+, -)` as 1-based vertex lists.
    pub fn sign_classes(&self) -> Result<(Vec<usize>, Vec<usize>), ClusterError> {
        let colour = self.bipartition()?;
        let plus = (1..=self.size()).filter(|&v| colour[v - 1]).collect();
        let minus = (1..=self.size()).filter(|&v| !colour[v - 1]).collect();
        Ok((plus, minus))
    }

    /// Set of 1-based arrows, for order-independent comparisons.
    pub fn arrow_set(&self) -> BTreeSet<(usize, usize, u64)> {
        self.arrows().into_iter().collect()
    }
}

impl fmt::Debug for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arrows: Vec<String> = self
            .arrows()
            .iter()
            .map(|(i, j, w)| if *w == 1 { format!("{i}->{j}") } else { format!("{i}={w}=>{j}") })
            .collect();
        write!(f, "Quiver[{}]", arrows.join(", "))
    }
}
