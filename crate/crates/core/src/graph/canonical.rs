use super::Graph;
use crate::error::{Error, Result};

/// Largest order for which [`Graph::canonical_form`] searches permutations.
pub const CANONICAL_MAX: usize = 9;

impl Graph {
    /// Lexicographically smallest adjacency list over all relabelings, so
    /// isomorphic graphs get equal forms. Exhaustive over permutations;
    /// graphs above [`CANONICAL_MAX`] vertices keep their own labels.
    pub fn canonical_form(&self) -> Graph {
        let p = self.order();
        if p > CANONICAL_MAX {
            return self.clone();
        }
        let mut perm: Vec<usize> = (0..p).collect();
        let mut best = self.permuted(&perm);
        // Heap's algorithm.
        let mut c = vec![0usize; p];
        let mut i = 0;
        while i < p {
            if c[i] < i {
                if i % 2 == 0 {
                    perm.swap(0, i);
                } else {
                    perm.swap(c[i], i);
                }
                let cand = self.permuted(&perm);
                if cand.adj < best.adj {
                    best = cand;
                }
                c[i] += 1;
                i = 0;
            } else {
                c[i] = 0;
                i += 1;
            }
        }
        best
    }

    /// The graph with vertex `v` renamed `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        let p = self.order();
        if perm.len() != p {
            return Err(Error::DimensionMismatch { expected: p, got: perm.len() });
        }
        let mut seen = vec![false; p];
        for &v in perm {
            if v >= p || std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidParameter("relabeling is not a permutation".into()));
            }
        }
        Ok(self.permuted(perm))
    }

    fn permuted(&self, perm: &[usize]) -> Graph {
        let mut adj = vec![0u64; self.order()];
        for (i, j) in self.edges() {
            adj[perm[i]] |= 1 << perm[j];
            adj[perm[j]] |= 1 << perm[i];
        }
        Graph::from_adjacency(adj)
    }
}
