//! Simple undirected graphs on vertices `0..p`.
//!
//! Vertices are stored 0-based. The edge-list text format and
//! [`Graph::from_edge_list`] use 1-based labels. Adjacency is kept as one
//! `u64` bitmask per vertex, so graphs are limited to [`MAX_VERTICES`]
//! vertices, which is far beyond the scale at which any of the exact
//! parameters or completion routines are usable.

mod canonical;
mod cliques;
mod generators;
mod io;
mod spec;

pub use canonical::CANONICAL_MAX;
pub use io::{parse_edge_list, write_edge_list};
pub use spec::{GraphSpec, GENERATOR_NAMES};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

pub const MAX_VERTICES: usize = 64;

/// Sorted, deduplicated set of 0-based vertex indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new(mut vertices: Vec<usize>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        VertexSet(vertices)
    }

    pub fn from_mask(mask: u64) -> Self {
        VertexSet(bits(mask).collect())
    }

    pub fn mask(&self) -> u64 {
        self.0.iter().fold(0u64, |m, &v| m | (1u64 << v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// Vertices of `0..p` not in the set.
    pub fn complement(&self, p: usize) -> VertexSet {
        VertexSet((0..p).filter(|v| !self.contains(*v)).collect())
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::new(iter.into_iter().collect())
    }
}

/// Iterate over the set bits of a mask, lowest first.
pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

pub(crate) fn full_mask(p: usize) -> u64 {
    if p == 64 {
        u64::MAX
    } else {
        (1u64 << p) - 1
    }
}

/// An induced subgraph together with the map from its vertices back to the
/// parent graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedSubgraph {
    pub graph: Graph,
    /// `labels[new] = old`.
    pub labels: Vec<usize>,
}

impl InducedSubgraph {
    pub fn old_to_new(&self, old: usize) -> Option<usize> {
        self.labels.binary_search(&old).ok()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    p: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Builds a graph from 0-based edges. Duplicates and reversed pairs are
    /// merged.
    pub fn new<I>(p: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if p == 0 {
            return Err(Error::EmptyGraph);
        }
        if p > MAX_VERTICES {
            return Err(Error::TooManyVertices { p, max: MAX_VERTICES });
        }
        let mut adj = vec![0u64; p];
        for (i, j) in edges {
            for v in [i, j] {
                if v >= p {
                    return Err(Error::VertexOutOfRange { vertex: v, p });
                }
            }
            if i == j {
                return Err(Error::SelfLoop(i));
            }
            adj[i] |= 1 << j;
            adj[j] |= 1 << i;
        }
        Ok(Graph { p, adj })
    }

    /// Builds a graph from 1-based vertex labels, as used by the edge-list
    /// format.
    pub fn from_edge_list(p: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        if p == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut edges = Vec::with_capacity(pairs.len());
        for &(i, j) in pairs {
            for v in [i, j] {
                if v == 0 || v > p {
                    return Err(Error::VertexOutOfRange { vertex: v, p });
                }
            }
            edges.push((i - 1, j - 1));
        }
        Graph::new(p, edges).map_err(|e| match e {
            Error::SelfLoop(v) => Error::SelfLoop(v + 1),
            other => other,
        })
    }

    pub(crate) fn from_adjacency(adj: Vec<u64>) -> Self {
        Graph { p: adj.len(), adj }
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        self.p
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i < self.p && j < self.p && self.adj[i] & (1 << j) != 0
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn neighbor_mask(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> {
        bits(self.adj[v])
    }

    pub fn vertex_mask(&self) -> u64 {
        full_mask(self.p)
    }

    /// Edges as `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.p)
            .flat_map(|i| bits(self.adj[i] >> i).map(move |k| (i, i + k)))
            .filter(|&(i, j)| i != j)
            .collect()
    }

    /// Vertex pairs `(i, j)`, `i < j`, that are not edges.
    pub fn non_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.p {
            for j in i + 1..self.p {
                if !self.has_edge(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() == self.p * (self.p - 1) / 2
    }

    /// Whether the vertices in `mask` are pairwise adjacent.
    pub fn is_clique_mask(&self, mask: u64) -> bool {
        bits(mask).all(|v| (mask & !(1 << v)) & !self.adj[v] == 0)
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.p {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, p: self.p })
        }
    }

    /// Subgraph induced by the vertices of `mask`, relabelled in increasing
    /// order. Panics-free for masks within range; empty masks are rejected.
    pub(crate) fn induced_by_mask(&self, mask: u64) -> (Graph, Vec<usize>) {
        let labels: Vec<usize> = bits(mask).collect();
        let adj = labels
            .iter()
            .map(|&old| {
                let nb = self.adj[old] & mask;
                labels
                    .iter()
                    .enumerate()
                    .filter(|(_, &o)| nb & (1 << o) != 0)
                    .fold(0u64, |m, (new, _)| m | (1 << new))
            })
            .collect();
        (Graph::from_adjacency(adj), labels)
    }

    pub fn induced_subgraph(&self, set: &VertexSet) -> Result<InducedSubgraph> {
        for v in set.iter() {
            self.check_vertex(v)?;
        }
        if set.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let (graph, labels) = self.induced_by_mask(set.mask());
        Ok(InducedSubgraph { graph, labels })
    }

    /// `G - v`. Vertices above `v` shift down by one.
    pub fn delete_vertex(&self, v: usize) -> Result<Graph> {
        self.check_vertex(v)?;
        if self.p == 1 {
            return Err(Error::LastVertex);
        }
        Ok(self.induced_by_mask(self.vertex_mask() & !(1 << v)).0)
    }

    /// `G - e`, same vertex set.
    pub fn delete_edge(&self, i: usize, j: usize) -> Result<Graph> {
        self.check_vertex(i)?;
        self.check_vertex(j)?;
        if !self.has_edge(i, j) {
            return Err(Error::MissingEdge(i, j));
        }
        let mut adj = self.adj.clone();
        adj[i] &= !(1 << j);
        adj[j] &= !(1 << i);
        Ok(Graph::from_adjacency(adj))
    }

    /// Glue `g1` and `g2` along the vertex pairs in `glue` (vertex of `g1`,
    /// vertex of `g2`). Both glued sets must be cliques. The result keeps
    /// the vertices of `g1` as `0..p1` and appends the unglued vertices of
    /// `g2` in increasing order. An empty glue gives the disjoint union.
    pub fn clique_sum(g1: &Graph, g2: &Graph, glue: &[(usize, usize)]) -> Result<Graph> {
        let mut map2: Vec<Option<usize>> = vec![None; g2.p];
        let (mut m1, mut m2) = (0u64, 0u64);
        for &(a, b) in glue {
            g1.check_vertex(a)?;
            g2.check_vertex(b)?;
            if m1 & (1 << a) != 0 || m2 & (1 << b) != 0 {
                return Err(Error::InvalidGlue(format!("vertex repeated in pair ({a}, {b})")));
            }
            m1 |= 1 << a;
            m2 |= 1 << b;
            map2[b] = Some(a);
        }
        if !g1.is_clique_mask(m1) {
            return Err(Error::GlueNotClique("the first graph"));
        }
        if !g2.is_clique_mask(m2) {
            return Err(Error::GlueNotClique("the second graph"));
        }
        let mut next = g1.p;
        for slot in map2.iter_mut() {
            if slot.is_none() {
                *slot = Some(next);
                next += 1;
            }
        }
        if next > MAX_VERTICES {
            return Err(Error::TooManyVertices { p: next, max: MAX_VERTICES });
        }
        let mut edges = g1.edges();
        edges.extend(
            g2.edges()
                .into_iter()
                .map(|(i, j)| (map2[i].unwrap(), map2[j].unwrap())),
        );
        Graph::new(next, edges)
    }

    pub fn disjoint_union(g1: &Graph, g2: &Graph) -> Result<Graph> {
        Graph::clique_sum(g1, g2, &[])
    }

    /// Connected components of the subgraph induced by `mask`, as masks.
    pub(crate) fn components_of_mask(&self, mask: u64) -> Vec<u64> {
        let mut remaining = mask;
        let mut out = Vec::new();
        while remaining != 0 {
            let start = remaining & remaining.wrapping_neg();
            let mut comp = start;
            let mut frontier = start;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let fresh = self.adj[v] & mask & !comp;
                comp |= fresh;
                frontier |= fresh;
            }
            remaining &= !comp;
            out.push(comp);
        }
        out
    }

    pub(crate) fn is_connected_mask(&self, mask: u64) -> bool {
        mask != 0 && self.components_of_mask(mask).len() == 1
    }

    pub fn connected_components(&self) -> Vec<VertexSet> {
        self.components_of_mask(self.vertex_mask())
            .into_iter()
            .map(VertexSet::from_mask)
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_mask(self.vertex_mask())
    }

    /// Perfect elimination ordering when the graph is chordal.
    ///
    /// Maximum cardinality search visits vertices in order; the reverse of
    /// the visit order is a perfect elimination ordering iff the graph is
    /// chordal, which is then checked directly.
    pub fn perfect_elimination_order(&self) -> Option<Vec<usize>> {
        let p = self.p;
        let mut weight = vec![0usize; p];
        let mut visited = 0u64;
        let mut visit = Vec::with_capacity(p);
        for _ in 0..p {
            let v = (0..p)
                .filter(|&v| visited & (1 << v) == 0)
                .max_by_key(|&v| (weight[v], std::cmp::Reverse(v)))
                .unwrap();
            visited |= 1 << v;
            visit.push(v);
            for u in bits(self.adj[v] & !visited) {
                weight[u] += 1;
            }
        }
        visit.reverse();
        let peo = visit;
        let mut later = self.vertex_mask();
        for &v in &peo {
            later &= !(1 << v);
            if !self.is_clique_mask(self.adj[v] & later) {
                return None;
            }
        }
        Some(peo)
    }

    pub fn is_chordal(&self) -> bool {
        self.perfect_elimination_order().is_some()
    }
}
