//! Graph parameters: minimum degree, vertex connectivity, degeneracy,
//! subgraph connectivity, clique number and exact treewidth, plus the
//! resulting lower and upper bounds on the Gaussian rank.

mod connectivity;
mod treewidth;

pub use connectivity::{
    k_connected_subgraph, local_connectivity, subgraph_connectivity, vertex_connectivity,
};
pub use treewidth::{treewidth_exact, DEFAULT_TREEWIDTH_LIMIT};

use crate::graph::{bits, Graph};
use serde::{Deserialize, Serialize};

pub fn min_degree(g: &Graph) -> usize {
    (0..g.order()).map(|v| g.degree(v)).min().unwrap_or(0)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Degeneracy {
    pub value: usize,
    /// Vertices in the order they were peeled off.
    pub order: Vec<usize>,
}

/// Repeatedly removes a vertex of minimum degree (lowest index on ties);
/// the degeneracy is the largest minimum degree seen along the way.
pub fn degeneracy(g: &Graph) -> Degeneracy {
    let mut alive = g.vertex_mask();
    let mut value = 0;
    let mut order = Vec::with_capacity(g.order());
    while alive != 0 {
        let (v, d) = bits(alive)
            .map(|v| (v, (g.neighbor_mask(v) & alive).count_ones() as usize))
            .min_by_key(|&(v, d)| (d, v))
            .unwrap();
        value = value.max(d);
        order.push(v);
        alive &= !(1 << v);
    }
    Degeneracy { value, order }
}

fn grow_clique(g: &Graph, cand: u64, size: usize, best: &mut usize) {
    if cand == 0 {
        *best = (*best).max(size);
        return;
    }
    let mut cand = cand;
    while cand != 0 {
        if size + cand.count_ones() as usize <= *best {
            return;
        }
        let v = cand.trailing_zeros() as usize;
        grow_clique(g, cand & g.neighbor_mask(v), size + 1, best);
        cand &= !(1 << v);
    }
}

/// `ω(G)` by branch and bound.
pub fn clique_number(g: &Graph) -> usize {
    let mut best = 0;
    grow_clique(g, g.vertex_mask(), 0, &mut best);
    best
}

/// `(κ*(G) + 1, δ*(G) + 1)`.
pub fn rank_bounds(g: &Graph) -> (usize, usize) {
    (subgraph_connectivity(g) + 1, degeneracy(g).value + 1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamReport {
    pub delta: usize,
    pub kappa: usize,
    pub delta_star: usize,
    pub kappa_star: usize,
    pub omega: usize,
    pub treewidth: Option<usize>,
    pub lower_bound: usize,
    pub upper_bound: usize,
}

impl ParamReport {
    /// Computes every parameter; treewidth only when `p <= treewidth_limit`.
    pub fn compute(g: &Graph, treewidth_limit: usize) -> Self {
        let delta_star = degeneracy(g).value;
        let kappa_star = subgraph_connectivity(g);
        ParamReport {
            delta: min_degree(g),
            kappa: vertex_connectivity(g),
            delta_star,
            kappa_star,
            omega: clique_number(g),
            treewidth: treewidth_exact(g, treewidth_limit).ok(),
            lower_bound: kappa_star + 1,
            upper_bound: delta_star + 1,
        }
    }
}
