//! Vertex connectivity by unit-capacity max-flow on the vertex-split
//! network, and the subgraph connectivity number built on top of it.

use crate::graph::{bits, Graph, VertexSet};

/// Max-flow network over the vertices of one induced subgraph. Vertex `a`
/// (position in `verts`) becomes `2a -> 2a + 1` with capacity one.
struct SplitNetwork {
    n: usize,
    cap: Vec<i32>,
}

impl SplitNetwork {
    fn new(g: &Graph, verts: &[usize], s: usize, t: usize) -> Self {
        let n = 2 * verts.len();
        let big = verts.len() as i32;
        let mut cap = vec![0i32; n * n];
        let pos = |v: usize| verts.binary_search(&v).ok();
        for (a, &v) in verts.iter().enumerate() {
            cap[(2 * a) * n + 2 * a + 1] = if a == s || a == t { big } else { 1 };
            for u in g.neighbors(v) {
                if let Some(b) = pos(u) {
                    cap[(2 * a + 1) * n + 2 * b] = big;
                }
            }
        }
        SplitNetwork { n, cap }
    }

    /// BFS over residual arcs from `src`; returns the parent array.
    fn residual_bfs(&self, src: usize) -> Vec<Option<usize>> {
        let n = self.n;
        let mut parent = vec![None; n];
        parent[src] = Some(src);
        let mut queue = std::collections::VecDeque::from([src]);
        while let Some(x) = queue.pop_front() {
            for (y, par) in parent.iter_mut().enumerate() {
                if par.is_none() && self.cap[x * n + y] > 0 {
                    *par = Some(x);
                    queue.push_back(y);
                }
            }
        }
        parent
    }

    /// Augments up to `limit` unit paths from `src` to `dst`.
    fn max_flow(&mut self, src: usize, dst: usize, limit: usize) -> usize {
        let n = self.n;
        let mut flow = 0;
        while flow < limit {
            let parent = self.residual_bfs(src);
            if parent[dst].is_none() {
                break;
            }
            let mut y = dst;
            while y != src {
                let x = parent[y].unwrap();
                self.cap[x * n + y] -= 1;
                self.cap[y * n + x] += 1;
                y = x;
            }
            flow += 1;
        }
        flow
    }
}

/// Number of internally vertex-disjoint paths between the non-adjacent
/// vertices `s` and `t`, capped at `limit`.
pub fn local_connectivity(g: &Graph, s: usize, t: usize, limit: usize) -> usize {
    let verts: Vec<usize> = (0..g.order()).collect();
    let mut net = SplitNetwork::new(g, &verts, s, t);
    net.max_flow(2 * s + 1, 2 * t, limit)
}

/// Connectivity of the subgraph induced by `mask`, with a minimum
/// separating vertex set when the subgraph is not complete.
pub(crate) fn connectivity_of_mask(g: &Graph, mask: u64) -> (usize, Option<u64>) {
    let verts: Vec<usize> = bits(mask).collect();
    let m = verts.len();
    if m <= 1 {
        return (0, None);
    }
    if !g.is_connected_mask(mask) {
        return (0, Some(0));
    }
    if g.is_clique_mask(mask) {
        return (m - 1, None);
    }
    let mut best = m - 1;
    let mut best_pair = None;
    for a in 0..m {
        for b in a + 1..m {
            if g.has_edge(verts[a], verts[b]) {
                continue;
            }
            let mut net = SplitNetwork::new(g, &verts, a, b);
            let f = net.max_flow(2 * a + 1, 2 * b, best);
            if f < best {
                best = f;
                best_pair = Some((a, b));
            }
        }
    }
    // a non-complete graph always has a non-adjacent pair with flow <= m - 2
    let (a, b) = best_pair.expect("non-complete graph has a separating pair");
    let mut net = SplitNetwork::new(g, &verts, a, b);
    net.max_flow(2 * a + 1, 2 * b, usize::MAX);
    let reach = net.residual_bfs(2 * a + 1);
    let sep = verts
        .iter()
        .enumerate()
        .filter(|&(c, _)| reach[2 * c].is_some() && reach[2 * c + 1].is_none())
        .fold(0u64, |acc, (_, &v)| acc | (1 << v));
    (best, Some(sep))
}

/// `κ(G)`: fewest vertex deletions that disconnect the graph or leave a
/// single vertex. `κ(K_p) = p - 1`; disconnected graphs give 0.
pub fn vertex_connectivity(g: &Graph) -> usize {
    connectivity_of_mask(g, g.vertex_mask()).0
}

fn k_core(g: &Graph, mut mask: u64, k: usize) -> u64 {
    loop {
        let weak = bits(mask)
            .filter(|&v| ((g.neighbor_mask(v) & mask).count_ones() as usize) < k)
            .fold(0u64, |acc, v| acc | (1 << v));
        if weak == 0 {
            return mask;
        }
        mask &= !weak;
    }
}

/// A vertex set inducing a `k`-connected subgraph inside `mask`, if any.
/// Any such subgraph sits inside the `k`-core and, when a component has a
/// separator `S` with `|S| < k`, inside one piece of `C - S` together with
/// `S`.
fn find_k_connected(g: &Graph, mask: u64, k: usize) -> Option<u64> {
    let core = k_core(g, mask, k);
    for comp in g.components_of_mask(core) {
        if (comp.count_ones() as usize) < k + 1 {
            continue;
        }
        let (kappa, sep) = connectivity_of_mask(g, comp);
        if kappa >= k {
            return Some(comp);
        }
        let sep = sep.expect("component below k is not complete");
        for piece in g.components_of_mask(comp & !sep) {
            if let Some(found) = find_k_connected(g, piece | sep, k) {
                return Some(found);
            }
        }
    }
    None
}

/// Vertices of an induced subgraph that is `k`-connected, if one exists.
pub fn k_connected_subgraph(g: &Graph, k: usize) -> Option<VertexSet> {
    find_k_connected(g, g.vertex_mask(), k).map(VertexSet::from_mask)
}

/// `κ*(G)`: largest vertex connectivity over all subgraphs. Only induced
/// subgraphs need to be searched, and `κ* <= δ*` bounds the search.
pub fn subgraph_connectivity(g: &Graph) -> usize {
    let upper = super::degeneracy(g).value;
    (1..=upper)
        .rev()
        .find(|&k| find_k_connected(g, g.vertex_mask(), k).is_some())
        .unwrap_or(0)
}
