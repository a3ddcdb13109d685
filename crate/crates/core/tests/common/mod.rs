#![allow(dead_code)]

pub mod oracles;

use gaussrank::Graph;

/// Seeded corpus of small random graphs over a spread of densities.
pub fn small_graph_corpus(count: usize, max_p: usize) -> Vec<Graph> {
    let densities = [0.2, 0.35, 0.5, 0.65, 0.8];
    (0..count)
        .map(|i| {
            let p = 2 + i % (max_p - 1);
            let eps = densities[(i / (max_p - 1)) % densities.len()];
            Graph::random_graph(p, eps, 1000 + i as u64).unwrap()
        })
        .collect()
}

/// Every labelled graph on `p` vertices (p <= 6 keeps this small enough).
pub fn all_graphs(p: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> =
        (0..p).flat_map(|i| (i + 1..p).map(move |j| (i, j))).collect();
    let m = pairs.len();
    (0u64..(1u64 << m)).map(move |code| {
        let edges = (0..m).filter(|k| code & (1 << k) != 0).map(|k| pairs[k]);
        Graph::new(p, edges).unwrap()
    })
}

/// One representative of every isomorphism class on `p` vertices, built by
/// adding a vertex with every neighbourhood to the classes on `p - 1`.
pub fn nonisomorphic_graphs(p: usize) -> Vec<Graph> {
    if p == 0 {
        return vec![Graph::empty(0).unwrap()];
    }
    let mut classes = vec![Graph::empty(1).unwrap()];
    for q in 2..=p {
        let mut seen = std::collections::HashSet::new();
        let mut next = Vec::new();
        for g in &classes {
            for nbrs in 0u64..(1 << (q - 1)) {
                let edges = g
                    .edges()
                    .into_iter()
                    .chain((0..q - 1).filter(|v| nbrs & (1 << v) != 0).map(|v| (v, q - 1)));
                let h = Graph::new(q, edges).unwrap().canonical_form();
                if seen.insert(h.clone()) {
                    next.push(h);
                }
            }
        }
        classes = next;
    }
    classes
}
