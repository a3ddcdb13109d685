use super::{bits, Graph};
use crate::error::{Error, Result};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

impl Graph {
    /// Cycle `0 - 1 - ... - (p-1) - 0`.
    pub fn cycle(p: usize) -> Result<Graph> {
        if p < 3 {
            return Err(invalid(format!("cycle needs p >= 3, got {p}")));
        }
        Graph::new(p, (0..p).map(|i| (i, (i + 1) % p)))
    }

    pub fn path(p: usize) -> Result<Graph> {
        Graph::new(p, (1..p).map(|i| (i - 1, i)))
    }

    pub fn empty(p: usize) -> Result<Graph> {
        Graph::new(p, std::iter::empty())
    }

    pub fn complete(p: usize) -> Result<Graph> {
        Graph::new(p, (0..p).flat_map(|i| (i + 1..p).map(move |j| (i, j))))
    }

    /// `k x m` grid; vertex `(r, c)` is `r * m + c`.
    pub fn grid(k: usize, m: usize) -> Result<Graph> {
        if k < 2 || m < 2 {
            return Err(invalid(format!("grid needs k, m >= 2, got {k}x{m}")));
        }
        let mut edges = Vec::new();
        for r in 0..k {
            for c in 0..m {
                let v = r * m + c;
                if c + 1 < m {
                    edges.push((v, v + 1));
                }
                if r + 1 < k {
                    edges.push((v, v + m));
                }
            }
        }
        Graph::new(k * m, edges)
    }

    /// `K_{k,m}` with parts `0..k` and `k..k+m`.
    pub fn complete_bipartite(k: usize, m: usize) -> Result<Graph> {
        if k == 0 || m == 0 {
            return Err(invalid(format!("bipartite parts must be nonempty, got {k}x{m}")));
        }
        Graph::new(k + m, (0..k).flat_map(|i| (k..k + m).map(move |j| (i, j))))
    }

    /// Wheel: a hub `0` joined to every vertex of the cycle `1..p`.
    pub fn wheel(p: usize) -> Result<Graph> {
        if p < 4 {
            return Err(invalid(format!("wheel needs p >= 4, got {p}")));
        }
        let rim = p - 1;
        let edges = (1..p).map(|i| (0, i)).chain((0..rim).map(|i| (1 + i, 1 + (i + 1) % rim)));
        Graph::new(p, edges)
    }

    /// Erdős–Rényi `G(p, eps)`: each pair is an edge independently with
    /// probability `eps`.
    pub fn random_graph(p: usize, eps: f64, seed: u64) -> Result<Graph> {
        if !(eps > 0.0 && eps < 1.0) {
            return Err(invalid(format!("eps must lie in (0, 1), got {eps}")));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut edges = Vec::new();
        for i in 0..p {
            for j in i + 1..p {
                if rng.random_bool(eps) {
                    edges.push((i, j));
                }
            }
        }
        Graph::new(p, edges)
    }

    /// The icosahedron: planar, 5-regular, 5-connected, 12 vertices.
    pub fn icosahedron() -> Graph {
        let mut edges = Vec::with_capacity(30);
        for i in 0..5 {
            let up = 1 + i;
            let up_next = 1 + (i + 1) % 5;
            let low = 6 + i;
            let low_next = 6 + (i + 1) % 5;
            edges.extend([(0, up), (up, up_next), (11, low), (low, low_next)]);
            edges.extend([(up, low), (up_next, low)]);
        }
        Graph::new(12, edges).expect("icosahedron edge list is valid")
    }

    /// Random chordal graph. Each new vertex is joined to a random clique
    /// of the graph built so far, so the insertion order reversed is a
    /// perfect elimination ordering.
    pub fn random_chordal(p: usize, seed: u64) -> Result<Graph> {
        if p == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut adj = vec![0u64; p];
        for v in 1..p {
            let anchor = rng.random_range(0..v);
            let mut clique = 1u64 << anchor;
            let mut candidates: Vec<usize> = bits(adj[anchor]).collect();
            // random greedy extension of the anchor's clique
            for i in (1..candidates.len()).rev() {
                let j = rng.random_range(0..=i);
                candidates.swap(i, j);
            }
            for u in candidates {
                if clique & !adj[u] == clique {
                    clique |= 1 << u;
                }
            }
            let mut chosen = 0u64;
            for u in bits(clique) {
                if rng.random_bool(0.7) {
                    chosen |= 1 << u;
                }
            }
            if rng.random_bool(0.1) {
                chosen = 0;
            }
            for u in bits(chosen) {
                adj[u] |= 1 << v;
                adj[v] |= 1 << u;
            }
        }
        Ok(Graph::from_adjacency(adj))
    }

    /// Random planar triangulation on `p >= 3` vertices: vertices are
    /// inserted into random faces, then a batch of random edge flips mixes
    /// the degree sequence. Every result is maximal planar.
    pub fn random_planar(p: usize, seed: u64) -> Result<Graph> {
        if p < 3 {
            return Err(invalid(format!("planar triangulation needs p >= 3, got {p}")));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut adj = vec![0u64; p];
        let link = |adj: &mut Vec<u64>, a: usize, b: usize| {
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        };
        link(&mut adj, 0, 1);
        link(&mut adj, 1, 2);
        link(&mut adj, 0, 2);
        let mut faces: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 1, 2]];
        for v in 3..p {
            let f = rng.random_range(0..faces.len());
            let [a, b, c] = faces.swap_remove(f);
            faces.extend([[a, b, v], [b, c, v], [a, c, v]]);
            link(&mut adj, a, v);
            link(&mut adj, b, v);
            link(&mut adj, c, v);
        }
        for _ in 0..4 * p {
            let f = rng.random_range(0..faces.len());
            let face = faces[f];
            let k = rng.random_range(0..3);
            let (u, w) = (face[k], face[(k + 1) % 3]);
            let x = face[(k + 2) % 3];
            let Some(g) = (0..faces.len())
                .find(|&g| g != f && faces[g].contains(&u) && faces[g].contains(&w))
            else {
                continue;
            };
            let y = *faces[g].iter().find(|&&z| z != u && z != w).unwrap();
            let deg = |z: usize| adj[z].count_ones();
            if x == y || adj[x] & (1 << y) != 0 || deg(u) <= 3 || deg(w) <= 3 {
                continue;
            }
            adj[u] &= !(1 << w);
            adj[w] &= !(1 << u);
            link(&mut adj, x, y);
            faces[f] = [x, y, u];
            faces[g] = [x, y, w];
        }
        Ok(Graph::from_adjacency(adj))
    }
}
