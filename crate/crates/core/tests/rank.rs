mod common;

use common::oracles;
use gaussrank::rank::{estimate_gaussian_rank, estimate_weak_rank, probe_rank, Determination, RankCache, RankConfig};
use gaussrank::{Graph, VertexSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn cfg() -> RankConfig {
    RankConfig { trials_per_rank: 60, seed: 5, ..RankConfig::default() }
}

fn rank(g: &Graph) -> Option<usize> {
    estimate_gaussian_rank(g, &cfg()).unwrap().concluded_rank
}

#[test]
fn chordal_rank_is_the_clique_number() {
    for i in 0..20u64 {
        let g = Graph::random_chordal(3 + (i % 5) as usize, 70 + i).unwrap();
        let r = estimate_gaussian_rank(&g, &cfg()).unwrap();
        assert_eq!(r.concluded_rank, Some(oracles::clique_number(&g)));
        assert_eq!(r.determination, Determination::ExactByBounds);
    }
}

#[test]
fn symmetric_families() {
    for p in 2..=7 {
        assert_eq!(rank(&Graph::complete(p).unwrap()), Some(p), "K{p}");
        assert_eq!(rank(&Graph::path(p).unwrap()), Some(2), "P{p}");
    }
    for p in 4..=8 {
        assert_eq!(rank(&Graph::cycle(p).unwrap()), Some(3), "C{p}");
    }
    for (m, n) in [(2, 2), (2, 4), (3, 3), (3, 4), (4, 3)] {
        let expected = m.min(n) + 1;
        assert_eq!(rank(&Graph::complete_bipartite(m, n).unwrap()), Some(expected), "K{m},{n}");
    }
    for p in 5..=8 {
        assert_eq!(rank(&Graph::wheel(p).unwrap()), Some(4), "W{p}");
    }
    assert_eq!(rank(&Graph::empty(4).unwrap()), Some(1));
}

#[test]
fn induced_subgraphs_have_smaller_rank() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let mut cache = RankCache::new();
    for _ in 0..15 {
        let p = rng.random_range(4..=7);
        let g = Graph::random_graph(p, 0.6, rng.random()).unwrap();
        let Some(r) = cache.rank(&g, &cfg()).unwrap() else { continue };
        let keep: Vec<usize> = (0..p).filter(|_| rng.random_bool(0.7)).collect();
        if keep.is_empty() {
            continue;
        }
        let h = g.induced_subgraph(&VertexSet::new(keep)).unwrap().graph;
        if let Some(rh) = cache.rank(&h, &cfg()).unwrap() {
            assert!(rh <= r, "{:?}: r(H) = {rh} > r(G) = {r}", g.edges());
        }
    }
}

#[test]
fn disjoint_union_takes_the_maximum() {
    let parts = [
        Graph::cycle(5).unwrap(),
        Graph::complete(4).unwrap(),
        Graph::path(3).unwrap(),
        Graph::complete_bipartite(2, 3).unwrap(),
    ];
    for a in &parts {
        for b in &parts {
            let u = Graph::disjoint_union(a, b).unwrap();
            let expected = rank(a).unwrap().max(rank(b).unwrap());
            assert_eq!(rank(&u), Some(expected));
        }
    }
}

#[test]
fn weak_rank_never_exceeds_rank() {
    let run = RankConfig { samples_per_n: 60, ..cfg() };
    for g in [
        Graph::cycle(4).unwrap(),
        Graph::cycle(5).unwrap(),
        Graph::complete(3).unwrap(),
        Graph::complete_bipartite(2, 3).unwrap(),
        Graph::path(4).unwrap(),
    ] {
        let strong = rank(&g).unwrap();
        let weak = estimate_weak_rank(&g, &run).unwrap();
        let n_hat = weak.n_hat.expect("every sample exists at n = p");
        assert!(n_hat <= strong, "{:?}: n_hat {n_hat} > r {strong}", g.edges());
        for pt in &weak.per_n {
            assert!(pt.ci_low <= pt.frequency && pt.frequency <= pt.ci_high);
        }
    }
}

#[test]
fn infeasible_draws_only_below_the_upper_bound() {
    // Every rank-(δ*+1) general-position matrix has a completion.
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..10 {
        let p = rng.random_range(4..=7);
        let g = Graph::random_graph(p, 0.5, rng.random()).unwrap();
        let upper = gaussrank::params::rank_bounds(&g).1;
        if upper > p {
            continue;
        }
        let stats = probe_rank(&g, upper, &cfg()).unwrap();
        assert_eq!(stats.infeasible, 0, "{:?}", g.edges());
    }
}
