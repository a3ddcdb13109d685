mod common;

use common::{all_graphs, oracles, small_graph_corpus};
use gaussrank::params::{
    clique_number, degeneracy, local_connectivity, min_degree, subgraph_connectivity,
    treewidth_exact, vertex_connectivity,
};
use gaussrank::{Graph, VertexSet};
use proptest::prelude::*;

#[test]
fn fast_parameters_match_brute_force() {
    for g in small_graph_corpus(240, 8) {
        assert_eq!(vertex_connectivity(&g), oracles::kappa(&g), "kappa {:?}", g.edges());
        assert_eq!(subgraph_connectivity(&g), oracles::kappa_star(&g), "kappa* {:?}", g.edges());
        assert_eq!(degeneracy(&g).value, oracles::degeneracy(&g));
        assert_eq!(clique_number(&g), oracles::clique_number(&g));
        assert_eq!(g.is_chordal(), oracles::chordal(&g), "chordal {:?}", g.edges());
    }
}

#[test]
fn treewidth_matches_elimination_game() {
    for g in small_graph_corpus(80, 7) {
        assert_eq!(treewidth_exact(&g, 12).unwrap(), oracles::treewidth(&g), "{:?}", g.edges());
    }
}

#[test]
fn random_graph_kappa_star_against_oracle() {
    let g = Graph::random_graph(8, 0.5, 1).unwrap();
    assert_eq!(subgraph_connectivity(&g), oracles::kappa_star(&g));
}

#[test]
fn menger_local_connectivity() {
    for g in small_graph_corpus(120, 8) {
        let p = g.order();
        let mut best = p.saturating_sub(1);
        for s in 0..p {
            for t in s + 1..p {
                if g.has_edge(s, t) {
                    continue;
                }
                let flow = local_connectivity(&g, s, t, usize::MAX);
                assert_eq!(flow, oracles::min_st_separator(&g, s, t));
                best = best.min(flow);
            }
        }
        if g.order() > 1 {
            assert_eq!(vertex_connectivity(&g), best);
        }
    }
}

#[test]
fn parameter_chain_on_all_graphs_up_to_five_vertices() {
    for p in 1..=5 {
        for g in all_graphs(p) {
            let omega = clique_number(&g);
            let ks = subgraph_connectivity(&g);
            let ds = degeneracy(&g).value;
            let tw = treewidth_exact(&g, 12).unwrap();
            assert!(omega <= ks + 1 && ks <= ds && ds <= tw, "{:?}", g.edges());
            assert!(vertex_connectivity(&g) <= min_degree(&g));
            if g.is_chordal() {
                assert_eq!((ks + 1, ds + 1, tw + 1), (omega, omega, omega), "{:?}", g.edges());
            }
        }
    }
}

#[test]
fn degeneracy_recurrence_on_min_degree_vertex() {
    for g in small_graph_corpus(100, 8).into_iter().filter(|g| g.order() >= 2) {
        let v = (0..g.order()).min_by_key(|&v| g.degree(v)).unwrap();
        let rest = degeneracy(&g.delete_vertex(v).unwrap()).value;
        assert_eq!(degeneracy(&g).value, min_degree(&g).max(rest));
    }
}

fn arb_graph() -> impl Strategy<Value = Graph> {
    (2usize..=8, 0.1f64..0.9, any::<u64>())
        .prop_map(|(p, eps, seed)| Graph::random_graph(p, eps, seed).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn deletions_never_increase_star_parameters(g in arb_graph()) {
        let ks = subgraph_connectivity(&g);
        let ds = degeneracy(&g).value;
        for v in 0..g.order() {
            let h = g.delete_vertex(v).unwrap();
            prop_assert!(subgraph_connectivity(&h) <= ks);
            prop_assert!(degeneracy(&h).value <= ds);
            prop_assert_eq!(h.order(), g.order() - 1);
            prop_assert_eq!(h.edge_count(), g.edge_count() - g.degree(v));
        }
        for (i, j) in g.edges() {
            let h = g.delete_edge(i, j).unwrap();
            prop_assert!(subgraph_connectivity(&h) <= ks);
            prop_assert!(degeneracy(&h).value <= ds);
        }
    }

    #[test]
    fn induced_on_all_vertices_is_identity(g in arb_graph()) {
        let all = VertexSet::from_mask(g.vertex_mask());
        prop_assert_eq!(g.induced_subgraph(&all).unwrap().graph, g);
    }

    #[test]
    fn disjoint_union_adds_components(a in arb_graph(), b in arb_graph()) {
        let u = Graph::disjoint_union(&a, &b).unwrap();
        prop_assert_eq!(
            u.connected_components().len(),
            a.connected_components().len() + b.connected_components().len()
        );
    }

    #[test]
    fn random_graph_reproducible(p in 1usize..20, eps in 0.05f64..0.95, seed in any::<u64>()) {
        prop_assert_eq!(
            Graph::random_graph(p, eps, seed).unwrap(),
            Graph::random_graph(p, eps, seed).unwrap()
        );
    }
}

#[test]
fn named_graph_examples() {
    let c8 = Graph::cycle(8).unwrap();
    assert_eq!((subgraph_connectivity(&c8), degeneracy(&c8).value), (2, 2));
    let g45 = Graph::grid(4, 5).unwrap();
    assert_eq!((subgraph_connectivity(&g45), degeneracy(&g45).value), (2, 2));
    for (k, m) in [(4, 3), (2, 5), (3, 3)] {
        let b = Graph::complete_bipartite(k, m).unwrap();
        assert_eq!(subgraph_connectivity(&b), k.min(m));
        assert_eq!(degeneracy(&b).value, k.min(m));
    }
    for (k, m) in [(2, 2), (3, 5), (4, 4), (5, 6)] {
        let g = Graph::grid(k, m).unwrap();
        assert_eq!((subgraph_connectivity(&g), degeneracy(&g).value), (2, 2));
    }
}
