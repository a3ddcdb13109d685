use gaussrank::completion::{
    build_certificate, chordal_complete, complete_pd, ips_fit, CertificateConfig, CompletionConfig,
    CompletionStatus,
};
use gaussrank::params::{clique_number, rank_bounds, vertex_connectivity};
use gaussrank::sympsd::{correlation_normalize, match_deviation, random_general_position};
use gaussrank::{Error, Graph, SymMatrix, Tolerances};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

fn random_correlation(p: usize, n: usize, rng: &mut ChaCha8Rng) -> SymMatrix {
    let f = random_general_position(p, n, rng, &Tolerances::default()).unwrap();
    correlation_normalize(&f.gram()).unwrap().0
}

/// Positive definiteness by Cholesky, independent of the eigen-solver.
fn cholesky_pd(m: &SymMatrix) -> bool {
    m.as_matrix().clone().cholesky().is_some()
}

#[test]
fn chordal_completion_agrees_with_the_solver() {
    let cfg = CompletionConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for i in 0..120u64 {
        let p = rng.random_range(3..=8);
        let g = Graph::random_chordal(p, 3000 + i).unwrap();
        let omega = clique_number(&g);
        let n = rng.random_range(omega..=p);
        let a = random_correlation(p, n, &mut rng);

        let closed = chordal_complete(&g, &a).unwrap();
        assert!(cholesky_pd(&closed), "instance {i}");
        assert!(match_deviation(&closed, &a, &g) <= 1e-10);
        let inv = closed.as_matrix().clone().try_inverse().unwrap();
        for (u, v) in g.non_edges() {
            assert!(inv[(u, v)].abs() <= 1e-8 * inv.abs().max(), "instance {i}: inverse not zero at ({u}, {v})");
        }

        let r = complete_pd(&g, &a, &cfg).unwrap();
        assert_eq!(r.status, CompletionStatus::Feasible, "instance {i}: {:?}", r.diagnostics);

        if omega >= 2 {
            let low = random_correlation(p, omega - 1, &mut rng);
            assert!(matches!(chordal_complete(&g, &low), Err(Error::CliqueNotPd(_))));
            assert_eq!(complete_pd(&g, &low, &cfg).unwrap().status, CompletionStatus::Infeasible);
        }
    }
}

#[test]
fn feasible_answers_are_sound() {
    let cfg = CompletionConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    let mut feasible = 0;
    for _ in 0..80 {
        let p = rng.random_range(3..=7);
        let g = Graph::random_graph(p, rng.random_range(0.3..0.8), rng.random()).unwrap();
        let (lower, upper) = rank_bounds(&g);
        let n = rng.random_range(lower.saturating_sub(1).max(1)..=upper.min(p));
        let a = random_correlation(p, n, &mut rng);
        let r = complete_pd(&g, &a, &cfg).unwrap();
        if r.status == CompletionStatus::Feasible {
            feasible += 1;
            let pm = r.p.expect("feasible result carries P");
            assert!(cholesky_pd(&pm));
            assert!(match_deviation(&pm, &a, &g) <= 1e-10);
            assert!(r.lambda_min.unwrap() > 0.0);
        } else {
            assert!(r.p.is_none());
        }
    }
    assert!(feasible > 10);
}

#[test]
fn adding_a_rank_one_term_never_breaks_feasibility() {
    // If P matches A then P + uu' matches A + uu'.
    let cfg = CompletionConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for _ in 0..60 {
        let p = rng.random_range(4..=7);
        let g = Graph::random_graph(p, 0.5, rng.random()).unwrap();
        let (lower, _) = rank_bounds(&g);
        let n = lower.saturating_sub(1).max(1);
        let f = random_general_position(p, n, &mut rng, &Tolerances::default()).unwrap();
        let u: DMatrix<f64> = DMatrix::from_fn(1, p, |_, _| rng.sample(StandardNormal));
        let w = f.factor();
        let more = DMatrix::from_fn(n + 1, p, |i, j| if i < n { w[(i, j)] } else { u[(0, j)] });
        let a = SymMatrix::new(w.transpose() * w).unwrap();
        let b = SymMatrix::new(more.transpose() * &more).unwrap();
        let ra = complete_pd(&g, &a, &cfg).unwrap().status;
        let rb = complete_pd(&g, &b, &cfg).unwrap().status;
        if ra == CompletionStatus::Feasible {
            assert_ne!(rb, CompletionStatus::Infeasible);
        }
    }
}

#[test]
fn certificate_matrices_have_no_completion() {
    let cfg = CompletionConfig::default();
    let ccfg = CertificateConfig::default();
    let graphs = [
        Graph::cycle(4).unwrap(),
        Graph::cycle(5).unwrap(),
        Graph::cycle(7).unwrap(),
        Graph::grid(3, 3).unwrap(),
        Graph::complete(5).unwrap(),
        Graph::complete_bipartite(3, 3).unwrap(),
        Graph::wheel(6).unwrap(),
    ];
    for g in graphs {
        let k = vertex_connectivity(&g);
        for seed in 0..3 {
            let cert = build_certificate(&g, k, &ccfg, seed).unwrap();
            let r = complete_pd(&g, &cert.a, &cfg).unwrap();
            assert_ne!(r.status, CompletionStatus::Feasible, "{:?} seed {seed}", g.edges());
        }
    }
}

#[test]
fn ips_matches_closed_forms() {
    let cfg = CompletionConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    for i in 0..40u64 {
        let p = rng.random_range(3..=7);
        let g = Graph::random_chordal(p, 4000 + i).unwrap();
        let a = random_correlation(p, p, &mut rng);
        let ips = ips_fit(&g, &a, &cfg).unwrap();
        assert!(ips.converged, "instance {i}: {}", ips.reason);
        let closed = chordal_complete(&g, &a).unwrap();
        let sigma = ips.omega.as_matrix().clone().try_inverse().unwrap();
        let diff = (sigma - closed.as_matrix()).abs().max();
        assert!(diff <= 1e-6, "instance {i}: {diff:e}");
        for (u, v) in g.non_edges() {
            assert_eq!(ips.omega.get(u, v), 0.0);
        }
    }
}

#[test]
fn solver_rejects_bad_input() {
    let cfg = CompletionConfig::default();
    let g = Graph::cycle(4).unwrap();
    assert!(complete_pd(&g, &SymMatrix::identity(5), &cfg).is_err());
    let neg = SymMatrix::from_diagonal(&[1.0, -1.0, 1.0, 1.0]).unwrap();
    assert!(complete_pd(&g, &neg, &cfg).is_err());
    let bad = CompletionConfig { max_iters: 0, ..CompletionConfig::default() };
    assert!(complete_pd(&g, &SymMatrix::identity(4), &bad).is_err());
}
