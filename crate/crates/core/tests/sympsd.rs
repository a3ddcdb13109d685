use gaussrank::sympsd::{
    correlation_normalize, extend_rank_up, extend_same_rank, is_general_position, match_deviation, matches_on,
    random_general_position, SAMPLE_MARGIN,
};
use gaussrank::{Graph, PsdFactor, SymMatrix, Tolerances};
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

fn subsets(p: usize, size: usize) -> Vec<Vec<usize>> {
    (0u32..(1 << p))
        .filter(|m| m.count_ones() as usize == size)
        .map(|m| (0..p).filter(|v| m & (1 << v) != 0).collect())
        .collect()
}

fn svd_rank(m: &DMatrix<f64>, rel: f64) -> usize {
    let s = m.clone().svd(false, false).singular_values;
    let top = s.max();
    s.iter().filter(|&&x| x > rel * top).count()
}

fn gaussian(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    DMatrix::from_fn(rows, cols, |_, _| rng.sample(StandardNormal))
}

#[test]
fn gaussian_draws_need_at_most_one_retry() {
    let tol = Tolerances::default();
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let mut retries = 0;
    for draw in 0..500 {
        let mut attempts = 0;
        loop {
            attempts += 1;
            let w = gaussian(3, 8, &mut rng);
            let a = SymMatrix::new(w.transpose() * &w).unwrap();
            if is_general_position(&a, 3, &tol).unwrap().general_position {
                break;
            }
            assert!(attempts < 2, "draw {draw} failed twice");
        }
        retries += attempts - 1;
    }
    assert!(retries <= 25, "{retries} retries over 500 draws");
    for seed in 0..500 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_general_position(8, 3, &mut rng, &tol).unwrap();
        assert!(is_general_position(&f.gram(), 3, &tol).unwrap().min_margin >= SAMPLE_MARGIN);
    }
}

#[test]
fn factor_round_trip_keeps_columns_independent() {
    let tol = Tolerances::default();
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..100 {
        let p = rng.random_range(2..=7);
        let d = rng.random_range(1..=p);
        let f = random_general_position(p, d, &mut rng, &tol).unwrap();
        let a = f.gram();
        assert!(is_general_position(&a, d, &tol).unwrap().general_position);
        let back = PsdFactor::from_psd(&a, tol.singularity_rel).unwrap();
        assert_eq!(back.rank(), d);
        let w = back.factor();
        let scale = w.norm();
        for alpha in subsets(p, d) {
            let cols = w.select_columns(&alpha);
            assert!(cols.determinant().abs() > 1e-12 * scale.powi(d as i32), "columns {alpha:?} dependent");
        }
        let diff = (back.gram().as_matrix() - a.as_matrix()).abs().max();
        assert!(diff <= 1e-10 * a.max_abs());
    }
}

#[test]
fn same_rank_extension_inequality_chain() {
    let tol = Tolerances::default();
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for trial in 0..200 {
        let p = rng.random_range(2..=7);
        let d = rng.random_range(1..=p);
        let a = random_general_position(p, d, &mut rng, &tol).unwrap().gram();
        let ext = extend_same_rank(&a, d, &tol, &mut rng).unwrap();
        assert_eq!(svd_rank(ext.matrix.as_matrix(), 1e-9), d, "trial {trial}");
        assert!(ext.quadratic < 1.0);
        let w = &ext.vector;
        for alpha in subsets(p, d) {
            let a_alpha = a.principal(&alpha).into_inner();
            let w_alpha = DVector::from_iterator(d, alpha.iter().map(|&i| w[i]));
            let y = a_alpha.clone().lu().solve(&w_alpha).unwrap();
            let lhs = y.dot(&(&a_alpha * &y));
            assert!(lhs <= ext.quadratic + 1e-8, "trial {trial}: {lhs} > {}", ext.quadratic);
            let b_alpha = ext.matrix.principal(&alpha);
            assert!(b_alpha.min_eigenvalue() > 0.0, "trial {trial}: B{alpha:?} singular");
        }
    }
}

#[test]
fn rank_rises_exactly_off_the_range() {
    let tol = Tolerances::default();
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    for _ in 0..200 {
        let p = rng.random_range(2..=7);
        let d = rng.random_range(1..p);
        let a = random_general_position(p, d, &mut rng, &tol).unwrap().gram();
        let inside = a.as_matrix() * DVector::from_fn(p, |_, _| rng.sample::<f64, _>(StandardNormal));
        let same = a.as_matrix() + &inside * inside.transpose();
        assert_eq!(svd_rank(&same, 1e-9), d);
        let ext = extend_rank_up(&a, d, &tol, &mut rng).unwrap();
        assert_eq!(svd_rank(ext.matrix.as_matrix(), 1e-9), d + 1);
        let stacked = DMatrix::from_fn(p, p + 1, |i, j| if j < p { a.get(i, j) } else { ext.vector[i] });
        assert_eq!(svd_rank(&stacked, 1e-9), d + 1, "u must leave the range of A");
    }
}

#[test]
fn matching_is_invariant_under_relabelling_and_scaling() {
    let tol = Tolerances::default();
    let mut rng = ChaCha8Rng::seed_from_u64(26);
    for _ in 0..50 {
        let p = rng.random_range(3..=7);
        let g = Graph::random_graph(p, 0.5, rng.random()).unwrap();
        let a = random_general_position(p, p, &mut rng, &tol).unwrap().gram();
        let mut b = a.as_matrix().clone();
        for (i, j) in g.non_edges() {
            let v: f64 = rng.random_range(-1.0..1.0);
            b[(i, j)] = v;
            b[(j, i)] = v;
        }
        let b = SymMatrix::new(b).unwrap();
        assert!(matches_on(&a, &b, &g, &tol).unwrap());
        assert_eq!(match_deviation(&a, &b, &g), 0.0);

        let mut perm: Vec<usize> = (0..p).collect();
        for i in (1..p).rev() {
            perm.swap(i, rng.random_range(0..=i));
        }
        let relabel = |m: &SymMatrix| {
            let mut out = DMatrix::zeros(p, p);
            for i in 0..p {
                for j in 0..p {
                    out[(perm[i], perm[j])] = m.get(i, j);
                }
            }
            SymMatrix::new(out).unwrap()
        };
        assert!(matches_on(&relabel(&a), &relabel(&b), &g.relabel(&perm).unwrap(), &tol).unwrap());

        let d: Vec<f64> = (0..p).map(|_| rng.random_range(0.1..10.0)).collect();
        assert!(matches_on(&a.scaled(&d), &b.scaled(&d), &g, &tol).unwrap());
        let (c, _) = correlation_normalize(&a).unwrap();
        assert!(c.diagonal().iter().all(|&x| (x - 1.0).abs() < 1e-12));

        if let Some(&(i, j)) = g.edges().first() {
            let mut off = b.as_matrix().clone();
            off[(i, j)] += 1e-3;
            off[(j, i)] += 1e-3;
            assert!(!matches_on(&a, &SymMatrix::new(off).unwrap(), &g, &tol).unwrap());
        }
    }
}
