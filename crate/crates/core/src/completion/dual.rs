//! Exact dual search for PSD inputs.
//!
//! No positive definite completion of `C` exists iff some nonzero PSD `Ω`
//! vanishes on the non-edges and has `tr(CΩ) <= 0` (separate the affine
//! set of matching matrices from the open PD cone). When `C ⪰ 0` this forces
//! `CΩ = 0`, so `Ω = N M Nᵀ` with `N` a basis of the null space of `C`, and
//! the question becomes whether a linear space of small symmetric matrices
//! `M` contains a nonzero PSD element.

use crate::graph::Graph;
use nalgebra::{DMatrix, DVector, SymmetricEigen};

pub(super) enum DualSearch {
    /// `C` has no null space or the space of candidate `M` is trivial, so a
    /// positive definite completion exists.
    NoDual,
    /// A PSD `Ω`, zero on non-edges up to rounding, for the caller to turn
    /// into a bound.
    Candidate(DMatrix<f64>),
    /// Nothing conclusive.
    Unknown,
}

const SPECTRAPLEX_ITERS: usize = 500;

pub(super) fn search(g: &Graph, c: &DMatrix<f64>, singularity_rel: f64) -> DualSearch {
    let p = g.order();
    let eig = SymmetricEigen::new(c.clone());
    let top = eig.eigenvalues.max();
    let null: Vec<usize> = (0..p).filter(|&i| eig.eigenvalues[i] <= singularity_rel * top).collect();
    let m = null.len();
    if m == 0 {
        return DualSearch::NoDual;
    }
    let n = eig.eigenvectors.select_columns(&null);
    let non_edges = g.non_edges();

    // Isometric coordinates of symmetric m x m matrices.
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|a| (a..m).map(move |b| (a, b))).collect();
    let dim = pairs.len();
    if non_edges.is_empty() {
        return DualSearch::Candidate(&n * n.transpose());
    }
    let k = DMatrix::from_fn(non_edges.len(), dim, |r, col| {
        let (i, j) = non_edges[r];
        let (a, b) = pairs[col];
        if a == b {
            n[(i, a)] * n[(j, a)]
        } else {
            (n[(i, a)] * n[(j, b)] + n[(i, b)] * n[(j, a)]) / std::f64::consts::SQRT_2
        }
    });
    let basis = kernel(&k);
    if basis.ncols() == 0 {
        return DualSearch::NoDual;
    }
    let to_matrix = |v: &DVector<f64>| {
        let mut mm = DMatrix::zeros(m, m);
        for (col, &(a, b)) in pairs.iter().enumerate() {
            let x = if a == b { v[col] } else { v[col] / std::f64::consts::SQRT_2 };
            mm[(a, b)] = x;
            mm[(b, a)] = x;
        }
        mm
    };
    let to_vector = |mm: &DMatrix<f64>| {
        DVector::from_iterator(
            dim,
            pairs.iter().map(|&(a, b)| if a == b { mm[(a, a)] } else { mm[(a, b)] * std::f64::consts::SQRT_2 }),
        )
    };

    let mm = if basis.ncols() == 1 {
        let m0 = to_matrix(&basis.column(0).into_owned());
        if m0.symmetric_eigenvalues().sum() >= 0.0 {
            m0
        } else {
            -m0
        }
    } else {
        // Alternating projections between the subspace and the set of PSD
        // matrices with unit trace.
        let mut x = DMatrix::identity(m, m) / m as f64;
        for _ in 0..SPECTRAPLEX_ITERS {
            let v = to_vector(&x);
            let coords = basis.transpose() * v;
            let y = to_matrix(&(&basis * coords));
            x = onto_spectraplex(&y);
        }
        let v = to_vector(&x);
        to_matrix(&(&basis * (basis.transpose() * v)))
    };
    let e = SymmetricEigen::new(mm);
    let clipped = e.eigenvalues.map(|l| l.max(0.0));
    if clipped.sum() <= 0.0 {
        return DualSearch::Unknown;
    }
    let psd = &e.eigenvectors * DMatrix::from_diagonal(&clipped) * e.eigenvectors.transpose();
    DualSearch::Candidate(&n * psd * n.transpose())
}

/// Orthonormal basis of the kernel of `k`, by SVD of `kᵀk`.
fn kernel(k: &DMatrix<f64>) -> DMatrix<f64> {
    let gram = k.transpose() * k;
    let e = SymmetricEigen::new(gram);
    let top = e.eigenvalues.max().max(0.0);
    let cols: Vec<usize> = (0..e.eigenvalues.len())
        .filter(|&i| e.eigenvalues[i] <= 1e-20_f64.max(1e-14 * top))
        .collect();
    e.eigenvectors.select_columns(&cols)
}

/// Projection onto `{M ⪰ 0, tr M = 1}`: project the eigenvalues onto the
/// probability simplex.
fn onto_spectraplex(y: &DMatrix<f64>) -> DMatrix<f64> {
    let e = SymmetricEigen::new(0.5 * (y + y.transpose()));
    let mut sorted: Vec<f64> = e.eigenvalues.iter().copied().collect();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut cum = 0.0;
    let mut theta = 0.0;
    for (i, &v) in sorted.iter().enumerate() {
        cum += v;
        let t = (cum - 1.0) / (i + 1) as f64;
        if v - t > 0.0 {
            theta = t;
        }
    }
    let vals = e.eigenvalues.map(|l| (l - theta).max(0.0));
    &e.eigenvectors * DMatrix::from_diagonal(&vals) * e.eigenvectors.transpose()
}
