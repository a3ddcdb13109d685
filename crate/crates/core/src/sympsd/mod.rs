//! Dense symmetric and positive semidefinite matrices: Gram factors,
//! general position, rank-preserving and rank-raising extensions, Schur
//! complements, the pseudo-inverse, the matching relation on a graph, and
//! null-space Gram matrices.
//!
//! Rank and singularity decisions use relative eigenvalue thresholds from
//! [`Tolerances`]. Every threshold is relative to the largest eigenvalue (or
//! largest entry) of the matrix being tested.

mod extend;
mod matrix;
mod position;

pub use extend::{bordered, extend_rank_up, extend_same_rank, extend_same_rank_with, Extension};
pub use matrix::{PsdFactor, SymMatrix};
pub use position::{
    correlation_normalize, is_general_position, random_general_position, sample_covariance,
    PositionReport, SAMPLE_MARGIN,
};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Eigenvalues below `singularity_rel * λ_max` count as zero.
    pub singularity_rel: f64,
    /// Smallest eigenvalue, relative to the matrix scale, that counts as
    /// positive definite.
    pub pd_margin: f64,
    /// Entrywise tolerance of the matching relation, relative to the
    /// largest entry of the two matrices.
    pub match_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { singularity_rel: 1e-9, pd_margin: 1e-8, match_tol: 1e-10 }
    }
}

impl Tolerances {
    pub fn validate(&self) -> Result<()> {
        let ok = [self.singularity_rel, self.pd_margin, self.match_tol]
            .iter()
            .all(|t| t.is_finite() && *t > 0.0);
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidConfig("tolerances must be finite and strictly positive".into()))
        }
    }
}

/// Moore–Penrose pseudo-inverse; eigenvalues below the singularity
/// threshold are treated as zero.
pub fn pseudo_inverse(a: &SymMatrix, tol: &Tolerances) -> SymMatrix {
    let (vals, vecs) = a.eigen();
    let top = vals.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let cut = tol.singularity_rel * top;
    let p = a.dim();
    let mut out = DMatrix::zeros(p, p);
    for (k, &l) in vals.iter().enumerate() {
        if l.abs() > cut {
            let v = vecs.column(k);
            out += (v * v.transpose()) / l;
        }
    }
    SymMatrix::from_dmatrix_unchecked(out)
}

/// `A[β|α] = A[β] - A[β,α] A[α]^† A[α,β]` with `β` the complement of `α`.
pub fn schur_complement(a: &SymMatrix, alpha: &VertexSet, tol: &Tolerances) -> Result<SymMatrix> {
    let p = a.dim();
    if alpha.is_empty() || alpha.len() >= p || alpha.iter().any(|i| i >= p) {
        return Err(Error::ImproperIndexSet);
    }
    let beta = alpha.complement(p);
    let aa = a.principal(alpha.as_slice());
    let ab = a.block(alpha.as_slice(), beta.as_slice());
    let bb = a.principal(beta.as_slice());
    let pinv = pseudo_inverse(&aa, tol);
    let corr = ab.transpose() * pinv.as_matrix() * &ab;
    SymMatrix::new(bb.as_matrix() - corr)
}

/// `A ≍_G B`: equal on every edge of `G` and on the whole diagonal.
pub fn matches_on(a: &SymMatrix, b: &SymMatrix, g: &Graph, tol: &Tolerances) -> Result<bool> {
    let p = g.order();
    for m in [a, b] {
        if m.dim() != p {
            return Err(Error::DimensionMismatch { expected: p, got: m.dim() });
        }
    }
    let scale = a.max_abs().max(b.max_abs()).max(f64::MIN_POSITIVE);
    let close = |i: usize, j: usize| (a.get(i, j) - b.get(i, j)).abs() <= tol.match_tol * scale;
    Ok((0..p).all(|i| close(i, i)) && g.edges().into_iter().all(|(i, j)| close(i, j)))
}

/// Largest entrywise deviation on the edges and diagonal of `G`.
pub fn match_deviation(a: &SymMatrix, b: &SymMatrix, g: &Graph) -> f64 {
    let diag = (0..g.order()).map(|i| (a.get(i, i) - b.get(i, i)).abs());
    let off = g.edges().into_iter().map(|(i, j)| (a.get(i, j) - b.get(i, j)).abs());
    diag.chain(off).fold(0.0, f64::max)
}

/// `W Wᵀ` for an orthonormal basis `W` of the null space of a PSD matrix
/// `omega`, which must have nullity exactly `k >= 1`.
pub fn null_space_gram(omega: &SymMatrix, k: usize, tol: &Tolerances) -> Result<SymMatrix> {
    if omega.is_zero() {
        return Err(Error::ZeroMatrix);
    }
    let (vals, vecs) = omega.eigen();
    let top = vals[vals.len() - 1];
    if vals[0] < -tol.singularity_rel * top.max(0.0) {
        return Err(Error::NotPsd(vals[0]));
    }
    let null: Vec<usize> = (0..vals.len()).filter(|&i| vals[i] <= tol.singularity_rel * top).collect();
    if k == 0 || null.len() != k {
        return Err(Error::NullityMismatch { expected: k, got: null.len() });
    }
    let basis = vecs.select_columns(&null);
    Ok(SymMatrix::from_dmatrix_unchecked(&basis * basis.transpose()))
}

/// Trace of `AB` and Frobenius norm of `AB`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroProductCheck {
    pub trace: f64,
    pub frobenius: f64,
}

/// For PSD `A`, `B`: `AB = 0` iff `tr(AB) = 0`. Returns whether
/// `tr(AB) <= tol`, together with both quantities. The Frobenius norm is
/// checked against `‖AB‖_F <= sqrt(‖A‖ ‖B‖ tr(AB))`, which the trace
/// identity implies.
pub fn psd_zero_product(
    a: &SymMatrix,
    b: &SymMatrix,
    tol: f64,
    tols: &Tolerances,
) -> Result<(bool, ZeroProductCheck)> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), got: b.dim() });
    }
    let mut norms = [0.0; 2];
    for (slot, m) in norms.iter_mut().zip([a, b]) {
        let vals = m.eigenvalues();
        let top = vals[vals.len() - 1].max(0.0);
        if vals[0] < -tols.singularity_rel * top.max(1.0) {
            return Err(Error::NotPsd(vals[0]));
        }
        *slot = top;
    }
    let prod = a.as_matrix() * b.as_matrix();
    let check = ZeroProductCheck { trace: prod.trace(), frobenius: prod.norm() };
    let bound = (norms[0] * norms[1] * check.trace.max(0.0)).sqrt();
    let slack = 1e-12 * (norms[0] * norms[1]).max(1.0) * (a.dim() as f64);
    debug_assert!(check.frobenius <= bound + slack, "trace lemma violated: {check:?}");
    Ok((check.trace <= tol, check))
}
