//! Extensions of a general-position PSD matrix that keep or raise its rank.

use super::{is_general_position, SymMatrix, Tolerances};
use crate::error::{Error, Result};
use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_distr::StandardNormal;

const EXTENSION_RETRIES: usize = 16;

#[derive(Debug, Clone, PartialEq)]
pub struct Extension {
    /// `w` for the same-rank extension, `u` for the rank-raising one.
    pub vector: DVector<f64>,
    /// `A - wwᵀ` (same rank) or `A + uuᵀ` (rank plus one).
    pub matrix: SymMatrix,
    /// One extra leading row and column. Same rank: `[[1, w'ᵀ], [w', A]]`
    /// with `w' = w / sqrt(xᵀAx)`, which keeps rank `d`. Rank up:
    /// `[[1, uᵀ], [u, A + uuᵀ]]`, of rank `d + 1`.
    pub bordered: SymMatrix,
    /// `xᵀAx` for the same-rank extension; zero otherwise.
    pub quadratic: f64,
}

/// `[[c, vᵀ], [v, M]]`.
pub fn bordered(corner: f64, v: &DVector<f64>, m: &SymMatrix) -> SymMatrix {
    let p = m.dim();
    let out = DMatrix::from_fn(p + 1, p + 1, |i, j| match (i, j) {
        (0, 0) => corner,
        (0, j) => v[j - 1],
        (i, 0) => v[i - 1],
        (i, j) => m.get(i - 1, j - 1),
    });
    SymMatrix::from_dmatrix_unchecked(out)
}

fn require_general_position(a: &SymMatrix, d: usize, tol: &Tolerances) -> Result<()> {
    if is_general_position(a, d, tol)?.general_position {
        Ok(())
    } else {
        Err(Error::NotGeneralPosition)
    }
}

/// Same-rank extension for an explicit `x_τ` on `τ = {0..d}`, which must
/// satisfy `0 < x_τᵀ A[τ] x_τ < 1`. Sets `x = (x_τ, 0)`, `w = Ax` and
/// `B = A - wwᵀ`. No general-position verification is done here.
pub fn extend_same_rank_with(a: &SymMatrix, d: usize, x_tau: &[f64]) -> Result<Extension> {
    let p = a.dim();
    if x_tau.len() != d || d == 0 || d > p {
        return Err(Error::DimensionMismatch { expected: d, got: x_tau.len() });
    }
    let mut x = DVector::zeros(p);
    x.rows_mut(0, d).copy_from_slice(x_tau);
    let w = a.as_matrix() * &x;
    let q = x.dot(&w);
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::InvalidParameter(format!("x_τᵀA[τ]x_τ = {q} must lie in (0, 1)")));
    }
    let b = SymMatrix::new(a.as_matrix() - &w * w.transpose())?;
    let border = bordered(1.0, &(&w / q.sqrt()), a);
    Ok(Extension { vector: w, matrix: b, bordered: border, quadratic: q })
}

/// `A - wwᵀ` of the same rank `d`, in general position, with `w = Ax` for a
/// random direction `x_τ` scaled to `x_τᵀA[τ]x_τ = 1/2`.
pub fn extend_same_rank<R: Rng + ?Sized>(
    a: &SymMatrix,
    d: usize,
    tol: &Tolerances,
    rng: &mut R,
) -> Result<Extension> {
    require_general_position(a, d, tol)?;
    let tau: Vec<usize> = (0..d).collect();
    let a_tau = a.principal(&tau);
    for _ in 0..EXTENSION_RETRIES {
        let z = DVector::from_fn(d, |_, _| rng.sample::<f64, _>(StandardNormal));
        let q = z.dot(&(a_tau.as_matrix() * &z));
        if !(q > 0.0 && q.is_finite()) {
            continue;
        }
        let x_tau = z * (0.5 / q).sqrt();
        let ext = extend_same_rank_with(a, d, x_tau.as_slice())?;
        let ok = |m: &SymMatrix| {
            is_general_position(m, d, tol).map(|r| r.general_position).unwrap_or(false)
        };
        if ok(&ext.matrix) && ok(&ext.bordered) {
            return Ok(ext);
        }
    }
    Err(Error::RetriesExhausted(EXTENSION_RETRIES))
}

/// `A + uuᵀ` of rank `d + 1`, in general position. `u = A g / sqrt(λ̄) +
/// sqrt(λ̄) h` with `g` Gaussian, `h` a random unit vector orthogonal to
/// `Range(A)` and `λ̄` the mean positive eigenvalue, so `u ∉ Range(A)`.
pub fn extend_rank_up<R: Rng + ?Sized>(
    a: &SymMatrix,
    d: usize,
    tol: &Tolerances,
    rng: &mut R,
) -> Result<Extension> {
    let p = a.dim();
    if d >= p {
        return Err(Error::FullRank(p));
    }
    require_general_position(a, d, tol)?;
    let (vals, vecs) = a.eigen();
    let complement = vecs.columns(0, p - d).into_owned();
    let mean = vals[p - d..].iter().sum::<f64>() / d as f64;
    for _ in 0..EXTENSION_RETRIES {
        let g = DVector::from_fn(p, |_, _| rng.sample::<f64, _>(StandardNormal));
        let coef = DVector::from_fn(p - d, |_, _| rng.sample::<f64, _>(StandardNormal));
        let h = &complement * coef;
        let norm = h.norm();
        if norm == 0.0 {
            continue;
        }
        let u = a.as_matrix() * g / mean.sqrt() + h * (mean.sqrt() / norm);
        let b = SymMatrix::new(a.as_matrix() + &u * u.transpose())?;
        let border = bordered(1.0, &u, &b);
        let ok = |m: &SymMatrix| {
            is_general_position(m, d + 1, tol).map(|r| r.general_position).unwrap_or(false)
        };
        if ok(&b) && ok(&border) {
            return Ok(Extension { vector: u, matrix: b, bordered: border, quadratic: 0.0 });
        }
    }
    Err(Error::RetriesExhausted(EXTENSION_RETRIES))
}
