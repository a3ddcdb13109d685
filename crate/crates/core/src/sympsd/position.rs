use super::{PsdFactor, SymMatrix, Tolerances};
use crate::error::{Error, Result};
use crate::graph::bits;
use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::StandardNormal;

/// All `d`-subsets of `0..p` in colexicographic order (Gosper's hack).
pub(crate) fn subsets_of_size(p: usize, d: usize) -> impl Iterator<Item = Vec<usize>> {
    let limit = 1u64 << p;
    let mut cur = if d == 0 || d > p { limit } else { (1u64 << d) - 1 };
    std::iter::from_fn(move || {
        if cur >= limit {
            return None;
        }
        let out = bits(cur).collect();
        let c = cur & cur.wrapping_neg();
        let r = cur + c;
        cur = (((r ^ cur) >> 2) / c) | r;
        Some(out)
    })
}

/// Outcome of a principal-minor scan.
#[derive(Debug, Clone, PartialEq)]
pub struct PositionReport {
    pub general_position: bool,
    /// Smallest `λ_min(A[α]) / λ_max(A)` over all `d`-subsets `α`.
    pub min_margin: f64,
    /// The subset attaining `min_margin`.
    pub worst_subset: Vec<usize>,
}

/// Checks that `A` is PSD of numerical rank `d` and that every `d x d`
/// principal submatrix is nonsingular.
pub fn is_general_position(a: &SymMatrix, d: usize, tol: &Tolerances) -> Result<PositionReport> {
    if a.is_zero() {
        return Err(Error::ZeroMatrix);
    }
    let vals = a.eigenvalues();
    let top = vals[vals.len() - 1];
    if top <= 0.0 || vals[0] < -tol.singularity_rel * top {
        return Err(Error::NotPsd(vals[0]));
    }
    let rank = a.numerical_rank(tol.singularity_rel);
    if rank != d {
        return Err(Error::RankMismatch { expected: d, got: rank });
    }
    let mut report = PositionReport {
        general_position: true,
        min_margin: f64::INFINITY,
        worst_subset: Vec::new(),
    };
    for alpha in subsets_of_size(a.dim(), d) {
        let margin = a.principal(&alpha).min_eigenvalue() / top;
        if margin < report.min_margin {
            report.min_margin = margin;
            report.worst_subset = alpha;
        }
    }
    report.general_position = report.min_margin > tol.singularity_rel;
    Ok(report)
}

const GENERAL_POSITION_RETRIES: usize = 16;

/// Smallest principal-minor margin accepted for a random draw. Well above
/// the singularity threshold, so extensions of a draw stay clear of it.
pub const SAMPLE_MARGIN: f64 = 1e-8;

/// `d x p` factor with independent standard normal entries, resampled
/// until every `d x d` principal minor of its Gram matrix has margin at
/// least [`SAMPLE_MARGIN`].
pub fn random_general_position<R: Rng + ?Sized>(
    p: usize,
    d: usize,
    rng: &mut R,
    tol: &Tolerances,
) -> Result<PsdFactor> {
    if d == 0 || d > p {
        return Err(Error::InvalidParameter(format!("need 1 <= d <= p, got d={d}, p={p}")));
    }
    for _ in 0..GENERAL_POSITION_RETRIES {
        let w = DMatrix::from_fn(d, p, |_, _| rng.sample::<f64, _>(StandardNormal));
        let Ok(f) = PsdFactor::new(w) else { continue };
        match is_general_position(&f.gram(), d, tol) {
            Ok(r) if r.general_position && r.min_margin >= SAMPLE_MARGIN => return Ok(f),
            _ => continue,
        }
    }
    Err(Error::RetriesExhausted(GENERAL_POSITION_RETRIES))
}

/// `S = (1/n) Σ x_i x_iᵀ` for the `n x p` data matrix with observations
/// as rows.
pub fn sample_covariance(x: &DMatrix<f64>) -> Result<SymMatrix> {
    let n = x.nrows();
    if n == 0 {
        return Err(Error::InvalidParameter("need at least one observation".into()));
    }
    SymMatrix::new(x.transpose() * x / n as f64)
}

/// `D A D` with unit diagonal, `D = diag(A_ii^{-1/2})`. Returns the scaled
/// matrix and the diagonal of `D`.
pub fn correlation_normalize(a: &SymMatrix) -> Result<(SymMatrix, Vec<f64>)> {
    let mut d = Vec::with_capacity(a.dim());
    for (index, value) in a.diagonal().into_iter().enumerate() {
        if value <= 0.0 {
            return Err(Error::NonPositiveDiagonal { index, value });
        }
        d.push(value.sqrt().recip());
    }
    let mut c = a.scaled(&d).into_inner();
    c.fill_diagonal(1.0);
    Ok((SymMatrix::new(c)?, d))
}
