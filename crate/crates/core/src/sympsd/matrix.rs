use crate::error::{Error, Result};
use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Dense symmetric matrix. Construction symmetrizes the input and rejects
/// non-finite entries.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix(DMatrix<f64>);

impl SymMatrix {
    pub fn new(m: DMatrix<f64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::DimensionMismatch { expected: m.nrows(), got: m.ncols() });
        }
        if m.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self::from_dmatrix_unchecked(m))
    }

    /// Symmetrizes without checking finiteness.
    pub(crate) fn from_dmatrix_unchecked(m: DMatrix<f64>) -> Self {
        let t = m.transpose();
        SymMatrix((m + t) * 0.5)
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let p = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != p) {
            return Err(Error::DimensionMismatch { expected: p, got: bad.len() });
        }
        Self::new(DMatrix::from_fn(p, p, |i, j| rows[i][j]))
    }

    pub fn identity(p: usize) -> Self {
        SymMatrix(DMatrix::identity(p, p))
    }

    pub fn from_diagonal(d: &[f64]) -> Result<Self> {
        Self::new(DMatrix::from_diagonal(&DVector::from_column_slice(d)))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0[(i, j)]
    }

    pub fn as_matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn into_inner(self) -> DMatrix<f64> {
        self.0
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.dim()).map(|i| self.0.row(i).iter().copied().collect()).collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.amax()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0.0)
    }

    pub fn diagonal(&self) -> Vec<f64> {
        self.0.diagonal().iter().copied().collect()
    }

    pub fn principal(&self, idx: &[usize]) -> SymMatrix {
        SymMatrix(self.0.select_rows(idx).select_columns(idx))
    }

    pub fn block(&self, rows: &[usize], cols: &[usize]) -> DMatrix<f64> {
        self.0.select_rows(rows).select_columns(cols)
    }

    /// Eigenvalues in ascending order with matching eigenvector columns.
    pub fn eigen(&self) -> (Vec<f64>, DMatrix<f64>) {
        let eig = SymmetricEigen::new(self.0.clone());
        let mut order: Vec<usize> = (0..self.dim()).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let vals = order.iter().map(|&k| eig.eigenvalues[k]).collect();
        let vecs = eig.eigenvectors.select_columns(&order);
        (vals, vecs)
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self.0.symmetric_eigenvalues().iter().copied().collect();
        v.sort_by(f64::total_cmp);
        v
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues()[0]
    }

    /// Count of eigenvalues above `rel * max |λ|`.
    pub fn numerical_rank(&self, rel: f64) -> usize {
        let vals = self.eigenvalues();
        let top = vals.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if top == 0.0 {
            return 0;
        }
        vals.iter().filter(|v| v.abs() > rel * top).count()
    }

    /// `tr(self * other)` without forming the product.
    pub fn trace_product(&self, other: &SymMatrix) -> f64 {
        self.0.component_mul(&other.0).sum()
    }

    pub fn scaled(&self, d: &[f64]) -> SymMatrix {
        let p = self.dim();
        SymMatrix(DMatrix::from_fn(p, p, |i, j| d[i] * self.0[(i, j)] * d[j]))
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    p: usize,
    rows: Vec<Vec<f64>>,
}

impl Serialize for SymMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson { p: self.dim(), rows: self.rows() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SymMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = MatrixJson::deserialize(d)?;
        if raw.rows.len() != raw.p {
            return Err(serde::de::Error::custom("row count differs from p"));
        }
        SymMatrix::from_rows(raw.rows).map_err(serde::de::Error::custom)
    }
}

/// Rank-`d` PSD matrix stored as a `d x p` factor `W`; the represented
/// matrix is `WᵀW` and its columns are the vectors `v_1..v_p`.
#[derive(Debug, Clone, PartialEq)]
pub struct PsdFactor {
    w: DMatrix<f64>,
}

impl PsdFactor {
    /// Requires `W` to have full row rank.
    pub fn new(w: DMatrix<f64>) -> Result<Self> {
        if w.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        let d = w.nrows();
        let sv = w.singular_values();
        let top = sv.max();
        let rank = sv.iter().filter(|&&s| s > 1e-12 * top).count();
        if top == 0.0 || rank != d {
            return Err(Error::RankMismatch { expected: d, got: rank });
        }
        Ok(PsdFactor { w })
    }

    /// Factor of a PSD matrix from its positive eigenpairs:
    /// `A = Σ λ_k u_k u_kᵀ = WᵀW` with rows `sqrt(λ_k) u_kᵀ`.
    pub fn from_psd(a: &SymMatrix, rel: f64) -> Result<Self> {
        let (vals, vecs) = a.eigen();
        let top = vals[vals.len() - 1];
        if top <= 0.0 {
            return Err(Error::ZeroMatrix);
        }
        if vals[0] < -rel * top {
            return Err(Error::NotPsd(vals[0]));
        }
        let keep: Vec<usize> = (0..vals.len()).filter(|&k| vals[k] > rel * top).collect();
        let p = a.dim();
        let w = DMatrix::from_fn(keep.len(), p, |r, c| vals[keep[r]].sqrt() * vecs[(c, keep[r])]);
        Ok(PsdFactor { w })
    }

    pub fn rank(&self) -> usize {
        self.w.nrows()
    }

    pub fn dim(&self) -> usize {
        self.w.ncols()
    }

    pub fn factor(&self) -> &DMatrix<f64> {
        &self.w
    }

    pub fn gram(&self) -> SymMatrix {
        SymMatrix::from_dmatrix_unchecked(self.w.transpose() * &self.w)
    }
}

#[derive(Serialize, Deserialize)]
struct FactorJson {
    p: usize,
    d: usize,
    rows: Vec<Vec<f64>>,
}

impl Serialize for PsdFactor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows = (0..self.rank()).map(|i| self.w.row(i).iter().copied().collect()).collect();
        FactorJson { p: self.dim(), d: self.rank(), rows }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PsdFactor {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = FactorJson::deserialize(d)?;
        if raw.rows.len() != raw.d || raw.rows.iter().any(|r| r.len() != raw.p) {
            return Err(serde::de::Error::custom("factor shape differs from (d, p)"));
        }
        let w = DMatrix::from_fn(raw.d, raw.p, |i, j| raw.rows[i][j]);
        PsdFactor::new(w).map_err(serde::de::Error::custom)
    }
}
