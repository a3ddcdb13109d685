use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::params::vertex_connectivity;
use crate::seed::sub_seed;
use crate::sympsd::{
    is_general_position, null_space_gram, psd_zero_product, random_general_position, SymMatrix,
    Tolerances,
};
use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

pub const CERTIFICATE_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CertificateConfig {
    /// Independent restarts of the representation search.
    pub restarts: usize,
    /// Orthogonalization sweeps per restart.
    pub sweeps: usize,
    /// Largest allowed `|Ω_ij|` on a non-edge and `|Ω_ii - 1|`.
    pub orthogonality_tol: f64,
    /// Largest allowed `|tr(PΩ)|` and `tr(AΩ)`.
    pub trace_tol: f64,
    /// A matching matrix with `λ_min` above this would be positive definite.
    pub feasibility_margin: f64,
    pub tolerances: Tolerances,
}

impl Default for CertificateConfig {
    fn default() -> Self {
        CertificateConfig {
            restarts: 20,
            sweeps: 10,
            orthogonality_tol: 1e-10,
            trace_tol: 1e-8,
            feasibility_margin: 1e-7,
            tolerances: Tolerances::default(),
        }
    }
}

/// Witness that no positive definite matrix matches `A` on `G`: `Ω` is PSD,
/// vanishes on non-edges and has `AΩ = 0`, so `tr(PΩ) = tr(AΩ) = 0` for
/// every `P` matching `A`, which rules out `P ≻ 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema_version: u32,
    pub k: usize,
    /// Dimension of the orthonormal representation, `p - k`.
    pub d: usize,
    #[serde(rename = "Omega")]
    pub omega: SymMatrix,
    #[serde(rename = "A")]
    pub a: SymMatrix,
}

/// Builds a certificate from a general-position orthonormal representation
/// of `G` in `R^d`, `d = p - k`: unit vectors with `u_i ⊥ u_j` whenever `ij`
/// is not an edge.
///
/// Each sweep replaces `u_i` by the normalized projection of its current
/// value onto the orthogonal complement of its non-neighbours. The first
/// sweep only uses non-neighbours already visited, which from a random
/// start gives general position almost surely on a k-connected graph; a
/// vertex has at most `d - 1` non-neighbours, so there is always room.
pub fn build_certificate(g: &Graph, k: usize, cfg: &CertificateConfig, seed: u64) -> Result<Certificate> {
    cfg.tolerances.validate()?;
    let p = g.order();
    if k == 0 || k >= p {
        return Err(Error::InvalidParameter(format!("need 1 <= k < p, got k={k}, p={p}")));
    }
    let actual = vertex_connectivity(g);
    if actual < k {
        return Err(Error::NotConnectedEnough { requested: k, actual });
    }
    let d = p - k;
    for restart in 0..cfg.restarts {
        let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(seed, &[restart as u64]));
        let Ok(start) = random_general_position(p, d, &mut rng, &cfg.tolerances) else { continue };
        let Some(u) = orthonormal_representation(g, start.factor().clone(), cfg) else { continue };
        let omega = SymMatrix::new(u.transpose() * &u)?;
        if !matches!(is_general_position(&omega, d, &cfg.tolerances), Ok(r) if r.general_position) {
            continue;
        }
        let Ok(a) = null_space_gram(&omega, k, &cfg.tolerances) else { continue };
        if !matches!(is_general_position(&a, k, &cfg.tolerances), Ok(r) if r.general_position) {
            continue;
        }
        return Ok(Certificate { schema_version: CERTIFICATE_SCHEMA_VERSION, k, d, omega, a });
    }
    Err(Error::CertificateSearchFailed(cfg.restarts))
}

fn orthonormal_representation(g: &Graph, mut u: DMatrix<f64>, cfg: &CertificateConfig) -> Option<DMatrix<f64>> {
    let p = g.order();
    for sweep in 0..cfg.sweeps {
        for i in 0..p {
            let others: Vec<usize> = (0..p)
                .filter(|&j| j != i && !g.has_edge(i, j) && (sweep > 0 || j < i))
                .collect();
            let mut v: DVector<f64> = u.column(i).into_owned();
            let norm0 = v.norm();
            let basis = orthonormal_basis(&u, &others);
            for _ in 0..2 {
                for b in &basis {
                    let c = b.dot(&v);
                    v.axpy(-c, b, 1.0);
                }
            }
            let n = v.norm();
            if n <= 1e-8 * norm0 {
                return None;
            }
            u.set_column(i, &(v / n));
        }
        let worst = g
            .non_edges()
            .into_iter()
            .map(|(i, j)| u.column(i).dot(&u.column(j)).abs())
            .fold(0.0, f64::max);
        if worst <= 0.1 * cfg.orthogonality_tol {
            return Some(u);
        }
    }
    None
}

fn orthonormal_basis(u: &DMatrix<f64>, cols: &[usize]) -> Vec<DVector<f64>> {
    let mut basis: Vec<DVector<f64>> = Vec::new();
    for &j in cols {
        let mut v: DVector<f64> = u.column(j).into_owned();
        for _ in 0..2 {
            for b in &basis {
                let c = b.dot(&v);
                v.axpy(-c, b, 1.0);
            }
        }
        let n = v.norm();
        if n > 1e-12 {
            basis.push(v / n);
        }
    }
    basis
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub passed: bool,
    pub checks: Vec<CheckOutcome>,
    pub trials: usize,
    /// Largest `|tr(PΩ)|` over the random matching matrices.
    pub max_abs_trace: f64,
    /// Largest `λ_min(P)` over the random matching matrices.
    pub max_lambda_min: f64,
}

impl VerificationReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Re-checks every claim of a certificate, then samples `trials` symmetric
/// matrices that match `A` on `G` with standard normal entries on the
/// non-edges, confirming `tr(PΩ) ≈ 0` and that none is positive definite.
pub fn verify_certificate(
    g: &Graph,
    cert: &Certificate,
    trials: usize,
    seed: u64,
    cfg: &CertificateConfig,
) -> Result<VerificationReport> {
    let p = g.order();
    for m in [&cert.omega, &cert.a] {
        if m.dim() != p {
            return Err(Error::DimensionMismatch { expected: p, got: m.dim() });
        }
    }
    let mut checks = Vec::new();
    let mut check = |name: &str, passed: bool, detail: String| {
        checks.push(CheckOutcome { name: name.into(), passed, detail });
    };

    let off = g.non_edges().into_iter().map(|(i, j)| cert.omega.get(i, j).abs()).fold(0.0, f64::max);
    let diag = (0..p).map(|i| (cert.omega.get(i, i) - 1.0).abs()).fold(0.0, f64::max);
    check(
        "orthonormal_representation",
        off <= cfg.orthogonality_tol && diag <= cfg.orthogonality_tol,
        format!("max |Omega_ij| on non-edges {off:e}, max |Omega_ii - 1| {diag:e}"),
    );

    let dims_ok = cert.k + cert.d == p && cert.k >= 1 && cert.d >= 1;
    for (name, m, rank) in [("omega_general_position", &cert.omega, cert.d), ("a_general_position", &cert.a, cert.k)] {
        match is_general_position(m, rank, &cfg.tolerances) {
            Ok(r) => check(
                name,
                dims_ok && r.general_position,
                format!("rank {rank}, min principal margin {:e} at {:?}", r.min_margin, r.worst_subset),
            ),
            Err(e) => check(name, false, e.to_string()),
        }
    }

    match psd_zero_product(&cert.a, &cert.omega, cfg.trace_tol, &cfg.tolerances) {
        Ok((ok, z)) => check(
            "zero_product",
            ok && z.frobenius <= cfg.trace_tol.sqrt(),
            format!("tr(A Omega) {:e}, ‖A Omega‖_F {:e}", z.trace, z.frobenius),
        ),
        Err(e) => check("zero_product", false, e.to_string()),
    }

    let non_edges = g.non_edges();
    let scale = cert.a.diagonal().into_iter().fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let mut max_abs_trace: f64 = 0.0;
    let mut max_lambda_min = f64::NEG_INFINITY;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let mut m = cert.a.as_matrix().clone();
        for &(i, j) in &non_edges {
            let r: f64 = StandardNormal.sample(&mut rng);
            m[(i, j)] = r;
            m[(j, i)] = r;
        }
        let pm = SymMatrix::new(m)?;
        max_abs_trace = max_abs_trace.max(pm.trace_product(&cert.omega).abs());
        max_lambda_min = max_lambda_min.max(pm.min_eigenvalue());
    }
    if trials > 0 {
        check(
            "matching_trace",
            max_abs_trace <= cfg.trace_tol,
            format!("max |tr(P Omega)| {max_abs_trace:e} over {trials} trials"),
        );
        check(
            "no_positive_definite_match",
            max_lambda_min <= cfg.feasibility_margin * scale,
            format!("max lambda_min(P) {max_lambda_min:e} over {trials} trials"),
        );
    }
    let passed = checks.iter().all(|c| c.passed);
    Ok(VerificationReport { passed, checks, trials, max_abs_trace, max_lambda_min })
}
