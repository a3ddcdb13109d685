//! Positive definite completion. `complete_pd` decides whether a partial
//! matrix specified on the edges and diagonal of a graph admits a positive
//! definite completion, which is exactly the condition for the Gaussian
//! MLE to exist. Also exact completion on chordal graphs, iterative
//! proportional scaling, and infeasibility certificates built from
//! orthonormal representations.

mod certificate;
mod chordal;
mod dual;
mod ips;
mod projection;

pub use certificate::{
    build_certificate, verify_certificate, Certificate, CertificateConfig, CheckOutcome,
    VerificationReport, CERTIFICATE_SCHEMA_VERSION,
};
pub use chordal::chordal_complete;
pub use ips::{ips_fit, IpsResult};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::sympsd::{correlation_normalize, SymMatrix, Tolerances};
use nalgebra::DMatrix;
use projection::{ProbeOutcome, Projector};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CompletionConfig {
    /// Iteration cap of the decisive probe. Earlier probes get a fraction.
    pub max_iters: usize,
    /// Bisection bracket for the eigenvalue margin, as fractions of the
    /// largest diagonal entry.
    pub t_lo: f64,
    pub t_hi: f64,
    pub bisection_steps: usize,
    pub convergence_tol: f64,
    /// Smallest certified `λ_min`, relative to the smallest diagonal entry,
    /// that counts as positive definite.
    pub feasibility_margin: f64,
    pub tolerances: Tolerances,
}

impl Default for CompletionConfig {
    fn default() -> Self {
        CompletionConfig {
            max_iters: 5000,
            t_lo: 0.0,
            t_hi: 1.0,
            bisection_steps: 40,
            convergence_tol: 1e-10,
            feasibility_margin: 1e-7,
            tolerances: Tolerances::default(),
        }
    }
}

impl CompletionConfig {
    pub fn validate(&self) -> Result<()> {
        self.tolerances.validate()?;
        let positive = [self.t_hi, self.convergence_tol, self.feasibility_margin]
            .iter()
            .all(|v| v.is_finite() && *v > 0.0);
        if !positive || self.max_iters == 0 || self.bisection_steps == 0 {
            return Err(Error::InvalidConfig(
                "iteration counts, tolerances, margin and t_hi must be positive".into(),
            ));
        }
        if !(self.t_lo >= 0.0 && self.t_lo < self.t_hi) {
            return Err(Error::InvalidConfig(format!(
                "need 0 <= t_lo < t_hi, got t_lo={}, t_hi={}",
                self.t_lo, self.t_hi
            )));
        }
        Ok(())
    }

    fn probe_budget(&self) -> usize {
        (self.max_iters / 25).max(50).min(self.max_iters)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CompletionStatus {
    Feasible,
    Infeasible,
    Undetermined,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompletionDiagnostics {
    /// Frobenius distance between the last pair of projections.
    pub gap: f64,
    /// Best proven upper bound on the largest attainable `λ_min` of a
    /// unit-diagonal completion, when one was computed.
    pub dual_bound: Option<f64>,
    /// Margin of the last probe.
    pub margin: f64,
    pub probes: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompletionResult {
    pub status: CompletionStatus,
    #[serde(rename = "P")]
    pub p: Option<SymMatrix>,
    /// Smallest eigenvalue of `P` when feasible.
    pub lambda_min: Option<f64>,
    pub iterations: usize,
    pub diagnostics: CompletionDiagnostics,
}

impl CompletionResult {
    pub fn is_feasible(&self) -> bool {
        self.status == CompletionStatus::Feasible
    }
}

/// Decides whether some `P ≻ 0` agrees with `A` on the diagonal and the
/// edges of `G`.
///
/// The input is scaled to unit diagonal. A completion is searched by
/// Dykstra's alternating projections between the affine set of matching
/// matrices and `{P : P ⪰ tI}`, halving `t` from `t_hi` until a point with
/// certified `λ_min >= feasibility_margin` is found. The answer is
/// Infeasible only when a dual certificate proves that no unit-diagonal
/// completion reaches the margin: for PSD `Ω`, every PSD completion `P`
/// satisfies `λ_min(P) tr Ω <= Σ_fixed A_ij Ω_ij + Σ_free |Ω_ij|`.
pub fn complete_pd(g: &Graph, a: &SymMatrix, cfg: &CompletionConfig) -> Result<CompletionResult> {
    cfg.validate()?;
    let p = g.order();
    if a.dim() != p {
        return Err(Error::DimensionMismatch { expected: p, got: a.dim() });
    }
    let (c, d) = correlation_normalize(a)?;
    let margin = cfg.feasibility_margin;
    let diagnostics = |gap, dual_bound, t, probes, reason: &str| CompletionDiagnostics {
        gap,
        dual_bound,
        margin: t,
        probes,
        reason: reason.to_string(),
    };

    // Every completion contains each clique block unchanged, and λ_min of
    // a principal block bounds λ_min of the whole matrix.
    for clique in g.maximal_cliques() {
        let idx: Vec<usize> = crate::graph::bits(clique).collect();
        let lam = c.principal(&idx).min_eigenvalue();
        if lam < margin {
            return Ok(CompletionResult {
                status: CompletionStatus::Infeasible,
                p: None,
                lambda_min: None,
                iterations: 0,
                diagnostics: diagnostics(0.0, Some(lam), 0.0, 0, "clique block not positive definite"),
            });
        }
    }

    let proj = Projector::new(g, c.as_matrix());
    let zeroed = proj.zero_free(c.as_matrix());
    let (lam_c, lam_z) = (c.min_eigenvalue(), min_eig(&zeroed));
    let mut x = if lam_z > lam_c { zeroed } else { c.as_matrix().clone() };
    if lam_c.max(lam_z) >= margin {
        return finish(g, a, &d, x, 0, diagnostics(0.0, None, 0.0, 0, "initial point is positive definite"), cfg);
    }

    // Exact dual search in the null space of C.
    let mut has_dual = true;
    match dual::search(g, c.as_matrix(), cfg.tolerances.singularity_rel) {
        dual::DualSearch::NoDual => has_dual = false,
        dual::DualSearch::Candidate(omega) => {
            if let Some(b) = proj.bound_for(&omega, omega.trace()) {
                if b < margin {
                    return Ok(CompletionResult {
                        status: CompletionStatus::Infeasible,
                        p: None,
                        lambda_min: None,
                        iterations: 0,
                        diagnostics: diagnostics(0.0, Some(b), 0.0, 0, "null-space dual certificate"),
                    });
                }
            }
        }
        dual::DualSearch::Unknown => {}
    }

    let mut iterations = 0;
    let mut probes = 0;
    let mut best_bound: Option<f64> = None;
    let t_final = cfg.t_lo.max(2.0 * margin);
    let mut hi = cfg.t_hi;
    let mut last_gap = f64::INFINITY;
    let mut schedule = Vec::new();
    for _ in 0..cfg.bisection_steps {
        let t = 0.5 * (cfg.t_lo + hi);
        if t <= t_final {
            break;
        }
        schedule.push((t, cfg.probe_budget(), false));
        hi = t;
    }
    schedule.push((t_final, cfg.max_iters, true));
    let t_dual = 0.5 * margin;

    for (t, budget, decisive) in schedule {
        probes += 1;
        let out = proj.probe(&x, t, budget, margin, cfg.convergence_tol, decisive);
        iterations += out.iterations;
        last_gap = out.gap;
        if let Some(b) = out.dual_bound {
            best_bound = Some(best_bound.map_or(b, |v: f64| v.min(b)));
        }
        x = out.x;
        if decisive && has_dual && out.outcome == ProbeOutcome::Open {
            probes += 1;
            let dual = proj.alternate(&x, t_dual, cfg.max_iters, margin);
            iterations += dual.iterations;
            if let Some(b) = dual.dual_bound {
                best_bound = Some(best_bound.map_or(b, |v: f64| v.min(b)));
            }
            if dual.outcome == ProbeOutcome::Infeasible {
                return Ok(CompletionResult {
                    status: CompletionStatus::Infeasible,
                    p: None,
                    lambda_min: None,
                    iterations,
                    diagnostics: diagnostics(dual.gap, best_bound, t_dual, probes, "dual bound below margin"),
                });
            }
        }
        match out.outcome {
            ProbeOutcome::Feasible => {
                let diag = diagnostics(out.gap, best_bound, t, probes, "certified positive definite point");
                return finish(g, a, &d, x, iterations, diag, cfg);
            }
            ProbeOutcome::Infeasible => {
                return Ok(CompletionResult {
                    status: CompletionStatus::Infeasible,
                    p: None,
                    lambda_min: None,
                    iterations,
                    diagnostics: diagnostics(out.gap, best_bound, t, probes, "dual bound below margin"),
                });
            }
            ProbeOutcome::Open => {}
        }
    }
    Ok(CompletionResult {
        status: CompletionStatus::Undetermined,
        p: None,
        lambda_min: None,
        iterations,
        diagnostics: diagnostics(last_gap, best_bound, t_final, probes, "iteration cap reached"),
    })
}

fn min_eig(m: &DMatrix<f64>) -> f64 {
    m.symmetric_eigenvalues().iter().copied().fold(f64::INFINITY, f64::min)
}

/// Undoes the diagonal scaling, restores the specified entries exactly and
/// checks the soundness guarantee of a Feasible answer.
fn finish(
    g: &Graph,
    a: &SymMatrix,
    d: &[f64],
    x: DMatrix<f64>,
    iterations: usize,
    diagnostics: CompletionDiagnostics,
    cfg: &CompletionConfig,
) -> Result<CompletionResult> {
    let lam_x = min_eig(&x);
    let p = a.dim();
    let mut m = DMatrix::from_fn(p, p, |i, j| x[(i, j)] / (d[i] * d[j]));
    for i in 0..p {
        m[(i, i)] = a.get(i, i);
    }
    for (i, j) in g.edges() {
        m[(i, j)] = a.get(i, j);
        m[(j, i)] = a.get(j, i);
    }
    let completed = SymMatrix::new(m)?;
    let lambda_min = completed.min_eigenvalue();
    let min_diag = a.diagonal().into_iter().fold(f64::INFINITY, f64::min);
    assert!(
        lam_x >= cfg.feasibility_margin && lambda_min >= 0.5 * cfg.feasibility_margin * min_diag,
        "feasible completion failed its own certificate: {lam_x:e}, {lambda_min:e}"
    );
    Ok(CompletionResult {
        status: CompletionStatus::Feasible,
        p: Some(completed),
        lambda_min: Some(lambda_min),
        iterations,
        diagnostics,
    })
}
