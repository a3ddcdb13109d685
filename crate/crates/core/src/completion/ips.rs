use super::CompletionConfig;
use crate::error::{Error, Result};
use crate::graph::{bits, Graph};
use crate::sympsd::{correlation_normalize, SymMatrix};
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IpsResult {
    /// Last concentration iterate; zero off the edges of `G`.
    pub omega: SymMatrix,
    pub converged: bool,
    /// Number of full sweeps over the maximal cliques.
    pub sweeps: usize,
    /// Largest deviation of `Ω⁻¹` from `S` on the diagonal and edges.
    pub deviation: f64,
    pub reason: String,
}

/// Concentration entries beyond this, on the unit-diagonal scale, are
/// taken as divergence.
const DIVERGENCE: f64 = 1e10;

/// Sweeps allowed per unit of `max_iters`. IPS converges linearly, with a
/// rate close to one near the boundary of feasibility.
const SWEEPS_PER_ITER: usize = 10;

/// Iterative proportional scaling for the Gaussian graphical model.
///
/// Each step adjusts `Ω[c] += S[c]⁻¹ - (Ω⁻¹)[c]⁻¹` on a maximal clique `c`,
/// so that `Ω⁻¹` matches `S` on `c`. Runs on the correlation scale of `S`.
/// Convergence means the match on all cliques holds within
/// `convergence_tol` scaled by 100. A singular clique block of `S`,
/// a singular `Ω`, entries of `Ω` beyond 1e10 or the sweep cap of
/// `10 * max_iters` all end the run with `converged = false`.
pub fn ips_fit(g: &Graph, s: &SymMatrix, cfg: &CompletionConfig) -> Result<IpsResult> {
    cfg.validate()?;
    let p = g.order();
    if s.dim() != p {
        return Err(Error::DimensionMismatch { expected: p, got: s.dim() });
    }
    let (c, d) = correlation_normalize(s)?;
    let c = c.as_matrix();
    let tol = 100.0 * cfg.convergence_tol;
    let unscale = |omega: &DMatrix<f64>| {
        SymMatrix::new(DMatrix::from_fn(p, p, |i, j| d[i] * omega[(i, j)] * d[j]))
    };
    let stop = |omega: &DMatrix<f64>, sweeps, deviation, reason: &str, converged| -> Result<IpsResult> {
        Ok(IpsResult { omega: unscale(omega)?, converged, sweeps, deviation, reason: reason.into() })
    };

    let mut cliques = Vec::new();
    for mask in g.maximal_cliques() {
        let idx: Vec<usize> = bits(mask).collect();
        let block = c.select_rows(&idx).select_columns(&idx);
        let lam = block.symmetric_eigenvalues().min();
        let inv = match block.cholesky() {
            Some(ch) if lam >= cfg.feasibility_margin => ch.inverse(),
            _ => {
                let id = DMatrix::identity(p, p);
                return stop(&id, 0, f64::INFINITY, "clique block of S is singular", false);
            }
        };
        cliques.push((idx, inv));
    }

    let mut omega = DMatrix::<f64>::identity(p, p);
    let mut deviation = f64::INFINITY;
    let max_sweeps = cfg.max_iters.saturating_mul(SWEEPS_PER_ITER);
    for sweep in 1..=max_sweeps {
        for (idx, target) in &cliques {
            let Some(sigma) = omega.clone().cholesky().map(|ch| ch.inverse()) else {
                return stop(&omega, sweep, deviation, "concentration iterate became singular", false);
            };
            let Some(current) = sigma.select_rows(idx).select_columns(idx).cholesky() else {
                return stop(&omega, sweep, deviation, "clique block of the iterate became singular", false);
            };
            let delta = target - current.inverse();
            for (a, &i) in idx.iter().enumerate() {
                for (b, &j) in idx.iter().enumerate() {
                    omega[(i, j)] += delta[(a, b)];
                }
            }
            omega = 0.5 * (&omega + omega.transpose());
        }
        if omega.amax() > DIVERGENCE {
            return stop(&omega, sweep, deviation, "concentration iterate diverged", false);
        }
        let Some(sigma) = omega.clone().cholesky().map(|ch| ch.inverse()) else {
            return stop(&omega, sweep, deviation, "concentration iterate became singular", false);
        };
        deviation = (0..p)
            .flat_map(|i| (0..p).map(move |j| (i, j)))
            .filter(|&(i, j)| i == j || g.has_edge(i, j))
            .map(|(i, j)| (sigma[(i, j)] - c[(i, j)]).abs())
            .fold(0.0, f64::max);
        if deviation <= tol {
            return stop(&omega, sweep, deviation, "converged", true);
        }
    }
    stop(&omega, max_sweeps, deviation, "sweep cap reached", false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::completion::chordal_complete;

    #[test]
    fn complete_graph_gives_inverse_in_one_sweep() {
        let g = Graph::complete(3).unwrap();
        let s = SymMatrix::from_rows(vec![
            vec![2.0, 0.5, 0.1],
            vec![0.5, 1.0, 0.2],
            vec![0.1, 0.2, 3.0],
        ])
        .unwrap();
        let r = ips_fit(&g, &s, &CompletionConfig::default()).unwrap();
        assert!(r.converged);
        assert_eq!(r.sweeps, 1);
        let inv = s.as_matrix().clone().try_inverse().unwrap();
        assert!((r.omega.as_matrix() - inv).amax() < 1e-10);
    }

    #[test]
    fn chordal_fit_matches_closed_form() {
        let g = Graph::path(4).unwrap();
        let s = SymMatrix::from_rows(vec![
            vec![1.0, 0.5, 0.0, 0.0],
            vec![0.5, 2.0, -0.3, 0.0],
            vec![0.0, -0.3, 1.0, 0.4],
            vec![0.0, 0.0, 0.4, 1.5],
        ])
        .unwrap();
        let r = ips_fit(&g, &s, &CompletionConfig::default()).unwrap();
        assert!(r.converged);
        let sigma = r.omega.as_matrix().clone().try_inverse().unwrap();
        let closed = chordal_complete(&g, &s).unwrap();
        assert!((sigma - closed.as_matrix()).amax() < 1e-8);
        for (i, j) in g.non_edges() {
            assert!(r.omega.get(i, j).abs() < 1e-10);
        }
    }
}
