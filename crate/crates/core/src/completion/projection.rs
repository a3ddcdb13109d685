use crate::graph::Graph;
use nalgebra::{DMatrix, SymmetricEigen};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(super) enum ProbeOutcome {
    Feasible,
    Infeasible,
    Open,
}

pub(super) struct Probe {
    pub outcome: ProbeOutcome,
    /// Last iterate in the affine set.
    pub x: DMatrix<f64>,
    pub gap: f64,
    pub dual_bound: Option<f64>,
    pub iterations: usize,
}

/// Projections for a unit-diagonal partial matrix `C` on a graph.
pub(super) struct Projector {
    c: DMatrix<f64>,
    /// `true` where the entry is specified (diagonal and edges).
    fixed: DMatrix<bool>,
}

const DUAL_EVERY: usize = 10;
const STALL_WINDOW: usize = 100;

impl Projector {
    pub fn new(g: &Graph, c: &DMatrix<f64>) -> Self {
        let p = g.order();
        let fixed = DMatrix::from_fn(p, p, |i, j| i == j || g.has_edge(i, j));
        Projector { c: c.clone(), fixed }
    }

    /// The specified entries of `C` with zeros elsewhere.
    pub fn zero_free(&self, m: &DMatrix<f64>) -> DMatrix<f64> {
        m.zip_map(&self.fixed, |v, f| if f { v } else { 0.0 })
    }

    fn onto_affine(&self, y: &DMatrix<f64>) -> DMatrix<f64> {
        DMatrix::from_fn(self.c.nrows(), self.c.ncols(), |i, j| {
            if self.fixed[(i, j)] {
                self.c[(i, j)]
            } else {
                y[(i, j)]
            }
        })
    }

    /// Upper bound on `λ_min(P)` over PSD completions `P` of `C`, from the
    /// PSD part of `w`.
    fn dual_bound(&self, w: &DMatrix<f64>) -> Option<f64> {
        let eig = SymmetricEigen::new(0.5 * (w + w.transpose()));
        let clipped = eig.eigenvalues.map(|l| l.max(0.0));
        let tr: f64 = clipped.sum();
        if tr <= 1e-300 {
            return None;
        }
        let v = &eig.eigenvectors;
        let omega = v * DMatrix::from_diagonal(&clipped) * v.transpose();
        self.bound_for(&omega, tr)
    }

    /// `(Σ_fixed C_ij Ω_ij + Σ_free |Ω_ij|) / tr Ω` for PSD `Ω`.
    pub fn bound_for(&self, omega: &DMatrix<f64>, tr: f64) -> Option<f64> {
        if tr <= 1e-300 {
            return None;
        }
        let mut num = 0.0;
        for j in 0..omega.ncols() {
            for i in 0..omega.nrows() {
                num += if self.fixed[(i, j)] {
                    self.c[(i, j)] * omega[(i, j)]
                } else {
                    omega[(i, j)].abs()
                };
            }
        }
        Some(num / tr)
    }

    /// Plain alternating projections at margin `t`. With `y = Proj(x)` onto
    /// `{P ⪰ tI}`, `Ω = y - x` is exactly PSD, so every iterate yields a dual
    /// bound. Near convergence the bound approaches a weighted mean of the
    /// eigenvalues of `x` below `t`, hence falls under `t` when the best
    /// attainable margin is below `t`.
    pub fn alternate(&self, x0: &DMatrix<f64>, t: f64, budget: usize, margin: f64) -> Probe {
        let mut x = x0.clone();
        let mut gap = f64::INFINITY;
        let mut best_bound: Option<f64> = None;
        for it in 1..=budget {
            let eig = SymmetricEigen::new(0.5 * (&x + x.transpose()));
            let v = &eig.eigenvectors;
            let lift = eig.eigenvalues.map(|l| (t - l).max(0.0));
            let omega = v * DMatrix::from_diagonal(&lift) * v.transpose();
            if let Some(b) = self.bound_for(&omega, lift.sum()) {
                best_bound = Some(best_bound.map_or(b, |v: f64| v.min(b)));
                if b < margin {
                    return Probe { outcome: ProbeOutcome::Infeasible, x, gap, dual_bound: best_bound, iterations: it };
                }
            }
            let y = &x + &omega;
            x = self.onto_affine(&y);
            gap = (&y - &x).norm();
        }
        Probe { outcome: ProbeOutcome::Open, x, gap, dual_bound: best_bound, iterations: budget }
    }

    /// Dykstra iterations at margin `t` from `x0`, stopping at a certified
    /// feasible point, a dual bound below `margin`, or `budget` iterations.
    /// A `decisive` probe also stops once the gap has stalled.
    pub fn probe(
        &self,
        x0: &DMatrix<f64>,
        t: f64,
        budget: usize,
        margin: f64,
        conv_tol: f64,
        decisive: bool,
    ) -> Probe {
        let p = self.c.nrows();
        let mut x = x0.clone();
        let mut q = DMatrix::<f64>::zeros(p, p);
        let mut gap = f64::INFINITY;
        let mut best_bound: Option<f64> = None;
        let mut history = Vec::with_capacity(budget);
        for it in 1..=budget {
            let z = &x + &q;
            let eig = SymmetricEigen::new(0.5 * (&z + z.transpose()));
            let v = &eig.eigenvectors;
            let y = v * DMatrix::from_diagonal(&eig.eigenvalues.map(|l| l.max(t))) * v.transpose();
            q = z - &y;
            x = self.onto_affine(&y);
            let diff = &y - &x;
            gap = diff.norm();

            // ‖x - y‖₂ <= gap and y ⪰ tI, so λ_min(x) >= t - gap.
            if t - gap >= margin {
                let lam = x.symmetric_eigenvalues().min();
                if lam >= margin {
                    return Probe { outcome: ProbeOutcome::Feasible, x, gap, dual_bound: best_bound, iterations: it };
                }
            }
            if it % DUAL_EVERY == 0 || it == budget {
                if let Some(b) = self.dual_bound(&diff) {
                    best_bound = Some(best_bound.map_or(b, |v: f64| v.min(b)));
                    if b < margin {
                        return Probe {
                            outcome: ProbeOutcome::Infeasible,
                            x,
                            gap,
                            dual_bound: best_bound,
                            iterations: it,
                        };
                    }
                }
            }
            history.push(gap);
            if decisive && it > STALL_WINDOW {
                let old = history[it - 1 - STALL_WINDOW];
                if (old - gap).abs() <= conv_tol * STALL_WINDOW as f64 * gap.max(1.0) && gap > 10.0 * conv_tol {
                    break;
                }
            }
        }
        let iterations = history.len();
        Probe { outcome: ProbeOutcome::Open, x, gap, dual_bound: best_bound, iterations }
    }
}
