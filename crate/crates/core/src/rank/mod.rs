//! Gaussian rank estimation. `r(G)` is the smallest `n` such that every
//! rank-`n` PSD matrix in general position has a positive definite matrix
//! matching it on `G`; it lies in `[κ*(G) + 1, δ*(G) + 1]`.

mod properties;
mod weak;

pub use properties::{check_rank_properties, PropertyReport, PropertyStatus, RankCache};
pub use weak::{estimate_weak_rank, wilson_interval, WeakRankPoint, WeakRankReport};

use crate::completion::{
    build_certificate, complete_pd, verify_certificate, CertificateConfig, CompletionConfig,
    CompletionResult, CompletionStatus,
};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::params::{k_connected_subgraph, rank_bounds};
use crate::seed::sub_seed;
use crate::sympsd::{
    correlation_normalize, is_general_position, random_general_position, sample_covariance,
    PsdFactor, SymMatrix,
};
use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RankConfig {
    pub trials_per_rank: usize,
    pub seed: u64,
    pub completion: CompletionConfig,
    pub certificate: CertificateConfig,
    /// Weak rank: datasets per sample size.
    pub samples_per_n: usize,
    /// Also search for an infeasible witness at `n = κ*`, including when
    /// the bounds already coincide.
    pub probe_below: bool,
}

impl Default for RankConfig {
    fn default() -> Self {
        RankConfig {
            trials_per_rank: 200,
            seed: 0,
            completion: CompletionConfig::default(),
            certificate: CertificateConfig::default(),
            samples_per_n: 500,
            probe_below: true,
        }
    }
}

impl RankConfig {
    pub fn validate(&self) -> Result<()> {
        self.completion.validate()?;
        self.certificate.tolerances.validate()?;
        if self.trials_per_rank == 0 || self.samples_per_n == 0 {
            return Err(Error::InvalidConfig("trial and sample counts must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Determination {
    ExactByBounds,
    ExactByWitness,
    Interval,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum WitnessSource {
    /// A random general-position draw the solver found infeasible.
    Sampled,
    /// Built from a verified orthonormal-representation certificate on a
    /// `κ*`-connected subgraph; infeasible by construction.
    Certificate,
}

/// A rank-`n` general-position correlation matrix with no positive definite
/// matrix matching it on `G`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub n: usize,
    pub source: WitnessSource,
    pub trial: Option<usize>,
    pub matrix: SymMatrix,
    pub solver_status: CompletionStatus,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankStats {
    pub n: usize,
    /// Trials actually run; sampling stops at the first witness.
    pub trials: usize,
    pub feasible: usize,
    pub infeasible: usize,
    pub undetermined: usize,
    /// Draws that did not reach general position after resampling.
    pub skipped: usize,
    pub witnesses: Vec<Witness>,
}

impl RankStats {
    pub fn has_witness(&self) -> bool {
        !self.witnesses.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankReport {
    pub lower: usize,
    pub upper: usize,
    pub per_rank: Vec<RankStats>,
    pub concluded_rank: Option<usize>,
    pub determination: Determination,
    /// Outcomes that contradict a theorem, which point at solver error.
    pub inconsistencies: Vec<String>,
}

/// MLE existence for the observations in the rows of `x`: whether the
/// sample covariance has a positive definite completion on `G`.
pub fn mle_exists(g: &Graph, x: &DMatrix<f64>, cfg: &CompletionConfig) -> Result<CompletionResult> {
    if x.ncols() != g.order() {
        return Err(Error::DimensionMismatch { expected: g.order(), got: x.ncols() });
    }
    let s = sample_covariance(x)?;
    complete_pd(g, &s, cfg)
}

/// Parses observations written one per row as whitespace-separated
/// numbers. Blank lines and lines starting with `#` are skipped.
pub fn parse_observations(text: &str) -> Result<DMatrix<f64>> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row = line
            .split_whitespace()
            .map(|t| match t.parse::<f64>() {
                Ok(v) if v.is_finite() => Ok(v),
                _ => Err(Error::Parse { line: no + 1, msg: format!("bad number {t:?}") }),
            })
            .collect::<Result<Vec<f64>>>()?;
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(Error::Parse {
                    line: no + 1,
                    msg: format!("expected {} values, got {}", first.len(), row.len()),
                });
            }
        }
        rows.push(row);
    }
    let Some(first) = rows.first() else {
        return Err(Error::Parse { line: 0, msg: "no observations".into() });
    };
    let (n, p) = (rows.len(), first.len());
    Ok(DMatrix::from_fn(n, p, |i, j| rows[i][j]))
}

/// Trials run in parallel in chunks of this size; sampling stops after the
/// first chunk with a witness, which keeps the result order-independent.
const CHUNK: usize = 32;

enum Trial {
    Skipped,
    Done(SymMatrix, CompletionStatus),
}

fn run_trial(g: &Graph, n: usize, trial: usize, cfg: &RankConfig) -> Result<Trial> {
    let p = g.order();
    let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(cfg.seed, &[n as u64, trial as u64]));
    let Ok(f) = random_general_position(p, n, &mut rng, &cfg.completion.tolerances) else {
        return Ok(Trial::Skipped);
    };
    let (a, _) = correlation_normalize(&f.gram())?;
    let r = complete_pd(g, &a, &cfg.completion)?;
    Ok(Trial::Done(a, r.status))
}

/// Runs up to `trials_per_rank` random rank-`n` trials, stopping after the
/// chunk containing the first infeasible draw.
pub fn probe_rank(g: &Graph, n: usize, cfg: &RankConfig) -> Result<RankStats> {
    cfg.validate()?;
    if n == 0 || n > g.order() {
        return Err(Error::InvalidParameter(format!("candidate rank {n} outside 1..={}", g.order())));
    }
    let mut stats = RankStats {
        n,
        trials: 0,
        feasible: 0,
        infeasible: 0,
        undetermined: 0,
        skipped: 0,
        witnesses: Vec::new(),
    };
    let mut start = 0;
    while start < cfg.trials_per_rank && !stats.witnesses.iter().any(|w| w.source == WitnessSource::Sampled) {
        let end = (start + CHUNK).min(cfg.trials_per_rank);
        let outcomes: Vec<Result<Trial>> = (start..end).into_par_iter().map(|t| run_trial(g, n, t, cfg)).collect();
        for (offset, out) in outcomes.into_iter().enumerate() {
            stats.trials += 1;
            match out? {
                Trial::Skipped => stats.skipped += 1,
                Trial::Done(a, status) => match status {
                    CompletionStatus::Feasible => stats.feasible += 1,
                    CompletionStatus::Undetermined => stats.undetermined += 1,
                    CompletionStatus::Infeasible => {
                        stats.infeasible += 1;
                        if !stats.witnesses.iter().any(|w| w.source == WitnessSource::Sampled) {
                            stats.witnesses.push(Witness {
                                n,
                                source: WitnessSource::Sampled,
                                trial: Some(start + offset),
                                matrix: a,
                                solver_status: status,
                            });
                        }
                    }
                },
            }
        }
        start = end;
    }
    Ok(stats)
}

/// Builds a rank-`k` witness from a certificate on a `k`-connected induced
/// subgraph `H`: the certificate matrix on `H`, extended by random columns
/// of its Gram factor. Any positive definite `P` matching it on `G` would
/// restrict to one matching the certificate on `H`.
pub fn certificate_witness(g: &Graph, k: usize, cfg: &RankConfig) -> Result<Option<Witness>> {
    let Some(h) = k_connected_subgraph(g, k) else { return Ok(None) };
    let sub = g.induced_subgraph(&h)?;
    let seed = sub_seed(cfg.seed, &[u64::MAX, k as u64]);
    let cert = match build_certificate(&sub.graph, k, &cfg.certificate, seed) {
        Ok(c) => c,
        Err(Error::CertificateSearchFailed(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    if !verify_certificate(&sub.graph, &cert, 20, seed, &cfg.certificate)?.passed {
        return Ok(None);
    }
    let tol = &cfg.certificate.tolerances;
    let w_h = PsdFactor::from_psd(&cert.a, tol.singularity_rel)?;
    if w_h.rank() != k {
        return Ok(None);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = g.order();
    for _ in 0..16 {
        let mut w = DMatrix::<f64>::zeros(k, p);
        for v in 0..p {
            match sub.old_to_new(v) {
                Some(j) => w.set_column(v, &w_h.factor().column(j)),
                None => {
                    for r in 0..k {
                        w[(r, v)] = StandardNormal.sample(&mut rng);
                    }
                }
            }
        }
        let a = SymMatrix::new(w.transpose() * w)?;
        if !matches!(is_general_position(&a, k, tol), Ok(r) if r.general_position) {
            continue;
        }
        let (a, _) = correlation_normalize(&a)?;
        let status = complete_pd(g, &a, &cfg.completion)?.status;
        return Ok(Some(Witness { n: k, source: WitnessSource::Certificate, trial: None, matrix: a, solver_status: status }));
    }
    Ok(None)
}

/// Estimates `r(G)`. Equal bounds settle it. Otherwise candidates from the
/// lower bound upward are sampled; the first candidate with no infeasible
/// draw, directly above one with a witness, is concluded. An infeasible
/// draw is a proof that `r(G)` exceeds its rank, while an all-feasible
/// sample is statistical evidence only.
pub fn estimate_gaussian_rank(g: &Graph, cfg: &RankConfig) -> Result<RankReport> {
    cfg.validate()?;
    let (lower, upper) = rank_bounds(g);
    let mut report = RankReport {
        lower,
        upper,
        per_rank: Vec::new(),
        concluded_rank: None,
        determination: Determination::Interval,
        inconsistencies: Vec::new(),
    };
    let below = lower - 1;
    let mut witness_below = below == 0;
    if below >= 1 && (cfg.probe_below || lower < upper) {
        let mut stats = probe_rank(g, below, cfg)?;
        if let Some(w) = certificate_witness(g, below, cfg)? {
            if w.solver_status == CompletionStatus::Feasible {
                report.inconsistencies.push(format!(
                    "solver found a completion for the certificate witness at n = {below}"
                ));
            }
            stats.witnesses.push(w);
        }
        witness_below = stats.has_witness();
        report.per_rank.push(stats);
    }

    if lower == upper {
        report.concluded_rank = Some(lower);
        report.determination = Determination::ExactByBounds;
    } else {
        let mut prev_witness = witness_below;
        for n in lower..=upper {
            let stats = probe_rank(g, n, cfg)?;
            let clean = stats.infeasible == 0;
            let has_witness = stats.has_witness();
            if n == upper && !clean {
                report.inconsistencies.push(format!("infeasible draw at the upper bound n = {upper}"));
            }
            report.per_rank.push(stats);
            if clean {
                if prev_witness {
                    report.concluded_rank = Some(n);
                    report.determination = Determination::ExactByWitness;
                }
                break;
            }
            prev_witness = has_witness;
        }
    }
    if let Some(r) = report.concluded_rank {
        assert!((lower..=upper).contains(&r), "concluded rank {r} outside [{lower}, {upper}]");
    }
    Ok(report)
}
