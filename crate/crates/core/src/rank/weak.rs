use super::{mle_exists, RankConfig};
use crate::completion::CompletionStatus;
use crate::error::Result;
use crate::graph::Graph;
use crate::seed::sub_seed;
use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Seed domain of the weak-rank experiment, distinct from rank trials.
const WEAK_DOMAIN: u64 = 0x5745_414b;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeakRankPoint {
    pub n: usize,
    pub samples: usize,
    pub exists: usize,
    pub undetermined: usize,
    /// `exists / samples`.
    pub frequency: f64,
    /// 95% Wilson score interval for the existence probability.
    pub ci_low: f64,
    pub ci_high: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeakRankReport {
    pub per_n: Vec<WeakRankPoint>,
    /// Smallest `n` at which every sample had an MLE.
    pub n_hat: Option<usize>,
}

/// Wilson score interval for `k` successes in `n` trials.
pub fn wilson_interval(k: usize, n: usize, z: f64) -> (f64, f64) {
    if n == 0 {
        return (0.0, 1.0);
    }
    let nf = n as f64;
    let ph = k as f64 / nf;
    let z2 = z * z;
    let denom = 1.0 + z2 / nf;
    let centre = (ph + z2 / (2.0 * nf)) / denom;
    let half = z * (ph * (1.0 - ph) / nf + z2 / (4.0 * nf * nf)).sqrt() / denom;
    ((centre - half).clamp(0.0, ph), (centre + half).clamp(ph, 1.0))
}

/// Monte Carlo estimate of the probability that the MLE exists for `n`
/// standard normal observations, for `n = 1..=p`.
pub fn estimate_weak_rank(g: &Graph, cfg: &RankConfig) -> Result<WeakRankReport> {
    cfg.validate()?;
    let p = g.order();
    let mut per_n = Vec::with_capacity(p);
    for n in 1..=p {
        let statuses: Vec<Result<CompletionStatus>> = (0..cfg.samples_per_n)
            .into_par_iter()
            .map(|i| {
                let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(cfg.seed, &[WEAK_DOMAIN, n as u64, i as u64]));
                let x = DMatrix::from_fn(n, p, |_, _| StandardNormal.sample(&mut rng));
                Ok(mle_exists(g, &x, &cfg.completion)?.status)
            })
            .collect();
        let mut exists = 0;
        let mut undetermined = 0;
        for s in statuses {
            match s? {
                CompletionStatus::Feasible => exists += 1,
                CompletionStatus::Undetermined => undetermined += 1,
                CompletionStatus::Infeasible => {}
            }
        }
        let samples = cfg.samples_per_n;
        let (ci_low, ci_high) = wilson_interval(exists, samples, 1.96);
        per_n.push(WeakRankPoint {
            n,
            samples,
            exists,
            undetermined,
            frequency: exists as f64 / samples as f64,
            ci_low,
            ci_high,
        });
    }
    let n_hat = per_n.iter().find(|pt| pt.exists == pt.samples).map(|pt| pt.n);
    Ok(WeakRankReport { per_n, n_hat })
}
