//! Batch experiments described by plain-text presets of `key = value`
//! lines. Two families are supported:
//!
//! ```text
//! # random graphs G(p, eps): how often do the rank bounds coincide?
//! family = random
//! sizes = 8, 10, 12
//! eps = 0.5
//! graphs = 20
//! seed = 1
//! estimate = false
//! trials = 50
//! ```
//!
//! and `family = list` with `specs = cycle:5; grid:3x3; icosahedron`.

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphSpec};
use crate::params::rank_bounds;
use crate::rank::{estimate_gaussian_rank, Determination, RankConfig};
use crate::seed::sub_seed;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Family {
    Random { sizes: Vec<usize>, eps: f64, graphs: usize },
    List { specs: Vec<String> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub family: Family,
    pub seed: u64,
    /// Run the rank estimator, not only the bounds.
    pub estimate: bool,
    pub trials: usize,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidConfig(msg.into())
}

fn parse_num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
    v.trim().parse().map_err(|_| invalid(format!("bad value for {key}: {v:?}")))
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut kv = BTreeMap::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse { line: no + 1, msg: format!("expected key = value, got {line:?}") })?;
            if kv.insert(k.trim().to_string(), v.trim().to_string()).is_some() {
                return Err(Error::Parse { line: no + 1, msg: format!("duplicate key {:?}", k.trim()) });
            }
        }
        let mut take = |k: &str| kv.remove(k);
        let family = match take("family").as_deref() {
            Some("random") => {
                let sizes = take("sizes")
                    .ok_or_else(|| invalid("random family needs sizes"))?
                    .split(',')
                    .map(|s| parse_num("sizes", s))
                    .collect::<Result<Vec<usize>>>()?;
                let eps = parse_num("eps", &take("eps").unwrap_or_else(|| "0.5".into()))?;
                let graphs = parse_num("graphs", &take("graphs").unwrap_or_else(|| "20".into()))?;
                if sizes.is_empty() || sizes.contains(&0) || graphs == 0 {
                    return Err(invalid("sizes and graphs must be positive"));
                }
                Family::Random { sizes, eps, graphs }
            }
            Some("list") => {
                let specs: Vec<String> = take("specs")
                    .ok_or_else(|| invalid("list family needs specs"))?
                    .split(';')
                    .map(|s| s.trim().to_string())
                    .filter(|s| !s.is_empty())
                    .collect();
                for s in &specs {
                    s.parse::<GraphSpec>()?;
                }
                Family::List { specs }
            }
            Some(other) => return Err(invalid(format!("unknown family {other:?}; expected random or list"))),
            None => return Err(invalid("missing family")),
        };
        let seed = parse_num("seed", &take("seed").unwrap_or_else(|| "0".into()))?;
        let estimate = parse_num("estimate", &take("estimate").unwrap_or_else(|| "false".into()))?;
        let trials = parse_num("trials", &take("trials").unwrap_or_else(|| "200".into()))?;
        if let Some(k) = kv.keys().next() {
            return Err(invalid(format!("unknown key {k:?}")));
        }
        Ok(ExperimentConfig { family, seed, estimate, trials })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentEntry {
    pub spec: String,
    pub p: usize,
    pub edges: usize,
    pub lower: usize,
    pub upper: usize,
    pub concluded_rank: Option<usize>,
    pub determination: Option<Determination>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SizeSummary {
    pub p: usize,
    pub graphs: usize,
    /// Fraction of graphs with `κ* = δ*`, where the bounds settle the rank.
    pub fraction_equal_bounds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub entries: Vec<ExperimentEntry>,
    pub summary: Vec<SizeSummary>,
}

pub fn run_experiment(cfg: &ExperimentConfig, rank_cfg: &RankConfig) -> Result<ExperimentReport> {
    let rank_cfg = RankConfig { trials_per_rank: cfg.trials, seed: cfg.seed, ..*rank_cfg };
    let mut graphs: Vec<(String, Graph)> = Vec::new();
    match &cfg.family {
        Family::Random { sizes, eps, graphs: count } => {
            for &p in sizes {
                for i in 0..*count {
                    let seed = sub_seed(cfg.seed, &[p as u64, i as u64]);
                    let spec = format!("random:p={p},eps={eps},seed={seed}");
                    graphs.push((spec.clone(), spec.parse::<GraphSpec>()?.build(seed)?));
                }
            }
        }
        Family::List { specs } => {
            for s in specs {
                graphs.push((s.clone(), s.parse::<GraphSpec>()?.build(cfg.seed)?));
            }
        }
    }
    let mut entries = Vec::with_capacity(graphs.len());
    for (spec, g) in graphs {
        let (lower, upper) = rank_bounds(&g);
        let (concluded_rank, determination) = if cfg.estimate {
            let r = estimate_gaussian_rank(&g, &rank_cfg)?;
            (r.concluded_rank, Some(r.determination))
        } else {
            (None, None)
        };
        entries.push(ExperimentEntry {
            spec,
            p: g.order(),
            edges: g.edge_count(),
            lower,
            upper,
            concluded_rank,
            determination,
        });
    }
    let mut by_size: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    for e in &entries {
        let slot = by_size.entry(e.p).or_default();
        slot.0 += 1;
        slot.1 += usize::from(e.lower == e.upper);
    }
    let summary = by_size
        .into_iter()
        .map(|(p, (n, eq))| SizeSummary { p, graphs: n, fraction_equal_bounds: eq as f64 / n as f64 })
        .collect();
    Ok(ExperimentReport { entries, summary })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_presets() {
        let c = ExperimentConfig::parse("family = random\nsizes = 6, 8 # two sizes\neps=0.4\ngraphs = 3\nseed = 9\n").unwrap();
        assert_eq!(c.family, Family::Random { sizes: vec![6, 8], eps: 0.4, graphs: 3 });
        assert_eq!(c.seed, 9);
        assert!(!c.estimate);
        let c = ExperimentConfig::parse("family = list\nspecs = cycle:5; random:p=6,eps=0.5\nestimate = true").unwrap();
        assert_eq!(c.family, Family::List { specs: vec!["cycle:5".into(), "random:p=6,eps=0.5".into()] });
        assert!(ExperimentConfig::parse("family = random").is_err());
        assert!(ExperimentConfig::parse("family = list\nspecs = cycle:5\ncolour = blue").is_err());
        assert!(ExperimentConfig::parse("family = list\nspecs = nonsense:3").is_err());
        assert!(ExperimentConfig::parse("just words").is_err());
    }

    #[test]
    fn random_preset_is_reproducible() {
        let c = ExperimentConfig::parse("family = random\nsizes = 7\neps = 0.5\ngraphs = 5\nseed = 2").unwrap();
        let a = run_experiment(&c, &RankConfig::default()).unwrap();
        let b = run_experiment(&c, &RankConfig::default()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.entries.len(), 5);
        assert!(a.summary[0].fraction_equal_bounds >= 0.0 && a.summary[0].fraction_equal_bounds <= 1.0);
    }

    #[test]
    fn list_preset_estimates() {
        let c = ExperimentConfig::parse("family = list\nspecs = cycle:5; bipartite:4x3\nestimate = true\ntrials = 20").unwrap();
        let r = run_experiment(&c, &RankConfig::default()).unwrap();
        assert_eq!(r.entries[0].concluded_rank, Some(3));
        assert_eq!(r.entries[1].concluded_rank, Some(4));
    }
}
