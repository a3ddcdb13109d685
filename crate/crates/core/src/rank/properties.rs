use super::{estimate_gaussian_rank, RankConfig};
use crate::error::{Error, Result};
use crate::graph::{bits, Graph, VertexSet};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// Largest order accepted by [`check_rank_properties`].
pub const PROPERTY_MAX_VERTICES: usize = 8;

/// Rank estimates keyed by canonical form, shared across property checks.
#[derive(Debug, Default)]
pub struct RankCache {
    ranks: HashMap<Graph, Option<usize>>,
}

impl RankCache {
    pub fn new() -> Self {
        RankCache::default()
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    /// Concluded rank of `g`, or `None` when the estimate is an interval.
    pub fn rank(&mut self, g: &Graph, cfg: &RankConfig) -> Result<Option<usize>> {
        let key = g.canonical_form();
        if let Some(r) = self.ranks.get(&key) {
            return Ok(*r);
        }
        let cfg = RankConfig { probe_below: false, ..*cfg };
        let r = estimate_gaussian_rank(&key, &cfg)?.concluded_rank;
        self.ranks.insert(key, r);
        Ok(r)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PropertyStatus {
    Conclusive,
    Undetermined,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VertexCheck {
    pub v: usize,
    pub degree: usize,
    pub rank_without: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeCheck {
    pub edge: (usize, usize),
    pub rank_without: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CliqueSumCheck {
    pub separator: Vec<usize>,
    pub first: Vec<usize>,
    pub second: Vec<usize>,
    pub ranks: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub status: PropertyStatus,
    pub rank: Option<usize>,
    pub vertices: Vec<VertexCheck>,
    pub edges: Vec<EdgeCheck>,
    pub clique_sum: Option<CliqueSumCheck>,
    pub violations: Vec<String>,
}

impl PropertyReport {
    fn undetermined(rank: Option<usize>) -> Self {
        PropertyReport {
            status: PropertyStatus::Undetermined,
            rank,
            vertices: Vec::new(),
            edges: Vec::new(),
            clique_sum: None,
            violations: Vec::new(),
        }
    }
}

/// Smallest clique `S` (possibly empty) whose removal disconnects `G`,
/// with the split `V1 = C ∪ S`, `V2 = V \ C` for the first component `C`.
fn clique_separation(g: &Graph) -> Option<(u64, u64, u64)> {
    let all = g.vertex_mask();
    let mut masks: Vec<u64> = (0..=all).filter(|m| m & !all == 0).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    for s in masks {
        if !g.is_clique_mask(s) {
            continue;
        }
        let comps = g.components_of_mask(all & !s);
        if comps.len() >= 2 {
            let first = comps[0] | s;
            let second = all & !comps[0];
            return Some((s, first, second));
        }
    }
    None
}

/// Estimates the ranks of `G`, every `G - v`, every `G - e` and, when `G`
/// has a clique separator, both sides of the clique sum, then checks:
/// `r(G-v) <= r(G) <= r(G-v) + 1`; `r(G) = r(G-v) + 1` when `v` is adjacent
/// to every other vertex; `r(G) = r(G-v)` when `r(G-v) >= deg(v) + 1`;
/// `r(G-e) <= r(G)`; and `r(G) = max(r(G1), r(G2))` for a clique sum.
pub fn check_rank_properties(g: &Graph, cfg: &RankConfig, cache: &mut RankCache) -> Result<PropertyReport> {
    let p = g.order();
    if p > PROPERTY_MAX_VERTICES {
        return Err(Error::InvalidParameter(format!(
            "property checks need p <= {PROPERTY_MAX_VERTICES}, got {p}"
        )));
    }
    let Some(r) = cache.rank(g, cfg)? else { return Ok(PropertyReport::undetermined(None)) };
    let mut report = PropertyReport::undetermined(Some(r));
    let mut violations = Vec::new();

    if p >= 2 {
        for v in 0..p {
            let Some(rv) = cache.rank(&g.delete_vertex(v)?, cfg)? else { return Ok(report) };
            let degree = g.degree(v);
            if !(rv <= r && r <= rv + 1) {
                violations.push(format!("vertex {v}: r(G-v) = {rv}, r(G) = {r} violates r(G-v) <= r(G) <= r(G-v)+1"));
            }
            if degree == p - 1 && r != rv + 1 {
                violations.push(format!("vertex {v} is universal but r(G) = {r} != r(G-v)+1 = {}", rv + 1));
            }
            if rv > degree && r != rv {
                violations.push(format!("vertex {v}: r(G-v) = {rv} >= deg+1 = {} but r(G) = {r}", degree + 1));
            }
            report.vertices.push(VertexCheck { v, degree, rank_without: rv });
        }
    }
    for (i, j) in g.edges() {
        let Some(re) = cache.rank(&g.delete_edge(i, j)?, cfg)? else { return Ok(report) };
        if re > r {
            violations.push(format!("edge ({i}, {j}): r(G-e) = {re} > r(G) = {r}"));
        }
        report.edges.push(EdgeCheck { edge: (i, j), rank_without: re });
    }
    if let Some((s, first, second)) = clique_separation(g) {
        let g1 = g.induced_subgraph(&VertexSet::from_mask(first))?.graph;
        let g2 = g.induced_subgraph(&VertexSet::from_mask(second))?.graph;
        let (Some(r1), Some(r2)) = (cache.rank(&g1, cfg)?, cache.rank(&g2, cfg)?) else { return Ok(report) };
        if r != r1.max(r2) {
            violations.push(format!("clique sum: r(G) = {r} != max({r1}, {r2})"));
        }
        report.clique_sum = Some(CliqueSumCheck {
            separator: bits(s).collect(),
            first: bits(first).collect(),
            second: bits(second).collect(),
            ranks: (r1, r2),
        });
    }
    report.violations = violations;
    report.status = PropertyStatus::Conclusive;
    Ok(report)
}
