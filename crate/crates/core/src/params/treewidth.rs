use crate::error::{Error, Result};
use crate::graph::Graph;

pub const DEFAULT_TREEWIDTH_LIMIT: usize = 12;

/// Number of vertices outside `set ∪ {v}` reachable from `v` by paths whose
/// interior lies in `set`, i.e. the degree of `v` when eliminated after
/// every vertex of `set`.
fn fill_degree(g: &Graph, set: u64, v: usize) -> u32 {
    let vbit = 1u64 << v;
    let mut comp = vbit;
    let mut frontier = vbit;
    let mut outside = 0u64;
    while frontier != 0 {
        let mut nb = 0u64;
        let mut f = frontier;
        while f != 0 {
            let x = f.trailing_zeros() as usize;
            f &= f - 1;
            nb |= g.neighbor_mask(x);
        }
        outside |= nb & !set & !vbit;
        frontier = nb & set & !comp;
        comp |= frontier;
    }
    outside.count_ones()
}

/// Exact treewidth via dynamic programming over vertex subsets:
/// `TW(S) = min_{v in S} max(TW(S - v), Q(S - v, v))`, where `Q` is the
/// fill degree of `v` when eliminated after `S - v`.
pub fn treewidth_exact(g: &Graph, limit: usize) -> Result<usize> {
    let p = g.order();
    if p > limit || p > 24 {
        return Err(Error::TooLargeForTreewidth { p, limit: limit.min(24) });
    }
    let mut tw = vec![u8::MAX; 1usize << p];
    tw[0] = 0;
    for set in 1u64..(1u64 << p) {
        let mut best = u8::MAX;
        let mut rest = set;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let prev = set & !(1 << v);
            let cand = tw[prev as usize].max(fill_degree(g, prev, v) as u8);
            best = best.min(cand);
        }
        tw[set as usize] = best;
    }
    Ok(tw[(1usize << p) - 1] as usize)
}
