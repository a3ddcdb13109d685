//! Brute-force reference computations for small graphs. Everything here
//! works from the edge set alone and shares no code path with the library
//! algorithms it checks.

use gaussrank::Graph;

fn adjacency(g: &Graph) -> Vec<Vec<bool>> {
    let p = g.order();
    let mut a = vec![vec![false; p]; p];
    for (i, j) in g.edges() {
        a[i][j] = true;
        a[j][i] = true;
    }
    a
}

fn members(mask: u32, p: usize) -> Vec<usize> {
    (0..p).filter(|v| mask & (1 << v) != 0).collect()
}

fn connected(a: &[Vec<bool>], verts: &[usize]) -> bool {
    if verts.is_empty() {
        return false;
    }
    let mut seen = vec![verts[0]];
    let mut stack = vec![verts[0]];
    while let Some(x) = stack.pop() {
        for &y in verts {
            if a[x][y] && !seen.contains(&y) {
                seen.push(y);
                stack.push(y);
            }
        }
    }
    seen.len() == verts.len()
}

/// Smallest number of deletions leaving a disconnected graph or at most
/// one vertex, over the vertex subset `verts`.
fn kappa_on(a: &[Vec<bool>], verts: &[usize]) -> usize {
    let m = verts.len();
    for k in 0..m {
        for del in 0u32..(1 << m) {
            if del.count_ones() as usize != k {
                continue;
            }
            let rest: Vec<usize> =
                (0..m).filter(|i| del & (1 << i) == 0).map(|i| verts[i]).collect();
            if rest.len() <= 1 || !connected(a, &rest) {
                return k;
            }
        }
    }
    m.saturating_sub(1)
}

pub fn kappa(g: &Graph) -> usize {
    let verts: Vec<usize> = (0..g.order()).collect();
    kappa_on(&adjacency(g), &verts)
}

pub fn kappa_star(g: &Graph) -> usize {
    let a = adjacency(g);
    let p = g.order();
    (1u32..(1 << p)).map(|m| kappa_on(&a, &members(m, p))).max().unwrap_or(0)
}

pub fn degeneracy(g: &Graph) -> usize {
    let a = adjacency(g);
    let p = g.order();
    (1u32..(1 << p))
        .map(|m| {
            let vs = members(m, p);
            vs.iter().map(|&v| vs.iter().filter(|&&u| a[v][u]).count()).min().unwrap()
        })
        .max()
        .unwrap_or(0)
}

pub fn clique_number(g: &Graph) -> usize {
    let a = adjacency(g);
    let p = g.order();
    (1u32..(1 << p))
        .map(|m| members(m, p))
        .filter(|vs| vs.iter().all(|&x| vs.iter().all(|&y| x == y || a[x][y])))
        .map(|vs| vs.len())
        .max()
        .unwrap_or(0)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for perm in permutations(n - 1) {
        for pos in 0..=perm.len() {
            let mut q = perm.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Treewidth as the minimum over elimination orderings of the largest
/// neighbourhood met while eliminating (the elimination game).
pub fn treewidth(g: &Graph) -> usize {
    let p = g.order();
    let base = adjacency(g);
    permutations(p)
        .into_iter()
        .map(|order| {
            let mut a = base.clone();
            let mut gone = vec![false; p];
            let mut width = 0;
            for &v in &order {
                let nb: Vec<usize> = (0..p).filter(|&u| !gone[u] && u != v && a[v][u]).collect();
                width = width.max(nb.len());
                for &x in &nb {
                    for &y in &nb {
                        if x != y {
                            a[x][y] = true;
                        }
                    }
                }
                gone[v] = true;
            }
            width
        })
        .min()
        .unwrap_or(0)
}

/// True iff no vertex subset of size >= 4 induces a cycle.
pub fn chordal(g: &Graph) -> bool {
    let a = adjacency(g);
    let p = g.order();
    !(1u32..(1 << p)).any(|m| {
        let vs = members(m, p);
        vs.len() >= 4
            && connected(&a, &vs)
            && vs.iter().all(|&v| vs.iter().filter(|&&u| a[v][u]).count() == 2)
    })
}

/// Size of a smallest vertex set separating non-adjacent `s` and `t`.
pub fn min_st_separator(g: &Graph, s: usize, t: usize) -> usize {
    let a = adjacency(g);
    let p = g.order();
    let others: Vec<usize> = (0..p).filter(|&v| v != s && v != t).collect();
    let m = others.len();
    let mut best = m;
    for del in 0u32..(1 << m) {
        let k = del.count_ones() as usize;
        if k >= best {
            continue;
        }
        let mut rest: Vec<usize> = (0..m).filter(|i| del & (1 << i) == 0).map(|i| others[i]).collect();
        rest.push(s);
        let mut seen = vec![s];
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for &y in rest.iter().chain(std::iter::once(&t)) {
                if a[x][y] && !seen.contains(&y) {
                    seen.push(y);
                    stack.push(y);
                }
            }
        }
        if !seen.contains(&t) {
            best = k;
        }
    }
    best
}
