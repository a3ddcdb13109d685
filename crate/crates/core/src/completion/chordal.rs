use crate::error::{Error, Result};
use crate::graph::{bits, Graph};
use crate::sympsd::SymMatrix;
use nalgebra::DMatrix;

/// Closed-form positive definite completion on a chordal graph.
///
/// Vertices are added in reverse perfect elimination order. When `v` joins
/// the completed set `R`, its neighbours in `R` form a clique `C`, and the
/// row `P[v, R \ C] = P[v, C] P[C]⁻¹ P[C, R \ C]` makes `v` conditionally
/// independent of `R \ C` given `C`. The result is the completion whose
/// inverse vanishes on every non-edge.
pub fn chordal_complete(g: &Graph, a: &SymMatrix) -> Result<SymMatrix> {
    let p = g.order();
    if a.dim() != p {
        return Err(Error::DimensionMismatch { expected: p, got: a.dim() });
    }
    let order = g.perfect_elimination_order().ok_or(Error::NotChordal)?;
    for clique in g.maximal_cliques() {
        let idx: Vec<usize> = bits(clique).collect();
        let block = a.principal(&idx);
        let scale = block.diagonal().into_iter().fold(0.0, f64::max);
        if !scale.is_finite() || scale <= 0.0 || block.min_eigenvalue() <= 1e-12 * scale {
            return Err(Error::CliqueNotPd(idx));
        }
    }

    let mut m = a.as_matrix().clone();
    let mut done: u64 = 0;
    for &v in order.iter().rev() {
        let sep: Vec<usize> = bits(g.neighbor_mask(v) & done).collect();
        let rest: Vec<usize> = bits(done & !g.neighbor_mask(v)).collect();
        if !rest.is_empty() {
            let fill = if sep.is_empty() {
                DMatrix::zeros(1, rest.len())
            } else {
                let pc = m.select_rows(&sep).select_columns(&sep);
                let chol = pc.cholesky().ok_or_else(|| Error::CliqueNotPd(sep.clone()))?;
                let coef = chol.solve(&m.select_rows(&sep).select_columns(&[v]));
                coef.transpose() * m.select_rows(&sep).select_columns(&rest)
            };
            for (k, &u) in rest.iter().enumerate() {
                m[(v, u)] = fill[(0, k)];
                m[(u, v)] = fill[(0, k)];
            }
        }
        done |= 1 << v;
    }
    SymMatrix::new(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn path_fill_is_product_of_correlations() {
        let g = Graph::path(3).unwrap();
        let a = SymMatrix::from_rows(vec![
            vec![1.0, 0.6, 0.0],
            vec![0.6, 1.0, 0.6],
            vec![0.0, 0.6, 1.0],
        ])
        .unwrap();
        let p = chordal_complete(&g, &a).unwrap();
        assert_abs_diff_eq!(p.get(0, 2), 0.36, epsilon = 1e-14);
        let inv = p.as_matrix().clone().try_inverse().unwrap();
        assert_abs_diff_eq!(inv[(0, 2)], 0.0, epsilon = 1e-12);
    }

    #[test]
    fn complete_graph_is_unchanged() {
        let g = Graph::complete(3).unwrap();
        let a = SymMatrix::from_rows(vec![
            vec![2.0, 0.5, 0.1],
            vec![0.5, 1.0, 0.2],
            vec![0.1, 0.2, 3.0],
        ])
        .unwrap();
        assert_eq!(chordal_complete(&g, &a).unwrap(), a);
    }

    #[test]
    fn errors() {
        let c4 = Graph::cycle(4).unwrap();
        assert_eq!(chordal_complete(&c4, &SymMatrix::identity(4)), Err(Error::NotChordal));
        let g = Graph::path(3).unwrap();
        let singular = SymMatrix::from_rows(vec![
            vec![1.0, 1.0, 0.0],
            vec![1.0, 1.0, 0.5],
            vec![0.0, 0.5, 1.0],
        ])
        .unwrap();
        assert!(matches!(chordal_complete(&g, &singular), Err(Error::CliqueNotPd(_))));
    }
}
