//! Sparse operators derived from a graph's adjacency structure.

use crate::graph::Graph;
use crate::matrix::SparseMatrix;
use crate::scalar::Scalar;

/// Renormalized propagation matrix `D̃^{-1/2} (W + I) D̃^{-1/2}` with
/// `D̃_ii = deg(i) + 1`.
pub fn normalized_adjacency<T: Scalar>(g: &Graph) -> SparseMatrix<T> {
    let n = g.node_count();
    let inv_sqrt: Vec<T> = (0..n)
        .map(|u| T::one() / T::of_usize(g.degree(u) + 1).sqrt())
        .collect();
    let rows = (0..n)
        .map(|u| {
            std::iter::once(u)
                .chain(g.neighbors(u).iter().copied())
                .map(|v| (v, inv_sqrt[u] * inv_sqrt[v]))
                .collect()
        })
        .collect();
    SparseMatrix::from_row_entries(n, rows).expect("normalized adjacency is well formed")
}

/// Symmetric normalized Laplacian `I − D^{-1/2} W D^{-1/2}`.
///
/// For a zero-degree node the `D^{-1/2}` factor is taken as 0, so its row
/// and column (diagonal included) are all zero.
pub fn normalized_laplacian<T: Scalar>(g: &Graph) -> SparseMatrix<T> {
    let n = g.node_count();
    let inv_sqrt: Vec<T> = (0..n)
        .map(|u| match g.degree(u) {
            0 => T::zero(),
            d => T::one() / T::of_usize(d).sqrt(),
        })
        .collect();
    let rows = (0..n)
        .map(|u| {
            let mut row = Vec::with_capacity(g.degree(u) + 1);
            if g.degree(u) > 0 {
                row.push((u, T::one()));
            }
            row.extend(g.neighbors(u).iter().map(|&v| (v, -(inv_sqrt[u] * inv_sqrt[v]))));
            row
        })
        .collect();
    SparseMatrix::from_row_entries(n, rows).expect("normalized Laplacian is well formed")
}
