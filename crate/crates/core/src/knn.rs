//! k-nearest-neighbour graphs over embedding rows.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::DenseMatrix;
use crate::scalar::Scalar;

#[derive(Debug, Clone)]
pub struct KnnGraph {
    pub graph: Graph,
    /// Neighbour count actually used.
    pub k: usize,
    /// Set when the requested `k` had to be clamped to `n − 1`.
    pub warning: Option<String>,
}

/// Connects every row to its `k` nearest other rows by Euclidean distance and
/// symmetrizes the directed relation by union. Equal distances prefer the
/// smaller node id.
pub fn knn_graph<T: Scalar>(embeddings: &DenseMatrix<T>, k: usize) -> Result<KnnGraph> {
    let n = embeddings.rows();
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "kNN graph needs at least 2 rows, got {n}"
        )));
    }
    let (k, warning) = if k >= n {
        let msg = format!("k={k} >= n={n}; clamped to {}", n - 1);
        log::warn!("{msg}");
        (n - 1, Some(msg))
    } else {
        (k, None)
    };

    let mut edges = Vec::with_capacity(n * k);
    let mut cand: Vec<(T, usize)> = Vec::with_capacity(n - 1);
    for i in 0..n {
        cand.clear();
        let xi = embeddings.row(i);
        for j in (0..n).filter(|&j| j != i) {
            let d2: T = xi
                .iter()
                .zip(embeddings.row(j))
                .map(|(&a, &b)| (a - b) * (a - b))
                .sum();
            cand.push((d2, j));
        }
        let by_dist = |a: &(T, usize), b: &(T, usize)| {
            a.0.partial_cmp(&b.0)
                .unwrap_or(std::cmp::Ordering::Equal)
                .then(a.1.cmp(&b.1))
        };
        if k < cand.len() {
            cand.select_nth_unstable_by(k - 1, by_dist);
        }
        edges.extend(cand[..k].iter().map(|&(_, j)| (i, j)));
    }
    Ok(KnnGraph {
        graph: Graph::from_edges(n, &edges)?,
        k,
        warning,
    })
}
