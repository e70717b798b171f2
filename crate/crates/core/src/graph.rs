//! Immutable undirected simple graph in compressed sparse row form.

use crate::error::{Error, Result};

/// Undirected, unweighted simple graph.
///
/// Every edge `{u, v}` is stored twice, once in each endpoint's row, so
/// `offsets[n] == 2 * edge_count`. Rows are strictly increasing and never
/// contain the row's own id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<usize>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph on `n` nodes from an arbitrary edge list.
    ///
    /// Self loops are dropped; duplicate and reversed pairs collapse to a
    /// single undirected edge.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut degree = vec![0usize; n];
        for &(u, v) in edges {
            for id in [u, v] {
                if id >= n {
                    return Err(Error::NodeOutOfRange { id, n });
                }
            }
            if u != v {
                degree[u] += 1;
                degree[v] += 1;
            }
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut cursor = offsets[..n].to_vec();
        let mut raw = vec![0usize; offsets[n]];
        for &(u, v) in edges {
            if u != v {
                raw[cursor[u]] = v;
                cursor[u] += 1;
                raw[cursor[v]] = u;
                cursor[v] += 1;
            }
        }

        // sort + dedup each row, then compact
        let mut neighbors = Vec::with_capacity(raw.len());
        let mut compact = Vec::with_capacity(n + 1);
        compact.push(0);
        for u in 0..n {
            let row = &mut raw[offsets[u]..offsets[u + 1]];
            row.sort_unstable();
            let mut last = None;
            for &v in row.iter() {
                if last != Some(v) {
                    neighbors.push(v);
                    last = Some(v);
                }
            }
            compact.push(neighbors.len());
        }
        let edge_count = neighbors.len() / 2;
        Ok(Self {
            offsets: compact,
            neighbors,
            edge_count,
        })
    }

    /// Graph with `n` nodes and no edges.
    pub fn empty(n: usize) -> Self {
        Self {
            offsets: vec![0; n + 1],
            neighbors: Vec::new(),
            edge_count: 0,
        }
    }

    #[inline]
    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.neighbors[self.offsets[u]..self.offsets[u + 1]]
    }

    #[inline]
    pub fn degree(&self, u: usize) -> usize {
        self.offsets[u + 1] - self.offsets[u]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn csr_neighbors(&self) -> &[usize] {
        &self.neighbors
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`, in row order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.node_count()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .filter(move |&&v| v > u)
                .map(move |&v| (u, v))
        })
    }

    pub fn mean_degree(&self) -> f64 {
        match self.node_count() {
            0 => 0.0,
            n => 2.0 * self.edge_count as f64 / n as f64,
        }
    }

    /// Graph obtained by renaming node `u` to `perm[u]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let n = self.node_count();
        if perm.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "permutation of length {} for {} nodes",
                perm.len(),
                n
            )));
        }
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidArgument("not a permutation".into()));
            }
        }
        let edges: Vec<_> = self.edges().map(|(u, v)| (perm[u], perm[v])).collect();
        Self::from_edges(n, &edges)
    }

    /// Checks the structural invariants. Cheap enough for tests and loaders.
    pub fn validate(&self) -> Result<()> {
        let n = self.node_count();
        if self.offsets[n] != 2 * self.edge_count {
            return Err(Error::InvalidArgument("offset total != 2 * edge_count".into()));
        }
        for u in 0..n {
            let row = self.neighbors(u);
            if row.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidArgument(format!("row {u} not strictly increasing")));
            }
            for &v in row {
                if v >= n {
                    return Err(Error::NodeOutOfRange { id: v, n });
                }
                if v == u {
                    return Err(Error::InvalidArgument(format!("self loop at {u}")));
                }
                if !self.has_edge(v, u) {
                    return Err(Error::InvalidArgument(format!("edge {u}-{v} not symmetric")));
                }
            }
        }
        Ok(())
    }
}

/// Per-node membership flags for a residual graph: node `u` participates iff
/// `active[u]`. Inactive nodes and their incident edges are treated as
/// deleted by every centrality routine.
pub type ActiveMask = [bool];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_edge_list_gives_isolated_nodes() {
        let g = Graph::from_edges(3, &[]).unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edge_count(), 0);
        assert!((0..3).all(|u| g.degree(u) == 0));
    }

    #[test]
    fn duplicate_and_reversed_pairs_collapse() {
        let g = Graph::from_edges(2, &[(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!([g.degree(0), g.degree(1)], [1, 1]);
        g.validate().unwrap();
    }

    #[test]
    fn triangle() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!((0..3).map(|u| g.degree(u)).collect::<Vec<_>>(), [2, 2, 2]);
        assert_eq!(g.offsets()[3], 2 * g.edge_count());
        assert_eq!(g.edges().collect::<Vec<_>>(), [(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn self_loops_dropped() {
        let g = Graph::from_edges(2, &[(0, 0), (1, 1), (0, 1)]).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert!(!g.has_edge(0, 0));
    }

    #[test]
    fn out_of_range_rejected() {
        let err = Graph::from_edges(2, &[(0, 2)]).unwrap_err();
        assert!(matches!(err, Error::NodeOutOfRange { id: 2, n: 2 }));
    }

    #[test]
    fn relabel_preserves_structure() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let h = g.relabel(&[3, 2, 1, 0]).unwrap();
        assert!(h.has_edge(3, 2) && h.has_edge(2, 1) && h.has_edge(1, 0));
        assert_eq!(h.edge_count(), 3);
        assert!(g.relabel(&[0, 0, 1, 2]).is_err());
    }
}
