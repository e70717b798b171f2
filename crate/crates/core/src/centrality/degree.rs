use super::{CentralityScores, Measure, Residual};
use crate::graph::{ActiveMask, Graph};
use crate::scalar::Scalar;

/// Raw neighbour count per node.
pub fn degree_centrality<T: Scalar>(g: &Graph) -> CentralityScores<T> {
    degree_centrality_on(g, None)
}

pub fn degree_centrality_on<T: Scalar>(g: &Graph, active: Option<&ActiveMask>) -> CentralityScores<T> {
    let r = Residual::new(g, active);
    let scores = (0..r.n())
        .map(|u| if r.is_active(u) { T::of_usize(r.degree(u)) } else { T::zero() })
        .collect();
    CentralityScores {
        measure: Measure::Degree,
        scores,
    }
}
