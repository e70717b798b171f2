use std::collections::VecDeque;

use rayon::prelude::*;

use super::{CentralityScores, Measure, Residual};
use crate::graph::{ActiveMask, Graph};
use crate::scalar::Scalar;

/// Inverse farness restricted to each node's component, scaled by the
/// fraction of the graph that component reaches (Wasserman–Faust):
///
/// `C(v) = (r − 1)/Σ d(v, ·) · (r − 1)/(n − 1)`, with `r` the size of
/// `v`'s component. Isolated nodes score 0.
pub fn closeness_centrality<T: Scalar>(g: &Graph) -> CentralityScores<T> {
    closeness_centrality_on(g, None)
}

pub fn closeness_centrality_on<T: Scalar>(g: &Graph, active: Option<&ActiveMask>) -> CentralityScores<T> {
    let r = Residual::new(g, active);
    let n_active = r.active_count();
    let scores = (0..r.n())
        .into_par_iter()
        .map_init(
            || (vec![usize::MAX; r.n()], VecDeque::new(), Vec::new()),
            |(dist, queue, touched), s| {
                if !r.is_active(s) || n_active < 2 {
                    return T::zero();
                }
                let (reached, total) = bfs_farness(&r, s, dist, queue, touched);
                if total == 0 {
                    return T::zero();
                }
                let reach = T::of_usize(reached - 1);
                (reach / T::of_usize(total)) * (reach / T::of_usize(n_active - 1))
            },
        )
        .collect();
    CentralityScores {
        measure: Measure::Closeness,
        scores,
    }
}

/// Returns (nodes reached including `s`, sum of distances). Leaves `dist`
/// all `usize::MAX` again on return.
fn bfs_farness(
    r: &Residual<'_>,
    s: usize,
    dist: &mut [usize],
    queue: &mut VecDeque<usize>,
    touched: &mut Vec<usize>,
) -> (usize, usize) {
    dist[s] = 0;
    touched.push(s);
    queue.push_back(s);
    let mut total = 0;
    while let Some(u) = queue.pop_front() {
        total += dist[u];
        for v in r.neighbors(u) {
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                touched.push(v);
                queue.push_back(v);
            }
        }
    }
    let reached = touched.len();
    for u in touched.drain(..) {
        dist[u] = usize::MAX;
    }
    (reached, total)
}
