use super::{CentralityScores, Measure, Residual};
use crate::error::{Error, Result};
use crate::graph::{ActiveMask, Graph};
use crate::scalar::Scalar;

/// Dominant eigenvector of `M = (1 − alpha)·A D⁻¹ + alpha·(1/n)·11ᵀ` by power
/// iteration, L1-normalized.
///
/// Zero-degree columns of `A D⁻¹` are replaced by the uniform column `1/n`
/// so `M` stays column stochastic. Iteration stops once the L1 change
/// between successive iterates drops below `tol`.
pub fn pagerank_centrality<T: Scalar>(
    g: &Graph,
    alpha: f64,
    tol: f64,
    max_iter: usize,
) -> Result<CentralityScores<T>> {
    pagerank_centrality_on(g, None, alpha, tol, max_iter)
}

pub fn pagerank_centrality_on<T: Scalar>(
    g: &Graph,
    active: Option<&ActiveMask>,
    alpha: f64,
    tol: f64,
    max_iter: usize,
) -> Result<CentralityScores<T>> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidArgument(format!("alpha={alpha} must lie in (0, 1)")));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument(format!("tol={tol} must be positive")));
    }
    let r = Residual::new(g, active);
    let n = r.n();
    let nodes: Vec<usize> = (0..n).filter(|&u| r.is_active(u)).collect();
    let mut x = vec![T::zero(); n];
    if nodes.is_empty() {
        return Ok(CentralityScores {
            measure: Measure::PageRank,
            scores: x,
        });
    }
    let deg: Vec<usize> = (0..n).map(|u| if r.is_active(u) { r.degree(u) } else { 0 }).collect();
    let inv_n = T::one() / T::of_usize(nodes.len());
    for &u in &nodes {
        x[u] = inv_n;
    }
    let tol_t = T::of(tol);

    let mut change = f64::INFINITY;
    for _ in 0..max_iter {
        let next = apply(&r, &nodes, &deg, &x, T::of(alpha));
        change = nodes.iter().map(|&u| (next[u] - x[u]).abs()).sum::<T>().as_f64();
        x = next;
        if T::of(change) < tol_t {
            normalize(&mut x);
            return Ok(CentralityScores {
                measure: Measure::PageRank,
                scores: x,
            });
        }
    }
    Err(Error::NotConverged {
        iterations: max_iter,
        last_change: change,
        last_iterate: x.iter().map(|v| v.as_f64()).collect(),
    })
}

/// One multiplication `M x` on the active nodes.
fn apply<T: Scalar>(r: &Residual<'_>, nodes: &[usize], deg: &[usize], x: &[T], alpha: T) -> Vec<T> {
    let inv_n = T::one() / T::of_usize(nodes.len());
    let damp = T::one() - alpha;
    let total: T = nodes.iter().map(|&u| x[u]).sum();
    let dangling: T = nodes.iter().filter(|&&u| deg[u] == 0).map(|&u| x[u]).sum();
    let base = (alpha * total + damp * dangling) * inv_n;
    let mut next = vec![T::zero(); x.len()];
    for &u in nodes {
        let inflow: T = r
            .neighbors(u)
            .map(|v| x[v] / T::of_usize(deg[v]))
            .sum();
        next[u] = base + damp * inflow;
    }
    next
}

fn normalize<T: Scalar>(x: &mut [T]) {
    let s: T = x.iter().copied().sum();
    if s > T::zero() {
        for v in x {
            *v /= s;
        }
    }
}

/// `‖M x − x‖₁` for the same `M` used by [`pagerank_centrality`].
pub fn pagerank_residual<T: Scalar>(g: &Graph, x: &[T], alpha: f64) -> T {
    let r = Residual::new(g, None);
    let nodes: Vec<usize> = (0..g.node_count()).collect();
    let deg: Vec<usize> = nodes.iter().map(|&u| g.degree(u)).collect();
    let mx = apply(&r, &nodes, &deg, x, T::of(alpha));
    mx.iter().zip(x).map(|(&a, &b)| (a - b).abs()).sum()
}
