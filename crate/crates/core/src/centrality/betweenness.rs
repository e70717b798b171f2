use std::collections::VecDeque;

use rayon::prelude::*;

use super::{CentralityScores, Measure, Residual};
use crate::graph::{ActiveMask, Graph};
use crate::scalar::Scalar;

/// Sources per parallel work unit. Fixed so the floating-point reduction
/// order never depends on the thread count.
const SOURCE_CHUNK: usize = 32;

/// Exact shortest-path betweenness via Brandes' dependency accumulation.
///
/// Each unordered pair `{s, t}` with `s ≠ v ≠ t` contributes
/// `σ_st(v)/σ_st` once; unreachable pairs contribute nothing. No
/// normalization is applied.
pub fn betweenness_centrality<T: Scalar>(g: &Graph) -> CentralityScores<T> {
    betweenness_centrality_on(g, None)
}

pub fn betweenness_centrality_on<T: Scalar>(g: &Graph, active: Option<&ActiveMask>) -> CentralityScores<T> {
    let r = Residual::new(g, active);
    let n = r.n();
    let sources: Vec<usize> = (0..n).filter(|&s| r.is_active(s)).collect();

    let partials: Vec<Vec<T>> = sources
        .par_chunks(SOURCE_CHUNK)
        .map(|chunk| {
            let mut ws = Workspace::new(n);
            let mut acc = vec![T::zero(); n];
            for &s in chunk {
                ws.single_source(&r, s, &mut acc);
            }
            acc
        })
        .collect();

    let mut scores = vec![T::zero(); n];
    for part in partials {
        for (a, p) in scores.iter_mut().zip(part) {
            *a += p;
        }
    }
    // every unordered pair was visited from both endpoints
    let half = T::of(0.5);
    for v in &mut scores {
        *v *= half;
    }
    CentralityScores {
        measure: Measure::Betweenness,
        scores,
    }
}

struct Workspace<T> {
    sigma: Vec<T>,
    dist: Vec<usize>,
    delta: Vec<T>,
    preds: Vec<Vec<usize>>,
    order: Vec<usize>,
    queue: VecDeque<usize>,
}

impl<T: Scalar> Workspace<T> {
    fn new(n: usize) -> Self {
        Self {
            sigma: vec![T::zero(); n],
            dist: vec![usize::MAX; n],
            delta: vec![T::zero(); n],
            preds: vec![Vec::new(); n],
            order: Vec::new(),
            queue: VecDeque::new(),
        }
    }

    fn single_source(&mut self, r: &Residual<'_>, s: usize, acc: &mut [T]) {
        self.sigma[s] = T::one();
        self.dist[s] = 0;
        self.queue.push_back(s);
        while let Some(u) = self.queue.pop_front() {
            self.order.push(u);
            for v in r.neighbors(u) {
                if self.dist[v] == usize::MAX {
                    self.dist[v] = self.dist[u] + 1;
                    self.queue.push_back(v);
                }
                if self.dist[v] == self.dist[u] + 1 {
                    let su = self.sigma[u];
                    self.sigma[v] += su;
                    self.preds[v].push(u);
                }
            }
        }
        while let Some(w) = self.order.pop() {
            let coeff = (T::one() + self.delta[w]) / self.sigma[w];
            for i in 0..self.preds[w].len() {
                let v = self.preds[w][i];
                let sv = self.sigma[v];
                self.delta[v] += sv * coeff;
            }
            if w != s {
                acc[w] += self.delta[w];
            }
            self.sigma[w] = T::zero();
            self.dist[w] = usize::MAX;
            self.delta[w] = T::zero();
            self.preds[w].clear();
        }
    }
}
