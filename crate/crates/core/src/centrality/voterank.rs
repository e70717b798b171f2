use super::{CentralityScores, Measure, Residual};
use crate::error::{Error, Result};
use crate::graph::{ActiveMask, Graph};
use crate::scalar::Scalar;

/// Voting state after a VoteRank run.
#[derive(Debug, Clone, PartialEq)]
pub struct VoteState<T> {
    /// `s_u`: votes received in the last round (0 for elected nodes).
    pub score: Vec<T>,
    /// `va_u`: remaining voting ability in `[0, 1]`.
    pub ability: Vec<T>,
    /// Elected spreaders in election order.
    pub selected: Vec<usize>,
}

impl<T: Scalar> VoteState<T> {
    /// `r − rank` for elected nodes and 0 otherwise, so ordering by score
    /// reproduces the election order.
    pub fn scores(&self) -> CentralityScores<T> {
        let r = self.selected.len();
        let mut scores = vec![T::zero(); self.score.len()];
        for (rank, &u) in self.selected.iter().enumerate() {
            scores[u] = T::of_usize(r - rank);
        }
        CentralityScores {
            measure: Measure::VoteRank,
            scores,
        }
    }
}

/// Elects `r` spreaders.
///
/// Each round every node's score is the summed voting ability of its
/// neighbours; the highest-scoring unelected node wins (ties to the smaller
/// id), loses its own voting ability, and each of its neighbours loses
/// `1/⟨k⟩` of theirs (floored at 0), `⟨k⟩` being the mean degree.
pub fn voterank<T: Scalar>(g: &Graph, r: usize) -> Result<VoteState<T>> {
    voterank_on(g, None, r)
}

pub fn voterank_on<T: Scalar>(g: &Graph, active: Option<&ActiveMask>, r: usize) -> Result<VoteState<T>> {
    let res = Residual::new(g, active);
    let n = res.n();
    let nodes: Vec<usize> = (0..n).filter(|&u| res.is_active(u)).collect();
    if r > nodes.len() {
        return Err(Error::BudgetTooLarge {
            budget: r,
            available: nodes.len(),
        });
    }
    let mut state = VoteState {
        score: vec![T::zero(); n],
        ability: nodes.iter().fold(vec![T::zero(); n], |mut a, &u| {
            a[u] = T::one();
            a
        }),
        selected: Vec::with_capacity(r),
    };
    if r == 0 {
        return Ok(state);
    }
    let degree_sum: usize = nodes.iter().map(|&u| res.degree(u)).sum();
    if degree_sum == 0 {
        return Err(Error::VoteRankUndefined("mean degree is zero".into()));
    }
    let delta = T::of_usize(nodes.len()) / T::of_usize(degree_sum);
    let mut elected = vec![false; n];

    for _ in 0..r {
        for &u in &nodes {
            state.score[u] = if elected[u] {
                T::zero()
            } else {
                res.neighbors(u).map(|v| state.ability[v]).sum()
            };
        }
        let mut winner = None;
        for &u in nodes.iter().filter(|&&u| !elected[u]) {
            match winner {
                Some(w) if state.score[u] <= state.score[w] => {}
                _ => winner = Some(u),
            }
        }
        let w = winner.expect("r <= active node count");
        elected[w] = true;
        state.selected.push(w);
        state.score[w] = T::zero();
        state.ability[w] = T::zero();
        for v in res.neighbors(w) {
            state.ability[v] = (state.ability[v] - delta).max(T::zero());
        }
    }
    Ok(state)
}
