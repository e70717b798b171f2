//! Node centrality measures.
//!
//! Every measure has a plain entry point over a whole [`Graph`] and a
//! `*_on` variant that works on a residual graph described by an
//! [`ActiveMask`]: inactive nodes score 0 and their edges are ignored.

mod betweenness;
mod closeness;
mod degree;
mod pagerank;
mod voterank;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{ActiveMask, Graph};
use crate::scalar::Scalar;

pub use betweenness::{betweenness_centrality, betweenness_centrality_on};
pub use closeness::{closeness_centrality, closeness_centrality_on};
pub use degree::{degree_centrality, degree_centrality_on};
pub use pagerank::{pagerank_centrality, pagerank_centrality_on, pagerank_residual};
pub use voterank::{voterank, voterank_on, VoteState};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Measure {
    Degree,
    Closeness,
    Betweenness,
    #[serde(alias = "page_rank")]
    PageRank,
    #[serde(alias = "vote_rank")]
    VoteRank,
}

impl Measure {
    pub const ALL: [Measure; 5] = [
        Measure::Degree,
        Measure::Closeness,
        Measure::Betweenness,
        Measure::PageRank,
        Measure::VoteRank,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Measure::Degree => "degree",
            Measure::Closeness => "closeness",
            Measure::Betweenness => "betweenness",
            Measure::PageRank => "pagerank",
            Measure::VoteRank => "voterank",
        }
    }

    pub fn compute<T: Scalar>(self, g: &Graph, params: &CentralityParams) -> Result<CentralityScores<T>> {
        self.compute_on(g, None, params)
    }

    /// Scores on the residual graph induced by `active` (all nodes when `None`).
    ///
    /// VoteRank ranks every active node, i.e. runs `r = |active|` rounds.
    pub fn compute_on<T: Scalar>(
        self,
        g: &Graph,
        active: Option<&ActiveMask>,
        params: &CentralityParams,
    ) -> Result<CentralityScores<T>> {
        check_mask(g, active)?;
        Ok(match self {
            Measure::Degree => degree_centrality_on(g, active),
            Measure::Closeness => closeness_centrality_on(g, active),
            Measure::Betweenness => betweenness_centrality_on(g, active),
            Measure::PageRank => {
                pagerank_centrality_on(g, active, params.alpha, params.tol, params.max_iter)?
            }
            Measure::VoteRank => {
                let r = active.map_or(g.node_count(), |m| m.iter().filter(|&&a| a).count());
                voterank_on::<T>(g, active, r)?.scores()
            }
        })
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "degree" => Ok(Measure::Degree),
            "closeness" => Ok(Measure::Closeness),
            "betweenness" => Ok(Measure::Betweenness),
            "pagerank" => Ok(Measure::PageRank),
            "voterank" => Ok(Measure::VoteRank),
            _ => Err(Error::InvalidArgument(format!("unknown centrality measure {s:?}"))),
        }
    }
}

/// PageRank knobs; ignored by the other measures.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct CentralityParams {
    /// Teleport weight: `M = (1 − alpha) A D⁻¹ + alpha/n · 11ᵀ`.
    pub alpha: f64,
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for CentralityParams {
    fn default() -> Self {
        Self {
            alpha: 0.15,
            tol: 1e-12,
            max_iter: 1000,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CentralityScores<T> {
    pub measure: Measure,
    pub scores: Vec<T>,
}

impl<T: Scalar> CentralityScores<T> {
    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }

    /// All node ids ordered by descending score, ties by smaller id.
    pub fn ranking(&self) -> Vec<usize> {
        let mut ids: Vec<usize> = (0..self.scores.len()).collect();
        ids.sort_by(|&a, &b| self.cmp_nodes(a, b));
        ids
    }

    /// The `k` best nodes among those accepted by `eligible`, in ranking order.
    pub fn top_k_where(&self, k: usize, eligible: impl Fn(usize) -> bool) -> Vec<usize> {
        let mut ids: Vec<usize> = (0..self.scores.len()).filter(|&u| eligible(u)).collect();
        ids.sort_by(|&a, &b| self.cmp_nodes(a, b));
        ids.truncate(k);
        ids
    }

    pub fn top_k(&self, k: usize) -> Vec<usize> {
        self.top_k_where(k, |_| true)
    }

    fn cmp_nodes(&self, a: usize, b: usize) -> std::cmp::Ordering {
        self.scores[b]
            .partial_cmp(&self.scores[a])
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.cmp(&b))
    }
}

fn check_mask(g: &Graph, active: Option<&ActiveMask>) -> Result<()> {
    match active {
        Some(m) if m.len() != g.node_count() => Err(Error::DimensionMismatch(format!(
            "active mask of length {} for {} nodes",
            m.len(),
            g.node_count()
        ))),
        _ => Ok(()),
    }
}

/// A graph seen through an optional active mask.
#[derive(Clone, Copy)]
pub(crate) struct Residual<'a> {
    pub g: &'a Graph,
    pub active: Option<&'a ActiveMask>,
}

impl<'a> Residual<'a> {
    pub fn new(g: &'a Graph, active: Option<&'a ActiveMask>) -> Self {
        Self { g, active }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.g.node_count()
    }

    #[inline]
    pub fn is_active(&self, u: usize) -> bool {
        self.active.is_none_or(|m| m[u])
    }

    pub fn active_count(&self) -> usize {
        (0..self.n()).filter(|&u| self.is_active(u)).count()
    }

    #[inline]
    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + 'a {
        let active = self.active;
        self.g
            .neighbors(u)
            .iter()
            .copied()
            .filter(move |&v| active.is_none_or(|m| m[v]))
    }

    pub fn degree(&self, u: usize) -> usize {
        match self.active {
            None => self.g.degree(u),
            Some(_) => self.neighbors(u).count(),
        }
    }
}
