//! Choosing the labeled training set.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::centrality::{voterank, CentralityParams, CentralityScores, Measure};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::scalar::Scalar;

/// Default number of nodes taken per smart-selection round.
pub const DEFAULT_PER_ROUND: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    #[serde(rename = "all")]
    AllAtOnce,
    #[serde(rename = "smart")]
    SmartSelection,
    Random,
    ActiveLearning,
}

/// An ordered training set plus how it was produced.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectionPlan {
    pub strategy: Strategy,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub measure: Option<Measure>,
    pub budget: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub per_round: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub selected: Vec<usize>,
}

impl SelectionPlan {
    /// Checks `|selected| = budget`, ids `< n` and no repeats.
    pub fn validate(&self, n: usize) -> Result<()> {
        if self.selected.len() != self.budget {
            return Err(Error::InvalidArgument(format!(
                "plan lists {} nodes for a budget of {}",
                self.selected.len(),
                self.budget
            )));
        }
        let mut seen = vec![false; n];
        for &u in &self.selected {
            if u >= n {
                return Err(Error::NodeOutOfRange { id: u, n });
            }
            if std::mem::replace(&mut seen[u], true) {
                return Err(Error::InvalidArgument(format!("node {u} selected twice")));
            }
        }
        Ok(())
    }

    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut m = vec![false; n];
        for &u in &self.selected {
            m[u] = true;
        }
        m
    }
}

fn check_budget(budget: usize, n: usize) -> Result<()> {
    if budget > n {
        return Err(Error::BudgetTooLarge {
            budget,
            available: n,
        });
    }
    Ok(())
}

/// The `budget` highest-scoring nodes in descending order, ties by id.
pub fn select_all_at_once<T: Scalar>(scores: &CentralityScores<T>, budget: usize) -> Result<SelectionPlan> {
    check_budget(budget, scores.len())?;
    Ok(SelectionPlan {
        strategy: Strategy::AllAtOnce,
        measure: Some(scores.measure),
        budget,
        per_round: None,
        seed: None,
        selected: scores.top_k(budget),
    })
}

/// Iterative selection: score the residual graph, take the top
/// `per_round`, delete them, and repeat until `budget` nodes are chosen.
/// The last round is truncated to whatever budget remains.
///
/// VoteRank already discounts the neighbourhood of every winner, so for it
/// the whole budget is elected in one VoteRank run on the full graph.
pub fn smart_select<T: Scalar>(
    g: &Graph,
    measure: Measure,
    budget: usize,
    per_round: usize,
    params: &CentralityParams,
) -> Result<SelectionPlan> {
    smart_select_among::<T>(g, measure, budget, per_round, params, None)
}

/// [`smart_select`] restricted to nodes with `eligible[u]`. Ineligible
/// nodes stay in the residual graph and keep shaping the scores; they are
/// just never picked.
pub fn smart_select_among<T: Scalar>(
    g: &Graph,
    measure: Measure,
    budget: usize,
    per_round: usize,
    params: &CentralityParams,
    eligible: Option<&[bool]>,
) -> Result<SelectionPlan> {
    let n = g.node_count();
    let can_pick = |u: usize| eligible.is_none_or(|e| e[u]);
    check_budget(budget, (0..n).filter(|&u| can_pick(u)).count())?;
    if per_round == 0 {
        return Err(Error::InvalidArgument("per_round must be at least 1".into()));
    }
    let selected = if measure == Measure::VoteRank {
        match eligible {
            None => voterank::<T>(g, budget)?.selected,
            // election order does not depend on r, so run to the end and filter
            Some(_) => {
                let mut order = voterank::<T>(g, n)?.selected;
                order.retain(|&u| can_pick(u));
                order.truncate(budget);
                order
            }
        }
    } else {
        let mut active = vec![true; n];
        let mut selected = Vec::with_capacity(budget);
        while selected.len() < budget {
            let take = per_round.min(budget - selected.len());
            let scores = measure.compute_on::<T>(g, Some(&active), params)?;
            let round = scores.top_k_where(take, |u| active[u] && can_pick(u));
            for &u in &round {
                active[u] = false;
            }
            selected.extend(round);
        }
        selected
    };
    Ok(SelectionPlan {
        strategy: Strategy::SmartSelection,
        measure: Some(measure),
        budget,
        per_round: Some(per_round),
        seed: None,
        selected,
    })
}

/// Uniform sample of `budget` distinct nodes.
pub fn random_select(n: usize, budget: usize, seed: u64) -> Result<SelectionPlan> {
    check_budget(budget, n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let selected = rand::seq::index::sample(&mut rng, n, budget).into_vec();
    Ok(SelectionPlan {
        strategy: Strategy::Random,
        measure: None,
        budget,
        per_round: None,
        seed: Some(seed),
        selected,
    })
}
