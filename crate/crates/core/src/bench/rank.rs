use serde::{Deserialize, Serialize};

use super::stats::welch_t_test;
use super::TrialResult;
use crate::error::{Error, Result};

pub const DEFAULT_SIGNIFICANCE: f64 = 0.05;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankRow {
    pub method: String,
    pub rank: usize,
    pub mean: f64,
    pub std: f64,
    /// Two-sided Welch p-value against the previous row (absent for the first).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p_vs_previous: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankTable {
    pub significance: f64,
    pub rows: Vec<RankRow>,
}

/// Sorts methods by mean accuracy (descending, input order on ties) and
/// walks adjacent pairs: a pair whose two-sided Welch p-value is at least
/// `significance` shares a rank, otherwise the rank increments.
pub fn ttest_rank(results: &[TrialResult], significance: f64) -> Result<RankTable> {
    if results.is_empty() {
        return Err(Error::InvalidArgument("nothing to rank".into()));
    }
    if let Some(r) = results.iter().find(|r| r.accuracies.len() < 2) {
        return Err(Error::InvalidArgument(format!("method {} has fewer than 2 runs", r.method)));
    }
    let mut order: Vec<&TrialResult> = results.iter().collect();
    order.sort_by(|a, b| b.mean.partial_cmp(&a.mean).unwrap_or(std::cmp::Ordering::Equal));

    let mut rows: Vec<RankRow> = Vec::with_capacity(order.len());
    for (i, r) in order.iter().enumerate() {
        let (rank, p) = if i == 0 {
            (1, None)
        } else {
            let prev = order[i - 1];
            let p = welch_t_test(&prev.accuracies, &r.accuracies)?.p_two_sided;
            let last = rows[i - 1].rank;
            (if p >= significance { last } else { last + 1 }, Some(p))
        };
        rows.push(RankRow {
            method: r.method.clone(),
            rank,
            mean: r.mean,
            std: r.std,
            p_vs_previous: p,
        });
    }
    Ok(RankTable { significance, rows })
}
