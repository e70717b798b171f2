//! Centrality-driven active learning: train on the labeled set, embed every
//! node with the hidden layer, build a kNN graph on the embeddings, score it
//! with a centrality measure, and query the most central unlabeled nodes.

use serde::{Deserialize, Serialize};

use crate::centrality::{CentralityParams, Measure};
use crate::error::{Error, Result};
use crate::gcn::{GcnModel, Hyper};
use crate::graph::Graph;
use crate::knn::knn_graph;
use crate::matrix::DenseMatrix;
use crate::operators::normalized_adjacency;
use crate::scalar::Scalar;
use crate::selection::{random_select, SelectionPlan, Strategy};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct AlConfig {
    pub seed_count: usize,
    pub batch_size: usize,
    pub budget: usize,
    pub knn_k: usize,
    pub measure: Measure,
    pub centrality: CentralityParams,
    pub hyper: Hyper,
    /// Seed for the initial random labeled set.
    pub seed: u64,
}

impl Default for AlConfig {
    fn default() -> Self {
        Self {
            seed_count: 10,
            batch_size: 10,
            budget: 140,
            knn_k: 10,
            measure: Measure::Degree,
            centrality: CentralityParams::default(),
            hyper: Hyper::default(),
            seed: 0,
        }
    }
}

impl AlConfig {
    pub fn validate(&self) -> Result<()> {
        if self.seed_count == 0 {
            return Err(Error::InvalidArgument("seed_count must be at least 1".into()));
        }
        if self.seed_count > self.budget {
            return Err(Error::InvalidArgument(format!(
                "seed_count {} exceeds budget {}",
                self.seed_count, self.budget
            )));
        }
        if self.batch_size == 0 {
            return Err(Error::InvalidArgument("batch_size must be at least 1".into()));
        }
        Ok(())
    }

    /// Number of query rounds after the seed set; the last may be short.
    pub fn acquisition_rounds(&self) -> usize {
        (self.budget - self.seed_count).div_ceil(self.batch_size)
    }
}

/// Ground-truth label source that records every query.
#[derive(Debug, Clone)]
pub struct Oracle {
    labels: Vec<Option<usize>>,
    log: Vec<usize>,
}

impl Oracle {
    pub fn new(labels: &[usize]) -> Self {
        Self {
            labels: labels.iter().copied().map(Some).collect(),
            log: Vec::new(),
        }
    }

    /// An oracle that only knows some labels.
    pub fn partial(labels: Vec<Option<usize>>) -> Self {
        Self { labels, log: Vec::new() }
    }

    pub fn query(&mut self, v: usize) -> Result<usize> {
        let label = self
            .labels
            .get(v)
            .copied()
            .flatten()
            .ok_or(Error::MissingLabel(v))?;
        self.log.push(v);
        Ok(label)
    }

    pub fn query_log(&self) -> &[usize] {
        &self.log
    }

    pub fn query_count(&self) -> usize {
        self.log.len()
    }

    /// Label lookup for scoring held-out nodes; not logged as a query.
    pub fn ground_truth(&self, v: usize) -> Option<usize> {
        self.labels.get(v).copied().flatten()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlIteration {
    pub iteration: usize,
    pub labeled: usize,
    /// Accuracy of the model trained at this step, on the test mask if one
    /// was given, otherwise on the nodes still unlabeled.
    pub accuracy: Option<f64>,
    /// Nodes queried after this step's training (empty for the final step).
    pub queried: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct AlOutcome<T> {
    pub plan: SelectionPlan,
    pub model: GcnModel<T>,
    pub trace: Vec<AlIteration>,
    pub acquisitions: usize,
}

/// Hooks into the loop, mainly for tests and logging.
pub trait AlObserver<T> {
    /// Called right before centrality is computed, with the graph it is
    /// computed on and the embeddings that graph was built from.
    fn on_centrality(&mut self, _iteration: usize, _graph: &Graph, _embeddings: &DenseMatrix<T>) {}
}

impl<T> AlObserver<T> for () {}

/// Runs the loop to `cfg.budget` labels. See [`al_loop_observed`].
pub fn al_loop<T: Scalar>(
    graph: &Graph,
    features: &DenseMatrix<T>,
    oracle: &mut Oracle,
    cfg: &AlConfig,
    test_mask: Option<&[bool]>,
) -> Result<AlOutcome<T>> {
    al_loop_observed(graph, features, oracle, cfg, test_mask, &mut ())
}

/// 1. label `seed_count` random pool nodes;
/// 2. train a freshly initialized GCN on the labeled set;
/// 3. embed all nodes, build `knn_graph(knn_k)` on the embeddings;
/// 4. score that graph with `cfg.measure`;
/// 5. query the `batch_size` best unlabeled pool nodes (ties by id);
///
/// repeating 2–5 until `budget` labels, then training once more. Nodes in
/// `test_mask` are never queried.
pub fn al_loop_observed<T: Scalar>(
    graph: &Graph,
    features: &DenseMatrix<T>,
    oracle: &mut Oracle,
    cfg: &AlConfig,
    test_mask: Option<&[bool]>,
    observer: &mut dyn AlObserver<T>,
) -> Result<AlOutcome<T>> {
    cfg.validate()?;
    let n = graph.node_count();
    if features.rows() != n {
        return Err(Error::DimensionMismatch(format!(
            "{} feature rows for {n} nodes",
            features.rows()
        )));
    }
    if let Some(m) = test_mask {
        if m.len() != n {
            return Err(Error::DimensionMismatch(format!("test mask of length {} for {n} nodes", m.len())));
        }
    }
    let in_pool = |v: usize| test_mask.is_none_or(|m| !m[v]);
    let pool: Vec<usize> = (0..n).filter(|&v| in_pool(v)).collect();
    if cfg.budget > pool.len() {
        return Err(Error::BudgetTooLarge {
            budget: cfg.budget,
            available: pool.len(),
        });
    }
    let classes = (0..n).filter_map(|v| oracle.ground_truth(v)).max().map_or(0, |c| c + 1);
    let a_hat = normalized_adjacency::<T>(graph);

    let seed_plan = random_select(pool.len(), cfg.seed_count, cfg.seed)?;
    let mut selected: Vec<usize> = seed_plan.selected.iter().map(|&i| pool[i]).collect();
    let mut labels = vec![0usize; n];
    let mut labeled = vec![false; n];
    for &v in &selected {
        labels[v] = oracle.query(v)?;
        labeled[v] = true;
    }

    let mut trace = Vec::new();
    let mut acquisitions = 0;
    loop {
        let model = GcnModel::init(features.cols(), classes, cfg.hyper)?;
        let (model, _) = model.train(&a_hat, features, &labels, &selected)?;
        let accuracy = eval_accuracy(&model, &a_hat, features, oracle, |v| match test_mask {
            Some(m) => m[v],
            None => !labeled[v],
        })?;
        let iteration = trace.len();
        if selected.len() >= cfg.budget {
            trace.push(AlIteration {
                iteration,
                labeled: selected.len(),
                accuracy,
                queried: Vec::new(),
            });
            log::info!("active learning finished after {acquisitions} acquisitions");
            let plan = SelectionPlan {
                strategy: Strategy::ActiveLearning,
                measure: Some(cfg.measure),
                budget: cfg.budget,
                per_round: Some(cfg.batch_size),
                seed: Some(cfg.seed),
                selected,
            };
            return Ok(AlOutcome {
                plan,
                model,
                trace,
                acquisitions,
            });
        }

        let emb = model.embeddings(&a_hat, features)?;
        let knn = knn_graph(&emb, cfg.knn_k)?;
        observer.on_centrality(iteration, &knn.graph, &emb);
        let scores = cfg.measure.compute::<T>(&knn.graph, &cfg.centrality)?;
        let take = cfg.batch_size.min(cfg.budget - selected.len());
        let batch = scores.top_k_where(take, |v| in_pool(v) && !labeled[v]);
        for &v in &batch {
            labels[v] = oracle.query(v)?;
            labeled[v] = true;
        }
        log::debug!("iteration {iteration}: accuracy {accuracy:?}, queried {batch:?}");
        selected.extend_from_slice(&batch);
        acquisitions += 1;
        trace.push(AlIteration {
            iteration,
            labeled: selected.len() - batch.len(),
            accuracy,
            queried: batch,
        });
    }
}

fn eval_accuracy<T: Scalar>(
    model: &GcnModel<T>,
    a_hat: &crate::matrix::SparseMatrix<T>,
    features: &DenseMatrix<T>,
    oracle: &Oracle,
    include: impl Fn(usize) -> bool,
) -> Result<Option<f64>> {
    let pred = model.predict(a_hat, features)?;
    let (mut hits, mut total) = (0usize, 0usize);
    for (v, &p) in pred.iter().enumerate() {
        if include(v) {
            if let Some(truth) = oracle.ground_truth(v) {
                total += 1;
                hits += usize::from(truth == p);
            }
        }
    }
    Ok((total > 0).then(|| hits as f64 / total as f64))
}

/// Trains once on a saved plan, querying the oracle for the plan's labels.
pub fn replay<T: Scalar>(
    plan: &SelectionPlan,
    graph: &Graph,
    features: &DenseMatrix<T>,
    oracle: &mut Oracle,
    hyper: &Hyper,
) -> Result<GcnModel<T>> {
    let n = graph.node_count();
    plan.validate(n)?;
    let mut labels = vec![0usize; n];
    for &v in &plan.selected {
        labels[v] = oracle.query(v)?;
    }
    let classes = (0..n).filter_map(|v| oracle.ground_truth(v)).max().map_or(0, |c| c + 1);
    let a_hat = normalized_adjacency::<T>(graph);
    let model = GcnModel::init(features.cols(), classes, *hyper)?;
    Ok(model.train(&a_hat, features, &labels, &plan.selected)?.0)
}
