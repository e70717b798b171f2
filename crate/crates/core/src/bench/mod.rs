//! Repeated-trial evaluation of selection methods and statistical ranking.

mod rank;
pub mod stats;
mod suite;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::active_learning::{al_loop, AlConfig, Oracle};
use crate::centrality::{CentralityParams, Measure};
use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::gcn::{GcnModel, Hyper};
use crate::matrix::{DenseMatrix, SparseMatrix};
use crate::operators::normalized_adjacency;
use crate::scalar::Scalar;
use crate::selection::{random_select, smart_select_among, SelectionPlan, Strategy, DEFAULT_PER_ROUND};

pub use rank::{ttest_rank, RankRow, RankTable, DEFAULT_SIGNIFICANCE};
pub use stats::{welch_t_test, WelchTest};
pub use suite::{benchmark, BenchmarkOutput, DatasetSource, Suite};

/// A training-set selection method under evaluation.
///
/// Written as `random`, `all:<measure>`, `smart:<measure>` or
/// `al:<measure>` in suite files and on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum MethodSpec {
    Random,
    AllAtOnce(Measure),
    Smart(Measure),
    ActiveLearning(Measure),
}

impl MethodSpec {
    /// Smart selection with every measure, all-at-once degree, active
    /// learning with every measure, and the random baseline.
    pub fn full_grid() -> Vec<MethodSpec> {
        let mut grid: Vec<_> = Measure::ALL.iter().map(|&m| MethodSpec::Smart(m)).collect();
        grid.push(MethodSpec::AllAtOnce(Measure::Degree));
        grid.extend(Measure::ALL.iter().map(|&m| MethodSpec::ActiveLearning(m)));
        grid.push(MethodSpec::Random);
        grid
    }

    /// Name usable as a file stem.
    pub fn file_stem(&self) -> String {
        self.to_string().replace(':', "-")
    }

    fn is_seeded_selection(&self) -> bool {
        matches!(self, MethodSpec::Random | MethodSpec::ActiveLearning(_))
    }
}

impl fmt::Display for MethodSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MethodSpec::Random => f.write_str("random"),
            MethodSpec::AllAtOnce(m) => write!(f, "all:{m}"),
            MethodSpec::Smart(m) => write!(f, "smart:{m}"),
            MethodSpec::ActiveLearning(m) => write!(f, "al:{m}"),
        }
    }
}

impl FromStr for MethodSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("random") {
            return Ok(MethodSpec::Random);
        }
        let (kind, measure) = s
            .split_once([':', '-'])
            .ok_or_else(|| Error::InvalidArgument(format!("unknown method {s:?}")))?;
        let measure: Measure = measure.parse()?;
        match kind.to_ascii_lowercase().as_str() {
            "all" => Ok(MethodSpec::AllAtOnce(measure)),
            "smart" => Ok(MethodSpec::Smart(measure)),
            "al" => Ok(MethodSpec::ActiveLearning(measure)),
            _ => Err(Error::InvalidArgument(format!("unknown method kind {kind:?}"))),
        }
    }
}

impl TryFrom<String> for MethodSpec {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<MethodSpec> for String {
    fn from(m: MethodSpec) -> String {
        m.to_string()
    }
}

/// Everything about a trial other than the method and the seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Protocol {
    pub budget: usize,
    pub per_round: usize,
    pub hyper: Hyper,
    pub centrality: CentralityParams,
    pub al_seed_count: usize,
    pub al_batch_size: usize,
    pub al_knn_k: usize,
}

impl Default for Protocol {
    fn default() -> Self {
        let al = AlConfig::default();
        Self {
            budget: al.budget,
            per_round: DEFAULT_PER_ROUND,
            hyper: Hyper::default(),
            centrality: CentralityParams::default(),
            al_seed_count: al.seed_count,
            al_batch_size: al.batch_size,
            al_knn_k: al.knn_k,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialResult {
    pub method: String,
    pub seeds: Vec<u64>,
    /// Test accuracy per seed, as fractions.
    pub accuracies: Vec<f64>,
    pub mean: f64,
    /// Sample standard deviation (divisor `n − 1`).
    pub std: f64,
    #[serde(default)]
    pub metadata: TrialMetadata,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct TrialMetadata {
    pub dataset: String,
    pub config_hash: String,
    pub budget: usize,
    pub pagerank_alpha: f64,
}

impl TrialResult {
    pub fn new(method: String, seeds: Vec<u64>, accuracies: Vec<f64>) -> Self {
        let mean = stats::mean(&accuracies);
        let std = if accuracies.len() > 1 {
            stats::sample_variance(&accuracies).sqrt()
        } else {
            0.0
        };
        Self {
            method,
            seeds,
            accuracies,
            mean,
            std,
            metadata: TrialMetadata::default(),
        }
    }
}

/// Arg-max accuracy over `test_mask`, refusing masks that overlap the
/// training nodes.
pub fn evaluate<T: Scalar>(
    model: &GcnModel<T>,
    a_hat: &SparseMatrix<T>,
    features: &DenseMatrix<T>,
    labels: &[usize],
    test_mask: &[bool],
    train_nodes: &[usize],
) -> Result<f64> {
    if test_mask.len() != labels.len() {
        return Err(Error::DimensionMismatch(format!(
            "test mask of length {} for {} labels",
            test_mask.len(),
            labels.len()
        )));
    }
    if let Some(&v) = train_nodes.iter().find(|&&v| test_mask.get(v).copied().unwrap_or(false)) {
        return Err(Error::TestTrainOverlap(v));
    }
    let pred = model.predict(a_hat, features)?;
    let (mut hits, mut total) = (0usize, 0usize);
    for v in (0..labels.len()).filter(|&v| test_mask[v]) {
        total += 1;
        hits += usize::from(pred[v] == labels[v]);
    }
    if total == 0 {
        return Err(Error::EmptyMask("test mask is empty"));
    }
    Ok(hits as f64 / total as f64)
}

/// Shared, seed-independent state for running one method many times.
struct Runner<'a, T> {
    method: MethodSpec,
    dataset: &'a Dataset<T>,
    protocol: &'a Protocol,
    a_hat: SparseMatrix<T>,
    classes: usize,
    /// Plan for seed-free methods, computed once.
    fixed_plan: Option<SelectionPlan>,
}

impl<'a, T: Scalar> Runner<'a, T> {
    fn new(method: MethodSpec, dataset: &'a Dataset<T>, protocol: &'a Protocol) -> Result<Self> {
        let pool = dataset.test_mask.as_ref().map(|m| m.iter().map(|&t| !t).collect::<Vec<_>>());
        let fixed_plan = match method {
            MethodSpec::AllAtOnce(m) => {
                let scores = m.compute::<T>(&dataset.graph, &protocol.centrality)?;
                let selected = scores.top_k_where(protocol.budget, |v| pool.as_ref().is_none_or(|p| p[v]));
                if selected.len() < protocol.budget {
                    return Err(Error::BudgetTooLarge {
                        budget: protocol.budget,
                        available: selected.len(),
                    });
                }
                Some(SelectionPlan {
                    strategy: Strategy::AllAtOnce,
                    measure: Some(m),
                    budget: protocol.budget,
                    per_round: None,
                    seed: None,
                    selected,
                })
            }
            MethodSpec::Smart(m) => Some(smart_select_among::<T>(
                &dataset.graph,
                m,
                protocol.budget,
                protocol.per_round,
                &protocol.centrality,
                pool.as_deref(),
            )?),
            _ => None,
        };
        Ok(Self {
            method,
            dataset,
            protocol,
            a_hat: normalized_adjacency(&dataset.graph),
            classes: dataset.class_count(),
            fixed_plan,
        })
    }

    fn run(&self, seed: u64) -> Result<f64> {
        let ds = self.dataset;
        let n = ds.node_count();
        let hyper = Hyper { seed, ..self.protocol.hyper };
        let (plan, model) = match self.method {
            MethodSpec::ActiveLearning(measure) => {
                let cfg = AlConfig {
                    seed_count: self.protocol.al_seed_count,
                    batch_size: self.protocol.al_batch_size,
                    budget: self.protocol.budget,
                    knn_k: self.protocol.al_knn_k,
                    measure,
                    centrality: self.protocol.centrality,
                    hyper,
                    seed,
                };
                let mut oracle = Oracle::new(&ds.labels);
                let out = al_loop(&ds.graph, &ds.features, &mut oracle, &cfg, ds.test_mask.as_deref())?;
                (out.plan, out.model)
            }
            _ => {
                let plan = match &self.fixed_plan {
                    Some(p) => p.clone(),
                    None => self.random_plan(seed)?,
                };
                let model = GcnModel::init(ds.features.cols(), self.classes, hyper)?;
                let (model, _) = model.train(&self.a_hat, &ds.features, &ds.labels, &plan.selected)?;
                (plan, model)
            }
        };
        let test_mask = match &ds.test_mask {
            Some(m) => m.clone(),
            None => plan.mask(n).iter().map(|&s| !s).collect(),
        };
        evaluate(&model, &self.a_hat, &ds.features, &ds.labels, &test_mask, &plan.selected)
    }

    fn random_plan(&self, seed: u64) -> Result<SelectionPlan> {
        let n = self.dataset.node_count();
        match &self.dataset.test_mask {
            None => random_select(n, self.protocol.budget, seed),
            Some(mask) => {
                let pool: Vec<usize> = (0..n).filter(|&v| !mask[v]).collect();
                let mut plan = random_select(pool.len(), self.protocol.budget, seed)?;
                for v in &mut plan.selected {
                    *v = pool[*v];
                }
                Ok(plan)
            }
        }
    }
}

/// Runs `method` once per seed in `base_seed..base_seed + n_runs`.
pub fn run_trials<T: Scalar>(
    method: MethodSpec,
    dataset: &Dataset<T>,
    protocol: &Protocol,
    n_runs: usize,
    base_seed: u64,
) -> Result<TrialResult> {
    if n_runs < 2 {
        return Err(Error::InvalidArgument("need at least 2 runs per method".into()));
    }
    let seeds: Vec<u64> = (0..n_runs as u64).map(|i| base_seed + i).collect();
    run_trials_with_seeds(method, dataset, protocol, &seeds)
}

/// Runs `method` once per listed seed. Runs execute in parallel; results
/// keep the order of `seeds`.
///
/// The seed drives the random selection, the active-learning seed set, GCN
/// initialization and dropout. Seed-free selections are computed once.
pub fn run_trials_with_seeds<T: Scalar>(
    method: MethodSpec,
    dataset: &Dataset<T>,
    protocol: &Protocol,
    seeds: &[u64],
) -> Result<TrialResult> {
    if seeds.is_empty() {
        return Err(Error::InvalidArgument("no seeds".into()));
    }
    let runner = Runner::new(method, dataset, protocol)?;
    log::info!(
        "running {method} for {} seeds{}",
        seeds.len(),
        if method.is_seeded_selection() { "" } else { " (fixed selection)" }
    );
    let accuracies = seeds
        .par_iter()
        .map(|&s| runner.run(s))
        .collect::<Result<Vec<_>>>()?;
    let mut result = TrialResult::new(method.to_string(), seeds.to_vec(), accuracies);
    result.metadata.budget = protocol.budget;
    result.metadata.pagerank_alpha = protocol.centrality.alpha;
    Ok(result)
}
