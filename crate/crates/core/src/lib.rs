//! Centrality-driven selection of training nodes for semi-supervised graph
//! node classification.
//!
//! The crate covers the whole experimental pipeline:
//!
//! * [`graph`], [`matrix`], [`operators`]: CSR graphs and the sparse
//!   propagation / Laplacian operators built from them
//! * [`centrality`]: degree, closeness, betweenness, PageRank and VoteRank
//! * [`selection`]: top-k, iterative remove-and-recompute ("smart") and
//!   random training-set selection
//! * [`gcn`]: a two-layer graph convolutional classifier with hand-written
//!   backpropagation, plus a Chebyshev spectral filter
//! * [`active_learning`]: the retrain / embed / kNN / centrality query loop
//! * [`bench`]: repeated trials, Welch t-test ranking and result files
//!
//! Numeric code is generic over [`Scalar`] (`f32` or `f64`); the aliases
//! below fix the element type for callers that do not care.

pub mod active_learning;
pub mod bench;
pub mod centrality;
pub mod dataset;
pub mod error;
pub mod gcn;
pub mod graph;
pub mod knn;
pub mod matrix;
pub mod operators;
pub mod sbm;
pub mod scalar;
pub mod selection;

pub use centrality::{CentralityParams, CentralityScores, Measure, VoteState};
pub use dataset::Dataset;
pub use error::{Error, Result};
pub use gcn::{GcnModel, Hyper, TrainReport};
pub use graph::Graph;
pub use matrix::{DenseMatrix, SparseMatrix};
pub use scalar::Scalar;
pub use selection::{SelectionPlan, Strategy};

pub type DenseMatrix64 = DenseMatrix<f64>;
pub type DenseMatrix32 = DenseMatrix<f32>;
pub type SparseMatrix64 = SparseMatrix<f64>;
pub type SparseMatrix32 = SparseMatrix<f32>;
pub type Scores64 = CentralityScores<f64>;
pub type Scores32 = CentralityScores<f32>;
pub type GcnModel64 = GcnModel<f64>;
pub type GcnModel32 = GcnModel<f32>;
pub type Dataset64 = Dataset<f64>;
pub type Dataset32 = Dataset<f32>;
