//! Stochastic-block-model graphs with block-dependent Gaussian features.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::DenseMatrix;
use crate::scalar::Scalar;

/// Parameters of a planted-partition graph.
///
/// Node ids are assigned block by block. Block `b` has feature mean
/// `signal` on every coordinate `j` with `j % blocks == b` and 0 elsewhere;
/// each feature gets i.i.d. `N(0, noise_std²)` noise on top.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SbmSpec {
    pub block_sizes: Vec<usize>,
    pub p_in: f64,
    pub p_out: f64,
    pub feature_dim: usize,
    #[serde(default = "default_signal")]
    pub signal: f64,
    #[serde(default = "default_noise")]
    pub noise_std: f64,
    pub seed: u64,
}

fn default_signal() -> f64 {
    1.0
}

fn default_noise() -> f64 {
    1.0
}

impl SbmSpec {
    pub fn new(block_sizes: Vec<usize>, p_in: f64, p_out: f64, feature_dim: usize, seed: u64) -> Self {
        Self {
            block_sizes,
            p_in,
            p_out,
            feature_dim,
            signal: default_signal(),
            noise_std: default_noise(),
            seed,
        }
    }

    pub fn generate<T: Scalar>(&self) -> Result<Dataset<T>> {
        if self.block_sizes.is_empty() {
            return Err(Error::InvalidArgument("SBM needs at least one block".into()));
        }
        for (name, p) in [("p_in", self.p_in), ("p_out", self.p_out)] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidArgument(format!("{name}={p} is not a probability")));
            }
        }
        if !(self.noise_std >= 0.0 && self.noise_std.is_finite() && self.signal.is_finite()) {
            return Err(Error::InvalidArgument("invalid feature noise or signal".into()));
        }

        let labels: Vec<usize> = self
            .block_sizes
            .iter()
            .enumerate()
            .flat_map(|(b, &s)| std::iter::repeat_n(b, s))
            .collect();
        let n = labels.len();
        let blocks = self.block_sizes.len();
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);

        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                let p = if labels[u] == labels[v] { self.p_in } else { self.p_out };
                // random_bool panics outside [0,1]; bounds were checked above
                if p > 0.0 && rng.random_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        let graph = Graph::from_edges(n, &edges)?;

        let noise = Normal::new(0.0, self.noise_std)
            .map_err(|e| Error::InvalidArgument(e.to_string()))?;
        let d = self.feature_dim;
        let mut data = Vec::with_capacity(n * d);
        for &b in &labels {
            for j in 0..d {
                let mean = if j % blocks == b { self.signal } else { 0.0 };
                data.push(T::of(mean + noise.sample(&mut rng)));
            }
        }
        Ok(Dataset {
            graph,
            labels,
            features: DenseMatrix::new(n, d, data)?,
            test_mask: None,
        })
    }
}

/// Generates an SBM dataset with unit signal and unit noise.
pub fn sbm_generate<T: Scalar>(
    block_sizes: &[usize],
    p_in: f64,
    p_out: f64,
    feature_dim: usize,
    seed: u64,
) -> Result<Dataset<T>> {
    SbmSpec::new(block_sizes.to_vec(), p_in, p_out, feature_dim, seed).generate()
}
