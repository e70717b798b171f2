//! Two-layer graph convolutional network
//! `Z = softmax(Â · ReLU(Â X Θ⁰) · Θ¹)` trained full-batch with Adam on a
//! masked negative log-likelihood.

mod adam;
mod chebyshev;
mod io;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{DenseMatrix, SparseMatrix};
use crate::scalar::Scalar;

pub use adam::Adam;
pub use chebyshev::{chebyshev_filter, chebyshev_filter_with_lambda_max, estimate_lambda_max};
pub use io::{read_model, write_model};

/// Probability floor inside the log of the NLL loss.
pub const PROB_FLOOR: f64 = 1e-15;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Hyper {
    pub hidden_dim: usize,
    pub learning_rate: f64,
    /// L2 penalty `weight_decay/2 · ‖Θ⁰‖²`, applied to the first layer only.
    pub weight_decay: f64,
    pub dropout_rate: f64,
    pub epochs: usize,
    pub seed: u64,
}

impl Default for Hyper {
    fn default() -> Self {
        Self {
            hidden_dim: 16,
            learning_rate: 0.01,
            weight_decay: 5e-4,
            dropout_rate: 0.5,
            epochs: 200,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GcnModel<T> {
    /// Input-to-hidden weights, `in_dim × hidden`.
    pub theta0: DenseMatrix<T>,
    /// Hidden-to-output weights, `hidden × classes`.
    pub theta1: DenseMatrix<T>,
    pub hyper: Hyper,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainReport {
    pub loss_history: Vec<f64>,
    pub train_accuracy: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub test_accuracy: Option<f64>,
    pub epochs_run: usize,
}

/// Glorot-uniform initialization with the default hyperparameters, except
/// for `hidden` and `seed`.
pub fn init_model<T: Scalar>(in_dim: usize, hidden: usize, classes: usize, seed: u64) -> Result<GcnModel<T>> {
    GcnModel::init(
        in_dim,
        classes,
        Hyper {
            hidden_dim: hidden,
            seed,
            ..Hyper::default()
        },
    )
}

fn glorot<T: Scalar>(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> DenseMatrix<T> {
    let bound = (6.0 / (rows + cols) as f64).sqrt();
    DenseMatrix::from_fn(rows, cols, |_, _| T::of(rng.random_range(-bound..=bound)))
}

/// Intermediate values of one forward pass, kept for backpropagation.
struct Pass<T> {
    /// Input after dropout.
    x: DenseMatrix<T>,
    /// `Â X Θ⁰`.
    pre: DenseMatrix<T>,
    /// `ReLU(pre)`.
    hidden: DenseMatrix<T>,
    /// Hidden activations after dropout, with the scaled keep mask.
    hidden_drop: DenseMatrix<T>,
    hidden_keep: Option<DenseMatrix<T>>,
    z: DenseMatrix<T>,
}

impl<T: Scalar> GcnModel<T> {
    pub fn init(in_dim: usize, classes: usize, hyper: Hyper) -> Result<Self> {
        if in_dim == 0 || classes == 0 || hyper.hidden_dim == 0 {
            return Err(Error::InvalidArgument("GCN dimensions must be at least 1".into()));
        }
        if !(0.0..1.0).contains(&hyper.dropout_rate) {
            return Err(Error::InvalidArgument(format!(
                "dropout rate {} outside [0, 1)",
                hyper.dropout_rate
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(hyper.seed);
        let theta0 = glorot(in_dim, hyper.hidden_dim, &mut rng);
        let theta1 = glorot(hyper.hidden_dim, classes, &mut rng);
        Ok(Self { theta0, theta1, hyper })
    }

    pub fn in_dim(&self) -> usize {
        self.theta0.rows()
    }

    pub fn hidden_dim(&self) -> usize {
        self.theta0.cols()
    }

    pub fn classes(&self) -> usize {
        self.theta1.cols()
    }

    fn check_inputs(&self, a_hat: &SparseMatrix<T>, x: &DenseMatrix<T>) -> Result<()> {
        if a_hat.rows() != a_hat.cols() || a_hat.rows() != x.rows() {
            return Err(Error::DimensionMismatch(format!(
                "propagation matrix {}x{} with {} feature rows",
                a_hat.rows(),
                a_hat.cols(),
                x.rows()
            )));
        }
        if x.cols() != self.in_dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} feature columns for a model with input dimension {}",
                x.cols(),
                self.in_dim()
            )));
        }
        if self.theta1.rows() != self.hidden_dim() {
            return Err(Error::DimensionMismatch("theta0/theta1 hidden sizes differ".into()));
        }
        Ok(())
    }

    fn pass(&self, a_hat: &SparseMatrix<T>, x: &DenseMatrix<T>, rng: Option<&mut ChaCha8Rng>) -> Result<Pass<T>> {
        self.check_inputs(a_hat, x)?;
        let p = T::of(self.hyper.dropout_rate);
        let (x_in, rng) = match rng {
            Some(rng) if p > T::zero() => (dropout(x, p, rng).0, Some(rng)),
            other => (x.clone(), other),
        };
        let pre = a_hat.spmm(&x_in.matmul(&self.theta0)?)?;
        let hidden = pre.map(|v| v.max(T::zero()));
        let (hidden_drop, hidden_keep) = match rng {
            Some(rng) if p > T::zero() => {
                let (d, keep) = dropout(&hidden, p, rng);
                (d, Some(keep))
            }
            _ => (hidden.clone(), None),
        };
        let logits = a_hat.spmm(&hidden_drop.matmul(&self.theta1)?)?;
        Ok(Pass {
            x: x_in,
            pre,
            hidden,
            hidden_drop,
            hidden_keep,
            z: softmax_rows(&logits),
        })
    }

    /// Returns `(Z, H)` with `H = ReLU(Â X Θ⁰)`. In train mode dropout is
    /// applied to `X` and `H` using a generator seeded from `hyper.seed`;
    /// the returned `H` is the pre-dropout activation.
    pub fn forward(
        &self,
        a_hat: &SparseMatrix<T>,
        x: &DenseMatrix<T>,
        train_mode: bool,
    ) -> Result<(DenseMatrix<T>, DenseMatrix<T>)> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.hyper.seed ^ DROPOUT_STREAM);
        let pass = self.pass(a_hat, x, train_mode.then_some(&mut rng))?;
        Ok((pass.z, pass.hidden))
    }

    /// Class probabilities at inference (no dropout).
    pub fn predict_proba(&self, a_hat: &SparseMatrix<T>, x: &DenseMatrix<T>) -> Result<DenseMatrix<T>> {
        Ok(self.pass(a_hat, x, None)?.z)
    }

    /// Arg-max class per node; ties go to the smaller class id.
    pub fn predict(&self, a_hat: &SparseMatrix<T>, x: &DenseMatrix<T>) -> Result<Vec<usize>> {
        let z = self.predict_proba(a_hat, x)?;
        Ok((0..z.rows()).map(|i| z.row_argmax(i)).collect())
    }

    /// Penultimate-layer representation `ReLU(Â X Θ⁰)`, dropout off.
    pub fn embeddings(&self, a_hat: &SparseMatrix<T>, x: &DenseMatrix<T>) -> Result<DenseMatrix<T>> {
        Ok(self.pass(a_hat, x, None)?.hidden)
    }

    /// Training objective (masked mean NLL plus the Θ⁰ L2 penalty) and its
    /// gradients `(∂/∂Θ⁰, ∂/∂Θ¹)`, by explicit backpropagation.
    pub fn loss_and_gradients(
        &self,
        a_hat: &SparseMatrix<T>,
        x: &DenseMatrix<T>,
        labels: &[usize],
        train_nodes: &[usize],
        rng: Option<&mut ChaCha8Rng>,
    ) -> Result<(T, DenseMatrix<T>, DenseMatrix<T>)> {
        let pass = self.pass(a_hat, x, rng)?;
        let data_loss = nll_loss(&pass.z, labels, train_nodes)?;
        let wd = T::of(self.hyper.weight_decay);
        let loss = data_loss + T::of(0.5) * wd * self.theta0.frobenius_sq();

        // ∂L/∂logits = (Z − Y)/m on training rows
        let m = T::of_usize(train_nodes.len());
        let mut d_logits = DenseMatrix::zeros(pass.z.rows(), pass.z.cols());
        for &v in train_nodes {
            let row = d_logits.row_mut(v);
            row.copy_from_slice(pass.z.row(v));
            row[labels[v]] -= T::one();
            for g in row.iter_mut() {
                *g /= m;
            }
        }
        let back1 = a_hat.t_spmm(&d_logits)?;
        let grad1 = pass.hidden_drop.t_matmul(&back1)?;
        let mut d_hidden = back1.matmul_t(&self.theta1)?;
        if let Some(keep) = &pass.hidden_keep {
            for (g, &k) in d_hidden.as_mut_slice().iter_mut().zip(keep.as_slice()) {
                *g *= k;
            }
        }
        for (g, &p) in d_hidden.as_mut_slice().iter_mut().zip(pass.pre.as_slice()) {
            if p <= T::zero() {
                *g = T::zero();
            }
        }
        let back0 = a_hat.t_spmm(&d_hidden)?;
        let mut grad0 = pass.x.t_matmul(&back0)?;
        for (g, &w) in grad0.as_mut_slice().iter_mut().zip(self.theta0.as_slice()) {
            *g += wd * w;
        }
        Ok((loss, grad0, grad1))
    }

    /// Full-batch Adam for `hyper.epochs` epochs; returns the trained copy.
    pub fn train(
        &self,
        a_hat: &SparseMatrix<T>,
        x: &DenseMatrix<T>,
        labels: &[usize],
        train_nodes: &[usize],
    ) -> Result<(GcnModel<T>, TrainReport)> {
        check_labels(labels, train_nodes, x.rows(), self.classes())?;
        let mut model = self.clone();
        let mut rng = ChaCha8Rng::seed_from_u64(self.hyper.seed ^ DROPOUT_STREAM);
        let mut opt0 = Adam::new(self.hyper.learning_rate, &model.theta0);
        let mut opt1 = Adam::new(self.hyper.learning_rate, &model.theta1);
        let mut loss_history = Vec::with_capacity(self.hyper.epochs);
        for epoch in 0..self.hyper.epochs {
            let (loss, g0, g1) = model.loss_and_gradients(a_hat, x, labels, train_nodes, Some(&mut rng))?;
            if !loss.is_finite() {
                return Err(Error::NonFiniteLoss {
                    epoch,
                    loss: loss.as_f64(),
                });
            }
            loss_history.push(loss.as_f64());
            opt0.step(&mut model.theta0, &g0);
            opt1.step(&mut model.theta1, &g1);
            if !(model.theta0.is_finite() && model.theta1.is_finite()) {
                return Err(Error::NonFiniteLoss {
                    epoch,
                    loss: f64::NAN,
                });
            }
        }
        let pred = model.predict(a_hat, x)?;
        let train_accuracy = accuracy_on(&pred, labels, train_nodes);
        log::debug!(
            "trained {} epochs on {} nodes, final loss {:?}, train accuracy {train_accuracy:.4}",
            self.hyper.epochs,
            train_nodes.len(),
            loss_history.last()
        );
        Ok((
            model,
            TrainReport {
                epochs_run: loss_history.len(),
                loss_history,
                train_accuracy,
                test_accuracy: None,
            },
        ))
    }
}

const DROPOUT_STREAM: u64 = 0x9e37_79b9_7f4a_7c15;

fn check_labels(labels: &[usize], nodes: &[usize], n: usize, classes: usize) -> Result<()> {
    if nodes.is_empty() {
        return Err(Error::EmptyMask("training set is empty"));
    }
    if labels.len() != n {
        return Err(Error::DimensionMismatch(format!("{} labels for {n} nodes", labels.len())));
    }
    for &v in nodes {
        if v >= n {
            return Err(Error::NodeOutOfRange { id: v, n });
        }
        if labels[v] >= classes {
            return Err(Error::InvalidArgument(format!(
                "label {} of node {v} exceeds class count {classes}",
                labels[v]
            )));
        }
    }
    Ok(())
}

/// Inverted dropout: zero each entry with probability `p`, scale survivors
/// by `1/(1 − p)`. Also returns the scaled keep mask.
fn dropout<T: Scalar>(m: &DenseMatrix<T>, p: T, rng: &mut ChaCha8Rng) -> (DenseMatrix<T>, DenseMatrix<T>) {
    let scale = T::one() / (T::one() - p);
    let p = p.as_f64();
    let keep = DenseMatrix::from_fn(m.rows(), m.cols(), |_, _| {
        if rng.random::<f64>() < p {
            T::zero()
        } else {
            scale
        }
    });
    let out = DenseMatrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)] * keep[(i, j)]);
    (out, keep)
}

pub fn softmax_rows<T: Scalar>(logits: &DenseMatrix<T>) -> DenseMatrix<T> {
    let mut z = logits.clone();
    for i in 0..z.rows() {
        let row = z.row_mut(i);
        let max = row.iter().copied().fold(T::neg_infinity(), T::max);
        let mut sum = T::zero();
        for v in row.iter_mut() {
            *v = (*v - max).exp();
            sum += *v;
        }
        for v in row.iter_mut() {
            *v /= sum;
        }
    }
    z
}

/// Mean of `−ln max(z[v, label(v)], 1e-15)` over `nodes`.
pub fn nll_loss<T: Scalar>(z: &DenseMatrix<T>, labels: &[usize], nodes: &[usize]) -> Result<T> {
    if nodes.is_empty() {
        return Err(Error::EmptyMask("loss mask is empty"));
    }
    let floor = T::of(PROB_FLOOR);
    let total: T = nodes.iter().map(|&v| -z[(v, labels[v])].max(floor).ln()).sum();
    Ok(total / T::of_usize(nodes.len()))
}

fn accuracy_on(pred: &[usize], labels: &[usize], nodes: &[usize]) -> f64 {
    let hits = nodes.iter().filter(|&&v| pred[v] == labels[v]).count();
    hits as f64 / nodes.len() as f64
}
