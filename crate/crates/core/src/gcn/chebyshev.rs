use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::SparseMatrix;
use crate::operators::normalized_laplacian;
use crate::scalar::Scalar;

const POWER_STEPS: usize = 100;
const POWER_TOL: f64 = 1e-10;

/// Largest eigenvalue of a symmetric PSD operator by power iteration with
/// Rayleigh-quotient estimates; falls back to 2 (the spectral bound of a
/// normalized Laplacian) when the iteration degenerates.
pub fn estimate_lambda_max<T: Scalar>(l: &SparseMatrix<T>) -> T {
    let n = l.rows();
    let fallback = T::of(2.0);
    if n == 0 {
        return fallback;
    }
    // deterministic start vector with no special symmetry
    let mut v: Vec<T> = (0..n).map(|i| T::one() + T::of(((i * 7919) % 104) as f64 / 104.0)).collect();
    normalize(&mut v);
    let mut lambda = T::zero();
    for _ in 0..POWER_STEPS {
        let w = l.matvec(&v).expect("square operator");
        let next: T = v.iter().zip(&w).map(|(&a, &b)| a * b).sum();
        v = w;
        let norm = normalize(&mut v);
        let done = (next - lambda).abs() < T::of(POWER_TOL);
        lambda = next;
        if norm == T::zero() || done {
            break;
        }
    }
    if lambda.is_finite() && lambda > T::zero() {
        lambda
    } else {
        fallback
    }
}

fn normalize<T: Scalar>(v: &mut [T]) -> T {
    let norm = v.iter().map(|&a| a * a).sum::<T>().sqrt();
    if norm > T::zero() {
        for a in v.iter_mut() {
            *a /= norm;
        }
    }
    norm
}

/// `Σ_k θ_k T_k(L̂) x` with `L̂ = (2/λ_max) L̃ − I`, `L̃` the normalized
/// Laplacian of `g` and `λ_max` estimated by power iteration.
pub fn chebyshev_filter<T: Scalar>(g: &Graph, x: &[T], thetas: &[T]) -> Result<Vec<T>> {
    let l = normalized_laplacian::<T>(g);
    let lambda_max = estimate_lambda_max(&l);
    filter(&l, x, thetas, lambda_max)
}

/// As [`chebyshev_filter`] but with a caller-supplied `λ_max`.
pub fn chebyshev_filter_with_lambda_max<T: Scalar>(
    g: &Graph,
    x: &[T],
    thetas: &[T],
    lambda_max: T,
) -> Result<Vec<T>> {
    filter(&normalized_laplacian::<T>(g), x, thetas, lambda_max)
}

fn filter<T: Scalar>(l: &SparseMatrix<T>, x: &[T], thetas: &[T], lambda_max: T) -> Result<Vec<T>> {
    if thetas.is_empty() {
        return Err(Error::InvalidArgument("need at least one Chebyshev coefficient".into()));
    }
    if x.len() != l.rows() {
        return Err(Error::DimensionMismatch(format!(
            "signal of length {} on a graph with {} nodes",
            x.len(),
            l.rows()
        )));
    }
    if lambda_max.is_nan() || lambda_max <= T::zero() {
        return Err(Error::InvalidArgument("lambda_max must be positive".into()));
    }
    let scale = T::of(2.0) / lambda_max;
    let rescaled = |v: &[T]| -> Vec<T> {
        let lv = l.matvec(v).expect("square operator");
        lv.iter().zip(v).map(|(&a, &b)| scale * a - b).collect()
    };

    let mut out: Vec<T> = x.iter().map(|&v| thetas[0] * v).collect();
    if thetas.len() == 1 {
        return Ok(out);
    }
    let mut prev = x.to_vec();
    let mut cur = rescaled(x);
    for (o, &c) in out.iter_mut().zip(&cur) {
        *o += thetas[1] * c;
    }
    for &theta in &thetas[2..] {
        let lc = rescaled(&cur);
        let next: Vec<T> = lc.iter().zip(&prev).map(|(&a, &b)| T::of(2.0) * a - b).collect();
        for (o, &c) in out.iter_mut().zip(&next) {
            *o += theta * c;
        }
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(out)
}
