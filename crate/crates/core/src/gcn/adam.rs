use crate::matrix::DenseMatrix;
use crate::scalar::Scalar;

const BETA1: f64 = 0.9;
const BETA2: f64 = 0.999;
const EPS: f64 = 1e-8;

/// Adam with bias correction, one instance per parameter matrix.
#[derive(Debug, Clone)]
pub struct Adam<T> {
    lr: T,
    m: Vec<T>,
    v: Vec<T>,
    t: i32,
}

impl<T: Scalar> Adam<T> {
    pub fn new(lr: f64, like: &DenseMatrix<T>) -> Self {
        let len = like.as_slice().len();
        Self {
            lr: T::of(lr),
            m: vec![T::zero(); len],
            v: vec![T::zero(); len],
            t: 0,
        }
    }

    pub fn step(&mut self, param: &mut DenseMatrix<T>, grad: &DenseMatrix<T>) {
        let (b1, b2, eps) = (T::of(BETA1), T::of(BETA2), T::of(EPS));
        self.t += 1;
        let c1 = T::one() - b1.powi(self.t);
        let c2 = T::one() - b2.powi(self.t);
        let params = param.as_mut_slice();
        for (i, (&g, w)) in grad.as_slice().iter().zip(params.iter_mut()).enumerate() {
            self.m[i] = b1 * self.m[i] + (T::one() - b1) * g;
            self.v[i] = b2 * self.v[i] + (T::one() - b2) * g * g;
            let m_hat = self.m[i] / c1;
            let v_hat = self.v[i] / c2;
            *w -= self.lr * m_hat / (v_hat.sqrt() + eps);
        }
    }
}
