//! Portable model file: little-endian, fixed header followed by float64
//! weights.
//!
//! ```text
//! offset  size  field
//! 0       4     magic "GCNW"
//! 4       4     format version (u32) = 1
//! 8       8     in_dim  (u64)
//! 16      8     hidden  (u64)
//! 24      8     classes (u64)
//! 32      ...   theta0, row-major, in_dim*hidden f64
//! ...     ...   theta1, row-major, hidden*classes f64
//! ```

use std::io::{Read, Write};

use super::{GcnModel, Hyper};
use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::scalar::Scalar;

const MAGIC: &[u8; 4] = b"GCNW";
const VERSION: u32 = 1;

pub fn write_model<T: Scalar, W: Write>(mut w: W, model: &GcnModel<T>) -> Result<()> {
    w.write_all(MAGIC)?;
    w.write_all(&VERSION.to_le_bytes())?;
    for d in [model.in_dim(), model.hidden_dim(), model.classes()] {
        w.write_all(&(d as u64).to_le_bytes())?;
    }
    for v in model.theta0.as_slice().iter().chain(model.theta1.as_slice()) {
        w.write_all(&v.as_f64().to_le_bytes())?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a model; hyperparameters other than `hidden_dim` are defaults.
pub fn read_model<T: Scalar, R: Read>(mut r: R) -> Result<GcnModel<T>> {
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(Error::ModelFormat("bad magic".into()));
    }
    let mut b4 = [0u8; 4];
    r.read_exact(&mut b4)?;
    let version = u32::from_le_bytes(b4);
    if version != VERSION {
        return Err(Error::ModelFormat(format!("unsupported version {version}")));
    }
    let mut dims = [0usize; 3];
    for d in &mut dims {
        let mut b8 = [0u8; 8];
        r.read_exact(&mut b8)?;
        *d = usize::try_from(u64::from_le_bytes(b8))
            .map_err(|_| Error::ModelFormat("dimension overflows usize".into()))?;
    }
    let [in_dim, hidden, classes] = dims;
    let mut read_matrix = |rows: usize, cols: usize| -> Result<DenseMatrix<T>> {
        let len = rows
            .checked_mul(cols)
            .ok_or_else(|| Error::ModelFormat("dimensions overflow".into()))?;
        let mut data = Vec::with_capacity(len.min(1 << 24));
        let mut b8 = [0u8; 8];
        for _ in 0..len {
            r.read_exact(&mut b8)
                .map_err(|e| Error::ModelFormat(format!("truncated weights: {e}")))?;
            data.push(T::of(f64::from_le_bytes(b8)));
        }
        DenseMatrix::new(rows, cols, data).map_err(|e| Error::ModelFormat(e.to_string()))
    };
    let theta0 = read_matrix(in_dim, hidden)?;
    let theta1 = read_matrix(hidden, classes)?;
    Ok(GcnModel {
        theta0,
        theta1,
        hyper: Hyper {
            hidden_dim: hidden,
            ..Hyper::default()
        },
    })
}
