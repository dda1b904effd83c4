//! Dense symmetric positive-definite helpers for the handful of parameters
//! this crate ever deals with. Matrices are row-major `p × p` slices.

use crate::error::{Error, Result};

/// Lower-triangular L with LLᵀ = A.
pub(crate) fn cholesky(a: &[f64], p: usize) -> Result<Vec<f64>> {
    let mut l = vec![0.0; p * p];
    for i in 0..p {
        for j in 0..=i {
            let mut sum = a[i * p + j];
            for k in 0..j {
                sum -= l[i * p + k] * l[j * p + k];
            }
            if i == j {
                if !(sum > 0.0) || !sum.is_finite() {
                    return Err(Error::NotPositiveDefinite);
                }
                l[i * p + i] = sum.sqrt();
            } else {
                l[i * p + j] = sum / l[j * p + j];
            }
        }
    }
    Ok(l)
}

/// A⁻¹ for symmetric positive-definite A.
pub(crate) fn spd_inverse(a: &[f64], p: usize) -> Result<Vec<f64>> {
    let l = cholesky(a, p)?;
    let mut inv = vec![0.0; p * p];
    for col in 0..p {
        // Solve L y = e_col, then Lᵀ x = y.
        let mut y = vec![0.0; p];
        for i in 0..p {
            let mut sum = if i == col { 1.0 } else { 0.0 };
            for k in 0..i {
                sum -= l[i * p + k] * y[k];
            }
            y[i] = sum / l[i * p + i];
        }
        for i in (0..p).rev() {
            let mut sum = y[i];
            for k in i + 1..p {
                sum -= l[k * p + i] * inv[k * p + col];
            }
            inv[i * p + col] = sum / l[i * p + i];
        }
    }
    Ok(inv)
}
