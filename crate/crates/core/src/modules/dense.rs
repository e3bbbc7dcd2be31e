//! Singular value computations, delegated to faer.
//!
//! nalgebra's SVD loses several digits in the singular values of tall
//! rank-deficient inputs once left vectors are requested, which is exactly
//! the shape of `E_i* B` blocks, so every SVD here goes through faer.

use faer::Mat;
use nalgebra::{DMatrix, DVector};

fn to_faer(m: &DMatrix<f64>) -> Mat<f64> {
    Mat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

/// Singular values in non-increasing order.
pub(crate) fn singular_values(m: &DMatrix<f64>) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    to_faer(m).singular_values().expect("SVD converges")
}

/// Left singular vector of the largest singular value.
pub(crate) fn top_left_singular_vector(m: &DMatrix<f64>) -> DVector<f64> {
    let svd = to_faer(m).thin_svd().expect("SVD converges");
    let u = svd.U();
    DVector::from_fn(m.nrows(), |i, _| u[(i, 0)])
}

/// Right singular vectors whose singular value is at most
/// `threshold(largest singular value)`.
pub(crate) fn null_space(m: &DMatrix<f64>, threshold: impl Fn(f64) -> f64) -> Vec<DVector<f64>> {
    let k = m.ncols();
    // Pad to at least square so the thin SVD returns all of V.
    let rows = m.nrows().max(k);
    let padded = Mat::from_fn(rows, k, |i, j| if i < m.nrows() { m[(i, j)] } else { 0.0 });
    let svd = padded.thin_svd().expect("SVD converges");
    let s = svd.S().column_vector();
    let v = svd.V();
    let cut = threshold(if k == 0 { 0.0 } else { s[0] });
    (0..k)
        .filter(|&c| s[c] <= cut)
        .map(|c| DVector::from_fn(k, |i, _| v[(i, c)]))
        .collect()
}
