//! Dense float helpers backed by nalgebra.

use nalgebra::DMatrix;

use crate::matrix::Matrix;

fn to_na(m: &Matrix<f64>) -> DMatrix<f64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)])
}

/// Eigenvalues as (re, im) pairs.
pub fn eigenvalues(m: &Matrix<f64>) -> Vec<(f64, f64)> {
    if m.rows() == 0 {
        return Vec::new();
    }
    to_na(m).complex_eigenvalues().iter().map(|z| (z.re, z.im)).collect()
}

/// Right singular vectors with singular value ≤ cutoff.
pub fn nullspace(m: &Matrix<f64>, cutoff: f64) -> Vec<Vec<f64>> {
    let n = m.cols();
    if n == 0 {
        return Vec::new();
    }
    // pad to square so that the full right singular basis is returned
    let rows = m.rows().max(n);
    let a = DMatrix::from_fn(rows, n, |i, j| if i < m.rows() { m[(i, j)] } else { 0.0 });
    let svd = a.svd(false, true);
    let vt = svd.v_t.expect("requested V^T");
    svd.singular_values
        .iter()
        .enumerate()
        .filter(|(_, s)| **s <= cutoff)
        .map(|(k, _)| (0..n).map(|j| vt[(k, j)]).collect())
        .collect()
}

/// The `k` right singular vectors with the smallest singular values.
pub fn smallest_singular_vectors(m: &Matrix<f64>, k: usize) -> Vec<Vec<f64>> {
    let n = m.cols();
    let rows = m.rows().max(n);
    let a = DMatrix::from_fn(rows, n, |i, j| if i < m.rows() { m[(i, j)] } else { 0.0 });
    let svd = a.svd(false, true);
    let vt = svd.v_t.expect("requested V^T");
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| svd.singular_values[x].total_cmp(&svd.singular_values[y]));
    order.into_iter().take(k).map(|r| (0..n).map(|j| vt[(r, j)]).collect()).collect()
}

pub fn singular_values(m: &Matrix<f64>) -> Vec<f64> {
    if m.rows() == 0 || m.cols() == 0 {
        return Vec::new();
    }
    to_na(m).singular_values().iter().copied().collect()
}

/// Eigen-decomposition of a symmetric matrix: (values, column eigenvectors).
pub fn symmetric_eigen(m: &Matrix<f64>) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = m.rows();
    let e = to_na(m).symmetric_eigen();
    let vals = e.eigenvalues.iter().copied().collect();
    let vecs = (0..n).map(|k| (0..n).map(|i| e.eigenvectors[(i, k)]).collect()).collect();
    (vals, vecs)
}
