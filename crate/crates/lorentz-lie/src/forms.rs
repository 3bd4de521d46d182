//! Symmetric bilinear forms: inner products, signatures, adjoints.

use crate::error::{Error, Result};
use crate::matrix::{dot, Matrix};
use crate::scalar::{Backend, Field, Tolerance};

#[derive(Clone, Debug, PartialEq)]
pub struct BilinearForm<T> {
    g: Matrix<T>,
}

impl<T: Field> BilinearForm<T> {
    /// Checks symmetry exactly (exact backend) or within `tol.rel * |G|`.
    pub fn new(g: Matrix<T>, tol: &Tolerance) -> Result<Self> {
        if !g.is_square() {
            return Err(Error::DimensionMismatch(format!("metric is {}x{}", g.rows(), g.cols())));
        }
        let asym = g.sub(&g.transpose()).max_abs();
        if !asym.negligible(tol.bound(g.max_abs_f64())) {
            return Err(Error::BadParam(format!("metric is not symmetric (defect {})", asym)));
        }
        // symmetrize away float noise so later code can rely on G = G^T
        let half = T::ratio(1, 2);
        let sym = g.add(&g.transpose()).scale(&half);
        Ok(BilinearForm { g: sym })
    }

    pub fn identity(n: usize) -> Self {
        BilinearForm { g: Matrix::identity(n) }
    }

    pub fn diagonal(d: &[T]) -> Self {
        BilinearForm { g: Matrix::diagonal(d) }
    }

    pub fn dim(&self) -> usize {
        self.g.rows()
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.g
    }

    pub fn ip(&self, u: &[T], v: &[T]) -> T {
        dot(u, &self.g.mul_vec(v))
    }

    /// Lower a vector: coordinates of ⟨u, ·⟩.
    pub fn lower(&self, u: &[T]) -> Vec<T> {
        self.g.mul_vec(u)
    }

    pub fn inverse(&self) -> Result<Matrix<T>> {
        self.g.inverse().ok_or(Error::DegenerateMetric)
    }

    /// `true` when G is invertible (exact) or its smallest pivot is above
    /// `tol.rel * |G|` (float).
    pub fn is_nondegenerate(&self, tol: &Tolerance) -> bool {
        let (p, q) = self.signature(tol);
        p + q == self.dim()
    }

    /// (#positive, #negative) by symmetric congruence diagonalization.
    pub fn signature(&self, tol: &Tolerance) -> (usize, usize) {
        signature_of_matrix(&self.g, tol)
    }

    pub fn is_lorentzian(&self, tol: &Tolerance) -> bool {
        let n = self.dim();
        self.signature(tol) == (n - 1, 1) && n >= 2
    }

    pub fn is_positive_definite(&self, tol: &Tolerance) -> bool {
        self.signature(tol) == (self.dim(), 0)
    }

    /// M* = G⁻¹ Mᵀ G, so that ⟨M* u, v⟩ = ⟨u, M v⟩.
    pub fn adjoint(&self, m: &Matrix<T>) -> Result<Matrix<T>> {
        let ginv = self.inverse()?;
        Ok(ginv.mul(&m.transpose()).mul(&self.g))
    }

    /// max |G M − Mᵀ G|, zero exactly for self-adjoint M.
    pub fn self_adjoint_defect(&self, m: &Matrix<T>) -> T {
        let gm = self.g.mul(m);
        gm.sub(&gm.transpose()).max_abs()
    }

    /// Gram matrix of the given vectors.
    pub fn gram(&self, vs: &[Vec<T>]) -> Matrix<T> {
        Matrix::from_fn(vs.len(), vs.len(), |i, j| self.ip(&vs[i], &vs[j]))
    }

    pub fn direct_sum(&self, other: &BilinearForm<T>) -> BilinearForm<T> {
        let (n, m) = (self.dim(), other.dim());
        BilinearForm {
            g: Matrix::from_fn(n + m, n + m, |i, j| {
                if i < n && j < n {
                    self.g[(i, j)].clone()
                } else if i >= n && j >= n {
                    other.g[(i - n, j - n)].clone()
                } else {
                    T::zero()
                }
            }),
        }
    }

    pub fn to_f64(&self) -> BilinearForm<f64> {
        BilinearForm { g: self.g.to_f64() }
    }
}

/// Sylvester signature of a symmetric matrix.
pub fn signature_of_matrix<T: Field>(g: &Matrix<T>, tol: &Tolerance) -> (usize, usize) {
    let n = g.rows();
    let mut s = g.clone();
    let bound = match T::BACKEND {
        Backend::Exact => 0.0,
        Backend::Float => tol.rel * g.max_abs_f64(),
    };
    let small = |x: &T| x.negligible(bound);
    let (mut p, mut q) = (0, 0);
    for k in 0..n {
        let mut piv = pick_diagonal(&s, k, bound);
        if piv.is_none() {
            // all remaining diagonal entries vanish: use an off-diagonal entry
            let mut found = None;
            'outer: for i in k..n {
                for j in i + 1..n {
                    if !small(&s[(i, j)]) {
                        found = Some((i, j));
                        break 'outer;
                    }
                }
            }
            let Some((i, j)) = found else { break };
            // row_i += row_j, col_i += col_j, making s_ii = 2 s_ij
            for c in 0..n {
                let v = s[(j, c)].clone();
                s[(i, c)] = s[(i, c)].clone() + v;
            }
            for r in 0..n {
                let v = s[(r, j)].clone();
                s[(r, i)] = s[(r, i)].clone() + v;
            }
            piv = Some(i);
        }
        let pi = piv.expect("pivot");
        if pi != k {
            for c in 0..n {
                let t = s[(pi, c)].clone();
                s[(pi, c)] = s[(k, c)].clone();
                s[(k, c)] = t;
            }
            for r in 0..n {
                let t = s[(r, pi)].clone();
                s[(r, pi)] = s[(r, k)].clone();
                s[(r, k)] = t;
            }
        }
        let d = s[(k, k)].clone();
        for r in k + 1..n {
            if s[(r, k)].is_zero() {
                continue;
            }
            let f = s[(r, k)].clone() / d.clone();
            for c in k..n {
                let v = s[(k, c)].clone() * f.clone();
                s[(r, c)] = s[(r, c)].clone() - v;
            }
            for rr in k..n {
                let v = s[(rr, k)].clone() * f.clone();
                s[(rr, r)] = s[(rr, r)].clone() - v;
            }
        }
        if d.is_positive() {
            p += 1;
        } else {
            q += 1;
        }
    }
    (p, q)
}

fn pick_diagonal<T: Field>(s: &Matrix<T>, k: usize, bound: f64) -> Option<usize> {
    let n = s.rows();
    match T::BACKEND {
        Backend::Exact => (k..n).find(|&i| !s[(i, i)].is_zero()),
        Backend::Float => {
            let best = (k..n).max_by(|&a, &b| {
                s[(a, a)].to_f64().abs().total_cmp(&s[(b, b)].to_f64().abs())
            })?;
            (s[(best, best)].to_f64().abs() > bound).then_some(best)
        }
    }
}
