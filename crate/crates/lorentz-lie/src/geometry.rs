//! Levi-Civita product, curvature and Ricci data of left-invariant metrics.

use crate::error::{Error, Result};
use crate::liealg::PseudoEuclideanLieAlgebra;
use crate::matrix::{add_vec, basis_vector, max_abs_vec, sub_vec, Matrix};
use crate::scalar::{Field, Tolerance};

/// `ops[i]` is the matrix of L_{b_i}; its column j is L_{b_i} b_j.
#[derive(Clone, Debug, PartialEq)]
pub struct LeviCivita<T> {
    ops: Vec<Matrix<T>>,
}

impl<T: Field> LeviCivita<T> {
    pub fn op(&self, i: usize) -> &Matrix<T> {
        &self.ops[i]
    }

    pub fn ops(&self) -> &[Matrix<T>] {
        &self.ops
    }

    pub fn dim(&self) -> usize {
        self.ops.len()
    }

    /// L_u = Σ u_i L_{b_i}.
    pub fn along(&self, u: &[T]) -> Matrix<T> {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for (i, ui) in u.iter().enumerate() {
            if !ui.is_zero() {
                m = m.add(&self.ops[i].scale(ui));
            }
        }
        m
    }

    /// L_u v.
    pub fn product(&self, u: &[T], v: &[T]) -> Vec<T> {
        self.along(u).mul_vec(v)
    }

    pub fn max_abs(&self) -> T {
        self.ops.iter().map(|m| m.max_abs()).fold(T::zero(), |a, b| if b > a { b } else { a })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RicciData<T> {
    /// Gram matrix of the Ricci curvature, ric(b_i, b_j).
    pub ric: Matrix<T>,
    /// Ricci operator with ⟨Ric u, v⟩ = ric(u, v).
    pub operator: Matrix<T>,
    pub scalar_curvature: T,
}

impl<T: Field> RicciData<T> {
    fn from_ric(g: &PseudoEuclideanLieAlgebra<T>, ric: Matrix<T>) -> Result<Self> {
        let ginv = g.metric().inverse()?;
        let operator = ginv.mul(&ric);
        let scalar_curvature = operator.trace();
        Ok(RicciData {
            ric,
            operator,
            scalar_curvature,
        })
    }
}

/// Solve Koszul's formula
/// 2⟨L_u v, w⟩ = ⟨[u,v],w⟩ + ⟨[w,u],v⟩ + ⟨[w,v],u⟩ on basis vectors.
pub fn levi_civita<T: Field>(g: &PseudoEuclideanLieAlgebra<T>) -> Result<LeviCivita<T>> {
    let n = g.dim();
    let ginv = g.metric().inverse()?;
    let gm = g.metric().matrix();
    let alg = g.algebra();
    // lowered[a][b][c] = ⟨[b_a, b_b], b_c⟩
    let lowered = |a: usize, b: usize, c: usize| -> T {
        let s = alg.structure(a, b);
        (0..n).fold(T::zero(), |acc, k| {
            if s[k].is_zero() {
                acc
            } else {
                acc + s[k].clone() * gm[(k, c)].clone()
            }
        })
    };
    let half = T::ratio(1, 2);
    let mut ops = Vec::with_capacity(n);
    for i in 0..n {
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let rhs: Vec<T> = (0..n)
                .map(|w| (lowered(i, j, w) + lowered(w, i, j) + lowered(w, j, i)) * half.clone())
                .collect();
            cols.push(ginv.mul_vec(&rhs));
        }
        ops.push(Matrix::from_columns(&cols)?);
    }
    Ok(LeviCivita { ops })
}

/// K(u,v) = L_{[u,v]} − [L_u, L_v].
pub fn curvature<T: Field>(
    g: &PseudoEuclideanLieAlgebra<T>,
    lc: &LeviCivita<T>,
    u: &[T],
    v: &[T],
) -> Result<Matrix<T>> {
    if u.len() != g.dim() || v.len() != g.dim() || lc.dim() != g.dim() {
        return Err(Error::DimensionMismatch("curvature arguments".into()));
    }
    let (lu, lv) = (lc.along(u), lc.along(v));
    Ok(lc.along(&g.bracket(u, v)).sub(&lu.commutator(&lv)))
}

/// ric(u,v) = tr(w ↦ K(u,w)v), and Ric = G⁻¹ ric.
pub fn ricci_operator<T: Field>(g: &PseudoEuclideanLieAlgebra<T>, lc: &LeviCivita<T>) -> Result<RicciData<T>> {
    let n = g.dim();
    let e = |i| basis_vector::<T>(n, i);
    let ks: Vec<Vec<Matrix<T>>> = (0..n)
        .map(|i| (0..n).map(|k| curvature(g, lc, &e(i), &e(k))).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let ric = Matrix::from_fn(n, n, |i, j| (0..n).fold(T::zero(), |s, k| s + ks[i][k][(k, j)].clone()));
    RicciData::from_ric(g, ric)
}

/// Levi-Civita product and Ricci data in one pass.
pub fn ricci<T: Field>(g: &PseudoEuclideanLieAlgebra<T>) -> Result<(LeviCivita<T>, RicciData<T>)> {
    let lc = levi_civita(g)?;
    let r = ricci_operator(g, &lc)?;
    Ok((lc, r))
}

/// Ricci curvature from brackets alone:
/// ric(u,v) = −½tr(ad_u ad_v) − ½tr(ad_u* ad_v) − ¼tr(J_u J_v) − ½(⟨[H,u],v⟩ + ⟨[H,v],u⟩),
/// with J_u v = ad_v* u and ⟨H,u⟩ = tr ad_u.
pub fn ricci_structural<T: Field>(g: &PseudoEuclideanLieAlgebra<T>, tol: &Tolerance) -> Result<RicciData<T>> {
    let alg = g.algebra();
    if !alg.is_lie_algebra(tol) {
        return Err(Error::NotLieAlgebra(alg.jacobi_defect().to_f64()));
    }
    let n = g.dim();
    let metric = g.metric();
    let ad: Vec<Matrix<T>> = (0..n).map(|i| alg.ad_basis(i)).collect();
    let ad_star: Vec<Matrix<T>> = ad.iter().map(|m| metric.adjoint(m)).collect::<Result<_>>()?;
    // J_{b_i}: column j is ad_{b_j}^* b_i
    let j_ops: Vec<Matrix<T>> = (0..n)
        .map(|i| Matrix::from_fn(n, n, |r, c| ad_star[c][(r, i)].clone()))
        .collect();
    let h = g.trace_vector()?;
    let ad_h = alg.ad_matrix(&h)?;
    let gm = metric.matrix();
    // ⟨[H,b_i],b_j⟩ = (Gᵀ ad_H)_{ji}
    let h_term = gm.mul(&ad_h);
    let (half, quarter) = (T::ratio(1, 2), T::ratio(1, 4));
    let ric = Matrix::from_fn(n, n, |i, j| {
        let t1 = ad[i].mul(&ad[j]).trace();
        let t2 = ad_star[i].mul(&ad[j]).trace();
        let t3 = j_ops[i].mul(&j_ops[j]).trace();
        let t4 = h_term[(j, i)].clone() + h_term[(i, j)].clone();
        -(half.clone() * t1) - half.clone() * t2 - quarter.clone() * t3 - half.clone() * t4
    });
    RicciData::from_ric(g, ric)
}

/// (∇_u Ric) = L_u ∘ Ric − Ric ∘ L_u.
pub fn nabla_ric<T: Field>(lc: &LeviCivita<T>, ric_op: &Matrix<T>, u: &[T]) -> Matrix<T> {
    lc.along(u).commutator(ric_op)
}

/// The bracket expansion
/// ⟨[u,Ric v],w⟩ + ⟨[w,Ric v],u⟩ + ⟨[w,u],Ric v⟩ − ⟨[u,v],Ric w⟩ − ⟨[Ric w,v],u⟩ − ⟨[Ric w,u],v⟩,
/// which equals 2⟨(∇_u Ric) v, w⟩ by Koszul's formula.
pub fn ricci_derivative_expansion<T: Field>(
    g: &PseudoEuclideanLieAlgebra<T>,
    ric_op: &Matrix<T>,
    u: &[T],
    v: &[T],
    w: &[T],
) -> T {
    let rv = ric_op.mul_vec(v);
    let rw = ric_op.mul_vec(w);
    g.bracket_ip(u, &rv, w) + g.bracket_ip(w, &rv, u) + g.bracket_ip(w, u, &rv)
        - g.bracket_ip(u, v, &rw)
        - g.bracket_ip(&rw, v, u)
        - g.bracket_ip(&rw, u, v)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ParallelReport<T> {
    pub is_parallel: bool,
    pub defect: T,
    /// Basis index u maximizing |∇_u Ric|.
    pub worst_direction: usize,
}

pub fn parallel_report<T: Field>(lc: &LeviCivita<T>, r: &RicciData<T>, tol: &Tolerance) -> ParallelReport<T> {
    let n = lc.dim();
    let mut defect = T::zero();
    let mut worst = 0;
    for i in 0..n {
        let d = lc.op(i).commutator(&r.operator).max_abs();
        if d > defect {
            defect = d;
            worst = i;
        }
    }
    let bound = tol.bound(1.0 + r.operator.max_abs_f64());
    ParallelReport {
        is_parallel: defect.negligible(bound),
        defect,
        worst_direction: worst,
    }
}

pub fn is_ricci_parallel<T: Field>(g: &PseudoEuclideanLieAlgebra<T>, tol: &Tolerance) -> Result<ParallelReport<T>> {
    let (lc, r) = ricci(g)?;
    Ok(parallel_report(&lc, &r, tol))
}

/// α with Ric = α Id, if any.
pub fn einstein_constant<T: Field>(r: &RicciData<T>, tol: &Tolerance) -> Option<T> {
    let n = r.operator.rows();
    if n == 0 {
        return Some(T::zero());
    }
    let alpha = r.operator.trace() / T::from_i64(n as i64);
    let d = r.operator.sub(&Matrix::identity(n).scale(&alpha)).max_abs();
    d.negligible(tol.bound(1.0 + r.operator.max_abs_f64())).then_some(alpha)
}

pub fn is_einstein<T: Field>(g: &PseudoEuclideanLieAlgebra<T>, tol: &Tolerance) -> Result<Option<T>> {
    let (_, r) = ricci(g)?;
    Ok(einstein_constant(&r, tol))
}

/// max |L_u v − L_v u − [u,v]| over basis pairs.
pub fn torsion_defect<T: Field>(g: &PseudoEuclideanLieAlgebra<T>, lc: &LeviCivita<T>) -> T {
    let n = g.dim();
    let mut worst = T::zero();
    for i in 0..n {
        for j in 0..n {
            let (u, v) = (basis_vector::<T>(n, i), basis_vector::<T>(n, j));
            let d = max_abs_vec(&sub_vec(&sub_vec(&lc.product(&u, &v), &lc.product(&v, &u)), &g.bracket(&u, &v)));
            if d > worst {
                worst = d;
            }
        }
    }
    worst
}

/// max |⟨L_u v, w⟩ + ⟨v, L_u w⟩| over basis triples, i.e. how far Gᵀ L_u is from skew.
pub fn compatibility_defect<T: Field>(g: &PseudoEuclideanLieAlgebra<T>, lc: &LeviCivita<T>) -> T {
    let gm = g.metric().matrix();
    let mut worst = T::zero();
    for l in lc.ops() {
        let m = gm.mul(l);
        let d = m.add(&m.transpose()).max_abs();
        if d > worst {
            worst = d;
        }
    }
    worst
}

/// max over basis triples of |K(u,v)w + K(v,w)u + K(w,u)v|.
pub fn bianchi_defect<T: Field>(g: &PseudoEuclideanLieAlgebra<T>, lc: &LeviCivita<T>) -> Result<T> {
    let n = g.dim();
    let e = |i| basis_vector::<T>(n, i);
    let ks: Vec<Vec<Matrix<T>>> = (0..n)
        .map(|i| (0..n).map(|j| curvature(g, lc, &e(i), &e(j))).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let mut worst = T::zero();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let s = add_vec(&add_vec(&ks[i][j].column(k), &ks[j][k].column(i)), &ks[k][i].column(j));
                let d = max_abs_vec(&s);
                if d > worst {
                    worst = d;
                }
            }
        }
    }
    Ok(worst)
}
