//! Codazzi tests for self-adjoint operators and the harmonic-curvature predicate.

pub mod conditions;

use std::fmt;

use crate::error::{Error, Result};
use crate::geometry::{levi_civita, ricci_operator, LeviCivita};
use crate::liealg::PseudoEuclideanLieAlgebra;
use crate::matrix::{basis_vector, Matrix};
use crate::scalar::{Field, Tolerance};

pub use conditions::{check_type_conditions, ConditionItem, ConditionReport, System};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Formulation {
    /// ⟨L_u v,Aw⟩ + ⟨L_u w,Av⟩ = ⟨L_v u,Aw⟩ + ⟨L_v w,Au⟩.
    Defining,
    /// The seven-term identity in brackets only.
    Bracket,
}

impl fmt::Display for Formulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Formulation::Defining => "defining",
            Formulation::Bracket => "bracket",
        })
    }
}

impl std::str::FromStr for Formulation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "defining" => Ok(Formulation::Defining),
            "bracket" | "prop22" => Ok(Formulation::Bracket),
            other => Err(Error::BadParam(format!("unknown formulation `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CodazziReport<T> {
    pub is_codazzi: bool,
    /// Largest residual over ordered basis triples.
    pub defect: T,
    pub worst_triple: (usize, usize, usize),
    pub formulation: Formulation,
}

pub(crate) fn check_self_adjoint<T: Field>(
    g: &PseudoEuclideanLieAlgebra<T>,
    a: &Matrix<T>,
    tol: &Tolerance,
) -> Result<()> {
    let n = g.dim();
    if a.rows() != n || a.cols() != n {
        return Err(Error::DimensionMismatch(format!(
            "operator is {}x{}, algebra has dimension {n}",
            a.rows(),
            a.cols()
        )));
    }
    let d = g.metric().self_adjoint_defect(a);
    let scale = 1.0 + g.metric().matrix().max_abs_f64() * a.max_abs_f64();
    if d.negligible(tol.bound(scale)) {
        Ok(())
    } else {
        Err(Error::NotSelfAdjoint(d.to_f64()))
    }
}

/// Residuals of one formulation for every ordered basis triple (i,j,k),
/// flattened as (i*n + j)*n + k, each paired with the sum of |terms|.
pub fn codazzi_residuals<T: Field>(
    g: &PseudoEuclideanLieAlgebra<T>,
    lc: &LeviCivita<T>,
    a: &Matrix<T>,
    formulation: Formulation,
) -> Vec<(T, T)> {
    match formulation {
        Formulation::Defining => defining_residuals(g, lc, a),
        Formulation::Bracket => bracket_residuals(g, a),
    }
}

fn defining_residuals<T: Field>(g: &PseudoEuclideanLieAlgebra<T>, lc: &LeviCivita<T>, a: &Matrix<T>) -> Vec<(T, T)> {
    let n = g.dim();
    let ga = g.metric().matrix().mul(a);
    // m[i][(j,k)] = ⟨L_i b_j, A b_k⟩
    let m: Vec<Matrix<T>> = (0..n).map(|i| lc.op(i).transpose().mul(&ga)).collect();
    let mut out = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let terms = [
                    m[i][(j, k)].clone(),
                    m[i][(k, j)].clone(),
                    -m[j][(i, k)].clone(),
                    -m[j][(k, i)].clone(),
                ];
                out.push(sum_with_scale(&terms));
            }
        }
    }
    out
}

fn bracket_residuals<T: Field>(g: &PseudoEuclideanLieAlgebra<T>, a: &Matrix<T>) -> Vec<(T, T)> {
    let n = g.dim();
    let e: Vec<Vec<T>> = (0..n).map(|i| basis_vector(n, i)).collect();
    let ae: Vec<Vec<T>> = (0..n).map(|i| a.column(i)).collect();
    let b = |x: &[T], y: &[T], z: &[T]| g.bracket_ip(x, y, z);
    let two = T::from_i64(2);
    let mut out = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let (u, v, w) = (&e[i], &e[j], &e[k]);
                let (au, av, aw) = (&ae[i], &ae[j], &ae[k]);
                let terms = [
                    two.clone() * b(u, v, aw),
                    -b(au, v, w),
                    -b(u, av, w),
                    -b(v, w, au),
                    b(av, w, u),
                    -b(au, w, v),
                    b(u, w, av),
                ];
                out.push(sum_with_scale(&terms));
            }
        }
    }
    out
}

pub(crate) fn sum_with_scale<T: Field>(terms: &[T]) -> (T, T) {
    let mut s = T::zero();
    let mut m = T::zero();
    for t in terms {
        s = s + t.clone();
        m = m + t.abs();
    }
    (s, m)
}

fn report_from<T: Field>(
    n: usize,
    residuals: Vec<(T, T)>,
    formulation: Formulation,
    tol: &Tolerance,
) -> CodazziReport<T> {
    let mut defect = T::zero();
    let mut worst = 0;
    let mut scale = 0.0f64;
    for (idx, (r, s)) in residuals.iter().enumerate() {
        let r = r.abs();
        if r > defect {
            defect = r;
            worst = idx;
        }
        scale = scale.max(s.to_f64());
    }
    let worst_triple = if n == 0 { (0, 0, 0) } else { (worst / (n * n), (worst / n) % n, worst % n) };
    CodazziReport {
        is_codazzi: defect.negligible(tol.bound(1.0 + scale)),
        defect,
        worst_triple,
        formulation,
    }
}

/// Codazzi defect of a self-adjoint operator using the defining equation.
pub fn codazzi_defect<T: Field>(
    g: &PseudoEuclideanLieAlgebra<T>,
    a: &Matrix<T>,
    tol: &Tolerance,
) -> Result<CodazziReport<T>> {
    check_self_adjoint(g, a, tol)?;
    let lc = levi_civita(g)?;
    Ok(codazzi_defect_with(g, &lc, a, tol))
}

/// Same as [`codazzi_defect`] with a precomputed Levi-Civita product and no adjointness check.
pub fn codazzi_defect_with<T: Field>(
    g: &PseudoEuclideanLieAlgebra<T>,
    lc: &LeviCivita<T>,
    a: &Matrix<T>,
    tol: &Tolerance,
) -> CodazziReport<T> {
    report_from(g.dim(), defining_residuals(g, lc, a), Formulation::Defining, tol)
}

/// Codazzi defect through the bracket identity
/// 2⟨[u,v],Aw⟩ − ⟨[Au,v],w⟩ − ⟨[u,Av],w⟩ = ⟨[v,w],Au⟩ − ⟨[Av,w],u⟩ + ⟨[Au,w],v⟩ − ⟨[u,w],Av⟩.
pub fn codazzi_defect_bracket<T: Field>(
    g: &PseudoEuclideanLieAlgebra<T>,
    a: &Matrix<T>,
    tol: &Tolerance,
) -> Result<CodazziReport<T>> {
    check_self_adjoint(g, a, tol)?;
    Ok(report_from(g.dim(), bracket_residuals(g, a), Formulation::Bracket, tol))
}

pub fn codazzi_report<T: Field>(
    g: &PseudoEuclideanLieAlgebra<T>,
    a: &Matrix<T>,
    formulation: Formulation,
    tol: &Tolerance,
) -> Result<CodazziReport<T>> {
    match formulation {
        Formulation::Defining => codazzi_defect(g, a, tol),
        Formulation::Bracket => codazzi_defect_bracket(g, a, tol),
    }
}

/// Harmonic curvature: the Ricci operator is Codazzi.
pub fn has_harmonic_curvature<T: Field>(g: &PseudoEuclideanLieAlgebra<T>, tol: &Tolerance) -> Result<CodazziReport<T>> {
    let lc = levi_civita(g)?;
    let r = ricci_operator(g, &lc)?;
    Ok(codazzi_defect_with(g, &lc, &r.operator, tol))
}
