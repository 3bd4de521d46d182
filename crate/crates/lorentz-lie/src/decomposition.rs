//! The splitting 𝔤 = 𝔥₁ ⊕ … ⊕ 𝔥_r ⊕ 𝔏 attached to a self-adjoint operator.

use std::fmt;

use crate::error::{Error, Result};
use crate::liealg::PseudoEuclideanLieAlgebra;
use crate::matrix::{max_abs_vec, Matrix};
use crate::scalar::{Field, Tolerance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TypeTag {
    Diag,
    ZZbar,
    A2,
    A3,
}

impl fmt::Display for TypeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TypeTag::Diag => "Diag",
            TypeTag::ZZbar => "ZZbar",
            TypeTag::A2 => "A2",
            TypeTag::A3 => "A3",
        })
    }
}

/// An eigenspace block: A = α Id on span(basis).
#[derive(Debug, Clone, PartialEq)]
pub struct HBlock<T> {
    pub alpha: T,
    pub basis: Vec<Vec<T>>,
}

/// The non-diagonal part, with A acting by
/// - ZZbar: A e = a e − b ē, A ē = b e + a ē;
/// - A2: A e = a e, A ē = sign·e + a ē;
/// - A3: A e = a e, A f = e + a f, A ē = f + a ē.
#[derive(Debug, Clone, PartialEq)]
pub enum NullPart<T> {
    ZZbar { e: Vec<T>, ebar: Vec<T>, a: T, b: T },
    A2 { e: Vec<T>, ebar: Vec<T>, a: T, sign: i8 },
    A3 { e: Vec<T>, f: Vec<T>, ebar: Vec<T>, a: T },
}

impl<T: Field> NullPart<T> {
    pub fn tag(&self) -> TypeTag {
        match self {
            NullPart::ZZbar { .. } => TypeTag::ZZbar,
            NullPart::A2 { .. } => TypeTag::A2,
            NullPart::A3 { .. } => TypeTag::A3,
        }
    }

    /// Vectors in canonical order: (e, ē) or (e, f, ē).
    pub fn vectors(&self) -> Vec<&Vec<T>> {
        match self {
            NullPart::ZZbar { e, ebar, .. } | NullPart::A2 { e, ebar, .. } => vec![e, ebar],
            NullPart::A3 { e, f, ebar, .. } => vec![e, f, ebar],
        }
    }

    pub fn a(&self) -> &T {
        match self {
            NullPart::ZZbar { a, .. } | NullPart::A2 { a, .. } | NullPart::A3 { a, .. } => a,
        }
    }

    /// Matrix of A on the canonical vectors (columns are images).
    pub fn block(&self) -> Matrix<T> {
        match self {
            NullPart::ZZbar { a, b, .. } => Matrix::from_rows(vec![
                vec![a.clone(), b.clone()],
                vec![-b.clone(), a.clone()],
            ])
            .expect("2x2"),
            NullPart::A2 { a, sign, .. } => Matrix::from_rows(vec![
                vec![a.clone(), T::from_i64(*sign as i64)],
                vec![T::zero(), a.clone()],
            ])
            .expect("2x2"),
            NullPart::A3 { a, .. } => Matrix::from_rows(vec![
                vec![a.clone(), T::one(), T::zero()],
                vec![T::zero(), a.clone(), T::one()],
                vec![T::zero(), T::zero(), a.clone()],
            ])
            .expect("3x3"),
        }
    }

    /// Gram matrix the canonical vectors must have.
    pub fn gram(&self) -> Matrix<T> {
        let (o, z) = (T::one(), T::zero());
        match self {
            NullPart::A3 { .. } => Matrix::from_rows(vec![
                vec![z.clone(), z.clone(), o.clone()],
                vec![z.clone(), o.clone(), z.clone()],
                vec![o, z.clone(), z],
            ])
            .expect("3x3"),
            _ => Matrix::from_rows(vec![vec![z.clone(), o.clone()], vec![o, z]]).expect("2x2"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SplitDecomposition<T> {
    pub h_blocks: Vec<HBlock<T>>,
    pub l_part: Option<NullPart<T>>,
}

impl<T: Field> SplitDecomposition<T> {
    pub fn type_tag(&self) -> TypeTag {
        self.l_part.as_ref().map_or(TypeTag::Diag, |l| l.tag())
    }

    /// All vectors: h blocks first, then the null part in canonical order.
    pub fn vectors(&self) -> Vec<Vec<T>> {
        let mut out: Vec<Vec<T>> = self.h_blocks.iter().flat_map(|b| b.basis.iter().cloned()).collect();
        if let Some(l) = &self.l_part {
            out.extend(l.vectors().into_iter().cloned());
        }
        out
    }

    /// Matrix of A in the canonical basis given by [`Self::vectors`].
    pub fn canonical_operator(&self) -> Matrix<T> {
        let mut diag: Vec<T> = Vec::new();
        for b in &self.h_blocks {
            diag.extend(std::iter::repeat_n(b.alpha.clone(), b.basis.len()));
        }
        let m = diag.len();
        let l = self.l_part.as_ref().map(|l| l.block());
        let n = m + l.as_ref().map_or(0, |b| b.rows());
        Matrix::from_fn(n, n, |i, j| {
            if i < m && j < m {
                if i == j {
                    diag[i].clone()
                } else {
                    T::zero()
                }
            } else if i >= m && j >= m {
                l.as_ref().expect("null block")[(i - m, j - m)].clone()
            } else {
                T::zero()
            }
        })
    }

    /// The operator A_D in the working basis: W Â W⁻¹ with W = [vectors].
    pub fn operator(&self) -> Result<Matrix<T>> {
        let w = Matrix::from_columns(&self.vectors())?;
        let winv = w
            .inverse()
            .ok_or_else(|| Error::BadDecomposition("vectors do not form a basis".into()))?;
        Ok(w.mul(&self.canonical_operator()).mul(&winv))
    }

    /// Checks block orthogonality, null-pair normalization and spanning.
    pub fn validate(&self, g: &PseudoEuclideanLieAlgebra<T>, tol: &Tolerance) -> Result<()> {
        let n = g.dim();
        let vs = self.vectors();
        if vs.len() != n || vs.iter().any(|v| v.len() != n) {
            return Err(Error::BadDecomposition(format!(
                "{} vectors of the wrong size for dimension {n}",
                vs.len()
            )));
        }
        if let Some(NullPart::ZZbar { b, .. }) = &self.l_part {
            if b.is_zero() {
                return Err(Error::BadDecomposition("b must be nonzero".into()));
            }
        }
        let vmax = vs.iter().map(|v| max_abs_vec(v).to_f64()).fold(0.0, f64::max);
        let scale = g.metric().matrix().max_abs_f64() * vmax * vmax * n as f64;
        let bound = tol.bound(1.0 + scale);
        let small = |x: &T| x.negligible(bound);
        // owner index of each vector: block k, or usize::MAX for the null part
        let mut owner = Vec::new();
        for (k, b) in self.h_blocks.iter().enumerate() {
            owner.extend(std::iter::repeat_n(k, b.basis.len()));
        }
        let m = owner.len();
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                let oi = owner.get(i).copied().unwrap_or(usize::MAX);
                let oj = owner.get(j).copied().unwrap_or(usize::MAX);
                if oi != oj && !small(&g.ip(&vs[i], &vs[j])) {
                    return Err(Error::BadDecomposition(format!("vectors {i} and {j} are not orthogonal")));
                }
            }
        }
        if let Some(l) = &self.l_part {
            let lv: Vec<Vec<T>> = vs[m..].to_vec();
            let gram = g.metric().gram(&lv);
            if !small(&gram.sub(&l.gram()).max_abs()) {
                return Err(Error::BadDecomposition("null part is not normalized".into()));
            }
        }
        let w = Matrix::from_columns(&vs)?;
        let rank_bound = match T::BACKEND {
            crate::scalar::Backend::Exact => 0.0,
            crate::scalar::Backend::Float => 1e-10 * (1.0 + vmax),
        };
        if w.rank(rank_bound) != n {
            return Err(Error::BadDecomposition("vectors do not span".into()));
        }
        Ok(())
    }
}
