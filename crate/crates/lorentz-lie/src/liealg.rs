//! Lie algebras given by structure constants, with an optional metric.

use crate::error::{Error, Result};
use crate::forms::BilinearForm;
use crate::matrix::{basis_vector, max_abs_vec, Matrix};
use crate::scalar::{Field, Tolerance};

/// `c[(i*n + j)*n + k]` is the b_k coefficient of [b_i, b_j].
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra<T> {
    names: Vec<String>,
    c: Vec<T>,
}

impl<T: Field> LieAlgebra<T> {
    pub fn abelian(n: usize) -> Self {
        Self::abelian_named(default_names(n))
    }

    pub fn abelian_named(names: Vec<String>) -> Self {
        let n = names.len();
        LieAlgebra {
            names,
            c: vec![T::zero(); n * n * n],
        }
    }

    /// Build from brackets of basis pairs; the reversed pair is filled in by
    /// antisymmetry. Self-brackets and repeated pairs are rejected.
    pub fn from_brackets(names: Vec<String>, brackets: &[(usize, usize, Vec<T>)]) -> Result<Self> {
        let n = names.len();
        let mut alg = Self::abelian_named(names);
        let mut seen = vec![false; n * n];
        for (i, j, v) in brackets {
            let (i, j) = (*i, *j);
            if i >= n || j >= n || v.len() != n {
                return Err(Error::DimensionMismatch(format!("bracket ({i},{j}) in dimension {n}")));
            }
            if i == j {
                return Err(Error::BadParam(format!("self-bracket of {}", alg.names[i])));
            }
            if seen[i * n + j] || seen[j * n + i] {
                return Err(Error::DuplicateBracket(alg.names[i].clone(), alg.names[j].clone()));
            }
            seen[i * n + j] = true;
            for k in 0..n {
                alg.c[(i * n + j) * n + k] = v[k].clone();
                alg.c[(j * n + i) * n + k] = -v[k].clone();
            }
        }
        Ok(alg)
    }

    /// Build from a dense table `c[i][j][k]`, checking antisymmetry.
    pub fn from_table(names: Vec<String>, table: Vec<Vec<Vec<T>>>, tol: &Tolerance) -> Result<Self> {
        let n = names.len();
        if table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|v| v.len() != n)) {
            return Err(Error::DimensionMismatch("structure constant table".into()));
        }
        let scale = table.iter().flatten().flatten().fold(0.0f64, |m, x| m.max(x.to_f64().abs()));
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let s = table[i][j][k].clone() + table[j][i][k].clone();
                    if !s.negligible(tol.bound(scale)) {
                        return Err(Error::BadParam(format!("structure constants not antisymmetric at ({i},{j},{k})")));
                    }
                }
            }
        }
        let mut c = Vec::with_capacity(n * n * n);
        for row in table {
            for v in row {
                c.extend(v);
            }
        }
        Ok(LieAlgebra { names, c })
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// [b_i, b_j] in coordinates.
    pub fn structure(&self, i: usize, j: usize) -> &[T] {
        let n = self.dim();
        &self.c[(i * n + j) * n..(i * n + j + 1) * n]
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &T {
        let n = self.dim();
        &self.c[(i * n + j) * n + k]
    }

    pub fn max_constant(&self) -> T {
        max_abs_vec(&self.c)
    }

    fn check_len(&self, v: &[T]) -> Result<()> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!("vector of length {} in dimension {}", v.len(), self.dim())));
        }
        Ok(())
    }

    pub fn bracket(&self, u: &[T], v: &[T]) -> Result<Vec<T>> {
        self.check_len(u)?;
        self.check_len(v)?;
        Ok(self.bracket_unchecked(u, v))
    }

    pub(crate) fn bracket_unchecked(&self, u: &[T], v: &[T]) -> Vec<T> {
        let n = self.dim();
        let mut out = vec![T::zero(); n];
        for i in 0..n {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if v[j].is_zero() || i == j {
                    continue;
                }
                let w = u[i].clone() * v[j].clone();
                for (k, o) in out.iter_mut().enumerate() {
                    let c = &self.c[(i * n + j) * n + k];
                    if !c.is_zero() {
                        *o = o.clone() + w.clone() * c.clone();
                    }
                }
            }
        }
        out
    }

    /// Matrix of ad_u; column j is [u, b_j].
    pub fn ad_matrix(&self, u: &[T]) -> Result<Matrix<T>> {
        self.check_len(u)?;
        let n = self.dim();
        let cols: Vec<Vec<T>> = (0..n).map(|j| self.bracket_unchecked(u, &basis_vector(n, j))).collect();
        Matrix::from_columns(&cols)
    }

    pub fn ad_basis(&self, i: usize) -> Matrix<T> {
        let n = self.dim();
        Matrix::from_fn(n, n, |k, j| self.constant(i, j, k).clone())
    }

    /// Max-norm of the Jacobiator over basis triples i < j < k.
    pub fn jacobi_defect(&self) -> T {
        let n = self.dim();
        let mut worst = T::zero();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (bi, bj, bk) = (basis_vector(n, i), basis_vector(n, j), basis_vector(n, k));
                    let t1 = self.bracket_unchecked(&bi, self.structure(j, k));
                    let t2 = self.bracket_unchecked(&bj, self.structure(k, i));
                    let t3 = self.bracket_unchecked(&bk, self.structure(i, j));
                    for x in 0..n {
                        let s = (t1[x].clone() + t2[x].clone() + t3[x].clone()).abs();
                        if s > worst {
                            worst = s;
                        }
                    }
                }
            }
        }
        worst
    }

    pub fn is_lie_algebra(&self, tol: &Tolerance) -> bool {
        let scale = 1.0 + self.max_constant().to_f64().powi(2);
        self.jacobi_defect().negligible(tol.bound(scale))
    }

    pub fn direct_sum(&self, other: &LieAlgebra<T>) -> LieAlgebra<T> {
        let (n, m) = (self.dim(), other.dim());
        let s = n + m;
        let mut names = self.names.clone();
        for name in &other.names {
            let mut candidate = name.clone();
            while names.contains(&candidate) {
                candidate.push('\'');
            }
            names.push(candidate);
        }
        let mut c = vec![T::zero(); s * s * s];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    c[(i * s + j) * s + k] = self.constant(i, j, k).clone();
                }
            }
        }
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    c[((i + n) * s + j + n) * s + k + n] = other.constant(i, j, k).clone();
                }
            }
        }
        LieAlgebra { names, c }
    }

    pub fn map<U: Field>(&self, f: impl Fn(&T) -> U) -> LieAlgebra<U> {
        LieAlgebra {
            names: self.names.clone(),
            c: self.c.iter().map(f).collect(),
        }
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.dim() {
            return Err(Error::DimensionMismatch("name list".into()));
        }
        self.names = names;
        Ok(self)
    }
}

pub fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("b{i}")).collect()
}

/// A Lie algebra with a nondegenerate symmetric bilinear form.
#[derive(Clone, Debug, PartialEq)]
pub struct PseudoEuclideanLieAlgebra<T> {
    alg: LieAlgebra<T>,
    metric: BilinearForm<T>,
}

impl<T: Field> PseudoEuclideanLieAlgebra<T> {
    pub fn new(alg: LieAlgebra<T>, metric: BilinearForm<T>, tol: &Tolerance) -> Result<Self> {
        if alg.dim() != metric.dim() {
            return Err(Error::DimensionMismatch(format!(
                "algebra of dimension {} with a {}x{} metric",
                alg.dim(),
                metric.dim(),
                metric.dim()
            )));
        }
        if !metric.is_nondegenerate(tol) {
            return Err(Error::DegenerateMetric);
        }
        Ok(PseudoEuclideanLieAlgebra { alg, metric })
    }

    pub fn algebra(&self) -> &LieAlgebra<T> {
        &self.alg
    }

    pub fn metric(&self) -> &BilinearForm<T> {
        &self.metric
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn names(&self) -> &[String] {
        self.alg.names()
    }

    pub fn ip(&self, u: &[T], v: &[T]) -> T {
        self.metric.ip(u, v)
    }

    pub fn bracket(&self, u: &[T], v: &[T]) -> Vec<T> {
        self.alg.bracket_unchecked(u, v)
    }

    /// ⟨[u,v],w⟩.
    pub fn bracket_ip(&self, u: &[T], v: &[T], w: &[T]) -> T {
        self.metric.ip(&self.alg.bracket_unchecked(u, v), w)
    }

    pub fn signature(&self, tol: &Tolerance) -> (usize, usize) {
        self.metric.signature(tol)
    }

    pub fn is_lorentzian(&self, tol: &Tolerance) -> bool {
        self.metric.is_lorentzian(tol)
    }

    /// Vector H with ⟨H,u⟩ = tr(ad_u).
    pub fn trace_vector(&self) -> Result<Vec<T>> {
        let n = self.dim();
        let t: Vec<T> = (0..n).map(|i| self.alg.ad_basis(i).trace()).collect();
        self.metric.matrix().solve(&t).ok_or(Error::DegenerateMetric)
    }

    pub fn is_unimodular(&self) -> bool {
        (0..self.dim()).all(|i| self.alg.ad_basis(i).trace().is_zero())
    }

    pub fn direct_sum(&self, other: &PseudoEuclideanLieAlgebra<T>) -> PseudoEuclideanLieAlgebra<T> {
        PseudoEuclideanLieAlgebra {
            alg: self.alg.direct_sum(&other.alg),
            metric: self.metric.direct_sum(&other.metric),
        }
    }

    pub fn to_f64(&self) -> PseudoEuclideanLieAlgebra<f64> {
        PseudoEuclideanLieAlgebra {
            alg: self.alg.map(|x| x.to_f64()),
            metric: self.metric.to_f64(),
        }
    }

    pub fn with_algebra(&self, alg: LieAlgebra<T>) -> Result<Self> {
        if alg.dim() != self.dim() {
            return Err(Error::DimensionMismatch("replacement algebra".into()));
        }
        Ok(PseudoEuclideanLieAlgebra {
            alg,
            metric: self.metric.clone(),
        })
    }
}
