//! Constructors for the harmonic, not Ricci-parallel Lorentzian families and
//! their worked examples, each with the split decomposition of its Ricci
//! operator.
//!
//! The families are
//! - [`sl2_harmonic`] and [`build_zz_product`]: complex Ricci eigenvalues (`ZZbar`);
//! - [`build_a2`]: a 2-step nilpotent Ricci block (`A2`);
//! - [`build_a3`]: a 3-step nilpotent Ricci block (`A3`), with the examples
//!   [`example_5d`] and [`example_6d`].

use crate::decomposition::{HBlock, NullPart, SplitDecomposition};
use crate::error::{Error, Result};
use crate::forms::BilinearForm;
use crate::geometry::{einstein_constant, ricci};
use crate::liealg::{LieAlgebra, PseudoEuclideanLieAlgebra};
use crate::matrix::{basis_vector, dot, Matrix};
use crate::scalar::{Field, Tolerance};

/// Absolute tolerance on each family invariant.
pub const CONSTRAINT_TOL: f64 = 1e-8;

/// An algebra together with the expected decomposition of its Ricci operator.
#[derive(Debug, Clone, PartialEq)]
pub struct Family<T, D = T> {
    pub algebra: PseudoEuclideanLieAlgebra<T>,
    pub decomposition: SplitDecomposition<D>,
}

/// Antisymmetric structure constants filled pair by pair.
struct Table<T> {
    c: Vec<Vec<Vec<T>>>,
}

impl<T: Field> Table<T> {
    fn new(n: usize) -> Self {
        Table {
            c: vec![vec![vec![T::zero(); n]; n]; n],
        }
    }

    fn set(&mut self, i: usize, j: usize, v: Vec<T>) {
        self.c[j][i] = v.iter().map(|x| -x.clone()).collect();
        self.c[i][j] = v;
    }

    fn add(&mut self, i: usize, j: usize, v: &[T]) {
        let cur = self.c[i][j].clone();
        self.set(i, j, cur.iter().zip(v).map(|(a, b)| a.clone() + b.clone()).collect());
    }

    fn build(self, names: Vec<String>) -> Result<LieAlgebra<T>> {
        LieAlgebra::from_table(names, self.c, &Tolerance::default())
    }
}

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

fn violation(what: &str) -> Error {
    Error::ConstraintViolation(what.to_string())
}

fn check(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(violation(what))
    }
}

fn near<T: Field>(x: &T) -> bool {
    x.negligible(CONSTRAINT_TOL)
}

fn embed<T: Field>(v: &[T], offset: usize, n: usize) -> Vec<T> {
    let mut out = vec![T::zero(); n];
    for (k, x) in v.iter().enumerate() {
        out[offset + k] = x.clone();
    }
    out
}

/// sl(2,ℝ) with [X₁,X₂]=2X₃, [X₃,X₁]=2X₂, [X₃,X₂]=2X₁ and the metric
/// (−8/α)·[[1,0,−1],[0,1,0],[−1,0,0]]. Its Ricci operator is
/// [[0,0,−α],[0,α,0],[α,0,−α]].
pub fn sl2_harmonic<T: Field>(alpha: &T) -> Result<PseudoEuclideanLieAlgebra<T>> {
    if *alpha >= T::zero() {
        return Err(Error::BadParam(format!("alpha must be negative, got {alpha}")));
    }
    let two = T::from_i64(2);
    let z = T::zero();
    let mut t = Table::new(3);
    t.set(0, 1, vec![z.clone(), z.clone(), two.clone()]);
    t.set(2, 0, vec![z.clone(), two.clone(), z.clone()]);
    t.set(2, 1, vec![two, z.clone(), z]);
    let alg = t.build(names(&["X1", "X2", "X3"]))?;
    let c = T::from_i64(-8) / alpha.clone();
    let g = Matrix::from_rows(vec![
        vec![c.clone(), T::zero(), -c.clone()],
        vec![T::zero(), c.clone(), T::zero()],
        vec![-c, T::zero(), T::zero()],
    ])?;
    PseudoEuclideanLieAlgebra::new(alg, BilinearForm::new(g, &Tolerance::default())?, &Tolerance::default())
}

/// The null pair and α-eigenvector of the sl(2,ℝ) Ricci operator, in (X₁,X₂,X₃).
fn sl2_decomposition(alpha: f64) -> (Vec<f64>, NullPart<f64>) {
    let s3 = 3f64.sqrt();
    let bp = (-4.0 * s3 / alpha).sqrt();
    let e = vec![0.0, 0.0, -s3 / (2.0 * bp)];
    let ebar = vec![1.0 / bp, 0.0, 0.5 / bp];
    let x2 = vec![0.0, 1.0, 0.0];
    let part = NullPart::ZZbar {
        e,
        ebar,
        a: -alpha / 2.0,
        b: s3 / 2.0 * alpha.abs(),
    };
    (x2, part)
}

/// Parameters of the three-dimensional zz̄ core in the basis (e, ē, f).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZZCoreParams {
    pub alpha: f64,
    pub epsilon: i8,
}

impl ZZCoreParams {
    pub fn new(alpha: f64, epsilon: i8) -> Result<Self> {
        if !(alpha < 0.0) {
            return Err(Error::BadParam(format!("alpha must be negative, got {alpha}")));
        }
        if epsilon != 1 && epsilon != -1 {
            return Err(Error::BadParam(format!("epsilon must be ±1, got {epsilon}")));
        }
        Ok(ZZCoreParams { alpha, epsilon })
    }

    pub fn omega(&self) -> f64 {
        0.5
    }

    pub fn rho(&self) -> f64 {
        self.epsilon as f64 * 3f64.sqrt() / 2.0
    }

    pub fn mu(&self) -> f64 {
        -self.alpha / 2.0
    }
}

/// [e,f] = −(α/4)(e+ε√3ē), [ē,f] = −(α/4)(ε√3e−ē), [e,ē] = f, with
/// ⟨e,ē⟩ = 1 and ⟨f,f⟩ = −α/2.
pub fn zz_core(p: ZZCoreParams) -> Result<Family<f64>> {
    let p = ZZCoreParams::new(p.alpha, p.epsilon)?;
    let (al, eps) = (p.alpha, p.epsilon as f64);
    let s3 = 3f64.sqrt();
    let q = -al / 4.0;
    let mut t = Table::new(3);
    t.set(0, 2, vec![q, q * eps * s3, 0.0]);
    t.set(1, 2, vec![q * eps * s3, -q, 0.0]);
    t.set(0, 1, vec![0.0, 0.0, 1.0]);
    let alg = t.build(names(&["e", "ebar", "f"]))?;
    let g = Matrix::from_rows(vec![vec![0.0, 1.0, 0.0], vec![1.0, 0.0, 0.0], vec![0.0, 0.0, -al / 2.0]])?;
    let algebra = PseudoEuclideanLieAlgebra::new(alg, BilinearForm::new(g, &Tolerance::default())?, &Tolerance::default())?;
    let (e, ebar) = (basis_vector(3, 0), basis_vector(3, 1));
    // ε = −1 reverses the orientation of the pair
    let (e, ebar) = if p.epsilon > 0 { (e, ebar) } else { (ebar, e) };
    let decomposition = SplitDecomposition {
        h_blocks: vec![HBlock {
            alpha: al,
            basis: vec![basis_vector(3, 2)],
        }],
        l_part: Some(NullPart::ZZbar {
            e,
            ebar,
            a: -al / 2.0,
            b: s3 / 2.0 * al.abs(),
        }),
    };
    Ok(Family { algebra, decomposition })
}

/// Columns (f₁, f₂, f₃) in the basis (e, ē, f) of zz_core realizing
/// [f₁,f₂]=2f₃, [f₃,f₁]=2f₂, [f₃,f₂]=2f₁.
pub fn zz_core_sl2_frame(p: ZZCoreParams) -> Matrix<f64> {
    let s3 = 3f64.sqrt();
    let al = p.alpha;
    let cols = if p.epsilon > 0 {
        let b = (-4.0 * s3 / al).sqrt();
        vec![
            vec![s3 * b / 3.0, b, 0.0],
            vec![0.0, 0.0, 4.0 / al],
            vec![-2.0 * s3 * b / 3.0, 0.0, 0.0],
        ]
    } else {
        let b = (-16.0 * s3 / (3.0 * al)).sqrt();
        vec![vec![b, 0.0, 0.0], vec![0.0, 0.0, 4.0 / al], vec![-b / 2.0, s3 * b / 2.0, 0.0]]
    };
    Matrix::from_columns(&cols).expect("3 columns")
}

/// sl(2,ℝ) ⊕ 𝔥 for a Euclidean α-Einstein 𝔥 (possibly 0-dimensional).
///
/// The sl(2,ℝ) basis comes first. The decomposition is float because the
/// null pair involves √3.
pub fn build_zz_product<T: Field>(alpha: &T, h: &PseudoEuclideanLieAlgebra<T>) -> Result<Family<T, f64>> {
    let tol = Tolerance::default();
    let sl2 = sl2_harmonic(alpha)?;
    let m = h.dim();
    if m > 0 {
        if !h.metric().is_positive_definite(&tol) {
            return Err(Error::BadParam("h must be Euclidean".into()));
        }
        if !h.algebra().is_lie_algebra(&tol) {
            return Err(Error::NotLieAlgebra(h.algebra().jacobi_defect().to_f64()));
        }
        let (_, r) = ricci(h)?;
        match einstein_constant(&r, &tol) {
            Some(c) if near(&(c.clone() - alpha.clone())) => {}
            _ => return Err(Error::NotEinstein),
        }
    }
    let algebra = sl2.direct_sum(h);
    let n = 3 + m;
    let af = alpha.to_f64();
    let (x2, part) = sl2_decomposition(af);
    let lift = |v: &[f64]| embed(v, 0, n);
    let mut basis = vec![lift(&x2)];
    basis.extend((0..m).map(|k| basis_vector(n, 3 + k)));
    let l_part = match part {
        NullPart::ZZbar { e, ebar, a, b } => NullPart::ZZbar {
            e: lift(&e),
            ebar: lift(&ebar),
            a,
            b,
        },
        _ => unreachable!(),
    };
    Ok(Family {
        algebra,
        decomposition: SplitDecomposition {
            h_blocks: vec![HBlock { alpha: af, basis }],
            l_part: Some(l_part),
        },
    })
}

/// The Euclidean Einstein constant of 𝔥, checked to be negative.
fn negative_einstein<T: Field>(h: &PseudoEuclideanLieAlgebra<T>) -> Result<T> {
    let tol = Tolerance::default();
    check(h.dim() > 0, "h must be nonzero")?;
    check(h.metric().is_positive_definite(&tol), "h must be Euclidean")?;
    check(near(&h.algebra().jacobi_defect()), "h must satisfy the Jacobi identity")?;
    let (_, r) = ricci(h)?;
    let alpha = einstein_constant(&r, &Tolerance::new(0.0, CONSTRAINT_TOL)?)
        .ok_or_else(|| violation("h is not Einstein"))?;
    check(alpha < T::zero(), "the Einstein constant of h must be negative")?;
    Ok(alpha)
}

/// ⟨[b_i,b_j], v⟩ for all pairs, the largest in absolute value.
fn max_against_derived<T: Field>(h: &PseudoEuclideanLieAlgebra<T>, v: &[T]) -> T {
    let m = h.dim();
    let mut worst = T::zero();
    for i in 0..m {
        for j in i + 1..m {
            let x = h.bracket_ip(&basis_vector(m, i), &basis_vector(m, j), v).abs();
            if x > worst {
                worst = x;
            }
        }
    }
    worst
}

fn trace_ad<T: Field>(h: &PseudoEuclideanLieAlgebra<T>, x: &[T]) -> Result<T> {
    Ok(h.algebra().ad_matrix(x)?.trace())
}

#[derive(Debug, Clone, PartialEq)]
pub struct A2FamilySpec<T> {
    /// The Euclidean subalgebra 𝔥.
    pub h: PseudoEuclideanLieAlgebra<T>,
    pub x: Vec<T>,
    pub alpha: T,
}

impl<T: Field> A2FamilySpec<T> {
    /// Checks every invariant; the error names the first one that fails.
    pub fn validate(&self) -> Result<()> {
        let h = &self.h;
        check(self.x.len() == h.dim(), "X must be a vector of h")?;
        let alpha = negative_einstein(h)?;
        check(near(&(alpha - self.alpha.clone())), "h must be alpha-Einstein")?;
        let x2 = h.ip(&self.x, &self.x);
        check(!near(&x2), "X must be nonzero")?;
        check(near(&max_against_derived(h, &self.x)), "X must be orthogonal to [h,h]")?;
        let rhs = T::from_i64(-4) * x2 - T::from_i64(2) * trace_ad(h, &self.x)?;
        check(near(&(self.alpha.clone() - rhs)), "alpha = -4|X|^2 - 2 tr(ad_X)")?;
        Ok(())
    }
}

/// span(e, ē) ⊕ 𝔥 in the basis (e, ē, 𝔥…) with
/// [e,u] = ⟨X,u⟩e and [ē,u] = −⟨X,u⟩((2/α)e + ē) for u ∈ 𝔥.
pub fn build_a2<T: Field>(spec: &A2FamilySpec<T>) -> Result<Family<T>> {
    spec.validate()?;
    let h = &spec.h;
    let m = h.dim();
    let n = m + 2;
    let mut t = Table::new(n);
    let gx = h.metric().lower(&spec.x);
    let two_over = T::from_i64(2) / spec.alpha.clone();
    for k in 0..m {
        let c = gx[k].clone();
        let mut v = vec![T::zero(); n];
        v[0] = c.clone();
        t.set(0, 2 + k, v);
        let mut v = vec![T::zero(); n];
        v[0] = -(c.clone() * two_over.clone());
        v[1] = -c;
        t.set(1, 2 + k, v);
        for l in k + 1..m {
            t.set(2 + k, 2 + l, embed(h.algebra().structure(k, l), 2, n));
        }
    }
    let mut list = vec!["e".to_string(), "ebar".to_string()];
    list.extend(h.names().iter().cloned());
    let alg = t.build(unique(list))?;
    let mut g = Matrix::zeros(n, n);
    g[(0, 1)] = T::one();
    g[(1, 0)] = T::one();
    for i in 0..m {
        for j in 0..m {
            g[(2 + i, 2 + j)] = h.metric().matrix()[(i, j)].clone();
        }
    }
    let algebra = PseudoEuclideanLieAlgebra::new(alg, BilinearForm::new(g, &Tolerance::default())?, &Tolerance::default())?;
    check(near(&algebra.algebra().jacobi_defect()), "the constructed bracket must satisfy the Jacobi identity")?;
    Ok(Family {
        algebra,
        decomposition: SplitDecomposition {
            h_blocks: vec![HBlock {
                alpha: spec.alpha.clone(),
                basis: (0..m).map(|k| basis_vector(n, 2 + k)).collect(),
            }],
            l_part: Some(NullPart::A2 {
                e: basis_vector(n, 0),
                ebar: basis_vector(n, 1),
                a: T::zero(),
                sign: 1,
            }),
        },
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct A3FamilySpec<T> {
    pub h: PseudoEuclideanLieAlgebra<T>,
    pub x: Vec<T>,
    pub u: Vec<T>,
    /// Skew-symmetric derivation of 𝔥, in the basis of 𝔥.
    pub c: Matrix<T>,
}

impl<T: Field> A3FamilySpec<T> {
    /// The Einstein constant of 𝔥.
    pub fn alpha(&self) -> Result<T> {
        negative_einstein(&self.h)
    }

    /// Y = −(1/α)(2U + (3/α)X).
    pub fn y(&self) -> Result<Vec<T>> {
        let al = self.alpha()?;
        let three_over = T::from_i64(3) / al.clone();
        Ok(self
            .u
            .iter()
            .zip(&self.x)
            .map(|(u, x)| -(T::from_i64(2) * u.clone() + three_over.clone() * x.clone()) / al.clone())
            .collect())
    }

    /// T = −(2/α)X − U.
    pub fn t(&self) -> Result<Vec<T>> {
        let al = self.alpha()?;
        Ok(self
            .x
            .iter()
            .zip(&self.u)
            .map(|(x, u)| -(T::from_i64(2) / al.clone()) * x.clone() - u.clone())
            .collect())
    }

    pub fn validate(&self) -> Result<()> {
        let h = &self.h;
        let m = h.dim();
        check(self.x.len() == m && self.u.len() == m, "X and U must be vectors of h")?;
        check(self.c.rows() == m && self.c.cols() == m, "C must be an endomorphism of h")?;
        let alpha = self.alpha()?;
        let gm = h.metric().matrix();
        let skew = gm.mul(&self.c).add(&self.c.transpose().mul(gm));
        check(near(&skew.max_abs()), "C must be skew-symmetric")?;
        for i in 0..m {
            for j in i + 1..m {
                let (bi, bj) = (basis_vector(m, i), basis_vector(m, j));
                let lhs = self.c.mul_vec(&h.bracket(&bi, &bj));
                let r1 = h.bracket(&self.c.mul_vec(&bi), &bj);
                let r2 = h.bracket(&bi, &self.c.mul_vec(&bj));
                let d = lhs.iter().zip(r1.iter().zip(&r2)).map(|(l, (a, b))| (l.clone() - a.clone() - b.clone()).abs());
                check(d.into_iter().all(|x| near(&x)), "C must be a derivation of h")?;
            }
        }
        let cx = self.c.mul_vec(&self.x);
        let cu = self.c.mul_vec(&self.u);
        check(cx.iter().chain(&cu).all(near), "CX = CU = 0")?;
        let x2 = h.ip(&self.x, &self.x);
        check(!near(&x2), "X must be nonzero")?;
        check(near(&max_against_derived(h, &self.x)), "X must be orthogonal to [h,h]")?;
        let u2 = h.ip(&self.u, &self.u);
        let xu = h.ip(&self.x, &self.u);
        let lhs = h.bracket_ip(&self.u, &self.x, &self.u);
        check(
            near(&(lhs - (u2 * x2.clone() - xu.clone() * xu.clone()))),
            "<U,[U,X]> = |U|^2|X|^2 - <U,X>^2",
        )?;
        // P^⊥ inside 𝔥, P = span(X, U)
        let rows = Matrix::from_rows(vec![h.metric().lower(&self.x), h.metric().lower(&self.u)])?;
        let perp = rows.nullspace(CONSTRAINT_TOL);
        for v in &perp {
            for i in 0..m {
                let x = h.bracket_ip(&basis_vector(m, i), v, &self.u);
                check(near(&x), "<[h,P^perp],U> = 0")?;
            }
        }
        let trx = trace_ad(h, &self.x)?;
        check(near(&(trx + alpha.clone() + x2.clone())), "tr(ad_X) = -alpha - |X|^2")?;
        let tru = trace_ad(h, &self.u)?;
        let rhs = -(T::from_i64(5) / (T::from_i64(2) * alpha)) * x2 - T::from_i64(3) * xu + T::ratio(3, 2);
        check(near(&(tru - rhs)), "tr(ad_U) = -(5/(2 alpha))|X|^2 - 3<X,U> + 3/2")?;
        Ok(())
    }
}

/// span(e, f, ē) ⊕ 𝔥 in the basis (e, f, ē, 𝔥…) with, for u ∈ 𝔥,
/// [e,u] = ⟨X,u⟩e, [f,u] = ⟨U,u⟩e + Cu and
/// [ē,u] = ⟨Y,u⟩e − ⟨X,u⟩ē + ⟨T,u⟩f + (⟨T,X⟩/⟨X,X⟩)Cu.
pub fn build_a3<T: Field>(spec: &A3FamilySpec<T>) -> Result<Family<T>> {
    spec.validate()?;
    let h = &spec.h;
    let m = h.dim();
    let n = m + 3;
    let alpha = spec.alpha()?;
    let (y, tv) = (spec.y()?, spec.t()?);
    let lower = |v: &[T]| h.metric().lower(v);
    let (gx, gu, gy, gt) = (lower(&spec.x), lower(&spec.u), lower(&y), lower(&tv));
    let ratio = dot(&gt, &spec.x) / dot(&gx, &spec.x);
    let mut t = Table::new(n);
    for k in 0..m {
        let ck = embed(&spec.c.column(k), 3, n);
        let mut v = vec![T::zero(); n];
        v[0] = gx[k].clone();
        t.set(0, 3 + k, v);
        let mut v = ck.clone();
        v[0] = v[0].clone() + gu[k].clone();
        t.set(1, 3 + k, v);
        let mut v: Vec<T> = ck.iter().map(|x| ratio.clone() * x.clone()).collect();
        v[0] = gy[k].clone();
        v[1] = gt[k].clone();
        v[2] = -gx[k].clone();
        t.set(2, 3 + k, v);
        for l in k + 1..m {
            t.add(3 + k, 3 + l, &embed(h.algebra().structure(k, l), 3, n));
        }
    }
    let mut list = vec!["e".to_string(), "f".to_string(), "ebar".to_string()];
    list.extend(h.names().iter().cloned());
    let alg = t.build(unique(list))?;
    let mut g = Matrix::zeros(n, n);
    g[(0, 2)] = T::one();
    g[(2, 0)] = T::one();
    g[(1, 1)] = T::one();
    for i in 0..m {
        for j in 0..m {
            g[(3 + i, 3 + j)] = h.metric().matrix()[(i, j)].clone();
        }
    }
    let algebra = PseudoEuclideanLieAlgebra::new(alg, BilinearForm::new(g, &Tolerance::default())?, &Tolerance::default())?;
    check(near(&algebra.algebra().jacobi_defect()), "the constructed bracket must satisfy the Jacobi identity")?;
    Ok(Family {
        algebra,
        decomposition: SplitDecomposition {
            h_blocks: vec![HBlock {
                alpha,
                basis: (0..m).map(|k| basis_vector(n, 3 + k)).collect(),
            }],
            l_part: Some(NullPart::A3 {
                e: basis_vector(n, 0),
                f: basis_vector(n, 1),
                ebar: basis_vector(n, 2),
                a: T::zero(),
            }),
        },
    })
}

/// Renames clashes with the fixed null-part names.
fn unique(mut list: Vec<String>) -> Vec<String> {
    for i in 0..list.len() {
        while list[..i].contains(&list[i]) {
            list[i].push('\'');
        }
    }
    list
}

/// Which root of the quadratic for a is used.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootSign {
    Plus,
    Minus,
}

impl RootSign {
    pub fn value(self) -> f64 {
        match self {
            RootSign::Plus => 1.0,
            RootSign::Minus => -1.0,
        }
    }
}

impl std::str::FromStr for RootSign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+" | "plus" => Ok(RootSign::Plus),
            "-" | "minus" => Ok(RootSign::Minus),
            other => Err(Error::BadParam(format!("sign must be + or -, got `{other}`"))),
        }
    }
}

/// A worked example with its parameters: X = U = aH with l = |H|².
#[derive(Debug, Clone, PartialEq)]
pub struct Example {
    pub family: Family<f64>,
    pub a: f64,
    pub l: f64,
    /// X in the basis of the example.
    pub x: Vec<f64>,
}

/// a = (−1 ± √5)/2 and l = (4√5 ∓ 1)/(3√5 ∓ 1).
pub fn example_5d_params(sign: RootSign) -> (f64, f64) {
    let s = sign.value();
    let r5 = 5f64.sqrt();
    ((-1.0 + s * r5) / 2.0, (4.0 * r5 - s) / (3.0 * r5 - s))
}

/// a = (−1 ± √3)/2 and l = 2(4√3 ∓ 1)/(3√3 ∓ 1).
pub fn example_6d_params(sign: RootSign) -> (f64, f64) {
    let s = sign.value();
    let r3 = 3f64.sqrt();
    ((-1.0 + s * r3) / 2.0, 2.0 * (4.0 * r3 - s) / (3.0 * r3 - s))
}

fn example_metric(m: usize, l: f64) -> Matrix<f64> {
    // (H, e_1, …, e_{m−1}, e, f, ē)
    let n = m + 3;
    let mut g = Matrix::identity(n);
    g[(0, 0)] = l;
    g[(m, m)] = 0.0;
    g[(n - 1, n - 1)] = 0.0;
    g[(m, n - 1)] = 1.0;
    g[(n - 1, m)] = 1.0;
    g
}

fn example_family(alg: LieAlgebra<f64>, m: usize, l: f64, alpha: f64) -> Result<Family<f64>> {
    let n = m + 3;
    let g = BilinearForm::new(example_metric(m, l), &Tolerance::default())?;
    let algebra = PseudoEuclideanLieAlgebra::new(alg, g, &Tolerance::default())?;
    Ok(Family {
        algebra,
        decomposition: SplitDecomposition {
            h_blocks: vec![HBlock {
                alpha,
                basis: (0..m).map(|k| basis_vector(n, k)).collect(),
            }],
            l_part: Some(NullPart::A3 {
                e: basis_vector(n, m),
                f: basis_vector(n, m + 1),
                ebar: basis_vector(n, m + 2),
                a: 0.0,
            }),
        },
    })
}

fn example_5d_with(sign: RootSign, ebar_e_coefficient: impl Fn(f64, f64) -> f64) -> Result<Example> {
    let (a, l) = example_5d_params(sign);
    // basis (H, e1, e, f, ē)
    let mut t = Table::new(5);
    t.set(0, 1, vec![0.0, l, 0.0, 0.0, 0.0]);
    t.set(2, 0, vec![0.0, 0.0, a * l, 0.0, 0.0]);
    t.set(3, 0, vec![0.0, 0.0, a * l, 0.0, 0.0]);
    t.set(4, 0, vec![0.0, 0.0, ebar_e_coefficient(a, l), (2.0 - l) * a, -a * l]);
    let alg = t.build(names(&["H", "e1", "e", "f", "ebar"]))?;
    Ok(Example {
        family: example_family(alg, 2, l, -l)?,
        a,
        l,
        x: vec![a, 0.0, 0.0, 0.0, 0.0],
    })
}

/// The five-dimensional example: 𝔥 = span(H, e₁) with [H,e₁] = l e₁, |H|² = l,
/// and X = U = aH. Its Ricci operator is diag(−l, −l) ⊕ a 3-step nilpotent block.
///
/// The e-coefficient of [ē,H] is ⟨Y,H⟩ = (2l−3)a/l; see
/// [`example_5d_alternate`] for the variant with (2l−1)a/l.
pub fn example_5d(sign: RootSign) -> Result<Example> {
    example_5d_with(sign, |a, l| (2.0 * l - 3.0) * a / l)
}

/// [`example_5d`] with the e-coefficient of [ē,H] taken as (2l−1)a/l.
/// This bracket is a Lie algebra but its curvature is not harmonic.
pub fn example_5d_alternate(sign: RootSign) -> Result<Example> {
    example_5d_with(sign, |a, l| (2.0 * l - 1.0) * a / l)
}

/// The six-dimensional example: 𝔥 = span(H, e₁, e₂) with [H,e_i] = (l/2)e_i,
/// |H|² = l, X = U = aH and C = λ(e₁ ↦ e₂, e₂ ↦ −e₁).
pub fn example_6d(sign: RootSign, lambda: f64) -> Result<Example> {
    let (a, l) = example_6d_params(sign);
    let k = (4.0 - l) / l * lambda;
    // basis (H, e1, e2, e, f, ē)
    let v = |i: usize, x: f64| {
        let mut out = vec![0.0; 6];
        out[i] = x;
        out
    };
    let mut t = Table::new(6);
    t.set(0, 1, v(1, l / 2.0));
    t.set(0, 2, v(2, l / 2.0));
    t.set(5, 1, v(2, k));
    t.set(4, 1, v(2, lambda));
    t.set(5, 2, v(1, -k));
    t.set(4, 2, v(1, -lambda));
    t.set(3, 0, v(3, a * l));
    t.set(5, 0, vec![0.0, 0.0, 0.0, (2.0 * l - 6.0) * a * 2.0 / l, (4.0 - l) * a, -a * l]);
    t.set(4, 0, v(3, a * l));
    let alg = t.build(names(&["H", "e1", "e2", "e", "f", "ebar"]))?;
    Ok(Example {
        family: example_family(alg, 3, l, -l / 2.0)?,
        a,
        l,
        x: vec![a, 0.0, 0.0, 0.0, 0.0, 0.0],
    })
}

/// 𝔥 = span(H, e₁) with [H,e₁] = k e₁ and metric diag(g, 1); its Einstein constant is −k²/g.
pub fn two_dim_nonunimodular<T: Field>(k: &T, g: &T) -> Result<PseudoEuclideanLieAlgebra<T>> {
    let mut t = Table::new(2);
    t.set(0, 1, vec![T::zero(), k.clone()]);
    let alg = t.build(names(&["H", "e1"]))?;
    PseudoEuclideanLieAlgebra::new(alg, BilinearForm::diagonal(&[g.clone(), T::one()]), &Tolerance::default())
}

/// An a2 instance over the 2-dimensional 𝔥 with [H,e₁] = e₁, G = Id:
/// α = −1 and X = ((−1+√5)/4)H.
pub fn a2_example() -> Result<Family<f64>> {
    let h = two_dim_nonunimodular(&1.0, &1.0)?;
    let x = vec![(-1.0 + 5f64.sqrt()) / 4.0, 0.0];
    build_a2(&A2FamilySpec { h, x, alpha: -1.0 })
}

/// The six-dimensional example rebuilt through [`build_a3`], in the basis (e, f, ē, H, e₁, e₂).
pub fn a3_example(sign: RootSign, lambda: f64) -> Result<Family<f64>> {
    let (a, l) = example_6d_params(sign);
    let mut t = Table::new(3);
    t.set(0, 1, vec![0.0, l / 2.0, 0.0]);
    t.set(0, 2, vec![0.0, 0.0, l / 2.0]);
    let alg = t.build(names(&["H", "e1", "e2"]))?;
    let h = PseudoEuclideanLieAlgebra::new(alg, BilinearForm::diagonal(&[l, 1.0, 1.0]), &Tolerance::default())?;
    let c = Matrix::from_rows(vec![vec![0.0, 0.0, 0.0], vec![0.0, 0.0, -lambda], vec![0.0, lambda, 0.0]])?;
    build_a3(&A3FamilySpec {
        h,
        x: vec![a, 0.0, 0.0],
        u: vec![a, 0.0, 0.0],
        c,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use num_traits::Zero;

    #[test]
    fn sl2_rejects_nonnegative_alpha() {
        assert_eq!(sl2_harmonic(&Rational::from_i64(0)).unwrap_err().code(), "BAD_PARAM");
    }

    #[test]
    fn sl2_is_lie_and_lorentzian() {
        let g = sl2_harmonic(&Rational::from_i64(-1)).unwrap();
        assert!(g.algebra().jacobi_defect().is_zero());
        assert!(g.is_lorentzian(&Tolerance::default()));
    }

    #[test]
    fn abelian_h_violates_a2() {
        let h = PseudoEuclideanLieAlgebra::new(LieAlgebra::abelian(2), BilinearForm::identity(2), &Tolerance::default()).unwrap();
        let err = build_a2(&A2FamilySpec {
            h,
            x: vec![1.0, 0.0],
            alpha: -4.0,
        })
        .unwrap_err();
        assert_eq!(err.code(), "CONSTRAINT_VIOLATION");
    }

    #[test]
    fn root_pairing() {
        for s in [RootSign::Plus, RootSign::Minus] {
            let (a, l) = example_5d_params(s);
            assert!((a * a + a - 1.0).abs() < 1e-14);
            assert!((l - (5.0 * a * a + 3.0) / (2.0 * (a + 3.0 * a * a))).abs() < 1e-12);
        }
    }
}
