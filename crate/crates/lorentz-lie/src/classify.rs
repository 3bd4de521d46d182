//! Canonical forms of self-adjoint operators on Lorentzian spaces.
//!
//! Every such operator is one of four types: diagonalizable (`Diag`), a complex
//! pair a ± ib (`ZZbar`), or a single Jordan block of size 2 (`A2`) or 3 (`A3`)
//! on a null plane/space. [`classify_symmetric_operator`] finds the type, the
//! eigen-data and a basis realizing the canonical pair of matrices.

use crate::decomposition::{HBlock, NullPart, SplitDecomposition, TypeTag};
use crate::error::{Error, Result};
use crate::forms::BilinearForm;
use crate::geometry::ricci;
use crate::liealg::PseudoEuclideanLieAlgebra;
use crate::matrix::{axpy, dot, scale_vec, Matrix};
use crate::numeric;
use crate::poly;
use crate::scalar::{Backend, Field, Rational, Scalar, Tolerance};

/// Float mode: eigenvalues closer than this times (1 + ‖A‖∞) are one cluster.
pub const CLUSTER_RADIUS: f64 = 2e-5;
/// Float mode: clusters closer than this factor times the radius are ambiguous.
pub const AMBIGUITY_FACTOR: f64 = 4.0;
/// Float mode: singular values below this times (1 + ‖A‖∞)^k count as zero.
pub const RANK_CUTOFF: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct OperatorClassification {
    pub type_tag: TypeTag,
    pub backend: Backend,
    /// Eigenvalues on 𝔥, ascending, with multiplicity.
    pub alphas: Vec<Scalar>,
    /// Real part (ZZbar) or defective eigenvalue (A2, A3).
    pub a: Option<Scalar>,
    /// Positive imaginary part (ZZbar).
    pub b: Option<f64>,
    pub b_squared: Option<Scalar>,
    /// ±1 in the A2 block; an isometry invariant, so it is reported, not normalized.
    pub a2_sign: Option<i8>,
    pub decomposition: SplitDecomposition<f64>,
    /// Columns are the canonical vectors in the working basis.
    pub basis: Matrix<f64>,
    /// P = basis⁻¹, so that A = P⁻¹ Â P and G = Pᵀ Ĝ P.
    pub basis_change: Matrix<f64>,
}

impl OperatorClassification {
    /// Â, the canonical matrix of the operator.
    pub fn canonical_operator(&self) -> Matrix<f64> {
        self.decomposition.canonical_operator()
    }

    /// Ĝ, the canonical matrix of the metric.
    pub fn canonical_metric(&self) -> Matrix<f64> {
        let n = self.basis.rows();
        let mut g = Matrix::identity(n);
        let m = n - self.decomposition.l_part.as_ref().map_or(0, |l| l.vectors().len());
        match &self.decomposition.l_part {
            None => g[(n - 1, n - 1)] = -1.0,
            Some(l) => {
                let lg = l.gram();
                for i in 0..lg.rows() {
                    for j in 0..lg.cols() {
                        g[(m + i, m + j)] = lg[(i, j)];
                    }
                }
            }
        }
        g
    }

    /// ‖P⁻¹ÂP − A‖∞ (entrywise max).
    pub fn reconstruction_residual(&self, a: &Matrix<f64>) -> f64 {
        let p = &self.basis_change;
        self.basis.mul(&self.canonical_operator()).mul(p).sub(a).max_abs_f64()
    }

    /// ‖PᵀĜP − G‖∞ (entrywise max).
    pub fn metric_residual(&self, g: &Matrix<f64>) -> f64 {
        let p = &self.basis_change;
        p.transpose().mul(&self.canonical_metric()).mul(p).sub(g).max_abs_f64()
    }

    pub fn a_f64(&self) -> Option<f64> {
        self.a.as_ref().map(Scalar::to_f64)
    }

    /// b to 17 significant digits, rounded from the exact b² when there is one.
    pub fn b_string(&self) -> Option<String> {
        match (&self.b_squared, self.b) {
            (Some(Scalar::Exact(q)), _) => crate::scalar::format_sqrt_rational(q).ok(),
            (_, Some(b)) => Some(crate::scalar::format_f64(b)),
            _ => None,
        }
    }

    pub fn alphas_f64(&self) -> Vec<f64> {
        self.alphas.iter().map(Scalar::to_f64).collect()
    }
}

#[derive(Debug, Clone)]
struct Eigen {
    exact: Option<Rational>,
    value: f64,
    alg: usize,
}

#[derive(Debug, Clone)]
struct Spectrum {
    real: Vec<Eigen>,
    /// (a, b², exact a, exact b²)
    complex: Option<(f64, f64, Option<Rational>, Option<Rational>)>,
}

fn inf_norm(a: &Matrix<f64>) -> f64 {
    (0..a.rows())
        .map(|i| (0..a.cols()).map(|j| a[(i, j)].abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

fn exact_spectrum(a: &Matrix<Rational>) -> Result<Spectrum> {
    let p = a.char_poly();
    let mut rest = poly::square_free(&p);
    let companion_roots = {
        let d = rest.len() - 1;
        let c = Matrix::from_fn(d, d, |i, j| {
            if j == d - 1 {
                -rest[i].to_f64()
            } else if i == j + 1 {
                1.0
            } else {
                0.0
            }
        });
        numeric::eigenvalues(&c)
    };
    let mut real = Vec::new();
    for (re, im) in companion_roots {
        if im.abs() > 1e-6 * (1.0 + re.abs()) {
            continue;
        }
        if let Some(r) = poly::snap_root(&rest, re, 1_000_000_000) {
            let lin = vec![-r.clone(), Rational::from_i64(1)];
            rest = poly::divrem(&rest, &lin).0;
            real.push(Eigen {
                value: r.to_f64(),
                alg: poly::multiplicity(&p, &r),
                exact: Some(r),
            });
        }
    }
    real.sort_by(|x, y| x.exact.cmp(&y.exact));
    let complex = match poly::degree(&rest) {
        Some(0) => None,
        Some(2) => {
            let rest = poly::monic(&rest);
            let (c0, c1) = (rest[0].clone(), rest[1].clone());
            let a = -c1.clone() / Rational::from_i64(2);
            let b2 = c0 - a.clone() * a.clone();
            if b2 <= Rational::from_i64(0) {
                return Err(Error::ExactUnsupported(
                    "irrational real eigenvalues; use the float backend".into(),
                ));
            }
            let square = poly::divrem(&poly::divrem(&p, &rest).0, &rest);
            if square.1.is_empty() {
                return Err(Error::ExactUnsupported("repeated complex eigenvalues".into()));
            }
            Some((a.to_f64(), b2.to_f64(), Some(a), Some(b2)))
        }
        _ => {
            return Err(Error::ExactUnsupported(
                "eigenvalues outside the rationals and one quadratic pair; use the float backend".into(),
            ))
        }
    };
    Ok(Spectrum { real, complex })
}

fn float_spectrum(a: &Matrix<f64>) -> Result<Spectrum> {
    let scale = 1.0 + inf_norm(a);
    let radius = CLUSTER_RADIUS * scale;
    let mut ev = numeric::eigenvalues(a);
    ev.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.total_cmp(&y.1)));
    // single-linkage clustering in the complex plane
    let n = ev.len();
    let mut label: Vec<usize> = (0..n).collect();
    fn find(l: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while l[r] != r {
            r = l[r];
        }
        l[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if (ev[i].0 - ev[j].0).hypot(ev[i].1 - ev[j].1) <= radius {
                let (ri, rj) = (find(&mut label, i), find(&mut label, j));
                label[ri] = rj;
            }
        }
    }
    let mut clusters: Vec<Vec<(f64, f64)>> = Vec::new();
    let mut roots: Vec<usize> = Vec::new();
    for i in 0..n {
        let r = find(&mut label, i);
        match roots.iter().position(|&x| x == r) {
            Some(k) => clusters[k].push(ev[i]),
            None => {
                roots.push(r);
                clusters.push(vec![ev[i]]);
            }
        }
    }
    let means: Vec<(f64, f64, usize)> = clusters
        .iter()
        .map(|c| {
            let k = c.len() as f64;
            (c.iter().map(|z| z.0).sum::<f64>() / k, c.iter().map(|z| z.1).sum::<f64>() / k, c.len())
        })
        .collect();
    for i in 0..means.len() {
        for j in i + 1..means.len() {
            let d = (means[i].0 - means[j].0).hypot(means[i].1 - means[j].1);
            if d < AMBIGUITY_FACTOR * radius {
                return Err(Error::DefectiveAmbiguity(format!(
                    "eigenvalues {:.3e}{:+.3e}i and {:.3e}{:+.3e}i are {d:.1e} apart",
                    means[i].0, means[i].1, means[j].0, means[j].1
                )));
            }
        }
    }
    let mut real = Vec::new();
    let mut complex = None;
    for (re, im, k) in means {
        if im.abs() <= radius {
            real.push(Eigen {
                exact: None,
                value: re,
                alg: k,
            });
        } else if im > 0.0 {
            if k != 1 || complex.is_some() {
                return Err(Error::DefectiveAmbiguity("more than one complex eigenvalue pair".into()));
            }
            complex = Some((re, im * im, None, None));
        }
    }
    real.sort_by(|x, y| x.value.total_cmp(&y.value));
    Ok(Spectrum { real, complex })
}

struct Ctx<'a> {
    af: Matrix<f64>,
    gf: &'a Matrix<f64>,
    exact: Option<Matrix<Rational>>,
    scale: f64,
}

impl Ctx<'_> {
    fn n(&self) -> usize {
        self.af.rows()
    }

    fn ip(&self, u: &[f64], v: &[f64]) -> f64 {
        dot(u, &self.gf.mul_vec(v))
    }

    fn shifted(&self, lambda: f64) -> Matrix<f64> {
        self.af.sub(&Matrix::identity(self.n()).scale(&lambda))
    }

    fn power(m: &Matrix<f64>, k: usize) -> Matrix<f64> {
        (1..k).fold(m.clone(), |acc, _| acc.mul(m))
    }

    /// ker (A − λ)^k, exactly when possible.
    fn kernel(&self, eig: &Eigen, k: usize) -> Vec<Vec<f64>> {
        if let (Some(a), Some(r)) = (&self.exact, &eig.exact) {
            let n = a.rows();
            let s = a.sub(&Matrix::identity(n).scale(r));
            let p = (1..k).fold(s.clone(), |acc, _| acc.mul(&s));
            return p.nullspace(0.0).iter().map(|v| v.iter().map(|x| x.to_f64()).collect()).collect();
        }
        let p = Self::power(&self.shifted(eig.value), k);
        numeric::nullspace(&p, RANK_CUTOFF * self.scale.powi(k as i32))
    }

    /// The generalized eigenspace ker (A − λ)^alg; its dimension is alg by construction.
    fn generalized(&self, eig: &Eigen) -> Vec<Vec<f64>> {
        let k = eig.alg;
        if let (Some(a), Some(r)) = (&self.exact, &eig.exact) {
            let n = a.rows();
            let s = a.sub(&Matrix::identity(n).scale(r));
            let p = (1..k).fold(s.clone(), |acc, _| acc.mul(&s));
            return p.nullspace(0.0).iter().map(|v| v.iter().map(|x| x.to_f64()).collect()).collect();
        }
        numeric::smallest_singular_vectors(&Self::power(&self.shifted(eig.value), k), k)
    }

    fn geometric(&self, eig: &Eigen) -> usize {
        self.kernel(eig, 1).len()
    }

    /// G-orthonormal basis of span(vs); timelike vectors (if any) last.
    fn orthonormalize(&self, vs: &[Vec<f64>]) -> Result<Vec<(Vec<f64>, f64)>> {
        if vs.is_empty() {
            return Ok(Vec::new());
        }
        let gram = Matrix::from_fn(vs.len(), vs.len(), |i, j| self.ip(&vs[i], &vs[j]));
        let (vals, vecs) = numeric::symmetric_eigen(&gram);
        let mut out = Vec::new();
        for (lam, q) in vals.iter().zip(&vecs) {
            if lam.abs() <= RANK_CUTOFF * (1.0 + gram.max_abs_f64()) {
                return Err(Error::DefectiveAmbiguity("degenerate metric on an eigenspace".into()));
            }
            let mut v = vec![0.0; self.n()];
            for (c, x) in q.iter().zip(vs) {
                v = axpy(c, x, &v);
            }
            out.push((scale_vec(&(1.0 / lam.abs().sqrt()), &v), lam.signum()));
        }
        out.sort_by(|x, y| y.1.total_cmp(&x.1));
        Ok(out)
    }

    fn spacelike_block(&self, alpha: f64, vs: &[Vec<f64>]) -> Result<HBlock<f64>> {
        let on = self.orthonormalize(vs)?;
        if on.iter().any(|(_, s)| *s < 0.0) {
            return Err(Error::DefectiveAmbiguity("timelike vector in a spacelike eigenspace".into()));
        }
        Ok(HBlock {
            alpha,
            basis: on.into_iter().map(|(v, _)| v).collect(),
        })
    }

    /// Picks the vector of `space` maximizing |N^k v|.
    fn best(&self, n: &Matrix<f64>, k: usize, space: &[Vec<f64>]) -> Vec<f64> {
        let nk = Self::power(n, k);
        space
            .iter()
            .max_by(|x, y| {
                let fx = nk.mul_vec(x).iter().map(|t| t.abs()).fold(0.0, f64::max);
                let fy = nk.mul_vec(y).iter().map(|t| t.abs()).fold(0.0, f64::max);
                fx.total_cmp(&fy)
            })
            .cloned()
            .unwrap_or_default()
    }

    /// Removes the components along a G-orthonormal spacelike family.
    fn project_out(&self, v: &[f64], family: &[Vec<f64>]) -> Vec<f64> {
        family.iter().fold(v.to_vec(), |acc, k| axpy(&-self.ip(&acc, k), k, &acc))
    }

    /// Spacelike part of ker N: vectors of ker N orthogonal to `ebar`.
    fn kernel_complement(&self, eig: &Eigen, ebar: &[f64], e: &[f64]) -> Result<Vec<Vec<f64>>> {
        let ker = self.kernel(eig, 1);
        // remove the e direction: v ↦ v − ⟨v,ē⟩ e keeps v in ker N and makes it ⟂ ē
        let mut vs: Vec<Vec<f64>> = ker.iter().map(|v| axpy(&-self.ip(v, ebar), e, v)).collect();
        // drop the dependent vector (the one that collapsed onto 0)
        let target = ker.len() - 1;
        vs.sort_by(|x, y| {
            let nx = x.iter().map(|t| t.abs()).fold(0.0, f64::max);
            let ny = y.iter().map(|t| t.abs()).fold(0.0, f64::max);
            ny.total_cmp(&nx)
        });
        let m = Matrix::from_columns(&vs)?;
        let basis = independent_columns(&m, target);
        let block = self.spacelike_block(eig.value, &basis)?;
        Ok(block.basis)
    }
}

/// A maximal independent subset of columns of size `want` (float, Gram–Schmidt on Euclidean norm).
fn independent_columns(m: &Matrix<f64>, want: usize) -> Vec<Vec<f64>> {
    let mut chosen: Vec<Vec<f64>> = Vec::new();
    let mut ortho: Vec<Vec<f64>> = Vec::new();
    let scale = m.max_abs_f64().max(1e-300);
    for j in 0..m.cols() {
        if chosen.len() == want {
            break;
        }
        let c = m.column(j);
        let mut r = c.clone();
        for o in &ortho {
            r = axpy(&-dot(&r, o), o, &r);
        }
        let nr = dot(&r, &r).sqrt();
        if nr > 1e-6 * scale {
            ortho.push(scale_vec(&(1.0 / nr), &r));
            chosen.push(c);
        }
    }
    chosen
}

/// Classifies a metric-self-adjoint operator on a Lorentzian space.
pub fn classify_symmetric_operator<T: Field>(
    a: &Matrix<T>,
    g: &BilinearForm<T>,
    tol: &Tolerance,
) -> Result<OperatorClassification> {
    let n = g.dim();
    if a.rows() != n || a.cols() != n {
        return Err(Error::DimensionMismatch(format!("operator is {}x{}, metric is {n}x{n}", a.rows(), a.cols())));
    }
    if n < 3 {
        return Err(Error::BadParam("classification needs dimension at least 3".into()));
    }
    let d = g.self_adjoint_defect(a);
    if !d.negligible(tol.bound(1.0 + g.matrix().max_abs_f64() * a.max_abs_f64())) {
        return Err(Error::NotSelfAdjoint(d.to_f64()));
    }
    let (p, q) = g.signature(tol);
    if (p, q) != (n - 1, 1) {
        return Err(Error::NotLorentzian { p, q });
    }
    let exact: Option<Matrix<Rational>> = match T::BACKEND {
        Backend::Exact => Some(a.map(|x| match x.to_scalar() {
            Scalar::Exact(r) => r,
            Scalar::Float(_) => unreachable!("exact backend"),
        })),
        Backend::Float => None,
    };
    let af = a.to_f64();
    let gf = g.matrix().to_f64();
    let spectrum = match &exact {
        Some(ea) => exact_spectrum(ea)?,
        None => float_spectrum(&af)?,
    };
    let ctx = Ctx {
        scale: 1.0 + inf_norm(&af),
        af,
        gf: &gf,
        exact,
    };

    // defect = algebraic − geometric multiplicity
    let mut defective: Option<(Eigen, usize)> = None;
    let mut plain: Vec<Eigen> = Vec::new();
    for eig in &spectrum.real {
        let geo = ctx.geometric(eig);
        if geo > eig.alg || geo == 0 {
            return Err(Error::DefectiveAmbiguity(format!("eigenvalue {} has unstable multiplicities", eig.value)));
        }
        let def = eig.alg - geo;
        if def == 0 {
            plain.push(eig.clone());
        } else if defective.is_some() || def > 2 || spectrum.complex.is_some() {
            return Err(Error::DefectiveAmbiguity(
                "Jordan structure incompatible with a Lorentzian metric".into(),
            ));
        } else {
            defective = Some((eig.clone(), def));
        }
    }

    let mut h_blocks: Vec<HBlock<f64>> = Vec::new();
    let mut alphas: Vec<Scalar> = Vec::new();
    let to_scalar = |e: &Eigen| match &e.exact {
        Some(r) => Scalar::Exact(r.clone()),
        None => Scalar::Float(e.value),
    };
    let mut timelike_block: Option<HBlock<f64>> = None;
    for eig in &plain {
        let ker = ctx.kernel(eig, 1);
        alphas.extend(std::iter::repeat_n(to_scalar(eig), eig.alg));
        if spectrum.complex.is_none() && defective.is_none() {
            let on = ctx.orthonormalize(&ker)?;
            let block = HBlock {
                alpha: eig.value,
                basis: on.iter().map(|(v, _)| v.clone()).collect(),
            };
            if on.iter().any(|(_, s)| *s < 0.0) {
                timelike_block = Some(block);
            } else {
                h_blocks.push(block);
            }
        } else {
            h_blocks.push(ctx.spacelike_block(eig.value, &ker)?);
        }
    }

    let mut a_out = None;
    let mut b_out = None;
    let mut b2_out = None;
    let mut sign_out = None;
    let l_part = if let Some((re, b2, ea, eb2)) = &spectrum.complex {
        let b = b2.sqrt();
        a_out = Some(ea.clone().map_or(Scalar::Float(*re), Scalar::Exact));
        b2_out = Some(eb2.clone().map_or(Scalar::Float(*b2), Scalar::Exact));
        // invariant plane: ker((A − a)² + b²)
        let plane = match (&ctx.exact, ea, eb2) {
            (Some(m), Some(a), Some(b2)) => {
                let s = m.sub(&Matrix::identity(n).scale(a));
                let mm = s.mul(&s).add(&Matrix::identity(n).scale(b2));
                mm.nullspace(0.0).iter().map(|v| v.iter().map(|x| x.to_f64()).collect()).collect()
            }
            _ => {
                let s = ctx.shifted(*re);
                let mm = s.mul(&s).add(&Matrix::identity(n).scale(b2));
                numeric::nullspace(&mm, RANK_CUTOFF * ctx.scale * ctx.scale)
            }
        };
        if plane.len() != 2 {
            return Err(Error::DefectiveAmbiguity("complex pair without a 2-plane".into()));
        }
        let (mut n1, mut n2) = null_pair(&ctx, &plane[0], &plane[1])?;
        // A restricted to the plane in the basis (n1, n2): [[p, q], [r, p]]
        let (an1, an2) = (ctx.af.mul_vec(&n1), ctx.af.mul_vec(&n2));
        let (q, r) = (ctx.ip(&an2, &n2), ctx.ip(&an1, &n1));
        // orientation with r < 0 gives b > 0
        let r = if r > 0.0 {
            std::mem::swap(&mut n1, &mut n2);
            q
        } else {
            r
        };
        let t = (b / -r).sqrt();
        b_out = Some(b);
        Some(NullPart::ZZbar {
            e: scale_vec(&t, &n1),
            ebar: scale_vec(&(1.0 / t), &n2),
            a: *re,
            b,
        })
    } else if let Some((eig, def)) = &defective {
        let a = eig.value;
        a_out = Some(to_scalar(eig));
        let nmat = ctx.shifted(a);
        let gen = ctx.generalized(eig);
        if gen.len() != eig.alg {
            return Err(Error::DefectiveAmbiguity(format!("generalized eigenspace of {a} has the wrong dimension")));
        }
        let w = ctx.best(&nmat, *def, &gen);
        let nd = Ctx::power(&nmat, *def);
        let c = ctx.ip(&nd.mul_vec(&w), &w);
        if c.abs() <= RANK_CUTOFF * ctx.scale {
            return Err(Error::DefectiveAmbiguity("null Jordan chain is numerically degenerate".into()));
        }
        let part = if *def == 1 {
            let sign: i8 = if c > 0.0 { 1 } else { -1 };
            let ebar1 = scale_vec(&(1.0 / c.abs().sqrt()), &w);
            let e = scale_vec(&(sign as f64), &nmat.mul_vec(&ebar1));
            let kk = ctx.kernel_complement(eig, &ebar1, &e)?;
            let ebar2 = ctx.project_out(&ebar1, &kk);
            let ebar = axpy(&(-ctx.ip(&ebar2, &ebar2) / 2.0), &e, &ebar2);
            if !kk.is_empty() {
                h_blocks.push(HBlock { alpha: a, basis: kk.clone() });
                alphas.extend(std::iter::repeat_n(to_scalar(eig), kk.len()));
            }
            sign_out = Some(sign);
            NullPart::A2 { e, ebar, a, sign }
        } else {
            if c < 0.0 {
                return Err(Error::DefectiveAmbiguity("Jordan chain of length 3 with negative norm".into()));
            }
            let ebar1 = scale_vec(&(1.0 / c.sqrt()), &w);
            let f1 = nmat.mul_vec(&ebar1);
            let e = nmat.mul_vec(&f1);
            let kk = ctx.kernel_complement(eig, &ebar1, &e)?;
            let ebar2 = ctx.project_out(&ebar1, &kk);
            let q = -ctx.ip(&f1, &ebar2) / 2.0;
            let p = -(ctx.ip(&ebar2, &ebar2) + 2.0 * q * ctx.ip(&ebar2, &f1) + q * q) / 2.0;
            let ebar = axpy(&p, &e, &axpy(&q, &f1, &ebar2));
            let f = axpy(&q, &e, &f1);
            if !kk.is_empty() {
                h_blocks.push(HBlock { alpha: a, basis: kk.clone() });
                alphas.extend(std::iter::repeat_n(to_scalar(eig), kk.len()));
            }
            NullPart::A3 { e, f, ebar, a }
        };
        Some(part)
    } else {
        None
    };
    if l_part.is_none() {
        match timelike_block {
            Some(b) => h_blocks.push(b),
            None => return Err(Error::DefectiveAmbiguity("no timelike eigenvector found".into())),
        }
    }
    h_blocks[..].sort_by(|x, y| {
        // keep a block holding the timelike vector at the end
        let tx = l_part.is_none() && ctx.ip(x.basis.last().unwrap(), x.basis.last().unwrap()) < 0.0;
        let ty = l_part.is_none() && ctx.ip(y.basis.last().unwrap(), y.basis.last().unwrap()) < 0.0;
        tx.cmp(&ty).then(x.alpha.total_cmp(&y.alpha))
    });
    alphas.sort_by(|x, y| x.to_f64().total_cmp(&y.to_f64()));
    let decomposition = SplitDecomposition { h_blocks, l_part };
    let basis = Matrix::from_columns(&decomposition.vectors())?;
    let basis_change = basis
        .inverse()
        .ok_or_else(|| Error::DefectiveAmbiguity("canonical vectors are dependent".into()))?;
    let type_tag = decomposition.type_tag();
    Ok(OperatorClassification {
        type_tag,
        backend: T::BACKEND,
        alphas,
        a: a_out,
        b: b_out,
        b_squared: b2_out,
        a2_sign: sign_out,
        decomposition,
        basis,
        basis_change,
    })
}

/// Null vectors n1, n2 of a Lorentzian plane with ⟨n1,n2⟩ = 1.
fn null_pair(ctx: &Ctx<'_>, p1: &[f64], p2: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    let (g11, g12, g22) = (ctx.ip(p1, p1), ctx.ip(p1, p2), ctx.ip(p2, p2));
    let disc = g12 * g12 - g11 * g22;
    if disc <= 0.0 {
        return Err(Error::DefectiveAmbiguity("invariant plane is not Lorentzian".into()));
    }
    // null directions x p1 + y p2 with g11 x² + 2 g12 x y + g22 y² = 0
    // roots x/y = qq/g11 = g22/qq, taken homogeneously so that null p1 or p2 is fine
    let s = disc.sqrt();
    let qq = -(g12 + g12.signum() * s);
    let (u, v) = (
        axpy(&qq, p1, &scale_vec(&g11, p2)),
        axpy(&g22, p1, &scale_vec(&qq, p2)),
    );
    let c = ctx.ip(&u, &v);
    if c.abs() < 1e-300 {
        return Err(Error::DefectiveAmbiguity("null directions coincide".into()));
    }
    Ok((u, scale_vec(&(1.0 / c), &v)))
}

/// The split decomposition carried by a classification.
pub fn decomposition_from_classification(c: &OperatorClassification) -> SplitDecomposition<f64> {
    c.decomposition.clone()
}

/// Classifies the Ricci operator of a Lorentzian metric Lie algebra.
pub fn ricci_type<T: Field>(
    g: &PseudoEuclideanLieAlgebra<T>,
    tol: &Tolerance,
) -> Result<(OperatorClassification, SplitDecomposition<f64>)> {
    let (p, q) = g.signature(tol);
    if q != 1 || p + q != g.dim() {
        return Err(Error::NotLorentzian { p, q });
    }
    let (_, r) = ricci(g)?;
    let c = classify_symmetric_operator(&r.operator, g.metric(), tol)?;
    let d = decomposition_from_classification(&c);
    Ok((c, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lorentz(n: usize) -> BilinearForm<f64> {
        let mut d = vec![1.0; n];
        d[n - 1] = -1.0;
        BilinearForm::diagonal(&d)
    }

    #[test]
    fn diagonal_input() {
        let a = Matrix::diagonal(&[1.0, 2.0, 3.0]);
        let c = classify_symmetric_operator(&a, &lorentz(3), &Tolerance::default()).unwrap();
        assert_eq!(c.type_tag, TypeTag::Diag);
        assert_eq!(c.alphas_f64(), vec![1.0, 2.0, 3.0]);
        assert!(c.reconstruction_residual(&a) < 1e-12);
        assert!(c.metric_residual(&lorentz(3).matrix().clone()) < 1e-12);
    }

    #[test]
    fn canonical_a3() {
        let g = Matrix::from_rows(vec![
            vec![1.0, 0.0, 0.0, 0.0],
            vec![0.0, 0.0, 0.0, 1.0],
            vec![0.0, 0.0, 1.0, 0.0],
            vec![0.0, 1.0, 0.0, 0.0],
        ])
        .unwrap();
        let a = Matrix::from_rows(vec![
            vec![5.0, 0.0, 0.0, 0.0],
            vec![0.0, 0.0, 1.0, 0.0],
            vec![0.0, 0.0, 0.0, 1.0],
            vec![0.0, 0.0, 0.0, 0.0],
        ])
        .unwrap();
        let form = BilinearForm::new(g.clone(), &Tolerance::default()).unwrap();
        let c = classify_symmetric_operator(&a, &form, &Tolerance::default()).unwrap();
        assert_eq!(c.type_tag, TypeTag::A3);
        assert_eq!(c.a_f64(), Some(0.0));
        assert!(c.reconstruction_residual(&a) < 1e-12);
        assert!(c.metric_residual(&g) < 1e-12);
    }

    #[test]
    fn complex_pair_on_a_null_frame() {
        // the plane basis returned by the kernel can itself be null
        let g = Matrix::from_rows(vec![vec![0.0, 1.0, 0.0], vec![1.0, 0.0, 0.0], vec![0.0, 0.0, 1.0]]).unwrap();
        let s = 3f64.sqrt();
        let a = Matrix::from_rows(vec![vec![1.0, s, 0.0], vec![-s, 1.0, 0.0], vec![0.0, 0.0, -2.0]]).unwrap();
        let form = BilinearForm::new(g.clone(), &Tolerance::default()).unwrap();
        let c = classify_symmetric_operator(&a, &form, &Tolerance::default()).unwrap();
        assert_eq!(c.type_tag, TypeTag::ZZbar);
        assert!((c.b.unwrap() - s).abs() < 1e-12);
        assert!(c.reconstruction_residual(&a) < 1e-12);
        assert!(c.metric_residual(&g) < 1e-12);
    }

    #[test]
    fn exact_rejects_irrational_real_eigenvalues() {
        let r = |n| Rational::from_i64(n);
        let a = Matrix::from_rows(vec![vec![r(0), r(2), r(0)], vec![r(1), r(0), r(0)], vec![r(0), r(0), r(0)]]).unwrap();
        let g = BilinearForm::diagonal(&[r(1), r(2), r(-1)]);
        let err = classify_symmetric_operator(&a, &g, &Tolerance::default()).unwrap_err();
        assert_eq!(err.code(), "EXACT_UNSUPPORTED");
    }

    #[test]
    fn euclidean_is_rejected() {
        let g = BilinearForm::identity(3);
        let err = classify_symmetric_operator(&Matrix::<f64>::identity(3), &g, &Tolerance::default()).unwrap_err();
        assert_eq!(err.code(), "NOT_LORENTZIAN");
    }
}
