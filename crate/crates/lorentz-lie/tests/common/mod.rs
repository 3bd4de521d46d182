#![allow(dead_code)]

use lorentz_lie::decomposition::TypeTag;
use lorentz_lie::matrix::Matrix;
use rand::Rng;

/// A random canonical pair (Â, Ĝ) with the given type in dimension n.
pub struct Canonical {
    pub tag: TypeTag,
    pub a_hat: Matrix<f64>,
    pub g_hat: Matrix<f64>,
    pub alphas: Vec<f64>,
    pub a: Option<f64>,
    pub b: Option<f64>,
}

fn spread<R: Rng>(rng: &mut R, k: usize, avoid: &[f64]) -> Vec<f64> {
    // values at least 0.05 apart from each other and from `avoid`
    let mut out: Vec<f64> = Vec::new();
    while out.len() < k {
        let x: f64 = rng.gen_range(-3.0..3.0);
        let x = (x * 20.0).round() / 20.0;
        if out.iter().chain(avoid).all(|y| (x - y).abs() > 0.04) || (rng.gen_bool(0.3) && avoid.iter().all(|y| (x - y).abs() > 0.04)) {
            out.push(x);
        }
    }
    out
}

pub fn canonical<R: Rng>(rng: &mut R, tag: TypeTag, n: usize) -> Canonical {
    let null = match tag {
        TypeTag::Diag => 0,
        TypeTag::ZZbar | TypeTag::A2 => 2,
        TypeTag::A3 => 3,
    };
    let m = n - null;
    let mut a_hat = Matrix::zeros(n, n);
    let mut g_hat = Matrix::identity(n);
    let mut a = None;
    let mut b = None;
    let center = (rng.gen_range(-3.0f64..3.0) * 20.0).round() / 20.0;
    let alphas = match tag {
        TypeTag::Diag => spread(rng, n, &[]),
        TypeTag::ZZbar => spread(rng, m, &[]),
        _ => spread(rng, m, &[center]),
    };
    for (i, x) in alphas.iter().enumerate() {
        a_hat[(i, i)] = *x;
    }
    match tag {
        TypeTag::Diag => g_hat[(n - 1, n - 1)] = -1.0,
        TypeTag::ZZbar => {
            let bb = (rng.gen_range(0.2f64..3.0) * 20.0).round() / 20.0;
            a_hat[(m, m)] = center;
            a_hat[(m + 1, m + 1)] = center;
            a_hat[(m, m + 1)] = bb;
            a_hat[(m + 1, m)] = -bb;
            a = Some(center);
            b = Some(bb);
        }
        TypeTag::A2 => {
            a_hat[(m, m)] = center;
            a_hat[(m + 1, m + 1)] = center;
            a_hat[(m, m + 1)] = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            a = Some(center);
        }
        TypeTag::A3 => {
            for k in 0..3 {
                a_hat[(m + k, m + k)] = center;
            }
            a_hat[(m, m + 1)] = 1.0;
            a_hat[(m + 1, m + 2)] = 1.0;
            a = Some(center);
        }
    }
    if null > 0 {
        for i in m..n {
            g_hat[(i, i)] = 0.0;
        }
        g_hat[(m, n - 1)] = 1.0;
        g_hat[(n - 1, m)] = 1.0;
        if null == 3 {
            g_hat[(m + 1, m + 1)] = 1.0;
        }
    }
    let mut alphas = alphas;
    alphas.sort_by(f64::total_cmp);
    Canonical { tag, a_hat, g_hat, alphas, a, b }
}

/// A random Ĝ-orthogonal matrix: a product of Cayley transforms.
pub fn random_isometry<R: Rng>(rng: &mut R, g_hat: &Matrix<f64>, steps: usize, size: f64) -> Matrix<f64> {
    let n = g_hat.rows();
    let g_inv = g_hat.inverse().expect("nondegenerate");
    let mut q = Matrix::identity(n);
    for _ in 0..steps {
        let mut k = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i + 1..n {
                let x: f64 = rng.gen_range(-size..size);
                k[(i, j)] = x;
                k[(j, i)] = -x;
            }
        }
        let s = g_inv.mul(&k);
        let id = Matrix::identity(n);
        let c = id.sub(&s).inverse().expect("Cayley").mul(&id.add(&s));
        q = c.mul(&q);
    }
    q
}

/// Like [`random_isometry`], redrawn until ‖Q‖∞‖Q⁻¹‖∞ ≤ max_cond.
pub fn bounded_isometry<R: Rng>(rng: &mut R, g_hat: &Matrix<f64>, max_cond: f64) -> Matrix<f64> {
    loop {
        let q = random_isometry(rng, g_hat, 2, 0.6);
        let qi = q.inverse().expect("isometry");
        if q.max_abs_f64() * qi.max_abs_f64() <= max_cond {
            return q;
        }
    }
}

/// Symmetric random perturbation direction that is self-adjoint for g.
pub fn random_self_adjoint<R: Rng>(rng: &mut R, g: &Matrix<f64>) -> Matrix<f64> {
    let n = g.rows();
    let mut s = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let x: f64 = rng.gen_range(-1.0..1.0);
            s[(i, j)] = x;
            s[(j, i)] = x;
        }
    }
    g.inverse().expect("nondegenerate").mul(&s)
}
