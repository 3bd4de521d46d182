//! Small fixed set of metric Lie algebras used by `selftest` and the test suites.

use crate::error::Result;
use crate::families::{
    a2_example, a3_example, build_zz_product, example_5d, example_6d, sl2_harmonic, two_dim_nonunimodular, zz_core, RootSign,
    ZZCoreParams,
};
use crate::forms::BilinearForm;
use crate::liealg::{LieAlgebra, PseudoEuclideanLieAlgebra};
use crate::scalar::{Field, Rational, Tolerance};

#[derive(Debug, Clone)]
pub enum Fixture {
    Exact(PseudoEuclideanLieAlgebra<Rational>),
    Float(PseudoEuclideanLieAlgebra<f64>),
}

impl Fixture {
    pub fn dim(&self) -> usize {
        match self {
            Fixture::Exact(g) => g.dim(),
            Fixture::Float(g) => g.dim(),
        }
    }

    pub fn to_f64(&self) -> PseudoEuclideanLieAlgebra<f64> {
        match self {
            Fixture::Exact(g) => g.to_f64(),
            Fixture::Float(g) => g.clone(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Entry {
    pub name: &'static str,
    pub fixture: Fixture,
}

fn names(n: &[&str]) -> Vec<String> {
    n.iter().map(|s| s.to_string()).collect()
}

fn three<T: Field>(brackets: &[(usize, usize, [i64; 3])], metric: [i64; 3]) -> Result<PseudoEuclideanLieAlgebra<T>> {
    let b: Vec<(usize, usize, Vec<T>)> = brackets
        .iter()
        .map(|(i, j, v)| (*i, *j, v.iter().map(|&c| T::from_i64(c)).collect()))
        .collect();
    let alg = LieAlgebra::from_brackets(names(&["e1", "e2", "e3"]), &b)?;
    let m: Vec<T> = metric.iter().map(|&c| T::from_i64(c)).collect();
    PseudoEuclideanLieAlgebra::new(alg, BilinearForm::diagonal(&m), &Tolerance::default())
}

pub fn abelian_lorentzian() -> Result<PseudoEuclideanLieAlgebra<Rational>> {
    three(&[], [1, 1, -1])
}

/// [e1,e2] = e3 with the given diagonal metric.
pub fn heisenberg(metric: [i64; 3]) -> Result<PseudoEuclideanLieAlgebra<Rational>> {
    three(&[(0, 1, [0, 0, 1])], metric)
}

/// so(3) with its bi-invariant Euclidean metric.
pub fn so3() -> Result<PseudoEuclideanLieAlgebra<Rational>> {
    three(&[(0, 1, [0, 0, 1]), (1, 2, [1, 0, 0]), (2, 0, [0, 1, 0])], [1, 1, 1])
}

/// [e3,e1] = e1, [e3,e2] = −e2 with the given diagonal metric.
pub fn e11(metric: [i64; 3]) -> Result<PseudoEuclideanLieAlgebra<Rational>> {
    three(&[(2, 0, [1, 0, 0]), (2, 1, [0, -1, 0])], metric)
}

/// sl(2,ℝ) ⊕ 𝔥 with 𝔥 the (−1)-Einstein plane [H,e1] = e1.
pub fn zz_product_5d() -> Result<PseudoEuclideanLieAlgebra<Rational>> {
    let one = Rational::from_i64(1);
    let h = two_dim_nonunimodular(&one, &one)?;
    Ok(build_zz_product(&-one, &h)?.algebra)
}

pub fn catalog() -> Result<Vec<Entry>> {
    let exact = |name, g| Entry {
        name,
        fixture: Fixture::Exact(g),
    };
    let float = |name, g| Entry {
        name,
        fixture: Fixture::Float(g),
    };
    Ok(vec![
        exact("abelian-r3-lorentzian", abelian_lorentzian()?),
        exact("heisenberg-euclidean", heisenberg([1, 1, 1])?),
        exact("heisenberg-lorentzian", heisenberg([1, -1, 1])?),
        exact("so3", so3()?),
        exact("sl2-harmonic", sl2_harmonic(&Rational::from_i64(-1))?),
        exact("e11-euclidean", e11([1, 1, 1])?),
        exact("e11-lorentzian", e11([1, 1, -1])?),
        exact("zz-product-5d", zz_product_5d()?),
        float("zz-core-plus", zz_core(ZZCoreParams::new(-2.0, 1)?)?.algebra),
        float("zz-core-minus", zz_core(ZZCoreParams::new(-1.0, -1)?)?.algebra),
        float("a2-instance", a2_example()?.algebra),
        float("a3-instance", a3_example(RootSign::Plus, 0.0)?.algebra),
        float("example-5d-plus", example_5d(RootSign::Plus)?.family.algebra),
        float("example-6d-minus", example_6d(RootSign::Minus, 1.0)?.family.algebra),
    ])
}
