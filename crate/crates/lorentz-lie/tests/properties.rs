use lorentz_lie::catalog::{e11, heisenberg, so3};
use lorentz_lie::classify::classify_symmetric_operator;
use lorentz_lie::codazzi::{codazzi_defect, codazzi_defect_bracket};
use lorentz_lie::forms::BilinearForm;
use lorentz_lie::geometry::{compatibility_defect, levi_civita, ricci, ricci_structural, torsion_defect};
use lorentz_lie::liealg::PseudoEuclideanLieAlgebra;
use lorentz_lie::matrix::Matrix;
use lorentz_lie::scalar::{Field, Rational, Tolerance};
use num_traits::Zero;
use proptest::prelude::*;

fn r(n: i64) -> Rational {
    Rational::from_i64(n)
}

fn base(which: usize) -> PseudoEuclideanLieAlgebra<Rational> {
    match which {
        0 => heisenberg([1, 1, 1]).unwrap(),
        1 => so3().unwrap(),
        _ => e11([1, 1, -1]).unwrap(),
    }
}

/// PᵀDP for an invertible integer P and a diagonal D of the given signs.
fn congruent(p: &[i64], signs: [i64; 3]) -> Option<Matrix<Rational>> {
    let pm = Matrix::from_fn(3, 3, |i, j| r(p[3 * i + j]));
    if pm.determinant().is_zero() {
        return None;
    }
    let d = Matrix::diagonal(&signs.map(r));
    Some(pm.transpose().mul(&d).mul(&pm))
}

fn metric_algebra(which: usize, p: &[i64], signs: [i64; 3]) -> Option<PseudoEuclideanLieAlgebra<Rational>> {
    let g = congruent(p, signs)?;
    let tol = Tolerance::default();
    PseudoEuclideanLieAlgebra::new(base(which).algebra().clone(), BilinearForm::new(g, &tol).ok()?, &tol).ok()
}

fn signs() -> impl Strategy<Value = [i64; 3]> {
    prop_oneof![Just([1, 1, 1]), Just([1, 1, -1]), Just([1, -1, -1])]
}

fn symmetric() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..=3, 6)
}

fn sym_matrix(v: &[i64]) -> Matrix<Rational> {
    let idx = |i: usize, j: usize| {
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        a * (5 - a) / 2 + b
    };
    Matrix::from_fn(3, 3, |i, j| r(v[idx(i, j)]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn levi_civita_is_torsion_free_and_metric(which in 0usize..3, p in prop::collection::vec(-2i64..=2, 9), s in signs()) {
        if let Some(g) = metric_algebra(which, &p, s) {
            let lc = levi_civita(&g).unwrap();
            prop_assert!(torsion_defect(&g, &lc).is_zero());
            prop_assert!(compatibility_defect(&g, &lc).is_zero());
        }
    }

    #[test]
    fn ricci_is_self_adjoint_and_matches_structural(which in 0usize..3, p in prop::collection::vec(-2i64..=2, 9), s in signs()) {
        if let Some(g) = metric_algebra(which, &p, s) {
            let (_, ric) = ricci(&g).unwrap();
            prop_assert!(g.metric().self_adjoint_defect(&ric.operator).is_zero());
            let st = ricci_structural(&g, &Tolerance::default()).unwrap();
            prop_assert_eq!(ric.operator, st.operator);
        }
    }

    #[test]
    fn signature_is_a_congruence_invariant(p in prop::collection::vec(-3i64..=3, 9), s in signs()) {
        if let Some(g) = congruent(&p, s) {
            let form = BilinearForm::new(g, &Tolerance::default()).unwrap();
            let q = s.iter().filter(|&&x| x < 0).count();
            prop_assert_eq!(form.signature(&Tolerance::default()), (3 - q, q));
        }
    }

    #[test]
    fn formulations_agree(which in 0usize..3, p in prop::collection::vec(-2i64..=2, 9), s in signs(), v in symmetric()) {
        if let Some(g) = metric_algebra(which, &p, s) {
            let a = g.metric().inverse().unwrap().mul(&sym_matrix(&v));
            let tol = Tolerance::default();
            let d = codazzi_defect(&g, &a, &tol).unwrap();
            let b = codazzi_defect_bracket(&g, &a, &tol).unwrap();
            prop_assert_eq!(d.is_codazzi, b.is_codazzi);
        }
    }

    #[test]
    fn adding_a_multiple_of_the_identity(which in 0usize..3, p in prop::collection::vec(-2i64..=2, 9), s in signs(), v in symmetric(), l in -5i64..=5) {
        if let Some(g) = metric_algebra(which, &p, s) {
            let a = g.metric().inverse().unwrap().mul(&sym_matrix(&v));
            let shifted = a.add(&Matrix::identity(3).scale(&r(l)));
            let tol = Tolerance::default();
            prop_assert_eq!(
                codazzi_defect(&g, &a, &tol).unwrap().defect,
                codazzi_defect(&g, &shifted, &tol).unwrap().defect
            );
        }
    }

    #[test]
    fn classification_shifts_with_the_operator(p in prop::collection::vec(-2i64..=2, 9), v in symmetric(), l in -5i64..=5) {
        let Some(gm) = congruent(&p, [1, 1, -1]) else { return Ok(()) };
        let tol = Tolerance::default();
        let form = BilinearForm::new(gm.to_f64(), &tol).unwrap();
        let a = gm.inverse().unwrap().mul(&sym_matrix(&v)).to_f64();
        let shifted = a.add(&Matrix::identity(3).scale(&(l as f64)));
        if let (Ok(c0), Ok(c1)) = (classify_symmetric_operator(&a, &form, &tol), classify_symmetric_operator(&shifted, &form, &tol)) {
            prop_assert_eq!(c0.type_tag, c1.type_tag);
            let scale = 1.0 + a.max_abs_f64();
            for (x, y) in c0.alphas_f64().iter().zip(c1.alphas_f64()) {
                prop_assert!((x + l as f64 - y).abs() <= 1e-6 * scale);
            }
            if let (Some(x), Some(y)) = (c0.a_f64(), c1.a_f64()) {
                prop_assert!((x + l as f64 - y).abs() <= 1e-6 * scale);
            }
        }
    }
}
