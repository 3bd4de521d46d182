use lorentz_lie::codazzi::{check_type_conditions, has_harmonic_curvature, System};
use lorentz_lie::decomposition::SplitDecomposition;
use lorentz_lie::families::*;
use lorentz_lie::geometry::{is_ricci_parallel, ricci, ricci_derivative_expansion};
use lorentz_lie::forms::BilinearForm;
use lorentz_lie::liealg::{LieAlgebra, PseudoEuclideanLieAlgebra};
use lorentz_lie::matrix::{basis_vector, Matrix};
use lorentz_lie::scalar::{Field, Rational, Tolerance};

fn tol() -> Tolerance {
    Tolerance::default()
}

/// Every family property shared by all constructors.
fn assert_family(g: &PseudoEuclideanLieAlgebra<f64>, d: &SplitDecomposition<f64>) {
    let t = tol();
    assert!(g.algebra().jacobi_defect() < 1e-9, "jacobi {}", g.algebra().jacobi_defect());
    d.validate(g, &t).unwrap();
    let (_, r) = ricci(g).unwrap();
    let diff = d.operator().unwrap().sub(&r.operator).max_abs();
    assert!(diff < 1e-9, "Ricci differs from the expected decomposition by {diff:e}\n{}", r.operator);
    assert!(has_harmonic_curvature(g, &t).unwrap().is_codazzi);
    assert!(!is_ricci_parallel(g, &t).unwrap().is_parallel);
    for s in [System::Raw, System::Solved] {
        let rep = check_type_conditions(g, d, s, &t).unwrap();
        assert!(rep.overall, "{s}: {:?}", rep.failed().collect::<Vec<_>>());
    }
}

#[test]
fn sl2_ricci_is_exact() {
    for al in [-1, -3, -7] {
        let a = Rational::from_i64(al);
        let g = sl2_harmonic(&a).unwrap();
        let (_, r) = ricci(&g).unwrap();
        let z = Rational::from_i64(0);
        let expected = Matrix::from_rows(vec![
            vec![z.clone(), z.clone(), -a.clone()],
            vec![z.clone(), a.clone(), z.clone()],
            vec![a.clone(), z, -a.clone()],
        ])
        .unwrap();
        assert_eq!(r.operator, expected);
    }
}

#[test]
fn zz_product_without_h_is_sl2() {
    let zero = PseudoEuclideanLieAlgebra::new(LieAlgebra::abelian(0), BilinearForm::identity(0), &tol()).unwrap();
    let f = build_zz_product(&-2.0, &zero).unwrap();
    assert_eq!(f.algebra, sl2_harmonic(&-2.0).unwrap());
    assert_family(&f.algebra, &f.decomposition);
}

#[test]
fn zz_product_with_hyperbolic_plane() {
    // [H,e1] = e1 with G = Id is (−1)-Einstein; rescaling G by c gives −1/c
    for (al, c) in [(-1.0, 1.0), (-0.5, 2.0), (-4.0, 0.25)] {
        let h = two_dim_nonunimodular(&1.0, &c).unwrap();
        let h = PseudoEuclideanLieAlgebra::new(
            h.algebra().clone(),
            BilinearForm::diagonal(&[c, c]),
            &tol(),
        )
        .unwrap();
        let f = build_zz_product(&al, &h).unwrap();
        assert_eq!(f.algebra.dim(), 5);
        assert_family(&f.algebra, &f.decomposition);
    }
}

#[test]
fn zz_product_exact() {
    let one = Rational::from_i64(1);
    let h = two_dim_nonunimodular(&one, &one).unwrap();
    let f = build_zz_product(&-one.clone(), &h).unwrap();
    let t = tol();
    assert!(has_harmonic_curvature(&f.algebra, &t).unwrap().defect == Rational::from_i64(0));
    assert_family(&f.algebra.to_f64(), &f.decomposition);
}

#[test]
fn zz_product_rejects_non_einstein() {
    let h = two_dim_nonunimodular(&1.0, &1.0).unwrap();
    assert_eq!(build_zz_product(&-2.0, &h).unwrap_err().code(), "NOT_EINSTEIN");
}

#[test]
fn zz_core_both_orientations() {
    for eps in [1, -1] {
        for al in [-1.0, -2.5] {
            let f = zz_core(ZZCoreParams::new(al, eps).unwrap()).unwrap();
            assert_family(&f.algebra, &f.decomposition);
        }
    }
}

#[test]
fn zz_core_frame_gives_sl2() {
    for eps in [1i8, -1] {
        let al = -1.5;
        let p = ZZCoreParams::new(al, eps).unwrap();
        let g = zz_core(p).unwrap().algebra;
        let w = zz_core_sl2_frame(p);
        let f: Vec<Vec<f64>> = (0..3).map(|i| w.column(i)).collect();
        let close = |u: &[f64], v: &[f64]| u.iter().zip(v).all(|(a, b)| (a - b).abs() < 1e-12);
        let two = |v: &[f64]| v.iter().map(|x| 2.0 * x).collect::<Vec<_>>();
        assert!(close(&g.bracket(&f[0], &f[1]), &two(&f[2])));
        assert!(close(&g.bracket(&f[2], &f[0]), &two(&f[1])));
        assert!(close(&g.bracket(&f[2], &f[1]), &two(&f[0])));
        let gram = g.metric().gram(&f);
        let c = -8.0 / al;
        let expected = if eps > 0 {
            [[c, 0.0, -c], [0.0, c, 0.0], [-c, 0.0, 0.0]]
        } else {
            [[0.0, 0.0, c], [0.0, c, 0.0], [c, 0.0, -c]]
        };
        for i in 0..3 {
            for j in 0..3 {
                assert!((gram[(i, j)] - expected[i][j]).abs() < 1e-12, "eps {eps} ({i},{j})");
            }
        }
    }
}

#[test]
fn automorphism_q_relates_the_two_metrics() {
    let s = 3f64.sqrt() / 3.0;
    let q = Matrix::from_rows(vec![vec![-2.0 * s, 0.0, s], vec![0.0, -1.0, 0.0], vec![-s, 0.0, 2.0 * s]]).unwrap();
    let g1 = Matrix::from_rows(vec![vec![1.0, 0.0, -1.0], vec![0.0, 1.0, 0.0], vec![-1.0, 0.0, 0.0]]).unwrap();
    let g2 = Matrix::from_rows(vec![vec![0.0, 0.0, 1.0], vec![0.0, 1.0, 0.0], vec![1.0, 0.0, -1.0]]).unwrap();
    assert!(q.transpose().mul(&g1).mul(&q).sub(&g2).max_abs() < 1e-12);
    let sl2 = sl2_harmonic(&-1.0).unwrap();
    for i in 0..3 {
        for j in 0..3 {
            let (u, v) = (basis_vector::<f64>(3, i), basis_vector(3, j));
            let lhs = q.mul_vec(&sl2.bracket(&u, &v));
            let rhs = sl2.bracket(&q.mul_vec(&u), &q.mul_vec(&v));
            assert!(lhs.iter().zip(&rhs).all(|(a, b)| (a - b).abs() < 1e-12));
        }
    }
}

#[test]
fn a2_family() {
    let f = a2_example().unwrap();
    assert_family(&f.algebra, &f.decomposition);
    let g = &f.algebra;
    let n = g.dim();
    let (_, r) = ricci(g).unwrap();
    let ebar = basis_vector(n, 1);
    // ric(ē,ē) = 1 and equals ρ(2|X|² + tr ad_X) with ρ = −2/α
    let x_h = [(-1.0 + 5f64.sqrt()) / 4.0, 0.0];
    let x: Vec<f64> = [0.0, 0.0].iter().chain(&x_h).copied().collect();
    let x2 = g.ip(&x, &x);
    let tr = g.algebra().ad_matrix(&x).unwrap().trace();
    let ric_ee = r.ric[(1, 1)];
    assert!((ric_ee - 1.0).abs() < 1e-12);
    assert!((ric_ee - 2.0 * (2.0 * x2 + tr)).abs() < 1e-12);
    let w = ricci_derivative_expansion(g, &r.operator, &x, &ebar, &ebar);
    assert!((w - (-4.0 * x2)).abs() < 1e-9, "{w} vs {}", -4.0 * x2);
}

#[test]
fn a2_rejects_wrong_alpha() {
    let h = two_dim_nonunimodular(&1.0, &1.0).unwrap();
    let spec = A2FamilySpec {
        h,
        x: vec![0.3, 0.0],
        alpha: -1.0,
    };
    let err = build_a2(&spec).unwrap_err();
    assert_eq!(err.code(), "CONSTRAINT_VIOLATION");
    assert!(err.to_string().contains("alpha = -4|X|^2"), "{err}");
}

#[test]
fn a3_family() {
    for s in [RootSign::Plus, RootSign::Minus] {
        for lambda in [0.0, 1.0, -2.5] {
            let f = a3_example(s, lambda).unwrap();
            assert_family(&f.algebra, &f.decomposition);
            let g = &f.algebra;
            let (_, r) = ricci(g).unwrap();
            let (a, _) = example_6d_params(s);
            let x = {
                let mut v = vec![0.0; 6];
                v[3] = a;
                v
            };
            let (ff, ebar) = (basis_vector(6, 1), basis_vector(6, 2));
            let x2 = g.ip(&x, &x);
            let tr = g.algebra().ad_matrix(&x).unwrap().trace();
            let alpha = f.decomposition.h_blocks[0].alpha;
            // ric(f,ē) = 1 = (1/ρ)(|X|² + tr ad_X), ρ = −α
            assert!((r.ric[(1, 2)] - 1.0).abs() < 1e-9);
            assert!((r.ric[(1, 2)] - (x2 + tr) / -alpha).abs() < 1e-9);
            let w = ricci_derivative_expansion(g, &r.operator, &x, &ff, &ebar);
            assert!((w + 2.0 * x2).abs() < 1e-9);
        }
    }
}

#[test]
fn a3_rejects_broken_u() {
    let (a, l) = example_6d_params(RootSign::Plus);
    let alg = LieAlgebra::from_brackets(
        vec!["H".into(), "e1".into(), "e2".into()],
        &[(0, 1, vec![0.0, l / 2.0, 0.0]), (0, 2, vec![0.0, 0.0, l / 2.0])],
    )
    .unwrap();
    let h = PseudoEuclideanLieAlgebra::new(alg, BilinearForm::diagonal(&[l, 1.0, 1.0]), &tol()).unwrap();
    let spec = A3FamilySpec {
        h,
        x: vec![a, 0.0, 0.0],
        u: vec![a, 0.5, 0.0],
        c: Matrix::zeros(3, 3),
    };
    assert_eq!(build_a3(&spec).unwrap_err().code(), "CONSTRAINT_VIOLATION");
}

#[test]
fn examples_match_their_ricci() {
    for s in [RootSign::Plus, RootSign::Minus] {
        let ex = example_5d(s).unwrap();
        assert_family(&ex.family.algebra, &ex.family.decomposition);
        let ex = example_6d(s, 1.0).unwrap();
        assert_family(&ex.family.algebra, &ex.family.decomposition);
    }
}

#[test]
fn example_6d_is_the_a3_construction() {
    // reorder (e, f, ē, H, e1, e2) into (H, e1, e2, e, f, ē)
    let perm = [3, 4, 5, 0, 1, 2];
    for s in [RootSign::Plus, RootSign::Minus] {
        let ex = example_6d(s, 0.7).unwrap().family.algebra;
        let built = a3_example(s, 0.7).unwrap().algebra;
        for i in 0..6 {
            for j in 0..6 {
                for k in 0..6 {
                    let x = ex.algebra().constant(i, j, k);
                    let y = built.algebra().constant(perm[i], perm[j], perm[k]);
                    assert!((x - y).abs() < 1e-12, "({i},{j},{k}) {x} vs {y}");
                }
            }
        }
    }
}

#[test]
fn alternate_5d_bracket_is_not_harmonic() {
    for s in [RootSign::Plus, RootSign::Minus] {
        let ex = example_5d_alternate(s).unwrap();
        let g = &ex.family.algebra;
        assert!(g.algebra().jacobi_defect() < 1e-12);
        assert!(!has_harmonic_curvature(g, &tol()).unwrap().is_codazzi);
    }
}

#[test]
fn euclidean_e11_is_neither_harmonic_nor_ricci_parallel() {
    let g = lorentz_lie::catalog::e11([1, 1, 1]).unwrap();
    let (_, r) = ricci(&g).unwrap();
    let q = Rational::from_i64;
    assert_eq!(r.operator, Matrix::diagonal(&[q(0), q(0), q(-2)]));
    let h = has_harmonic_curvature(&g, &tol()).unwrap();
    assert!(!h.is_codazzi);
    assert_eq!(h.defect, q(2));
    assert!(!is_ricci_parallel(&g, &tol()).unwrap().is_parallel);
}
