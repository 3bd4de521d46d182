//! Classify self-adjoint operators on a Lorentzian space: build one in
//! canonical form, hide it behind a change of basis, and recover it.

use lorentz_lie::classify::classify_symmetric_operator;
use lorentz_lie::forms::BilinearForm;
use lorentz_lie::matrix::Matrix;
use lorentz_lie::scalar::Tolerance;

fn show(label: &str, a: &Matrix<f64>, g: &Matrix<f64>) -> lorentz_lie::error::Result<()> {
    let tol = Tolerance::default();
    let c = classify_symmetric_operator(a, &BilinearForm::new(g.clone(), &tol)?, &tol)?;
    println!("{label}: type {}", c.type_tag);
    println!("  alphas {:?}", c.alphas_f64());
    if let Some(a) = c.a_f64() {
        println!("  a = {a}");
    }
    if let Some(b) = c.b {
        println!("  b = {b}");
    }
    if let Some(s) = c.a2_sign {
        println!("  sign = {s}");
    }
    println!("  reconstruction residual {:e}", c.reconstruction_residual(a));
    println!("  metric residual {:e}", c.metric_residual(g));
    Ok(())
}

fn main() -> lorentz_lie::error::Result<()> {
    // basis (h, e, ebar) with <e,ebar> = 1
    let g = Matrix::from_rows(vec![vec![1.0, 0.0, 0.0], vec![0.0, 0.0, 1.0], vec![0.0, 1.0, 0.0]])?;
    // Jordan block of size 2 on the null pair, eigenvalue 3
    let a2 = Matrix::from_rows(vec![vec![-1.0, 0.0, 0.0], vec![0.0, 3.0, 1.0], vec![0.0, 0.0, 3.0]])?;
    // complex pair 1 +- 2i
    let zz = Matrix::from_rows(vec![vec![-1.0, 0.0, 0.0], vec![0.0, 1.0, 2.0], vec![0.0, -2.0, 1.0]])?;

    // P with det 1, not an isometry
    let p = Matrix::from_rows(vec![vec![1.0, 2.0, 0.0], vec![0.0, 1.0, -1.0], vec![1.0, 1.0, 0.0]])?;
    let pinv = p.inverse().expect("invertible");
    let g2 = p.transpose().mul(&g).mul(&p);
    for (label, a) in [("A2", a2), ("ZZbar", zz)] {
        show(label, &a, &g)?;
        show(&format!("{label} in another basis"), &pinv.mul(&a).mul(&p), &g2)?;
    }
    Ok(())
}
