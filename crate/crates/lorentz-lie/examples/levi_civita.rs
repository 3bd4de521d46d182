//! Levi-Civita product, curvature and the two Ricci formulas on a
//! hand-built algebra: the Heisenberg algebra with a Lorentzian metric.

use lorentz_lie::forms::BilinearForm;
use lorentz_lie::geometry::{bianchi_defect, compatibility_defect, levi_civita, ricci, ricci_structural, torsion_defect};
use lorentz_lie::liealg::{LieAlgebra, PseudoEuclideanLieAlgebra};
use lorentz_lie::scalar::{Field, Rational, Tolerance};

fn main() -> lorentz_lie::error::Result<()> {
    let q = Rational::from_i64;
    let names = vec!["x".to_string(), "y".to_string(), "z".to_string()];
    // [x,y] = z
    let alg = LieAlgebra::from_brackets(names, &[(0, 1, vec![q(0), q(0), q(1)])])?;
    let tol = Tolerance::default();
    let g = PseudoEuclideanLieAlgebra::new(alg, BilinearForm::diagonal(&[q(1), q(-1), q(1)]), &tol)?;

    let lc = levi_civita(&g)?;
    for (i, name) in g.names().iter().enumerate() {
        println!("L_{name} = {:?}", lc.op(i).to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>());
    }
    println!("torsion defect {}", torsion_defect(&g, &lc));
    println!("metric defect {}", compatibility_defect(&g, &lc));
    println!("Bianchi defect {}", bianchi_defect(&g, &lc)?);

    let (_, r) = ricci(&g)?;
    let s = ricci_structural(&g, &tol)?;
    println!("Ricci from curvature == Ricci from structure: {}", r.operator == s.operator);
    println!("scalar curvature {}", r.scalar_curvature);
    Ok(())
}
