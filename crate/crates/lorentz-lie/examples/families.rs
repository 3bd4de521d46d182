//! The harmonic-curvature families: zz-bar products, a2 and a3 extensions.
//! For each member the condition systems are checked against the direct test.

use lorentz_lie::codazzi::{check_type_conditions, codazzi_defect, System};
use lorentz_lie::decomposition::SplitDecomposition;
use lorentz_lie::families::{a2_example, a3_example, build_zz_product, two_dim_nonunimodular, zz_core, RootSign, ZZCoreParams};
use lorentz_lie::liealg::PseudoEuclideanLieAlgebra;
use lorentz_lie::scalar::Tolerance;

fn report(name: &str, g: &PseudoEuclideanLieAlgebra<f64>, d: &SplitDecomposition<f64>) -> lorentz_lie::error::Result<()> {
    let tol = Tolerance::default();
    let raw = check_type_conditions(g, d, System::Raw, &tol)?;
    let solved = check_type_conditions(g, d, System::Solved, &tol)?;
    // the operator carried by the decomposition; for an unperturbed member this is Ric
    let direct = codazzi_defect(g, &d.operator()?, &tol)?;
    println!(
        "{name:<12} dim {} type {}: raw {} ({} conditions), solved {}, Codazzi {} (defect {:.1e})",
        g.dim(),
        d.type_tag(),
        raw.overall,
        raw.items.len(),
        solved.overall,
        direct.is_codazzi,
        direct.defect
    );
    for item in raw.failed() {
        println!("    failed {}: {:.3e}", item.label, item.defect);
    }
    Ok(())
}

fn main() -> lorentz_lie::error::Result<()> {
    for eps in [1, -1] {
        let f = zz_core(ZZCoreParams::new(-2.0, eps)?)?;
        report(&format!("zz-core {eps:+}"), &f.algebra, &f.decomposition)?;
    }
    let h = two_dim_nonunimodular(&1.0, &1.0)?;
    let zz = build_zz_product(&-1.0, &h)?;
    report("zz-product", &zz.algebra, &zz.decomposition)?;

    let a2 = a2_example()?;
    report("a2", &a2.algebra, &a2.decomposition)?;
    for s in [RootSign::Plus, RootSign::Minus] {
        for lambda in [0.0, 2.0] {
            let a3 = a3_example(s, lambda)?;
            report(&format!("a3 {s:?} {lambda}"), &a3.algebra, &a3.decomposition)?;
        }
    }

    // moving one eigenvalue: the operator is no longer Codazzi and both systems notice
    let mut d = a2.decomposition.clone();
    if let Some(b) = d.h_blocks.first_mut() {
        b.alpha += 0.5;
    }
    report("a2 shifted", &a2.algebra, &d)?;
    Ok(())
}
