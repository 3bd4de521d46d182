//! sl(2,R) with the left-invariant Lorentzian metric whose Ricci operator has a
//! complex pair of eigenvalues. Everything is computed over the rationals.
//!
//! cargo run --example sl2_harmonic -- -3

use lorentz_lie::classify::ricci_type;
use lorentz_lie::codazzi::{codazzi_report, Formulation};
use lorentz_lie::families::sl2_harmonic;
use lorentz_lie::geometry::{is_ricci_parallel, ricci};
use lorentz_lie::scalar::{Rational, Tolerance};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let alpha: Rational = std::env::args().nth(1).unwrap_or_else(|| "-1".into()).parse()?;
    let tol = Tolerance::default();
    let g = sl2_harmonic(&alpha)?;

    println!("metric:");
    for row in g.metric().matrix().to_rows() {
        println!("  {}", row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("  "));
    }
    let (_, r) = ricci(&g)?;
    println!("Ricci operator:");
    for row in r.operator.to_rows() {
        println!("  {}", row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("  "));
    }
    println!("scalar curvature {}", r.scalar_curvature);

    for f in [Formulation::Defining, Formulation::Bracket] {
        let rep = codazzi_report(&g, &r.operator, f, &tol)?;
        println!("{f:?}: Codazzi {} (defect {})", rep.is_codazzi, rep.defect);
    }
    let par = is_ricci_parallel(&g, &tol)?;
    println!("Ricci parallel {} (defect {})", par.is_parallel, par.defect);

    let (c, _) = ricci_type(&g, &tol)?;
    println!(
        "type {}: a = {}, b^2 = {}, b = {}",
        c.type_tag,
        c.a.as_ref().map(|a| a.to_string()).unwrap_or_default(),
        c.b_squared.as_ref().map(|b| b.to_string()).unwrap_or_default(),
        c.b_string().unwrap_or_default()
    );
    Ok(())
}
