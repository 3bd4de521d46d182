//! The five- and six-dimensional Lorentzian examples with harmonic curvature
//! and non-parallel Ricci tensor.

use lorentz_lie::classify::ricci_type;
use lorentz_lie::codazzi::has_harmonic_curvature;
use lorentz_lie::families::{example_5d, example_6d, Example, RootSign};
use lorentz_lie::geometry::{is_ricci_parallel, ricci, ricci_derivative_expansion};
use lorentz_lie::matrix::basis_vector;
use lorentz_lie::scalar::Tolerance;

fn describe(name: &str, ex: &Example) -> lorentz_lie::error::Result<()> {
    let tol = Tolerance::default();
    let g = &ex.family.algebra;
    let n = g.dim();
    println!("{name}: a = {:.12}, l = {:.12}, basis {}", ex.a, ex.l, g.names().join(" "));
    let (_, r) = ricci(g)?;
    for row in r.operator.to_rows() {
        println!("  {}", row.iter().map(|x| format!("{x:>9.5}")).collect::<String>());
    }
    let (c, _) = ricci_type(g, &tol)?;
    println!("  type {}, alphas {:?}", c.type_tag, c.alphas_f64());
    println!("  harmonic {}", has_harmonic_curvature(g, &tol)?.is_codazzi);
    println!("  Ricci parallel {}", is_ricci_parallel(g, &tol)?.is_parallel);
    // the last two basis vectors are f and ebar
    let (f, ebar) = (basis_vector(n, n - 2), basis_vector(n, n - 1));
    let w = ricci_derivative_expansion(g, &r.operator, &ex.x, &f, &ebar);
    println!("  (nabla_X ric)(f, ebar) = {w:.12}, -2|X|^2 = {:.12}", -2.0 * g.ip(&ex.x, &ex.x));
    Ok(())
}

fn main() -> lorentz_lie::error::Result<()> {
    for s in [RootSign::Plus, RootSign::Minus] {
        describe(&format!("5d {s:?}"), &example_5d(s)?)?;
        describe(&format!("6d {s:?}"), &example_6d(s, 1.0)?)?;
    }
    Ok(())
}
