//! Invariant checks over the fixture catalog, run by `lorentz-lie selftest`.

use crate::catalog::{catalog, zz_product_5d, Fixture};
use crate::codazzi::{check_type_conditions, codazzi_defect, codazzi_defect_bracket, has_harmonic_curvature, System};
use crate::decomposition::SplitDecomposition;
use crate::error::Result;
use crate::families::{a2_example, a3_example, build_zz_product, two_dim_nonunimodular, RootSign};
use crate::geometry::{bianchi_defect, compatibility_defect, ricci, ricci_structural, torsion_defect};
use crate::liealg::PseudoEuclideanLieAlgebra;
use crate::matrix::Matrix;
use crate::scalar::{format_f64, Field, Tolerance};

use super::report::analyze;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: String, passed: bool, detail: String) -> Check {
    Check { name, passed, detail }
}

fn fixture_checks<T: Field>(name: &str, g: &PseudoEuclideanLieAlgebra<T>, tol: &Tolerance) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let scale = 1.0 + g.algebra().max_constant().to_f64();
    let (lc, r) = ricci(g)?;

    let torsion = torsion_defect(g, &lc);
    let compat = compatibility_defect(g, &lc);
    out.push(check(
        format!("{name}/levi-civita"),
        torsion.negligible(tol.bound(scale)) && compat.negligible(tol.bound(scale)),
        format!("torsion {}, metric {}", torsion.to_scalar(), compat.to_scalar()),
    ));

    let bianchi = bianchi_defect(g, &lc)?.to_f64();
    out.push(check(
        format!("{name}/bianchi"),
        bianchi <= 1e-10 * scale * scale,
        format!("defect {}", format_f64(bianchi)),
    ));

    let structural = ricci_structural(g, tol)?;
    let diff = r.operator.sub(&structural.operator).max_abs();
    out.push(check(
        format!("{name}/dual-ricci"),
        diff.negligible(tol.bound(1.0 + r.operator.max_abs_f64())),
        format!("difference {}", diff.to_scalar()),
    ));

    let n = g.dim();
    let mut ops = vec![("Ric".to_string(), r.operator.clone())];
    for l in [0, 1, -2] {
        ops.push((format!("{l}Id"), Matrix::identity(n).scale(&T::from_i64(l))));
    }
    let mut disagreements = Vec::new();
    for (label, a) in &ops {
        let d = codazzi_defect(g, a, tol)?;
        let b = codazzi_defect_bracket(g, a, tol)?;
        if d.is_codazzi != b.is_codazzi {
            disagreements.push(label.clone());
        }
    }
    out.push(check(
        format!("{name}/formulations"),
        disagreements.is_empty(),
        if disagreements.is_empty() {
            format!("{} operators agree", ops.len())
        } else {
            format!("disagree on {}", disagreements.join(", "))
        },
    ));

    let report = analyze(g, tol)?;
    out.push(check(
        format!("{name}/implications"),
        report.is_consistent(),
        format!(
            "einstein {}, parallel {}, harmonic {}",
            report.einstein.is_some(),
            report.parallel,
            report.harmonic
        ),
    ));
    if let Some(tag) = report.type_tag() {
        if let super::report::RicciType::Classified(s) = &report.ricci_type {
            let bound = 1e-7 * (1.0 + r.operator.max_abs_f64());
            out.push(check(
                format!("{name}/ricci-type"),
                s.residual <= bound,
                format!("{tag}, reconstruction residual {}", format_f64(s.residual)),
            ));
        }
    }
    Ok(out)
}

fn family_checks<T: Field>(name: &str, g: &PseudoEuclideanLieAlgebra<T>, d: &SplitDecomposition<f64>, tol: &Tolerance) -> Result<Check> {
    let gf = g.to_f64();
    let raw = check_type_conditions(&gf, d, System::Raw, tol)?.overall;
    let solved = check_type_conditions(&gf, d, System::Solved, tol)?.overall;
    let harmonic = has_harmonic_curvature(g, tol)?.is_codazzi;
    Ok(check(
        format!("family/{name}"),
        raw && solved && harmonic,
        format!("raw {raw}, solved {solved}, harmonic {harmonic}"),
    ))
}

pub fn run_selftest(tol: &Tolerance) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for entry in catalog()? {
        match &entry.fixture {
            Fixture::Exact(g) => out.extend(fixture_checks(entry.name, g, tol)?),
            Fixture::Float(g) => out.extend(fixture_checks(entry.name, g, tol)?),
        }
    }
    let zz = zz_product_5d()?;
    let one = crate::scalar::Rational::from_i64(1);
    let zz_d = build_zz_product(&-one.clone(), &two_dim_nonunimodular(&one, &one)?)?.decomposition;
    out.push(family_checks("zz-product", &zz, &zz_d, tol)?);
    let a2 = a2_example()?;
    out.push(family_checks("a2", &a2.algebra, &a2.decomposition, tol)?);
    for s in [RootSign::Plus, RootSign::Minus] {
        let a3 = a3_example(s, 1.0)?;
        out.push(family_checks(&format!("a3{}", if s == RootSign::Plus { "+" } else { "-" }), &a3.algebra, &a3.decomposition, tol)?);
    }
    Ok(out)
}
