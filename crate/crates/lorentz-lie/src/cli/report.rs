//! The full analysis pipeline and its two output formats.
//!
//! `kv` keys, in output order:
//!
//! | key | value |
//! |-----|-------|
//! | `backend` | `exact` or `float` |
//! | `dim`, `basis` | dimension, space-separated names |
//! | `jacobi_defect` | largest Jacobiator entry |
//! | `signature.p`, `signature.q` | positive and negative directions |
//! | `lorentzian`, `unimodular` | booleans |
//! | `einstein` | boolean, then `einstein.alpha` when true |
//! | `ricci_matrix.<i>` | row i of the Ricci operator, space-separated |
//! | `scalar_curvature` | trace of Ric |
//! | `ricci_type` | `Diag`, `ZZbar`, `A2`, `A3` or `skipped` |
//! | `ricci_type.*` | `backend`, `alphas`, `a`, `b`, `b_squared`, `a2_sign`, `residual` or `notice` |
//! | `harmonic`, `harmonic.defect`, `harmonic.worst_triple` | Codazzi test of Ric |
//! | `ricci_parallel`, `ricci_parallel.defect`, `ricci_parallel.worst_direction` | ∇Ric test |
//! | `notice.<k>` | free-form remarks |

use std::fmt::Write;

use crate::classify::{classify_symmetric_operator, OperatorClassification};
use crate::codazzi::codazzi_defect_with;
use crate::decomposition::TypeTag;
use crate::error::{Error, Result};
use crate::geometry::{einstein_constant, levi_civita, parallel_report, ricci_operator};
use crate::liealg::PseudoEuclideanLieAlgebra;
use crate::scalar::{format_f64, Backend, Field, Scalar, Tolerance};

#[derive(Debug, Clone, PartialEq, Eq, Copy)]
pub enum Format {
    Text,
    Kv,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "kv" => Ok(Format::Kv),
            other => Err(Error::BadParam(format!("unknown format `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TypeSummary {
    pub tag: TypeTag,
    pub backend: Backend,
    pub alphas: Vec<Scalar>,
    pub a: Option<Scalar>,
    pub b: Option<f64>,
    /// b as printed, see [`OperatorClassification::b_string`].
    pub b_text: Option<String>,
    pub b_squared: Option<Scalar>,
    pub a2_sign: Option<i8>,
    /// ‖P⁻¹ÂP − Ric‖∞.
    pub residual: f64,
}

impl TypeSummary {
    pub fn from_classification(c: &OperatorClassification, residual: f64) -> Self {
        TypeSummary {
            tag: c.type_tag,
            backend: c.backend,
            alphas: c.alphas.clone(),
            a: c.a.clone(),
            b: c.b,
            b_text: c.b_string(),
            b_squared: c.b_squared.clone(),
            a2_sign: c.a2_sign,
            residual,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum RicciType {
    Classified(TypeSummary),
    Skipped(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisReport {
    pub backend: Backend,
    pub basis: Vec<String>,
    pub jacobi_defect: Scalar,
    pub signature: (usize, usize),
    pub lorentzian: bool,
    pub unimodular: bool,
    pub einstein: Option<Scalar>,
    pub ricci_matrix: Vec<Vec<Scalar>>,
    pub scalar_curvature: Scalar,
    pub ricci_type: RicciType,
    pub harmonic: bool,
    pub harmonic_defect: Scalar,
    pub harmonic_worst: (usize, usize, usize),
    pub parallel: bool,
    pub parallel_defect: Scalar,
    pub parallel_worst: usize,
    pub notices: Vec<String>,
}

impl AnalysisReport {
    /// Einstein ⇒ Ricci-parallel ⇒ harmonic.
    pub fn is_consistent(&self) -> bool {
        (self.einstein.is_none() || self.parallel) && (!self.parallel || self.harmonic)
    }

    pub fn type_tag(&self) -> Option<TypeTag> {
        match &self.ricci_type {
            RicciType::Classified(s) => Some(s.tag),
            RicciType::Skipped(_) => None,
        }
    }
}

pub fn analyze<T: Field>(g: &PseudoEuclideanLieAlgebra<T>, tol: &Tolerance) -> Result<AnalysisReport> {
    if g.dim() == 0 {
        return Err(Error::BadParam("empty basis".into()));
    }
    let jacobi = g.algebra().jacobi_defect();
    if !g.algebra().is_lie_algebra(tol) {
        return Err(Error::NotLieAlgebra(jacobi.to_f64()));
    }
    let lc = levi_civita(g)?;
    let r = ricci_operator(g, &lc)?;
    let (p, q) = g.signature(tol);
    let lorentzian = q == 1 && p + q == g.dim() && g.dim() >= 3;
    let mut notices = Vec::new();
    let ricci_type = if !lorentzian {
        RicciType::Skipped(format!("metric has signature ({p},{q}); types are defined for Lorentzian metrics of dimension at least 3"))
    } else {
        let classified = match classify_symmetric_operator(&r.operator, g.metric(), tol) {
            Err(Error::ExactUnsupported(what)) => {
                notices.push(format!("Ricci eigenvalue {what} is irrational; type computed in float"));
                classify_symmetric_operator(&r.operator.to_f64(), &g.metric().to_f64(), tol)?
            }
            other => other?,
        };
        let residual = classified.reconstruction_residual(&r.operator.to_f64());
        RicciType::Classified(TypeSummary::from_classification(&classified, residual))
    };
    let harmonic = codazzi_defect_with(g, &lc, &r.operator, tol);
    let parallel = parallel_report(&lc, &r, tol);
    let n = g.dim();
    Ok(AnalysisReport {
        backend: T::BACKEND,
        basis: g.names().to_vec(),
        jacobi_defect: jacobi.to_scalar(),
        signature: (p, q),
        lorentzian,
        unimodular: g.is_unimodular(),
        einstein: einstein_constant(&r, tol).map(|a| a.to_scalar()),
        ricci_matrix: (0..n).map(|i| (0..n).map(|j| r.operator[(i, j)].to_scalar()).collect()).collect(),
        scalar_curvature: r.scalar_curvature.to_scalar(),
        ricci_type,
        harmonic: harmonic.is_codazzi,
        harmonic_defect: harmonic.defect.to_scalar(),
        harmonic_worst: harmonic.worst_triple,
        parallel: parallel.is_parallel,
        parallel_defect: parallel.defect.to_scalar(),
        parallel_worst: parallel.worst_direction,
        notices,
    })
}

fn join(v: &[Scalar]) -> String {
    v.iter().map(Scalar::to_string).collect::<Vec<_>>().join(" ")
}

pub fn emit_report(r: &AnalysisReport, format: Format) -> String {
    match format {
        Format::Kv => emit_kv(r),
        Format::Text => emit_text(r),
    }
}

fn emit_kv(r: &AnalysisReport) -> String {
    let mut o = String::new();
    let mut kv = |k: &str, v: &dyn std::fmt::Display| {
        let _ = writeln!(o, "{k}={v}");
    };
    kv("backend", &r.backend);
    kv("dim", &r.basis.len());
    kv("basis", &r.basis.join(" "));
    kv("jacobi_defect", &r.jacobi_defect);
    kv("signature.p", &r.signature.0);
    kv("signature.q", &r.signature.1);
    kv("lorentzian", &r.lorentzian);
    kv("unimodular", &r.unimodular);
    kv("einstein", &r.einstein.is_some());
    if let Some(a) = &r.einstein {
        kv("einstein.alpha", a);
    }
    for (i, row) in r.ricci_matrix.iter().enumerate() {
        kv(&format!("ricci_matrix.{i}"), &join(row));
    }
    kv("scalar_curvature", &r.scalar_curvature);
    match &r.ricci_type {
        RicciType::Skipped(why) => {
            kv("ricci_type", &"skipped");
            kv("ricci_type.notice", why);
        }
        RicciType::Classified(s) => {
            kv("ricci_type", &s.tag);
            kv("ricci_type.backend", &s.backend);
            kv("ricci_type.alphas", &join(&s.alphas));
            if let Some(a) = &s.a {
                kv("ricci_type.a", a);
            }
            if let Some(b) = &s.b_text {
                kv("ricci_type.b", b);
            }
            if let Some(b2) = &s.b_squared {
                kv("ricci_type.b_squared", b2);
            }
            if let Some(sign) = s.a2_sign {
                kv("ricci_type.a2_sign", &sign);
            }
            kv("ricci_type.residual", &format_f64(s.residual));
        }
    }
    let (i, j, k) = r.harmonic_worst;
    kv("harmonic", &r.harmonic);
    kv("harmonic.defect", &r.harmonic_defect);
    kv(
        "harmonic.worst_triple",
        &format!("{} {} {}", r.basis[i], r.basis[j], r.basis[k]),
    );
    kv("ricci_parallel", &r.parallel);
    kv("ricci_parallel.defect", &r.parallel_defect);
    kv("ricci_parallel.worst_direction", &r.basis[r.parallel_worst]);
    for (i, n) in r.notices.iter().enumerate() {
        kv(&format!("notice.{i}"), n);
    }
    o
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn emit_text(r: &AnalysisReport) -> String {
    let mut o = String::new();
    let _ = writeln!(o, "{}-dimensional, basis {} ({} arithmetic)", r.basis.len(), r.basis.join(" "), r.backend);
    let _ = writeln!(o, "Jacobi defect       {}", r.jacobi_defect);
    let (p, q) = r.signature;
    let kind = if q == 0 {
        "Euclidean"
    } else if r.lorentzian {
        "Lorentzian"
    } else {
        "pseudo-Euclidean"
    };
    let _ = writeln!(o, "signature           ({p},{q}) {kind}{}", if r.unimodular { ", unimodular" } else { "" });
    match &r.einstein {
        Some(a) => {
            let _ = writeln!(o, "Einstein            yes, Ric = {a} Id");
        }
        None => {
            let _ = writeln!(o, "Einstein            no");
        }
    }
    let cells: Vec<Vec<String>> = r.ricci_matrix.iter().map(|row| row.iter().map(Scalar::to_string).collect()).collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    let _ = writeln!(o, "Ricci operator");
    for row in &cells {
        let padded: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        let _ = writeln!(o, "  [ {} ]", padded.join("  "));
    }
    let _ = writeln!(o, "scalar curvature    {}", r.scalar_curvature);
    match &r.ricci_type {
        RicciType::Skipped(why) => {
            let _ = writeln!(o, "Ricci type          skipped: {why}");
        }
        RicciType::Classified(s) => {
            let mut line = format!("Ricci type          {}", s.tag);
            if let Some(a) = &s.a {
                let _ = write!(line, ", a = {a}");
            }
            if let Some(b) = &s.b_text {
                let _ = write!(line, ", b = {b}");
            }
            if let Some(b2) = &s.b_squared {
                let _ = write!(line, " (b^2 = {b2})");
            }
            if let Some(sign) = s.a2_sign {
                let _ = write!(line, ", sign {sign:+}");
            }
            let _ = writeln!(o, "{line}");
            if !s.alphas.is_empty() {
                let _ = writeln!(o, "  eigenvalues on h   {}", join(&s.alphas));
            }
        }
    }
    let (i, j, k) = r.harmonic_worst;
    let _ = writeln!(
        o,
        "harmonic curvature  {} (defect {}, worst at {} {} {})",
        yes(r.harmonic),
        r.harmonic_defect,
        r.basis[i],
        r.basis[j],
        r.basis[k]
    );
    let _ = writeln!(
        o,
        "Ricci parallel      {} (defect {}, worst along {})",
        yes(r.parallel),
        r.parallel_defect,
        r.basis[r.parallel_worst]
    );
    for n in &r.notices {
        let _ = writeln!(o, "note: {n}");
    }
    o
}
