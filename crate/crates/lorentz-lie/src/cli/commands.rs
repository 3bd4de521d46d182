//! Command-line surface. Every command renders to a string so it can be run in-process.

use std::fmt::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use super::document::{emit_definition, parse_definition, parse_matrix_file, DefinitionDocument};
use super::report::{analyze, emit_report, Format};
use super::selftest::run_selftest;
use crate::classify::classify_symmetric_operator;
use crate::codazzi::{codazzi_report, CodazziReport, Formulation};
use crate::decomposition::{NullPart, SplitDecomposition};
use crate::error::{Error, Result};
use crate::families::{
    a2_example, a3_example, build_a2, build_a3, build_zz_product, example_5d, example_5d_alternate, example_6d,
    sl2_harmonic, zz_core, A2FamilySpec, A3FamilySpec, Example, RootSign, ZZCoreParams,
};
use crate::forms::BilinearForm;
use crate::geometry::ricci;
use crate::liealg::PseudoEuclideanLieAlgebra;
use crate::matrix::Matrix;
use crate::scalar::{format_f64, parse_literal, Backend, Field, Literal, Rational, Scalar, Tolerance};

/// Environment variable holding the default relative tolerance.
pub const TOL_ENV: &str = "LORENTZ_LIE_TOL";

#[derive(Debug, Parser)]
#[command(name = "lorentz-lie", version, about = "Curvature of left-invariant metrics on Lie groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct Common {
    /// exact (rationals) or float; default: exact when every scalar is rational
    #[arg(long)]
    pub mode: Option<String>,
    /// relative tolerance for float comparisons [default: $LORENTZ_LIE_TOL or 1e-9]
    #[arg(long)]
    pub tol: Option<f64>,
    /// text or kv
    #[arg(long, default_value = "text")]
    pub format: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full report: Jacobi, signature, Einstein, Ricci and its type, harmonic curvature, Ricci-parallel
    Analyze {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Canonical form of a self-adjoint operator for the metric of FILE
    Classify {
        file: PathBuf,
        /// matrix file, or `ricci` for the Ricci operator of FILE
        #[arg(long)]
        operator: String,
        #[command(flatten)]
        common: Common,
    },
    /// Codazzi test of an operator on the algebra of FILE
    Codazzi {
        file: PathBuf,
        /// matrix file, or `ricci` for the Ricci operator of FILE
        #[arg(long)]
        operator: String,
        /// defining, bracket (also accepted as prop22) or both
        #[arg(long, default_value = "both")]
        formulation: String,
        #[command(flatten)]
        common: Common,
    },
    /// Emit a definition file for a harmonic-curvature family member
    Family {
        #[command(subcommand)]
        family: FamilyCommand,
        /// write here instead of standard output
        #[arg(short = 'o', long, global = true)]
        output: Option<PathBuf>,
    },
    /// Run the built-in invariant checks over the fixture catalog
    Selftest {
        #[arg(long)]
        tol: Option<f64>,
    },
}

#[derive(Debug, Subcommand)]
pub enum FamilyCommand {
    /// sl(2,R) with a metric whose Ricci operator has a complex pair
    Sl2 {
        #[arg(long, default_value = "-1", allow_hyphen_values = true)]
        alpha: String,
    },
    /// Three-dimensional zz-bar core with parameters alpha < 0 and epsilon = ±1
    Zzcore {
        #[arg(long, default_value = "-1", allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        epsilon: i8,
    },
    /// sl(2,R) ⊕ h for a Euclidean Einstein h with constant alpha
    Zzprod {
        #[arg(long, default_value = "-1", allow_hyphen_values = true)]
        alpha: String,
        /// definition file of h; omitted means h = 0
        #[arg(long)]
        h: Option<PathBuf>,
    },
    /// A2 family over h; without --h the bundled 4-dimensional instance
    A2 {
        #[arg(long)]
        h: Option<PathBuf>,
        /// X in the basis of h, comma-separated
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
    },
    /// A3 family over h; without --h the 6-dimensional instance
    A3 {
        #[arg(long)]
        h: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        u: Option<String>,
        /// skew-symmetric C in the metric grammar, e.g. [[0,1],[-1,0]]
        #[arg(long, allow_hyphen_values = true)]
        c: Option<String>,
        #[arg(long, default_value = "+", allow_hyphen_values = true)]
        sign: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        lambda: f64,
    },
    /// The 5-dimensional worked example
    Ex5d {
        #[arg(long, default_value = "+", allow_hyphen_values = true)]
        sign: String,
        /// use (2l-1)a/l for the e-coefficient of [ebar,H]; the result is not harmonic
        #[arg(long)]
        alternate: bool,
    },
    /// The 6-dimensional worked example
    Ex6d {
        #[arg(long, default_value = "+", allow_hyphen_values = true)]
        sign: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        lambda: f64,
    },
}

/// What a command produced: text for standard output and the process exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub stdout: String,
    pub exit_code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, exit_code: 0 }
    }
}

pub fn tolerance(flag: Option<f64>) -> Result<Tolerance> {
    let rel = match flag {
        Some(t) => t,
        None => match std::env::var(TOL_ENV) {
            Ok(v) => v
                .trim()
                .parse::<f64>()
                .map_err(|_| Error::BadParam(format!("{TOL_ENV}={v} is not a number")))?,
            Err(_) => Tolerance::default().rel,
        },
    };
    Tolerance::new(rel, Tolerance::default().abs)
}

fn backend(mode: &Option<String>) -> Result<Option<Backend>> {
    match mode.as_deref() {
        None => Ok(None),
        Some("exact") => Ok(Some(Backend::Exact)),
        Some("float") => Ok(Some(Backend::Float)),
        Some(other) => Err(Error::BadParam(format!("mode must be exact or float, got `{other}`"))),
    }
}

pub fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn load_definition(path: &Path) -> Result<DefinitionDocument> {
    parse_definition(&read_file(path)?)
}

pub fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Analyze { file, common } => {
            let doc = load_definition(&file)?;
            let tol = tolerance(common.tol)?;
            let format: Format = common.format.parse()?;
            let mode = backend(&common.mode)?.unwrap_or_else(|| doc.default_backend());
            let report = match mode {
                Backend::Exact => analyze(&doc.build::<Rational>(&tol)?, &tol)?,
                Backend::Float => analyze(&doc.build::<f64>(&tol)?, &tol)?,
            };
            Ok(Outcome::ok(emit_report(&report, format)))
        }
        Command::Classify { file, operator, common } => {
            let doc = load_definition(&file)?;
            let op = load_operator(&operator)?;
            let tol = tolerance(common.tol)?;
            let format: Format = common.format.parse()?;
            let mode = pick_mode(&common, &doc, op.as_deref())?;
            let text = match mode {
                Backend::Exact => classify_text::<Rational>(&doc, op.as_deref(), &tol, format)?,
                Backend::Float => classify_text::<f64>(&doc, op.as_deref(), &tol, format)?,
            };
            Ok(Outcome::ok(text))
        }
        Command::Codazzi {
            file,
            operator,
            formulation,
            common,
        } => {
            let doc = load_definition(&file)?;
            let op = load_operator(&operator)?;
            let tol = tolerance(common.tol)?;
            let format: Format = common.format.parse()?;
            let forms = match formulation.as_str() {
                "both" => vec![Formulation::Defining, Formulation::Bracket],
                other => vec![other.parse()?],
            };
            let mode = pick_mode(&common, &doc, op.as_deref())?;
            let text = match mode {
                Backend::Exact => codazzi_text::<Rational>(&doc, op.as_deref(), &forms, &tol, format)?,
                Backend::Float => codazzi_text::<f64>(&doc, op.as_deref(), &forms, &tol, format)?,
            };
            Ok(Outcome::ok(text))
        }
        Command::Family { family, output } => {
            let text = family_definition(&family)?;
            match output {
                Some(path) => {
                    std::fs::write(&path, &text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
                    Ok(Outcome::ok(String::new()))
                }
                None => Ok(Outcome::ok(text)),
            }
        }
        Command::Selftest { tol } => {
            let tol = tolerance(tol)?;
            let checks = run_selftest(&tol)?;
            let mut out = String::new();
            let mut failed = 0;
            for c in &checks {
                let _ = writeln!(out, "{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
                failed += usize::from(!c.passed);
            }
            let _ = writeln!(out, "{} checks, {failed} failed", checks.len());
            Ok(Outcome {
                stdout: out,
                exit_code: if failed == 0 { 0 } else { 1 },
            })
        }
    }
}

/// `None` stands for the Ricci operator.
fn load_operator(spec: &str) -> Result<Option<Vec<Vec<Literal>>>> {
    if spec == "ricci" {
        return Ok(None);
    }
    Ok(Some(parse_matrix_file(&read_file(Path::new(spec))?)?))
}

fn pick_mode(common: &Common, doc: &DefinitionDocument, op: Option<&[Vec<Literal>]>) -> Result<Backend> {
    if let Some(b) = backend(&common.mode)? {
        return Ok(b);
    }
    let op_rational = op.is_none_or(|m| m.iter().flatten().all(Literal::is_rational));
    Ok(match doc.default_backend() {
        Backend::Exact if op_rational => Backend::Exact,
        _ => Backend::Float,
    })
}

fn operator_matrix<T: Field>(
    g: &PseudoEuclideanLieAlgebra<T>,
    op: Option<&[Vec<Literal>]>,
) -> Result<Matrix<T>> {
    match op {
        None => Ok(ricci(g)?.1.operator),
        Some(rows) => {
            let rows = rows
                .iter()
                .map(|r| r.iter().map(T::from_literal).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            let m = Matrix::from_rows(rows)?;
            if m.rows() != g.dim() {
                return Err(Error::DimensionMismatch(format!(
                    "operator is {0}x{0}, algebra has dimension {1}",
                    m.rows(),
                    g.dim()
                )));
            }
            Ok(m)
        }
    }
}

fn scalars(v: &[Scalar]) -> String {
    v.iter().map(Scalar::to_string).collect::<Vec<_>>().join(" ")
}

fn f64_row(v: &[f64]) -> String {
    v.iter().map(|x| format_f64(*x)).collect::<Vec<_>>().join(" ")
}

fn classify_text<T: Field>(
    doc: &DefinitionDocument,
    op: Option<&[Vec<Literal>]>,
    tol: &Tolerance,
    format: Format,
) -> Result<String> {
    let g = doc.build::<T>(tol)?;
    let a = operator_matrix(&g, op)?;
    let c = classify_symmetric_operator(&a, g.metric(), tol)?;
    let residual = c.reconstruction_residual(&a.to_f64());
    let metric_residual = c.metric_residual(&g.metric().matrix().to_f64());
    let p = &c.basis_change;
    let mut o = String::new();
    match format {
        Format::Kv => {
            let _ = writeln!(o, "type_tag={}", c.type_tag);
            let _ = writeln!(o, "backend={}", c.backend);
            let _ = writeln!(o, "alphas={}", scalars(&c.alphas));
            if let Some(a) = &c.a {
                let _ = writeln!(o, "a={a}");
            }
            if let Some(b) = c.b_string() {
                let _ = writeln!(o, "b={b}");
            }
            if let Some(b2) = &c.b_squared {
                let _ = writeln!(o, "b_squared={b2}");
            }
            if let Some(s) = c.a2_sign {
                let _ = writeln!(o, "a2_sign={s}");
            }
            let _ = writeln!(o, "residual={}", format_f64(residual));
            let _ = writeln!(o, "metric_residual={}", format_f64(metric_residual));
            for i in 0..p.rows() {
                let _ = writeln!(o, "P.{i}={}", f64_row(&p.row(i)));
            }
        }
        Format::Text => {
            let _ = writeln!(o, "type {}", c.type_tag);
            if !c.alphas.is_empty() {
                let _ = writeln!(o, "eigenvalues on h  {}", scalars(&c.alphas));
            }
            if let Some(a) = &c.a {
                let _ = writeln!(o, "a = {a}");
            }
            if let Some(b) = c.b_string() {
                let _ = writeln!(o, "b = {b}");
            }
            if let Some(s) = c.a2_sign {
                let _ = writeln!(o, "A2 sign {s:+}");
            }
            let _ = writeln!(o, "P with A = P^-1 Ahat P and G = P^T Ghat P:");
            for i in 0..p.rows() {
                let _ = writeln!(o, "  [ {} ]", f64_row(&p.row(i)));
            }
            let _ = writeln!(
                o,
                "residuals: operator {}, metric {}",
                format_f64(residual),
                format_f64(metric_residual)
            );
        }
    }
    Ok(o)
}

fn codazzi_text<T: Field>(
    doc: &DefinitionDocument,
    op: Option<&[Vec<Literal>]>,
    forms: &[Formulation],
    tol: &Tolerance,
    format: Format,
) -> Result<String> {
    let g = doc.build::<T>(tol)?;
    let a = operator_matrix(&g, op)?;
    let reports: Vec<CodazziReport<T>> = forms.iter().map(|f| codazzi_report(&g, &a, *f, tol)).collect::<Result<_>>()?;
    let names = g.names();
    let mut o = String::new();
    for r in &reports {
        let (i, j, k) = r.worst_triple;
        match format {
            Format::Kv => {
                let key = r.formulation;
                let _ = writeln!(o, "codazzi.{key}={}", r.is_codazzi);
                let _ = writeln!(o, "codazzi.{key}.defect={}", r.defect.to_scalar());
                let _ = writeln!(o, "codazzi.{key}.worst_triple={} {} {}", names[i], names[j], names[k]);
            }
            Format::Text => {
                let _ = writeln!(
                    o,
                    "{:<9} {} (defect {}, worst at {} {} {})",
                    r.formulation.to_string(),
                    if r.is_codazzi { "Codazzi" } else { "not Codazzi" },
                    r.defect.to_scalar(),
                    names[i],
                    names[j],
                    names[k]
                );
            }
        }
    }
    if reports.len() > 1 {
        let agree = reports.windows(2).all(|w| w[0].is_codazzi == w[1].is_codazzi);
        match format {
            Format::Kv => {
                let _ = writeln!(o, "codazzi.agree={agree}");
            }
            Format::Text => {
                let _ = writeln!(o, "formulations {}", if agree { "agree" } else { "DISAGREE" });
            }
        }
    }
    Ok(o)
}

fn literal_arg(name: &str, text: &str) -> Result<Literal> {
    parse_literal(text, 1, 1).map_err(|e| Error::BadParam(format!("--{name}: {e}")))
}

fn vector_arg(name: &str, text: &str) -> Result<Vec<f64>> {
    text.split(',').map(|s| literal_arg(name, s.trim()).map(|l| l.to_f64())).collect()
}

fn required<'a>(name: &str, v: &'a Option<String>) -> Result<&'a str> {
    v.as_deref().ok_or_else(|| Error::BadParam(format!("--{name} is required together with --h")))
}

fn describe(d: &SplitDecomposition<f64>) -> Vec<String> {
    let mut out = vec![format!("expected Ricci type {}", d.type_tag())];
    for b in &d.h_blocks {
        out.push(format!("eigenvalue {} with multiplicity {}", format_f64(b.alpha), b.basis.len()));
    }
    if let Some(l) = &d.l_part {
        let extra = match l {
            NullPart::ZZbar { b, .. } => format!(", b = {}", format_f64(*b)),
            NullPart::A2 { sign, .. } => format!(", sign {sign:+}"),
            NullPart::A3 { .. } => String::new(),
        };
        out.push(format!("null part a = {}{extra}", format_f64(*l.a())));
    }
    out
}

fn example_header(name: &str, sign: RootSign, ex: &Example, quadratic: &str, root: &str, lhs: &str) -> Vec<String> {
    let s = if sign == RootSign::Plus { "+" } else { "-" };
    let mut c = vec![
        format!("{name}, sign {s}"),
        format!("root of {quadratic} = 0 used: a = (-1 {s} {root})/2 = {}", format_f64(ex.a)),
        format!("l = {lhs} = {}", format_f64(ex.l)),
        format!("X = U = a*H, |X|^2 = {}", format_f64(ex.a * ex.a * ex.l)),
    ];
    c.extend(describe(&ex.family.decomposition));
    c
}

/// Text of the definition file for a family command.
pub fn family_definition(cmd: &FamilyCommand) -> Result<String> {
    let tol = Tolerance::default();
    match cmd {
        FamilyCommand::Sl2 { alpha } => {
            let lit = literal_arg("alpha", alpha)?;
            let header = vec![format!("sl(2,R), alpha = {lit}"), "expected Ricci type ZZbar".to_string()];
            if lit.is_rational() {
                Ok(emit_definition(&sl2_harmonic(&lit.to_rational()?)?, &header))
            } else {
                Ok(emit_definition(&sl2_harmonic(&lit.to_f64())?, &header))
            }
        }
        FamilyCommand::Zzcore { alpha, epsilon } => {
            let alpha = literal_arg("alpha", alpha)?.to_f64();
            let f = zz_core(ZZCoreParams::new(alpha, *epsilon)?)?;
            let mut header = vec![format!("zz-bar core, alpha = {}, epsilon = {epsilon}", format_f64(alpha))];
            header.extend(describe(&f.decomposition));
            Ok(emit_definition(&f.algebra, &header))
        }
        FamilyCommand::Zzprod { alpha, h } => {
            let lit = literal_arg("alpha", alpha)?;
            let hdoc = match h {
                Some(p) => Some(load_definition(p)?),
                None => None,
            };
            let exact = lit.is_rational() && hdoc.as_ref().is_none_or(|d| d.default_backend() == Backend::Exact);
            let header = |d: &SplitDecomposition<f64>| {
                let mut c = vec![format!("sl(2,R) + h, alpha = {lit}")];
                c.extend(describe(d));
                c
            };
            if exact {
                let h = match &hdoc {
                    Some(d) => d.build::<Rational>(&tol)?,
                    None => empty_h()?,
                };
                let f = build_zz_product(&lit.to_rational()?, &h)?;
                Ok(emit_definition(&f.algebra, &header(&f.decomposition)))
            } else {
                let h = match &hdoc {
                    Some(d) => d.build::<f64>(&tol)?,
                    None => empty_h()?,
                };
                let f = build_zz_product(&lit.to_f64(), &h)?;
                Ok(emit_definition(&f.algebra, &header(&f.decomposition)))
            }
        }
        FamilyCommand::A2 { h, x, alpha } => {
            let f = match h {
                None => a2_example()?,
                Some(p) => {
                    let h = load_definition(p)?.build::<f64>(&tol)?;
                    let spec = A2FamilySpec {
                        h,
                        x: vector_arg("x", required("x", x)?)?,
                        alpha: literal_arg("alpha", required("alpha", alpha)?)?.to_f64(),
                    };
                    build_a2(&spec)?
                }
            };
            let mut header = vec!["A2 family".to_string()];
            header.extend(describe(&f.decomposition));
            Ok(emit_definition(&f.algebra, &header))
        }
        FamilyCommand::A3 {
            h,
            x,
            u,
            c,
            sign,
            lambda,
        } => {
            let f = match h {
                None => a3_example(sign.parse()?, *lambda)?,
                Some(p) => {
                    let h = load_definition(p)?.build::<f64>(&tol)?;
                    let m = parse_matrix_file(required("c", c)?)?;
                    let rows = m.iter().map(|r| r.iter().map(Literal::to_f64).collect()).collect();
                    let spec = A3FamilySpec {
                        h,
                        x: vector_arg("x", required("x", x)?)?,
                        u: vector_arg("u", required("u", u)?)?,
                        c: Matrix::from_rows(rows)?,
                    };
                    build_a3(&spec)?
                }
            };
            let mut header = vec!["A3 family".to_string()];
            header.extend(describe(&f.decomposition));
            Ok(emit_definition(&f.algebra, &header))
        }
        FamilyCommand::Ex5d { sign, alternate } => {
            let sign: RootSign = sign.parse()?;
            let ex = if *alternate { example_5d_alternate(sign)? } else { example_5d(sign)? };
            let s = if sign == RootSign::Plus { "-" } else { "+" };
            let mut header = example_header(
                "5-dimensional example",
                sign,
                &ex,
                "a^2 + a - 1",
                "sqrt(5)",
                &format!("(4*sqrt(5) {s} 1)/(3*sqrt(5) {s} 1)"),
            );
            header.push(if *alternate {
                "e-coefficient of [ebar,H] is (2l-1)a/l; this curvature is not harmonic".to_string()
            } else {
                "e-coefficient of [ebar,H] is (2l-3)a/l".to_string()
            });
            Ok(emit_definition(&ex.family.algebra, &header))
        }
        FamilyCommand::Ex6d { sign, lambda } => {
            let sign: RootSign = sign.parse()?;
            let ex = example_6d(sign, *lambda)?;
            let s = if sign == RootSign::Plus { "-" } else { "+" };
            let mut header = example_header(
                "6-dimensional example",
                sign,
                &ex,
                "a^2 + a - 1/2",
                "sqrt(3)",
                &format!("2(4*sqrt(3) {s} 1)/(3*sqrt(3) {s} 1)"),
            );
            header.push(format!("C = lambda J on span(e1, e2), lambda = {}", format_f64(*lambda)));
            Ok(emit_definition(&ex.family.algebra, &header))
        }
    }
}

fn empty_h<T: Field>() -> Result<PseudoEuclideanLieAlgebra<T>> {
    PseudoEuclideanLieAlgebra::new(
        crate::liealg::LieAlgebra::abelian(0),
        BilinearForm::identity(0),
        &Tolerance::default(),
    )
}
