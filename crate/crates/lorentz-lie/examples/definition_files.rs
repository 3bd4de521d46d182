//! Read a metric Lie algebra from the text definition format, analyze it and
//! write the key=value report. Pass a file path, or run without one to use the
//! built-in text.

use lorentz_lie::cli::{analyze, emit_definition, emit_report, parse_definition, Format};
use lorentz_lie::scalar::{Backend, Rational, Tolerance};

const SAMPLE: &str = "\
# e(1,1): [e3,e1] = e1, [e3,e2] = -e2
dim = 3
basis = e1 e2 e3
metric = [[1, 0, 0],
          [0, 1, 0],
          [0, 0, -1]]
bracket e3 e1 = e1
bracket e3 e2 = -e2
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path)?,
        None => SAMPLE.to_string(),
    };
    let doc = parse_definition(&text)?;
    let tol = Tolerance::default();
    let report = match doc.default_backend() {
        Backend::Exact => {
            let g = doc.build::<Rational>(&tol)?;
            println!("{}", emit_definition(&g, &["normalized".to_string()]));
            analyze(&g, &tol)?
        }
        Backend::Float => analyze(&doc.build::<f64>(&tol)?, &tol)?,
    };
    print!("{}", emit_report(&report, Format::Kv));
    Ok(())
}
