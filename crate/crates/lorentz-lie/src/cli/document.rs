//! Definition files: a metric Lie algebra written by basis names.
//!
//! ```text
//! # sl(2,R) with Ricci of type ZZbar
//! mode = exact
//! dim = 3
//! basis = X1 X2 X3
//! metric = [[-1/2, 0, 1/2], [0, 1, 0], [1/2, 0, 0]]
//! bracket X1 X2 = 2*X3
//! bracket X1 X3 = -2*X2
//! bracket X2 X3 = 2*X1
//! ```
//!
//! Scalars use the literal grammar of [`crate::scalar::parse_literal`]; a bracket
//! coefficient with both a rational and a surd part is written in parentheses,
//! `(1 + 2*sqrt(3))*e`. The same content is accepted as one JSON object with
//! keys `dim`, `basis`, `metric`, `brackets` (a list of `[name, name, {name: scalar}]`)
//! and `mode`, where scalars are JSON numbers or literal strings.

use std::collections::HashMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::forms::BilinearForm;
use crate::liealg::{LieAlgebra, PseudoEuclideanLieAlgebra};
use crate::matrix::Matrix;
use crate::scalar::{parse_literal, Backend, Field, LitParser, Literal, Tolerance};

#[derive(Debug, Clone, PartialEq)]
pub struct BracketLine {
    pub left: usize,
    pub right: usize,
    /// (basis index, coefficient); repeated indices add up.
    pub terms: Vec<(usize, Literal)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DefinitionDocument {
    pub basis: Vec<String>,
    pub metric: Vec<Vec<Literal>>,
    pub brackets: Vec<BracketLine>,
    pub mode: Option<Backend>,
}

impl DefinitionDocument {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_rational(&self) -> bool {
        self.metric.iter().flatten().all(Literal::is_rational)
            && self.brackets.iter().flat_map(|b| &b.terms).all(|(_, c)| c.is_rational())
    }

    /// The mode hint, else exact when every scalar is rational.
    pub fn default_backend(&self) -> Backend {
        self.mode.unwrap_or(if self.is_rational() { Backend::Exact } else { Backend::Float })
    }

    pub fn build<T: Field>(&self, tol: &Tolerance) -> Result<PseudoEuclideanLieAlgebra<T>> {
        let n = self.dim();
        let mut brackets = Vec::with_capacity(self.brackets.len());
        for b in &self.brackets {
            let mut v = vec![T::zero(); n];
            for (k, c) in &b.terms {
                v[*k] = v[*k].clone() + T::from_literal(c)?;
            }
            brackets.push((b.left, b.right, v));
        }
        let alg = LieAlgebra::from_brackets(self.basis.clone(), &brackets)?;
        let rows = self
            .metric
            .iter()
            .map(|r| r.iter().map(T::from_literal).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let metric = BilinearForm::new(Matrix::from_rows(rows)?, tol)?;
        PseudoEuclideanLieAlgebra::new(alg, metric, tol)
    }
}

/// A matrix in the metric grammar, alone or as `name = [[...]]`, for operator files.
pub fn parse_matrix_file(text: &str) -> Result<Vec<Vec<Literal>>> {
    let mut cells = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = strip_comment(raw);
        for (col, c) in line.chars().enumerate() {
            cells.push(Cell { c, line: ln + 1, column: col + 1 });
        }
        cells.push(Cell { c: '\n', line: ln + 1, column: line.chars().count() + 1 });
    }
    let start = match cells.iter().position(|c| c.c == '[') {
        Some(p) => p,
        None => return Err(Error::parse(1, 1, "expected a matrix `[[...], ...]`")),
    };
    let prefix: String = cells[..start].iter().map(|c| c.c).collect();
    let prefix = prefix.trim();
    if !prefix.is_empty() {
        let name = prefix.strip_suffix('=').map(str::trim).unwrap_or("");
        if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(Error::parse(cells[0].line, cells[0].column, "expected `name = [[...]]` or a bare matrix"));
        }
    }
    let mut cur = Cursor { cells: &cells[start..], pos: 0 };
    let m = cur.matrix()?;
    cur.skip_ws();
    if let Some(c) = cur.cell() {
        return Err(Error::parse(c.line, c.column, "unexpected text after the matrix"));
    }
    square(&m, cells[start].line, cells[start].column)?;
    Ok(m)
}

pub fn parse_definition(text: &str) -> Result<DefinitionDocument> {
    if text.trim_start().starts_with('{') {
        return parse_json(text);
    }
    let mut dim: Option<(usize, usize)> = None;
    let mut basis: Option<(Vec<String>, usize)> = None;
    let mut metric: Option<(Vec<Vec<Literal>>, usize, usize)> = None;
    let mut mode = None;
    let mut raw_brackets: Vec<RawBracket> = Vec::new();

    let lines: Vec<&str> = text.lines().collect();
    let mut ln = 0;
    while ln < lines.len() {
        let line_no = ln + 1;
        let line = strip_comment(lines[ln]);
        ln += 1;
        if line.trim().is_empty() {
            continue;
        }
        let indent = line.len() - line.trim_start().len();
        let body = line.trim_start();
        let key_len = body.find(|c: char| !c.is_ascii_alphanumeric() && c != '_').unwrap_or(body.len());
        let key = &body[..key_len];
        let rest = &body[key_len..];
        let col_rest = indent + key_len + 1;
        match key {
            "bracket" => raw_brackets.push(split_bracket(rest, line_no, col_rest)?),
            "dim" | "basis" | "metric" | "mode" => {
                let (value, value_col) = after_equals(rest, line_no, col_rest)?;
                match key {
                    "dim" => {
                        if dim.is_some() {
                            return Err(Error::parse(line_no, indent + 1, "`dim` given twice"));
                        }
                        let n = value
                            .trim()
                            .parse::<usize>()
                            .map_err(|_| Error::parse(line_no, value_col, "`dim` must be a non-negative integer"))?;
                        dim = Some((n, line_no));
                    }
                    "basis" => {
                        if basis.is_some() {
                            return Err(Error::parse(line_no, indent + 1, "`basis` given twice"));
                        }
                        basis = Some((parse_basis(value, line_no, value_col)?, line_no));
                    }
                    "mode" => {
                        if mode.is_some() {
                            return Err(Error::parse(line_no, indent + 1, "`mode` given twice"));
                        }
                        mode = Some(match value.trim() {
                            "exact" => Backend::Exact,
                            "float" => Backend::Float,
                            _ => return Err(Error::parse(line_no, value_col, "mode must be `exact` or `float`")),
                        });
                    }
                    _ => {
                        if metric.is_some() {
                            return Err(Error::parse(line_no, indent + 1, "`metric` given twice"));
                        }
                        // the matrix may continue over several lines until its brackets close
                        let mut cells = Vec::new();
                        let lead = value.len() - value.trim_start().len();
                        push_cells(&mut cells, value, line_no, value_col);
                        while depth(&cells) > 0 && ln < lines.len() {
                            push_cells(&mut cells, strip_comment(lines[ln]), ln + 1, 1);
                            ln += 1;
                        }
                        let mut cur = Cursor { cells: &cells, pos: 0 };
                        let m = cur.matrix()?;
                        cur.skip_ws();
                        if let Some(c) = cur.cell() {
                            return Err(Error::parse(c.line, c.column, "unexpected text after the metric"));
                        }
                        square(&m, line_no, value_col + lead)?;
                        metric = Some((m, line_no, value_col + lead));
                    }
                }
            }
            _ => {
                return Err(Error::parse(
                    line_no,
                    indent + 1,
                    "expected `dim`, `basis`, `metric`, `mode`, `bracket` or a `#` comment",
                ))
            }
        }
    }

    let (basis, basis_line) = basis.ok_or_else(|| Error::parse(1, 1, "missing `basis = ...` line"))?;
    let (metric, metric_line, metric_col) = metric.ok_or_else(|| Error::parse(1, 1, "missing `metric = [[...]]` line"))?;
    if let Some((n, l)) = dim {
        if n != basis.len() {
            return Err(Error::parse(l, 1, format!("dim = {n} but the basis has {} names", basis.len())));
        }
    }
    if metric.len() != basis.len() {
        return Err(Error::parse(
            metric_line,
            metric_col,
            format!("metric is {0}x{0} but the basis has {1} names", metric.len(), basis.len()),
        ));
    }
    let _ = basis_line;
    let index: HashMap<&str, usize> = basis.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    let lookup = |name: &str, line: usize, column: usize| {
        index.get(name).copied().ok_or_else(|| Error::UnknownName {
            name: name.to_string(),
            line,
            column,
        })
    };
    let mut brackets = Vec::with_capacity(raw_brackets.len());
    let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
    for rb in raw_brackets {
        let i = lookup(&rb.left.0, rb.line, rb.left.1)?;
        let j = lookup(&rb.right.0, rb.line, rb.right.1)?;
        if i == j {
            return Err(Error::parse(rb.line, rb.right.1, format!("self-bracket [{0},{0}] is always zero", rb.left.0)));
        }
        let key = (i.min(j), i.max(j));
        if seen.insert(key, rb.line).is_some() {
            return Err(Error::DuplicateBracket(basis[key.0].clone(), basis[key.1].clone()));
        }
        let mut terms = Vec::with_capacity(rb.terms.len());
        for (name, column, c) in rb.terms {
            let k = lookup(&name, rb.line, column)?;
            // a reversed pair [j,i] = w is stored as [i,j] = -w
            terms.push((k, if i < j { c } else { c.negate() }));
        }
        brackets.push(BracketLine {
            left: key.0,
            right: key.1,
            terms,
        });
    }
    Ok(DefinitionDocument {
        basis,
        metric,
        brackets,
        mode,
    })
}

/// Canonical text for a metric Lie algebra; `comments` become leading `#` lines.
pub fn emit_definition<T: Field>(g: &PseudoEuclideanLieAlgebra<T>, comments: &[String]) -> String {
    let n = g.dim();
    let names = g.names();
    let mut out = String::new();
    for c in comments {
        for l in c.lines() {
            out.push_str("# ");
            out.push_str(l);
            out.push('\n');
        }
    }
    out.push_str(&format!("mode = {}\n", T::BACKEND));
    out.push_str(&format!("dim = {n}\n"));
    out.push_str(&format!("basis = {}\n", names.join(" ")));
    let rows: Vec<String> = (0..n)
        .map(|i| {
            let r: Vec<String> = (0..n).map(|j| g.metric().matrix()[(i, j)].to_scalar().to_string()).collect();
            format!("[{}]", r.join(", "))
        })
        .collect();
    out.push_str(&format!("metric = [{}]\n", rows.join(", ")));
    for i in 0..n {
        for j in i + 1..n {
            let v = g.algebra().structure(i, j);
            if v.iter().all(|c| c.is_zero()) {
                continue;
            }
            out.push_str(&format!("bracket {} {} = {}\n", names[i], names[j], linear_combination(v, names)));
        }
    }
    out
}

fn linear_combination<T: Field>(v: &[T], names: &[String]) -> String {
    let one = T::from_i64(1);
    let mut out = String::new();
    for (k, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let negative = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if mag != one {
            out.push_str(&mag.to_scalar().to_string());
            out.push('*');
        }
        out.push_str(&names[k]);
    }
    out
}

#[derive(Clone, Copy)]
struct Cell {
    c: char,
    line: usize,
    column: usize,
}

struct RawBracket {
    line: usize,
    left: (String, usize),
    right: (String, usize),
    terms: Vec<(String, usize, Literal)>,
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

fn after_equals(rest: &str, line: usize, column: usize) -> Result<(&str, usize)> {
    let trimmed = rest.trim_start();
    let lead = rest.len() - trimmed.len();
    match trimmed.strip_prefix('=') {
        Some(v) => Ok((v, column + lead + 1)),
        None => Err(Error::parse(line, column + lead, "expected `=`")),
    }
}

fn parse_basis(value: &str, line: usize, column: usize) -> Result<Vec<String>> {
    let mut p = LitParser::new(value, line, column);
    let mut names: Vec<String> = Vec::new();
    loop {
        p.skip_ws();
        if p.at_end() {
            break;
        }
        let col = p.column();
        let name = p.ident().ok_or_else(|| p.error("basis names are identifiers"))?;
        if name == "sqrt" {
            return Err(Error::parse(line, col, "`sqrt` is reserved"));
        }
        if names.contains(&name) {
            return Err(Error::parse(line, col, format!("basis name `{name}` repeated")));
        }
        names.push(name);
    }
    Ok(names)
}

/// ` nameI nameJ = c1*name + ...`
fn split_bracket(rest: &str, line: usize, column: usize) -> Result<RawBracket> {
    let mut p = LitParser::new(rest, line, column);
    let name = |p: &mut LitParser| {
        p.skip_ws();
        let col = p.column();
        p.ident().map(|n| (n, col)).ok_or_else(|| p.error("expected a basis name"))
    };
    let left = name(&mut p)?;
    let right = name(&mut p)?;
    if !p.eat('=') {
        return Err(p.error("expected `=`"));
    }
    let mut terms = Vec::new();
    p.skip_ws();
    if p.at_end() {
        return Err(p.error("empty right-hand side; write `0` for a zero bracket"));
    }
    let mut first = true;
    loop {
        p.skip_ws();
        if p.at_end() {
            break;
        }
        let mut negative = false;
        if !first {
            if p.eat('+') {
            } else if p.eat('-') {
                negative = true;
            } else {
                return Err(p.error("expected `+` or `-` between terms"));
            }
        }
        first = false;
        while p.eat('-') {
            negative = !negative;
        }
        p.skip_ws();
        let coefficient = if p.eat('(') {
            let lit = p.sum()?;
            if !p.eat(')') {
                return Err(p.error("expected `)`"));
            }
            Some(lit)
        } else if p.at_number() {
            Some(p.term()?)
        } else {
            None
        };
        let name = match coefficient {
            Some(ref c) => {
                p.skip_ws();
                if p.at_end() && c.rational.is_zero() && c.is_rational() && terms.is_empty() {
                    // `= 0`
                    break;
                }
                if !p.eat('*') {
                    return Err(p.error("expected `*name` after the coefficient"));
                }
                name(&mut p)?
            }
            None => name(&mut p)?,
        };
        let c = coefficient.unwrap_or(Literal {
            rational: num_traits::One::one(),
            surd: None,
        });
        terms.push((name.0, name.1, if negative { c.negate() } else { c }));
    }
    Ok(RawBracket {
        line,
        left,
        right,
        terms,
    })
}

fn push_cells(cells: &mut Vec<Cell>, text: &str, line: usize, column: usize) {
    for (k, c) in text.chars().enumerate() {
        cells.push(Cell { c, line, column: column + k });
    }
    cells.push(Cell {
        c: '\n',
        line,
        column: column + text.chars().count(),
    });
}

fn depth(cells: &[Cell]) -> i64 {
    cells.iter().fold(0, |d, c| match c.c {
        '[' => d + 1,
        ']' => d - 1,
        _ => d,
    })
}

fn square(m: &[Vec<Literal>], line: usize, column: usize) -> Result<()> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::parse(line, column, "matrix must be square"));
    }
    Ok(())
}

struct Cursor<'a> {
    cells: &'a [Cell],
    pos: usize,
}

impl Cursor<'_> {
    fn cell(&self) -> Option<Cell> {
        self.cells.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.cell(), Some(c) if c.c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn error(&self, msg: &str) -> Error {
        match self.cell().or_else(|| self.cells.last().copied()) {
            Some(c) => Error::parse(c.line, c.column, msg),
            None => Error::parse(1, 1, msg),
        }
    }

    fn expect(&mut self, ch: char) -> Result<()> {
        self.skip_ws();
        match self.cell() {
            Some(c) if c.c == ch => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.error(&format!("expected `{ch}`"))),
        }
    }

    fn peek_is(&mut self, ch: char) -> bool {
        self.skip_ws();
        matches!(self.cell(), Some(c) if c.c == ch)
    }

    fn matrix(&mut self) -> Result<Vec<Vec<Literal>>> {
        self.expect('[')?;
        let mut rows = Vec::new();
        if self.peek_is(']') {
            self.pos += 1;
            return Ok(rows);
        }
        loop {
            rows.push(self.row()?);
            if self.peek_is(',') {
                self.pos += 1;
                continue;
            }
            self.expect(']')?;
            return Ok(rows);
        }
    }

    fn row(&mut self) -> Result<Vec<Literal>> {
        self.expect('[')?;
        let mut row = Vec::new();
        loop {
            self.skip_ws();
            let start = self.pos;
            while matches!(self.cell(), Some(c) if c.c != ',' && c.c != ']' && c.c != '[' && c.c != '\n') {
                self.pos += 1;
            }
            let text: String = self.cells[start..self.pos].iter().map(|c| c.c).collect();
            if text.trim().is_empty() {
                return Err(self.error("expected a scalar"));
            }
            let c0 = self.cells[start];
            row.push(parse_literal(&text, c0.line, c0.column)?);
            if self.peek_is(',') {
                self.pos += 1;
                continue;
            }
            self.expect(']')?;
            return Ok(row);
        }
    }
}

fn parse_json(text: &str) -> Result<DefinitionDocument> {
    use serde_json::Value;
    let v: Value = serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.column(), e.to_string()))?;
    let bad = |msg: &str| Error::parse(1, 1, msg.to_string());
    let obj = v.as_object().ok_or_else(|| bad("expected a JSON object"))?;
    let scalar = |x: &Value| -> Result<Literal> {
        match x {
            Value::Number(n) => parse_literal(&n.to_string(), 1, 1),
            Value::String(s) => parse_literal(s, 1, 1),
            _ => Err(bad("scalars are numbers or literal strings")),
        }
    };
    let basis: Vec<String> = obj
        .get("basis")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing `basis` array"))?
        .iter()
        .map(|s| s.as_str().map(str::to_string).ok_or_else(|| bad("basis names are strings")))
        .collect::<Result<_>>()?;
    let mut lines = vec![format!("basis = {}", basis.join(" "))];
    if let Some(d) = obj.get("dim") {
        lines.push(format!("dim = {}", d.as_u64().ok_or_else(|| bad("`dim` must be an integer"))?));
    }
    if let Some(m) = obj.get("mode") {
        lines.push(format!("mode = {}", m.as_str().ok_or_else(|| bad("`mode` must be a string"))?));
    }
    let metric = obj.get("metric").and_then(Value::as_array).ok_or_else(|| bad("missing `metric` array"))?;
    let rows = metric
        .iter()
        .map(|r| {
            let r = r.as_array().ok_or_else(|| bad("metric rows are arrays"))?;
            let cells = r.iter().map(|x| scalar(x).map(|l| l.to_string())).collect::<Result<Vec<_>>>()?;
            Ok(format!("[{}]", cells.join(", ")))
        })
        .collect::<Result<Vec<_>>>()?;
    lines.push(format!("metric = [{}]", rows.join(", ")));
    for b in obj.get("brackets").and_then(Value::as_array).map(Vec::as_slice).unwrap_or(&[]) {
        let parts = b.as_array().filter(|p| p.len() == 3).ok_or_else(|| bad("brackets are [name, name, {name: scalar}]"))?;
        let (l, r) = match (parts[0].as_str(), parts[1].as_str()) {
            (Some(l), Some(r)) => (l, r),
            _ => return Err(bad("bracket names are strings")),
        };
        let value = parts[2].as_object().ok_or_else(|| bad("bracket values are objects"))?;
        let mut rhs: Vec<String> = Vec::new();
        for (name, c) in value {
            rhs.push(format!("({})*{}", scalar(c)?, name));
        }
        if rhs.is_empty() {
            rhs.push("0".into());
        }
        lines.push(format!("bracket {l} {r} = {}", rhs.join(" + ")));
    }
    parse_definition(&lines.join("\n"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    #[test]
    fn abelian_three_lines() {
        let d = parse_definition("dim = 3\nbasis = a b c\nmetric = [[1,0,0],[0,1,0],[0,0,-1]]\n").unwrap();
        let g = d.build::<Rational>(&Tolerance::default()).unwrap();
        assert!(g.algebra().max_constant().is_zero());
        assert_eq!(d.default_backend(), Backend::Exact);
    }

    #[test]
    fn self_bracket_is_a_parse_error() {
        let e = parse_definition("basis = e f\nmetric = [[0,1],[1,0]]\nbracket e e = f\n").unwrap_err();
        assert_eq!(e.code(), "PARSE_ERROR");
    }

    #[test]
    fn duplicate_and_unknown() {
        let base = "basis = e f g\nmetric = [[1,0,0],[0,1,0],[0,0,1]]\n";
        let e = parse_definition(&format!("{base}bracket e f = g\nbracket f e = g\n")).unwrap_err();
        assert_eq!(e.code(), "DUPLICATE_BRACKET");
        let e = parse_definition(&format!("{base}bracket e f = 2*h\n")).unwrap_err();
        assert_eq!(e.code(), "UNKNOWN_NAME");
        assert_eq!(e, Error::UnknownName { name: "h".into(), line: 3, column: 17 });
    }

    #[test]
    fn coefficients() {
        let d = parse_definition(
            "basis = e f g\nmetric = [[1,0,0],\n  [0,1,0],\n  [0,0,1]]\nbracket e f = g - 1/2*e + (1 + sqrt(3))*f - 3e-2*g\nbracket g f = 0\n",
        )
        .unwrap();
        let g = d.build::<f64>(&Tolerance::default()).unwrap();
        let v = g.algebra().structure(0, 1);
        assert_eq!(v[0], -0.5);
        assert!((v[1] - (1.0 + 3f64.sqrt())).abs() < 1e-15);
        assert!((v[2] - 0.97).abs() < 1e-15);
        assert_eq!(d.default_backend(), Backend::Float);
        assert!(d.build::<Rational>(&Tolerance::default()).is_err());
    }

    #[test]
    fn errors_have_positions() {
        let e = parse_definition("basis = a b\nmetric = [[1, 0], [0, x]]\n").unwrap_err();
        assert_eq!(e.code(), "PARSE_ERROR");
        assert!(e.to_string().starts_with("line 2, column 23"), "{e}");
        let e = parse_definition("basis = a b\nmetric = [[1,0],[0,1]]\nbracket a b 2*a\n").unwrap_err();
        assert!(e.to_string().starts_with("line 3,"), "{e}");
    }

    #[test]
    fn reversed_pair_is_negated() {
        let d = parse_definition("basis = a b\nmetric = [[1,0],[0,1]]\nbracket b a = a\n").unwrap();
        let g = d.build::<Rational>(&Tolerance::default()).unwrap();
        assert_eq!(g.algebra().structure(0, 1)[0], Rational::from_i64(-1));
    }

    #[test]
    fn json_form() {
        let text = r#"{"dim": 2, "basis": ["a", "b"], "metric": [[1, 0], [0, "-1"]], "brackets": [["a", "b", {"b": "1/2"}]]}"#;
        let d = parse_definition(text).unwrap();
        let g = d.build::<Rational>(&Tolerance::default()).unwrap();
        assert_eq!(g.algebra().structure(0, 1)[1], Rational::ratio(1, 2));
    }

    #[test]
    fn operator_file() {
        let m = parse_matrix_file("# Ric\noperator = [[1, 2],\n [3, 4]]\n").unwrap();
        assert_eq!(m[1][0].to_f64(), 3.0);
        assert_eq!(parse_matrix_file("[[1]]").unwrap().len(), 1);
        assert!(parse_matrix_file("[[1, 2]]").is_err());
    }
}
