//! Exact and float scalar backends.
//!
//! Generic code is written against [`Field`], implemented by [`Rational`]
//! (arbitrary precision) and `f64`. The runtime-tagged [`Scalar`] is what
//! crosses the file and report boundary.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Backend {
    Exact,
    Float,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::Exact => "exact",
            Backend::Float => "float",
        })
    }
}

/// Comparison thresholds for the float backend; exact arithmetic ignores them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            rel: 1e-9,
            abs: 1e-12,
        }
    }
}

impl Tolerance {
    pub fn new(rel: f64, abs: f64) -> Result<Self> {
        if !(rel >= 0.0 && abs >= 0.0) {
            return Err(Error::BadParam(format!("tolerance must be non-negative, got rel={rel}, abs={abs}")));
        }
        Ok(Tolerance { rel, abs })
    }

    /// Threshold for a quantity whose natural magnitude is `scale`.
    pub fn bound(&self, scale: f64) -> f64 {
        self.abs + self.rel * scale
    }
}

/// Arithmetic contract shared by both backends.
pub trait Field:
    Clone + fmt::Debug + fmt::Display + PartialEq + PartialOrd + Signed + Send + Sync + 'static
{
    const BACKEND: Backend;

    fn from_i64(v: i64) -> Self;
    fn ratio(num: i64, den: i64) -> Self;
    fn to_f64(&self) -> f64;
    fn to_scalar(&self) -> Scalar;
    fn from_literal(lit: &Literal) -> Result<Self>;

    /// Exact backend: true only for zero. Float: |x| <= bound.
    fn negligible(&self, bound: f64) -> bool;

    fn from_scalar(s: &Scalar) -> Result<Self>;

    fn is_exact() -> bool {
        Self::BACKEND == Backend::Exact
    }
}

impl Field for f64 {
    const BACKEND: Backend = Backend::Float;

    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn to_scalar(&self) -> Scalar {
        Scalar::Float(*self)
    }
    fn from_literal(lit: &Literal) -> Result<Self> {
        Ok(lit.to_f64())
    }
    fn negligible(&self, bound: f64) -> bool {
        self.abs() <= bound
    }
    fn from_scalar(s: &Scalar) -> Result<Self> {
        match s {
            Scalar::Float(x) => Ok(*x),
            Scalar::Exact(_) => Err(Error::MixedBackend),
        }
    }
}

impl Field for Rational {
    const BACKEND: Backend = Backend::Exact;

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn to_scalar(&self) -> Scalar {
        Scalar::Exact(self.clone())
    }
    fn from_literal(lit: &Literal) -> Result<Self> {
        lit.to_rational()
    }
    fn negligible(&self, _bound: f64) -> bool {
        self.is_zero()
    }
    fn from_scalar(s: &Scalar) -> Result<Self> {
        match s {
            Scalar::Exact(q) => Ok(q.clone()),
            Scalar::Float(_) => Err(Error::MixedBackend),
        }
    }
}

/// A value tagged with its backend.
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Exact(Rational),
    Float(f64),
}

impl Scalar {
    pub fn backend(&self) -> Backend {
        match self {
            Scalar::Exact(_) => Backend::Exact,
            Scalar::Float(_) => Backend::Float,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(q) => Field::to_f64(q),
            Scalar::Float(x) => *x,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(q) => q.is_zero(),
            Scalar::Float(x) => *x == 0.0,
        }
    }

    pub fn zero(backend: Backend) -> Scalar {
        match backend {
            Backend::Exact => Scalar::Exact(Rational::zero()),
            Backend::Float => Scalar::Float(0.0),
        }
    }

    fn combine(
        &self,
        other: &Scalar,
        fq: impl FnOnce(&Rational, &Rational) -> Option<Rational>,
        ff: impl FnOnce(f64, f64) -> f64,
    ) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => fq(a, b)
                .map(Scalar::Exact)
                .ok_or_else(|| Error::BadParam("division by zero".into())),
            (Scalar::Float(a), Scalar::Float(b)) => Ok(Scalar::Float(ff(*a, *b))),
            _ => Err(Error::MixedBackend),
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar> {
        self.combine(other, |a, b| Some(a + b), |a, b| a + b)
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.combine(other, |a, b| Some(a - b), |a, b| a - b)
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.combine(other, |a, b| Some(a * b), |a, b| a * b)
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar> {
        self.combine(
            other,
            |a, b| if b.is_zero() { None } else { Some(a / b) },
            |a, b| a / b,
        )
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(q) => write!(f, "{}", q),
            Scalar::Float(x) => f.write_str(&format_f64(*x)),
        }
    }
}

/// 17 significant digits, positional when the exponent is moderate.
pub fn format_f64(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.16e}", x);
    let (mant, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    let digits: String = mant.chars().filter(|c| c.is_ascii_digit()).collect();
    format_digits(mant.starts_with('-'), &digits, exp)
}

/// √q to 17 significant digits, correctly rounded from the exact value.
pub fn format_sqrt_rational(q: &Rational) -> Result<String> {
    if q.is_negative() {
        return Err(Error::BadParam(format!("square root of negative {q}")));
    }
    if q.is_zero() {
        return Ok("0".to_string());
    }
    // r = floor(√q · 10^k) with at least 20 digits
    let ten = BigInt::from(10);
    let mut k: i64 = 0;
    let mut r;
    loop {
        let scaled = if k >= 0 {
            q.numer() * num_traits::pow(ten.clone(), 2 * k as usize) / q.denom()
        } else {
            q.numer() / (q.denom() * num_traits::pow(ten.clone(), (-2 * k) as usize))
        };
        r = scaled.sqrt();
        let len = r.to_string().len();
        if len >= 20 {
            break;
        }
        k += 20 - len as i64 + 1;
    }
    let full = r.to_string();
    let mut kept: BigInt = full[..17].parse().expect("digits");
    if full.as_bytes()[17] >= b'5' {
        kept += 1;
    }
    let mut digits = kept.to_string();
    // a carry (999… → 1000…) adds one digit
    let exp = (full.len() as i64 - 1 - k + (digits.len() as i64 - 17)) as i32;
    digits.truncate(17);
    Ok(format_digits(false, &digits, exp))
}

/// d₀.d₁d₂… × 10^exp, positional for moderate exponents, trailing zeros trimmed.
fn format_digits(negative: bool, digits: &str, exp: i32) -> String {
    let sign = if negative { "-" } else { "" };
    if !(-7..=20).contains(&exp) {
        let frac = digits[1..].trim_end_matches('0');
        return if frac.is_empty() {
            format!("{sign}{}e{exp}", &digits[..1])
        } else {
            format!("{sign}{}.{frac}e{exp}", &digits[..1])
        };
    }
    let mut out = sign.to_string();
    if exp < 0 {
        out.push_str("0.");
        for _ in 0..(-exp - 1) {
            out.push('0');
        }
        out.push_str(digits.trim_end_matches('0'));
    } else {
        let split = exp as usize + 1;
        if split >= digits.len() {
            out.push_str(digits);
            for _ in digits.len()..split {
                out.push('0');
            }
        } else {
            out.push_str(&digits[..split]);
            let frac = digits[split..].trim_end_matches('0');
            if !frac.is_empty() {
                out.push('.');
                out.push_str(frac);
            }
        }
    }
    out
}

/// A parsed literal `a + b*sqrt(d)` (b = 0 when there is no surd).
#[derive(Debug, Clone, PartialEq)]
pub struct Literal {
    pub rational: Rational,
    pub surd: Option<(Rational, u64)>,
}

impl Literal {
    pub fn is_rational(&self) -> bool {
        self.surd.as_ref().is_none_or(|(b, _)| b.is_zero())
    }

    pub fn to_rational(&self) -> Result<Rational> {
        if self.is_rational() {
            Ok(self.rational.clone())
        } else {
            Err(Error::ExactUnsupported(self.to_string()))
        }
    }

    pub fn to_f64(&self) -> f64 {
        let a = Field::to_f64(&self.rational);
        match &self.surd {
            Some((b, d)) => a + Field::to_f64(b) * (*d as f64).sqrt(),
            None => a,
        }
    }

    pub fn negate(mut self) -> Literal {
        self.rational = -self.rational;
        if let Some((b, _)) = self.surd.as_mut() {
            *b = -b.clone();
        }
        self
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.surd {
            None => write!(f, "{}", self.rational),
            Some((b, d)) => {
                if self.rational.is_zero() {
                    write!(f, "{}*sqrt({})", b, d)
                } else if b.is_negative() {
                    write!(f, "{} - {}*sqrt({})", self.rational, -b.clone(), d)
                } else {
                    write!(f, "{} + {}*sqrt({})", self.rational, b, d)
                }
            }
        }
    }
}

/// Parse a scalar literal for the given backend.
pub fn parse_scalar(text: &str, backend: Backend) -> Result<Scalar> {
    let lit = parse_literal(text, 1, 1)?;
    match backend {
        Backend::Exact => Ok(Scalar::Exact(lit.to_rational()?)),
        Backend::Float => Ok(Scalar::Float(lit.to_f64())),
    }
}

/// Parse a full literal; `line`/`column` locate `text` inside a larger file.
pub fn parse_literal(text: &str, line: usize, column: usize) -> Result<Literal> {
    let mut p = LitParser::new(text, line, column);
    let lit = p.sum()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error("unexpected trailing characters"));
    }
    Ok(lit)
}

pub(crate) struct LitParser<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    column: usize,
    _src: &'a str,
}

impl<'a> LitParser<'a> {
    pub(crate) fn new(text: &'a str, line: usize, column: usize) -> Self {
        LitParser {
            chars: text.chars().collect(),
            pos: 0,
            line,
            column,
            _src: text,
        }
    }

    pub(crate) fn error(&self, msg: &str) -> Error {
        Error::parse(self.line, self.column + self.pos, msg)
    }

    pub(crate) fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    pub(crate) fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    pub(crate) fn column(&self) -> usize {
        self.column + self.pos
    }

    /// `[A-Za-z_][A-Za-z0-9_']*`, or `None` without consuming anything.
    pub(crate) fn ident(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        if !matches!(self.peek(), Some(c) if c.is_ascii_alphabetic() || c == '_') {
            return None;
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_' || c == '\'') {
            self.pos += 1;
        }
        Some(self.chars[start..self.pos].iter().collect())
    }

    /// True when the next token starts a number or `sqrt(`.
    pub(crate) fn at_number(&self) -> bool {
        let rest: String = self.chars[self.pos..].iter().take(5).collect();
        matches!(self.peek(), Some(c) if c.is_ascii_digit() || c == '.') || rest.starts_with("sqrt(")
    }

    pub(crate) fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    pub(crate) fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn eat_word(&mut self, w: &str) -> bool {
        self.skip_ws();
        let end = self.pos + w.len();
        if end <= self.chars.len() && self.chars[self.pos..end].iter().copied().eq(w.chars()) {
            self.pos = end;
            true
        } else {
            false
        }
    }

    /// `a`, `b*sqrt(d)`, `a + b*sqrt(d)`, `a - b*sqrt(d)`.
    pub(crate) fn sum(&mut self) -> Result<Literal> {
        let first = self.term()?;
        self.skip_ws();
        let sign = match self.peek() {
            Some('+') => 1,
            Some('-') => -1,
            _ => return Ok(first),
        };
        self.pos += 1;
        let second = self.term()?;
        let second = if sign < 0 { second.negate() } else { second };
        match (first.surd, second.surd) {
            (None, Some(s)) => Ok(Literal {
                rational: first.rational + second.rational,
                surd: Some(s),
            }),
            (Some(s), None) => Ok(Literal {
                rational: first.rational + second.rational,
                surd: Some(s),
            }),
            (None, None) => Err(self.error("sum of two rationals is not a literal")),
            (Some(_), Some(_)) => Err(self.error("at most one sqrt term is allowed")),
        }
    }

    /// Signed term without top-level `+`/`-`: `q`, `q*sqrt(d)`, `sqrt(d)`.
    pub(crate) fn term(&mut self) -> Result<Literal> {
        self.skip_ws();
        let mut negative = false;
        while let Some(c) = self.peek() {
            if c == '-' {
                negative = !negative;
                self.pos += 1;
                self.skip_ws();
            } else if c == '+' {
                self.pos += 1;
                self.skip_ws();
            } else {
                break;
            }
        }
        let lit = if self.eat_word("sqrt") {
            Literal {
                rational: Rational::zero(),
                surd: Some((Rational::one(), self.sqrt_arg()?)),
            }
        } else {
            let q = self.rational()?;
            let save = self.pos;
            if self.eat('*') && self.eat_word("sqrt") {
                Literal {
                    rational: Rational::zero(),
                    surd: Some((q, self.sqrt_arg()?)),
                }
            } else {
                self.pos = save;
                Literal {
                    rational: q,
                    surd: None,
                }
            }
        };
        Ok(if negative { lit.negate() } else { lit })
    }

    fn sqrt_arg(&mut self) -> Result<u64> {
        if !self.eat('(') {
            return Err(self.error("expected `(` after sqrt"));
        }
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        let d: u64 = digits
            .parse()
            .map_err(|_| self.error("sqrt argument must be a positive integer"))?;
        if !self.eat(')') {
            return Err(self.error("expected `)`"));
        }
        if d == 0 || !is_square_free(d) {
            return Err(self.error("sqrt argument must be a positive square-free integer"));
        }
        Ok(d)
    }

    /// INT | INT/POSINT | DECIMAL (optionally with an exponent).
    fn rational(&mut self) -> Result<Rational> {
        self.skip_ws();
        let start = self.pos;
        let int_part = self.digits();
        let mut frac_part = String::new();
        if self.peek() == Some('.') {
            self.pos += 1;
            frac_part = self.digits();
        }
        if int_part.is_empty() && frac_part.is_empty() {
            self.pos = start;
            return Err(self.error("expected a number"));
        }
        let mut exponent: i64 = 0;
        if matches!(self.peek(), Some('e') | Some('E')) {
            let save = self.pos;
            self.pos += 1;
            let mut sign = 1;
            if self.peek() == Some('-') {
                sign = -1;
                self.pos += 1;
            } else if self.peek() == Some('+') {
                self.pos += 1;
            }
            let exp_digits = self.digits();
            if exp_digits.is_empty() {
                self.pos = save;
            } else {
                exponent = sign * exp_digits.parse::<i64>().map_err(|_| self.error("exponent out of range"))?;
            }
        }
        let mantissa: BigInt = format!("{}{}", if int_part.is_empty() { "0" } else { &int_part }, frac_part)
            .parse()
            .map_err(|_| self.error("malformed number"))?;
        let scale = exponent - frac_part.len() as i64;
        if scale.abs() > 4000 {
            return Err(self.error("exponent out of range"));
        }
        let ten = BigInt::from(10);
        let mut q = BigRational::from_integer(mantissa);
        if scale >= 0 {
            q *= BigRational::from_integer(num_traits::pow(ten, scale as usize));
        } else {
            q /= BigRational::from_integer(num_traits::pow(ten, (-scale) as usize));
        }
        let decimal = !frac_part.is_empty() || exponent != 0;
        let save = self.pos;
        if !decimal && self.eat('/') {
            self.skip_ws();
            let den = self.digits();
            if den.is_empty() {
                return Err(self.error("expected a positive integer denominator"));
            }
            let den: BigInt = den.parse().map_err(|_| self.error("malformed denominator"))?;
            if den.is_zero() {
                return Err(self.error("zero denominator"));
            }
            q /= BigRational::from_integer(den);
        } else {
            self.pos = save;
        }
        Ok(q)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }
}

fn is_square_free(d: u64) -> bool {
    let mut p = 2u64;
    while p * p <= d {
        if d % (p * p) == 0 {
            return false;
        }
        p += 1;
    }
    true
}

/// Gcd-reduced check used by tests; `BigRational` normalizes on construction.
pub fn is_reduced(q: &Rational) -> bool {
    q.numer().gcd(q.denom()).is_one() && q.denom().is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fraction_exactly() {
        let s = parse_scalar("-8/5", Backend::Exact).unwrap();
        assert_eq!(s, Scalar::Exact(Rational::ratio(-8, 5)));
    }

    #[test]
    fn parses_surd_in_float() {
        let s = parse_scalar("1 + 2*sqrt(3)", Backend::Float).unwrap();
        assert!((s.to_f64() - (1.0 + 2.0 * 3f64.sqrt())).abs() < 1e-15);
        assert!((s.to_f64() - 4.464101615137754).abs() < 1e-14);
    }

    #[test]
    fn rejects_surd_in_exact() {
        let err = parse_scalar("1 + 2*sqrt(3)", Backend::Exact).unwrap_err();
        assert_eq!(err.code(), "EXACT_UNSUPPORTED");
    }

    #[test]
    fn decimals_are_exact() {
        let s = parse_scalar("0.25", Backend::Exact).unwrap();
        assert_eq!(s, Scalar::Exact(Rational::ratio(1, 4)));
        let s = parse_scalar("-1.5e-2", Backend::Exact).unwrap();
        assert_eq!(s, Scalar::Exact(Rational::ratio(-3, 200)));
    }

    #[test]
    fn surd_variants() {
        for (txt, want) in [
            ("sqrt(5)", 5f64.sqrt()),
            ("-sqrt(5)", -(5f64.sqrt())),
            ("1/2 - 3/2*sqrt(5)", 0.5 - 1.5 * 5f64.sqrt()),
            ("  -1/2*sqrt(2) + 3 ", 3.0 - 0.5 * 2f64.sqrt()),
        ] {
            let got = parse_scalar(txt, Backend::Float).unwrap().to_f64();
            assert!((got - want).abs() < 1e-15, "{txt}");
        }
    }

    #[test]
    fn malformed_literals() {
        for txt in ["", "1/", "1/0", "sqrt(4)", "sqrt(-3)", "1 + 2", "abc", "1/-2", "2*sqrt(3) + sqrt(5)"] {
            let err = parse_scalar(txt, Backend::Float).unwrap_err();
            assert_eq!(err.code(), "PARSE_ERROR", "{txt}");
        }
    }

    #[test]
    fn mixed_backend_is_rejected() {
        let a = Scalar::Exact(Rational::one());
        let b = Scalar::Float(1.0);
        assert_eq!(a.try_add(&b).unwrap_err(), Error::MixedBackend);
        assert_eq!(f64::from_scalar(&a).unwrap_err(), Error::MixedBackend);
    }

    #[test]
    fn exact_values_stay_reduced() {
        let q = Rational::ratio(6, -8) + Rational::ratio(1, 4);
        assert!(is_reduced(&q));
        assert_eq!(q, Rational::ratio(-1, 2));
    }

    #[test]
    fn seventeen_digits() {
        // the binary64 nearest to √3/2 is 0.866025403784438596...
        assert_eq!(format_f64(3f64.sqrt() / 2.0), "0.8660254037844386");
        assert_eq!(format_sqrt_rational(&Rational::ratio(3, 4)).unwrap(), "0.86602540378443865");
        assert_eq!(format_sqrt_rational(&Rational::from_i64(4)).unwrap(), "2");
        assert_eq!(format_sqrt_rational(&Rational::ratio(1, 100)).unwrap(), "0.1");
        assert_eq!(format_sqrt_rational(&Rational::from_i64(2)).unwrap(), "1.414213562373095");
        assert_eq!(format_sqrt_rational(&Rational::ratio(1, 10i64.pow(18))).unwrap(), "1e-9");
        assert_eq!(format_sqrt_rational(&Rational::ratio(99999999999999999, 100000000000000000)).unwrap(), "0.99999999999999999");
        assert_eq!(format_sqrt_rational(&Rational::ratio(999999999999999999, 1000000000000000000)).unwrap(), "1");
        assert_eq!(format_f64(0.5), "0.5");
        assert_eq!(format_f64(-2.0), "-2");
        assert_eq!(format_f64(1e-30), "1.0000000000000001e-30");
        assert_eq!(format_f64(2f64.powi(-40)), "9.0949470177292824e-13");
        for x in [0.1, 1.0 / 3.0, -123.456, 6.02e23, 1e-5] {
            assert_eq!(format_f64(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn backends_agree_on_rationals() {
        for txt in ["-8/5", "7", "0.125", "22/7"] {
            let e = parse_scalar(txt, Backend::Exact).unwrap().to_f64();
            let f = parse_scalar(txt, Backend::Float).unwrap().to_f64();
            assert!((e - f).abs() <= 1e-12);
        }
    }
}
