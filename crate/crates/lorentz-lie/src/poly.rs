//! Exact polynomials over the rationals, coefficients in ascending order.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::scalar::Rational;

pub type Poly = Vec<Rational>;

pub fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

pub fn degree(p: &Poly) -> Option<usize> {
    let p = trim(p.clone());
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

pub fn monic(p: &Poly) -> Poly {
    let p = trim(p.clone());
    match p.last() {
        Some(lead) => {
            let lead = lead.clone();
            p.into_iter().map(|c| c / lead.clone()).collect()
        }
        None => p,
    }
}

pub fn derivative(p: &Poly) -> Poly {
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.clone() * Rational::from_integer(BigInt::from(i)))
            .collect(),
    )
}

/// Quotient and remainder; `d` must be nonzero.
pub fn divrem(p: &Poly, d: &Poly) -> (Poly, Poly) {
    let d = trim(d.clone());
    let mut r = trim(p.clone());
    let dd = d.len() - 1;
    let lead = d[dd].clone();
    if r.len() < d.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![Rational::zero(); r.len() - dd];
    while r.len() >= d.len() {
        let shift = r.len() - d.len();
        let c = r[r.len() - 1].clone() / lead.clone();
        for (i, di) in d.iter().enumerate() {
            r[shift + i] = r[shift + i].clone() - c.clone() * di.clone();
        }
        q[shift] = c;
        r.pop();
        r = trim(r);
    }
    (trim(q), r)
}

/// Monic greatest common divisor.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    let (mut a, mut b) = (trim(a.clone()), trim(b.clone()));
    while !b.is_empty() {
        let (_, r) = divrem(&a, &b);
        a = b;
        b = r;
    }
    monic(&a)
}

pub fn eval(p: &Poly, x: &Rational) -> Rational {
    p.iter().rev().fold(Rational::zero(), |acc, c| acc * x.clone() + c.clone())
}

/// The square-free part p / gcd(p, p').
pub fn square_free(p: &Poly) -> Poly {
    let g = gcd(p, &derivative(p));
    monic(&divrem(p, &g).0)
}

/// Multiplicity of the root x in p (p nonzero).
pub fn multiplicity(p: &Poly, x: &Rational) -> usize {
    let lin = vec![-x.clone(), Rational::one()];
    let mut p = trim(p.clone());
    let mut k = 0;
    loop {
        let (q, r) = divrem(&p, &lin);
        if !r.is_empty() {
            return k;
        }
        p = q;
        k += 1;
    }
}

/// Continued-fraction convergents of x with denominators up to `max_den`.
pub fn convergents(x: f64, max_den: i64) -> Vec<Rational> {
    let mut out = Vec::new();
    if !x.is_finite() {
        return out;
    }
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut y = x;
    for _ in 0..64 {
        let a = y.floor();
        let ai = BigInt::from(a as i64);
        let h2 = &ai * &h1 + &h0;
        let k2 = &ai * &k1 + &k0;
        if k2 > BigInt::from(max_den) {
            break;
        }
        out.push(Rational::new(h2.clone(), k2.clone()));
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = y - a;
        if frac.abs() < 1e-15 {
            break;
        }
        y = 1.0 / frac;
    }
    out
}

/// Exact rational root near the float estimate, if one exists.
pub fn snap_root(p: &Poly, x: f64, max_den: i64) -> Option<Rational> {
    convergents(x, max_den).into_iter().rev().find(|q| eval(p, q).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn square_free_of_double_root() {
        // (x-2)^2 (x-5)
        let p = vec![q(-20, 1), q(24, 1), q(-9, 1), q(1, 1)];
        assert_eq!(square_free(&p), vec![q(10, 1), q(-7, 1), q(1, 1)]);
        assert_eq!(multiplicity(&p, &q(2, 1)), 2);
        assert_eq!(multiplicity(&p, &q(5, 1)), 1);
    }

    #[test]
    fn snaps_fractions() {
        let p = vec![q(2, 1), q(-3, 1)]; // 2 - 3x
        assert_eq!(snap_root(&p, 0.6666666666666, 1000), Some(q(2, 3)));
        assert_eq!(snap_root(&p, 0.9, 1000), None);
    }
}
