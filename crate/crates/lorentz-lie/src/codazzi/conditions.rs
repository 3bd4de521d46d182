//! Per-type Codazzi condition systems over a split decomposition.
//!
//! `System::Raw` evaluates the equation lists obtained by restricting the bracket
//! identity to the blocks; `System::Solved` evaluates the reduced forms with
//! a_i = a − α_i. Labels are `item.equation`, e.g. `4.3` or `4b.6`.

use std::collections::BTreeMap;
use std::fmt;

use crate::decomposition::{HBlock, NullPart, SplitDecomposition, TypeTag};
use crate::error::{Error, Result};
use crate::liealg::PseudoEuclideanLieAlgebra;
use crate::scalar::{Field, Tolerance};

use super::{check_self_adjoint, sum_with_scale};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum System {
    Raw,
    Solved,
}

impl fmt::Display for System {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            System::Raw => "raw",
            System::Solved => "solved",
        })
    }
}

/// One instance of one condition.
#[derive(Debug, Clone, PartialEq)]
pub struct Residual<T> {
    pub label: String,
    pub value: T,
    /// Sum of the absolute values of the terms.
    pub scale: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConditionItem<T> {
    pub label: String,
    pub passed: bool,
    pub defect: T,
    /// Number of instances evaluated.
    pub checks: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConditionReport<T> {
    pub type_tag: TypeTag,
    pub system: System,
    pub items: Vec<ConditionItem<T>>,
    pub overall: bool,
}

impl<T: Field> ConditionReport<T> {
    pub fn failed(&self) -> impl Iterator<Item = &ConditionItem<T>> {
        self.items.iter().filter(|i| !i.passed)
    }
}

/// Evaluates the condition system for the type of `d` and groups residuals by label.
pub fn check_type_conditions<T: Field>(
    g: &PseudoEuclideanLieAlgebra<T>,
    d: &SplitDecomposition<T>,
    system: System,
    tol: &Tolerance,
) -> Result<ConditionReport<T>> {
    let residuals = condition_residuals(g, d, system, tol)?;
    let mut groups: BTreeMap<(usize, String), (T, f64, usize)> = BTreeMap::new();
    let mut order: BTreeMap<String, usize> = BTreeMap::new();
    for r in residuals {
        let next = order.len();
        let pos = *order.entry(r.label.clone()).or_insert(next);
        let entry = groups.entry((pos, r.label)).or_insert((T::zero(), 0.0, 0));
        let v = r.value.abs();
        if v > entry.0 {
            entry.0 = v;
        }
        entry.1 = entry.1.max(r.scale.to_f64());
        entry.2 += 1;
    }
    let items: Vec<ConditionItem<T>> = groups
        .into_iter()
        .map(|((_, label), (defect, scale, checks))| ConditionItem {
            passed: defect.negligible(tol.bound(1.0 + scale)),
            label,
            defect,
            checks,
        })
        .collect();
    let overall = items.iter().all(|i| i.passed);
    Ok(ConditionReport {
        type_tag: d.type_tag(),
        system,
        items,
        overall,
    })
}

/// Every residual of the system, in evaluation order.
pub fn condition_residuals<T: Field>(
    g: &PseudoEuclideanLieAlgebra<T>,
    d: &SplitDecomposition<T>,
    system: System,
    tol: &Tolerance,
) -> Result<Vec<Residual<T>>> {
    d.validate(g, tol)?;
    for (i, x) in d.h_blocks.iter().enumerate() {
        if x.basis.is_empty() {
            return Err(Error::BadDecomposition(format!("block {i} is empty")));
        }
        for y in &d.h_blocks[i + 1..] {
            if (x.alpha.clone() - y.alpha.clone()).negligible(tol.bound(1.0 + x.alpha.to_f64().abs())) {
                return Err(Error::BadDecomposition("two blocks share an eigenvalue".into()));
            }
        }
    }
    check_self_adjoint(g, &d.operator()?, tol)?;
    let mut ev = Eval {
        g,
        tol: *tol,
        out: Vec::new(),
    };
    // A2 with A ē = −e + aē: −A has the normal form with (−α_i, −a) and is Codazzi iff A is.
    let flip = matches!(d.l_part, Some(NullPart::A2 { sign, .. }) if sign < 0);
    let blocks: Vec<HBlock<T>> = d
        .h_blocks
        .iter()
        .map(|b| HBlock {
            alpha: if flip { -b.alpha.clone() } else { b.alpha.clone() },
            basis: b.basis.clone(),
        })
        .collect();
    ev.common(&blocks);
    match (&d.l_part, system) {
        (None, _) => {}
        (Some(NullPart::ZZbar { e, ebar, a, b }), System::Raw) => ev.zz_raw(&blocks, e, ebar, a, b),
        (Some(NullPart::ZZbar { e, ebar, a, b }), System::Solved) => ev.zz_solved(&blocks, e, ebar, a, b),
        (Some(NullPart::A2 { e, ebar, a, .. }), s) => {
            let a = if flip { -a.clone() } else { a.clone() };
            match s {
                System::Raw => ev.a2_raw(&blocks, e, ebar, &a),
                System::Solved => ev.a2_solved(&blocks, e, ebar, &a),
            }
        }
        (Some(NullPart::A3 { e, f, ebar, a }), System::Raw) => ev.a3_raw(&blocks, e, f, ebar, a),
        (Some(NullPart::A3 { e, f, ebar, a }), System::Solved) => ev.a3_solved(&blocks, e, f, ebar, a),
    }
    Ok(ev.out)
}

struct Eval<'a, T> {
    g: &'a PseudoEuclideanLieAlgebra<T>,
    tol: Tolerance,
    out: Vec<Residual<T>>,
}

/// c·x
fn m<T: Field>(c: &T, x: T) -> T {
    c.clone() * x
}

fn k<T: Field>(n: i64) -> T {
    T::from_i64(n)
}

impl<T: Field> Eval<'_, T> {
    /// ⟨[x,y],z⟩
    fn b(&self, x: &[T], y: &[T], z: &[T]) -> T {
        self.g.bracket_ip(x, y, z)
    }

    fn push(&mut self, label: &str, terms: Vec<T>) {
        let (value, scale) = sum_with_scale(&terms);
        self.out.push(Residual {
            label: label.to_string(),
            value,
            scale,
        });
    }

    fn is_zero(&self, ai: &T, a: &T, alpha: &T) -> bool {
        ai.negligible(self.tol.bound(1.0 + a.to_f64().abs() + alpha.to_f64().abs()))
    }

    /// Items 1 and 2, shared by every type.
    fn common(&mut self, blocks: &[HBlock<T>]) {
        let r = blocks.len();
        for i in 0..r {
            for j in 0..r {
                if i == j {
                    continue;
                }
                for u in &blocks[i].basis {
                    for v in &blocks[i].basis {
                        for w in &blocks[j].basis {
                            let t = vec![self.b(u, v, w)];
                            self.push("1.1", t);
                            let t = vec![self.b(w, u, v), self.b(w, v, u)];
                            self.push("1.2", t);
                        }
                    }
                }
            }
        }
        for i in 0..r {
            for j in 0..r {
                for l in 0..r {
                    if i == j || j == l || i == l {
                        continue;
                    }
                    let dij = blocks[i].alpha.clone() - blocks[j].alpha.clone();
                    let djl = blocks[j].alpha.clone() - blocks[l].alpha.clone();
                    let (cij, cjl) = (dij.clone() * dij, djl.clone() * djl);
                    for ui in &blocks[i].basis {
                        for uj in &blocks[j].basis {
                            for ul in &blocks[l].basis {
                                let t = vec![m(&cij, self.b(uj, ul, ui)), m(&cjl, self.b(uj, ui, ul))];
                                self.push("2", t);
                            }
                        }
                    }
                }
            }
        }
    }

    /// Iterates (α_i, α_j, u, v) over all ordered block pairs, i = j included.
    fn pairs(blocks: &[HBlock<T>]) -> Vec<(T, T, Vec<T>, Vec<T>)> {
        let mut out = Vec::new();
        for bi in blocks {
            for bj in blocks {
                for u in &bi.basis {
                    for v in &bj.basis {
                        out.push((bi.alpha.clone(), bj.alpha.clone(), u.clone(), v.clone()));
                    }
                }
            }
        }
        out
    }

    fn singles(blocks: &[HBlock<T>]) -> Vec<(T, Vec<T>)> {
        blocks
            .iter()
            .flat_map(|bi| bi.basis.iter().map(move |u| (bi.alpha.clone(), u.clone())))
            .collect()
    }

    /// (α_i, α_j, u, v) with i ≠ j.
    fn cross(blocks: &[HBlock<T>]) -> Vec<(T, T, Vec<T>, Vec<T>)> {
        let mut out = Vec::new();
        for (i, bi) in blocks.iter().enumerate() {
            for (j, bj) in blocks.iter().enumerate() {
                if i == j {
                    continue;
                }
                for u in &bi.basis {
                    for v in &bj.basis {
                        out.push((bi.alpha.clone(), bj.alpha.clone(), u.clone(), v.clone()));
                    }
                }
            }
        }
        out
    }

    /// (α_i, u, v) with u, v in the same block.
    fn within(blocks: &[HBlock<T>]) -> Vec<(T, Vec<T>, Vec<T>)> {
        let mut out = Vec::new();
        for bi in blocks {
            for u in &bi.basis {
                for v in &bi.basis {
                    out.push((bi.alpha.clone(), u.clone(), v.clone()));
                }
            }
        }
        out
    }

    fn zz_raw(&mut self, blocks: &[HBlock<T>], e: &[T], eb: &[T], a: &T, b: &T) {
        let t = vec![self.b(e, eb, e)];
        self.push("3.1", t);
        let t = vec![self.b(e, eb, eb)];
        self.push("3.2", t);
        let two = k::<T>(2);
        let three = k::<T>(3);
        for (ai, aj, u, v) in Self::pairs(blocks) {
            let (u, v) = (&u[..], &v[..]);
            let s = two.clone() * a.clone() - ai.clone() - aj.clone();
            let dji = aj.clone() - ai.clone();
            let c = two.clone() * aj.clone() - ai.clone() - a.clone();
            let am = a.clone() - ai.clone();
            let t = vec![
                m(&s, self.b(u, v, e)),
                -m(&two, m(b, self.b(u, v, eb))),
                m(&dji, self.b(u, e, v)),
                m(&dji, self.b(v, e, u)),
            ];
            self.push("4.1", t);
            let t = vec![
                m(&two, m(b, self.b(u, v, e))),
                m(&s, self.b(u, v, eb)),
                m(&dji, self.b(u, eb, v)),
                m(&dji, self.b(v, eb, u)),
            ];
            self.push("4.2", t);
            let t = vec![
                m(&c, self.b(u, e, v)),
                m(b, self.b(u, eb, v)),
                m(&am, self.b(e, v, u)),
                -m(b, self.b(eb, v, u)),
                m(&am, self.b(u, v, e)),
                -m(b, self.b(u, v, eb)),
            ];
            self.push("4.3", t);
            let t = vec![
                m(&c, self.b(u, eb, v)),
                -m(b, self.b(u, e, v)),
                m(&am, self.b(eb, v, u)),
                m(b, self.b(e, v, u)),
                m(&am, self.b(u, v, eb)),
                m(b, self.b(u, v, e)),
            ];
            self.push("4.4", t);
        }
        for (ai, u) in Self::singles(blocks) {
            let u = &u[..];
            let am = a.clone() - ai.clone();
            let t = vec![
                m(&(-am.clone()), self.b(e, eb, u)),
                m(b, self.b(eb, u, eb)),
                m(b, self.b(e, u, e)),
            ];
            self.push("4.5", t);
            let t = vec![
                m(&two, m(&am, self.b(e, u, e))),
                -m(&three, m(b, self.b(e, u, eb))),
                m(b, self.b(eb, u, e)),
                -m(b, self.b(e, eb, u)),
            ];
            self.push("4.6", t);
            let t = vec![
                m(&two, m(&am, self.b(eb, u, eb))),
                m(&three, m(b, self.b(eb, u, e))),
                -m(b, self.b(e, u, eb)),
                -m(b, self.b(e, eb, u)),
            ];
            self.push("4.7", t);
            let t = vec![
                m(&two, m(b, self.b(e, u, e))),
                m(&am, self.b(e, u, eb)),
                m(&am, self.b(eb, u, e)),
                -m(&am, self.b(e, eb, u)),
            ];
            self.push("4.8", t);
            let t = vec![
                m(&am, self.b(eb, u, e)),
                -m(&two, m(b, self.b(eb, u, eb))),
                m(&am, self.b(e, u, eb)),
                m(&am, self.b(e, eb, u)),
            ];
            self.push("4.9", t);
        }
    }

    fn zz_solved(&mut self, blocks: &[HBlock<T>], e: &[T], eb: &[T], a: &T, b: &T) {
        let t = vec![self.b(e, eb, e)];
        self.push("3.1", t);
        let t = vec![self.b(e, eb, eb)];
        self.push("3.2", t);
        let two = k::<T>(2);
        let four = k::<T>(4);
        for (_, u, v) in Self::within(blocks) {
            let (u, v) = (&u[..], &v[..]);
            let t = vec![self.b(u, v, e)];
            self.push("4.1", t);
            let t = vec![self.b(u, v, eb)];
            self.push("4.2", t);
            let t = vec![self.b(e, u, v), self.b(e, v, u)];
            self.push("4.3", t);
            let t = vec![self.b(eb, u, v), self.b(eb, v, u)];
            self.push("4.4", t);
        }
        let b2 = b.clone() * b.clone();
        for (alpha, u) in Self::singles(blocks) {
            let u = &u[..];
            let ai = a.clone() - alpha;
            let uu = self.b(e, eb, u);
            let c1 = ai.clone() / (two.clone() * b.clone());
            let c2 = (ai.clone() * ai.clone() - b2.clone()) / (four.clone() * b2.clone());
            let t = vec![self.b(e, u, e), -m(&c1, uu.clone())];
            self.push("4.5", t);
            let t = vec![self.b(eb, u, eb), -m(&c1, uu.clone())];
            self.push("4.6", t);
            let t = vec![self.b(e, u, eb), -m(&c2, uu.clone())];
            self.push("4.7", t);
            let t = vec![self.b(eb, u, e), m(&c2, uu)];
            self.push("4.8", t);
        }
        for (alpha_i, alpha_j, u, v) in Self::cross(blocks) {
            let (u, v) = (&u[..], &v[..]);
            let ai = a.clone() - alpha_i.clone();
            let dd = (alpha_i.clone() - alpha_j.clone()) * (alpha_i - alpha_j);
            let p = (b2.clone() - ai.clone() * ai.clone()) / dd.clone();
            let q = two.clone() * b.clone() * ai / dd;
            let (x, y) = (self.b(u, v, e), self.b(u, v, eb));
            let t = vec![self.b(u, e, v), -m(&p, x.clone()), -m(&q, y.clone())];
            self.push("5.1", t);
            let t = vec![self.b(u, eb, v), m(&q, x), -m(&p, y)];
            self.push("5.2", t);
        }
    }

    fn a2_raw(&mut self, blocks: &[HBlock<T>], e: &[T], eb: &[T], a: &T) {
        let t = vec![self.b(e, eb, e)];
        self.push("3", t);
        let two = k::<T>(2);
        let three = k::<T>(3);
        for (ai, aj, u, v) in Self::pairs(blocks) {
            let (u, v) = (&u[..], &v[..]);
            let s = two.clone() * a.clone() - ai.clone() - aj.clone();
            let dji = aj.clone() - ai.clone();
            let c = two.clone() * aj.clone() - ai.clone() - a.clone();
            let am = a.clone() - ai.clone();
            let t = vec![m(&s, self.b(u, v, e)), m(&dji, self.b(u, e, v)), m(&dji, self.b(v, e, u))];
            self.push("4.1", t);
            let t = vec![
                m(&two, self.b(u, v, e)),
                m(&s, self.b(u, v, eb)),
                m(&dji, self.b(u, eb, v)),
                m(&dji, self.b(v, eb, u)),
            ];
            self.push("4.2", t);
            let t = vec![m(&c, self.b(u, e, v)), m(&am, self.b(e, v, u)), m(&am, self.b(u, v, e))];
            self.push("4.3", t);
            let t = vec![
                -self.b(u, e, v),
                -self.b(v, e, u),
                m(&c, self.b(u, eb, v)),
                m(&am, self.b(eb, v, u)),
                m(&am, self.b(u, v, eb)),
                self.b(u, v, e),
            ];
            self.push("4.4", t);
        }
        for (ai, u) in Self::singles(blocks) {
            let u = &u[..];
            let am = a.clone() - ai.clone();
            let t = vec![-m(&two, m(&am, self.b(e, eb, u))), m(&two, self.b(e, u, e))];
            self.push("4.5", t);
            let t = vec![m(&two, m(&am, self.b(e, u, e)))];
            self.push("4.6", t);
            let t = vec![
                m(&three, self.b(eb, u, e)),
                m(&two, m(&am, self.b(eb, u, eb))),
                -self.b(e, u, eb),
                -self.b(e, eb, u),
            ];
            self.push("4.7", t);
            let t = vec![
                m(&two, self.b(e, u, e)),
                m(&am, self.b(e, u, eb)),
                m(&am, self.b(eb, u, e)),
                -m(&am, self.b(e, eb, u)),
            ];
            self.push("4.8", t);
            let t = vec![
                m(&am, self.b(eb, u, e)),
                m(&am, self.b(e, u, eb)),
                -m(&am, self.b(eb, e, u)),
            ];
            self.push("4.9", t);
        }
    }

    fn a2_solved(&mut self, blocks: &[HBlock<T>], e: &[T], eb: &[T], a: &T) {
        let t = vec![self.b(e, eb, e)];
        self.push("3", t);
        let two = k::<T>(2);
        let three = k::<T>(3);
        for (alpha, u, v) in Self::within(blocks) {
            let (u, v) = (&u[..], &v[..]);
            let ai = a.clone() - alpha.clone();
            if self.is_zero(&ai, a, &alpha) {
                let t = vec![self.b(u, v, e)];
                self.push("4a.2", t);
                let t = vec![self.b(e, u, v), self.b(e, v, u)];
                self.push("4a.4", t);
            } else {
                let t = vec![self.b(u, v, e)];
                self.push("4b.3", t);
                let t = vec![self.b(u, v, eb)];
                self.push("4b.4", t);
                let t = vec![self.b(e, u, v), self.b(e, v, u)];
                self.push("4b.7", t);
                let t = vec![self.b(eb, u, v), self.b(eb, v, u)];
                self.push("4b.8", t);
            }
        }
        for (alpha, u) in Self::singles(blocks) {
            let u = &u[..];
            let ai = a.clone() - alpha.clone();
            if self.is_zero(&ai, a, &alpha) {
                let t = vec![self.b(e, u, e)];
                self.push("4a.1", t);
                let t = vec![self.b(e, eb, u), -m(&three, self.b(eb, u, e)), self.b(e, u, eb)];
                self.push("4a.3", t);
            } else {
                let t = vec![self.b(e, u, e)];
                self.push("4b.1", t);
                let t = vec![self.b(e, eb, u)];
                self.push("4b.2", t);
                let t = vec![self.b(u, eb, e), self.b(u, e, eb)];
                self.push("4b.5", t);
                let c = two.clone() / ai;
                let t = vec![self.b(eb, u, eb), -m(&c, self.b(e, u, eb))];
                self.push("4b.6", t);
            }
        }
        for (alpha_i, alpha_j, u, v) in Self::cross(blocks) {
            let (u, v) = (&u[..], &v[..]);
            let ai = a.clone() - alpha_i.clone();
            let dd = (alpha_i.clone() - alpha_j.clone()) * (alpha_i - alpha_j);
            let (x, y) = (self.b(u, v, e), self.b(u, v, eb));
            let c1 = ai.clone() * ai.clone() / dd.clone();
            let t = vec![self.b(e, u, v), -m(&c1, x.clone())];
            self.push("5.1", t);
            let c2 = two.clone() * ai.clone() / dd;
            let t = vec![self.b(eb, u, v), -m(&c2, x), -m(&c1, y)];
            self.push("5.2", t);
        }
    }

    fn a3_raw(&mut self, blocks: &[HBlock<T>], e: &[T], f: &[T], eb: &[T], a: &T) {
        let two = k::<T>(2);
        let three = k::<T>(3);
        let t = vec![self.b(e, f, e)];
        self.push("3.1", t);
        let t = vec![self.b(f, e, f)];
        self.push("3.2", t);
        let t = vec![self.b(e, eb, e)];
        self.push("3.3", t);
        let t = vec![m(&three, self.b(e, eb, f)), -self.b(e, f, eb), self.b(f, eb, e)];
        self.push("3.4", t);
        let t = vec![m(&two, self.b(eb, f, f)), -self.b(eb, e, eb)];
        self.push("3.5", t);
        let t = vec![m(&three, self.b(eb, f, e)), -self.b(eb, e, f), self.b(e, f, eb)];
        self.push("3.6", t);
        for (ai, aj, u, v) in Self::pairs(blocks) {
            let (u, v) = (&u[..], &v[..]);
            let s = two.clone() * a.clone() - ai.clone() - aj.clone();
            let dji = aj.clone() - ai.clone();
            let c = two.clone() * aj.clone() - ai.clone() - a.clone();
            let am = a.clone() - ai.clone();
            let t = vec![m(&s, self.b(u, v, e)), m(&dji, self.b(u, e, v)), m(&dji, self.b(v, e, u))];
            self.push("4.1", t);
            let t = vec![
                m(&two, self.b(u, v, e)),
                m(&s, self.b(u, v, f)),
                m(&dji, self.b(u, f, v)),
                m(&dji, self.b(v, f, u)),
            ];
            self.push("4.2", t);
            let t = vec![
                m(&two, self.b(u, v, f)),
                m(&s, self.b(u, v, eb)),
                m(&dji, self.b(u, eb, v)),
                m(&dji, self.b(v, eb, u)),
            ];
            self.push("4.3", t);
            let t = vec![m(&c, self.b(u, e, v)), m(&am, self.b(e, v, u)), m(&am, self.b(u, v, e))];
            self.push("4.4", t);
            let t = vec![
                -self.b(u, e, v),
                -self.b(v, e, u),
                m(&c, self.b(u, f, v)),
                m(&am, self.b(f, v, u)),
                m(&am, self.b(u, v, f)),
                self.b(u, v, e),
            ];
            self.push("4.5", t);
            let t = vec![
                -self.b(u, f, v),
                -self.b(v, f, u),
                m(&c, self.b(u, eb, v)),
                m(&am, self.b(eb, v, u)),
                m(&am, self.b(u, v, eb)),
                self.b(u, v, f),
            ];
            self.push("4.6", t);
        }
        for (ai, u) in Self::singles(blocks) {
            let u = &u[..];
            let am = a.clone() - ai.clone();
            let t = vec![-m(&two, m(&am, self.b(e, f, u))), m(&two, self.b(e, u, e))];
            self.push("4.7", t);
            let t = vec![
                -m(&two, m(&am, self.b(e, eb, u))),
                -self.b(e, f, u),
                self.b(f, u, e),
                self.b(e, u, f),
            ];
            self.push("4.8", t);
            let t = vec![
                -m(&two, m(&am, self.b(f, eb, u))),
                -self.b(e, eb, u),
                -self.b(eb, u, e),
                -self.b(e, u, eb),
                m(&two, self.b(f, u, f)),
            ];
            self.push("4.9", t);
            let t = vec![m(&two, m(&am, self.b(e, u, e)))];
            self.push("4.10", t);
            let t = vec![
                m(&three, self.b(f, u, e)),
                m(&two, m(&am, self.b(f, u, f))),
                -self.b(e, u, f),
                -self.b(e, f, u),
            ];
            self.push("4.11", t);
            let t = vec![
                m(&three, self.b(eb, u, f)),
                m(&two, m(&am, self.b(eb, u, eb))),
                -self.b(f, u, eb),
                -self.b(f, eb, u),
            ];
            self.push("4.12", t);
            let t = vec![
                m(&two, self.b(e, u, e)),
                m(&am, self.b(e, u, f)),
                m(&am, self.b(f, u, e)),
                -m(&am, self.b(e, f, u)),
            ];
            self.push("4.13", t);
            let t = vec![m(&am, self.b(f, u, e)), m(&am, self.b(e, u, f)), m(&am, self.b(e, f, u))];
            self.push("4.14", t);
            let t = vec![
                m(&two, self.b(e, u, f)),
                m(&am, self.b(e, u, eb)),
                m(&am, self.b(eb, u, e)),
                m(&am, self.b(eb, e, u)),
            ];
            self.push("4.15", t);
            let t = vec![
                m(&am, self.b(eb, u, e)),
                m(&am, self.b(e, u, eb)),
                -self.b(f, u, e),
                self.b(e, u, f),
                self.b(e, f, u),
                m(&am, self.b(e, eb, u)),
            ];
            self.push("4.16", t);
            let t = vec![
                m(&two, self.b(f, u, f)),
                m(&am, self.b(f, u, eb)),
                -self.b(e, u, eb),
                self.b(eb, u, e),
                m(&am, self.b(eb, u, f)),
                -m(&am, self.b(f, eb, u)),
                -self.b(e, eb, u),
            ];
            self.push("4.17", t);
            let t = vec![
                m(&two, self.b(eb, u, e)),
                m(&am, self.b(eb, u, f)),
                m(&am, self.b(f, u, eb)),
                m(&am, self.b(f, eb, u)),
            ];
            self.push("4.18", t);
        }
    }

    fn a3_solved(&mut self, blocks: &[HBlock<T>], e: &[T], f: &[T], eb: &[T], a: &T) {
        let two = k::<T>(2);
        let three = k::<T>(3);
        let five = k::<T>(5);
        let half = T::ratio(1, 2);
        let t = vec![self.b(e, f, e)];
        self.push("3.1", t);
        let t = vec![self.b(f, e, f)];
        self.push("3.2", t);
        let t = vec![self.b(e, eb, e)];
        self.push("3.3", t);
        let t = vec![self.b(eb, f, e), m(&two, self.b(e, eb, f))];
        self.push("3.4", t);
        let t = vec![self.b(eb, f, f), m(&half, self.b(e, eb, eb))];
        self.push("3.5", t);
        let t = vec![self.b(e, f, eb), -m(&five, self.b(e, eb, f))];
        self.push("3.6", t);
        for (alpha, u, v) in Self::within(blocks) {
            let (u, v) = (&u[..], &v[..]);
            let ai = a.clone() - alpha.clone();
            if self.is_zero(&ai, a, &alpha) {
                let t = vec![self.b(u, v, e)];
                self.push("4a.8", t);
                let t = vec![self.b(u, v, f)];
                self.push("4a.9", t);
                let t = vec![self.b(u, e, v), self.b(v, e, u)];
                self.push("4a.10", t);
                let t = vec![self.b(u, f, v), self.b(v, f, u)];
                self.push("4a.11", t);
            } else {
                let t = vec![self.b(u, v, e)];
                self.push("4b.1", t);
                let t = vec![self.b(u, v, f)];
                self.push("4b.2", t);
                let t = vec![self.b(u, v, eb)];
                self.push("4b.3", t);
                let t = vec![self.b(e, u, v), self.b(e, v, u)];
                self.push("4b.4", t);
                let t = vec![self.b(f, u, v), self.b(f, v, u)];
                self.push("4b.5", t);
                let t = vec![self.b(eb, u, v), self.b(eb, v, u)];
                self.push("4b.6", t);
            }
        }
        for (alpha, u) in Self::singles(blocks) {
            let u = &u[..];
            let ai = a.clone() - alpha.clone();
            if self.is_zero(&ai, a, &alpha) {
                let t = vec![self.b(e, u, e)];
                self.push("4a.1", t);
                let t = vec![self.b(e, u, f)];
                self.push("4a.2", t);
                let t = vec![self.b(eb, u, e)];
                self.push("4a.3", t);
                let t = vec![self.b(e, f, u)];
                self.push("4a.4", t);
                let t = vec![self.b(f, u, e)];
                self.push("4a.5", t);
                let t = vec![-self.b(e, eb, u), -self.b(e, u, eb), m(&two, self.b(f, u, f))];
                self.push("4a.6", t);
                let t = vec![m(&three, self.b(eb, u, f)), -self.b(f, u, eb), -self.b(f, eb, u)];
                self.push("4a.7", t);
            } else {
                let t = vec![self.b(e, f, u)];
                self.push("4b.7", t);
                let t = vec![self.b(e, u, e)];
                self.push("4b.8", t);
                let t = vec![self.b(e, eb, u)];
                self.push("4b.9", t);
                let tt = self.b(f, eb, u);
                let w = self.b(eb, u, eb);
                let vv = self.b(eb, u, f);
                let c = ai.clone() * ai.clone() / three.clone();
                let t = vec![self.b(e, u, f), -m(&c, tt.clone())];
                self.push("4b.10", t);
                let t = vec![self.b(f, u, e), m(&c, tt.clone())];
                self.push("4b.11", t);
                let c = two.clone() * ai.clone() / three.clone();
                let t = vec![self.b(f, u, f), -m(&c, tt.clone())];
                self.push("4b.12", t);
                let ai2 = ai.clone() * ai.clone();
                let two_thirds = T::ratio(2, 3);
                let t = vec![
                    self.b(e, u, eb),
                    -m(&ai2, w.clone()),
                    -m(&(two.clone() * ai.clone()), vv.clone()),
                    m(&(two_thirds * ai.clone()), tt.clone()),
                ];
                self.push("4b.13", t);
                let t = vec![
                    self.b(eb, u, e),
                    m(&ai2, w.clone()),
                    m(&(two.clone() * ai.clone()), vv.clone()),
                ];
                self.push("4b.14", t);
                let t = vec![
                    self.b(f, u, eb),
                    -m(&(two.clone() * ai.clone()), w),
                    -m(&three, vv),
                    tt,
                ];
                self.push("4b.15", t);
            }
        }
        for (alpha_i, alpha_j, u, v) in Self::cross(blocks) {
            let (u, v) = (&u[..], &v[..]);
            let ai = a.clone() - alpha_i.clone();
            let dd = (alpha_i.clone() - alpha_j.clone()) * (alpha_i - alpha_j);
            let (x, y, z) = (self.b(u, v, e), self.b(u, v, f), self.b(u, v, eb));
            let ai2 = ai.clone() * ai.clone();
            let t = vec![self.b(u, e, v), m(&(ai2.clone() / dd.clone()), x.clone())];
            self.push("5.1", t);
            // ⟨[u,f],v⟩ = −(a_i/d)(a_i⟨[u,v],f⟩ + 2⟨[u,v],e⟩); with ē in place of e the
            // system is strictly stronger than the Codazzi equation.
            let t = vec![
                self.b(u, f, v),
                m(&(ai2.clone() / dd.clone()), y.clone()),
                m(&(two.clone() * ai.clone() / dd.clone()), x.clone()),
            ];
            self.push("5.2", t);
            let t = vec![
                self.b(u, eb, v),
                m(&(ai2 / dd.clone()), z),
                m(&(two.clone() * ai / dd.clone()), y),
                m(&(T::one() / dd), x),
            ];
            self.push("5.3", t);
        }
    }
}
