//! Canonical text for rational series.
//!
//! A series is minimized into a canonical automaton, which is then turned
//! into an expression by eliminating states one at a time (each step is a
//! Schur complement on `1 − ∑ T_e e`).

use crate::automaton::GradedRep;
use crate::pathalg::Poly;
use crate::quiver::Quiver;
use crate::ratseries::RatRep;
use crate::scalar::Scalar;
use crate::text::join_terms;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq)]
enum Factor {
    Poly(Poly),
    Inv(Sym),
}

/// A sum of a polynomial and scaled products containing inverses.
#[derive(Clone, PartialEq, Eq)]
struct Sym {
    poly: Poly,
    terms: Vec<(Scalar, Vec<Factor>)>,
}

/// `Some(λ)` when `p = λ·1`.
fn as_scalar(p: &Poly) -> Option<Scalar> {
    if p.is_zero() {
        return Some(Scalar::zero());
    }
    if p.degree() != Some(0) {
        return None;
    }
    let eps = p.augmentation();
    let first = eps.get(0).clone();
    eps.coeffs().iter().all(|c| *c == first).then_some(first)
}

impl Sym {
    fn from_poly(p: Poly) -> Sym {
        Sym {
            poly: p,
            terms: Vec::new(),
        }
    }

    fn quiver(&self) -> &Quiver {
        self.poly.quiver()
    }

    fn is_zero(&self) -> bool {
        self.poly.is_zero() && self.terms.is_empty()
    }

    /// Normalizes one product and adds it to `self`.
    fn push_term(&mut self, coeff: Scalar, factors: Vec<Factor>) {
        if coeff.is_zero() {
            return;
        }
        let q = self.quiver().clone();
        let mut coeff = coeff;
        let mut merged: Vec<Factor> = Vec::new();
        for f in factors {
            match (merged.last_mut(), f) {
                (Some(Factor::Poly(prev)), Factor::Poly(p)) => *prev = &*prev * &p,
                (_, f) => merged.push(f),
            }
        }
        let mut out = Vec::new();
        for f in merged {
            match f {
                Factor::Poly(p) => {
                    if p.is_zero() {
                        return;
                    }
                    if let Some(s) = as_scalar(&p) {
                        coeff *= s;
                    } else if p.num_terms() == 1 {
                        let (w, c) = p.terms().next().expect("one term");
                        coeff *= c;
                        out.push(Factor::Poly(Poly::path(&q, w.clone())));
                    } else if p.terms().next().is_some_and(|(_, c)| c.is_negative()) {
                        coeff = -coeff;
                        out.push(Factor::Poly(-&p));
                    } else {
                        out.push(Factor::Poly(p));
                    }
                }
                inv => out.push(inv),
            }
        }
        if out.iter().all(|f| matches!(f, Factor::Poly(_))) {
            let mut p = Poly::scalar(&q, coeff);
            for f in out {
                if let Factor::Poly(x) = f {
                    p = &p * &x;
                }
            }
            self.poly = &self.poly + &p;
            return;
        }
        if let Some(slot) = self.terms.iter_mut().find(|(_, fs)| *fs == out) {
            slot.0 += coeff;
            self.terms.retain(|(c, _)| !c.is_zero());
        } else {
            self.terms.push((coeff, out));
        }
    }

    fn as_factors(&self) -> Vec<(Scalar, Vec<Factor>)> {
        let mut items: Vec<(Scalar, Vec<Factor>)> = Vec::new();
        if !self.poly.is_zero() {
            items.push((Scalar::one(), vec![Factor::Poly(self.poly.clone())]));
        }
        items.extend(self.terms.iter().cloned());
        items
    }

    fn add(&self, other: &Sym) -> Sym {
        let mut out = self.clone();
        out.poly = &out.poly + &other.poly;
        for (c, fs) in &other.terms {
            out.push_term(c.clone(), fs.clone());
        }
        out
    }

    fn neg(&self) -> Sym {
        Sym {
            poly: -&self.poly,
            terms: self.terms.iter().map(|(c, fs)| (-c.clone(), fs.clone())).collect(),
        }
    }

    fn sub(&self, other: &Sym) -> Sym {
        self.add(&other.neg())
    }

    fn mul(&self, other: &Sym) -> Sym {
        let mut out = Sym::from_poly(Poly::zero(self.quiver()));
        for (c1, f1) in self.as_factors() {
            for (c2, f2) in other.as_factors() {
                let mut fs = f1.clone();
                fs.extend(f2);
                out.push_term(&c1 * &c2, fs);
            }
        }
        out
    }

    fn inv(&self) -> Sym {
        let q = self.quiver().clone();
        if self.terms.is_empty() {
            if let Some(s) = as_scalar(&self.poly) {
                return Sym::from_poly(Poly::scalar(&q, s.recip()));
            }
        }
        if self.poly.is_zero() && self.terms.len() == 1 {
            if let (c, [Factor::Inv(inner)]) = (&self.terms[0].0, self.terms[0].1.as_slice()) {
                let mut out = Sym::from_poly(Poly::zero(&q));
                for (d, fs) in inner.as_factors() {
                    out.push_term(d / c, fs);
                }
                return out;
            }
        }
        let mut out = Sym::from_poly(Poly::zero(&q));
        out.terms.push((Scalar::one(), vec![Factor::Inv(self.clone())]));
        out
    }

    fn render(&self, compact: bool) -> String {
        let mut items = self.poly.render_items();
        for (c, fs) in &self.terms {
            let text: Vec<String> = fs
                .iter()
                .map(|f| match f {
                    Factor::Poly(p) if p.num_terms() == 1 => p.render(),
                    Factor::Poly(p) => format!("({})", p.render_compact()),
                    Factor::Inv(s) => format!("inv({})", s.render(true)),
                })
                .collect();
            items.push((c.clone(), text.join("*")));
        }
        join_terms(&items, compact)
    }
}

fn eliminate(m: &GradedRep) -> Sym {
    let q = m.quiver().clone();
    let mut offsets = Vec::new();
    let mut owner = Vec::new();
    for v in q.vertices() {
        offsets.push(owner.len());
        owner.extend(std::iter::repeat(v).take(m.dims()[v as usize]));
    }
    let n = owner.len();
    let zero = Sym::from_poly(Poly::zero(&q));
    let mut alpha = vec![zero.clone(); n];
    let mut beta = vec![zero.clone(); n];
    let mut mat = vec![vec![zero.clone(); n]; n];
    for (i, &v) in owner.iter().enumerate() {
        let local = i - offsets[v as usize];
        let p = Poly::vertex(&q, v);
        alpha[i] = Sym::from_poly(p.scale(&m.alpha(v)[local]));
        beta[i] = Sym::from_poly(p.scale(&m.beta(v)[local]));
        mat[i][i] = Sym::from_poly(Poly::one(&q));
    }
    for e in q.arrows() {
        let (s, r) = (q.source(e) as usize, q.range(e) as usize);
        let t = m.transition(e);
        for i in 0..t.rows() {
            for j in 0..t.cols() {
                let x = t.get(i, j);
                if !x.is_zero() {
                    let cell = &mut mat[offsets[s] + i][offsets[r] + j];
                    *cell = cell.sub(&Sym::from_poly(Poly::arrow(&q, e).scale(x)));
                }
            }
        }
    }
    let mut result = zero;
    for k in (0..n).rev() {
        let inv = mat[k][k].inv();
        if !alpha[k].is_zero() && !beta[k].is_zero() {
            result = result.add(&alpha[k].mul(&inv).mul(&beta[k]));
        }
        let ak = alpha[k].mul(&inv);
        let kb = inv.mul(&beta[k]);
        for i in 0..k {
            if !ak.is_zero() && !mat[k][i].is_zero() {
                alpha[i] = alpha[i].sub(&ak.mul(&mat[k][i]));
            }
            if !kb.is_zero() && !mat[i][k].is_zero() {
                beta[i] = beta[i].sub(&mat[i][k].mul(&kb));
            }
        }
        for i in 0..k {
            if mat[i][k].is_zero() {
                continue;
            }
            let left = mat[i][k].mul(&inv);
            for j in 0..k {
                if !mat[k][j].is_zero() {
                    mat[i][j] = mat[i][j].sub(&left.mul(&mat[k][j]));
                }
            }
        }
    }
    result
}

/// Canonical text of a rational series: polynomials print as polynomials,
/// everything else through `inv(...)` expressions.
pub fn render(x: &RatRep, compact: bool) -> String {
    let m = GradedRep::from_ratrep(x).minimize().canonical();
    if let Some(deg) = m.polynomial_degree() {
        let p = m.to_ratrep().truncate(deg).as_poly().clone();
        return if compact { p.render_compact() } else { p.render() };
    }
    eliminate(&m).render(compact)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{loop_quiver, rose};
    use crate::scalar::int;

    #[test]
    fn geometric_series_prints_as_inverse() {
        let q = loop_quiver();
        let e = Poly::arrow(&q, 0);
        let g = RatRep::from_poly(&(&Poly::one(&q) - &e)).invert().unwrap();
        assert_eq!(g.render(), "inv(1-e)");
        assert_eq!(g.delta(0).render(), "inv(1-e)");
        assert_eq!(g.scale(&int(-2)).render(), "-2*inv(1-e)");
        let shifted = RatRep::from_poly(&e) + g.clone();
        let text = shifted.render();
        assert!(text.contains("inv("), "{text}");
    }

    #[test]
    fn polynomials_print_plainly() {
        let r = rose(2);
        let (a, b) = (Poly::arrow(&r, 0), Poly::arrow(&r, 1));
        let x = RatRep::from_poly(&(&a * &b)) + RatRep::from_poly(&Poly::one(&r));
        assert_eq!(x.render(), "1 + a*b");
        assert_eq!(RatRep::zero(&r).render(), "0");
    }
}
