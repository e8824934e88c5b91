//! The skew extension `S` of the rational series by the barred arrows, in
//! the normal form `∑ γ̄ a_γ`, and equality in its quotient by the ideal
//! generated by the idempotents `q_i`.

use crate::error::{Error, Result};
use crate::leavitt::LElement;
use crate::path::Path;
use crate::pathalg::Poly;
use crate::quiver::{Arrow, Quiver, Vertex};
use crate::ratseries::RatRep;
use crate::scalar::Scalar;
use crate::text::join_terms;
use num_traits::{One, Zero};
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Coefficients above this dimension are minimized before further use.
const MINIMIZE_ABOVE: usize = 6;

/// An element `∑ γ̄ a_γ` with `a_γ ∈ p_{s(γ)}·Rat` and no zero coefficient.
#[derive(Clone)]
pub struct SElement {
    quiver: Quiver,
    terms: BTreeMap<Path, RatRep>,
}

impl fmt::Debug for SElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Display for SElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Collects coefficient pieces per bar path before normalization.
struct Accumulator {
    quiver: Quiver,
    pieces: BTreeMap<Path, Vec<RatRep>>,
}

impl Accumulator {
    fn new(q: &Quiver) -> Self {
        Accumulator {
            quiver: q.clone(),
            pieces: BTreeMap::new(),
        }
    }

    fn push(&mut self, gamma: Path, a: RatRep) {
        if a.dim() > 0 {
            self.pieces.entry(gamma).or_default().push(a);
        }
    }

    fn finish(self) -> SElement {
        let mut terms = BTreeMap::new();
        for (gamma, parts) in self.pieces {
            let mut sum = RatRep::zero(&self.quiver);
            for p in parts {
                sum = &sum + &p;
                if sum.dim() > 4 * MINIMIZE_ABOVE {
                    sum = sum.minimize();
                }
            }
            let sum = sum.left_vertex(gamma.source()).minimize();
            if sum.dim() > 0 {
                terms.insert(gamma, sum);
            }
        }
        SElement {
            quiver: self.quiver,
            terms,
        }
    }
}

fn shrink(a: RatRep) -> RatRep {
    if a.dim() > MINIMIZE_ABOVE {
        a.minimize()
    } else {
        a
    }
}

impl SElement {
    pub fn zero(q: &Quiver) -> SElement {
        SElement {
            quiver: q.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(q: &Quiver) -> SElement {
        SElement::from_rat(&RatRep::one(q))
    }

    pub fn from_rat(r: &RatRep) -> SElement {
        let q = r.quiver();
        let mut acc = Accumulator::new(q);
        for v in q.vertices() {
            acc.push(Path::trivial(v), r.left_vertex(v));
        }
        acc.finish()
    }

    pub fn from_poly(x: &Poly) -> SElement {
        SElement::from_rat(&RatRep::from_poly(x))
    }

    pub fn scalar(q: &Quiver, s: Scalar) -> SElement {
        SElement::from_rat(&RatRep::scalar(q, s))
    }

    /// `γ̄ a`, normalized.
    pub fn monomial(gamma: Path, a: &RatRep) -> SElement {
        let mut acc = Accumulator::new(a.quiver());
        acc.push(gamma, a.clone());
        acc.finish()
    }

    /// `ē`.
    pub fn bar(q: &Quiver, e: Arrow) -> SElement {
        SElement::monomial(Path::arrow(q, e), &RatRep::from_poly(&Poly::vertex(q, q.source(e))))
    }

    /// `γ̄`.
    pub fn bar_path(q: &Quiver, gamma: &Path) -> SElement {
        SElement::monomial(gamma.clone(), &RatRep::from_poly(&Poly::vertex(q, gamma.source())))
    }

    /// The image of a Leavitt path algebra element: `γ̄ν ↦ γ̄·ν`.
    pub fn from_leavitt(x: &LElement) -> SElement {
        let q = x.quiver();
        let mut acc = Accumulator::new(q);
        for (m, c) in x.terms() {
            acc.push(m.gamma.clone(), RatRep::from_poly(&Poly::monomial(q, m.nu.clone(), c.clone())));
        }
        acc.finish()
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, &RatRep)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, gamma: &Path) -> Option<&RatRep> {
        self.terms.get(gamma)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Longest bar path in the support; `None` for zero.
    pub fn max_bar_len(&self) -> Option<usize> {
        self.terms.keys().map(Path::len).max()
    }

    fn same_quiver(&self, other: &SElement) -> Result<()> {
        if self.quiver == other.quiver {
            Ok(())
        } else {
            Err(Error::QuiverMismatch)
        }
    }

    pub fn checked_add(&self, other: &SElement) -> Result<SElement> {
        self.same_quiver(other)?;
        let mut acc = Accumulator::new(&self.quiver);
        for (g, a) in self.terms.iter().chain(other.terms.iter()) {
            acc.push(g.clone(), a.clone());
        }
        Ok(acc.finish())
    }

    pub fn checked_sub(&self, other: &SElement) -> Result<SElement> {
        self.checked_add(&-other)
    }

    pub fn scale(&self, s: &Scalar) -> SElement {
        if s.is_zero() {
            return SElement::zero(&self.quiver);
        }
        SElement {
            quiver: self.quiver.clone(),
            terms: self.terms.iter().map(|(g, a)| (g.clone(), a.scale(s))).collect(),
        }
    }

    /// Normal-form product. A coefficient crosses a bar path `μ̄` by
    /// `a ē = ē (aτ_e) + aδ_e`, one barred arrow at a time.
    pub fn checked_mul(&self, other: &SElement) -> Result<SElement> {
        self.same_quiver(other)?;
        let q = &self.quiver;
        let mut acc = Accumulator::new(q);
        for (gamma, a) in &self.terms {
            for (mu, b) in &other.terms {
                let mut cur = a.clone();
                let arrows = mu.arrows();
                for t in (0..arrows.len()).rev() {
                    let e = arrows[t];
                    let lambda = cur.augmentation().get(q.range(e)).clone();
                    if !lambda.is_zero() {
                        let prefix = mu.prefix(q, t + 1);
                        if let Some(path) = prefix.concat(gamma) {
                            acc.push(path, b.scale(&lambda));
                        }
                    }
                    cur = shrink(cur.delta(e));
                }
                acc.push(gamma.clone(), shrink(&cur * b));
            }
        }
        Ok(acc.finish())
    }

    /// Exact equality in `S`.
    pub fn equals(&self, other: &SElement) -> Result<bool> {
        Ok(self.checked_sub(other)?.is_zero())
    }

    /// Canonical text: bar terms by decreasing length, then the rational part.
    pub fn render(&self) -> String {
        let q = &self.quiver;
        let mut items: Vec<(Scalar, String)> = Vec::new();
        let mut bars: Vec<(&Path, &RatRep)> = self.terms.iter().filter(|(g, _)| !g.is_trivial()).collect();
        bars.sort_by(|x, y| y.0.len().cmp(&x.0.len()).then_with(|| x.0.cmp(y.0)));
        for (gamma, a) in bars {
            let bar = gamma.render_bar(q);
            let unit = Poly::vertex(q, gamma.source());
            if let Some(p) = a.to_poly() {
                if p.num_terms() == 1 && p.terms().next().is_some_and(|(w, _)| w.is_trivial()) {
                    let c = p.coeff(&Path::trivial(gamma.source()));
                    items.push((c, bar));
                    continue;
                }
                if p == unit {
                    items.push((Scalar::one(), bar));
                    continue;
                }
            }
            let text = a.render_compact();
            let (sign, body) = match text.strip_prefix('-') {
                Some(rest) if !has_top_level_sum(rest) => (-Scalar::one(), rest.to_string()),
                _ => (Scalar::one(), text.clone()),
            };
            if has_top_level_sum(&body) {
                items.push((sign, format!("{bar}*({body})")));
            } else {
                items.push((sign, format!("{bar}*{body}")));
            }
        }
        let mut rational = RatRep::zero(q);
        for (gamma, a) in &self.terms {
            if gamma.is_trivial() {
                rational = &rational + a;
            }
        }
        let head = join_terms(&items, false);
        if rational.dim() == 0 {
            return head;
        }
        let tail = rational.render();
        if items.is_empty() {
            tail
        } else if let Some(rest) = tail.strip_prefix('-') {
            format!("{head} - {rest}")
        } else {
            format!("{head} + {tail}")
        }
    }
}

fn has_top_level_sum(text: &str) -> bool {
    let mut depth = 0i32;
    for (i, ch) in text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' | '-' if depth == 0 && i > 0 => return true,
            _ => {}
        }
    }
    false
}

macro_rules! s_binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&SElement> for &SElement {
            type Output = SElement;
            fn $m(self, rhs: &SElement) -> SElement {
                self.$checked(rhs).expect("operands over the same quiver")
            }
        }
        impl $tr<SElement> for SElement {
            type Output = SElement;
            fn $m(self, rhs: SElement) -> SElement {
                (&self).$m(&rhs)
            }
        }
    };
}

s_binop!(Add, add, checked_add);
s_binop!(Sub, sub, checked_sub);
s_binop!(Mul, mul, checked_mul);

impl Neg for &SElement {
    type Output = SElement;
    fn neg(self) -> SElement {
        self.scale(&-Scalar::one())
    }
}

impl Neg for SElement {
    type Output = SElement;
    fn neg(self) -> SElement {
        -&self
    }
}

/// `q_i = p_i − ∑_{r(e)=i} ē e`.
pub fn q_idempotent(q: &Quiver, i: Vertex) -> Result<SElement> {
    if !q.is_receiving(i) {
        return Err(Error::NotReceiving(q.vertex_name(i).to_string()));
    }
    let mut acc = Accumulator::new(q);
    acc.push(Path::trivial(i), RatRep::from_poly(&Poly::vertex(q, i)));
    for &e in q.incoming(i) {
        acc.push(Path::arrow(q, e), RatRep::from_poly(&-Poly::arrow(q, e)));
    }
    Ok(acc.finish())
}

/// `q = ∑_i q_i` over the receiving vertices.
pub fn q_total(q: &Quiver) -> SElement {
    let mut out = SElement::zero(q);
    for i in q.receiving_vertices() {
        out = &out + &q_idempotent(q, i).expect("receiving vertex");
    }
    out
}

/// `r q_i = ε_i(r) q_i`.
pub fn r_times_q(r: &RatRep, i: Vertex) -> Result<SElement> {
    let q = r.quiver();
    let qi = q_idempotent(q, i)?;
    Ok(qi.scale(r.augmentation().get(i)))
}

/// Rewrites `γ̄ a` with `|γ| < m` and `s(γ)` receiving as
/// `∑_{r(e)=s(γ)} (eγ)̄ (e a)` until no such term remains. Each step changes
/// the element by `γ̄ q_{s(γ)} a`.
pub fn frontier_expand(x: &SElement, m: usize) -> SElement {
    let q = x.quiver();
    let mut acc = Accumulator::new(q);
    let mut stack: Vec<(Path, RatRep)> = x.terms().map(|(g, a)| (g.clone(), a.clone())).collect();
    while let Some((gamma, a)) = stack.pop() {
        let s = gamma.source();
        if gamma.len() >= m || !q.is_receiving(s) {
            acc.push(gamma, a);
            continue;
        }
        for &e in q.incoming(s) {
            let path = gamma.prepend(q, e).expect("e ends at s(γ)");
            stack.push((path, a.left_mul_poly(&Poly::arrow(q, e))));
        }
    }
    acc.finish()
}

/// Verdict of an equality test in the quotient algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QVerdict {
    Equal { depth: usize },
    /// `conclusive` holds when the depth reached the longest bar path of the
    /// difference, which rules out membership in the ideal.
    NotEqualAtDepth { depth: usize, conclusive: bool },
}

impl QVerdict {
    pub fn is_equal(&self) -> bool {
        matches!(self, QVerdict::Equal { .. })
    }
}

/// Decides `x ≡ y` modulo the ideal generated by the `q_i`.
///
/// `x − y` lies in the ideal iff its frontier expansion to any depth at least
/// its longest bar path vanishes; the default depth is one more than that.
pub fn q_equal(x: &SElement, y: &SElement, depth: Option<usize>) -> Result<QVerdict> {
    let d = x.checked_sub(y)?;
    let needed = d.max_bar_len().unwrap_or(0);
    let m = depth.unwrap_or(needed + 1);
    if frontier_expand(&d, m).is_zero() {
        Ok(QVerdict::Equal { depth: m })
    } else {
        Ok(QVerdict::NotEqualAtDepth {
            depth: m,
            conclusive: m >= needed,
        })
    }
}

/// Outcome of the idempotent relation checks.
#[derive(Clone, Debug, Default)]
pub struct QSuiteReport {
    pub checks: usize,
    pub violations: Vec<String>,
}

impl QSuiteReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `q_i² = q_i`, `q_i q_j = 0` for `i ≠ j`, and `q_i s q_j ∈ δ_{ij} K q_i`
/// on `samples` random elements `s`, generated from `seed` per sample index.
pub fn q_relation_suite(q: &Quiver, samples: usize, seed: u64) -> QSuiteReport {
    let xs = q.receiving_vertices();
    let qs: Vec<SElement> = xs
        .iter()
        .map(|&i| q_idempotent(q, i).expect("receiving vertex"))
        .collect();
    let mut report = QSuiteReport::default();
    for (a, qa) in qs.iter().enumerate() {
        for (b, qb) in qs.iter().enumerate() {
            report.checks += 1;
            let prod = qa * qb;
            let ok = if a == b { prod.equals(qa).unwrap_or(false) } else { prod.is_zero() };
            if !ok {
                report.violations.push(format!(
                    "q_{} q_{} = {}",
                    q.vertex_name(xs[a]),
                    q.vertex_name(xs[b]),
                    prod.render()
                ));
            }
        }
    }
    let per_sample: Vec<(usize, Vec<String>)> = (0..samples)
        .into_par_iter()
        .map(|k| {
            let mut rng = crate::random::rng_for(seed, k as u64);
            let s = crate::random::random_selement(q, &mut rng, &crate::random::SParams::default());
            let mut checks = 0;
            let mut bad = Vec::new();
            for (a, qa) in qs.iter().enumerate() {
                let left = qa * &s;
                for (b, qb) in qs.iter().enumerate() {
                    checks += 1;
                    let t = &left * qb;
                    let ok = if a == b {
                        let lambda = t
                            .coefficient(&Path::trivial(xs[a]))
                            .map(|c| c.augmentation().get(xs[a]).clone())
                            .unwrap_or_else(Scalar::zero);
                        t.equals(&qa.scale(&lambda)).unwrap_or(false)
                    } else {
                        t.is_zero()
                    };
                    if !ok {
                        bad.push(format!(
                            "sample {k}: q_{} s q_{} = {} for s = {}",
                            q.vertex_name(xs[a]),
                            q.vertex_name(xs[b]),
                            t.render(),
                            s.render()
                        ));
                    }
                }
            }
            (checks, bad)
        })
        .collect();
    for (c, bad) in per_sample {
        report.checks += c;
        report.violations.extend(bad);
    }
    report
}
