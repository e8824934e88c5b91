//! The Leavitt path algebra, in the basis of reduced monomials `γ̄ν`.
//!
//! Products use CK1 (`f ē = δ_{e,f} p_{s(e)}`) to cancel at the junction
//! and CK2, oriented as `ē e → p_i − ∑_{f ≠ e} f̄ f` for the distinguished
//! (first declared) arrow `e` into `i`, to remove the remaining redexes.

use crate::error::{Error, Result};
use crate::path::{all_paths, Path};
use crate::pathalg::{Poly, VertexVector};
use crate::quiver::{check_complete_hom, Arrow, GraphHom, Quiver, Vertex};
use crate::scalar::Scalar;
use crate::text::join_terms;
use num_traits::{One, Zero};
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// The monomial `γ̄ν`, with `s(γ) = s(ν)`; it runs from `r(γ)` to `r(ν)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LMonomial {
    pub gamma: Path,
    pub nu: Path,
}

impl LMonomial {
    pub fn new(gamma: Path, nu: Path) -> Option<LMonomial> {
        (gamma.source() == nu.source()).then_some(LMonomial { gamma, nu })
    }

    pub fn vertex(v: Vertex) -> LMonomial {
        LMonomial {
            gamma: Path::trivial(v),
            nu: Path::trivial(v),
        }
    }

    pub fn source(&self) -> Vertex {
        self.gamma.range()
    }

    pub fn range(&self) -> Vertex {
        self.nu.range()
    }

    pub fn is_vertex(&self) -> bool {
        self.gamma.is_trivial() && self.nu.is_trivial()
    }

    /// Whether the junction `ē ê` is a CK2 redex.
    pub fn is_reduced(&self, q: &Quiver) -> bool {
        match (self.gamma.first_arrow(), self.nu.first_arrow()) {
            (Some(e), Some(f)) if e == f => q.distinguished_arrow(q.range(e)) != Some(e),
            _ => true,
        }
    }

    pub fn render(&self, q: &Quiver) -> String {
        match (self.gamma.is_trivial(), self.nu.is_trivial()) {
            (true, _) => self.nu.render(q),
            (false, true) => self.gamma.render_bar(q),
            (false, false) => format!("{}*{}", self.gamma.render_bar(q), self.nu.render(q)),
        }
    }
}

fn accumulate(terms: &mut BTreeMap<LMonomial, Scalar>, m: LMonomial, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match terms.entry(m) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// Adds `c·γ̄ν` to `terms` after removing CK2 redexes.
fn reduce_into(q: &Quiver, gamma: Path, nu: Path, c: Scalar, terms: &mut BTreeMap<LMonomial, Scalar>) {
    let mut gamma = gamma;
    let mut nu = nu;
    loop {
        let m = LMonomial {
            gamma: gamma.clone(),
            nu: nu.clone(),
        };
        if m.is_reduced(q) {
            accumulate(terms, m, c);
            return;
        }
        let e = gamma.first_arrow().expect("redex has arrows");
        let g = gamma.strip_first(q, e).expect("leading arrow");
        let n = nu.strip_first(q, e).expect("leading arrow");
        for &f in q.incoming(q.range(e)) {
            if f != e {
                let fg = g.prepend(q, f).expect("f ends where e ends");
                let fn_ = n.prepend(q, f).expect("f ends where e ends");
                accumulate(terms, LMonomial { gamma: fg, nu: fn_ }, -c.clone());
            }
        }
        gamma = g;
        nu = n;
    }
}

/// An element of the Leavitt path algebra in reduced form.
#[derive(Clone, PartialEq, Eq)]
pub struct LElement {
    quiver: Quiver,
    terms: BTreeMap<LMonomial, Scalar>,
}

impl fmt::Debug for LElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Display for LElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl LElement {
    pub fn zero(q: &Quiver) -> LElement {
        LElement {
            quiver: q.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(q: &Quiver) -> LElement {
        LElement::scalar(q, Scalar::one())
    }

    pub fn scalar(q: &Quiver, s: Scalar) -> LElement {
        let mut out = LElement::zero(q);
        for v in q.vertices() {
            accumulate(&mut out.terms, LMonomial::vertex(v), s.clone());
        }
        out
    }

    pub fn vertex(q: &Quiver, v: Vertex) -> LElement {
        LElement::from_monomial(q, LMonomial::vertex(v), Scalar::one())
    }

    pub fn arrow(q: &Quiver, e: Arrow) -> LElement {
        let m = LMonomial {
            gamma: Path::trivial(q.source(e)),
            nu: Path::arrow(q, e),
        };
        LElement::from_monomial(q, m, Scalar::one())
    }

    pub fn bar(q: &Quiver, e: Arrow) -> LElement {
        let m = LMonomial {
            gamma: Path::arrow(q, e),
            nu: Path::trivial(q.source(e)),
        };
        LElement::from_monomial(q, m, Scalar::one())
    }

    /// `c·γ̄ν`, reduced.
    pub fn from_monomial(q: &Quiver, m: LMonomial, c: Scalar) -> LElement {
        let mut out = LElement::zero(q);
        reduce_into(q, m.gamma, m.nu, c, &mut out.terms);
        out
    }

    pub fn from_poly(x: &Poly) -> LElement {
        let q = x.quiver();
        let mut out = LElement::zero(q);
        for (p, c) in x.terms() {
            let m = LMonomial {
                gamma: Path::trivial(p.source()),
                nu: p.clone(),
            };
            accumulate(&mut out.terms, m, c.clone());
        }
        out
    }

    /// The image of `x` under the involution-like map `γ ↦ γ̄` of the
    /// path algebra of the inverse quiver.
    pub fn bar_of_poly(x: &Poly) -> LElement {
        let q = x.quiver();
        let mut out = LElement::zero(q);
        for (p, c) in x.terms() {
            let m = LMonomial {
                gamma: p.clone(),
                nu: Path::trivial(p.source()),
            };
            reduce_into(q, m.gamma, m.nu, c.clone(), &mut out.terms);
        }
        out
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn same_quiver(&self, other: &LElement) -> Result<()> {
        if self.quiver == other.quiver {
            Ok(())
        } else {
            Err(Error::QuiverMismatch)
        }
    }

    pub fn checked_add(&self, other: &LElement) -> Result<LElement> {
        self.same_quiver(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            accumulate(&mut out.terms, m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &LElement) -> Result<LElement> {
        self.checked_add(&-other)
    }

    pub fn scale(&self, s: &Scalar) -> LElement {
        if s.is_zero() {
            return LElement::zero(&self.quiver);
        }
        LElement {
            quiver: self.quiver.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    /// Reduced product.
    pub fn checked_mul(&self, other: &LElement) -> Result<LElement> {
        self.same_quiver(other)?;
        let q = &self.quiver;
        let mut out = LElement::zero(q);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if m1.range() != m2.source() {
                    continue;
                }
                let c = c1 * c2;
                // ν μ̄ cancels by CK1 exactly when one is a suffix of the other.
                if let Some(rest) = m1.nu.strip_suffix(&m2.gamma) {
                    let nu = rest.concat(&m2.nu).expect("composable");
                    reduce_into(q, m1.gamma.clone(), nu, c, &mut out.terms);
                } else if let Some(rest) = m2.gamma.strip_suffix(&m1.nu) {
                    let gamma = rest.concat(&m1.gamma).expect("composable");
                    reduce_into(q, gamma, m2.nu.clone(), c, &mut out.terms);
                }
            }
        }
        Ok(out)
    }

    /// Coefficients of the vertex monomials.
    pub fn vertex_part(&self) -> VertexVector {
        let mut coeffs = vec![Scalar::zero(); self.quiver.num_vertices()];
        for (m, c) in &self.terms {
            if m.is_vertex() {
                coeffs[m.source() as usize] = c.clone();
            }
        }
        VertexVector::from_coeffs(&self.quiver, coeffs)
    }

    /// Canonical text, e.g. `p_1 + e~*e`.
    pub fn render(&self) -> String {
        let q = &self.quiver;
        let mut items = self.vertex_part().render_items();
        for (m, c) in &self.terms {
            if !m.is_vertex() {
                items.push((c.clone(), m.render(q)));
            }
        }
        join_terms(&items, false)
    }
}

macro_rules! l_binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&LElement> for &LElement {
            type Output = LElement;
            fn $m(self, rhs: &LElement) -> LElement {
                self.$checked(rhs).expect("operands over the same quiver")
            }
        }
        impl $tr<LElement> for LElement {
            type Output = LElement;
            fn $m(self, rhs: LElement) -> LElement {
                (&self).$m(&rhs)
            }
        }
    };
}

l_binop!(Add, add, checked_add);
l_binop!(Sub, sub, checked_sub);
l_binop!(Mul, mul, checked_mul);

impl Neg for &LElement {
    type Output = LElement;
    fn neg(self) -> LElement {
        self.scale(&-Scalar::one())
    }
}

impl Neg for LElement {
    type Output = LElement;
    fn neg(self) -> LElement {
        -&self
    }
}

/// A letter of an unreduced word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    Vertex(Vertex),
    Arrow(Arrow),
    Bar(Arrow),
}

impl Letter {
    pub fn to_element(self, q: &Quiver) -> LElement {
        match self {
            Letter::Vertex(v) => LElement::vertex(q, v),
            Letter::Arrow(e) => LElement::arrow(q, e),
            Letter::Bar(e) => LElement::bar(q, e),
        }
    }
}

/// Reduces a linear combination of words in vertices, arrows and bars.
pub fn l_normal_form(q: &Quiver, raw: &[(Scalar, Vec<Letter>)]) -> LElement {
    let mut out = LElement::zero(q);
    for (c, word) in raw {
        let mut acc = LElement::scalar(q, c.clone());
        for l in word {
            acc = &acc * &l.to_element(q);
            if acc.is_zero() {
                break;
            }
        }
        out = &out + &acc;
    }
    out
}

/// Reduced monomials with `|γ|, |ν| ≤ max_len`.
pub fn l_basis_up_to(q: &Quiver, max_len: usize) -> Vec<LMonomial> {
    let paths = all_paths(q, max_len);
    let mut out = Vec::new();
    for g in &paths {
        for n in &paths {
            if let Some(m) = LMonomial::new(g.clone(), n.clone()) {
                if m.is_reduced(q) {
                    out.push(m);
                }
            }
        }
    }
    out.sort();
    out
}

/// The row `(e_j)` and column `(ē_j)` over the arrows into a vertex, which
/// realize `p_v L ≅ ⊕_j p_{s(e_j)} L`.
#[derive(Clone, Debug)]
pub struct Witness {
    pub vertex: Vertex,
    pub row: Vec<LElement>,
    pub column: Vec<LElement>,
}

impl Witness {
    /// `∑_j ē_j e_j = p_v` and `e_i ē_j = δ_{ij} p_{s(e_i)}`.
    pub fn verify(&self) -> bool {
        let q = match self.row.first() {
            Some(x) => x.quiver().clone(),
            None => return false,
        };
        let mut sum = LElement::zero(&q);
        for (r, c) in self.row.iter().zip(&self.column) {
            sum = &sum + &(c * r);
        }
        if sum != LElement::vertex(&q, self.vertex) {
            return false;
        }
        for (i, r) in self.row.iter().enumerate() {
            for (j, c) in self.column.iter().enumerate() {
                let prod = r * c;
                let expected = if i == j {
                    let src = r
                        .terms()
                        .next()
                        .map(|(m, _)| m.source())
                        .expect("arrow element");
                    LElement::vertex(&q, src)
                } else {
                    LElement::zero(&q)
                };
                if prod != expected {
                    return false;
                }
            }
        }
        true
    }
}

pub fn witness_basic_transformation(q: &Quiver, v: Vertex) -> Result<Witness> {
    let incoming = q.incoming(v);
    if incoming.is_empty() {
        return Err(Error::NotReceiving(q.vertex_name(v).to_string()));
    }
    Ok(Witness {
        vertex: v,
        row: incoming.iter().map(|&e| LElement::arrow(q, e)).collect(),
        column: incoming.iter().map(|&e| LElement::bar(q, e)).collect(),
    })
}

fn map_path(f: &GraphHom, target: &Quiver, p: &Path) -> Path {
    if p.is_trivial() {
        return Path::trivial(f.vertex_map[p.source() as usize]);
    }
    let arrows: Vec<Arrow> = p.arrows().iter().map(|&e| f.arrow_map[e as usize]).collect();
    Path::from_arrows(target, &arrows).expect("homomorphisms preserve composability")
}

/// The algebra map induced by a complete graph homomorphism; it sends the
/// unit to `∑ p_{f(v)}`.
pub fn induced_hom(f: &GraphHom, e: &Quiver, target: &Quiver, x: &LElement) -> Result<LElement> {
    if x.quiver() != e {
        return Err(Error::QuiverMismatch);
    }
    if !check_complete_hom(f, e, target)? {
        return Err(Error::NotComplete);
    }
    let mut out = LElement::zero(target);
    for (m, c) in x.terms() {
        reduce_into(
            target,
            map_path(f, target, &m.gamma),
            map_path(f, target, &m.nu),
            c.clone(),
            &mut out.terms,
        );
    }
    Ok(out)
}
