//! The path algebra: polynomials in paths, vertex vectors, and matrices.

use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::path::Path;
use crate::quiver::{Arrow, Quiver, Vertex};
use crate::scalar::Scalar;
use crate::text::join_terms;
use num_traits::{One, Zero};
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// An element `∑ λ_γ γ` of the path algebra.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    quiver: Quiver,
    terms: BTreeMap<Path, Scalar>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn accumulate(terms: &mut BTreeMap<Path, Scalar>, p: Path, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match terms.entry(p) {
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

impl Poly {
    pub fn zero(q: &Quiver) -> Poly {
        Poly {
            quiver: q.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// `∑ p_i`, the unit.
    pub fn one(q: &Quiver) -> Poly {
        Poly::scalar(q, Scalar::one())
    }

    pub fn scalar(q: &Quiver, s: Scalar) -> Poly {
        let mut p = Poly::zero(q);
        for v in q.vertices() {
            accumulate(&mut p.terms, Path::trivial(v), s.clone());
        }
        p
    }

    pub fn vertex(q: &Quiver, v: Vertex) -> Poly {
        Poly::monomial(q, Path::trivial(v), Scalar::one())
    }

    pub fn arrow(q: &Quiver, e: Arrow) -> Poly {
        Poly::monomial(q, Path::arrow(q, e), Scalar::one())
    }

    pub fn path(q: &Quiver, p: Path) -> Poly {
        Poly::monomial(q, p, Scalar::one())
    }

    pub fn monomial(q: &Quiver, p: Path, c: Scalar) -> Poly {
        let mut out = Poly::zero(q);
        accumulate(&mut out.terms, p, c);
        out
    }

    pub fn from_terms(q: &Quiver, terms: impl IntoIterator<Item = (Path, Scalar)>) -> Poly {
        let mut out = Poly::zero(q);
        for (p, c) in terms {
            accumulate(&mut out.terms, p, c);
        }
        out
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, p: &Path) -> Scalar {
        self.terms.get(p).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn same_quiver(&self, other: &Poly) -> Result<()> {
        if self.quiver == other.quiver {
            Ok(())
        } else {
            Err(Error::QuiverMismatch)
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.same_quiver(other)?;
        let mut out = self.clone();
        for (p, c) in &other.terms {
            accumulate(&mut out.terms, p.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.same_quiver(other)?;
        let mut out = self.clone();
        for (p, c) in &other.terms {
            accumulate(&mut out.terms, p.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.same_quiver(other)?;
        let mut out = Poly::zero(&self.quiver);
        for (p1, c1) in &self.terms {
            for (p2, c2) in &other.terms {
                if let Some(p) = p1.concat(p2) {
                    accumulate(&mut out.terms, p, c1 * c2);
                }
            }
        }
        Ok(out)
    }

    /// Product with all terms longer than `n` discarded.
    pub fn mul_truncated(&self, other: &Poly, n: usize) -> Poly {
        let mut out = Poly::zero(&self.quiver);
        for (p1, c1) in &self.terms {
            if p1.len() > n {
                break;
            }
            for (p2, c2) in &other.terms {
                if p1.len() + p2.len() > n {
                    break;
                }
                if let Some(p) = p1.concat(p2) {
                    accumulate(&mut out.terms, p, c1 * c2);
                }
            }
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> Poly {
        if s.is_zero() {
            return Poly::zero(&self.quiver);
        }
        Poly {
            quiver: self.quiver.clone(),
            terms: self.terms.iter().map(|(p, c)| (p.clone(), c * s)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut out = Poly::one(&self.quiver);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// The length-zero part.
    pub fn augmentation(&self) -> VertexVector {
        let mut v = VertexVector::zero(&self.quiver);
        for (p, c) in &self.terms {
            if p.is_trivial() {
                v.coeffs[p.source() as usize] = c.clone();
            } else {
                break;
            }
        }
        v
    }

    /// Minimum path length in the support; `None` for zero.
    pub fn order(&self) -> Option<usize> {
        self.terms.keys().next().map(Path::len)
    }

    /// Maximum path length in the support; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Path::len)
    }

    /// Left transduction: strips one trailing `e` from each term ending in `e`.
    pub fn delta(&self, e: Arrow) -> Poly {
        let q = &self.quiver;
        Poly::from_terms(
            q,
            self.terms
                .iter()
                .filter_map(|(p, c)| p.strip_last(q, e).map(|a| (a, c.clone()))),
        )
    }

    /// Right transduction: strips one leading `e`.
    pub fn delta_tilde(&self, e: Arrow) -> Poly {
        let q = &self.quiver;
        Poly::from_terms(
            q,
            self.terms
                .iter()
                .filter_map(|(p, c)| p.strip_first(q, e).map(|a| (a, c.clone()))),
        )
    }

    /// The augmentation with the coefficients at `s(e)` and `r(e)` swapped.
    pub fn tau(&self, e: Arrow) -> VertexVector {
        self.augmentation().swap_along(e)
    }

    /// Drops terms longer than `n`.
    pub fn truncate(&self, n: usize) -> Poly {
        Poly {
            quiver: self.quiver.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(p, _)| p.len() <= n)
                .map(|(p, c)| (p.clone(), c.clone()))
                .collect(),
        }
    }

    /// Terms of exactly length `n`.
    pub fn homogeneous_part(&self, n: usize) -> Poly {
        Poly {
            quiver: self.quiver.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(p, _)| p.len() == n)
                .map(|(p, c)| (p.clone(), c.clone()))
                .collect(),
        }
    }

    /// `p_v · self`.
    pub fn left_vertex(&self, v: Vertex) -> Poly {
        Poly {
            quiver: self.quiver.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(p, _)| p.source() == v)
                .map(|(p, c)| (p.clone(), c.clone()))
                .collect(),
        }
    }

    /// `self · p_v`.
    pub fn right_vertex(&self, v: Vertex) -> Poly {
        Poly {
            quiver: self.quiver.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(p, _)| p.range() == v)
                .map(|(p, c)| (p.clone(), c.clone()))
                .collect(),
        }
    }

    /// Canonical text, e.g. `3*p_1 + 2*e - a*b`.
    pub fn render(&self) -> String {
        join_terms(&self.render_items(), false)
    }

    /// Canonical text without spaces, for use inside parentheses.
    pub fn render_compact(&self) -> String {
        join_terms(&self.render_items(), true)
    }

    pub fn render_items(&self) -> Vec<(Scalar, String)> {
        let q = &self.quiver;
        let mut items = self.augmentation().render_items();
        for (p, c) in &self.terms {
            if !p.is_trivial() {
                items.push((c.clone(), p.render(q)));
            }
        }
        items
    }
}

macro_rules! poly_binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&Poly> for &Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                self.$checked(rhs).expect("operands over the same quiver")
            }
        }
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}

poly_binop!(Add, add, checked_add);
poly_binop!(Sub, sub, checked_sub);
poly_binop!(Mul, mul, checked_mul);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Scalar::one())
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// An element `∑ λ_i p_i` of the semisimple algebra spanned by the vertices.
#[derive(Clone, PartialEq, Eq)]
pub struct VertexVector {
    quiver: Quiver,
    coeffs: Vec<Scalar>,
}

impl fmt::Debug for VertexVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join_terms(&self.render_items(), false))
    }
}

impl VertexVector {
    pub fn zero(q: &Quiver) -> Self {
        VertexVector {
            quiver: q.clone(),
            coeffs: vec![Scalar::zero(); q.num_vertices()],
        }
    }

    pub fn constant(q: &Quiver, s: Scalar) -> Self {
        VertexVector {
            quiver: q.clone(),
            coeffs: vec![s; q.num_vertices()],
        }
    }

    pub fn unit(q: &Quiver, v: Vertex) -> Self {
        let mut out = Self::zero(q);
        out.coeffs[v as usize] = Scalar::one();
        out
    }

    pub fn from_coeffs(q: &Quiver, coeffs: Vec<Scalar>) -> Self {
        assert_eq!(coeffs.len(), q.num_vertices());
        VertexVector {
            quiver: q.clone(),
            coeffs,
        }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn get(&self, v: Vertex) -> &Scalar {
        &self.coeffs[v as usize]
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_invertible(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_zero())
    }

    pub fn inverse(&self) -> Option<Self> {
        self.is_invertible().then(|| VertexVector {
            quiver: self.quiver.clone(),
            coeffs: self.coeffs.iter().map(|c| c.recip()).collect(),
        })
    }

    pub fn mul(&self, other: &Self) -> Self {
        VertexVector {
            quiver: self.quiver.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a * b).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        VertexVector {
            quiver: self.quiver.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    /// Swaps the coefficients at `s(e)` and `r(e)`.
    pub fn swap_along(mut self, e: Arrow) -> Self {
        let s = self.quiver.source(e) as usize;
        let r = self.quiver.range(e) as usize;
        self.coeffs.swap(s, r);
        self
    }

    pub fn to_poly(&self) -> Poly {
        Poly::from_terms(
            &self.quiver,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (Path::trivial(i as Vertex), c.clone())),
        )
    }

    /// A constant vector renders as a bare scalar; otherwise `λ*p_i` terms.
    pub fn render_items(&self) -> Vec<(Scalar, String)> {
        let nonzero = self.coeffs.iter().any(|c| !c.is_zero());
        if nonzero && self.coeffs.iter().all(|c| *c == self.coeffs[0]) {
            return vec![(self.coeffs[0].clone(), String::new())];
        }
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (c.clone(), format!("p_{}", self.quiver.vertex_name(i as Vertex))))
            .collect()
    }
}

/// A dense matrix with path-algebra entries.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    quiver: Quiver,
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl PolyMatrix {
    pub fn zeros(q: &Quiver, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            quiver: q.clone(),
            rows,
            cols,
            entries: vec![Poly::zero(q); rows * cols],
        }
    }

    pub fn identity(q: &Quiver, n: usize) -> Self {
        let mut m = Self::zeros(q, n, n);
        for i in 0..n {
            m.set(i, i, Poly::one(q));
        }
        m
    }

    pub fn from_rows(q: &Quiver, rows: Vec<Vec<Poly>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged matrix rows".into()));
        }
        let entries: Vec<Poly> = rows.into_iter().flatten().collect();
        if entries.iter().any(|p| p.quiver() != q) {
            return Err(Error::QuiverMismatch);
        }
        Ok(PolyMatrix {
            quiver: q.clone(),
            rows: r,
            cols: c,
            entries,
        })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Poly) {
        self.entries[i * self.cols + j] = x;
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> Self {
        PolyMatrix {
            quiver: self.quiver.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.quiver != other.quiver {
            return Err(Error::QuiverMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(&self.quiver, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Poly::zero(&self.quiver);
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Product with entries truncated beyond length `n`.
    pub fn mul_truncated(&self, other: &Self, n: usize) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = Self::zeros(&self.quiver, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Poly::zero(&self.quiver);
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &a.mul_truncated(b, n);
                    }
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn truncate(&self, n: usize) -> Self {
        self.map(|p| p.truncate(n))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Poly, &Poly) -> Poly) -> Result<Self> {
        if self.quiver != other.quiver {
            return Err(Error::QuiverMismatch);
        }
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch("entrywise operation on different shapes".into()));
        }
        Ok(PolyMatrix {
            quiver: self.quiver.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.checked_mul(other).expect("compatible matrices")
    }

    pub fn add(&self, other: &Self) -> Self {
        self.checked_add(other).expect("compatible matrices")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.checked_sub(other).expect("compatible matrices")
    }

    pub fn neg(&self) -> Self {
        self.map(|p| -p)
    }

    /// `self ⊕ Id_l`.
    pub fn direct_sum_identity(&self, l: usize) -> Self {
        let mut out = Self::zeros(&self.quiver, self.rows + l, self.cols + l);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for k in 0..l {
            out.set(self.rows + k, self.cols + k, Poly::one(&self.quiver));
        }
        out
    }

    pub fn augmentation(&self) -> KdMatrix {
        let mut out = KdMatrix::zeros(&self.quiver, self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let eps = self.get(i, j).augmentation();
                for v in self.quiver.vertices() {
                    out.comps[v as usize].set(i, j, eps.get(v).clone());
                }
            }
        }
        out
    }

    pub fn delta(&self, e: Arrow) -> Self {
        self.map(|p| p.delta(e))
    }

    pub fn delta_tilde(&self, e: Arrow) -> Self {
        self.map(|p| p.delta_tilde(e))
    }

    pub fn tau(&self, e: Arrow) -> KdMatrix {
        self.augmentation().swap_along(e)
    }

    /// Largest entry degree; `None` for the zero matrix.
    pub fn degree(&self) -> Option<usize> {
        self.entries.iter().filter_map(Poly::degree).max()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(&self.quiver, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// `[[a, b], [c, d]]` with entries in canonical text.
    pub fn render(&self) -> String {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let cells: Vec<String> = (0..self.cols).map(|j| self.get(i, j).render()).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        format!("[{}]", rows.join(", "))
    }
}

/// A matrix over `K^d`, stored as one scalar matrix per vertex.
#[derive(Clone, PartialEq, Eq)]
pub struct KdMatrix {
    quiver: Quiver,
    rows: usize,
    cols: usize,
    comps: Vec<QMatrix>,
}

impl fmt::Debug for KdMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_poly_matrix().render())
    }
}

impl KdMatrix {
    pub fn zeros(q: &Quiver, rows: usize, cols: usize) -> Self {
        KdMatrix {
            quiver: q.clone(),
            rows,
            cols,
            comps: vec![QMatrix::zeros(rows, cols); q.num_vertices()],
        }
    }

    pub fn identity(q: &Quiver, n: usize) -> Self {
        KdMatrix {
            quiver: q.clone(),
            rows: n,
            cols: n,
            comps: vec![QMatrix::identity(n); q.num_vertices()],
        }
    }

    pub fn from_comps(q: &Quiver, comps: Vec<QMatrix>) -> Self {
        assert_eq!(comps.len(), q.num_vertices());
        let (rows, cols) = comps.first().map_or((0, 0), |m| (m.rows(), m.cols()));
        assert!(comps.iter().all(|m| m.rows() == rows && m.cols() == cols));
        KdMatrix {
            quiver: q.clone(),
            rows,
            cols,
            comps,
        }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn comp(&self, v: Vertex) -> &QMatrix {
        &self.comps[v as usize]
    }

    pub fn comps(&self) -> &[QMatrix] {
        &self.comps
    }

    pub fn entry(&self, i: usize, j: usize) -> VertexVector {
        VertexVector::from_coeffs(
            &self.quiver,
            self.comps.iter().map(|m| m.get(i, j).clone()).collect(),
        )
    }

    fn map_comps(&self, f: impl Fn(&QMatrix) -> QMatrix) -> Self {
        let comps: Vec<QMatrix> = self.comps.iter().map(f).collect();
        let (rows, cols) = comps.first().map_or((self.rows, self.cols), |m| (m.rows(), m.cols()));
        KdMatrix {
            quiver: self.quiver.clone(),
            rows,
            cols,
            comps,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, o) in out.comps.iter_mut().zip(&other.comps) {
            *m = m.mul(o);
        }
        out.cols = other.cols;
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, o) in out.comps.iter_mut().zip(&other.comps) {
            *m = m.add(o);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, o) in out.comps.iter_mut().zip(&other.comps) {
            *m = m.sub(o);
        }
        out
    }

    pub fn inverse(&self) -> Option<Self> {
        let comps = self.comps.iter().map(QMatrix::inverse).collect::<Option<Vec<_>>>()?;
        Some(KdMatrix {
            quiver: self.quiver.clone(),
            rows: self.rows,
            cols: self.cols,
            comps,
        })
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.comps.iter().all(|m| m.inverse().is_some())
    }

    pub fn is_idempotent(&self) -> bool {
        self.rows == self.cols && self.comps.iter().all(|m| m.mul(m) == *m)
    }

    /// Rank of each vertex component.
    pub fn rank_vector(&self) -> Vec<usize> {
        self.comps.iter().map(QMatrix::rank).collect()
    }

    /// An invertible `x` with `self · x · self = self`, componentwise.
    pub fn unit_regular_inverse(&self) -> Self {
        self.map_comps(QMatrix::unit_regular_inverse)
    }

    /// Applies τ_e entrywise: swaps the components at `s(e)` and `r(e)`.
    pub fn swap_along(mut self, e: Arrow) -> Self {
        let s = self.quiver.source(e) as usize;
        let r = self.quiver.range(e) as usize;
        self.comps.swap(s, r);
        self
    }

    pub fn to_poly_matrix(&self) -> PolyMatrix {
        let mut out = PolyMatrix::zeros(&self.quiver, self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.entry(i, j).to_poly());
            }
        }
        out
    }
}

/// Rank vector of the projective module cut out by an idempotent matrix.
pub fn projective_rank(p: &PolyMatrix) -> Result<Vec<usize>> {
    if p.rows() != p.cols() || p.mul(p) != *p {
        return Err(Error::NotIdempotent);
    }
    Ok(p.augmentation().rank_vector())
}
