//! Rational series `b A⁻¹ c` over the path algebra.

use crate::automaton::GradedRep;
use crate::error::{Error, Result};
use crate::pathalg::{KdMatrix, Poly, PolyMatrix, VertexVector};
use crate::quiver::{Arrow, Quiver, Vertex};
use crate::scalar::Scalar;
use crate::series::TruncSeries;
use num_traits::One;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A linear representation: the series `b A⁻¹ c` with `b` a row, `A` square
/// and `c` a column over the path algebra, and `ε(A)` invertible.
#[derive(Clone)]
pub struct RatRep {
    b: PolyMatrix,
    a: PolyMatrix,
    c: PolyMatrix,
}

impl fmt::Debug for RatRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatRep(dim {}: {})", self.dim(), self.render())
    }
}

/// Places `parts` at the given offsets inside a zero matrix.
fn assemble(q: &Quiver, rows: usize, cols: usize, parts: &[(usize, usize, &PolyMatrix)]) -> PolyMatrix {
    let mut out = PolyMatrix::zeros(q, rows, cols);
    for (r0, c0, m) in parts {
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let x = m.get(i, j);
                if !x.is_zero() {
                    out.set(r0 + i, c0 + j, x.clone());
                }
            }
        }
    }
    out
}

impl RatRep {
    pub fn new(b: PolyMatrix, a: PolyMatrix, c: PolyMatrix) -> Result<RatRep> {
        let n = a.rows();
        if a.cols() != n || b.rows() != 1 || b.cols() != n || c.rows() != n || c.cols() != 1 {
            return Err(Error::DimensionMismatch(format!(
                "b is {}x{}, A is {}x{}, c is {}x{}",
                b.rows(),
                b.cols(),
                a.rows(),
                a.cols(),
                c.rows(),
                c.cols()
            )));
        }
        if b.quiver() != a.quiver() || c.quiver() != a.quiver() {
            return Err(Error::QuiverMismatch);
        }
        if !a.augmentation().is_invertible() {
            return Err(Error::AugmentationNotInvertible);
        }
        Ok(RatRep { b, a, c })
    }

    fn new_unchecked(b: PolyMatrix, a: PolyMatrix, c: PolyMatrix) -> RatRep {
        debug_assert!(a.augmentation().is_invertible());
        RatRep { b, a, c }
    }

    pub fn from_poly(x: &Poly) -> RatRep {
        let q = x.quiver();
        let one = PolyMatrix::identity(q, 1);
        let mut b = PolyMatrix::zeros(q, 1, 1);
        b.set(0, 0, x.clone());
        RatRep::new_unchecked(b, one.clone(), one)
    }

    /// The dimension-0 representation of zero.
    pub fn zero(q: &Quiver) -> RatRep {
        RatRep::new_unchecked(
            PolyMatrix::zeros(q, 1, 0),
            PolyMatrix::zeros(q, 0, 0),
            PolyMatrix::zeros(q, 0, 1),
        )
    }

    pub fn one(q: &Quiver) -> RatRep {
        RatRep::from_poly(&Poly::one(q))
    }

    pub fn scalar(q: &Quiver, s: Scalar) -> RatRep {
        RatRep::from_poly(&Poly::scalar(q, s))
    }

    pub fn quiver(&self) -> &Quiver {
        self.a.quiver()
    }

    pub fn dim(&self) -> usize {
        self.a.rows()
    }

    pub fn b(&self) -> &PolyMatrix {
        &self.b
    }

    pub fn a(&self) -> &PolyMatrix {
        &self.a
    }

    pub fn c(&self) -> &PolyMatrix {
        &self.c
    }

    fn same_quiver(&self, other: &RatRep) -> Result<()> {
        if self.quiver() == other.quiver() {
            Ok(())
        } else {
            Err(Error::QuiverMismatch)
        }
    }

    /// Block-diagonal sum.
    pub fn checked_add(&self, other: &RatRep) -> Result<RatRep> {
        self.same_quiver(other)?;
        let q = self.quiver();
        let (n1, n2) = (self.dim(), other.dim());
        let n = n1 + n2;
        Ok(RatRep::new_unchecked(
            assemble(q, 1, n, &[(0, 0, &self.b), (0, n1, &other.b)]),
            assemble(q, n, n, &[(0, 0, &self.a), (n1, n1, &other.a)]),
            assemble(q, n, 1, &[(0, 0, &self.c), (n1, 0, &other.c)]),
        ))
    }

    pub fn checked_sub(&self, other: &RatRep) -> Result<RatRep> {
        self.checked_add(&-other)
    }

    /// Product via `[[A₁, −c₁b₂], [0, A₂]]`.
    pub fn checked_mul(&self, other: &RatRep) -> Result<RatRep> {
        self.same_quiver(other)?;
        let q = self.quiver();
        let (n1, n2) = (self.dim(), other.dim());
        let n = n1 + n2;
        let link = self.c.mul(&other.b).neg();
        Ok(RatRep::new_unchecked(
            assemble(q, 1, n, &[(0, 0, &self.b)]),
            assemble(q, n, n, &[(0, 0, &self.a), (0, n1, &link), (n1, n1, &other.a)]),
            assemble(q, n, 1, &[(n1, 0, &other.c)]),
        ))
    }

    pub fn scale(&self, s: &Scalar) -> RatRep {
        RatRep::new_unchecked(self.b.map(|p| p.scale(s)), self.a.clone(), self.c.clone())
    }

    /// `x · self`, without growing the dimension.
    pub fn left_mul_poly(&self, x: &Poly) -> RatRep {
        RatRep::new_unchecked(self.b.map(|p| x * p), self.a.clone(), self.c.clone())
    }

    /// `self · x`, without growing the dimension.
    pub fn right_mul_poly(&self, x: &Poly) -> RatRep {
        RatRep::new_unchecked(self.b.clone(), self.a.clone(), self.c.map(|p| p * x))
    }

    /// `p_v · self`.
    pub fn left_vertex(&self, v: Vertex) -> RatRep {
        RatRep::new_unchecked(self.b.map(|p| p.left_vertex(v)), self.a.clone(), self.c.clone())
    }

    /// `ε(b) ε(A)⁻¹ ε(c)`.
    pub fn augmentation(&self) -> VertexVector {
        let q = self.quiver();
        let a_inv = self
            .a
            .augmentation()
            .inverse()
            .expect("representation invariant: ε(A) invertible");
        let prod: KdMatrix = self.b.augmentation().mul(&a_inv).mul(&self.c.augmentation());
        VertexVector::from_coeffs(q, prod.comps().iter().map(|m| m.get(0, 0).clone()).collect())
    }

    /// The endomorphism τ_e, which factors through the augmentation.
    pub fn tau(&self, e: Arrow) -> VertexVector {
        self.augmentation().swap_along(e)
    }

    /// Left transduction via `[[A, Aδ_e], [0, Aτ_e]]`, `b' = [b, bδ_e]`,
    /// `c' = [cδ_e; cτ_e]`.
    pub fn delta(&self, e: Arrow) -> RatRep {
        let q = self.quiver();
        let n = self.dim();
        let a_d = self.a.delta(e);
        let a_t = self.a.tau(e).to_poly_matrix();
        let b_d = self.b.delta(e);
        let c_d = self.c.delta(e);
        let c_t = self.c.tau(e).to_poly_matrix();
        RatRep::new_unchecked(
            assemble(q, 1, 2 * n, &[(0, 0, &self.b), (0, n, &b_d)]),
            assemble(q, 2 * n, 2 * n, &[(0, 0, &self.a), (0, n, &a_d), (n, n, &a_t)]),
            assemble(q, 2 * n, 1, &[(0, 0, &c_d), (n, 0, &c_t)]),
        )
    }

    /// Right transduction via `[[Aτ_e, δ̃_e A], [0, A]]`, `b' = [bτ_e, δ̃_e b]`,
    /// `c' = [δ̃_e c; c]`.
    pub fn delta_tilde(&self, e: Arrow) -> RatRep {
        let q = self.quiver();
        let n = self.dim();
        let a_d = self.a.delta_tilde(e);
        let a_t = self.a.tau(e).to_poly_matrix();
        let b_t = self.b.tau(e).to_poly_matrix();
        let b_d = self.b.delta_tilde(e);
        let c_d = self.c.delta_tilde(e);
        RatRep::new_unchecked(
            assemble(q, 1, 2 * n, &[(0, 0, &b_t), (0, n, &b_d)]),
            assemble(q, 2 * n, 2 * n, &[(0, 0, &a_t), (0, n, &a_d), (n, n, &self.a)]),
            assemble(q, 2 * n, 1, &[(0, 0, &c_d), (n, 0, &self.c)]),
        )
    }

    /// Two-sided inverse via the bordered matrix `[[A, c], [b, 0]]`, whose
    /// Schur complement is `−bA⁻¹c`.
    pub fn invert(&self) -> Result<RatRep> {
        if !self.augmentation().is_invertible() {
            return Err(Error::AugmentationNotInvertible);
        }
        let q = self.quiver();
        let n = self.dim();
        let border = assemble(q, n + 1, n + 1, &[(0, 0, &self.a), (0, n, &self.c), (n, 0, &self.b)]);
        let mut b = PolyMatrix::zeros(q, 1, n + 1);
        b.set(0, n, -Poly::one(q));
        let mut c = PolyMatrix::zeros(q, n + 1, 1);
        c.set(n, 0, Poly::one(q));
        RatRep::new(b, border, c)
    }

    /// Homogeneous parts of the value up to path length `order`.
    pub fn truncate(&self, order: usize) -> TruncSeries {
        let q = self.quiver();
        let n = self.dim();
        let eps = self.a.augmentation();
        let eps_inv = eps
            .inverse()
            .expect("representation invariant: ε(A) invertible")
            .to_poly_matrix();
        let d = eps.to_poly_matrix().sub(&self.a);
        let deg_d = d.degree().unwrap_or(0);
        let d_parts: Vec<PolyMatrix> = (0..=deg_d).map(|j| d.map(|p| p.homogeneous_part(j))).collect();
        // x = bA⁻¹ solves x ε(A) = b + xD one degree at a time.
        let mut x_parts: Vec<PolyMatrix> = Vec::with_capacity(order + 1);
        for k in 0..=order {
            let mut rhs = self.b.map(|p| p.homogeneous_part(k));
            for (j, dj) in d_parts.iter().enumerate().skip(1) {
                if j > k {
                    break;
                }
                if !dj.is_zero() {
                    rhs = rhs.add(&x_parts[k - j].mul(dj));
                }
            }
            x_parts.push(rhs.mul(&eps_inv));
        }
        let mut x = PolyMatrix::zeros(q, 1, n);
        for part in &x_parts {
            x = x.add(part);
        }
        let value = x.mul_truncated(&self.c, order);
        let v = if n == 0 { Poly::zero(q) } else { value.get(0, 0).clone() };
        TruncSeries::from_poly(&v, order)
    }

    /// Exact zero test through a reduced weighted automaton.
    pub fn is_zero(&self) -> bool {
        GradedRep::from_ratrep(self).forward_reduce().is_zero()
    }

    /// Exact equality of the represented series.
    pub fn equals(&self, other: &RatRep) -> Result<bool> {
        Ok(self.checked_sub(other)?.is_zero())
    }

    /// Comparison of truncations at `order`.
    pub fn equals_to_order(&self, other: &RatRep, order: usize) -> Result<bool> {
        self.same_quiver(other)?;
        Ok(self.truncate(order) == other.truncate(order))
    }

    /// An equivalent representation of minimal dimension, in a canonical
    /// basis, with `b`, `c` constant and `A = 1 − ∑ T_e e`.
    pub fn minimize(&self) -> RatRep {
        GradedRep::from_ratrep(self).minimize().canonical().to_ratrep()
    }

    /// The value as a polynomial, if it has finite support.
    pub fn to_poly(&self) -> Option<Poly> {
        let m = GradedRep::from_ratrep(self).minimize();
        let deg = m.polynomial_degree()?;
        Some(m.to_ratrep().truncate(deg).as_poly().clone())
    }

    /// Canonical text such as `inv(1-e)` or `1 + a*b`.
    pub fn render(&self) -> String {
        crate::ratprint::render(self, false)
    }

    pub fn render_compact(&self) -> String {
        crate::ratprint::render(self, true)
    }
}

/// Inverse of a square matrix of rational series, entrywise rational.
///
/// The entries are stacked as `M = B·A⁻¹·C` with `A` block diagonal; the
/// bordered matrix `[[A, C], [B, 0]]` has Schur complement `−M`.
pub fn rr_matrix_invert(m: &[Vec<RatRep>]) -> Result<Vec<Vec<RatRep>>> {
    let k = m.len();
    if k == 0 {
        return Ok(Vec::new());
    }
    if m.iter().any(|row| row.len() != k) {
        return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
    }
    let q = m[0][0].quiver().clone();
    if m.iter().flatten().any(|x| x.quiver() != &q) {
        return Err(Error::QuiverMismatch);
    }
    let eps_comps: Vec<_> = q
        .vertices()
        .map(|v| {
            let rows = m
                .iter()
                .map(|row| row.iter().map(|x| x.augmentation().get(v).clone()).collect())
                .collect();
            crate::linalg::QMatrix::from_rows(rows)
        })
        .collect();
    if !KdMatrix::from_comps(&q, eps_comps).is_invertible() {
        return Err(Error::AugmentationNotInvertible);
    }
    let total: usize = m.iter().flatten().map(RatRep::dim).sum();
    let size = total + k;
    let mut parts: Vec<(usize, usize, &PolyMatrix)> = Vec::new();
    let mut off = 0;
    let mut b_parts = Vec::new();
    for (i, row) in m.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            parts.push((off, off, &x.a));
            parts.push((off, total + j, &x.c));
            b_parts.push((total + i, off, &x.b));
            off += x.dim();
        }
    }
    parts.extend(b_parts);
    let border = assemble(&q, size, size, &parts);
    let mut out = Vec::with_capacity(k);
    for i in 0..k {
        let mut row = Vec::with_capacity(k);
        for j in 0..k {
            let mut b = PolyMatrix::zeros(&q, 1, size);
            b.set(0, total + i, -Poly::one(&q));
            let mut c = PolyMatrix::zeros(&q, size, 1);
            c.set(total + j, 0, Poly::one(&q));
            row.push(RatRep::new(b, border.clone(), c)?);
        }
        out.push(row);
    }
    Ok(out)
}

macro_rules! rat_binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&RatRep> for &RatRep {
            type Output = RatRep;
            fn $m(self, rhs: &RatRep) -> RatRep {
                self.$checked(rhs).expect("operands over the same quiver")
            }
        }
        impl $tr<RatRep> for RatRep {
            type Output = RatRep;
            fn $m(self, rhs: RatRep) -> RatRep {
                (&self).$m(&rhs)
            }
        }
    };
}

rat_binop!(Add, add, checked_add);
rat_binop!(Sub, sub, checked_sub);
rat_binop!(Mul, mul, checked_mul);

impl Neg for &RatRep {
    type Output = RatRep;
    fn neg(self) -> RatRep {
        self.scale(&-Scalar::one())
    }
}

impl Neg for RatRep {
    type Output = RatRep;
    fn neg(self) -> RatRep {
        -&self
    }
}
