//! Power series truncated at a fixed path length.

use crate::error::{Error, Result};
use crate::pathalg::{KdMatrix, Poly, PolyMatrix, VertexVector};
use crate::quiver::{Arrow, Quiver};
use std::fmt;

/// Default truncation order.
pub const DEFAULT_TRUNC: usize = 8;

/// The image of a power series modulo paths longer than `order`.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncSeries {
    poly: Poly,
    order: usize,
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl TruncSeries {
    pub fn from_poly(x: &Poly, order: usize) -> TruncSeries {
        TruncSeries {
            poly: x.truncate(order),
            order,
        }
    }

    pub fn one(q: &Quiver, order: usize) -> TruncSeries {
        TruncSeries::from_poly(&Poly::one(q), order)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn quiver(&self) -> &Quiver {
        self.poly.quiver()
    }

    /// The stored terms as a polynomial.
    pub fn as_poly(&self) -> &Poly {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    fn compatible(&self, other: &TruncSeries) -> Result<()> {
        if self.quiver() != other.quiver() {
            return Err(Error::QuiverMismatch);
        }
        if self.order != other.order {
            return Err(Error::OrderMismatch(self.order, other.order));
        }
        Ok(())
    }

    pub fn add(&self, other: &TruncSeries) -> Result<TruncSeries> {
        self.compatible(other)?;
        Ok(TruncSeries {
            poly: &self.poly + &other.poly,
            order: self.order,
        })
    }

    pub fn sub(&self, other: &TruncSeries) -> Result<TruncSeries> {
        self.compatible(other)?;
        Ok(TruncSeries {
            poly: &self.poly - &other.poly,
            order: self.order,
        })
    }

    pub fn mul(&self, other: &TruncSeries) -> Result<TruncSeries> {
        self.compatible(other)?;
        Ok(TruncSeries {
            poly: self.poly.mul_truncated(&other.poly, self.order),
            order: self.order,
        })
    }

    pub fn augmentation(&self) -> VertexVector {
        self.poly.augmentation()
    }

    /// Two-sided inverse, as `ε⁻¹ ∑_k (D ε⁻¹)^k` with `D = ε(x) − x`.
    pub fn invert(&self) -> Result<TruncSeries> {
        let eps_inv = self
            .augmentation()
            .inverse()
            .ok_or(Error::AugmentationNotInvertible)?
            .to_poly();
        let n = self.order;
        let d = &self.augmentation().to_poly() - &self.poly;
        let t = d.mul_truncated(&eps_inv, n);
        let one = Poly::one(self.quiver());
        let mut s = one.clone();
        for _ in 0..n {
            s = &one + &t.mul_truncated(&s, n);
        }
        Ok(TruncSeries {
            poly: eps_inv.mul_truncated(&s, n),
            order: n,
        })
    }

    fn consume_order(&self) -> Result<usize> {
        self.order.checked_sub(1).ok_or(Error::OrderExhausted)
    }

    /// Left transduction; the result is reliable one order lower.
    pub fn delta(&self, e: Arrow) -> Result<TruncSeries> {
        let order = self.consume_order()?;
        Ok(TruncSeries {
            poly: self.poly.delta(e).truncate(order),
            order,
        })
    }

    /// Right transduction; the result is reliable one order lower.
    pub fn delta_tilde(&self, e: Arrow) -> Result<TruncSeries> {
        let order = self.consume_order()?;
        Ok(TruncSeries {
            poly: self.poly.delta_tilde(e).truncate(order),
            order,
        })
    }

    pub fn tau(&self, e: Arrow) -> VertexVector {
        self.poly.tau(e)
    }

    /// Lowers the truncation order.
    pub fn retruncate(&self, order: usize) -> TruncSeries {
        assert!(order <= self.order, "cannot raise a truncation order");
        TruncSeries {
            poly: self.poly.truncate(order),
            order,
        }
    }

    /// Canonical text with an explicit `O(len>N)` tail.
    pub fn render(&self) -> String {
        let body = self.poly.render();
        if body == "0" {
            format!("O(len>{})", self.order)
        } else {
            format!("{body} + O(len>{})", self.order)
        }
    }
}

/// Two-sided inverse of a square matrix of power series truncated at `order`.
pub fn ts_matrix_invert_poly(m: &PolyMatrix, order: usize) -> Result<PolyMatrix> {
    let q = m.quiver();
    let n = m.rows();
    if n != m.cols() {
        return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
    }
    let eps: KdMatrix = m.augmentation();
    let eps_inv = eps
        .inverse()
        .ok_or(Error::AugmentationNotInvertible)?
        .to_poly_matrix();
    let d = eps.to_poly_matrix().sub(&m.truncate(order));
    let t = d.mul_truncated(&eps_inv, order);
    let id = PolyMatrix::identity(q, n);
    let mut s = id.clone();
    for _ in 0..order {
        s = id.add(&t.mul_truncated(&s, order));
    }
    Ok(eps_inv.mul_truncated(&s, order))
}

/// Two-sided inverse of a square matrix of truncated series sharing one order.
pub fn ts_matrix_invert(m: &[Vec<TruncSeries>]) -> Result<Vec<Vec<TruncSeries>>> {
    let first = m
        .first()
        .and_then(|r| r.first())
        .ok_or_else(|| Error::DimensionMismatch("empty matrix".into()))?;
    let (q, order) = (first.quiver().clone(), first.order());
    for x in m.iter().flatten() {
        first.compatible(x)?;
    }
    let pm = PolyMatrix::from_rows(
        &q,
        m.iter().map(|r| r.iter().map(|x| x.poly.clone()).collect()).collect(),
    )?;
    let inv = ts_matrix_invert_poly(&pm, order)?;
    Ok((0..inv.rows())
        .map(|i| {
            (0..inv.cols())
                .map(|j| TruncSeries::from_poly(inv.get(i, j), order))
                .collect()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{loop_quiver, rose};
    use crate::scalar::int;

    fn ts(x: &Poly, n: usize) -> TruncSeries {
        TruncSeries::from_poly(x, n)
    }

    #[test]
    fn truncation_drops_long_terms() {
        let r = rose(2);
        let a = Poly::arrow(&r, 0);
        let one = Poly::one(&r);
        assert_eq!(ts(&(&one + &a.pow(3)), 2).as_poly(), &one);
        assert!(ts(&Poly::zero(&r), 5).is_zero());
    }

    #[test]
    fn products() {
        let q = loop_quiver();
        let one = Poly::one(&q);
        let e = Poly::arrow(&q, 0);
        let x = ts(&(&one + &e), 2).mul(&ts(&(&one - &e), 2)).unwrap();
        assert_eq!(x.as_poly(), &(&one - &e.pow(2)));
        assert!(ts(&e, 1).mul(&ts(&e, 1)).unwrap().is_zero());
        assert!(matches!(ts(&e, 1).mul(&ts(&e, 2)), Err(Error::OrderMismatch(1, 2))));
    }

    #[test]
    fn geometric_inverse() {
        let q = loop_quiver();
        let one = Poly::one(&q);
        let e = Poly::arrow(&q, 0);
        let inv = ts(&(&one - &e), 3).invert().unwrap();
        assert_eq!(inv.render(), "1 + e + e^2 + e^3 + O(len>3)");
        let r = rose(2);
        let (a, b) = (Poly::arrow(&r, 0), Poly::arrow(&r, 1));
        let one = Poly::one(&r);
        let inv = ts(&(&(&one - &a) - &b), 2).invert().unwrap();
        let expected = &(&(&one + &a) + &b) + &(&(&a + &b) * &(&a + &b));
        assert_eq!(inv.as_poly(), &expected);
    }

    #[test]
    fn non_invertible_augmentation() {
        let q = loop_quiver();
        assert!(matches!(
            ts(&Poly::arrow(&q, 0), 3).invert(),
            Err(Error::AugmentationNotInvertible)
        ));
    }

    #[test]
    fn matrix_inverse_unitriangular() {
        let q = loop_quiver();
        let one = Poly::one(&q);
        let e = Poly::arrow(&q, 0);
        let zero = Poly::zero(&q);
        let m = PolyMatrix::from_rows(&q, vec![vec![one.clone(), e.clone()], vec![zero.clone(), one.clone()]])
            .unwrap();
        let inv = ts_matrix_invert_poly(&m, 5).unwrap();
        let expected =
            PolyMatrix::from_rows(&q, vec![vec![one.clone(), -&e], vec![zero, one.clone()]]).unwrap();
        assert_eq!(inv, expected);
    }

    #[test]
    fn transduction_lowers_order() {
        let q = loop_quiver();
        let one = Poly::one(&q);
        let e = Poly::arrow(&q, 0);
        let inv = ts(&(&one - &e), 4).invert().unwrap();
        let d = inv.delta(0).unwrap();
        assert_eq!(d.order(), 3);
        assert_eq!(d, inv.retruncate(3));
        assert_eq!(inv.tau(0).coeffs(), &[int(1)]);
        assert!(matches!(ts(&one, 0).delta(0), Err(Error::OrderExhausted)));
    }
}
