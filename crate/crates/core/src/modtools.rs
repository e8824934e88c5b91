//! Matrix algorithms over the path algebra: Higman linearization and the
//! iterative regularization of a module `(p − D)·P(E)^n`.

use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::path::Path;
use crate::pathalg::{KdMatrix, Poly, PolyMatrix};
use crate::quiver::Quiver;
use crate::ratseries::{rr_matrix_invert, RatRep};
use crate::scalar::Scalar;
use num_traits::Zero;

/// `L = P·(M ⊕ Id_ℓ)·Q` with `L` linear.
#[derive(Clone, Debug)]
pub struct Linearization {
    pub ell: usize,
    pub p: PolyMatrix,
    pub q: PolyMatrix,
    pub l: PolyMatrix,
    pub p_inv: PolyMatrix,
    pub q_inv: PolyMatrix,
}

impl Linearization {
    /// Re-checks every identity the construction promises.
    pub fn verify(&self, m: &PolyMatrix) -> bool {
        let n = self.p.rows();
        let k = self.q.rows();
        let q = m.quiver();
        self.l.degree().unwrap_or(0) <= 1
            && self.p.mul(&self.p_inv) == PolyMatrix::identity(q, n)
            && self.p_inv.mul(&self.p) == PolyMatrix::identity(q, n)
            && self.q.mul(&self.q_inv) == PolyMatrix::identity(q, k)
            && self.q_inv.mul(&self.q) == PolyMatrix::identity(q, k)
            && self.p.mul(&m.direct_sum_identity(self.ell)).mul(&self.q) == self.l
    }
}

/// Grows a square matrix by one trailing row and column of the identity.
fn bordered(m: &PolyMatrix) -> PolyMatrix {
    m.direct_sum_identity(1)
}

/// The first entry, scanning columns left to right and rows top to bottom,
/// with a path of length at least 2, and its longest such term.
fn next_split(m: &PolyMatrix) -> Option<(usize, usize, Path, Scalar)> {
    for j in 0..m.cols() {
        for i in 0..m.rows() {
            let best = m
                .get(i, j)
                .terms()
                .filter(|(p, _)| p.len() >= 2)
                .max_by(|(p, _), (r, _)| p.len().cmp(&r.len()).then_with(|| r.cmp(p)));
            if let Some((p, c)) = best {
                return Some((i, j, p.clone(), c.clone()));
            }
        }
    }
    None
}

/// Higman's trick: repeatedly splits a term `λ·x·y` (`x` the first arrow of
/// the longest path in the leftmost offending entry) into `−λx` and `y` in a
/// new bordered row and column.
pub fn higman_linearize(m: &PolyMatrix) -> Linearization {
    let q = m.quiver().clone();
    let mut l = m.clone();
    let mut p = PolyMatrix::identity(&q, m.rows());
    let mut p_inv = p.clone();
    let mut qm = PolyMatrix::identity(&q, m.cols());
    let mut q_inv = qm.clone();
    let mut ell = 0;
    while let Some((i, j, path, lambda)) = next_split(&l) {
        ell += 1;
        l = bordered(&l);
        p = bordered(&p);
        p_inv = bordered(&p_inv);
        qm = bordered(&qm);
        q_inv = bordered(&q_inv);
        let (k_row, k_col) = (l.rows() - 1, l.cols() - 1);
        let x = Poly::path(&q, path.prefix(&q, 1)).scale(&lambda);
        let y = Poly::path(&q, path.suffix_from(&q, 1));

        let mut row_op = PolyMatrix::identity(&q, l.rows());
        row_op.set(i, k_row, -&x);
        let mut row_op_inv = PolyMatrix::identity(&q, l.rows());
        row_op_inv.set(i, k_row, x.clone());
        let mut col_op = PolyMatrix::identity(&q, l.cols());
        col_op.set(k_col, j, y.clone());
        let mut col_op_inv = PolyMatrix::identity(&q, l.cols());
        col_op_inv.set(k_col, j, -&y);

        l = row_op.mul(&l).mul(&col_op);
        p = row_op.mul(&p);
        p_inv = p_inv.mul(&row_op_inv);
        qm = qm.mul(&col_op);
        q_inv = col_op_inv.mul(&q_inv);
    }
    Linearization {
        ell,
        p,
        q: qm,
        l,
        p_inv,
        q_inv,
    }
}

/// Right-multiplies `u` by an invertible `x` over `K^d` so that the
/// augmentation of `u·x` is idempotent. Returns `(u·x, x)`.
pub fn normalize_augmentation(u: &PolyMatrix) -> Result<(PolyMatrix, KdMatrix)> {
    if u.rows() != u.cols() {
        return Err(Error::DimensionMismatch(format!("{}x{} matrix is not square", u.rows(), u.cols())));
    }
    let x = u.augmentation().unit_regular_inverse();
    Ok((u.mul(&x.to_poly_matrix()), x))
}

/// Output of [`vnreg_regularize`].
#[derive(Clone, Debug)]
pub struct Regularization {
    pub q_list: Vec<KdMatrix>,
    pub p: KdMatrix,
    pub d: PolyMatrix,
    pub u: PolyMatrix,
    pub v: Vec<Vec<RatRep>>,
}

/// Rational series matrices, used to check the regularization identities.
pub fn rat_matrix(m: &PolyMatrix) -> Vec<Vec<RatRep>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| RatRep::from_poly(m.get(i, j))).collect())
        .collect()
}

pub fn rat_matrix_mul(x: &[Vec<RatRep>], y: &[Vec<RatRep>]) -> Result<Vec<Vec<RatRep>>> {
    let inner = y.len();
    if x.iter().any(|row| row.len() != inner) {
        return Err(Error::DimensionMismatch("rational matrix product".into()));
    }
    let cols = y.first().map_or(0, Vec::len);
    let mut out = Vec::with_capacity(x.len());
    for row in x {
        let mut out_row = Vec::with_capacity(cols);
        for j in 0..cols {
            let mut acc: Option<RatRep> = None;
            for (k, a) in row.iter().enumerate() {
                let term = a.checked_mul(&y[k][j])?;
                acc = Some(match acc {
                    None => term,
                    Some(s) => s.checked_add(&term)?,
                });
            }
            let entry = match acc {
                Some(s) => s.minimize(),
                None => return Err(Error::DimensionMismatch("empty inner dimension".into())),
            };
            out_row.push(entry);
        }
        out.push(out_row);
    }
    Ok(out)
}

pub fn rat_matrix_equals(x: &[Vec<RatRep>], y: &[Vec<RatRep>]) -> Result<bool> {
    if x.len() != y.len() || x.iter().zip(y).any(|(a, b)| a.len() != b.len()) {
        return Ok(false);
    }
    for (a, b) in x.iter().zip(y) {
        for (s, t) in a.iter().zip(b) {
            if !s.equals(t)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

impl Regularization {
    /// Checks `uvu = u`, `vuv = v` and that `vu` is polynomial.
    pub fn verify(&self) -> Result<bool> {
        let u = rat_matrix(&self.u);
        let vu = rat_matrix_mul(&self.v, &u)?;
        let uvu = rat_matrix_mul(&u, &vu)?;
        let vuv = rat_matrix_mul(&vu, &self.v)?;
        Ok(rat_matrix_equals(&uvu, &u)?
            && rat_matrix_equals(&vuv, &self.v)?
            && vu.iter().flatten().all(|x| x.to_poly().is_some()))
    }

    /// `v·u`, which the construction makes polynomial.
    pub fn vu(&self) -> Result<PolyMatrix> {
        let vu = rat_matrix_mul(&self.v, &rat_matrix(&self.u))?;
        let rows = vu
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| {
                        x.to_poly()
                            .ok_or_else(|| Error::RegularityViolated("v·u is not polynomial".into()))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        PolyMatrix::from_rows(self.u.quiver(), rows)
    }
}

fn is_homogeneous_linear(d: &PolyMatrix) -> bool {
    d.entries().iter().all(|x| x.terms().all(|(p, _)| p.len() == 1))
}

/// The idempotent `B (BᵀB)⁻¹ Bᵀ r` with image spanned by `vectors`; it lies
/// below `r` when the vectors lie in the image of `r`.
fn idempotent_onto(vectors: &[Vec<Scalar>], r: &QMatrix) -> QMatrix {
    let n = r.rows();
    let basis = QMatrix::from_columns(n, vectors).column_basis();
    if basis.is_empty() {
        return QMatrix::zeros(n, n);
    }
    let b = QMatrix::from_columns(n, &basis);
    let bt = b.transpose();
    let gram_inv = bt.mul(&b).inverse().expect("basis columns are independent");
    b.mul(&gram_inv).mul(&bt).mul(r)
}

/// Finds `u` and `v` with `uvu = u`, `vuv = v` and `vu = p`, where `u`
/// generates the same module as `p − D`.
///
/// Stage `k` reads the arrow coefficients of the columns of `u_k·c_k`
/// (`c_0 = 1 − p`, later `c_k = q_k`), spans them by an idempotent `q_{k+1}`
/// below `p − ∑ q`, and continues with `u_{k+1} = (1 − ∑ q)(p − D)` until no
/// new coefficient appears. Then `u = p − (p−q)D(p−q) − (1−p)D(p−q)` and
/// `v = p (1 − (p−q)D(p−q))⁻¹ p`.
pub fn vnreg_regularize(p: &KdMatrix, d: &PolyMatrix) -> Result<Regularization> {
    let quiver: Quiver = d.quiver().clone();
    let n = p.rows();
    if p.cols() != n || d.rows() != n || d.cols() != n {
        return Err(Error::DimensionMismatch(format!(
            "p is {}x{}, D is {}x{}",
            p.rows(),
            p.cols(),
            d.rows(),
            d.cols()
        )));
    }
    if !p.is_idempotent() {
        return Err(Error::NotIdempotent);
    }
    if !is_homogeneous_linear(d) {
        return Err(Error::NotHomogeneous);
    }
    let id = KdMatrix::identity(&quiver, n);
    let p_poly = p.to_poly_matrix();
    let u0 = p_poly.sub(d);
    let mut q_list: Vec<KdMatrix> = Vec::new();
    let mut q_sum = KdMatrix::zeros(&quiver, n, n);
    let mut cut = id.sub(p);
    let max_stages = p.rank_vector().iter().sum::<usize>() + 1;
    for _ in 0..max_stages {
        let uk = id.sub(&q_sum).to_poly_matrix().mul(&u0);
        let x = uk.mul(&cut.to_poly_matrix());
        let r = p.sub(&q_sum);
        let mut per_vertex: Vec<Vec<Vec<Scalar>>> = vec![Vec::new(); quiver.num_vertices()];
        for e in quiver.arrows() {
            let v = quiver.source(e);
            let arrow = Path::arrow(&quiver, e);
            for i in 0..n {
                let col: Vec<Scalar> = (0..n).map(|j| x.get(j, i).coeff(&arrow)).collect();
                if col.iter().all(Zero::is_zero) {
                    continue;
                }
                if r.comp(v).mul_vec(&col) != col {
                    return Err(Error::RegularityViolated(format!(
                        "coefficient of {} in column {} leaves the image of p",
                        quiver.arrow_name(e),
                        i + 1
                    )));
                }
                per_vertex[v as usize].push(col);
            }
        }
        if per_vertex.iter().all(Vec::is_empty) {
            break;
        }
        let comps: Vec<QMatrix> = quiver
            .vertices()
            .map(|v| idempotent_onto(&per_vertex[v as usize], r.comp(v)))
            .collect();
        let qk = KdMatrix::from_comps(&quiver, comps);
        q_sum = q_sum.add(&qk);
        cut = qk.clone();
        q_list.push(qk);
    }
    let pq = p.sub(&q_sum).to_poly_matrix();
    let w = pq.mul(d).mul(&pq);
    let u = p_poly.sub(&w).sub(&id.sub(p).to_poly_matrix().mul(d).mul(&pq));
    let one_minus_w = rat_matrix(&PolyMatrix::identity(&quiver, n).sub(&w));
    let inv = rr_matrix_invert(&one_minus_w)?;
    let p_rat = rat_matrix(&p_poly);
    let v = rat_matrix_mul(&rat_matrix_mul(&p_rat, &inv)?, &p_rat)?;
    Ok(Regularization {
        q_list,
        p: p.clone(),
        d: d.clone(),
        u,
        v,
    })
}

/// Whether `a·b = 0` and `b·a = 0`.
pub fn orthogonal(a: &KdMatrix, b: &KdMatrix) -> bool {
    let zero = KdMatrix::zeros(a.quiver(), a.rows(), a.cols());
    a.mul(b) == zero && b.mul(a) == zero
}

/// A scalar multiple of the identity over `K^d`, as a polynomial matrix.
pub fn scalar_matrix(q: &Quiver, n: usize, s: &Scalar) -> PolyMatrix {
    PolyMatrix::identity(q, n).map(|x| x.scale(s))
}
