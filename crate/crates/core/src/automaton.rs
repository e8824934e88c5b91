//! Weighted automata over a quiver, used to decide equality of rational
//! series and to compute minimal representations.
//!
//! The coefficient of a path `w = e_1⋯e_k` from `u` to `v` is
//! `α_u T_{e_1}⋯T_{e_k} β_v`, where each vertex carries its own state space.

use crate::linalg::{QMatrix, RowSpace};
use crate::path::Path;
use crate::pathalg::{Poly, PolyMatrix};
use crate::quiver::{Arrow, Quiver, Vertex};
use crate::ratseries::RatRep;
use crate::scalar::Scalar;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, VecDeque};

#[derive(Clone, Debug)]
pub struct GradedRep {
    quiver: Quiver,
    dims: Vec<usize>,
    alpha: Vec<Vec<Scalar>>,
    trans: Vec<QMatrix>,
    beta: Vec<Vec<Scalar>>,
}

/// Splits every term of length at least two in `m` by adding a state per
/// shared prefix, keeping the top-left block of the inverse unchanged.
fn linearize(m: &PolyMatrix) -> Vec<BTreeMap<usize, Poly>> {
    let q = m.quiver();
    let mut rows: Vec<BTreeMap<usize, Poly>> = (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .filter(|&j| !m.get(i, j).is_zero())
                .map(|j| (j, m.get(i, j).clone()))
                .collect()
        })
        .collect();
    let mut queue: VecDeque<usize> = (0..rows.len()).collect();
    while let Some(i) = queue.pop_front() {
        // Long terms grouped by first arrow: e ↦ [(column, λ, rest)].
        let mut groups: BTreeMap<Arrow, Vec<(usize, Scalar, Path)>> = BTreeMap::new();
        for (&j, p) in rows[i].iter_mut() {
            let long: Vec<(Path, Scalar)> = p
                .terms()
                .filter(|(w, _)| w.len() >= 2)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect();
            for (w, c) in long {
                *p = &*p - &Poly::monomial(q, w.clone(), c.clone());
                let e = w.first_arrow().expect("long path");
                let rest = w.strip_first(q, e).expect("leading arrow");
                groups.entry(e).or_default().push((j, c, rest));
            }
        }
        rows[i].retain(|_, p| !p.is_zero());
        for (e, items) in groups {
            let z = rows.len();
            let mut new_row: BTreeMap<usize, Poly> = BTreeMap::new();
            new_row.insert(z, Poly::one(q));
            for (j, c, rest) in items {
                let entry = new_row.entry(j).or_insert_with(|| Poly::zero(q));
                *entry = &*entry - &Poly::monomial(q, rest, c);
            }
            new_row.retain(|_, p| !p.is_zero());
            rows.push(new_row);
            rows[i].insert(z, Poly::arrow(q, e));
            queue.push_back(z);
        }
    }
    rows
}

impl GradedRep {
    /// Builds an automaton whose path coefficients are those of `x`.
    ///
    /// `x = bA⁻¹c` is the top-right entry of the inverse of
    /// `[[1, −b, 0], [0, A, −c], [0, 0, 1]]`; after linearizing that matrix to
    /// `A₀ + ∑ N_e e` the inverse expands as `∑_w T_w A₀⁻¹ w` with
    /// `T_e = −(A₀ at s(e))⁻¹ N_e`.
    pub fn from_ratrep(x: &RatRep) -> GradedRep {
        let q = x.quiver().clone();
        let n = x.dim();
        let size = n + 2;
        let mut hat = PolyMatrix::zeros(&q, size, size);
        hat.set(0, 0, Poly::one(&q));
        hat.set(n + 1, n + 1, Poly::one(&q));
        for j in 0..n {
            hat.set(0, j + 1, -x.b().get(0, j));
            hat.set(j + 1, n + 1, -x.c().get(j, 0));
            for k in 0..n {
                hat.set(j + 1, k + 1, x.a().get(j, k).clone());
            }
        }
        let rows = linearize(&hat);
        let big = rows.len();
        let nv = q.num_vertices();
        let mut a0 = vec![QMatrix::zeros(big, big); nv];
        let mut lin = vec![QMatrix::zeros(big, big); q.num_arrows()];
        for (i, row) in rows.iter().enumerate() {
            for (&j, p) in row {
                for (w, c) in p.terms() {
                    match w.first_arrow() {
                        None => a0[w.source() as usize].set(i, j, c.clone()),
                        Some(e) => lin[e as usize].set(i, j, c.clone()),
                    }
                }
            }
        }
        let a0_inv: Vec<QMatrix> = a0
            .iter()
            .map(|m| m.inverse().expect("representation invariant: ε(A) invertible"))
            .collect();
        let trans = q
            .arrows()
            .map(|e| {
                a0_inv[q.source(e) as usize]
                    .mul(&lin[e as usize])
                    .scale(&-Scalar::one())
            })
            .collect();
        let mut alpha0 = vec![Scalar::zero(); big];
        alpha0[0] = Scalar::one();
        GradedRep {
            dims: vec![big; nv],
            alpha: vec![alpha0; nv],
            trans,
            beta: a0_inv.iter().map(|m| m.column(n + 1)).collect(),
            quiver: q,
        }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Coefficient of one path.
    pub fn coefficient(&self, w: &Path) -> Scalar {
        let mut x = self.alpha[w.source() as usize].clone();
        for &e in w.arrows() {
            x = QMatrix::vec_mul(&x, &self.trans[e as usize]);
        }
        dot(&x, &self.beta[w.range() as usize])
    }

    /// Restricts each vertex to the span of the reachable state vectors.
    pub fn forward_reduce(&self) -> GradedRep {
        let q = &self.quiver;
        let mut spaces: Vec<RowSpace> = self.dims.iter().map(|&d| RowSpace::new(d)).collect();
        let mut queue: VecDeque<(Vertex, Vec<Scalar>)> = VecDeque::new();
        for v in q.vertices() {
            if let Some(x) = spaces[v as usize].insert(&self.alpha[v as usize]) {
                queue.push_back((v, x));
            }
        }
        while let Some((v, x)) = queue.pop_front() {
            for &e in q.outgoing(v) {
                let y = QMatrix::vec_mul(&x, &self.trans[e as usize]);
                let r = q.range(e);
                if let Some(y) = spaces[r as usize].insert(&y) {
                    queue.push_back((r, y));
                }
            }
        }
        let bases: Vec<Vec<Vec<Scalar>>> = spaces
            .iter()
            .map(|s| s.vectors().cloned().collect())
            .collect();
        let trans = q
            .arrows()
            .map(|e| {
                let (s, r) = (q.source(e) as usize, q.range(e) as usize);
                let rows: Vec<Vec<Scalar>> = bases[s]
                    .iter()
                    .map(|f| {
                        spaces[r]
                            .coordinates(&QMatrix::vec_mul(f, &self.trans[e as usize]))
                            .expect("reachable space is closed under transitions")
                    })
                    .collect();
                matrix_from_rows(rows, bases[s].len(), bases[r].len())
            })
            .collect();
        GradedRep {
            quiver: q.clone(),
            dims: bases.iter().map(Vec::len).collect(),
            alpha: q
                .vertices()
                .map(|v| {
                    spaces[v as usize]
                        .coordinates(&self.alpha[v as usize])
                        .expect("initial vector is reachable")
                })
                .collect(),
            beta: q
                .vertices()
                .map(|v| {
                    bases[v as usize]
                        .iter()
                        .map(|f| dot(f, &self.beta[v as usize]))
                        .collect()
                })
                .collect(),
            trans,
        }
    }

    /// The mirror image: rows become columns and arrows run backwards.
    fn transposed(&self) -> GradedRep {
        let q = self.quiver.inverse_quiver();
        GradedRep {
            dims: self.dims.clone(),
            alpha: self.beta.clone(),
            beta: self.alpha.clone(),
            trans: self.trans.iter().map(QMatrix::transpose).collect(),
            quiver: q,
        }
    }

    fn untransposed(self, original: &Quiver) -> GradedRep {
        GradedRep {
            quiver: original.clone(),
            dims: self.dims,
            alpha: self.beta,
            beta: self.alpha,
            trans: self.trans.iter().map(QMatrix::transpose).collect(),
        }
    }

    /// Restricts to states that can influence some coefficient.
    pub fn backward_reduce(&self) -> GradedRep {
        self.transposed().forward_reduce().untransposed(&self.quiver)
    }

    /// A representation of minimal total dimension.
    pub fn minimize(&self) -> GradedRep {
        self.forward_reduce().backward_reduce()
    }

    /// True iff every path coefficient vanishes. Exact on a forward-reduced
    /// automaton; on others it is only a sufficient test.
    pub fn is_zero(&self) -> bool {
        self.beta.iter().flatten().all(Zero::is_zero)
    }

    /// Re-expresses a minimal automaton in the basis of state vectors of the
    /// smallest paths, so that equal series give identical automata.
    pub fn canonical(&self) -> GradedRep {
        let q = &self.quiver;
        let mut spaces: Vec<RowSpace> = self.dims.iter().map(|&d| RowSpace::new(d)).collect();
        let mut chosen: Vec<Vec<Vec<Scalar>>> = vec![Vec::new(); q.num_vertices()];
        let mut layer: Vec<(Path, Vec<Scalar>)> = Vec::new();
        for v in q.vertices() {
            let x = self.alpha[v as usize].clone();
            if spaces[v as usize].insert(&x).is_some() {
                chosen[v as usize].push(x.clone());
                layer.push((Path::trivial(v), x));
            }
        }
        while !layer.is_empty() {
            let mut candidates: Vec<(Path, Vec<Scalar>)> = Vec::new();
            for (w, x) in &layer {
                for &e in q.outgoing(w.range()) {
                    let next = w.concat(&Path::arrow(q, e)).expect("composable");
                    candidates.push((next, QMatrix::vec_mul(x, &self.trans[e as usize])));
                }
            }
            candidates.sort_by(|a, b| a.0.cmp(&b.0));
            layer.clear();
            for (w, x) in candidates {
                let v = w.range() as usize;
                if spaces[v].insert(&x).is_some() {
                    chosen[v].push(x.clone());
                    layer.push((w, x));
                }
            }
        }
        let basis: Vec<QMatrix> = chosen
            .iter()
            .zip(&self.dims)
            .map(|(rows, &d)| matrix_from_rows(rows.clone(), rows.len(), d))
            .collect();
        let inv: Vec<QMatrix> = basis
            .iter()
            .map(|b| b.inverse().expect("minimal automaton is reachable"))
            .collect();
        GradedRep {
            quiver: q.clone(),
            dims: self.dims.clone(),
            alpha: q
                .vertices()
                .map(|v| QMatrix::vec_mul(&self.alpha[v as usize], &inv[v as usize]))
                .collect(),
            trans: q
                .arrows()
                .map(|e| {
                    basis[q.source(e) as usize]
                        .mul(&self.trans[e as usize])
                        .mul(&inv[q.range(e) as usize])
                })
                .collect(),
            beta: q
                .vertices()
                .map(|v| basis[v as usize].mul_vec(&self.beta[v as usize]))
                .collect(),
        }
    }

    /// For a minimal automaton: the largest length of a path with nonzero
    /// coefficient, or `None` if the support is infinite.
    pub fn polynomial_degree(&self) -> Option<usize> {
        let q = &self.quiver;
        let mut layer: Vec<RowSpace> = self.dims.iter().map(|&d| RowSpace::new(d)).collect();
        for v in q.vertices() {
            layer[v as usize].insert(&self.alpha[v as usize]);
        }
        let total = self.total_dim();
        for k in 0..=total {
            if layer.iter().all(|s| s.rank() == 0) {
                return Some(k.saturating_sub(1));
            }
            let mut next: Vec<RowSpace> = self.dims.iter().map(|&d| RowSpace::new(d)).collect();
            for v in q.vertices() {
                for x in layer[v as usize].vectors() {
                    for &e in q.outgoing(v) {
                        let y = QMatrix::vec_mul(x, &self.trans[e as usize]);
                        next[q.range(e) as usize].insert(&y);
                    }
                }
            }
            layer = next;
        }
        None
    }

    /// The representation `b(1 − ∑ T_e e)⁻¹c` on the direct sum of the
    /// vertex state spaces.
    pub fn to_ratrep(&self) -> RatRep {
        let q = &self.quiver;
        let offsets: Vec<usize> = self
            .dims
            .iter()
            .scan(0, |acc, &d| {
                let o = *acc;
                *acc += d;
                Some(o)
            })
            .collect();
        let n = self.total_dim();
        let mut b = PolyMatrix::zeros(q, 1, n);
        let mut c = PolyMatrix::zeros(q, n, 1);
        let mut a = PolyMatrix::identity(q, n);
        for v in q.vertices() {
            let o = offsets[v as usize];
            for i in 0..self.dims[v as usize] {
                let p = Poly::vertex(q, v);
                b.set(0, o + i, p.scale(&self.alpha[v as usize][i]));
                c.set(o + i, 0, p.scale(&self.beta[v as usize][i]));
            }
        }
        for e in q.arrows() {
            let (os, or) = (offsets[q.source(e) as usize], offsets[q.range(e) as usize]);
            let t = &self.trans[e as usize];
            let arrow = Poly::arrow(q, e);
            for i in 0..t.rows() {
                for j in 0..t.cols() {
                    let x = t.get(i, j);
                    if !x.is_zero() {
                        let cur = a.get(os + i, or + j).clone();
                        a.set(os + i, or + j, &cur - &arrow.scale(x));
                    }
                }
            }
        }
        RatRep::new(b, a, c).expect("unitriangular augmentation")
    }

    pub fn alpha(&self, v: Vertex) -> &[Scalar] {
        &self.alpha[v as usize]
    }

    pub fn beta(&self, v: Vertex) -> &[Scalar] {
        &self.beta[v as usize]
    }

    pub fn transition(&self, e: Arrow) -> &QMatrix {
        &self.trans[e as usize]
    }
}

fn dot(x: &[Scalar], y: &[Scalar]) -> Scalar {
    x.iter()
        .zip(y)
        .filter(|(a, b)| !a.is_zero() && !b.is_zero())
        .map(|(a, b)| a * b)
        .sum()
}

fn matrix_from_rows(rows: Vec<Vec<Scalar>>, r: usize, c: usize) -> QMatrix {
    if r == 0 {
        return QMatrix::zeros(0, c);
    }
    let m = QMatrix::from_rows(rows);
    debug_assert_eq!((m.rows(), m.cols()), (r, c));
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{a2, rose};
    use crate::scalar::int;

    #[test]
    fn coefficients_match_truncation() {
        let r = rose(2);
        let (a, b) = (Poly::arrow(&r, 0), Poly::arrow(&r, 1));
        let x = RatRep::from_poly(&(&Poly::one(&r) - &(&(&a * &b) * &a)))
            .invert()
            .unwrap()
            .right_mul_poly(&(&b + &Poly::scalar(&r, int(2))));
        let g = GradedRep::from_ratrep(&x);
        let t = x.truncate(6);
        for (w, c) in t.as_poly().terms() {
            assert_eq!(&g.coefficient(w), c);
        }
        let m = g.minimize();
        assert!(m.total_dim() <= g.total_dim());
        for (w, c) in t.as_poly().terms() {
            assert_eq!(&m.coefficient(w), c);
        }
    }

    #[test]
    fn canonical_forms_agree() {
        let q = a2();
        let e = Poly::arrow(&q, 0);
        let x = RatRep::from_poly(&(&Poly::one(&q) + &e));
        let y = RatRep::from_poly(&Poly::one(&q)) + RatRep::from_poly(&e);
        let cx = GradedRep::from_ratrep(&x).minimize().canonical();
        let cy = GradedRep::from_ratrep(&y).minimize().canonical();
        assert_eq!(cx.dims(), cy.dims());
        assert_eq!(cx.to_ratrep().b(), cy.to_ratrep().b());
        assert_eq!(cx.to_ratrep().a(), cy.to_ratrep().a());
        assert_eq!(cx.to_ratrep().c(), cy.to_ratrep().c());
    }
}
