//! Seeded generators for quivers, polynomials, rational series and
//! elements of the derived algebras. Used by tests and the relation suites.

use crate::leavitt::Letter;
use crate::path::Path;
use crate::pathalg::Poly;
use crate::quiver::{Quiver, Vertex};
use crate::ratseries::RatRep;
use crate::regalg::SElement;
use crate::scalar::{self, Scalar};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// An independent stream for sample `k` of a run seeded with `seed`.
pub fn rng_for(seed: u64, k: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(k);
    rng
}

/// A small nonzero rational, mostly integers.
pub fn nonzero_scalar<R: Rng>(rng: &mut R) -> Scalar {
    let n = loop {
        let n: i64 = rng.gen_range(-3..=3);
        if n != 0 {
            break n;
        }
    };
    if rng.gen_bool(0.2) {
        scalar::frac(n, rng.gen_range(2..=3))
    } else {
        scalar::int(n)
    }
}

/// A quiver on `1..=max_vertices` vertices with up to `max_arrows` arrows.
pub fn random_quiver<R: Rng>(rng: &mut R, max_vertices: usize, max_arrows: usize) -> Quiver {
    let n = rng.gen_range(1..=max_vertices.max(1));
    let m = rng.gen_range(0..=max_arrows);
    let vertices: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let arrows: Vec<(String, String, String)> = (0..m)
        .map(|k| {
            let s = rng.gen_range(0..n);
            let r = rng.gen_range(0..n);
            (format!("a{k}"), vertices[s].clone(), vertices[r].clone())
        })
        .collect();
    Quiver::new(vertices, arrows).expect("generated names are valid")
}

/// A path of length at most `max_len` starting at `start` (random if `None`).
pub fn random_path<R: Rng>(q: &Quiver, rng: &mut R, max_len: usize, start: Option<Vertex>) -> Path {
    let v = start.unwrap_or_else(|| rng.gen_range(0..q.num_vertices() as Vertex));
    let len = rng.gen_range(0..=max_len);
    let mut p = Path::trivial(v);
    for _ in 0..len {
        let Some(&e) = q.outgoing(p.range()).choose(rng) else {
            break;
        };
        p = p.concat(&Path::arrow(q, e)).expect("e leaves r(p)");
    }
    p
}

/// A polynomial with at most `max_terms` terms of length at most `max_len`.
pub fn random_poly<R: Rng>(q: &Quiver, rng: &mut R, max_terms: usize, max_len: usize) -> Poly {
    let k = rng.gen_range(0..=max_terms);
    Poly::from_terms(q, (0..k).map(|_| (random_path(q, rng, max_len, None), nonzero_scalar(rng))))
}

/// Like [`random_poly`] with every path starting at `v`.
pub fn random_poly_at<R: Rng>(q: &Quiver, rng: &mut R, v: Vertex, max_terms: usize, max_len: usize) -> Poly {
    let k = rng.gen_range(0..=max_terms);
    Poly::from_terms(q, (0..k).map(|_| (random_path(q, rng, max_len, Some(v)), nonzero_scalar(rng))))
}

fn drop_constant(x: &Poly) -> Poly {
    Poly::from_terms(x.quiver(), x.terms().filter(|(p, _)| !p.is_trivial()).map(|(p, c)| (p.clone(), c.clone())))
}

/// A polynomial whose augmentation is invertible at every vertex.
pub fn random_invertible_poly<R: Rng>(q: &Quiver, rng: &mut R, max_terms: usize, max_len: usize) -> Poly {
    let mut x = Poly::zero(q);
    for v in q.vertices() {
        x = &x + &Poly::monomial(q, Path::trivial(v), nonzero_scalar(rng));
    }
    let tail = drop_constant(&random_poly(q, rng, max_terms, max_len));
    &x + &tail
}

/// A rational series built from polynomials by `depth` rounds of sums,
/// products and inverses.
pub fn random_ratrep<R: Rng>(q: &Quiver, rng: &mut R, depth: usize) -> RatRep {
    if depth == 0 {
        return RatRep::from_poly(&random_poly(q, rng, 3, 2));
    }
    match rng.gen_range(0..3) {
        0 => &random_ratrep(q, rng, depth - 1) + &random_ratrep(q, rng, depth - 1),
        1 => &random_ratrep(q, rng, depth - 1) * &random_ratrep(q, rng, depth - 1),
        _ => {
            let x = RatRep::from_poly(&random_invertible_poly(q, rng, 2, 2));
            let y = if depth > 1 {
                let inner = random_ratrep(q, rng, depth - 2);
                let shift = RatRep::from_poly(&drop_constant(&random_poly(q, rng, 1, 1)));
                &x + &(&inner * &shift)
            } else {
                x
            };
            y.invert().expect("augmentation is invertible by construction")
        }
    }
}

/// Shape of random elements of the skew extension.
#[derive(Clone, Debug)]
pub struct SParams {
    pub max_terms: usize,
    pub max_bar_len: usize,
    pub rat_depth: usize,
}

impl Default for SParams {
    fn default() -> Self {
        SParams {
            max_terms: 3,
            max_bar_len: 2,
            rat_depth: 1,
        }
    }
}

/// A random `∑ γ̄ a_γ`.
pub fn random_selement<R: Rng>(q: &Quiver, rng: &mut R, params: &SParams) -> SElement {
    let mut out = SElement::zero(q);
    let k = rng.gen_range(1..=params.max_terms.max(1));
    for _ in 0..k {
        let gamma = random_path(q, rng, params.max_bar_len, None);
        let a = random_ratrep(q, rng, params.rat_depth).left_vertex(gamma.source());
        out = &out + &SElement::monomial(gamma, &a);
    }
    out
}

/// A random linear combination of unreduced words in vertices, arrows and
/// barred arrows. Letters need not be composable.
pub fn random_word_sum<R: Rng>(q: &Quiver, rng: &mut R, max_terms: usize, max_len: usize) -> Vec<(Scalar, Vec<Letter>)> {
    let k = rng.gen_range(1..=max_terms.max(1));
    (0..k)
        .map(|_| {
            let len = rng.gen_range(0..=max_len);
            let mut word = Vec::with_capacity(len);
            let mut v = rng.gen_range(0..q.num_vertices() as Vertex);
            for _ in 0..len {
                let mut options: Vec<Letter> = vec![Letter::Vertex(v)];
                options.extend(q.outgoing(v).iter().map(|&e| Letter::Arrow(e)));
                options.extend(q.incoming(v).iter().map(|&e| Letter::Bar(e)));
                if rng.gen_bool(0.1) {
                    options.push(Letter::Vertex(rng.gen_range(0..q.num_vertices() as Vertex)));
                }
                let l = *options.choose(rng).expect("vertex letter always present");
                v = match l {
                    Letter::Vertex(_) => v,
                    Letter::Arrow(e) => q.range(e),
                    Letter::Bar(e) => q.source(e),
                };
                word.push(l);
            }
            (nonzero_scalar(rng), word)
        })
        .collect()
}
