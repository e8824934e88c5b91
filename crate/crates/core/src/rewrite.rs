//! A word-level rewriting engine for the Leavitt relations, independent of
//! the monomial multiplication in [`crate::leavitt`]. Redexes are picked at
//! random, which makes it a confluence check for the reduced basis.

use crate::leavitt::{LElement, LMonomial, Letter};
use crate::path::Path;
use crate::quiver::{Quiver, Vertex};
use crate::scalar::Scalar;
use num_traits::{One, Zero};
use rand::Rng;
use std::collections::BTreeMap;

type Word = Vec<Letter>;

fn ends(q: &Quiver, l: Letter) -> (Vertex, Vertex) {
    match l {
        Letter::Vertex(v) => (v, v),
        Letter::Arrow(e) => (q.source(e), q.range(e)),
        Letter::Bar(e) => (q.range(e), q.source(e)),
    }
}

/// The rewrite of the pair at `i, i + 1`, if it is a redex.
fn rewrite_pair(q: &Quiver, x: Letter, y: Letter) -> Option<Vec<(Scalar, Word)>> {
    if ends(q, x).1 != ends(q, y).0 {
        return Some(Vec::new());
    }
    match (x, y) {
        (Letter::Vertex(_), _) => Some(vec![(Scalar::one(), vec![y])]),
        (_, Letter::Vertex(_)) => Some(vec![(Scalar::one(), vec![x])]),
        (Letter::Arrow(f), Letter::Bar(e)) => Some(if e == f {
            vec![(Scalar::one(), vec![Letter::Vertex(q.source(e))])]
        } else {
            Vec::new()
        }),
        (Letter::Bar(e), Letter::Arrow(f)) if e == f && q.distinguished_arrow(q.range(e)) == Some(e) => {
            let i = q.range(e);
            let mut out = vec![(Scalar::one(), vec![Letter::Vertex(i)])];
            for &g in q.incoming(i) {
                if g != e {
                    out.push((-Scalar::one(), vec![Letter::Bar(g), Letter::Arrow(g)]));
                }
            }
            Some(out)
        }
        _ => None,
    }
}

fn redexes(q: &Quiver, w: &Word) -> Vec<usize> {
    (0..w.len().saturating_sub(1))
        .filter(|&i| rewrite_pair(q, w[i], w[i + 1]).is_some())
        .collect()
}

fn add(terms: &mut BTreeMap<Word, Scalar>, w: Word, c: Scalar) {
    if c.is_zero() {
        return;
    }
    let slot = terms.entry(w.clone()).or_insert_with(Scalar::zero);
    *slot += c;
    if slot.is_zero() {
        terms.remove(&w);
    }
}

/// Rewrites until no redex is left, choosing the next redex at random.
pub fn rewrite_randomly<R: Rng>(q: &Quiver, raw: &[(Scalar, Word)], rng: &mut R) -> BTreeMap<Word, Scalar> {
    let mut terms: BTreeMap<Word, Scalar> = BTreeMap::new();
    for (c, w) in raw {
        if w.is_empty() {
            for v in q.vertices() {
                add(&mut terms, vec![Letter::Vertex(v)], c.clone());
            }
        } else {
            add(&mut terms, w.clone(), c.clone());
        }
    }
    loop {
        let pending: Vec<(Word, Vec<usize>)> = terms
            .keys()
            .map(|w| (w.clone(), redexes(q, w)))
            .filter(|(_, r)| !r.is_empty())
            .collect();
        if pending.is_empty() {
            return terms;
        }
        let (w, positions) = &pending[rng.gen_range(0..pending.len())];
        let i = positions[rng.gen_range(0..positions.len())];
        let c = terms.remove(w).expect("pending word present");
        for (d, middle) in rewrite_pair(q, w[i], w[i + 1]).expect("redex") {
            let mut nw: Word = w[..i].to_vec();
            nw.extend(middle);
            nw.extend_from_slice(&w[i + 2..]);
            add(&mut terms, nw, &c * &d);
        }
    }
}

/// Reads an irreducible word `ḡ_1⋯ḡ_k n_1⋯n_m` as the monomial `γ̄ν`.
pub fn word_to_monomial(q: &Quiver, w: &Word) -> Option<LMonomial> {
    if let [Letter::Vertex(v)] = w.as_slice() {
        return Some(LMonomial::vertex(*v));
    }
    let split = w.iter().position(|l| !matches!(l, Letter::Bar(_))).unwrap_or(w.len());
    let mut gamma_arrows = Vec::new();
    for l in w[..split].iter().rev() {
        match l {
            Letter::Bar(e) => gamma_arrows.push(*e),
            _ => return None,
        }
    }
    let mut nu_arrows = Vec::new();
    for l in &w[split..] {
        match l {
            Letter::Arrow(e) => nu_arrows.push(*e),
            _ => return None,
        }
    }
    let gamma = if gamma_arrows.is_empty() {
        Path::trivial(q.source(nu_arrows[0]))
    } else {
        Path::from_arrows(q, &gamma_arrows).ok()?
    };
    let nu = if nu_arrows.is_empty() {
        Path::trivial(gamma.source())
    } else {
        Path::from_arrows(q, &nu_arrows).ok()?
    };
    LMonomial::new(gamma, nu)
}

/// The rewritten form as an element; `None` if some irreducible word is not
/// of the expected shape.
pub fn rewrite_to_element<R: Rng>(q: &Quiver, raw: &[(Scalar, Word)], rng: &mut R) -> Option<LElement> {
    let mut out = LElement::zero(q);
    for (w, c) in rewrite_randomly(q, raw, rng) {
        let m = word_to_monomial(q, &w)?;
        if !m.is_reduced(q) {
            return None;
        }
        out = &out + &LElement::from_monomial(q, m, c);
    }
    Some(out)
}
