//! Paths in a quiver, read left to right.

use crate::error::{Error, Result};
use crate::quiver::{Arrow, Quiver, Vertex};
use smallvec::SmallVec;
use std::cmp::Ordering;

pub type ArrowSeq = SmallVec<[Arrow; 6]>;

/// A path `e_1 e_2 ... e_n` with `r(e_t) = s(e_{t+1})`, or the trivial path
/// at a vertex when `arrows` is empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    src: Vertex,
    dst: Vertex,
    arrows: ArrowSeq,
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.arrows
            .len()
            .cmp(&other.arrows.len())
            .then_with(|| self.arrows.cmp(&other.arrows))
            .then_with(|| self.src.cmp(&other.src))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Path {
    pub fn trivial(v: Vertex) -> Path {
        Path {
            src: v,
            dst: v,
            arrows: SmallVec::new(),
        }
    }

    pub fn arrow(q: &Quiver, e: Arrow) -> Path {
        let mut arrows = SmallVec::new();
        arrows.push(e);
        Path {
            src: q.source(e),
            dst: q.range(e),
            arrows,
        }
    }

    /// Checks composability of `arrows`; an empty list is rejected since the
    /// trivial path needs a vertex.
    pub fn from_arrows(q: &Quiver, arrows: &[Arrow]) -> Result<Path> {
        let (&first, rest) = arrows
            .split_first()
            .ok_or_else(|| Error::Format("empty arrow sequence".into()))?;
        let mut p = Path::arrow(q, first);
        for &e in rest {
            p = p
                .concat(&Path::arrow(q, e))
                .ok_or_else(|| Error::Format(format!("arrows do not compose at {}", q.arrow_name(e))))?;
        }
        Ok(p)
    }

    pub fn source(&self) -> Vertex {
        self.src
    }

    pub fn range(&self) -> Vertex {
        self.dst
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn first_arrow(&self) -> Option<Arrow> {
        self.arrows.first().copied()
    }

    pub fn last_arrow(&self) -> Option<Arrow> {
        self.arrows.last().copied()
    }

    /// `self` followed by `other`, or `None` when `r(self) != s(other)`.
    pub fn concat(&self, other: &Path) -> Option<Path> {
        if self.dst != other.src {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path {
            src: self.src,
            dst: other.dst,
            arrows,
        })
    }

    /// `e` followed by `self`; `None` if not composable.
    pub fn prepend(&self, q: &Quiver, e: Arrow) -> Option<Path> {
        Path::arrow(q, e).concat(self)
    }

    /// `α` when `self = α e`.
    pub fn strip_last(&self, q: &Quiver, e: Arrow) -> Option<Path> {
        if self.last_arrow() != Some(e) {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.pop();
        Some(Path {
            src: self.src,
            dst: q.source(e),
            arrows,
        })
    }

    /// `α` when `self = e α`.
    pub fn strip_first(&self, q: &Quiver, e: Arrow) -> Option<Path> {
        if self.first_arrow() != Some(e) {
            return None;
        }
        Some(Path {
            src: q.range(e),
            dst: self.dst,
            arrows: self.arrows[1..].iter().copied().collect(),
        })
    }

    /// The first `k` arrows.
    pub fn prefix(&self, q: &Quiver, k: usize) -> Path {
        if k == 0 {
            return Path::trivial(self.src);
        }
        Path {
            src: self.src,
            dst: q.range(self.arrows[k - 1]),
            arrows: self.arrows[..k].iter().copied().collect(),
        }
    }

    /// The arrows from position `k` on.
    pub fn suffix_from(&self, q: &Quiver, k: usize) -> Path {
        if k == self.len() {
            return Path::trivial(self.dst);
        }
        Path {
            src: q.source(self.arrows[k]),
            dst: self.dst,
            arrows: self.arrows[k..].iter().copied().collect(),
        }
    }

    /// `Some(α)` when `self = α other`.
    pub fn strip_suffix(&self, other: &Path) -> Option<Path> {
        if other.len() > self.len() || other.dst != self.dst {
            return None;
        }
        let k = self.len() - other.len();
        if self.arrows[k..] != other.arrows[..] {
            return None;
        }
        Some(Path {
            src: self.src,
            dst: other.src,
            arrows: self.arrows[..k].iter().copied().collect(),
        })
    }

    /// Word form such as `a^2*b`, or `p_v` for a trivial path.
    pub fn render(&self, q: &Quiver) -> String {
        if self.is_trivial() {
            return format!("p_{}", q.vertex_name(self.src));
        }
        render_runs(self.arrows.iter().map(|&e| q.arrow_name(e).to_string()))
    }

    /// Word form of the reversed barred path, e.g. `b~*a~` for the path `ab`.
    pub fn render_bar(&self, q: &Quiver) -> String {
        if self.is_trivial() {
            return format!("p_{}", q.vertex_name(self.src));
        }
        render_runs(self.arrows.iter().rev().map(|&e| format!("{}~", q.arrow_name(e))))
    }
}

/// All paths of length at most `max_len`, in canonical order.
pub fn all_paths(q: &Quiver, max_len: usize) -> Vec<Path> {
    let mut out: Vec<Path> = q.vertices().map(Path::trivial).collect();
    let mut layer = out.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for p in &layer {
            for &e in q.outgoing(p.range()) {
                next.push(p.concat(&Path::arrow(q, e)).expect("composable"));
            }
        }
        next.sort();
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn render_runs(letters: impl Iterator<Item = String>) -> String {
    let mut runs: Vec<(String, usize)> = Vec::new();
    for l in letters {
        match runs.last_mut() {
            Some((last, k)) if *last == l => *k += 1,
            _ => runs.push((l, 1)),
        }
    }
    runs.into_iter()
        .map(|(l, k)| if k == 1 { l } else { format!("{l}^{k}") })
        .collect::<Vec<_>>()
        .join("*")
}
