//! The quiver monoid: finitely supported vectors over the vertices modulo the
//! congruence generated by `v ∼ s(v) = ∑_{r(e)=v} s(e)`.

use crate::error::{Error, Result};
use crate::quiver::{complete_subquiver_containing, ColumnFinite, Quiver, Vertex};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

/// A finitely supported natural-number vector over vertex names.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MonoidElem(BTreeMap<String, u64>);

impl MonoidElem {
    pub fn zero() -> MonoidElem {
        MonoidElem::default()
    }

    pub fn vertex(name: &str) -> MonoidElem {
        MonoidElem::from_pairs([(name.to_string(), 1)])
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (String, u64)>) -> MonoidElem {
        let mut m = MonoidElem::zero();
        for (v, k) in pairs {
            m.add_to(&v, k);
        }
        m
    }

    fn add_to(&mut self, v: &str, k: u64) {
        if k > 0 {
            *self.0.entry(v.to_string()).or_insert(0) += k;
        }
    }

    pub fn get(&self, v: &str) -> u64 {
        self.0.get(v).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, u64)> {
        self.0.iter().map(|(v, &k)| (v.as_str(), k))
    }

    pub fn support(&self) -> Vec<String> {
        self.0.keys().cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of all multiplicities.
    pub fn total(&self) -> u64 {
        self.0.values().sum()
    }

    pub fn add(&self, other: &MonoidElem) -> MonoidElem {
        let mut out = self.clone();
        for (v, k) in other.entries() {
            out.add_to(v, k);
        }
        out
    }

    /// `self − other` when `other ≤ self` entrywise.
    pub fn checked_sub(&self, other: &MonoidElem) -> Option<MonoidElem> {
        let mut out = self.clone();
        for (v, k) in other.entries() {
            let have = out.get(v);
            if have < k {
                return None;
            }
            if have == k {
                out.0.remove(v);
            } else {
                out.0.insert(v.to_string(), have - k);
            }
        }
        Some(out)
    }

    pub fn scale(&self, k: u64) -> MonoidElem {
        MonoidElem::from_pairs(self.0.iter().map(|(v, &n)| (v.clone(), n * k)))
    }

    /// Reads sums such as `2*v + w` or `0`.
    pub fn parse(text: &str) -> Result<MonoidElem> {
        let text = text.trim();
        if text == "0" {
            return Ok(MonoidElem::zero());
        }
        MonoidElem::parse_terms(text)
    }

    /// Like [`MonoidElem::parse`], but names are checked against `q` and a
    /// vertex called `0` takes precedence over the zero element.
    pub fn parse_in<Q: ColumnFinite + ?Sized>(q: &Q, text: &str) -> Result<MonoidElem> {
        let text = text.trim();
        if text == "0" && !q.has_vertex("0") {
            return Ok(MonoidElem::zero());
        }
        let x = MonoidElem::parse_terms(text)?;
        for v in x.0.keys() {
            if !q.has_vertex(v) {
                return Err(Error::UnknownVertex(v.clone()));
            }
        }
        Ok(x)
    }

    fn parse_terms(text: &str) -> Result<MonoidElem> {
        let mut out = MonoidElem::zero();
        for term in text.split('+') {
            let term = term.trim();
            let (k, v) = match term.split_once('*') {
                Some((k, v)) => (
                    k.trim()
                        .parse::<u64>()
                        .map_err(|_| Error::Format(format!("bad multiplicity in `{term}`")))?,
                    v.trim(),
                ),
                None => (1, term),
            };
            if v.is_empty() || !v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(Error::Format(format!("bad monoid term `{term}`")));
            }
            out.add_to(v, k);
        }
        Ok(out)
    }

    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.0
            .iter()
            .map(|(v, &k)| if k == 1 { v.clone() } else { format!("{k}*{v}") })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for MonoidElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// `s(v) = ∑_{r(e)=v} s(e)`.
pub fn source_sum(q: &Quiver, v: Vertex) -> MonoidElem {
    MonoidElem::from_pairs(
        q.incoming(v)
            .iter()
            .map(|&e| (q.vertex_name(q.source(e)).to_string(), 1)),
    )
}

/// The generating pairs `(v, s(v))`, one per receiving vertex.
pub fn relation_pairs(q: &Quiver) -> Vec<(MonoidElem, MonoidElem)> {
    q.receiving_vertices()
        .into_iter()
        .map(|v| (MonoidElem::vertex(q.vertex_name(v)), source_sum(q, v)))
        .collect()
}

/// `x − v + s(v)`.
pub fn basic_transformation(q: &Quiver, x: &MonoidElem, v: Vertex) -> Result<MonoidElem> {
    let name = q.vertex_name(v);
    if x.get(name) == 0 {
        return Err(Error::NotPresent(name.to_string()));
    }
    if !q.is_receiving(v) {
        return Err(Error::NotReceiving(name.to_string()));
    }
    let rest = x.checked_sub(&MonoidElem::vertex(name)).expect("v occurs in x");
    Ok(rest.add(&source_sum(q, v)))
}

/// One application of a generating pair: `v → s(v)` when `forward`, else
/// `s(v) → v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub vertex: String,
    pub forward: bool,
}

/// A chain `states[0] → states[1] → … ` of single relation applications.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub states: Vec<MonoidElem>,
    pub steps: Vec<Step>,
}

impl Certificate {
    pub fn depth(&self) -> usize {
        self.steps.len()
    }

    /// Checks every step against the generating pairs of `q`.
    pub fn replay(&self, q: &Quiver) -> bool {
        if self.states.len() != self.steps.len() + 1 {
            return false;
        }
        let pairs: HashMap<String, MonoidElem> = relation_pairs(q)
            .into_iter()
            .map(|(v, s)| (v.support()[0].clone(), s))
            .collect();
        self.steps.iter().enumerate().all(|(i, step)| {
            let Some(s) = pairs.get(&step.vertex) else {
                return false;
            };
            let v = MonoidElem::vertex(&step.vertex);
            let (from, to) = if step.forward { (&v, s) } else { (s, &v) };
            match self.states[i].checked_sub(from) {
                Some(rest) => rest.add(to) == self.states[i + 1],
                None => false,
            }
        })
    }

    fn reversed(&self) -> Certificate {
        let mut states = self.states.clone();
        states.reverse();
        let steps = self
            .steps
            .iter()
            .rev()
            .map(|s| Step {
                vertex: s.vertex.clone(),
                forward: !s.forward,
            })
            .collect();
        Certificate { states, steps }
    }
}

/// Outcome of a bounded word-problem search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonoidVerdict {
    Equivalent(Certificate),
    /// Inconclusive: no chain of at most this many steps was found.
    NotFoundWithin(usize),
}

impl MonoidVerdict {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, MonoidVerdict::Equivalent(_))
    }
}

type State = Vec<u64>;

struct Rules {
    names: Vec<String>,
    images: Vec<(usize, State)>,
}

impl Rules {
    fn new(q: &Quiver) -> Rules {
        let n = q.num_vertices();
        let images = q
            .receiving_vertices()
            .into_iter()
            .map(|v| {
                let mut s = vec![0; n];
                for &e in q.incoming(v) {
                    s[q.source(e) as usize] += 1;
                }
                (v as usize, s)
            })
            .collect();
        Rules {
            names: q.vertices().map(|v| q.vertex_name(v).to_string()).collect(),
            images,
        }
    }

    fn encode(&self, q: &Quiver, x: &MonoidElem) -> Result<State> {
        let mut s = vec![0; self.names.len()];
        for (v, k) in x.entries() {
            s[q.vertex(v)? as usize] += k;
        }
        Ok(s)
    }

    fn decode(&self, s: &State) -> MonoidElem {
        MonoidElem::from_pairs(s.iter().enumerate().map(|(i, &k)| (self.names[i].clone(), k)))
    }

    fn neighbours(&self, s: &State) -> Vec<(State, Step)> {
        let mut out = Vec::new();
        for (v, image) in &self.images {
            if s[*v] > 0 {
                let mut t = s.clone();
                t[*v] -= 1;
                for (i, k) in image.iter().enumerate() {
                    t[i] += k;
                }
                out.push((
                    t,
                    Step {
                        vertex: self.names[*v].clone(),
                        forward: true,
                    },
                ));
            }
            if image.iter().zip(s).all(|(k, have)| k <= have) {
                let mut t: State = s.iter().zip(image).map(|(have, k)| have - k).collect();
                t[*v] += 1;
                out.push((
                    t,
                    Step {
                        vertex: self.names[*v].clone(),
                        forward: false,
                    },
                ));
            }
        }
        out
    }
}

/// BFS tree from one end: each state maps to its parent and the step taken.
struct Side {
    seen: HashMap<State, Option<(State, Step)>>,
    frontier: Vec<State>,
    depth: usize,
}

impl Side {
    fn new(start: State) -> Side {
        let mut seen = HashMap::new();
        seen.insert(start.clone(), None);
        Side {
            seen,
            frontier: vec![start],
            depth: 0,
        }
    }

    /// The chain from the root to `s`.
    fn chain(&self, rules: &Rules, s: &State) -> Certificate {
        let mut states = vec![rules.decode(s)];
        let mut steps = Vec::new();
        let mut cur = s.clone();
        while let Some(Some((parent, step))) = self.seen.get(&cur) {
            states.push(rules.decode(parent));
            steps.push(step.clone());
            cur = parent.clone();
        }
        states.reverse();
        steps.reverse();
        Certificate { states, steps }
    }

    /// Expands one level; returns a state also seen by `other`, if any.
    fn expand(&mut self, rules: &Rules, other: &Side) -> Option<State> {
        let mut next = Vec::new();
        let mut meet = None;
        for s in std::mem::take(&mut self.frontier) {
            for (t, step) in rules.neighbours(&s) {
                if self.seen.contains_key(&t) {
                    continue;
                }
                self.seen.insert(t.clone(), Some((s.clone(), step)));
                if meet.is_none() && other.seen.contains_key(&t) {
                    meet = Some(t.clone());
                }
                next.push(t);
            }
        }
        self.frontier = next;
        self.depth += 1;
        meet
    }
}

/// Searches for a chain of at most `max_depth` relation applications from
/// `x` to `y`, growing breadth-first from both ends.
pub fn equivalent(q: &Quiver, x: &MonoidElem, y: &MonoidElem, max_depth: usize) -> Result<MonoidVerdict> {
    let rules = Rules::new(q);
    let sx = rules.encode(q, x)?;
    let sy = rules.encode(q, y)?;
    if sx == sy {
        return Ok(MonoidVerdict::Equivalent(Certificate {
            states: vec![rules.decode(&sx)],
            steps: Vec::new(),
        }));
    }
    let mut left = Side::new(sx);
    let mut right = Side::new(sy);
    while left.depth + right.depth < max_depth {
        if left.frontier.is_empty() || right.frontier.is_empty() {
            break;
        }
        let grow_left = left.frontier.len() <= right.frontier.len();
        let meet = if grow_left {
            left.expand(&rules, &right)
        } else {
            right.expand(&rules, &left)
        };
        if let Some(m) = meet {
            let mut cert = left.chain(&rules, &m);
            let back = right.chain(&rules, &m).reversed();
            cert.states.extend(back.states.into_iter().skip(1));
            cert.steps.extend(back.steps);
            return Ok(MonoidVerdict::Equivalent(cert));
        }
    }
    Ok(MonoidVerdict::NotFoundWithin(max_depth))
}

/// Elements reachable from `x` in at most `depth` steps, nearest first.
fn ball(q: &Quiver, rules: &Rules, x: &MonoidElem, depth: usize) -> Result<Vec<State>> {
    let start = rules.encode(q, x)?;
    let mut seen = BTreeSet::new();
    seen.insert(start.clone());
    let mut order = vec![start.clone()];
    let mut frontier = vec![start];
    for _ in 0..depth {
        let mut next = Vec::new();
        for s in &frontier {
            for (t, _) in rules.neighbours(s) {
                if seen.insert(t.clone()) {
                    order.push(t.clone());
                    next.push(t);
                }
            }
        }
        frontier = next;
    }
    Ok(order)
}

/// All `z ≤ s` entrywise.
fn sub_vectors(s: &State) -> Vec<State> {
    let mut out = vec![Vec::new()];
    for &k in s {
        out = out
            .into_iter()
            .flat_map(|prefix: State| {
                (0..=k).map(move |j| {
                    let mut p = prefix.clone();
                    p.push(j);
                    p
                })
            })
            .collect();
    }
    out
}

/// `z_{ij}` with `x_i ≡ z_{i1} + z_{i2}` and `y_j ≡ z_{1j} + z_{2j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refinement {
    pub z11: MonoidElem,
    pub z12: MonoidElem,
    pub z21: MonoidElem,
    pub z22: MonoidElem,
}

/// Looks for a refinement of `x1 + x2 ≡ y1 + y2` among decompositions of
/// representatives within `depth` steps of `x1` and `x2`.
pub fn refinement_search(
    q: &Quiver,
    x1: &MonoidElem,
    x2: &MonoidElem,
    y1: &MonoidElem,
    y2: &MonoidElem,
    depth: usize,
) -> Result<Option<Refinement>> {
    if !equivalent(q, &x1.add(x2), &y1.add(y2), depth)?.is_equivalent() {
        return Err(Error::NotEquivalent);
    }
    let rules = Rules::new(q);
    let b1 = ball(q, &rules, x1, depth)?;
    let b2 = ball(q, &rules, x2, depth)?;
    let mut tried = BTreeSet::new();
    for a1 in &b1 {
        for a2 in &b2 {
            for z11 in sub_vectors(a1) {
                let z12: State = a1.iter().zip(&z11).map(|(a, z)| a - z).collect();
                for z21 in sub_vectors(a2) {
                    let z22: State = a2.iter().zip(&z21).map(|(a, z)| a - z).collect();
                    let col1: State = z11.iter().zip(&z21).map(|(a, b)| a + b).collect();
                    let col2: State = z12.iter().zip(&z22).map(|(a, b)| a + b).collect();
                    if !tried.insert((col1.clone(), col2.clone())) {
                        continue;
                    }
                    let ok = equivalent(q, &rules.decode(&col1), y1, depth)?.is_equivalent()
                        && equivalent(q, &rules.decode(&col2), y2, depth)?.is_equivalent();
                    if ok {
                        return Ok(Some(Refinement {
                            z11: rules.decode(&z11),
                            z12: rules.decode(&z12),
                            z21: rules.decode(&z21),
                            z22: rules.decode(&z22),
                        }));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Decides `x ≡ y` in a column-finite quiver inside growing finite complete
/// subquivers around the supports, one layer of incoming arrows per round.
pub fn equivalent_in_limit<Q: ColumnFinite + ?Sized>(
    e: &Q,
    x: &MonoidElem,
    y: &MonoidElem,
    max_depth: usize,
) -> Result<MonoidVerdict> {
    let mut seed: Vec<String> = x.support();
    for v in y.support() {
        if !seed.contains(&v) {
            seed.push(v);
        }
    }
    if x == y {
        return Ok(MonoidVerdict::Equivalent(Certificate {
            states: vec![x.clone()],
            steps: Vec::new(),
        }));
    }
    for _ in 0..=max_depth {
        let f = complete_subquiver_containing(e, &seed)?;
        if let MonoidVerdict::Equivalent(c) = equivalent(&f, x, y, max_depth)? {
            return Ok(MonoidVerdict::Equivalent(c));
        }
        let grown: Vec<String> = f.vertices().map(|v| f.vertex_name(v).to_string()).collect();
        if grown.len() == seed.len() {
            break;
        }
        seed = grown;
    }
    Ok(MonoidVerdict::NotFoundWithin(max_depth))
}
