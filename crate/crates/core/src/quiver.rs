//! Finite quivers, their inverses, graph homomorphisms and complete subquivers.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

/// Index of a vertex in declaration order.
pub type Vertex = u32;
/// Index of an arrow in declaration order.
pub type Arrow = u32;

#[derive(Clone, Debug, PartialEq, Eq)]
struct ArrowData {
    name: String,
    source: Vertex,
    range: Vertex,
}

#[derive(Debug, PartialEq, Eq)]
struct QuiverData {
    vertices: Vec<String>,
    arrows: Vec<ArrowData>,
    vertex_index: HashMap<String, Vertex>,
    arrow_index: HashMap<String, Arrow>,
    incoming: Vec<Vec<Arrow>>,
    outgoing: Vec<Vec<Arrow>>,
}

/// A finite quiver. Cloning is cheap; the data is shared.
#[derive(Clone)]
pub struct Quiver(Arc<QuiverData>);

impl PartialEq for Quiver {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Quiver {}

impl fmt::Debug for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Quiver {{ vertices: {:?}, arrows: [", self.0.vertices)?;
        for (i, a) in self.0.arrows.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(
                f,
                "{}: {} -> {}",
                a.name, self.0.vertices[a.source as usize], self.0.vertices[a.range as usize]
            )?;
        }
        write!(f, "] }}")
    }
}

/// On-disk form of a quiver.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct QuiverSpec {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ArrowSpec {
    pub name: String,
    pub source: String,
    pub range: String,
}

fn is_word(name: &str) -> bool {
    !name.is_empty() && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn check_vertex_name(name: &str) -> Result<()> {
    if is_word(name) {
        Ok(())
    } else {
        Err(Error::InvalidName(name.to_string()))
    }
}

fn check_arrow_name(name: &str) -> Result<()> {
    let starts_alpha = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic());
    if is_word(name) && starts_alpha && !name.starts_with("p_") && name != "inv" && name != "bar" {
        Ok(())
    } else {
        Err(Error::InvalidName(name.to_string()))
    }
}

impl Quiver {
    /// Builds a quiver from vertex names and `(name, source, range)` triples.
    pub fn new<V, A>(vertices: V, arrows: A) -> Result<Quiver>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        A: IntoIterator<Item = (String, String, String)>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut vertex_index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            check_vertex_name(v)?;
            if vertex_index.insert(v.clone(), i as Vertex).is_some() {
                return Err(Error::DuplicateName(v.clone()));
            }
        }
        let mut arrow_data = Vec::new();
        let mut arrow_index = HashMap::new();
        for (name, s, r) in arrows {
            check_arrow_name(&name)?;
            if vertex_index.contains_key(&name) || arrow_index.contains_key(&name) {
                return Err(Error::DuplicateName(name));
            }
            let lookup = |v: &String| {
                vertex_index.get(v).copied().ok_or_else(|| Error::UndeclaredVertex {
                    arrow: name.clone(),
                    vertex: v.clone(),
                })
            };
            let source = lookup(&s)?;
            let range = lookup(&r)?;
            arrow_index.insert(name.clone(), arrow_data.len() as Arrow);
            arrow_data.push(ArrowData { name, source, range });
        }
        let mut incoming = vec![Vec::new(); vertices.len()];
        let mut outgoing = vec![Vec::new(); vertices.len()];
        for (i, a) in arrow_data.iter().enumerate() {
            incoming[a.range as usize].push(i as Arrow);
            outgoing[a.source as usize].push(i as Arrow);
        }
        Ok(Quiver(Arc::new(QuiverData {
            vertices,
            arrows: arrow_data,
            vertex_index,
            arrow_index,
            incoming,
            outgoing,
        })))
    }

    /// Convenience constructor from string slices.
    pub fn from_lists(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Result<Quiver> {
        Quiver::new(
            vertices.iter().copied(),
            arrows
                .iter()
                .map(|(n, s, r)| (n.to_string(), s.to_string(), r.to_string())),
        )
    }

    pub fn from_spec(spec: &QuiverSpec) -> Result<Quiver> {
        Quiver::new(
            spec.vertices.iter().cloned(),
            spec.arrows
                .iter()
                .map(|a| (a.name.clone(), a.source.clone(), a.range.clone())),
        )
    }

    pub fn from_json(text: &str) -> Result<Quiver> {
        let spec: QuiverSpec =
            serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        Quiver::from_spec(&spec)
    }

    pub fn to_spec(&self) -> QuiverSpec {
        QuiverSpec {
            vertices: self.0.vertices.clone(),
            arrows: self
                .0
                .arrows
                .iter()
                .map(|a| ArrowSpec {
                    name: a.name.clone(),
                    source: self.vertex_name(a.source).to_string(),
                    range: self.vertex_name(a.range).to_string(),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_spec()).expect("quiver spec serializes")
    }

    pub fn num_vertices(&self) -> usize {
        self.0.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.0.arrows.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        0..self.num_vertices() as Vertex
    }

    pub fn arrows(&self) -> impl Iterator<Item = Arrow> + '_ {
        0..self.num_arrows() as Arrow
    }

    pub fn vertex_name(&self, v: Vertex) -> &str {
        &self.0.vertices[v as usize]
    }

    pub fn arrow_name(&self, e: Arrow) -> &str {
        &self.0.arrows[e as usize].name
    }

    pub fn vertex(&self, name: &str) -> Result<Vertex> {
        self.0
            .vertex_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn arrow(&self, name: &str) -> Result<Arrow> {
        self.0
            .arrow_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownArrow(name.to_string()))
    }

    pub fn source(&self, e: Arrow) -> Vertex {
        self.0.arrows[e as usize].source
    }

    pub fn range(&self, e: Arrow) -> Vertex {
        self.0.arrows[e as usize].range
    }

    /// Arrows `e` with `r(e) = v`, in declaration order.
    pub fn incoming(&self, v: Vertex) -> &[Arrow] {
        &self.0.incoming[v as usize]
    }

    /// Arrows `e` with `s(e) = v`, in declaration order.
    pub fn outgoing(&self, v: Vertex) -> &[Arrow] {
        &self.0.outgoing[v as usize]
    }

    pub fn is_receiving(&self, v: Vertex) -> bool {
        !self.incoming(v).is_empty()
    }

    /// Vertices with at least one incoming arrow.
    pub fn receiving_vertices(&self) -> Vec<Vertex> {
        self.vertices().filter(|&v| self.is_receiving(v)).collect()
    }

    /// The first declared arrow into `v`, used to orient the CK2 rewrite.
    pub fn distinguished_arrow(&self, v: Vertex) -> Option<Arrow> {
        self.incoming(v).first().copied()
    }

    /// Same vertices, each arrow reversed and renamed `<arrow>~`.
    pub fn inverse_quiver(&self) -> Quiver {
        let mut arrows = Vec::with_capacity(self.num_arrows());
        for a in &self.0.arrows {
            arrows.push(ArrowData {
                name: format!("{}~", a.name),
                source: a.range,
                range: a.source,
            });
        }
        let mut incoming = vec![Vec::new(); self.num_vertices()];
        let mut outgoing = vec![Vec::new(); self.num_vertices()];
        let mut arrow_index = HashMap::new();
        for (i, a) in arrows.iter().enumerate() {
            incoming[a.range as usize].push(i as Arrow);
            outgoing[a.source as usize].push(i as Arrow);
            arrow_index.insert(a.name.clone(), i as Arrow);
        }
        Quiver(Arc::new(QuiverData {
            vertices: self.0.vertices.clone(),
            arrows,
            vertex_index: self.0.vertex_index.clone(),
            arrow_index,
            incoming,
            outgoing,
        }))
    }

    /// True if both quivers have the same vertex list and the same arrows in
    /// the same order with the same endpoints, ignoring arrow names.
    pub fn same_incidence(&self, other: &Quiver) -> bool {
        self.0.vertices == other.0.vertices
            && self.num_arrows() == other.num_arrows()
            && self
                .0
                .arrows
                .iter()
                .zip(&other.0.arrows)
                .all(|(a, b)| a.source == b.source && a.range == b.range)
    }

    /// The subquiver on the named vertices and arrows, in this quiver's order.
    pub fn subquiver(&self, vertices: &BTreeSet<Vertex>, arrows: &BTreeSet<Arrow>) -> Result<Quiver> {
        Quiver::new(
            vertices.iter().map(|&v| self.vertex_name(v).to_string()),
            arrows.iter().map(|&e| {
                (
                    self.arrow_name(e).to_string(),
                    self.vertex_name(self.source(e)).to_string(),
                    self.vertex_name(self.range(e)).to_string(),
                )
            }),
        )
    }
}

/// The loop quiver: one vertex `v`, one arrow `e: v -> v`.
pub fn loop_quiver() -> Quiver {
    Quiver::from_lists(&["v"], &[("e", "v", "v")]).expect("valid fixture")
}

/// The rose with `n` petals on vertex `v`, arrows named `a`, `b`, `c`, ...
pub fn rose(n: usize) -> Quiver {
    assert!(n <= 26, "rose fixture supports at most 26 petals");
    let names: Vec<String> = (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
    Quiver::new(
        ["v"],
        names.into_iter().map(|a| (a, "v".to_string(), "v".to_string())),
    )
    .expect("valid fixture")
}

/// The quiver `1 -> 2` with arrow `e`.
pub fn a2() -> Quiver {
    Quiver::from_lists(&["1", "2"], &[("e", "1", "2")]).expect("valid fixture")
}

/// A homomorphism of quivers, stored as index maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphHom {
    pub vertex_map: Vec<Vertex>,
    pub arrow_map: Vec<Arrow>,
}

impl GraphHom {
    /// Builds a homomorphism from name maps; every vertex and arrow of `e`
    /// must be mapped, and endpoints must be respected.
    pub fn from_names(
        e: &Quiver,
        f: &Quiver,
        vertex_map: &[(&str, &str)],
        arrow_map: &[(&str, &str)],
    ) -> Result<GraphHom> {
        let mut vm = vec![None; e.num_vertices()];
        for (a, b) in vertex_map {
            vm[e.vertex(a)? as usize] = Some(f.vertex(b)?);
        }
        let mut am = vec![None; e.num_arrows()];
        for (a, b) in arrow_map {
            am[e.arrow(a)? as usize] = Some(f.arrow(b)?);
        }
        let vertex_map = vm
            .into_iter()
            .enumerate()
            .map(|(i, x)| {
                x.ok_or_else(|| {
                    Error::MalformedHom(format!("vertex {} is not mapped", e.vertex_name(i as Vertex)))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let arrow_map = am
            .into_iter()
            .enumerate()
            .map(|(i, x)| {
                x.ok_or_else(|| {
                    Error::MalformedHom(format!("arrow {} is not mapped", e.arrow_name(i as Arrow)))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let hom = GraphHom { vertex_map, arrow_map };
        hom.validate(e, f)?;
        Ok(hom)
    }

    /// The inclusion of `e` into `f` matching vertex and arrow names.
    pub fn inclusion(e: &Quiver, f: &Quiver) -> Result<GraphHom> {
        let hom = GraphHom {
            vertex_map: e
                .vertices()
                .map(|v| f.vertex(e.vertex_name(v)))
                .collect::<Result<_>>()?,
            arrow_map: e
                .arrows()
                .map(|a| f.arrow(e.arrow_name(a)))
                .collect::<Result<_>>()?,
        };
        hom.validate(e, f)?;
        Ok(hom)
    }

    pub fn identity(e: &Quiver) -> GraphHom {
        GraphHom {
            vertex_map: e.vertices().collect(),
            arrow_map: e.arrows().collect(),
        }
    }

    /// Checks sizes, ranges and endpoint compatibility.
    pub fn validate(&self, e: &Quiver, f: &Quiver) -> Result<()> {
        if self.vertex_map.len() != e.num_vertices() || self.arrow_map.len() != e.num_arrows() {
            return Err(Error::MalformedHom("map sizes do not match the domain".into()));
        }
        if self.vertex_map.iter().any(|&v| v as usize >= f.num_vertices())
            || self.arrow_map.iter().any(|&a| a as usize >= f.num_arrows())
        {
            return Err(Error::MalformedHom("image outside the codomain".into()));
        }
        for a in e.arrows() {
            let b = self.arrow_map[a as usize];
            if f.source(b) != self.vertex_map[e.source(a) as usize]
                || f.range(b) != self.vertex_map[e.range(a) as usize]
            {
                return Err(Error::MalformedHom(format!(
                    "arrow {} is not sent compatibly with its endpoints",
                    e.arrow_name(a)
                )));
            }
        }
        Ok(())
    }
}

/// Whether `f` is injective and bijective on incoming arrows at every
/// receiving vertex of `e`.
pub fn check_complete_hom(f: &GraphHom, e: &Quiver, target: &Quiver) -> Result<bool> {
    f.validate(e, target)?;
    let distinct = |xs: &[u32]| xs.iter().collect::<BTreeSet<_>>().len() == xs.len();
    if !distinct(&f.vertex_map) || !distinct(&f.arrow_map) {
        return Ok(false);
    }
    for v in e.receiving_vertices() {
        let image: BTreeSet<Arrow> = e
            .incoming(v)
            .iter()
            .map(|&a| f.arrow_map[a as usize])
            .collect();
        let target_in: BTreeSet<Arrow> = target
            .incoming(f.vertex_map[v as usize])
            .iter()
            .copied()
            .collect();
        if image != target_in {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A possibly infinite quiver in which every vertex receives finitely many
/// arrows, queried one vertex at a time.
pub trait ColumnFinite {
    /// Incoming arrows at `v` as `(arrow name, source name)` pairs. `None`
    /// signals that `v` receives infinitely many arrows.
    fn incoming_at(&self, v: &str) -> Option<Vec<(String, String)>>;

    /// Whether `v` is a vertex of the quiver.
    fn has_vertex(&self, v: &str) -> bool;
}

impl ColumnFinite for Quiver {
    fn incoming_at(&self, v: &str) -> Option<Vec<(String, String)>> {
        let v = self.vertex(v).ok()?;
        Some(
            self.incoming(v)
                .iter()
                .map(|&a| {
                    (
                        self.arrow_name(a).to_string(),
                        self.vertex_name(self.source(a)).to_string(),
                    )
                })
                .collect(),
        )
    }

    fn has_vertex(&self, v: &str) -> bool {
        self.vertex(v).is_ok()
    }
}

/// A column-finite quiver given by a callback.
pub struct FnQuiver<F, G> {
    incoming: F,
    has_vertex: G,
}

impl<F, G> FnQuiver<F, G>
where
    F: Fn(&str) -> Option<Vec<(String, String)>>,
    G: Fn(&str) -> bool,
{
    pub fn new(incoming: F, has_vertex: G) -> Self {
        FnQuiver { incoming, has_vertex }
    }
}

impl<F, G> ColumnFinite for FnQuiver<F, G>
where
    F: Fn(&str) -> Option<Vec<(String, String)>>,
    G: Fn(&str) -> bool,
{
    fn incoming_at(&self, v: &str) -> Option<Vec<(String, String)>> {
        (self.incoming)(v)
    }

    fn has_vertex(&self, v: &str) -> bool {
        (self.has_vertex)(v)
    }
}

/// The infinite chain `... -> 2 -> 1 -> 0` on vertices `0, 1, 2, ...`, with
/// arrow `x{n}` running from `n` to `n - 1`.
pub fn chain_quiver() -> impl ColumnFinite {
    FnQuiver::new(
        |v: &str| {
            let n: u64 = v.parse().ok()?;
            Some(vec![(format!("x{}", n + 1), (n + 1).to_string())])
        },
        |v: &str| v.parse::<u64>().is_ok(),
    )
}

/// The smallest complete subquiver containing `seed`: each seed vertex keeps
/// all of its incoming arrows together with their sources.
pub fn complete_subquiver_containing<Q: ColumnFinite + ?Sized>(
    e: &Q,
    seed: &[String],
) -> Result<Quiver> {
    let mut vertices: Vec<String> = Vec::new();
    let mut seen = BTreeSet::new();
    let mut arrows = Vec::new();
    let mut push = |v: &String, vertices: &mut Vec<String>| {
        if seen.insert(v.clone()) {
            vertices.push(v.clone());
        }
    };
    for v in seed {
        if !e.has_vertex(v) {
            return Err(Error::UnknownVertex(v.clone()));
        }
        push(v, &mut vertices);
    }
    for v in seed {
        let incoming = e
            .incoming_at(v)
            .ok_or_else(|| Error::NonColumnFinite(v.clone()))?;
        for (name, source) in incoming {
            push(&source, &mut vertices);
            arrows.push((name, source, v.clone()));
        }
    }
    let mut distinct = BTreeSet::new();
    arrows.retain(|(name, _, _)| distinct.insert(name.clone()));
    Quiver::new(vertices, arrows)
}
