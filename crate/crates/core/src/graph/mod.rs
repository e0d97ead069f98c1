//! Finite simple graphs with named vertices.
//!
//! A [`Graph`] keeps its vertices sorted by name and stores adjacency as one
//! bitmask per vertex, so every iteration order is fixed by the names alone.
//! Certificates built on top of this type are therefore byte-stable.

mod enumerate;
mod format;
mod search;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::GraphError;

pub use enumerate::all_graphs;
pub use format::{emit_graph, parse_graph, EmitFormat, ParseFormat};
pub use search::{canonical_form, find_induced, is_isomorphic, CanonicalForm};

/// Largest vertex count a [`Graph`] can hold.
pub const MAX_VERTICES: usize = 128;

/// Prefix reserved for vertices created by graph operations.
pub const FRESH_PREFIX: char = '$';

pub(crate) type Bits = u128;

pub(crate) fn bit(i: usize) -> Bits {
    1 << i
}

pub(crate) fn ones(bits: Bits) -> impl Iterator<Item = usize> {
    let mut rest = bits;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(i)
        }
    })
}

/// A vertex name: a nonempty token without whitespace.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct VertexId(String);

impl VertexId {
    /// Any valid token, including reserved `$` names produced by graph operations.
    pub fn new(name: impl Into<String>) -> Result<Self, GraphError> {
        let name = name.into();
        if name.is_empty() || name.chars().any(|c| c.is_whitespace() || c == '"') {
            return Err(GraphError::InvalidName(name));
        }
        Ok(VertexId(name))
    }

    /// A name supplied by a user; the `$` prefix is rejected.
    pub fn user(name: impl Into<String>) -> Result<Self, GraphError> {
        let id = Self::new(name)?;
        if id.is_fresh() {
            return Err(GraphError::ReservedName(id.0));
        }
        Ok(id)
    }

    pub(crate) fn fresh(name: String) -> Self {
        debug_assert!(name.starts_with(FRESH_PREFIX));
        VertexId(name)
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn is_fresh(&self) -> bool {
        self.0.starts_with(FRESH_PREFIX)
    }
}

impl<'de> Deserialize<'de> for VertexId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        VertexId::new(s).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Shorthand for tests and examples; panics on an invalid name.
pub fn vid(name: &str) -> VertexId {
    VertexId::new(name).expect("valid vertex name")
}

/// An injective map between vertex sets, e.g. an embedding or isomorphism witness.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexMap(BTreeMap<VertexId, VertexId>);

impl VertexMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, from: VertexId, to: VertexId) {
        self.0.insert(from, to);
    }

    pub fn get(&self, v: &VertexId) -> Option<&VertexId> {
        self.0.get(v)
    }

    pub fn remove(&mut self, v: &VertexId) -> Option<VertexId> {
        self.0.remove(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&VertexId, &VertexId)> {
        self.0.iter()
    }

    pub fn is_injective(&self) -> bool {
        let mut seen: Vec<&VertexId> = self.0.values().collect();
        seen.sort();
        seen.windows(2).all(|w| w[0] != w[1])
    }

    /// True iff the map is an injective, adjacency preserving and reflecting
    /// map from all of `pattern` into `host`.
    pub fn is_induced_embedding(&self, pattern: &Graph, host: &Graph) -> bool {
        if self.len() != pattern.vertex_count() || !self.is_injective() {
            return false;
        }
        let mut image = Vec::with_capacity(self.len());
        for v in pattern.vertices() {
            match self.get(v).and_then(|w| host.index_of(w)) {
                Some(j) => image.push(j),
                None => return false,
            }
        }
        for i in 0..image.len() {
            for j in (i + 1)..image.len() {
                if pattern.adjacent_idx(i, j) != host.adjacent_idx(image[i], image[j]) {
                    return false;
                }
            }
        }
        true
    }
}

impl FromIterator<(VertexId, VertexId)> for VertexMap {
    fn from_iter<I: IntoIterator<Item = (VertexId, VertexId)>>(iter: I) -> Self {
        VertexMap(iter.into_iter().collect())
    }
}

/// A finite simple undirected graph.
///
/// Vertices are kept in name order; vertex `i` is the `i`-th smallest name.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    names: Vec<VertexId>,
    adj: Vec<Bits>,
}

impl Graph {
    /// Validates and builds a graph. Duplicate edges are merged.
    pub fn new<V, E>(vertices: V, edges: E) -> Result<Self, GraphError>
    where
        V: IntoIterator<Item = VertexId>,
        E: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut names: Vec<VertexId> = vertices.into_iter().collect();
        names.sort();
        if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateVertex(w[0].to_string()));
        }
        if names.len() > MAX_VERTICES {
            return Err(GraphError::TooLarge(names.len()));
        }
        let mut g = Graph {
            adj: vec![0; names.len()],
            names,
        };
        for (u, v) in edges {
            if u == v {
                return Err(GraphError::LoopEdge(u.to_string()));
            }
            let i = g.require(&u)?;
            let j = g.require(&v)?;
            g.adj[i] |= bit(j);
            g.adj[j] |= bit(i);
        }
        Ok(g)
    }

    /// Builds from string names, rejecting the reserved `$` prefix.
    pub fn from_user(vertices: &[&str], edges: &[(&str, &str)]) -> Result<Self, GraphError> {
        let vs = vertices
            .iter()
            .map(|v| VertexId::user(*v))
            .collect::<Result<Vec<_>, _>>()?;
        let es = edges
            .iter()
            .map(|(u, v)| Ok((VertexId::user(*u)?, VertexId::user(*v)?)))
            .collect::<Result<Vec<_>, GraphError>>()?;
        Graph::new(vs, es)
    }

    /// Builds from already sorted names and a symmetric loop-free adjacency.
    pub(crate) fn from_parts(names: Vec<VertexId>, adj: Vec<Bits>) -> Self {
        debug_assert!(names.windows(2).all(|w| w[0] < w[1]));
        debug_assert_eq!(names.len(), adj.len());
        debug_assert!((0..adj.len()).all(|i| adj[i] & bit(i) == 0));
        Graph { names, adj }
    }

    /// Builds from unsorted names and index-based edges, reordering as needed.
    pub(crate) fn from_indexed(names: Vec<VertexId>, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let edges: Vec<(VertexId, VertexId)> = edges
            .into_iter()
            .map(|(i, j)| (names[i].clone(), names[j].clone()))
            .collect();
        Graph::new(names, edges).expect("indexed construction is valid")
    }

    pub fn empty() -> Self {
        Graph { names: Vec::new(), adj: Vec::new() }
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &VertexId {
        &self.names[i]
    }

    pub fn index_of(&self, v: &VertexId) -> Option<usize> {
        self.names.binary_search(v).ok()
    }

    pub(crate) fn require(&self, v: &VertexId) -> Result<usize, GraphError> {
        self.index_of(v).ok_or_else(|| GraphError::UnknownVertex(v.to_string()))
    }

    pub fn contains(&self, v: &VertexId) -> bool {
        self.index_of(v).is_some()
    }

    pub(crate) fn adj_bits(&self, i: usize) -> Bits {
        self.adj[i]
    }

    pub(crate) fn all_bits(&self) -> Bits {
        if self.names.len() == MAX_VERTICES {
            Bits::MAX
        } else {
            bit(self.names.len()) - 1
        }
    }

    pub(crate) fn adjacent_idx(&self, i: usize, j: usize) -> bool {
        self.adj[i] & bit(j) != 0
    }

    pub fn has_edge(&self, u: &VertexId, v: &VertexId) -> bool {
        match (self.index_of(u), self.index_of(v)) {
            (Some(i), Some(j)) => self.adjacent_idx(i, j),
            _ => false,
        }
    }

    pub fn degree(&self, v: &VertexId) -> Option<usize> {
        self.index_of(v).map(|i| self.adj[i].count_ones() as usize)
    }

    pub(crate) fn degree_idx(&self, i: usize) -> usize {
        self.adj[i].count_ones() as usize
    }

    /// Edges as name pairs `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        self.edge_indices()
            .map(|(i, j)| (self.names[i].clone(), self.names[j].clone()))
            .collect()
    }

    pub(crate) fn edge_indices(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.names.len()).flat_map(move |i| ones(self.adj[i] >> (i + 1)).map(move |k| (i, i + 1 + k)))
    }

    pub fn is_complete(&self) -> bool {
        let all = self.all_bits();
        (0..self.names.len()).all(|i| self.adj[i] | bit(i) == all)
    }

    pub(crate) fn is_clique_bits(&self, set: Bits) -> bool {
        ones(set).all(|i| (self.adj[i] | bit(i)) & set == set)
    }

    pub(crate) fn bits_of<'a>(&self, set: impl IntoIterator<Item = &'a VertexId>) -> Result<Bits, GraphError> {
        let mut b = 0;
        for v in set {
            b |= bit(self.require(v)?);
        }
        Ok(b)
    }

    pub(crate) fn names_of(&self, set: Bits) -> Vec<VertexId> {
        ones(set).map(|i| self.names[i].clone()).collect()
    }

    /// Connected components of the subgraph induced on `within`, each as a bitmask,
    /// ordered by their least vertex.
    pub(crate) fn components_within(&self, within: Bits) -> Vec<Bits> {
        let mut rest = within;
        let mut out = Vec::new();
        while rest != 0 {
            let start = rest.trailing_zeros() as usize;
            let mut comp = bit(start);
            let mut frontier = comp;
            while frontier != 0 {
                let mut next = 0;
                for i in ones(frontier) {
                    next |= self.adj[i];
                }
                next &= within & !comp;
                comp |= next;
                frontier = next;
            }
            rest &= !comp;
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components_within(self.all_bits()).len() <= 1
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self.edges().iter().map(|(u, v)| format!("{u}-{v}")).collect();
        write!(f, "Graph[{}; {}]", self.names.iter().map(|v| v.as_str()).collect::<Vec<_>>().join(" "), edges.join(" "))
    }
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    vertices: Vec<VertexId>,
    edges: Vec<(VertexId, VertexId)>,
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GraphRepr { vertices: self.names.clone(), edges: self.edges() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = GraphRepr::deserialize(d)?;
        Graph::new(r.vertices, r.edges).map_err(serde::de::Error::custom)
    }
}

/// Named graph families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StandardKind {
    Complete,
    Cycle,
    Path,
    Discrete,
}

/// `K_n`, `C_n`, `P_n` or the discrete graph on vertices `v1..vn`.
pub fn standard_graph(kind: StandardKind, n: usize) -> Result<Graph, GraphError> {
    let min = if kind == StandardKind::Cycle { 3 } else { 1 };
    if n < min {
        let name = match kind {
            StandardKind::Complete => "complete",
            StandardKind::Cycle => "cycle",
            StandardKind::Path => "path",
            StandardKind::Discrete => "discrete",
        };
        return Err(GraphError::TooSmall { kind: name, min, n });
    }
    if n > MAX_VERTICES {
        return Err(GraphError::TooLarge(n));
    }
    let names: Vec<VertexId> = (1..=n).map(|i| VertexId(format!("v{i}"))).collect();
    let edges: Vec<(usize, usize)> = match kind {
        StandardKind::Complete => (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).collect(),
        StandardKind::Cycle => (0..n).map(|i| (i, (i + 1) % n)).collect(),
        StandardKind::Path => (1..n).map(|i| (i - 1, i)).collect(),
        StandardKind::Discrete => Vec::new(),
    };
    Ok(Graph::from_indexed(names, edges))
}

pub fn complete(n: usize) -> Graph {
    standard_graph(StandardKind::Complete, n).expect("n >= 1")
}

pub fn cycle(n: usize) -> Graph {
    standard_graph(StandardKind::Cycle, n).expect("n >= 3")
}

pub fn path(n: usize) -> Graph {
    standard_graph(StandardKind::Path, n).expect("n >= 1")
}

pub fn discrete(n: usize) -> Graph {
    standard_graph(StandardKind::Discrete, n).expect("n >= 1")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_path() {
        let g = Graph::from_user(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("b", "a")]).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 2);
        assert!(g.has_edge(&vid("a"), &vid("b")));
        assert!(!g.has_edge(&vid("a"), &vid("c")));
        assert!(g.is_induced_embedding_of_self());
    }

    impl Graph {
        fn is_induced_embedding_of_self(&self) -> bool {
            let m: VertexMap = self.vertices().iter().map(|v| (v.clone(), v.clone())).collect();
            m.is_induced_embedding(self, self)
        }
    }

    #[test]
    fn single_vertex() {
        let g = Graph::from_user(&["a"], &[]).unwrap();
        assert!(g.is_complete());
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            Graph::from_user(&["a", "b"], &[("a", "a")]),
            Err(GraphError::LoopEdge("a".into()))
        );
        assert_eq!(
            Graph::from_user(&["a", "b"], &[("a", "c")]),
            Err(GraphError::UnknownVertex("c".into()))
        );
        assert_eq!(Graph::from_user(&["a", "a"], &[]), Err(GraphError::DuplicateVertex("a".into())));
        assert!(matches!(Graph::from_user(&["$x"], &[]), Err(GraphError::ReservedName(_))));
        assert!(matches!(VertexId::new("a b"), Err(GraphError::InvalidName(_))));
        assert!(matches!(VertexId::new(""), Err(GraphError::InvalidName(_))));
    }

    #[test]
    fn standard_edge_counts() {
        for n in 1..=9 {
            assert_eq!(complete(n).edge_count(), n * (n - 1) / 2);
            assert_eq!(path(n).edge_count(), n - 1);
            assert_eq!(discrete(n).edge_count(), 0);
            if n >= 3 {
                assert_eq!(cycle(n).edge_count(), n);
            }
        }
        assert_eq!(complete(3).edge_count(), 3);
        assert_eq!(cycle(5).edge_count(), 5);
        assert_eq!(path(4).edge_count(), 3);
        assert!(matches!(standard_graph(StandardKind::Cycle, 2), Err(GraphError::TooSmall { .. })));
        assert!(matches!(standard_graph(StandardKind::Path, 0), Err(GraphError::TooSmall { .. })));
    }

    #[test]
    fn components() {
        let g = Graph::from_user(&["a", "b", "c", "d"], &[("a", "c")]).unwrap();
        assert_eq!(g.components_within(g.all_bits()), vec![0b0101, 0b0010, 0b1000]);
        assert!(!g.is_connected());
        assert!(cycle(5).is_connected());
    }

    #[test]
    fn serde_round_trip() {
        let g = cycle(4);
        let text = serde_json::to_string(&g).unwrap();
        assert_eq!(serde_json::from_str::<Graph>(&text).unwrap(), g);
        assert!(serde_json::from_str::<Graph>(r#"{"vertices":["a"],"edges":[["a","a"]]}"#).is_err());
    }
}
