//! Graph operations: complements, joins, links, clique structure, clique
//! separators, simplicial extension and co-contraction.

use serde::{Deserialize, Serialize};

use crate::error::GraphError;
use crate::graph::{bit, ones, Bits, Graph, VertexId};

pub fn complement(g: &Graph) -> Graph {
    let all = g.all_bits();
    let adj = (0..g.vertex_count()).map(|i| all & !g.adj_bits(i) & !bit(i)).collect();
    Graph::from_parts(g.vertices().to_vec(), adj)
}

/// The subgraph of `g` induced on `s`.
pub fn induced<'a>(g: &Graph, s: impl IntoIterator<Item = &'a VertexId>) -> Result<Graph, GraphError> {
    let set = g.bits_of(s)?;
    Ok(induced_bits(g, set))
}

pub(crate) fn induced_bits(g: &Graph, set: Bits) -> Graph {
    let idx: Vec<usize> = ones(set).collect();
    let names = idx.iter().map(|&i| g.name(i).clone()).collect();
    let adj = idx
        .iter()
        .map(|&i| {
            let row = g.adj_bits(i);
            idx.iter()
                .enumerate()
                .filter(|(_, &j)| row & bit(j) != 0)
                .fold(0, |acc, (k, _)| acc | bit(k))
        })
        .collect();
    Graph::from_parts(names, adj)
}

fn check_disjoint(g: &Graph, h: &Graph) -> Result<(), GraphError> {
    match g.vertices().iter().find(|v| h.contains(v)) {
        Some(v) => Err(GraphError::NameCollision(v.to_string())),
        None => Ok(()),
    }
}

pub fn disjoint_union(g: &Graph, h: &Graph) -> Result<Graph, GraphError> {
    check_disjoint(g, h)?;
    let vertices = g.vertices().iter().chain(h.vertices()).cloned();
    let edges = g.edges().into_iter().chain(h.edges());
    Graph::new(vertices, edges)
}

/// `g` and `h` side by side with every cross edge added.
pub fn join(g: &Graph, h: &Graph) -> Result<Graph, GraphError> {
    check_disjoint(g, h)?;
    let vertices = g.vertices().iter().chain(h.vertices()).cloned();
    let cross = g
        .vertices()
        .iter()
        .flat_map(|u| h.vertices().iter().map(move |v| (u.clone(), v.clone())));
    let edges = g.edges().into_iter().chain(h.edges()).chain(cross);
    Graph::new(vertices, edges)
}

/// Neighbours of `v`, in name order.
pub fn link(g: &Graph, v: &VertexId) -> Result<Vec<VertexId>, GraphError> {
    let i = g.require(v)?;
    Ok(g.names_of(g.adj_bits(i)))
}

pub fn is_simplicial_vertex(g: &Graph, v: &VertexId) -> Result<bool, GraphError> {
    let i = g.require(v)?;
    Ok(g.is_clique_bits(g.adj_bits(i)))
}

/// Whether every neighbour of `a` equals or is adjacent to every neighbour of `b`.
pub fn is_bisimplicial_edge(g: &Graph, a: &VertexId, b: &VertexId) -> Result<bool, GraphError> {
    let i = g.require(a)?;
    let j = g.require(b)?;
    if !g.adjacent_idx(i, j) {
        return Err(GraphError::NotAnEdge(a.to_string(), b.to_string()));
    }
    Ok(bisimplicial_idx(g, i, j))
}

pub(crate) fn bisimplicial_idx(g: &Graph, i: usize, j: usize) -> bool {
    let nb = g.adj_bits(j);
    ones(g.adj_bits(i)).all(|u| (g.adj_bits(u) | bit(u)) & nb == nb)
}

/// `g` with the interior of the edge `{a, b}` removed; both endpoints stay.
pub fn remove_edge_interior(g: &Graph, a: &VertexId, b: &VertexId) -> Result<Graph, GraphError> {
    let i = g.require(a)?;
    let j = g.require(b)?;
    if !g.adjacent_idx(i, j) {
        return Err(GraphError::NotAnEdge(a.to_string(), b.to_string()));
    }
    Ok(toggle_edge(g, i, j))
}

pub(crate) fn toggle_edge(g: &Graph, i: usize, j: usize) -> Graph {
    let mut adj: Vec<Bits> = (0..g.vertex_count()).map(|k| g.adj_bits(k)).collect();
    adj[i] ^= bit(j);
    adj[j] ^= bit(i);
    Graph::from_parts(g.vertices().to_vec(), adj)
}

/// Maximal cliques by Bron–Kerbosch with pivoting, sorted by size then names.
pub fn maximal_cliques(g: &Graph) -> Vec<Vec<VertexId>> {
    maximal_clique_bits(g).into_iter().map(|c| g.names_of(c)).collect()
}

pub(crate) fn maximal_clique_bits(g: &Graph) -> Vec<Bits> {
    fn bk(g: &Graph, r: Bits, mut p: Bits, mut x: Bits, out: &mut Vec<Bits>) {
        if p == 0 {
            if x == 0 {
                out.push(r);
            }
            return;
        }
        let pivot = ones(p | x)
            .max_by_key(|&u| ((p & g.adj_bits(u)).count_ones(), std::cmp::Reverse(u)))
            .expect("p is nonempty");
        for v in ones(p & !g.adj_bits(pivot)) {
            let nv = g.adj_bits(v);
            bk(g, r | bit(v), p & nv, x & nv, out);
            p &= !bit(v);
            x |= bit(v);
        }
    }
    let mut out = Vec::new();
    bk(g, 0, g.all_bits(), 0, &mut out);
    out.sort_by_key(|&c| (c.count_ones(), ones(c).collect::<Vec<_>>()));
    out
}

/// A decomposition `G = left ∪ right` with `left ∩ right` the complete
/// subgraph on `separator` (possibly empty).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueSplit {
    pub left: Graph,
    pub right: Graph,
    pub separator: Vec<VertexId>,
}

impl CliqueSplit {
    /// Re-checks every invariant against `g` from scratch.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        let mut sep = self.separator.clone();
        sep.sort();
        sep.dedup();
        if sep.len() != self.separator.len() {
            return false;
        }
        let Ok(sep_bits) = g.bits_of(&sep) else { return false };
        let (Ok(lb), Ok(rb)) = (g.bits_of(self.left.vertices()), g.bits_of(self.right.vertices())) else {
            return false;
        };
        lb | rb == g.all_bits()
            && lb & rb == sep_bits
            && lb != g.all_bits()
            && rb != g.all_bits()
            && g.is_clique_bits(sep_bits)
            && induced_bits(g, lb) == self.left
            && induced_bits(g, rb) == self.right
            && ones(lb & !sep_bits).all(|i| g.adj_bits(i) & rb & !sep_bits == 0)
    }
}

fn all_cliques(g: &Graph) -> Vec<Bits> {
    let mut out = vec![0];
    let mut frontier: Vec<(Bits, Bits)> = vec![(0, g.all_bits())];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (clique, cand) in frontier {
            let floor = if clique == 0 { 0 } else { 128 - clique.leading_zeros() as usize };
            for v in ones(cand) {
                if v < floor {
                    continue;
                }
                let c = clique | bit(v);
                out.push(c);
                next.push((c, cand & g.adj_bits(v)));
            }
        }
        frontier = next;
    }
    out.sort_by_key(|&c| (c.count_ones(), ones(c).collect::<Vec<_>>()));
    out
}

fn splits_at(g: &Graph, sep: Bits) -> Vec<(Bits, Bits)> {
    let comps = g.components_within(g.all_bits() & !sep);
    if comps.len() < 2 {
        return Vec::new();
    }
    comps.iter().map(|&c| (c | sep, g.all_bits() & !c)).collect()
}

fn make_split(g: &Graph, sep: Bits, left: Bits, right: Bits) -> CliqueSplit {
    CliqueSplit {
        left: induced_bits(g, left),
        right: induced_bits(g, right),
        separator: g.names_of(sep),
    }
}

/// Every clique separator split of `g`, smallest separators first; a
/// disconnected graph yields splits along the empty clique. Splits that only
/// swap sides are reported once.
pub fn clique_separators(g: &Graph) -> Vec<CliqueSplit> {
    let mut seen: Vec<(Bits, Bits)> = Vec::new();
    let mut out = Vec::new();
    for sep in all_cliques(g) {
        for (l, r) in splits_at(g, sep) {
            let key = if l < r { (l, r) } else { (r, l) };
            if seen.contains(&key) {
                continue;
            }
            seen.push(key);
            out.push(make_split(g, sep, l, r));
        }
    }
    out
}

/// The first split [`clique_separators`] would report, without listing the rest.
pub fn first_clique_separator(g: &Graph) -> Option<CliqueSplit> {
    if g.is_complete() {
        return None;
    }
    let comps = g.components_within(g.all_bits());
    if comps.len() >= 2 {
        return Some(make_split(g, 0, comps[0], g.all_bits() & !comps[0]));
    }
    all_cliques(g)
        .into_iter()
        .find_map(|sep| splits_at(g, sep).first().map(|&(l, r)| make_split(g, sep, l, r)))
}

/// One vertex `v_{K,u}` added by [`simplicial_extension`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionVertex {
    /// Index of `K` in [`maximal_cliques`] order.
    pub clique_index: usize,
    pub clique: Vec<VertexId>,
    pub anchor: VertexId,
    pub fresh: VertexId,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ExtensionNaming {
    pub added: Vec<ExtensionVertex>,
}

/// Adds, for every maximal clique `K` and every `u` in `K`, a fresh vertex
/// `$x(k,u)` adjacent to exactly the vertices of `K`.
pub fn simplicial_extension(g: &Graph) -> Result<(Graph, ExtensionNaming), GraphError> {
    let mut naming = ExtensionNaming::default();
    let mut vertices: Vec<VertexId> = g.vertices().to_vec();
    let mut edges = g.edges();
    for (k, clique) in maximal_cliques(g).into_iter().enumerate() {
        for u in &clique {
            let fresh = VertexId::fresh(format!("$x({k},{u})"));
            if g.contains(&fresh) {
                return Err(GraphError::NameCollision(fresh.to_string()));
            }
            vertices.push(fresh.clone());
            edges.extend(clique.iter().map(|w| (fresh.clone(), w.clone())));
            naming.added.push(ExtensionVertex {
                clique_index: k,
                clique: clique.clone(),
                anchor: u.clone(),
                fresh,
            });
        }
    }
    Ok((Graph::new(vertices, edges)?, naming))
}

fn cocontract_members(v: &VertexId) -> Vec<String> {
    let s = v.as_str();
    match s.strip_prefix("$co(").and_then(|r| r.strip_suffix(')')) {
        Some(inner) => inner.split(',').map(str::to_string).collect(),
        None => vec![s.to_string()],
    }
}

/// Name of the vertex obtained by merging `vs`: `$co(...)` over the sorted
/// original members.
pub fn cocontracted_name<'a>(vs: impl IntoIterator<Item = &'a VertexId>) -> VertexId {
    let mut members: Vec<String> = vs.into_iter().flat_map(cocontract_members).collect();
    members.sort();
    members.dedup();
    VertexId::fresh(format!("$co({})", members.join(",")))
}

/// Contracts the complement edge `{a, b}`: the two vertices are replaced by a
/// single vertex whose link is `link(a) ∩ link(b)`.
pub fn co_contract_edge(g: &Graph, a: &VertexId, b: &VertexId) -> Result<Graph, GraphError> {
    let i = g.require(a)?;
    let j = g.require(b)?;
    if i == j {
        return Err(GraphError::LoopEdge(a.to_string()));
    }
    if g.adjacent_idx(i, j) {
        return Err(GraphError::IsAnEdge(a.to_string(), b.to_string()));
    }
    Ok(merge(g, bit(i) | bit(j), &cocontracted_name([a, b]))?)
}

/// Replaces the vertices in `set` by `name`, adjacent to the common neighbours of `set`.
fn merge(g: &Graph, set: Bits, name: &VertexId) -> Result<Graph, GraphError> {
    let keep = g.all_bits() & !set;
    if ones(keep).any(|k| g.name(k) == name) {
        return Err(GraphError::NameCollision(name.to_string()));
    }
    let common = ones(set).fold(keep, |acc, k| acc & g.adj_bits(k));
    let mut vertices: Vec<VertexId> = g.names_of(keep);
    vertices.push(name.clone());
    let mut edges: Vec<(VertexId, VertexId)> = induced_bits(g, keep).edges();
    edges.extend(ones(common).map(|k| (g.name(k).clone(), name.clone())));
    Graph::new(vertices, edges)
}

/// Co-contraction of `g` relative to `b`: complement, contract the
/// complement of `g[b]` to a point, complement again.
///
/// Performed as single complement-edge contractions along a breadth-first
/// spanning tree of the complement of `g[b]`.
pub fn co_contract(g: &Graph, b: &[VertexId]) -> Result<Graph, GraphError> {
    if b.is_empty() {
        return Err(GraphError::EmptySet);
    }
    let set = g.bits_of(b)?;
    let co_b = complement(&induced_bits(g, set));
    if !co_b.is_connected() {
        return Err(GraphError::DisconnectedCoComplement);
    }
    if set.count_ones() == 1 {
        let only = g.name(set.trailing_zeros() as usize);
        return merge(g, set, &cocontracted_name([only]));
    }
    // BFS tree of the complement of g[b], in name order.
    let root = co_b.name(0).clone();
    let mut order: Vec<(VertexId, VertexId)> = Vec::new();
    let mut visited: Bits = bit(0);
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(p) = queue.pop_front() {
        for c in ones(co_b.adj_bits(p) & !visited) {
            visited |= bit(c);
            order.push((co_b.name(p).clone(), co_b.name(c).clone()));
            queue.push_back(c);
        }
    }
    let mut current = g.clone();
    let mut merged = root;
    for (_, child) in order {
        let next = cocontracted_name([&merged, &child]);
        current = co_contract_edge(&current, &merged, &child)?;
        merged = next;
    }
    Ok(current)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, discrete, is_isomorphic, path, vid};

    fn p3() -> Graph {
        Graph::from_user(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap()
    }

    fn names(v: &[&str]) -> Vec<VertexId> {
        v.iter().map(|s| vid(s)).collect()
    }

    #[test]
    fn complement_examples() {
        let co = complement(&p3());
        assert_eq!(co.edges(), vec![(vid("a"), vid("c"))]);
        assert_eq!(complement(&complete(5)), discrete(5));
        assert_eq!(complement(&complement(&cycle(7))), cycle(7));
    }

    #[test]
    fn induced_examples() {
        let c5 = cycle(5);
        let four = induced(&c5, &names(&["v1", "v2", "v3", "v4"])).unwrap();
        assert!(is_isomorphic(&four, &path(4)).is_some());
        assert_eq!(induced(&c5, c5.vertices()).unwrap(), c5);
        let k3 = induced(&complete(5), &names(&["v1", "v3", "v5"])).unwrap();
        assert!(k3.is_complete());
        assert_eq!(induced(&c5, &names(&["x"])), Err(GraphError::UnknownVertex("x".into())));
    }

    #[test]
    fn join_examples() {
        let a = Graph::from_user(&["a"], &[]).unwrap();
        let b = Graph::from_user(&["b"], &[]).unwrap();
        assert!(join(&a, &b).unwrap().is_complete());
        let l = Graph::from_user(&["a1", "a2"], &[]).unwrap();
        let r = Graph::from_user(&["b1", "b2", "b3"], &[]).unwrap();
        let k23 = join(&l, &r).unwrap();
        assert_eq!(k23.edge_count(), 6);
        assert!(!k23.has_edge(&vid("a1"), &vid("a2")));
        assert_eq!(join(&a, &a), Err(GraphError::NameCollision("a".into())));
        let dual = complement(&disjoint_union(&complement(&l), &complement(&r)).unwrap());
        assert_eq!(dual, k23);
    }

    #[test]
    fn link_and_simplicial() {
        let g = p3();
        assert_eq!(link(&g, &vid("b")).unwrap(), names(&["a", "c"]));
        assert_eq!(link(&complete(4), &vid("v2")).unwrap(), names(&["v1", "v3", "v4"]));
        assert!(link(&discrete(3), &vid("v1")).unwrap().is_empty());
        assert!(is_simplicial_vertex(&g, &vid("a")).unwrap());
        assert!(!is_simplicial_vertex(&g, &vid("b")).unwrap());
        assert!(complete(4).vertices().iter().all(|v| is_simplicial_vertex(&complete(4), v).unwrap()));
        assert!(is_simplicial_vertex(&g, &vid("zz")).is_err());
    }

    /// Pairwise check over link(a) x link(b), independent of `bisimplicial_idx`.
    fn bisimplicial_oracle(g: &Graph, a: &VertexId, b: &VertexId) -> bool {
        let la = link(g, a).unwrap();
        let lb = link(g, b).unwrap();
        la.iter().all(|u| lb.iter().all(|w| u == w || g.has_edge(u, w)))
    }

    #[test]
    fn bisimplicial_examples() {
        for (g, expect) in [(cycle(4), true), (cycle(5), false), (complete(3), true)] {
            for (a, b) in g.edges() {
                assert_eq!(bisimplicial_oracle(&g, &a, &b), expect);
                assert_eq!(is_bisimplicial_edge(&g, &a, &b).unwrap(), expect);
            }
        }
        assert!(matches!(
            is_bisimplicial_edge(&cycle(4), &vid("v1"), &vid("v3")),
            Err(GraphError::NotAnEdge(..))
        ));
    }

    #[test]
    fn removing_edges() {
        let k2 = complete(2);
        assert_eq!(remove_edge_interior(&k2, &vid("v1"), &vid("v2")).unwrap(), discrete(2));
        for n in 3..=8 {
            let p = remove_edge_interior(&cycle(n), &vid("v1"), &vid("v2")).unwrap();
            assert!(is_isomorphic(&p, &path(n)).is_some());
        }
        assert!(remove_edge_interior(&k2, &vid("v1"), &vid("v1")).is_err());
    }

    #[test]
    fn clique_examples() {
        assert_eq!(maximal_cliques(&p3()), vec![names(&["a", "b"]), names(&["b", "c"])]);
        assert_eq!(maximal_cliques(&complete(4)), vec![complete(4).vertices().to_vec()]);
        let c5 = maximal_cliques(&cycle(5));
        assert_eq!(c5.len(), 5);
        assert!(c5.iter().all(|c| c.len() == 2));
    }

    #[test]
    fn separator_examples() {
        let splits = clique_separators(&p3());
        assert_eq!(splits.len(), 1);
        assert_eq!(splits[0].separator, names(&["b"]));
        assert_eq!(splits[0].left.vertices(), &names(&["a", "b"])[..]);
        assert_eq!(splits[0].right.vertices(), &names(&["b", "c"])[..]);
        assert!(splits[0].is_valid_for(&p3()));
        assert!(clique_separators(&complete(5)).is_empty());
        assert!(clique_separators(&cycle(4)).is_empty());
        assert_eq!(first_clique_separator(&p3()), Some(splits[0].clone()));

        let two = discrete(2);
        let s = first_clique_separator(&two).unwrap();
        assert!(s.separator.is_empty());
        assert!(s.is_valid_for(&two));
    }

    #[test]
    fn c4_has_no_clique_separator_by_exhaustion() {
        let g = cycle(4);
        for mask in 0u128..16 {
            if !g.is_clique_bits(mask) {
                continue;
            }
            assert!(g.components_within(g.all_bits() & !mask).len() < 2);
        }
    }

    #[test]
    fn extension_of_p3() {
        let g = Graph::from_user(&["x", "y", "z"], &[("x", "y"), ("y", "z")]).unwrap();
        let (ext, naming) = simplicial_extension(&g).unwrap();
        assert_eq!(ext.vertex_count(), 7);
        assert_eq!(ext.edge_count(), 2 + 4 * 2);
        assert!(!ext.has_edge(&vid("x"), &vid("z")));
        for a in &naming.added {
            assert_eq!(link(&ext, &a.fresh).unwrap(), a.clique);
        }
        assert_eq!(naming.added[0].fresh.as_str(), "$x(0,x)");
    }

    #[test]
    fn extension_of_k3_and_k1() {
        let (ext, naming) = simplicial_extension(&complete(3)).unwrap();
        assert_eq!(ext.vertex_count(), 6);
        assert_eq!(naming.added.len(), 3);
        for a in &naming.added {
            assert_eq!(link(&ext, &a.fresh).unwrap().len(), 3);
        }
        let (k2, _) = simplicial_extension(&complete(1)).unwrap();
        assert!(k2.is_complete());
        assert_eq!(k2.vertex_count(), 2);
    }

    #[test]
    fn co_contraction_examples() {
        let d = Graph::from_user(&["a", "b"], &[]).unwrap();
        let k1 = co_contract(&d, &names(&["a", "b"])).unwrap();
        assert_eq!(k1.vertex_count(), 1);
        assert_eq!(k1.name(0).as_str(), "$co(a,b)");
        assert_eq!(co_contract_edge(&d, &vid("a"), &vid("b")).unwrap(), k1);

        let c5 = Graph::from_user(
            &["a", "b", "c", "d", "e"],
            &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "e"), ("e", "a")],
        )
        .unwrap();
        let two_k2 = disjoint_union(&complete(2), &Graph::from_user(&["x", "y"], &[("x", "y")]).unwrap()).unwrap();
        let out = co_contract(&c5, &names(&["a", "c"])).unwrap();
        assert!(is_isomorphic(&out, &two_k2).is_some());
        assert!(is_isomorphic(&co_contract_edge(&c5, &vid("a"), &vid("c")).unwrap(), &two_k2).is_some());

        assert_eq!(
            co_contract_edge(&c5, &vid("a"), &vid("b")),
            Err(GraphError::IsAnEdge("a".into(), "b".into()))
        );
        assert_eq!(co_contract(&c5, &names(&["a", "b"])), Err(GraphError::DisconnectedCoComplement));
        assert_eq!(co_contract(&c5, &[]), Err(GraphError::EmptySet));
    }

    #[test]
    fn nested_names_flatten() {
        let d = discrete(3);
        let once = co_contract_edge(&d, &vid("v1"), &vid("v2")).unwrap();
        let twice = co_contract_edge(&once, &vid("$co(v1,v2)"), &vid("v3")).unwrap();
        assert_eq!(twice.vertices(), &names(&["$co(v1,v2,v3)"])[..]);
        assert_eq!(co_contract(&d, d.vertices()).unwrap(), twice);
    }
}
