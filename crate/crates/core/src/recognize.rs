//! Chordality and chordal-bipartiteness, each with a positive certificate
//! and a negative witness.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::graph::{bit, ones, Bits, Graph, VertexId};
use crate::ops::{bisimplicial_idx, toggle_edge};

/// An induced cycle, listed in cyclic order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleWitness {
    pub vertices: Vec<VertexId>,
}

impl CycleWitness {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Consecutive vertices adjacent, all other pairs non-adjacent, no repeats.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        let n = self.vertices.len();
        if n < 3 {
            return false;
        }
        let Ok(idx) = self.vertices.iter().map(|v| g.require(v)).collect::<Result<Vec<_>, _>>() else {
            return false;
        };
        let distinct: HashSet<usize> = idx.iter().copied().collect();
        if distinct.len() != n {
            return false;
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let consecutive = j == i + 1 || (i == 0 && j == n - 1);
                if g.adjacent_idx(idx[i], idx[j]) != consecutive {
                    return false;
                }
            }
        }
        true
    }
}

/// A shortest induced cycle of length at least `min_len`, if any.
///
/// Among shortest cycles the one whose vertex sequence (starting at its least
/// vertex, heading to the smaller neighbour) is least is returned.
pub fn find_induced_cycle(g: &Graph, min_len: usize) -> Option<CycleWitness> {
    let min_len = min_len.max(3);
    let mut best: Option<Vec<usize>> = None;
    let mut path = Vec::new();

    fn extend(g: &Graph, min_len: usize, path: &mut Vec<usize>, on_path: Bits, best: &mut Option<Vec<usize>>) {
        let k = path.len();
        if best.as_ref().is_some_and(|b| k + 1 >= b.len()) {
            return;
        }
        let s = path[0];
        let last = path[k - 1];
        let interior: Bits = path.get(1..k.saturating_sub(1)).unwrap_or(&[]).iter().fold(0, |acc, &i| acc | bit(i));
        for w in ones(g.adj_bits(last) & !on_path) {
            if w < s || g.adj_bits(w) & interior != 0 {
                continue;
            }
            if k >= 2 && g.adjacent_idx(w, s) {
                if k + 1 >= min_len && path[1] < w && best.as_ref().is_none_or(|b| k + 1 < b.len()) {
                    let mut c = path.clone();
                    c.push(w);
                    *best = Some(c);
                }
                continue;
            }
            path.push(w);
            extend(g, min_len, path, on_path | bit(w), best);
            path.pop();
        }
    }

    for s in 0..g.vertex_count() {
        path.clear();
        path.push(s);
        extend(g, min_len, &mut path, bit(s), &mut best);
    }
    best.map(|c| CycleWitness { vertices: c.into_iter().map(|i| g.name(i).clone()).collect() })
}

/// A perfect elimination ordering.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChordalCertificate {
    pub order: Vec<VertexId>,
}

impl ChordalCertificate {
    /// Each vertex must be simplicial in the subgraph induced on itself and
    /// all later vertices.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        if self.order.len() != g.vertex_count() {
            return false;
        }
        let Ok(idx) = self.order.iter().map(|v| g.require(v)).collect::<Result<Vec<_>, _>>() else {
            return false;
        };
        let mut remaining = g.all_bits();
        for &i in &idx {
            if remaining & bit(i) == 0 {
                return false;
            }
            if !g.is_clique_bits(g.adj_bits(i) & remaining) {
                return false;
            }
            remaining &= !bit(i);
        }
        true
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Chordality {
    Chordal(ChordalCertificate),
    NotChordal(CycleWitness),
}

/// Greedy simplicial elimination, least vertex first. If it gets stuck the
/// residual graph has no simplicial vertex, and a shortest induced cycle of
/// length at least 4 through some vertex is extracted from it.
pub fn is_chordal(g: &Graph) -> Chordality {
    let mut remaining = g.all_bits();
    let mut order = Vec::with_capacity(g.vertex_count());
    while remaining != 0 {
        let next = ones(remaining).find(|&i| g.is_clique_bits(g.adj_bits(i) & remaining));
        match next {
            Some(i) => {
                order.push(g.name(i).clone());
                remaining &= !bit(i);
            }
            None => {
                let cycle = stuck_cycle(g, remaining).expect("a graph without simplicial vertices has a long induced cycle");
                return Chordality::NotChordal(cycle);
            }
        }
    }
    Chordality::Chordal(ChordalCertificate { order })
}

/// For each vertex `v` and non-adjacent neighbours `x < y`, a shortest `x`–`y`
/// path avoiding the rest of `N[v]` closes an induced cycle through `v`.
fn stuck_cycle(g: &Graph, within: Bits) -> Option<CycleWitness> {
    let mut best: Option<Vec<usize>> = None;
    for v in ones(within) {
        let nv = g.adj_bits(v) & within;
        for x in ones(nv) {
            for y in ones(nv & !g.adj_bits(x)) {
                if y <= x {
                    continue;
                }
                let allowed = within & !(nv | bit(v)) | bit(x) | bit(y);
                if let Some(p) = shortest_path(g, allowed, x, y) {
                    if best.as_ref().is_none_or(|b| p.len() + 1 < b.len()) {
                        let mut c = vec![v];
                        c.extend(p);
                        best = Some(c);
                    }
                }
            }
        }
    }
    best.map(|c| CycleWitness { vertices: c.into_iter().map(|i| g.name(i).clone()).collect() })
}

fn shortest_path(g: &Graph, allowed: Bits, from: usize, to: usize) -> Option<Vec<usize>> {
    let mut prev = vec![usize::MAX; g.vertex_count()];
    let mut seen = bit(from);
    let mut queue = VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        if u == to {
            let mut p = vec![to];
            let mut cur = to;
            while cur != from {
                cur = prev[cur];
                p.push(cur);
            }
            p.reverse();
            return Some(p);
        }
        for w in ones(g.adj_bits(u) & allowed & !seen) {
            seen |= bit(w);
            prev[w] = u;
            queue.push_back(w);
        }
    }
    None
}

/// Edges removed one at a time, each bisimplicial when removed, ending at a
/// graph with no edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeEliminationOrder {
    pub edges: Vec<(VertexId, VertexId)>,
}

impl EdgeEliminationOrder {
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        let mut cur = g.clone();
        for (a, b) in &self.edges {
            let (Some(i), Some(j)) = (cur.index_of(a), cur.index_of(b)) else { return false };
            if i == j || !cur.adjacent_idx(i, j) || !bisimplicial_idx(&cur, i, j) {
                return false;
            }
            cur = toggle_edge(&cur, i, j);
        }
        cur.edge_count() == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChordalBipartite {
    Yes(EdgeEliminationOrder),
    Triangle(CycleWitness),
    LongCycle(CycleWitness),
}

fn find_triangle(g: &Graph) -> Option<CycleWitness> {
    for (i, j) in g.edge_indices() {
        if let Some(k) = ones(g.adj_bits(i) & g.adj_bits(j)).find(|&k| k > j) {
            return Some(CycleWitness { vertices: vec![g.name(i).clone(), g.name(j).clone(), g.name(k).clone()] });
        }
    }
    None
}

/// Decides by searching for a triangle or an induced cycle of length at
/// least 5. On a positive answer, an elimination order is then found by
/// removing the least bisimplicial edge each time, backtracking if that
/// ever gets stuck.
pub fn is_chordal_bipartite(g: &Graph) -> ChordalBipartite {
    if let Some(t) = find_triangle(g) {
        return ChordalBipartite::Triangle(t);
    }
    if let Some(c) = find_induced_cycle(g, 5) {
        return ChordalBipartite::LongCycle(c);
    }
    let order = bisimplicial_elimination(g).expect("chordal bipartite graphs eliminate to a discrete graph");
    ChordalBipartite::Yes(order)
}

/// Searches for a bisimplicial edge-elimination order of any graph.
pub fn bisimplicial_elimination(g: &Graph) -> Option<EdgeEliminationOrder> {
    fn go(g: &Graph, dead: &mut HashSet<Graph>, out: &mut Vec<(usize, usize)>) -> bool {
        if g.edge_count() == 0 {
            return true;
        }
        if dead.contains(g) {
            return false;
        }
        let candidates: Vec<(usize, usize)> = g.edge_indices().filter(|&(i, j)| bisimplicial_idx(g, i, j)).collect();
        for (i, j) in candidates {
            out.push((i, j));
            if go(&toggle_edge(g, i, j), dead, out) {
                return true;
            }
            out.pop();
        }
        dead.insert(g.clone());
        false
    }
    let mut out = Vec::new();
    let mut dead = HashSet::new();
    if !go(g, &mut dead, &mut out) {
        return None;
    }
    Some(EdgeEliminationOrder {
        edges: out.into_iter().map(|(i, j)| (g.name(i).clone(), g.name(j).clone())).collect(),
    })
}
