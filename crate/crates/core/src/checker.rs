//! Independent replay of [`Derivation`]s.
//!
//! Every node is re-validated from its own data using only basic graph
//! operations; nothing the prover computed is trusted.

use std::collections::BTreeSet;

use crate::graph::{is_isomorphic, Graph, VertexId};
use crate::ops::{co_contract, induced, is_bisimplicial_edge, join, remove_edge_interior};
use crate::prover::{Derivation, Rule};

/// True iff every node re-validates and the root concludes a graph
/// isomorphic to `g`.
pub fn check_derivation(d: &Derivation, g: &Graph) -> bool {
    is_isomorphic(&d.graph, g).is_some() && check_node(d)
}

/// The first node that fails, as a path of child indices from the root.
pub fn first_failure(d: &Derivation) -> Option<Vec<usize>> {
    if !check_local(d) {
        return Some(Vec::new());
    }
    d.children.iter().enumerate().find_map(|(i, c)| {
        first_failure(c).map(|mut p| {
            p.insert(0, i);
            p
        })
    })
}

fn check_node(d: &Derivation) -> bool {
    check_local(d) && d.children.iter().all(check_node)
}

fn vertex_set(g: &Graph) -> BTreeSet<&VertexId> {
    g.vertices().iter().collect()
}

fn check_local(d: &Derivation) -> bool {
    let g = &d.graph;
    match &d.rule {
        Rule::CompleteBase => d.children.is_empty() && g.is_complete(),
        Rule::JoinRule { left, right } => {
            let [a, b] = d.children.as_slice() else { return false };
            let l: BTreeSet<&VertexId> = left.iter().collect();
            let r: BTreeSet<&VertexId> = right.iter().collect();
            !l.is_empty()
                && !r.is_empty()
                && l.len() == left.len()
                && r.len() == right.len()
                && l == vertex_set(&a.graph)
                && r == vertex_set(&b.graph)
                && join(&a.graph, &b.graph).is_ok_and(|j| &j == g)
        }
        Rule::AmalgamRule { split } => {
            let [a, b] = d.children.as_slice() else { return false };
            if a.graph != split.left || b.graph != split.right {
                return false;
            }
            let sep: BTreeSet<&VertexId> = split.separator.iter().collect();
            let (va, vb) = (vertex_set(&a.graph), vertex_set(&b.graph));
            let shared: BTreeSet<&VertexId> = va.intersection(&vb).copied().collect();
            let all: BTreeSet<&VertexId> = va.union(&vb).copied().collect();
            if sep.len() != split.separator.len() || shared != sep || all != vertex_set(g) {
                return false;
            }
            let (Ok(ka), Ok(kb)) = (induced(&a.graph, sep.iter().copied()), induced(&b.graph, sep.iter().copied())) else {
                return false;
            };
            if !ka.is_complete() || ka != kb {
                return false;
            }
            let mut edges: BTreeSet<(VertexId, VertexId)> = a.graph.edges().into_iter().collect();
            edges.extend(b.graph.edges());
            edges == g.edges().into_iter().collect()
        }
        Rule::BisimplicialRule { edge: (u, v) } => {
            let [c] = d.children.as_slice() else { return false };
            g.has_edge(u, v)
                && is_bisimplicial_edge(g, u, v).unwrap_or(false)
                && remove_edge_interior(g, u, v).is_ok_and(|h| h == c.graph)
        }
        Rule::CoContractRule { set } => {
            let [c] = d.children.as_slice() else { return false };
            co_contract(&c.graph, set).is_ok_and(|h| is_isomorphic(&h, g).is_some())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, path, vid};
    use crate::prover::prove_in_f;

    #[test]
    fn accepts_prover_output() {
        for g in [path(3), cycle(4), path(6)] {
            let d = prove_in_f(&g, 1000).unwrap();
            assert!(check_derivation(&d, &g));
            assert_eq!(first_failure(&d), None);
        }
    }

    #[test]
    fn rejects_non_clique_separator() {
        let g = path(3);
        let mut d = prove_in_f(&g, 10).unwrap();
        if let Rule::AmalgamRule { split } = &mut d.rule {
            split.separator = vec![vid("v1"), vid("v3")];
        }
        assert!(!check_derivation(&d, &g));
        assert_eq!(first_failure(&d), Some(vec![]));
    }

    #[test]
    fn rejects_non_bisimplicial_edge() {
        // v1v3 is a chord of C4 that is not there.
        let g = cycle(4);
        let mut d = prove_in_f(&g, 100).unwrap();
        if let Rule::BisimplicialRule { edge } = &mut d.rule {
            *edge = (vid("v1"), vid("v3"));
        }
        assert!(!check_derivation(&d, &g));
    }

    #[test]
    fn rejects_wrong_root() {
        let d = prove_in_f(&path(4), 100).unwrap();
        assert!(!check_derivation(&d, &cycle(4)));
    }

    #[test]
    fn cocontract_node() {
        // C4 co-contracted at two opposite vertices is P3.
        let c4 = cycle(4);
        let child = prove_in_f(&c4, 100).unwrap();
        let h = co_contract(&c4, &[vid("v1"), vid("v3")]).unwrap();
        let d = Derivation { graph: h.clone(), rule: Rule::CoContractRule { set: vec![vid("v1"), vid("v3")] }, children: vec![child] };
        assert!(check_derivation(&d, &path(3)));
        let bad = Derivation { rule: Rule::CoContractRule { set: vec![vid("v1"), vid("v2")] }, ..d };
        assert!(!check_derivation(&bad, &path(3)));
    }
}
