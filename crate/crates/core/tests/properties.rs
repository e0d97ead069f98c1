use std::collections::HashSet;

use proptest::prelude::*;

use raagscope::checker::check_derivation;
use raagscope::graph::{emit_graph, is_isomorphic, parse_graph, vid, EmitFormat, ParseFormat};
use raagscope::ops::{co_contract, complement, maximal_cliques, simplicial_extension};
use raagscope::prover::prove_in_f;
use raagscope::recognize::{is_chordal, is_chordal_bipartite, ChordalBipartite, Chordality};
use raagscope::words::{Letter, Word, WordEngine};
use raagscope::{Graph, VertexId};

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let vs: Vec<VertexId> = (1..=n).map(|i| vid(&format!("v{i}"))).collect();
            let mut es = Vec::new();
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if bits[k] {
                        es.push((vs[i].clone(), vs[j].clone()));
                    }
                    k += 1;
                }
            }
            Graph::new(vs, es).unwrap()
        })
    })
}

fn subsets(g: &Graph) -> impl Iterator<Item = Vec<&VertexId>> + '_ {
    let n = g.vertex_count();
    (0u32..1 << n).map(move |s| (0..n).filter(|i| s >> i & 1 == 1).map(|i| &g.vertices()[i]).collect())
}

fn is_induced_cycle(g: &Graph, sub: &[&VertexId]) -> bool {
    if sub.len() < 3 || !sub.iter().all(|v| sub.iter().filter(|w| g.has_edge(v, w)).count() == 2) {
        return false;
    }
    let mut seen = HashSet::from([sub[0]]);
    let mut stack = vec![sub[0]];
    while let Some(v) = stack.pop() {
        for w in sub {
            if g.has_edge(v, w) && seen.insert(*w) {
                stack.push(w);
            }
        }
    }
    seen.len() == sub.len()
}

fn brute_longest_hole(g: &Graph, min: usize) -> bool {
    subsets(g).any(|s| s.len() >= min && is_induced_cycle(g, &s))
}

fn is_clique(g: &Graph, s: &[&VertexId]) -> bool {
    s.iter().enumerate().all(|(i, v)| s[i + 1..].iter().all(|w| g.has_edge(v, w)))
}

fn arb_word(gens: usize, max_len: usize) -> impl Strategy<Value = Vec<(usize, bool)>> {
    proptest::collection::vec((0..gens, any::<bool>()), 0..=max_len)
}

fn word(w: &[(usize, bool)]) -> Word {
    Word(w.iter().map(|&(g, inv)| Letter::new(vid(&format!("v{}", g + 1)), inv)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn graph6_round_trip(g in arb_graph(10)) {
        let text = emit_graph(&g, EmitFormat::Graph6);
        let back = parse_graph(text.trim().as_bytes(), ParseFormat::Graph6).unwrap();
        // graph6 drops names; parsed vertices are v1..vn in encoding order
        prop_assert!(is_isomorphic(&back, &g).is_some());
        if g.vertex_count() < 10 {
            prop_assert_eq!(back, g.clone());
        }
        let el = emit_graph(&g, EmitFormat::Edgelist);
        prop_assert_eq!(parse_graph(el.as_bytes(), ParseFormat::Edgelist).unwrap(), g);
    }

    #[test]
    fn complement_is_an_involution(g in arb_graph(9)) {
        let co = complement(&g);
        let n = g.vertex_count();
        prop_assert_eq!(co.edge_count() + g.edge_count(), n * (n.saturating_sub(1)) / 2);
        prop_assert_eq!(complement(&co), g);
    }

    #[test]
    fn chordality_matches_brute_force(g in arb_graph(8)) {
        let brute = !brute_longest_hole(&g, 4);
        match is_chordal(&g) {
            Chordality::Chordal(cert) => {
                prop_assert!(brute);
                prop_assert!(cert.is_valid_for(&g));
            }
            Chordality::NotChordal(w) => {
                prop_assert!(!brute);
                prop_assert!(w.len() >= 4 && w.is_valid_for(&g));
            }
        }
    }

    #[test]
    fn chordal_bipartite_matches_brute_force(g in arb_graph(8)) {
        let triangle = subsets(&g).any(|s| s.len() == 3 && is_clique(&g, &s));
        let brute = !triangle && !brute_longest_hole(&g, 5);
        match is_chordal_bipartite(&g) {
            ChordalBipartite::Yes(order) => {
                prop_assert!(brute);
                prop_assert!(order.is_valid_for(&g));
            }
            ChordalBipartite::Triangle(w) | ChordalBipartite::LongCycle(w) => {
                prop_assert!(!brute);
                prop_assert!(w.is_valid_for(&g));
            }
        }
    }

    #[test]
    fn maximal_cliques_match_brute_force(g in arb_graph(8)) {
        let all: Vec<Vec<&VertexId>> = subsets(&g).filter(|s| !s.is_empty() && is_clique(&g, s)).collect();
        let maximal: HashSet<Vec<VertexId>> = all
            .iter()
            .filter(|s| !all.iter().any(|t| t.len() > s.len() && s.iter().all(|v| t.contains(v))))
            .map(|s| { let mut v: Vec<VertexId> = s.iter().map(|x| (*x).clone()).collect(); v.sort(); v })
            .collect();
        let got: HashSet<Vec<VertexId>> = maximal_cliques(&g).into_iter().map(|mut c| { c.sort(); c }).collect();
        prop_assert_eq!(got, maximal);
    }

    #[test]
    fn simplicial_extension_shape(g in arb_graph(7)) {
        let (ext, naming) = simplicial_extension(&g).unwrap();
        let added: usize = maximal_cliques(&g).iter().map(Vec::len).sum();
        prop_assert_eq!(ext.vertex_count(), g.vertex_count() + added);
        for x in &naming.added {
            let nbrs: Vec<VertexId> = ext.vertices().iter().filter(|v| ext.has_edge(&x.fresh, v)).cloned().collect();
            let mut clique = x.clique.clone();
            clique.sort();
            prop_assert_eq!(nbrs, clique);
        }
    }

    #[test]
    fn co_contraction_of_complete_set_is_a_point(g in arb_graph(7)) {
        // Merging an independent set with connected complement: the set's
        // complement is complete, hence connected whenever it has >= 1 vertex.
        let vs = g.vertices();
        let indep: Vec<VertexId> = vs.iter().filter(|v| {
            vs.iter().take_while(|w| w < v).all(|w| !g.has_edge(v, w))
        }).cloned().collect();
        if let Ok(h) = co_contract(&g, &indep) {
            prop_assert_eq!(h.vertex_count(), g.vertex_count() - indep.len() + 1);
        }
    }

    #[test]
    fn derivations_always_check(g in arb_graph(7)) {
        if let Some(d) = prove_in_f(&g, 10_000) {
            prop_assert!(check_derivation(&d, &g));
            prop_assert!(is_isomorphic(&d.graph, &g).is_some());
        }
    }

    #[test]
    fn normal_form_laws(g in arb_graph(4), w in arb_word(4, 12), v in arb_word(4, 8)) {
        let n = g.vertex_count();
        let w: Vec<(usize, bool)> = w.into_iter().filter(|(x, _)| *x < n).collect();
        let v: Vec<(usize, bool)> = v.into_iter().filter(|(x, _)| *x < n).collect();
        let (w, v) = (word(&w), word(&v));
        let e = WordEngine::new(&g);
        let nf = e.normal_form(&w).unwrap();
        prop_assert_eq!(e.normal_form(&nf).unwrap(), nf.clone());
        prop_assert!(nf.len() <= w.len());
        prop_assert!(e.are_equal(&nf, &w).unwrap());
        prop_assert!(e.is_trivial(&w.concat(&w.inverse())).unwrap());
        prop_assert_eq!(e.normal_form(&w.concat(&v)).unwrap(), e.normal_form(&nf.concat(&e.normal_form(&v).unwrap())).unwrap());
        let c = e.cyclic_normal_form(&w).unwrap();
        prop_assert!(e.are_equal(&c.conjugator.concat(&c.core).concat(&c.conjugator.inverse()), &w).unwrap());
        let shifted = v.concat(&w).concat(&v.inverse());
        prop_assert_eq!(e.cyclic_normal_form(&shifted).unwrap().core, c.core);
    }
}
