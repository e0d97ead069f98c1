//! Witnesses that `A(G)` contains a closed hyperbolic surface group.
//!
//! A witness is an induced copy of a catalog graph, either in `G` itself or
//! in a graph that `G` co-contracts onto. Both steps induce embeddings of
//! right-angled Artin groups, so the catalog graph's surface subgroup
//! transfers to `A(G)`.
//!
//! The catalog holds the cycle families `C_n` and `co-C_n` (`n >= 5`),
//! generated on demand, plus three fixed graphs stored by their complements:
//! `P1(8)` and the two graphs `Gamma1`, `Gamma2` that co-contract onto it.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{CertError, GraphError};
use crate::graph::{canonical_form, cycle, find_induced, is_isomorphic, standard_graph, Graph, StandardKind, VertexId, VertexMap};
use crate::ops::{co_contract_edge, complement};
use crate::recognize::find_induced_cycle;

/// Default number of co-contraction steps explored.
pub const DEFAULT_COCONTRACT_DEPTH: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EntryRole {
    /// Scanned for as an induced subgraph.
    Base,
    /// Reached from a base entry by co-contraction; kept for reference and
    /// verification only, so that searches report the co-contraction trail.
    Derived,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForbiddenEntry {
    pub name: String,
    pub graph: Graph,
    pub provenance: String,
    pub role: EntryRole,
}

/// Complement edge lists as transcribed.
const P1_8_VERTICES: [&str; 8] = ["p", "q", "r", "s", "t", "ab", "u", "w"];
const P1_8_COMPLEMENT: [(&str, &str); 12] = [
    ("p", "q"), ("p", "r"), ("r", "q"), ("s", "q"), ("t", "r"), ("t", "s"),
    ("ab", "s"), ("t", "ab"), ("u", "ab"), ("w", "ab"), ("u", "s"), ("t", "w"),
];
const GAMMA1_VERTICES: [&str; 9] = ["p", "q", "r", "s", "t", "b", "a", "u", "w"];
const GAMMA1_COMPLEMENT: [(&str, &str); 15] = [
    ("p", "q"), ("p", "r"), ("r", "q"), ("s", "q"), ("t", "r"), ("t", "s"),
    ("b", "s"), ("t", "b"), ("a", "b"), ("u", "b"), ("a", "s"), ("u", "s"),
    ("t", "a"), ("w", "a"), ("t", "w"),
];
const GAMMA2_VERTICES: [&str; 10] = ["p", "q", "r", "s", "t", "d", "b", "c", "u", "w"];
const GAMMA2_COMPLEMENT: [(&str, &str); 18] = [
    ("p", "q"), ("p", "r"), ("r", "q"), ("s", "q"), ("t", "r"), ("t", "s"),
    ("d", "s"), ("t", "d"), ("b", "d"), ("c", "d"), ("b", "s"), ("t", "c"),
    ("u", "b"), ("u", "s"), ("t", "w"), ("w", "c"), ("c", "s"), ("t", "b"),
];

fn from_complement(vertices: &[&str], complement_edges: &[(&str, &str)]) -> Graph {
    complement(&Graph::from_user(vertices, complement_edges).expect("transcribed graph is valid"))
}

pub fn p1_8() -> Graph {
    from_complement(&P1_8_VERTICES, &P1_8_COMPLEMENT)
}

pub fn gamma1() -> Graph {
    from_complement(&GAMMA1_VERTICES, &GAMMA1_COMPLEMENT)
}

pub fn gamma2() -> Graph {
    from_complement(&GAMMA2_VERTICES, &GAMMA2_COMPLEMENT)
}

/// `co-C_n` with the vertex names of `C_n`.
pub fn co_cycle(n: usize) -> Graph {
    complement(&cycle(n))
}

/// Checks the transcription against the contraction chain
/// `Gamma2 -> Gamma1 -> P1(8)`: contracting the complement edge `{c, d}` of
/// `Gamma2` gives `Gamma1`, and contracting `{a, b}` of `Gamma1` gives `P1(8)`.
pub fn transcription_self_test() -> Result<(), String> {
    let v = |s: &str| VertexId::new(s).expect("valid");
    let g1 = gamma1();
    let g2 = gamma2();
    let p = p1_8();
    if complement(&g1).edge_count() != 15 || complement(&p).edge_count() != 12 || complement(&g2).edge_count() != 18 {
        return Err("complement edge counts differ from the transcription".into());
    }
    let step1 = co_contract_edge(&g1, &v("a"), &v("b")).map_err(|e| e.to_string())?;
    if is_isomorphic(&step1, &p).is_none() {
        return Err("Gamma1 contracted at {a,b} is not P1(8)".into());
    }
    let step2 = co_contract_edge(&g2, &v("c"), &v("d")).map_err(|e| e.to_string())?;
    if is_isomorphic(&step2, &g1).is_none() {
        return Err("Gamma2 contracted at {c,d} is not Gamma1".into());
    }
    Ok(())
}

#[derive(Debug, Clone, Deserialize)]
struct CatalogRecord {
    name: String,
    provenance: String,
    vertices: Vec<String>,
    complement_edges: Vec<(String, String)>,
}

/// Forbidden graphs: the generated cycle families, the fixed transcribed graphs,
/// and any user-supplied entries.
#[derive(Debug, Clone)]
pub struct Catalog {
    fixed: Vec<ForbiddenEntry>,
}

impl Default for Catalog {
    fn default() -> Self {
        Self::builtin()
    }
}

fn family_entry(name: &str) -> Option<ForbiddenEntry> {
    let (co, digits) = match name.strip_prefix("coC") {
        Some(d) => (true, d),
        None => (false, name.strip_prefix('C')?),
    };
    if digits.starts_with('0') || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let n: usize = digits.parse().ok()?;
    if n < 5 || n > crate::graph::MAX_VERTICES || (co && n == 5) {
        return None;
    }
    Some(if co {
        ForbiddenEntry {
            name: name.to_string(),
            graph: co_cycle(n),
            provenance: format!("complement of the cycle C{n}; A(co-C{n}) contains a closed hyperbolic surface group for n >= 5"),
            role: EntryRole::Base,
        }
    } else {
        ForbiddenEntry {
            name: name.to_string(),
            graph: cycle(n),
            provenance: format!("cycle C{n}; A(C{n}) contains a closed hyperbolic surface group for n >= 5"),
            role: EntryRole::Base,
        }
    })
}

impl Catalog {
    pub fn builtin() -> Self {
        let fixed = vec![
            ForbiddenEntry {
                name: "P1(8)".into(),
                graph: p1_8(),
                provenance: "Crisp-Sageev-Sapir (2008) forbidden graph P1(8); complement has 8 vertices and 12 edges".into(),
                role: EntryRole::Base,
            },
            ForbiddenEntry {
                name: "Gamma1".into(),
                graph: gamma1(),
                provenance: "co-contracts onto P1(8) by merging the complement edge {a,b}; absence of the other 2008 forbidden graphs is not checked".into(),
                role: EntryRole::Derived,
            },
            ForbiddenEntry {
                name: "Gamma2".into(),
                graph: gamma2(),
                provenance: "co-contracts onto Gamma1 by merging the complement edge {c,d}; absence of the other 2008 forbidden graphs is not checked".into(),
                role: EntryRole::Derived,
            },
        ];
        Catalog { fixed }
    }

    /// Adds entries from a JSON array of
    /// `{name, provenance, vertices, complement_edges}` records.
    pub fn load_json(&mut self, text: &str) -> Result<usize, CertError> {
        let records: Vec<CatalogRecord> = serde_json::from_str(text).map_err(|e| CertError::Catalog(e.to_string()))?;
        let count = records.len();
        for r in records {
            if r.provenance.trim().is_empty() {
                return Err(CertError::Catalog(format!("entry {:?} has no provenance", r.name)));
            }
            if r.name.trim().is_empty() || self.lookup(&r.name).is_some() {
                return Err(CertError::Catalog(format!("duplicate or empty entry name {:?}", r.name)));
            }
            let vs: Vec<&str> = r.vertices.iter().map(String::as_str).collect();
            let es: Vec<(&str, &str)> = r.complement_edges.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
            let co = Graph::from_user(&vs, &es)?;
            self.fixed.push(ForbiddenEntry {
                name: r.name,
                graph: complement(&co),
                provenance: r.provenance,
                role: EntryRole::Base,
            });
        }
        Ok(count)
    }

    /// The fixed and user-supplied entries (not the generated families).
    pub fn entries(&self) -> &[ForbiddenEntry] {
        &self.fixed
    }

    pub fn lookup(&self, name: &str) -> Option<ForbiddenEntry> {
        self.fixed.iter().find(|e| e.name == name).cloned().or_else(|| family_entry(name))
    }

    /// The catalog as listed to users: `C5..C9`, `coC6..coC9` and the fixed
    /// entries. (`co-C5` is `C5` again and is not listed twice.)
    pub fn listing(&self) -> Vec<ForbiddenEntry> {
        let mut out = Vec::new();
        for n in 5..=9 {
            out.extend(family_entry(&format!("C{n}")));
            out.extend(family_entry(&format!("coC{n}")));
        }
        out.extend(self.fixed.iter().cloned());
        out
    }

    fn base_fixed(&self) -> Vec<&ForbiddenEntry> {
        let mut v: Vec<&ForbiddenEntry> = self.fixed.iter().filter(|e| e.role == EntryRole::Base).collect();
        v.sort_by(|a, b| (a.graph.vertex_count(), &a.name).cmp(&(b.graph.vertex_count(), &b.name)));
        v
    }
}

/// The built-in catalog listing.
pub fn builtin_catalog() -> Vec<ForbiddenEntry> {
    Catalog::builtin().listing()
}

/// Named graphs: catalog entries (`C7`, `coC6`, `P1(8)`, `Gamma1`, ...),
/// `K<n>`, `P<n>`, `D<n>` (discrete), `C<n>` for `n >= 3`, and `K<m>,<n>`.
pub fn builtin_graph(name: &str) -> Option<Graph> {
    if let Some(e) = Catalog::builtin().lookup(name) {
        return Some(e.graph);
    }
    let num = |s: &str| -> Option<usize> {
        (!s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())).then(|| s.parse().ok()).flatten()
    };
    let (head, rest) = name.split_at(name.find(|c: char| c.is_ascii_digit())?);
    match head {
        "K" => match rest.split_once(',') {
            Some((m, n)) => {
                let (m, n) = (num(m)?, num(n)?);
                let names: Vec<String> = (1..=m).map(|i| format!("a{i}")).chain((1..=n).map(|i| format!("b{i}"))).collect();
                let vs: Vec<&str> = names.iter().map(String::as_str).collect();
                let es: Vec<(&str, &str)> = vs[..m].iter().flat_map(|&a| vs[m..].iter().map(move |&b| (a, b))).collect();
                Graph::from_user(&vs, &es).ok()
            }
            None => standard_graph(StandardKind::Complete, num(rest)?).ok(),
        },
        "P" => standard_graph(StandardKind::Path, num(rest)?).ok(),
        "C" => standard_graph(StandardKind::Cycle, num(rest)?).ok(),
        "D" => standard_graph(StandardKind::Discrete, num(rest)?).ok(),
        _ => None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ObstructionKind {
    InducedForbidden,
    CoContractionTrail,
}

/// An induced catalog graph in `G`, or in the graph reached from `G` by
/// contracting the listed complement edges in order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Obstruction {
    pub kind: ObstructionKind,
    pub entry: String,
    /// Catalog-entry vertex -> host vertex.
    pub embedding: VertexMap,
    pub trail: Vec<(VertexId, VertexId)>,
}

fn cycle_embedding(n: usize, along: &[VertexId]) -> VertexMap {
    let names = cycle(n);
    names.vertices().iter().map(|v| {
        let i: usize = v.as_str()[1..].parse().expect("cycle names are v<i>");
        (v.clone(), along[i - 1].clone())
    }).collect()
}

/// First catalog entry, by increasing size, that `g` contains as an induced
/// subgraph. Derived entries are skipped.
pub fn find_forbidden_induced(g: &Graph, catalog: &Catalog) -> Option<Obstruction> {
    let n = g.vertex_count();
    let cyc = find_induced_cycle(g, 5);
    let co = complement(g);
    let co_cyc = find_induced_cycle(&co, 6);
    let fixed = catalog.base_fixed();
    let max_fixed = fixed.iter().map(|e| e.graph.vertex_count()).max().unwrap_or(0);
    for size in 1..=n {
        if let Some(c) = cyc.as_ref().filter(|c| c.len() == size) {
            return Some(Obstruction {
                kind: ObstructionKind::InducedForbidden,
                entry: format!("C{size}"),
                embedding: cycle_embedding(size, &c.vertices),
                trail: Vec::new(),
            });
        }
        if let Some(c) = co_cyc.as_ref().filter(|c| c.len() == size) {
            return Some(Obstruction {
                kind: ObstructionKind::InducedForbidden,
                entry: format!("coC{size}"),
                embedding: cycle_embedding(size, &c.vertices),
                trail: Vec::new(),
            });
        }
        if size > max_fixed {
            continue;
        }
        for e in fixed.iter().filter(|e| e.graph.vertex_count() == size) {
            if let Some(m) = find_induced(&e.graph, g) {
                return Some(Obstruction {
                    kind: ObstructionKind::InducedForbidden,
                    entry: e.name.clone(),
                    embedding: m,
                    trail: Vec::new(),
                });
            }
        }
    }
    None
}

/// Breadth-first search over chains of at most `max_depth` complement-edge
/// contractions, skipping graphs isomorphic to one already queued. Returns the
/// first chain whose end graph contains a catalog entry.
pub fn find_cocontraction_witness(g: &Graph, max_depth: usize, catalog: &Catalog) -> Option<Obstruction> {
    let mut seen: HashSet<Vec<u128>> = HashSet::from([canonical_form(g).key().to_vec()]);
    let mut level: Vec<(Graph, Vec<(VertexId, VertexId)>)> = vec![(g.clone(), Vec::new())];
    for depth in 0..=max_depth {
        for (h, trail) in &level {
            if let Some(mut o) = find_forbidden_induced(h, catalog) {
                if !trail.is_empty() {
                    o.kind = ObstructionKind::CoContractionTrail;
                    o.trail = trail.clone();
                }
                return Some(o);
            }
        }
        if depth == max_depth {
            break;
        }
        let mut next = Vec::new();
        for (h, trail) in &level {
            let co = complement(h);
            for (a, b) in co.edges() {
                let c = co_contract_edge(h, &a, &b).expect("complement edge contracts");
                if seen.insert(canonical_form(&c).key().to_vec()) {
                    let mut t = trail.clone();
                    t.push((a, b));
                    next.push((c, t));
                }
            }
        }
        if next.is_empty() {
            break;
        }
        level = next;
    }
    None
}

/// Replays the trail and re-checks the induced embedding of the named entry.
pub fn verify_obstruction(g: &Graph, o: &Obstruction, catalog: &Catalog) -> Result<bool, CertError> {
    let entry = catalog.lookup(&o.entry).ok_or_else(|| CertError::UnknownEntry(o.entry.clone()))?;
    let kind_ok = match o.kind {
        ObstructionKind::InducedForbidden => o.trail.is_empty(),
        ObstructionKind::CoContractionTrail => !o.trail.is_empty(),
    };
    if !kind_ok {
        return Ok(false);
    }
    let mut cur = g.clone();
    for (a, b) in &o.trail {
        match co_contract_edge(&cur, a, b) {
            Ok(next) => cur = next,
            Err(GraphError::IsAnEdge(..) | GraphError::UnknownVertex(_) | GraphError::LoopEdge(_) | GraphError::NameCollision(_)) => {
                return Ok(false)
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(o.embedding.is_induced_embedding(&entry.graph, &cur))
}
