//! Derivations in the closure class `F`: the smallest class containing every
//! complete graph (including the empty one) and closed under joins, clique
//! amalgamation, adding a bisimplicial edge, and co-contraction.
//!
//! A derivation concluding `G` certifies that `A(G)` has no hyperbolic
//! surface-group relative embedding, hence no closed hyperbolic surface
//! subgroup. The search runs the rules backwards; co-contraction is never
//! searched (its pre-images are unbounded) but is accepted by the checker.

use std::collections::{BTreeSet, HashMap};
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::graph::{canonical_form, emit_graph, Bits, EmitFormat, Graph, VertexId};
use crate::ops::{bisimplicial_idx, complement, first_clique_separator, induced_bits, toggle_edge, CliqueSplit};

pub const DEFAULT_BUDGET: usize = 10_000;

/// Graphs above this size are not memoised (canonical forms get expensive).
pub const MEMO_MAX_VERTICES: usize = 12;

/// One inference step. The conclusion lives in [`Derivation::graph`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule")]
pub enum Rule {
    /// The conclusion is complete.
    CompleteBase,
    /// The conclusion is the join of the two children, whose vertex sets are
    /// `left` and `right`.
    JoinRule { left: Vec<VertexId>, right: Vec<VertexId> },
    /// The conclusion is the amalgam of the two children over the clique
    /// `split.separator`.
    AmalgamRule { split: CliqueSplit },
    /// The conclusion is the child plus `edge`, which is bisimplicial in the
    /// conclusion.
    BisimplicialRule { edge: (VertexId, VertexId) },
    /// The conclusion is isomorphic to the child co-contracted at `set`.
    CoContractRule { set: Vec<VertexId> },
}

impl Rule {
    pub fn kind(&self) -> RuleKind {
        match self {
            Rule::CompleteBase => RuleKind::CompleteBase,
            Rule::JoinRule { .. } => RuleKind::Join,
            Rule::AmalgamRule { .. } => RuleKind::Amalgam,
            Rule::BisimplicialRule { .. } => RuleKind::Bisimplicial,
            Rule::CoContractRule { .. } => RuleKind::CoContract,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RuleKind {
    CompleteBase,
    Join,
    Amalgam,
    Bisimplicial,
    CoContract,
}

impl RuleKind {
    pub fn tag(self) -> &'static str {
        match self {
            RuleKind::CompleteBase => "CompleteBase",
            RuleKind::Join => "JoinRule",
            RuleKind::Amalgam => "AmalgamRule",
            RuleKind::Bisimplicial => "BisimplicialRule",
            RuleKind::CoContract => "CoContractRule",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Derivation {
    pub graph: Graph,
    #[serde(flatten)]
    pub rule: Rule,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<Derivation>,
}

impl Derivation {
    /// Rule kinds used anywhere in the tree.
    pub fn rules_used(&self) -> BTreeSet<RuleKind> {
        let mut out = BTreeSet::new();
        let mut stack = vec![self];
        while let Some(d) = stack.pop() {
            out.insert(d.rule.kind());
            stack.extend(d.children.iter());
        }
        out
    }

    pub fn node_count(&self) -> usize {
        1 + self.children.iter().map(Derivation::node_count).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self.children.iter().map(Derivation::depth).max().unwrap_or(0)
    }

    fn relabel(&self, map: &HashMap<VertexId, VertexId>) -> Derivation {
        let r = |v: &VertexId| map[v].clone();
        let rs = |vs: &[VertexId]| {
            let mut out: Vec<VertexId> = vs.iter().map(r).collect();
            out.sort();
            out
        };
        let rule = match &self.rule {
            Rule::CompleteBase => Rule::CompleteBase,
            Rule::JoinRule { left, right } => Rule::JoinRule { left: rs(left), right: rs(right) },
            Rule::AmalgamRule { split } => Rule::AmalgamRule {
                split: CliqueSplit {
                    left: relabel_graph(&split.left, map),
                    right: relabel_graph(&split.right, map),
                    separator: rs(&split.separator),
                },
            },
            Rule::BisimplicialRule { edge: (a, b) } => {
                let (a, b) = (r(a), r(b));
                Rule::BisimplicialRule { edge: if a < b { (a, b) } else { (b, a) } }
            }
            Rule::CoContractRule { set } => Rule::CoContractRule { set: rs(set) },
        };
        Derivation {
            graph: relabel_graph(&self.graph, map),
            rule,
            children: self.children.iter().map(|c| c.relabel(map)).collect(),
        }
    }
}

fn relabel_graph(g: &Graph, map: &HashMap<VertexId, VertexId>) -> Graph {
    let vs: Vec<VertexId> = g.vertices().iter().map(|v| map[v].clone()).collect();
    let es = g.edges().into_iter().map(|(a, b)| (map[&a].clone(), map[&b].clone()));
    Graph::new(vs, es).expect("relabelling is a bijection")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProverConfig {
    /// Maximum number of expanded search nodes.
    pub budget: usize,
    /// Order in which backward rules are tried at each node.
    pub rule_order: Vec<RuleKind>,
    /// Prove the two sides of a split on separate threads.
    pub parallel: bool,
}

impl Default for ProverConfig {
    fn default() -> Self {
        ProverConfig {
            budget: DEFAULT_BUDGET,
            rule_order: vec![RuleKind::CompleteBase, RuleKind::Amalgam, RuleKind::Bisimplicial, RuleKind::Join],
            parallel: false,
        }
    }
}

/// What the search did, reported with every outcome.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub nodes_expanded: usize,
    pub budget: usize,
    pub budget_exhausted: bool,
    pub rules_attempted: Vec<String>,
    /// First graph met to which no backward rule applied.
    pub stuck_graph: Option<String>,
}

#[derive(Debug, Clone)]
pub struct ProofOutcome {
    pub derivation: Option<Derivation>,
    pub report: SearchReport,
}

type Memo = HashMap<Vec<Bits>, Option<(Derivation, Vec<usize>)>>;

struct Search<'a> {
    config: &'a ProverConfig,
    nodes: AtomicUsize,
    exhausted: AtomicBool,
    memo: Mutex<Memo>,
    attempted: Mutex<BTreeSet<RuleKind>>,
    stuck: Mutex<Option<Graph>>,
}

/// Result of one subproblem; `clean` is false when the budget cut it short,
/// in which case a failure must not be memoised.
struct Sub {
    d: Option<Derivation>,
    clean: bool,
}

impl Search<'_> {
    fn prove(&self, g: &Graph) -> Sub {
        if g.is_complete() && self.config.rule_order.contains(&RuleKind::CompleteBase) {
            self.attempted.lock().expect("poisoned").insert(RuleKind::CompleteBase);
            return Sub { d: Some(Derivation { graph: g.clone(), rule: Rule::CompleteBase, children: vec![] }), clean: true };
        }
        let key = (g.vertex_count() <= MEMO_MAX_VERTICES).then(|| canonical_form(g));
        if let Some(cf) = &key {
            if let Some(hit) = self.memo.lock().expect("poisoned").get(cf.key()) {
                return Sub {
                    d: hit.as_ref().map(|(d, order)| {
                        let map = order.iter().zip(&cf.order).map(|(&s, &t)| (d.graph.name(s).clone(), g.name(t).clone())).collect();
                        d.relabel(&map)
                    }),
                    clean: true,
                };
            }
        }
        if self.nodes.fetch_add(1, Ordering::SeqCst) >= self.config.budget {
            self.exhausted.store(true, Ordering::SeqCst);
            return Sub { d: None, clean: false };
        }

        let mut clean = true;
        let mut applicable = false;
        let mut found = None;
        for &kind in &self.config.rule_order {
            let r = match kind {
                RuleKind::CompleteBase | RuleKind::CoContract => continue,
                RuleKind::Amalgam => self.amalgam(g),
                RuleKind::Bisimplicial => self.bisimplicial(g),
                RuleKind::Join => self.join(g),
            };
            if let Some(sub) = r {
                applicable = true;
                self.attempted.lock().expect("poisoned").insert(kind);
                clean &= sub.clean;
                if sub.d.is_some() {
                    found = sub.d;
                    break;
                }
            }
            if self.exhausted.load(Ordering::SeqCst) {
                clean = false;
                break;
            }
        }
        if !applicable {
            self.stuck.lock().expect("poisoned").get_or_insert_with(|| g.clone());
        }
        if let Some(cf) = key {
            if found.is_some() || clean {
                self.memo.lock().expect("poisoned").insert(cf.key().to_vec(), found.clone().map(|d| (d, cf.order.clone())));
            }
        }
        let clean = clean || found.is_some();
        Sub { d: found, clean }
    }

    fn both(&self, a: &Graph, b: &Graph) -> (Sub, Sub) {
        if self.config.parallel {
            rayon::join(|| self.prove(a), || self.prove(b))
        } else {
            let l = self.prove(a);
            if l.d.is_none() {
                return (l, Sub { d: None, clean: true });
            }
            (l, self.prove(b))
        }
    }

    fn amalgam(&self, g: &Graph) -> Option<Sub> {
        let split = first_clique_separator(g)?;
        let (l, r) = self.both(&split.left, &split.right);
        let clean = l.clean && r.clean;
        let d = match (l.d, r.d) {
            (Some(a), Some(b)) => Some(Derivation { graph: g.clone(), rule: Rule::AmalgamRule { split }, children: vec![a, b] }),
            _ => None,
        };
        Some(Sub { d, clean })
    }

    fn bisimplicial(&self, g: &Graph) -> Option<Sub> {
        let edges: Vec<(usize, usize)> = g.edge_indices().filter(|&(i, j)| bisimplicial_idx(g, i, j)).collect();
        if edges.is_empty() {
            return None;
        }
        let mut clean = true;
        for (i, j) in edges {
            let sub = self.prove(&toggle_edge(g, i, j));
            clean &= sub.clean;
            if let Some(c) = sub.d {
                let edge = (g.name(i).clone(), g.name(j).clone());
                return Some(Sub { d: Some(Derivation { graph: g.clone(), rule: Rule::BisimplicialRule { edge }, children: vec![c] }), clean });
            }
            if self.exhausted.load(Ordering::SeqCst) {
                return Some(Sub { d: None, clean: false });
            }
        }
        Some(Sub { d: None, clean })
    }

    fn join(&self, g: &Graph) -> Option<Sub> {
        let co = complement(g);
        let comps = co.components_within(co.all_bits());
        if comps.len() < 2 {
            return None;
        }
        let (lb, rb) = (comps[0], g.all_bits() & !comps[0]);
        let (l, r) = self.both(&induced_bits(g, lb), &induced_bits(g, rb));
        let clean = l.clean && r.clean;
        let d = match (l.d, r.d) {
            (Some(a), Some(b)) => Some(Derivation {
                graph: g.clone(),
                rule: Rule::JoinRule { left: g.names_of(lb), right: g.names_of(rb) },
                children: vec![a, b],
            }),
            _ => None,
        };
        Some(Sub { d, clean })
    }
}

fn stuck_text(g: &Graph) -> String {
    if g.vertex_count() <= 62 && g.vertices().iter().enumerate().all(|(i, v)| v.as_str() == format!("v{}", i + 1)) {
        emit_graph(g, EmitFormat::Graph6)
    } else {
        emit_graph(g, EmitFormat::Edgelist)
    }
}

/// Searches for a derivation of `g`, reporting what the search did.
pub fn prove_with(g: &Graph, config: &ProverConfig) -> ProofOutcome {
    let s = Search {
        config,
        nodes: AtomicUsize::new(0),
        exhausted: AtomicBool::new(false),
        memo: Mutex::new(HashMap::new()),
        attempted: Mutex::new(BTreeSet::new()),
        stuck: Mutex::new(None),
    };
    let sub = s.prove(g);
    let report = SearchReport {
        nodes_expanded: s.nodes.load(Ordering::SeqCst).min(config.budget),
        budget: config.budget,
        budget_exhausted: sub.d.is_none() && s.exhausted.load(Ordering::SeqCst),
        rules_attempted: s.attempted.into_inner().expect("poisoned").into_iter().map(|k| k.tag().to_string()).collect(),
        stuck_graph: s.stuck.into_inner().expect("poisoned").map(|g| stuck_text(&g)),
    };
    ProofOutcome { derivation: sub.d, report }
}

/// A derivation of `g` within `budget` expanded nodes, if the search finds one.
pub fn prove_in_f(g: &Graph, budget: usize) -> Option<Derivation> {
    prove_with(g, &ProverConfig { budget: budget.max(1), ..ProverConfig::default() }).derivation
}
