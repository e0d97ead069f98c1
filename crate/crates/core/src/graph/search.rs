//! Backtracking isomorphism / induced-subgraph search and canonical forms.

use super::{bit, ones, Bits, Graph, VertexMap};

/// Finds an injective map `phi` from `pattern` into `host` such that
/// `{u,v}` is an edge of `pattern` iff `{phi u, phi v}` is an edge of `host`.
///
/// The search is deterministic: host candidates are tried in name order.
pub fn find_induced(pattern: &Graph, host: &Graph) -> Option<VertexMap> {
    search(pattern, host, false)
}

/// Returns an isomorphism `g -> h` when one exists.
pub fn is_isomorphic(g: &Graph, h: &Graph) -> Option<VertexMap> {
    if g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count() {
        return None;
    }
    let mut dg: Vec<usize> = (0..g.vertex_count()).map(|i| g.degree_idx(i)).collect();
    let mut dh: Vec<usize> = (0..h.vertex_count()).map(|i| h.degree_idx(i)).collect();
    dg.sort_unstable();
    dh.sort_unstable();
    if dg != dh {
        return None;
    }
    search(g, h, true)
}

/// Pattern vertices in placement order: each next vertex has the most
/// already-placed neighbours, ties broken by degree then index.
fn placement_order(p: &Graph) -> Vec<usize> {
    let n = p.vertex_count();
    let mut placed: Bits = 0;
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let next = (0..n)
            .filter(|&i| placed & bit(i) == 0)
            .max_by_key(|&i| ((p.adj_bits(i) & placed).count_ones(), p.degree_idx(i), std::cmp::Reverse(i)))
            .expect("unplaced vertex remains");
        placed |= bit(next);
        order.push(next);
    }
    order
}

fn search(pattern: &Graph, host: &Graph, exact_degree: bool) -> Option<VertexMap> {
    let n = pattern.vertex_count();
    if n > host.vertex_count() {
        return None;
    }
    let order = placement_order(pattern);
    let host_deg: Vec<usize> = (0..host.vertex_count()).map(|j| host.degree_idx(j)).collect();
    let mut image = vec![usize::MAX; pattern.vertex_count()];
    let mut used: Bits = 0;

    fn step(
        k: usize,
        order: &[usize],
        pattern: &Graph,
        host: &Graph,
        host_deg: &[usize],
        exact: bool,
        image: &mut [usize],
        used: &mut Bits,
    ) -> bool {
        if k == order.len() {
            return true;
        }
        let p = order[k];
        let pd = pattern.degree_idx(p);
        let mut cand = host.all_bits() & !*used;
        for &q in &order[..k] {
            let hq = host.adj_bits(image[q]);
            if pattern.adjacent_idx(p, q) {
                cand &= hq;
            } else {
                cand &= !hq;
            }
        }
        for j in ones(cand) {
            let ok = if exact { host_deg[j] == pd } else { host_deg[j] >= pd };
            if !ok {
                continue;
            }
            image[p] = j;
            *used |= bit(j);
            if step(k + 1, order, pattern, host, host_deg, exact, image, used) {
                return true;
            }
            *used &= !bit(j);
        }
        false
    }

    if !step(0, &order, pattern, host, &host_deg, exact_degree, &mut image, &mut used) {
        return None;
    }
    Some(
        (0..n)
            .map(|i| (pattern.name(i).clone(), host.name(image[i]).clone()))
            .collect(),
    )
}

/// Isomorphism-invariant code of a graph plus the vertex order realising it.
///
/// Two graphs are isomorphic iff their `key()`s are equal. Mapping
/// `order[i]` of one graph to `order[i]` of the other is an isomorphism.
#[derive(Debug, Clone)]
pub struct CanonicalForm {
    rows: Vec<Bits>,
    /// Vertex indices of the source graph in canonical position order.
    pub order: Vec<usize>,
}

impl CanonicalForm {
    pub fn key(&self) -> &[Bits] {
        &self.rows
    }
}

fn refine_colors(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut colors: Vec<usize> = (0..n).map(|i| g.degree_idx(i)).collect();
    let mut classes = {
        let mut c = colors.clone();
        c.sort_unstable();
        c.dedup();
        c.len()
    };
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|i| {
                let mut nb: Vec<usize> = ones(g.adj_bits(i)).map(|j| colors[j]).collect();
                nb.sort_unstable();
                (colors[i], nb)
            })
            .collect();
        let mut uniq = sigs.clone();
        uniq.sort();
        uniq.dedup();
        let next: Vec<usize> = sigs.iter().map(|s| uniq.binary_search(s).expect("present")).collect();
        colors = next;
        if uniq.len() == classes {
            return colors;
        }
        classes = uniq.len();
    }
}

/// Lexicographically greatest adjacency code over all vertex orders that
/// respect the colour-refinement partition, found by branch and bound.
///
/// Row `p` of the code holds the adjacencies of position `p` to positions
/// `0..p`, earliest position in the most significant bit. Interchangeable
/// twin vertices are tried only once per position.
pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let n = g.vertex_count();
    let colors = refine_colors(g);
    let mut slots: Vec<usize> = colors.clone();
    slots.sort_unstable();

    struct State<'a> {
        g: &'a Graph,
        colors: Vec<usize>,
        slots: Vec<usize>,
        order: Vec<usize>,
        rows: Vec<Bits>,
        best_rows: Option<Vec<Bits>>,
        best_order: Vec<usize>,
    }

    fn go(s: &mut State, placed: Bits) {
        let p = s.order.len();
        if p == s.slots.len() {
            if s.best_rows.as_ref().is_none_or(|b| s.rows > *b) {
                s.best_rows = Some(s.rows.clone());
                s.best_order = s.order.clone();
            }
            return;
        }
        let want = s.slots[p];
        let mut tried: Vec<usize> = Vec::new();
        for v in 0..s.g.vertex_count() {
            if placed & bit(v) != 0 || s.colors[v] != want {
                continue;
            }
            let av = s.g.adj_bits(v);
            if tried.iter().any(|&u| s.g.adj_bits(u) & !bit(v) == av & !bit(u)) {
                continue;
            }
            tried.push(v);
            let mut row: Bits = 0;
            for (q, &w) in s.order.iter().enumerate() {
                if av & bit(w) != 0 {
                    row |= bit(p - 1 - q);
                }
            }
            s.rows.push(row);
            let behind = s
                .best_rows
                .as_ref()
                .is_some_and(|b| s.rows.as_slice() < &b[..=p]);
            if !behind {
                s.order.push(v);
                go(s, placed | bit(v));
                s.order.pop();
            }
            s.rows.pop();
        }
    }

    let mut st = State {
        g,
        colors,
        slots,
        order: Vec::with_capacity(n),
        rows: Vec::with_capacity(n),
        best_rows: None,
        best_order: Vec::new(),
    };
    go(&mut st, 0);
    CanonicalForm {
        rows: st.best_rows.unwrap_or_default(),
        order: st.best_order,
    }
}
