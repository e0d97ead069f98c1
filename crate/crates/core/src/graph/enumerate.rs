use std::collections::BTreeMap;

use super::{canonical_form, Bits, Graph, VertexId};

/// One representative of every isomorphism class of graphs on `n` vertices,
/// with vertex names `v1..vn`, in canonical-code order.
///
/// Built by adding a vertex with every possible neighbourhood to each class on
/// `n - 1` vertices and deduplicating by canonical form.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= 12, "exhaustive enumeration is limited to 12 vertices");
    let mut level: Vec<Vec<Bits>> = vec![Vec::new()];
    for k in 1..=n {
        let mut seen: BTreeMap<Vec<Bits>, Vec<Bits>> = BTreeMap::new();
        for adj in &level {
            for nbrs in 0..(1u128 << (k - 1)) {
                let mut next = adj.clone();
                for (i, row) in next.iter_mut().enumerate() {
                    if nbrs & (1 << i) != 0 {
                        *row |= 1 << (k - 1);
                    }
                }
                next.push(nbrs);
                let g = from_rows(&next);
                let key = canonical_form(&g).key().to_vec();
                seen.entry(key).or_insert(next);
            }
        }
        level = seen.into_values().collect();
    }
    level.iter().map(|rows| from_rows(rows)).collect()
}

fn from_rows(rows: &[Bits]) -> Graph {
    let names: Vec<VertexId> = (1..=rows.len()).map(|i| VertexId::new(format!("v{i}")).expect("valid")).collect();
    let mut edges = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        for j in (i + 1)..rows.len() {
            if row & (1 << j) != 0 {
                edges.push((i, j));
            }
        }
    }
    Graph::from_indexed(names, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| all_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 4, 11, 34, 156]);
    }
}
