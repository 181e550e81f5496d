//! Inclusion-minimal vertex covers of small size, by two-way branching on
//! uncovered edges.

use std::collections::HashSet;

use crate::perm::{PermutationGraph, Symbol};

/// Every inclusion-minimal vertex cover of `g` with at most `bound` vertices,
/// each sorted by symbol id, in discovery order.
pub fn minimal_vertex_covers(g: &PermutationGraph, bound: usize) -> Vec<Vec<Symbol>> {
    let mut found = Vec::new();
    let mut chosen = Vec::new();
    branch(g.edges(), bound, &mut chosen, &mut found);
    let mut seen = HashSet::new();
    found
        .into_iter()
        .filter(|c| is_minimal(g, c))
        .filter(|c| seen.insert(c.clone()))
        .collect()
}

fn branch(edges: &[(Symbol, Symbol)], bound: usize, chosen: &mut Vec<Symbol>, out: &mut Vec<Vec<Symbol>>) {
    let Some(&(lo, hi)) = edges
        .iter()
        .find(|(a, b)| !chosen.contains(a) && !chosen.contains(b))
    else {
        let mut cover = chosen.clone();
        cover.sort_unstable();
        out.push(cover);
        return;
    };
    if chosen.len() == bound {
        return;
    }
    for v in [lo, hi] {
        chosen.push(v);
        branch(edges, bound, chosen, out);
        chosen.pop();
    }
}

/// A cover is minimal when every member has a neighbour outside it.
fn is_minimal(g: &PermutationGraph, cover: &[Symbol]) -> bool {
    cover.iter().all(|&v| {
        g.edges().iter().any(|&(a, b)| {
            (a == v && cover.binary_search(&b).is_err()) || (b == v && cover.binary_search(&a).is_err())
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_minimal_brute(g: &PermutationGraph, bound: usize) -> HashSet<Vec<Symbol>> {
        let n = g.n();
        (0u32..1 << n)
            .map(|mask| (0..n as Symbol).filter(|v| mask >> v & 1 == 1).collect::<Vec<_>>())
            .filter(|c| c.len() <= bound)
            .filter(|c| {
                g.edges()
                    .iter()
                    .all(|(a, b)| c.contains(a) || c.contains(b))
            })
            .filter(|c| is_minimal(g, c))
            .collect()
    }

    #[test]
    fn empty_graph() {
        let g = PermutationGraph::from_edges(4, []);
        assert_eq!(minimal_vertex_covers(&g, 2), vec![Vec::<Symbol>::new()]);
    }

    #[test]
    fn single_edge() {
        let g = PermutationGraph::from_edges(3, [(0, 2)]);
        assert_eq!(minimal_vertex_covers(&g, 1), vec![vec![0], vec![2]]);
        assert!(minimal_vertex_covers(&g, 0).is_empty());
    }

    #[test]
    fn triangle() {
        let g = PermutationGraph::from_edges(3, [(0, 1), (1, 2), (0, 2)]);
        let got: HashSet<_> = minimal_vertex_covers(&g, 2).into_iter().collect();
        assert_eq!(got, all_minimal_brute(&g, 2));
        assert_eq!(got.len(), 3);
    }

    #[test]
    fn matches_subset_enumeration() {
        let graphs = [
            vec![(0, 1), (1, 2), (2, 3), (3, 4)],
            vec![(0, 1), (0, 2), (0, 3), (0, 4), (1, 2)],
            vec![(0, 3), (1, 4), (2, 5), (0, 1)],
        ];
        for edges in graphs {
            let g = PermutationGraph::from_edges(6, edges);
            for bound in 0..=4 {
                let got: Vec<_> = minimal_vertex_covers(&g, bound);
                assert!(got.len() <= 1 << bound);
                let set: HashSet<_> = got.iter().cloned().collect();
                assert_eq!(set.len(), got.len());
                assert_eq!(set, all_minimal_brute(&g, bound), "bound {bound}");
            }
        }
    }
}
