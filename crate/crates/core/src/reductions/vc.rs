//! Vertex cover to k-center: every vertex owns `d` adjacent symbol pairs and
//! every edge becomes the base permutation with both endpoints' pairs swapped.

use crate::error::{Error, Result};
use crate::perm::{Instance, Permutation, Symbol, SymbolTable};

use super::graph::SimpleGraph;

/// Replaces every edge by a path of three edges. Returns the new graph and
/// the resulting increase of the minimum vertex cover size.
pub fn subdivide_2(g: &SimpleGraph) -> Result<(SimpleGraph, usize)> {
    let n = g.vertex_count();
    let mut edges = Vec::with_capacity(3 * g.edges().len());
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        let (a, b) = (n + 2 * i, n + 2 * i + 1);
        edges.extend([(u, a), (a, b), (b, v)]);
    }
    Ok((SimpleGraph::new(n + 2 * g.edges().len(), edges)?, g.edges().len()))
}

/// Tokens `v{i}_{j}` and `v{i}_{j}bar`, 1-based, in base order.
pub fn vc_symbol_table(vertex_count: usize, d: usize) -> SymbolTable {
    let names = (1..=vertex_count).flat_map(|i| {
        (1..=d).flat_map(move |j| [format!("v{i}_{j}"), format!("v{i}_{j}bar")])
    });
    SymbolTable::new(names).expect("tokens are distinct")
}

fn swapped(vertex_count: usize, d: usize, vertices: &[usize]) -> Permutation {
    let mut seq: Vec<Symbol> = (0..(2 * vertex_count * d) as Symbol).collect();
    for &v in vertices {
        for j in 0..d {
            seq.swap(2 * (v * d + j), 2 * (v * d + j) + 1);
        }
    }
    Permutation::new(seq).expect("swaps keep a permutation")
}

/// Base permutation with the pairs of `v` swapped.
pub fn vertex_permutation(g: &SimpleGraph, v: usize, d: usize) -> Permutation {
    swapped(g.vertex_count(), d, &[v])
}

/// Base permutation with the pairs of both endpoints swapped.
pub fn edge_permutation(g: &SimpleGraph, (u, v): (usize, usize), d: usize) -> Permutation {
    swapped(g.vertex_count(), d, &[u, v])
}

pub fn gen_center_from_vertex_cover(g: &SimpleGraph, cover_size: usize, d: usize) -> Result<Instance> {
    if d == 0 {
        return Err(Error::Input("vertex cover reduction needs d >= 1".into()));
    }
    if let Some((a, b, c)) = g.find_triangle() {
        return Err(Error::Input(format!(
            "graph has a triangle on vertices {}, {}, {}; subdivide it first",
            a + 1,
            b + 1,
            c + 1
        )));
    }
    let perms = g.edges().iter().map(|&e| edge_permutation(g, e, d)).collect();
    Instance::new(vc_symbol_table(g.vertex_count(), d), perms, cover_size, d)
}

/// One center per cover vertex.
pub fn center_solution_from_cover(g: &SimpleGraph, cover: &[usize], d: usize) -> Result<Vec<Permutation>> {
    if let Some(&v) = cover.iter().find(|&&v| v >= g.vertex_count()) {
        return Err(Error::Input(format!("vertex {} is not in the graph", v + 1)));
    }
    if !g.is_vertex_cover(cover) {
        return Err(Error::Input("the given vertex set is not a vertex cover".into()));
    }
    Ok(cover.iter().map(|&v| vertex_permutation(g, v, d)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::verify_center_solution;
    use crate::perm::dist;

    fn star_path() -> SimpleGraph {
        SimpleGraph::new(5, [(0, 1), (1, 2), (1, 3), (2, 4)]).unwrap()
    }

    #[test]
    fn subdivision() {
        let (g, shift) = subdivide_2(&SimpleGraph::new(3, []).unwrap()).unwrap();
        assert_eq!((g.vertex_count(), shift), (3, 0));
        let (g, shift) = subdivide_2(&SimpleGraph::new(2, [(0, 1)]).unwrap()).unwrap();
        assert_eq!((g.vertex_count(), g.edges().len(), shift), (4, 3, 1));
        let tri = SimpleGraph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let (g, shift) = subdivide_2(&tri).unwrap();
        assert_eq!(g.vertex_count(), 9);
        assert!(g.find_triangle().is_none());
        assert_eq!(shift, 3);
    }

    #[test]
    fn distances_follow_incidence() {
        let g = star_path();
        for d in 1..=3 {
            for &e in g.edges() {
                for v in 0..5 {
                    let gap = dist(&edge_permutation(&g, e, d), &vertex_permutation(&g, v, d));
                    assert_eq!(gap == d, v == e.0 || v == e.1);
                }
            }
            assert_eq!(dist(&edge_permutation(&g, (0, 1), d), &edge_permutation(&g, (2, 4), d)), 4 * d);
        }
    }

    #[test]
    fn cover_certificate() {
        let g = star_path();
        let inst = gen_center_from_vertex_cover(&g, 2, 1).unwrap();
        assert_eq!((inst.n(), inst.m()), (10, 4));
        let centers = center_solution_from_cover(&g, &[1, 2], 1).unwrap();
        assert!(verify_center_solution(&inst, &centers).unwrap().ok);
        let all = center_solution_from_cover(&g, &[0, 1, 2, 3, 4], 1).unwrap();
        assert!(verify_center_solution(&inst, &all).unwrap().ok);
        assert!(center_solution_from_cover(&g, &[0], 1).is_err());
        assert_eq!(inst.table.names()[..2], ["v1_1".to_string(), "v1_1bar".to_string()]);
    }

    #[test]
    fn triangles_are_rejected() {
        let tri = SimpleGraph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(gen_center_from_vertex_cover(&tri, 2, 1).is_err());
        let empty = gen_center_from_vertex_cover(&SimpleGraph::new(2, []).unwrap(), 1, 1).unwrap();
        assert_eq!(empty.m(), 0);
    }
}
