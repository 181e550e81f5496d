//! Multicolored clique to k-median.
//!
//! Symbols: one per color, `q` copies `v` per vertex, and `q` copies each of
//! `x`, `y`, `z` per edge. The base order is all x/y pairs edge by edge,
//! then the v-runs, then the z-runs, then the colors.

use crate::error::{Error, Result};
use crate::perm::{dist, Instance, Permutation, Symbol, SymbolTable};

use super::graph::SimpleGraph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MccParams {
    pub colors: usize,
    pub q: usize,
    pub k: usize,
    /// `m' - C(k',2) + 1` before clamping to zero.
    pub k_raw: i64,
    pub d: usize,
    pub base: Permutation,
    pub graph: SimpleGraph,
}

fn choose2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

struct Layout {
    q: usize,
    n: usize,
    m: usize,
}

impl Layout {
    fn x(&self, e: usize, i: usize) -> Symbol {
        (2 * (e * self.q + i)) as Symbol
    }
    fn y(&self, e: usize, i: usize) -> Symbol {
        self.x(e, i) + 1
    }
    fn v(&self, u: usize, i: usize) -> Symbol {
        (2 * self.m * self.q + u * self.q + i) as Symbol
    }
    fn z(&self, e: usize, i: usize) -> Symbol {
        ((2 * self.m + self.n) * self.q + e * self.q + i) as Symbol
    }
    fn color(&self, c: usize) -> Symbol {
        (3 * self.m * self.q + self.n * self.q + c) as Symbol
    }

    fn table(&self, colors: usize) -> SymbolTable {
        let mut names = Vec::new();
        for e in 1..=self.m {
            for i in 1..=self.q {
                names.push(format!("x{e}_{i}"));
                names.push(format!("y{e}_{i}"));
            }
        }
        for u in 1..=self.n {
            names.extend((1..=self.q).map(|i| format!("v{u}_{i}")));
        }
        for e in 1..=self.m {
            names.extend((1..=self.q).map(|i| format!("z{e}_{i}")));
        }
        names.extend((1..=colors).map(|c| format!("c{c}")));
        SymbolTable::new(names).expect("tokens are distinct")
    }

    /// Assembles a permutation: `swapped_edge` flips one x/y block,
    /// `after_v[u]` and `after_z[e]` list colors placed after those runs.
    fn build(&self, swapped_edge: Option<usize>, after_v: &[Vec<usize>], after_z: &[Vec<usize>], trailing: &[usize]) -> Permutation {
        let mut seq = Vec::with_capacity(3 * self.m * self.q + self.n * self.q + trailing.len());
        for e in 0..self.m {
            for i in 0..self.q {
                if swapped_edge == Some(e) {
                    seq.extend([self.y(e, i), self.x(e, i)]);
                } else {
                    seq.extend([self.x(e, i), self.y(e, i)]);
                }
            }
        }
        for (u, tail) in after_v.iter().enumerate().take(self.n) {
            seq.extend((0..self.q).map(|i| self.v(u, i)));
            seq.extend(tail.iter().map(|&c| self.color(c)));
        }
        for (e, tail) in after_z.iter().enumerate().take(self.m) {
            seq.extend((0..self.q).map(|i| self.z(e, i)));
            seq.extend(tail.iter().map(|&c| self.color(c)));
        }
        seq.extend(trailing.iter().map(|&c| self.color(c)));
        Permutation::new(seq).expect("layout is a permutation")
    }
}

fn layout(g: &SimpleGraph, colors: usize) -> Layout {
    Layout {
        q: choose2(colors) * (colors - 2) + 1,
        n: g.vertex_count(),
        m: g.edges().len(),
    }
}

pub fn gen_median_from_multicolored_clique(g: &SimpleGraph, colors: usize) -> Result<(Instance, MccParams)> {
    if colors < 4 {
        return Err(Error::Input(format!("need at least 4 colors, got {colors}")));
    }
    let coloring = g
        .colors()
        .ok_or_else(|| Error::Input("graph has no vertex coloring".into()))?;
    if let Some(&c) = coloring.iter().find(|&&c| c >= colors) {
        return Err(Error::Input(format!("color {} exceeds the color count {colors}", c + 1)));
    }
    let lay = layout(g, colors);
    let (n, m) = (lay.n, lay.m);
    let empty = vec![Vec::new(); n.max(m)];
    let base = lay.build(None, &empty[..n], &empty[..m], &(0..colors).collect::<Vec<_>>());
    let perms = g
        .edges()
        .iter()
        .enumerate()
        .map(|(j, &(a, b))| {
            let (ca, cb) = (coloring[a], coloring[b]);
            let mut after_v = vec![Vec::new(); n];
            after_v[a].push(ca);
            after_v[b].push(cb);
            let mut after_z = vec![Vec::new(); m];
            after_z[j] = (0..colors).filter(|&c| c != ca && c != cb).collect();
            lay.build(Some(j), &after_v, &after_z, &[])
        })
        .collect();
    let k_raw = m as i64 - choose2(colors) as i64 + 1;
    let params = MccParams {
        colors,
        q: lay.q,
        k: k_raw.max(0) as usize,
        k_raw,
        d: choose2(colors) * (lay.q + colors - 2),
        base,
        graph: g.clone(),
    };
    let inst = Instance::new(lay.table(colors), perms, params.k, params.d)?;
    Ok((inst, params))
}

/// The center `σ_Q` for a multicolored clique `Q` (vertex ids).
pub fn mcc_sigma_from_clique(params: &MccParams, clique: &[usize]) -> Result<Permutation> {
    let g = &params.graph;
    let coloring = g.colors().expect("construction requires a coloring");
    let bad = |why: &str| Err(Error::Input(format!("not a multicolored clique: {why}")));
    if clique.len() != params.colors {
        return bad(&format!("{} vertices for {} colors", clique.len(), params.colors));
    }
    if clique.iter().any(|&v| v >= g.vertex_count()) {
        return bad("vertex out of range");
    }
    let mut seen = vec![false; params.colors];
    for &v in clique {
        if std::mem::replace(&mut seen[coloring[v]], true) {
            return bad("two vertices share a color");
        }
    }
    for (i, &a) in clique.iter().enumerate() {
        if let Some(&b) = clique[i + 1..].iter().find(|&&b| !g.has_edge(a, b)) {
            return bad(&format!("vertices {} and {} are not adjacent", a + 1, b + 1));
        }
    }
    let lay = layout(g, params.colors);
    let mut after_v = vec![Vec::new(); lay.n];
    for &v in clique {
        after_v[v].push(coloring[v]);
    }
    Ok(lay.build(None, &after_v, &vec![Vec::new(); lay.m], &[]))
}

/// Medians for the certificate: `σ_Q` plus every edge permutation outside
/// the clique. Returns the medians and each clique edge's distance to `σ_Q`.
pub fn mcc_certificate(inst: &Instance, params: &MccParams, clique: &[usize]) -> Result<(Vec<Permutation>, Vec<usize>)> {
    let sigma = mcc_sigma_from_clique(params, clique)?;
    let mut medians = vec![sigma.clone()];
    let mut clique_gaps = Vec::new();
    for (j, &(a, b)) in params.graph.edges().iter().enumerate() {
        if clique.contains(&a) && clique.contains(&b) {
            clique_gaps.push(dist(&inst.perms[j], &sigma));
        } else {
            medians.push(inst.perms[j].clone());
        }
    }
    Ok((medians, clique_gaps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::verify_median_solution;

    fn complete(n: usize) -> SimpleGraph {
        let edges = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
        SimpleGraph::new(n, edges).unwrap().with_coloring((0..n).collect()).unwrap()
    }

    #[test]
    fn k4_parameters_and_certificate() {
        let (inst, params) = gen_median_from_multicolored_clique(&complete(4), 4).unwrap();
        assert_eq!((params.q, params.k, params.d), (13, 1, 90));
        assert_eq!((inst.n(), inst.m()), (290, 6));
        let (medians, gaps) = mcc_certificate(&inst, &params, &[0, 1, 2, 3]).unwrap();
        assert_eq!(gaps, vec![15; 6]);
        let check = verify_median_solution(&inst, &medians).unwrap();
        assert_eq!(check.value, 90);
        assert!(check.ok);
    }

    #[test]
    fn rejects() {
        assert!(gen_median_from_multicolored_clique(&complete(3), 3).is_err());
        let uncolored = SimpleGraph::new(4, [(0, 1)]).unwrap();
        assert!(gen_median_from_multicolored_clique(&uncolored, 4).is_err());
        let (_, params) = gen_median_from_multicolored_clique(&complete(4), 4).unwrap();
        assert!(mcc_sigma_from_clique(&params, &[0, 1, 2]).is_err());
    }

    #[test]
    fn missing_edge_breaks_the_certificate() {
        let g = SimpleGraph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])
            .unwrap()
            .with_coloring(vec![0, 1, 2, 3])
            .unwrap();
        let (inst, params) = gen_median_from_multicolored_clique(&g, 4).unwrap();
        assert_eq!((params.k_raw, inst.k), (0, 0));
        assert!(mcc_sigma_from_clique(&params, &[0, 1, 2, 3]).is_err());
    }
}
