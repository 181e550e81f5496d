//! Simple undirected graphs with an optional vertex coloring.
//!
//! Text format: a `p <n> <m>` header, one `e u v` line per edge and optional
//! `c v color` lines, vertices and colors 1-based, `#` starting a comment.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    colors: Option<Vec<usize>>,
}

impl SimpleGraph {
    /// Edges are stored as `(lo, hi)` in the given order.
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for (u, v) in edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::Input(format!("edge ({u}, {v}) leaves 0..{vertex_count}")));
            }
            if u == v {
                return Err(Error::Input(format!("self-loop at vertex {u}")));
            }
            let e = (u.min(v), u.max(v));
            if !seen.insert(e) {
                return Err(Error::Input(format!("duplicate edge ({u}, {v})")));
            }
            out.push(e);
        }
        Ok(Self {
            vertex_count,
            edges: out,
            colors: None,
        })
    }

    /// Attaches a coloring, rejecting improper ones.
    pub fn with_coloring(mut self, colors: Vec<usize>) -> Result<Self> {
        if colors.len() != self.vertex_count {
            return Err(Error::LengthMismatch(colors.len(), self.vertex_count));
        }
        if let Some(&(u, v)) = self.edges.iter().find(|&&(u, v)| colors[u] == colors[v]) {
            return Err(Error::Input(format!(
                "coloring is not proper: vertices {} and {} share color {}",
                u + 1,
                v + 1,
                colors[u] + 1
            )));
        }
        self.colors = Some(colors);
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn colors(&self) -> Option<&[usize]> {
        self.colors.as_deref()
    }

    pub fn color_count(&self) -> usize {
        self.colors
            .as_ref()
            .and_then(|c| c.iter().max())
            .map_or(0, |&c| c + 1)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn is_vertex_cover(&self, cover: &[usize]) -> bool {
        self.edges
            .iter()
            .all(|(u, v)| cover.contains(u) || cover.contains(v))
    }

    pub fn find_triangle(&self) -> Option<(usize, usize, usize)> {
        let adj = self.adjacency();
        for &(u, v) in &self.edges {
            if let Some(&w) = adj[u].iter().find(|w| adj[v].contains(w)) {
                return Some((u, v, w));
            }
        }
        None
    }

    fn adjacency(&self) -> Vec<HashSet<usize>> {
        let mut adj = vec![HashSet::new(); self.vertex_count];
        for &(u, v) in &self.edges {
            adj[u].insert(v);
            adj[v].insert(u);
        }
        adj
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut header = None;
        let mut edges = Vec::new();
        let mut colors: Vec<Option<usize>> = Vec::new();
        let mut any_color = false;
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = || Error::Input(format!("graph line {}: cannot parse {raw:?}", no + 1));
            let fields: Vec<&str> = line.split_whitespace().collect();
            let nums = |want: usize| -> Result<Vec<usize>> {
                if fields.len() != want + 1 {
                    return Err(bad());
                }
                fields[1..].iter().map(|f| f.parse().map_err(|_| bad())).collect()
            };
            match fields[0] {
                "p" if header.is_none() => {
                    let v = nums(2)?;
                    header = Some((v[0], v[1]));
                    colors = vec![None; v[0]];
                }
                "e" | "c" if header.is_some() => {
                    let v = nums(2)?;
                    let n = header.unwrap().0;
                    let out_of_range = Error::Input(format!("graph line {}: index out of range", no + 1));
                    if fields[0] == "e" {
                        if v.iter().any(|&x| x == 0 || x > n) {
                            return Err(out_of_range);
                        }
                        edges.push((v[0] - 1, v[1] - 1));
                    } else {
                        if v[0] == 0 || v[0] > n || v[1] == 0 {
                            return Err(out_of_range);
                        }
                        colors[v[0] - 1] = Some(v[1] - 1);
                        any_color = true;
                    }
                }
                _ => return Err(bad()),
            }
        }
        let (n, m) = header.ok_or_else(|| Error::Input("graph has no `p` header".into()))?;
        if edges.len() != m {
            return Err(Error::Input(format!("header announces {m} edges, found {}", edges.len())));
        }
        let g = Self::new(n, edges)?;
        if !any_color {
            return Ok(g);
        }
        let colors = colors
            .into_iter()
            .enumerate()
            .map(|(v, c)| c.ok_or_else(|| Error::Input(format!("vertex {} has no color", v + 1))))
            .collect::<Result<Vec<_>>>()?;
        g.with_coloring(colors)
    }

    pub fn emit(&self) -> String {
        let mut out = format!("p {} {}\n", self.vertex_count, self.edges.len());
        for (u, v) in &self.edges {
            writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
        }
        if let Some(colors) = &self.colors {
            for (v, c) in colors.iter().enumerate() {
                writeln!(out, "c {} {}", v + 1, c + 1).unwrap();
            }
        }
        out
    }
}

/// Smallest vertex cover by increasing-size subset search.
pub fn min_vertex_cover(g: &SimpleGraph) -> Result<Vec<usize>> {
    crate::oracles::brute_min_vertex_cover(g.vertex_count(), g.edges())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let g = SimpleGraph::new(4, [(0, 1), (2, 1), (3, 0)])
            .unwrap()
            .with_coloring(vec![0, 1, 0, 2])
            .unwrap();
        assert_eq!(SimpleGraph::parse(&g.emit()).unwrap(), g);
        assert_eq!(g.edges(), &[(0, 1), (1, 2), (0, 3)]);
        assert_eq!(g.color_count(), 3);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(SimpleGraph::new(2, [(0, 0)]).is_err());
        assert!(SimpleGraph::new(2, [(0, 1), (1, 0)]).is_err());
        assert!(SimpleGraph::new(2, [(0, 2)]).is_err());
        assert!(SimpleGraph::parse("p 2 1\ne 1 3\n").is_err());
        assert!(SimpleGraph::parse("p 2 2\ne 1 2\n").is_err());
        assert!(SimpleGraph::parse("e 1 2\n").is_err());
        assert!(SimpleGraph::parse("p 2 1\ne 1 2\nc 1 1\nc 2 1\n").is_err());
        assert!(SimpleGraph::parse("p 2 1\ne 1 2\nc 1 1\n").is_err());
    }

    #[test]
    fn triangles_and_covers() {
        let tri = SimpleGraph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(tri.find_triangle().is_some());
        assert!(tri.is_vertex_cover(&[0, 1]));
        assert!(!tri.is_vertex_cover(&[0]));
        let path = SimpleGraph::parse("# path\np 3 2\ne 1 2\ne 2 3\n").unwrap();
        assert!(path.find_triangle().is_none());
        assert_eq!(min_vertex_cover(&path).unwrap(), vec![1]);
    }
}
