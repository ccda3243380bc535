//! Commuting conjugacy class graphs and disjoint unions of cliques.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{conjugacy_data, FiniteGroup};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("cannot parse graph {input:?}: {msg}")]
    Parse { input: String, msg: String },
    #[error("edge ({0}, {1}) is out of range or a self-loop")]
    BadEdge(usize, usize),
}

/// Undirected simple graph on `0..n` with a dense adjacency matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    labels: Vec<String>,
    adj: Vec<bool>,
}

/// JSON wire form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDocument {
    pub labels: Vec<String>,
    pub edges: Vec<(usize, usize)>,
}

impl SimpleGraph {
    pub fn empty(labels: Vec<String>) -> Self {
        let n = labels.len();
        SimpleGraph {
            labels,
            adj: vec![false; n * n],
        }
    }

    /// Vertices labelled `v0, v1, …`.
    pub fn with_vertices(n: usize) -> Self {
        Self::empty((0..n).map(|i| format!("v{i}")).collect())
    }

    pub fn from_edges(labels: Vec<String>, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Self::empty(labels);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        let n = self.num_vertices();
        if u >= n || v >= n || u == v {
            return Err(GraphError::BadEdge(u, v));
        }
        self.adj[u * n + v] = true;
        self.adj[v * n + u] = true;
        Ok(())
    }

    pub fn num_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().filter(|&&b| b).count() / 2
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.num_vertices() + v]
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        let n = self.num_vertices();
        (0..n).filter(move |&v| self.adj[u * n + v])
    }

    pub fn degree(&self, u: usize) -> usize {
        self.neighbors(u).count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.num_vertices()).map(|u| self.degree(u)).collect()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.num_vertices();
        let mut out = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if self.adj[u * n + v] {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.num_vertices();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for v in self.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Disjoint union; vertices of `other` are shifted by `self.num_vertices()`.
    pub fn disjoint_union(&self, other: &SimpleGraph) -> SimpleGraph {
        let offset = self.num_vertices();
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        let mut g = SimpleGraph::empty(labels);
        for (u, v) in self.edges() {
            g.add_edge(u, v).unwrap();
        }
        for (u, v) in other.edges() {
            g.add_edge(u + offset, v + offset).unwrap();
        }
        g
    }

    pub fn complete(n: usize) -> SimpleGraph {
        let mut g = SimpleGraph::with_vertices(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    /// K₁,ₙ: vertex 0 is the centre.
    pub fn star(n: usize) -> SimpleGraph {
        let mut g = SimpleGraph::with_vertices(n + 1);
        for v in 1..=n {
            g.add_edge(0, v).unwrap();
        }
        g
    }

    /// Relabels vertex i as `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> SimpleGraph {
        assert_eq!(perm.len(), self.num_vertices());
        let mut labels = vec![String::new(); perm.len()];
        for (i, &p) in perm.iter().enumerate() {
            labels[p] = self.labels[i].clone();
        }
        let mut g = SimpleGraph::empty(labels);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]).unwrap();
        }
        g
    }

    pub fn to_document(&self) -> GraphDocument {
        GraphDocument {
            labels: self.labels.clone(),
            edges: self.edges(),
        }
    }

    pub fn from_document(doc: &GraphDocument) -> Result<Self, GraphError> {
        Self::from_edges(doc.labels.clone(), &doc.edges)
    }
}

impl FromStr for SimpleGraph {
    type Err = GraphError;

    /// Mini-syntax: `K:n` (complete), `star:n` (K₁,ₙ), joined by `+`,
    /// e.g. `star:5+K:3`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |msg: &str| GraphError::Parse {
            input: s.to_string(),
            msg: msg.to_string(),
        };
        let mut g = SimpleGraph::with_vertices(0);
        for part in s.split('+') {
            let part = part.trim();
            let (kind, n) = part.split_once(':').ok_or_else(|| err("expected KIND:N"))?;
            let n: usize = n.trim().parse().map_err(|_| err("bad vertex count"))?;
            let piece = match kind.trim() {
                "K" | "k" => SimpleGraph::complete(n),
                "star" => SimpleGraph::star(n),
                _ => return Err(err("unknown component kind (use K:n or star:n)")),
            };
            g = g.disjoint_union(&piece);
        }
        let n = g.num_vertices();
        g.labels = (0..n).map(|i| format!("v{i}")).collect();
        Ok(g)
    }
}

/// CCC graph: vertices are the non-central conjugacy classes (in class
/// order), labelled by their representatives.
pub fn ccc_graph(group: &FiniteGroup) -> SimpleGraph {
    let data = conjugacy_data(group);
    let classes: Vec<_> = data.noncentral_classes().map(|(_, c)| c).collect();
    let labels = classes
        .iter()
        .map(|c| group.label(c.representative).to_string())
        .collect();
    let k = classes.len();
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
    // One representative of X against every member of Y suffices: conjugating
    // a commuting pair (x', y') by g with g x' g⁻¹ = x keeps y' inside Y.
    let edges: Vec<(usize, usize)> = pairs
        .into_par_iter()
        .filter(|&(i, j)| {
            let x = classes[i].representative;
            classes[j].members.iter().any(|&y| group.commute(x, y))
        })
        .collect();
    SimpleGraph::from_edges(labels, &edges).expect("class indices are in range")
}

/// `⊔ lᵢ·K_{mᵢ}` in canonical form: sizes strictly decreasing, multiplicities
/// merged.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CliqueDecomposition {
    parts: Vec<(u64, u64)>,
}

impl CliqueDecomposition {
    /// Accepts `(multiplicity, size)` pairs in any order; zero entries are
    /// dropped.
    pub fn new(parts: impl IntoIterator<Item = (u64, u64)>) -> Self {
        let mut merged: Vec<(u64, u64)> = Vec::new();
        let mut raw: Vec<(u64, u64)> = parts.into_iter().filter(|&(l, m)| l > 0 && m > 0).collect();
        raw.sort_by_key(|&(_, m)| std::cmp::Reverse(m));
        for (l, m) in raw {
            match merged.last_mut() {
                Some(last) if last.1 == m => last.0 += l,
                _ => merged.push((l, m)),
            }
        }
        CliqueDecomposition { parts: merged }
    }

    pub fn empty() -> Self {
        CliqueDecomposition { parts: Vec::new() }
    }

    /// `(multiplicity, size)` pairs, sizes strictly decreasing.
    pub fn parts(&self) -> &[(u64, u64)] {
        &self.parts
    }

    pub fn num_vertices(&self) -> u64 {
        self.parts.iter().map(|&(l, m)| l * m).sum()
    }

    pub fn num_edges(&self) -> u64 {
        self.parts.iter().map(|&(l, m)| l * (m * (m.saturating_sub(1)) / 2)).sum()
    }

    /// Every clique has the same size and at least one edge exists, or there
    /// are no edges at all — exactly the cases with M₂|V| = M₁|E|.
    pub fn is_balanced(&self) -> bool {
        self.parts.len() <= 1 || self.parts.iter().all(|&(_, m)| m == 1)
    }
}

impl fmt::Display for CliqueDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "empty");
        }
        for (i, &(l, m)) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if l > 1 {
                write!(f, "{l}")?;
            }
            write!(f, "K{m}")?;
        }
        Ok(())
    }
}

impl FromStr for CliqueDecomposition {
    type Err = GraphError;

    /// `2K4 + K1`, `K5+2K1`, or `empty`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |msg: &str| GraphError::Parse {
            input: s.to_string(),
            msg: msg.to_string(),
        };
        if s.trim() == "empty" {
            return Ok(Self::empty());
        }
        let mut parts = Vec::new();
        for term in s.split('+') {
            let term = term.trim();
            let (l, m) = term.split_once(['K', 'k']).ok_or_else(|| err("expected [l]K<m>"))?;
            let l = if l.trim().is_empty() {
                1
            } else {
                l.trim().parse().map_err(|_| err("bad multiplicity"))?
            };
            let m: u64 = m.trim().parse().map_err(|_| err("bad clique size"))?;
            if l == 0 || m == 0 {
                return Err(err("multiplicities and sizes must be positive"));
            }
            parts.push((l, m));
        }
        Ok(Self::new(parts))
    }
}

/// The decomposition, if every connected component is complete.
pub fn detect_clique_union(graph: &SimpleGraph) -> Option<CliqueDecomposition> {
    let mut parts = Vec::new();
    for comp in graph.components() {
        let k = comp.len();
        // A connected component is complete iff each vertex sees all others.
        if comp.iter().any(|&u| graph.degree(u) != k - 1) {
            return None;
        }
        parts.push((1, k as u64));
    }
    Some(CliqueDecomposition::new(parts))
}

pub fn graph_from_decomposition(d: &CliqueDecomposition) -> SimpleGraph {
    let n = usize::try_from(d.num_vertices()).expect("decomposition too large to materialise");
    let mut g = SimpleGraph::with_vertices(n);
    let mut next = 0usize;
    for &(l, m) in d.parts() {
        for _ in 0..l {
            let m = m as usize;
            for u in next..next + m {
                for v in u + 1..next + m {
                    g.add_edge(u, v).unwrap();
                }
            }
            next += m;
        }
    }
    g
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Deterministic DOT rendering.
pub fn export_dot(graph: &SimpleGraph, name: &str) -> String {
    let mut out = format!("graph \"{}\" {{\n", dot_escape(name));
    for (i, label) in graph.labels().iter().enumerate() {
        out.push_str(&format!("  {i} [label=\"{}\"];\n", dot_escape(label)));
    }
    for (u, v) in graph.edges() {
        out.push_str(&format!("  {u} -- {v};\n"));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decomposition_is_canonical() {
        let d = CliqueDecomposition::new([(1, 1), (1, 4), (1, 4), (0, 7)]);
        assert_eq!(d.parts(), &[(2, 4), (1, 1)]);
        assert_eq!(d.to_string(), "2K4 + K1");
        assert_eq!("K1 + 2K4".parse::<CliqueDecomposition>().unwrap(), d);
        assert_eq!(d.num_vertices(), 9);
        assert_eq!(d.num_edges(), 12);
        assert!("K0".parse::<CliqueDecomposition>().is_err());
        assert_eq!("empty".parse::<CliqueDecomposition>().unwrap(), CliqueDecomposition::empty());
    }

    #[test]
    fn star_is_not_a_clique_union() {
        assert_eq!(detect_clique_union(&SimpleGraph::star(5)), None);
        let g: SimpleGraph = "K:2+K:1".parse().unwrap();
        assert_eq!(
            detect_clique_union(&g).unwrap().parts(),
            &[(1, 2), (1, 1)]
        );
    }

    #[test]
    fn mini_syntax() {
        let g: SimpleGraph = "star:5+K:3".parse().unwrap();
        assert_eq!(g.num_vertices(), 9);
        assert_eq!(g.num_edges(), 8);
        assert!("tree:3".parse::<SimpleGraph>().is_err());
        assert!("K3".parse::<SimpleGraph>().is_err());
    }

    #[test]
    fn materialise_round_trip() {
        let d: CliqueDecomposition = "4K2".parse().unwrap();
        let g = graph_from_decomposition(&d);
        assert_eq!((g.num_vertices(), g.num_edges()), (8, 4));
        assert_eq!(detect_clique_union(&g), Some(d));
        let single = graph_from_decomposition(&"K1".parse().unwrap());
        assert_eq!((single.num_vertices(), single.num_edges()), (1, 0));
    }

    #[test]
    fn dot_output() {
        let empty = SimpleGraph::with_vertices(0);
        assert_eq!(export_dot(&empty, "g"), "graph \"g\" {\n}\n");
        let k2 = SimpleGraph::complete(2);
        let dot = export_dot(&k2, "K2");
        assert_eq!(dot.matches("--").count(), 1);
        assert!(dot.contains("  0 -- 1;\n"));
    }

    #[test]
    fn balance() {
        assert!("3K2".parse::<CliqueDecomposition>().unwrap().is_balanced());
        assert!("3K1".parse::<CliqueDecomposition>().unwrap().is_balanced());
        assert!(CliqueDecomposition::empty().is_balanced());
        assert!(!"K2 + K1".parse::<CliqueDecomposition>().unwrap().is_balanced());
    }
}
