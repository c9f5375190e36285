//! Simple undirected graphs with string node labels.
//!
//! A [`Graph`] is immutable once built. Neighbors are kept in compressed
//! sparse row form with every adjacency list sorted ascending, which lets
//! triangle counting intersect two lists in `O(d_i + d_j)`.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;
use std::io::Read;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

impl Graph {
    /// Builds a graph over `labels.len()` nodes. Self-loops are dropped and
    /// duplicate or reversed edges collapse to one.
    pub fn from_edges<I>(labels: Vec<String>, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let n = labels.len();
        if n > u32::MAX as usize {
            return Err(Error::InvalidArgument(format!("{n} nodes exceeds u32 index space")));
        }
        {
            let mut seen = HashSet::with_capacity(n);
            for l in &labels {
                if !seen.insert(l.as_str()) {
                    return Err(Error::InvalidArgument(format!("duplicate node label {l:?}")));
                }
            }
        }

        let mut pairs: Vec<(u32, u32)> = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidArgument(format!(
                    "edge ({u}, {v}) out of range for {n} nodes"
                )));
            }
            if u != v {
                pairs.push((u.min(v) as u32, u.max(v) as u32));
            }
        }
        pairs.sort_unstable();
        pairs.dedup();

        let mut degree = vec![0usize; n];
        for &(u, v) in &pairs {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        // Filling in sorted pair order leaves each list sorted: a node first
        // receives its smaller neighbors (as second element), then its larger.
        let mut cursor = offsets[..n].to_vec();
        let mut targets = vec![0u32; offsets[n]];
        for &(u, v) in &pairs {
            targets[cursor[u as usize]] = v;
            cursor[u as usize] += 1;
            targets[cursor[v as usize]] = u;
            cursor[v as usize] += 1;
        }

        Ok(Graph {
            labels,
            offsets,
            targets,
        })
    }

    /// Builds a graph whose labels are the decimal indices `"0"`, `"1"`, ...
    pub fn from_indexed_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::from_edges((0..n).map(|i| i.to_string()).collect(), edges)
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    #[inline]
    pub fn neighbors(&self, i: usize) -> &[u32] {
        &self.targets[self.offsets[i]..self.offsets[i + 1]]
    }

    #[inline]
    pub fn degree(&self, i: usize) -> usize {
        self.offsets[i + 1] - self.offsets[i]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).binary_search(&(v as u32)).is_ok()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Linear scan; build a map yourself for repeated lookups.
    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.node_count()).map(|i| self.degree(i)).max().unwrap_or(0)
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.node_count()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .map(|&v| v as usize)
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    /// Returns the graph with node `i` moved to index `perm[i]`, carrying its
    /// label along.
    pub fn permute(&self, perm: &[usize]) -> Result<Graph> {
        let n = self.node_count();
        if perm.len() != n {
            return Err(Error::InvalidPermutation(n));
        }
        let mut hit = vec![false; n];
        for &p in perm {
            if p >= n || std::mem::replace(&mut hit[p], true) {
                return Err(Error::InvalidPermutation(n));
            }
        }
        let mut labels = vec![String::new(); n];
        for (i, &p) in perm.iter().enumerate() {
            labels[p] = self.labels[i].clone();
        }
        Graph::from_edges(labels, self.edges().map(|(u, v)| (perm[u], perm[v])))
    }

    /// Subgraph induced by `nodes`, together with the number of edges that
    /// leave the set and the number of distinct outside nodes they reach.
    /// Node order in the result follows ascending original index.
    pub fn induced_subgraph(&self, nodes: &[usize]) -> (Graph, usize, usize) {
        let mut members: Vec<usize> = nodes.to_vec();
        members.sort_unstable();
        members.dedup();
        let local: HashMap<usize, usize> =
            members.iter().enumerate().map(|(k, &i)| (i, k)).collect();

        let mut inner = Vec::new();
        let mut boundary_edges = 0;
        let mut outside = HashSet::new();
        for &i in &members {
            for &j in self.neighbors(i) {
                let j = j as usize;
                match local.get(&j) {
                    Some(&lj) if i < j => inner.push((local[&i], lj)),
                    Some(_) => {}
                    None => {
                        boundary_edges += 1;
                        outside.insert(j);
                    }
                }
            }
        }
        let labels = members.iter().map(|&i| self.labels[i].clone()).collect();
        let sub = Graph::from_edges(labels, inner).expect("induced subgraph is well formed");
        (sub, boundary_edges, outside.len())
    }

    /// Canonical edge list: one `"min max"` label pair per line (labels
    /// compared as strings), lines sorted, `\n` terminated. Isolated nodes are
    /// written as `"u u"` so that reloading registers them.
    pub fn to_canonical_edge_list(&self) -> String {
        let mut lines: Vec<String> = self
            .edges()
            .map(|(u, v)| {
                let (a, b) = (&self.labels[u], &self.labels[v]);
                if a <= b {
                    format!("{a} {b}")
                } else {
                    format!("{b} {a}")
                }
            })
            .collect();
        for i in 0..self.node_count() {
            if self.degree(i) == 0 {
                lines.push(format!("{0} {0}", self.labels[i]));
            }
        }
        lines.sort_unstable();
        let mut out = String::new();
        for l in lines {
            let _ = writeln!(out, "{l}");
        }
        out
    }
}

/// Parses a whitespace-separated edge list.
///
/// Node indices follow the sorted order of the label strings, so the result
/// does not depend on line order.
pub fn load_edge_list(bytes: &[u8]) -> Result<Graph> {
    let text = std::str::from_utf8(bytes)?;
    let mut raw: Vec<(&str, &str)> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') || t.starts_with('%') {
            continue;
        }
        let mut tokens = t.split_whitespace();
        match (tokens.next(), tokens.next(), tokens.next()) {
            (Some(u), Some(v), None) => raw.push((u, v)),
            _ => {
                return Err(Error::Parse {
                    line: lineno + 1,
                    message: format!("expected 2 tokens, got {}", t.split_whitespace().count()),
                })
            }
        }
    }

    let mut labels: Vec<&str> = raw.iter().flat_map(|&(u, v)| [u, v]).collect();
    labels.sort_unstable();
    labels.dedup();
    if labels.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let index: HashMap<&str, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let edges: Vec<(usize, usize)> = raw.iter().map(|(u, v)| (index[u], index[v])).collect();
    Graph::from_edges(labels.into_iter().map(str::to_owned).collect(), edges)
}

pub fn read_edge_list<R: Read>(mut reader: R) -> Result<Graph> {
    let mut buf = Vec::new();
    reader.read_to_end(&mut buf)?;
    load_edge_list(&buf)
}

/// Ordered collection of named graphs; names are unique.
#[derive(Debug, Clone, Default)]
pub struct GraphSet {
    entries: Vec<(String, Graph)>,
}

impl GraphSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, name: impl Into<String>, graph: Graph) -> Result<()> {
        let name = name.into();
        if self.entries.iter().any(|(n, _)| *n == name) {
            return Err(Error::DuplicateName(name));
        }
        self.entries.push((name, graph));
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Graph)> {
        self.entries.iter().map(|(n, g)| (n.as_str(), g))
    }

    pub fn get(&self, idx: usize) -> Option<(&str, &Graph)> {
        self.entries.get(idx).map(|(n, g)| (n.as_str(), g))
    }
}
