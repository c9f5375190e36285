//! The seven per-node structural features.
//!
//! `extract_features` is the fast path: one degree-ordered triangle pass plus
//! a stamped neighbor sweep. The single-node functions compute the same
//! quantities directly from the definitions and serve as the reference.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::graph::Graph;

/// Column order of a [`FeatureMatrix`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Feature {
    Degree,
    Clustering,
    AvgNbrDegree,
    AvgNbrClustering,
    EgonetEdges,
    EgonetOutEdges,
    EgonetNbrs,
}

impl Feature {
    pub const ALL: [Feature; 7] = [
        Feature::Degree,
        Feature::Clustering,
        Feature::AvgNbrDegree,
        Feature::AvgNbrClustering,
        Feature::EgonetEdges,
        Feature::EgonetOutEdges,
        Feature::EgonetNbrs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Feature::Degree => "degree",
            Feature::Clustering => "clustering",
            Feature::AvgNbrDegree => "avg_nbr_degree",
            Feature::AvgNbrClustering => "avg_nbr_clustering",
            Feature::EgonetEdges => "egonet_edges",
            Feature::EgonetOutEdges => "egonet_out_edges",
            Feature::EgonetNbrs => "egonet_nbrs",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct NodeFeatureRow {
    pub degree: f64,
    pub clustering: f64,
    pub avg_nbr_degree: f64,
    pub avg_nbr_clustering: f64,
    pub egonet_edges: f64,
    pub egonet_out_edges: f64,
    pub egonet_nbrs: f64,
}

impl NodeFeatureRow {
    pub fn to_array(&self) -> [f64; 7] {
        [
            self.degree,
            self.clustering,
            self.avg_nbr_degree,
            self.avg_nbr_clustering,
            self.egonet_edges,
            self.egonet_out_edges,
            self.egonet_nbrs,
        ]
    }

    pub fn get(&self, f: Feature) -> f64 {
        self.to_array()[f.index()]
    }
}

/// One row per node, indexed like the source graph.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMatrix {
    pub name: String,
    pub labels: Vec<String>,
    pub rows: Vec<NodeFeatureRow>,
}

impl FeatureMatrix {
    pub fn node_count(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn column(&self, f: Feature) -> Vec<f64> {
        self.rows.iter().map(|r| r.get(f)).collect()
    }

    /// CSV with a `node,...` header, rows sorted by node label.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("node");
        for f in Feature::ALL {
            out.push(',');
            out.push_str(f.name());
        }
        out.push('\n');
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by(|&a, &b| self.labels[a].cmp(&self.labels[b]));
        for i in order {
            out.push_str(&csv_field(&self.labels[i]));
            for v in self.rows[i].to_array() {
                let _ = write!(out, ",{v}");
            }
            out.push('\n');
        }
        out
    }
}

pub(crate) fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}

fn sorted_intersection_len(a: &[u32], b: &[u32]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

/// Triangles through node `i`, i.e. edges among its neighbors.
pub fn node_triangles(g: &Graph, i: usize) -> usize {
    let ni = g.neighbors(i);
    ni.iter()
        .map(|&j| sorted_intersection_len(ni, g.neighbors(j as usize)))
        .sum::<usize>()
        / 2
}

fn clustering_from(triangles: usize, degree: usize) -> f64 {
    if degree < 2 {
        0.0
    } else {
        let triples = degree * (degree - 1) / 2;
        triangles as f64 / triples as f64
    }
}

fn mean_or_zero(total: f64, count: usize) -> f64 {
    if count == 0 {
        0.0
    } else {
        total / count as f64
    }
}

/// Triangles at `i` over connected triples centered on `i`; 0 below degree 2.
pub fn clustering_coefficient(g: &Graph, i: usize) -> f64 {
    clustering_from(node_triangles(g, i), g.degree(i))
}

pub fn avg_neighbor_degree(g: &Graph, i: usize) -> f64 {
    let d = g.degree(i);
    if d == 0 {
        return 0.0;
    }
    let total: usize = g.neighbors(i).iter().map(|&j| g.degree(j as usize)).sum();
    total as f64 / d as f64
}

pub fn avg_neighbor_clustering(g: &Graph, i: usize) -> f64 {
    let d = g.degree(i);
    if d == 0 {
        return 0.0;
    }
    let total: f64 = g
        .neighbors(i)
        .iter()
        .map(|&j| clustering_coefficient(g, j as usize))
        .sum();
    total / d as f64
}

/// `(edges inside, edges leaving, distinct outside neighbors)` of the egonet
/// of `i`, where the egonet includes `i` itself.
pub fn egonet_stats(g: &Graph, i: usize) -> (usize, usize, usize) {
    let mut members: Vec<usize> = g.neighbors(i).iter().map(|&j| j as usize).collect();
    members.push(i);
    let (ego, out_edges, out_nodes) = g.induced_subgraph(&members);
    (ego.edge_count(), out_edges, out_nodes)
}

/// Per-node triangle counts using degree ordering: each triangle is found
/// exactly once from its lowest-ranked vertex.
pub fn triangle_counts(g: &Graph) -> Vec<usize> {
    let n = g.node_count();
    let ranks_above = |u: usize, v: usize| (g.degree(v), v) > (g.degree(u), u);

    let mut offsets = Vec::with_capacity(n + 1);
    offsets.push(0usize);
    let mut forward: Vec<u32> = Vec::with_capacity(g.edge_count());
    for u in 0..n {
        forward.extend(g.neighbors(u).iter().filter(|&&v| ranks_above(u, v as usize)));
        offsets.push(forward.len());
    }
    let out = |u: usize| &forward[offsets[u]..offsets[u + 1]];

    let mut tri = vec![0usize; n];
    for u in 0..n {
        let ou = out(u);
        for &v in ou {
            let ov = out(v as usize);
            let (mut a, mut b) = (0, 0);
            while a < ou.len() && b < ov.len() {
                match ou[a].cmp(&ov[b]) {
                    std::cmp::Ordering::Less => a += 1,
                    std::cmp::Ordering::Greater => b += 1,
                    std::cmp::Ordering::Equal => {
                        tri[u] += 1;
                        tri[v as usize] += 1;
                        tri[ou[a] as usize] += 1;
                        a += 1;
                        b += 1;
                    }
                }
            }
        }
    }
    tri
}

/// Computes every node's feature row. Output is identical for any rayon
/// worker count.
pub fn extract_features(g: &Graph, name: impl Into<String>) -> FeatureMatrix {
    let n = g.node_count();
    let tri = triangle_counts(g);
    let clustering: Vec<f64> = (0..n).map(|i| clustering_from(tri[i], g.degree(i))).collect();

    let mut rows = vec![NodeFeatureRow::default(); n];
    let workers = rayon::current_num_threads().max(1);
    let chunk = n.div_ceil(workers * 4).max(1);
    rows.par_chunks_mut(chunk)
        .enumerate()
        .for_each(|(c, block)| {
            // stamp[x] == i + 1 marks x as seen while processing node i
            let mut stamp = vec![0u32; n];
            for (k, row) in block.iter_mut().enumerate() {
                let i = c * chunk + k;
                let mark = i as u32 + 1;
                let nbrs = g.neighbors(i);
                let d = nbrs.len();

                stamp[i] = mark;
                for &j in nbrs {
                    stamp[j as usize] = mark;
                }
                let mut nbr_degree_sum = 0usize;
                let mut nbr_clustering_sum = 0.0;
                let mut outside = 0usize;
                for &j in nbrs {
                    let j = j as usize;
                    nbr_degree_sum += g.degree(j);
                    nbr_clustering_sum += clustering[j];
                    for &x in g.neighbors(j) {
                        let s = &mut stamp[x as usize];
                        outside += (*s != mark) as usize;
                        *s = mark;
                    }
                }

                let inside = d + tri[i];
                // degree sum over the egonet counts inside edges twice and
                // leaving edges once
                let leaving = d + nbr_degree_sum - 2 * inside;
                *row = NodeFeatureRow {
                    degree: d as f64,
                    clustering: clustering[i],
                    avg_nbr_degree: mean_or_zero(nbr_degree_sum as f64, d),
                    avg_nbr_clustering: mean_or_zero(nbr_clustering_sum, d),
                    egonet_edges: inside as f64,
                    egonet_out_edges: leaving as f64,
                    egonet_nbrs: outside as f64,
                };
            }
        });

    FeatureMatrix {
        name: name.into(),
        labels: g.labels().to_vec(),
        rows,
    }
}
