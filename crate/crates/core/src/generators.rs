//! Seeded random graph models.
//!
//! Every generator draws from a ChaCha8 stream seeded directly with the
//! caller's 64-bit seed, so a given [`GenSpec`] yields the same graph on any
//! platform. Nodes are labeled `"0"..n`.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn below(rng: &mut ChaCha8Rng, n: usize) -> usize {
    rng.random_range(0..n as u64) as usize
}

fn check_probability(name: &str, p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidArgument(format!("{name} = {p} is not a probability")));
    }
    Ok(())
}

/// Erdős–Rényi `G(n, m)`: exactly `m` distinct edges chosen uniformly.
pub fn gen_er(n: usize, m: usize, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let total = n * (n - 1) / 2;
    if m > total {
        return Err(Error::InvalidArgument(format!("{m} edges exceed C({n}, 2) = {total}")));
    }
    let mut rng = rng_from_seed(seed);
    let edges: Vec<(usize, usize)> = if 2 * m > total {
        let mut all: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        for i in 0..m {
            let j = i + below(&mut rng, all.len() - i);
            all.swap(i, j);
        }
        all.truncate(m);
        all
    } else {
        let mut seen = HashSet::with_capacity(m);
        let mut out = Vec::with_capacity(m);
        while out.len() < m {
            let u = below(&mut rng, n);
            let v = below(&mut rng, n);
            if u == v {
                continue;
            }
            let e = (u.min(v), u.max(v));
            if seen.insert(e) {
                out.push(e);
            }
        }
        out
    };
    Graph::from_indexed_edges(n, edges)
}

/// Barabási–Albert preferential attachment starting from a clique on
/// `edges_per_step + 1` nodes.
pub fn gen_ba(n: usize, edges_per_step: usize, seed: u64) -> Result<Graph> {
    if edges_per_step == 0 || n <= edges_per_step {
        return Err(Error::InvalidArgument(format!(
            "need edges_per_step >= 1 and n > edges_per_step (got n = {n}, edges_per_step = {edges_per_step})"
        )));
    }
    let mut rng = rng_from_seed(seed);
    let seed_nodes = edges_per_step + 1;
    let mut edges = Vec::with_capacity(seed_nodes * edges_per_step / 2 + (n - seed_nodes) * edges_per_step);
    // every edge endpoint appears once, so uniform picks are degree-proportional
    let mut endpoints: Vec<usize> = Vec::with_capacity(2 * edges.capacity());
    for u in 0..seed_nodes {
        for v in u + 1..seed_nodes {
            edges.push((u, v));
            endpoints.extend([u, v]);
        }
    }
    let mut chosen = Vec::with_capacity(edges_per_step);
    for v in seed_nodes..n {
        chosen.clear();
        while chosen.len() < edges_per_step {
            let t = endpoints[below(&mut rng, endpoints.len())];
            if !chosen.contains(&t) {
                chosen.push(t);
            }
        }
        for &t in &chosen {
            edges.push((t, v));
            endpoints.extend([t, v]);
        }
    }
    Graph::from_indexed_edges(n, edges)
}

/// Watts–Strogatz ring lattice with each edge's far endpoint rewired with
/// probability `rewire_p`. The edge count `n * ring_degree / 2` is preserved.
pub fn gen_ws(n: usize, ring_degree: usize, rewire_p: f64, seed: u64) -> Result<Graph> {
    check_probability("rewire_p", rewire_p)?;
    if !ring_degree.is_multiple_of(2) || ring_degree >= n {
        return Err(Error::InvalidArgument(format!(
            "ring_degree must be even and below n (got {ring_degree}, n = {n})"
        )));
    }
    let mut rng = rng_from_seed(seed);
    let half = ring_degree / 2;
    let mut adj: Vec<HashSet<usize>> = vec![HashSet::with_capacity(ring_degree + 2); n];
    let mut lattice = Vec::with_capacity(n * half);
    for u in 0..n {
        for j in 1..=half {
            let v = (u + j) % n;
            adj[u].insert(v);
            adj[v].insert(u);
            lattice.push((u, v));
        }
    }
    for (u, v) in lattice {
        if rng.random::<f64>() >= rewire_p || adj[u].len() >= n - 1 {
            continue;
        }
        let w = loop {
            let w = below(&mut rng, n);
            if w != u && !adj[u].contains(&w) {
                break w;
            }
        };
        adj[u].remove(&v);
        adj[v].remove(&u);
        adj[u].insert(w);
        adj[w].insert(u);
    }
    let edges: Vec<(usize, usize)> = adj
        .iter()
        .enumerate()
        .flat_map(|(u, nb)| nb.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
        .collect();
    Graph::from_indexed_edges(n, edges)
}

/// Forest-fire growth.
///
/// Each newcomer links to up to `ambassadors` distinct uniform existing
/// nodes and burns outward from them. From a burning node it takes a
/// geometric number of not-yet-visited out-links (mean `fwd_p / (1 - fwd_p)`)
/// and in-links (mean `bwd_p / (1 - fwd_p)`), links to them, and keeps
/// burning. Links are recorded directed and returned undirected.
pub fn gen_ff(n: usize, fwd_p: f64, bwd_p: f64, ambassadors: usize, seed: u64) -> Result<Graph> {
    check_probability("fwd_p", fwd_p)?;
    check_probability("bwd_p", bwd_p)?;
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let mut rng = rng_from_seed(seed);
    // continuation probability whose geometric count has mean bwd_p / (1 - fwd_p)
    let bwd_continue = if fwd_p >= 1.0 { 1.0 } else { bwd_p / (1.0 - fwd_p + bwd_p) };

    let mut out_links: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut in_links: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut stamp = vec![usize::MAX; n];
    let mut queue = std::collections::VecDeque::new();
    let mut candidates = Vec::new();

    let geometric = |rng: &mut ChaCha8Rng, p: f64, cap: usize| {
        let mut k = 0;
        while k < cap && rng.random::<f64>() < p {
            k += 1;
        }
        k
    };

    for v in 1..n {
        stamp[v] = v;
        queue.clear();
        let amb = ambassadors.min(v);
        let mut picked = 0;
        while picked < amb {
            let w = below(&mut rng, v);
            if stamp[w] != v {
                stamp[w] = v;
                queue.push_back(w);
                picked += 1;
            }
        }
        let mut linked: Vec<usize> = queue.iter().copied().collect();

        while let Some(w) = queue.pop_front() {
            for (links, p) in [(&out_links[w], fwd_p), (&in_links[w], bwd_continue)] {
                candidates.clear();
                candidates.extend(links.iter().copied().filter(|&x| stamp[x] != v));
                let take = geometric(&mut rng, p, candidates.len());
                for i in 0..take {
                    let j = i + below(&mut rng, candidates.len() - i);
                    candidates.swap(i, j);
                    let x = candidates[i];
                    stamp[x] = v;
                    queue.push_back(x);
                    linked.push(x);
                }
            }
        }
        for &x in &linked {
            out_links[v].push(x);
            in_links[x].push(v);
        }
    }
    let edges = out_links
        .iter()
        .enumerate()
        .flat_map(|(u, targets)| targets.iter().map(move |&t| (u, t)));
    Graph::from_indexed_edges(n, edges)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Model {
    Er { edges: usize },
    Ba { edges_per_step: usize },
    Ws { ring_degree: usize, rewire_p: f64 },
    Ff { fwd_p: f64, bwd_p: f64, ambassadors: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModelKind {
    Er,
    Ba,
    Ws,
    Ff,
}

impl ModelKind {
    pub const ALL: [ModelKind; 4] = [ModelKind::Er, ModelKind::Ba, ModelKind::Ws, ModelKind::Ff];

    pub fn tag(self) -> &'static str {
        match self {
            ModelKind::Er => "er",
            ModelKind::Ba => "ba",
            ModelKind::Ws => "ws",
            ModelKind::Ff => "ff",
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "er" => Ok(ModelKind::Er),
            "ba" => Ok(ModelKind::Ba),
            "ws" => Ok(ModelKind::Ws),
            "ff" => Ok(ModelKind::Ff),
            other => Err(Error::InvalidArgument(format!("unknown model {other:?}"))),
        }
    }
}

/// A fully specified generator run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenSpec {
    pub n: usize,
    pub model: Model,
    pub seed: u64,
}

impl GenSpec {
    /// The standard parameterisation: ER `G(n, 2n)`, BA with 4 edges per
    /// step, WS with degree 4 and rewiring 0.3, FF with forward 0.2,
    /// backward 0.4 and 4 ambassadors.
    pub fn standard(kind: ModelKind, n: usize, seed: u64) -> Self {
        let model = match kind {
            ModelKind::Er => Model::Er { edges: 2 * n },
            ModelKind::Ba => Model::Ba { edges_per_step: 4 },
            ModelKind::Ws => Model::Ws {
                ring_degree: 4,
                rewire_p: 0.3,
            },
            ModelKind::Ff => Model::Ff {
                fwd_p: 0.2,
                bwd_p: 0.4,
                ambassadors: 4,
            },
        };
        GenSpec { n, model, seed }
    }

    pub fn kind(&self) -> ModelKind {
        match self.model {
            Model::Er { .. } => ModelKind::Er,
            Model::Ba { .. } => ModelKind::Ba,
            Model::Ws { .. } => ModelKind::Ws,
            Model::Ff { .. } => ModelKind::Ff,
        }
    }

    /// `"<model>-<n>-<seed>"`
    pub fn name(&self) -> String {
        format!("{}-{}-{}", self.kind(), self.n, self.seed)
    }

    pub fn file_name(&self) -> String {
        format!("{}.edges", self.name())
    }

    pub fn generate(&self) -> Result<Graph> {
        match self.model {
            Model::Er { edges } => gen_er(self.n, edges, self.seed),
            Model::Ba { edges_per_step } => gen_ba(self.n, edges_per_step, self.seed),
            Model::Ws {
                ring_degree,
                rewire_p,
            } => gen_ws(self.n, ring_degree, rewire_p, self.seed),
            Model::Ff {
                fwd_p,
                bwd_p,
                ambassadors,
            } => gen_ff(self.n, fwd_p, bwd_p, ambassadors, self.seed),
        }
    }
}
