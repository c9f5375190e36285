//! Test-only reference implementations, written from the definitions and
//! sharing no code with the library beyond the `Graph` accessors.
#![allow(dead_code, clippy::needless_range_loop)]

use netsimile::generators::{GenSpec, ModelKind};
use netsimile::Graph;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Feature rows by exhaustive enumeration over an adjacency matrix.
pub fn brute_force_features(g: &Graph) -> Vec<[f64; 7]> {
    let n = g.node_count();
    let mut adj = vec![vec![false; n]; n];
    for (u, v) in g.edges() {
        adj[u][v] = true;
        adj[v][u] = true;
    }
    let degree: Vec<usize> = (0..n).map(|i| adj[i].iter().filter(|&&x| x).count()).collect();
    let clustering: Vec<f64> = (0..n)
        .map(|i| {
            let d = degree[i];
            if d < 2 {
                return 0.0;
            }
            let mut tri = 0usize;
            for j in 0..n {
                for k in j + 1..n {
                    if adj[i][j] && adj[i][k] && adj[j][k] {
                        tri += 1;
                    }
                }
            }
            tri as f64 / (d * (d - 1) / 2) as f64
        })
        .collect();

    (0..n)
        .map(|i| {
            let d = degree[i];
            let nbrs: Vec<usize> = (0..n).filter(|&j| adj[i][j]).collect();
            let in_ego: Vec<bool> = (0..n).map(|j| j == i || adj[i][j]).collect();
            let (mut inside, mut leaving) = (0usize, 0usize);
            let mut outside_nodes = 0usize;
            for u in 0..n {
                for v in u + 1..n {
                    if adj[u][v] {
                        match (in_ego[u], in_ego[v]) {
                            (true, true) => inside += 1,
                            (true, false) | (false, true) => leaving += 1,
                            _ => {}
                        }
                    }
                }
                if !in_ego[u] && (0..n).any(|s| in_ego[s] && adj[s][u]) {
                    outside_nodes += 1;
                }
            }
            let (avg_deg, avg_clust) = if d == 0 {
                (0.0, 0.0)
            } else {
                let dsum: usize = nbrs.iter().map(|&j| degree[j]).sum();
                let csum: f64 = nbrs.iter().map(|&j| clustering[j]).sum();
                (dsum as f64 / d as f64, csum / d as f64)
            };
            [
                d as f64,
                clustering[i],
                avg_deg,
                avg_clust,
                inside as f64,
                leaving as f64,
                outside_nodes as f64,
            ]
        })
        .collect()
}

/// Median, mean, population stdev, skewness and excess kurtosis, evaluated
/// with plain sums in the given order.
pub fn naive_moments(xs: &[f64]) -> [f64; 5] {
    let n = xs.len() as f64;
    let mut s = xs.to_vec();
    s.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let median = if s.len() % 2 == 1 {
        s[s.len() / 2]
    } else {
        0.5 * (s[s.len() / 2 - 1] + s[s.len() / 2])
    };
    let mean = xs.iter().sum::<f64>() / n;
    let m = |k: i32| xs.iter().map(|x| (x - mean).powi(k)).sum::<f64>() / n;
    let (m2, m3, m4) = (m(2), m(3), m(4));
    if s[0] == s[s.len() - 1] {
        return [median, mean, 0.0, 0.0, 0.0];
    }
    [median, mean, m2.sqrt(), m3 / m2.powf(1.5), m4 / (m2 * m2) - 3.0]
}

pub fn random_permutation(n: usize, seed: u64) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    p
}

pub fn generate(kind: ModelKind, n: usize, seed: u64) -> Graph {
    GenSpec::standard(kind, n, seed).generate().unwrap()
}

/// `|a - b| <= tol * max(|a|, |b|)`, treating two zeros as equal.
pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    a == b || (a - b).abs() <= tol * a.abs().max(b.abs())
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
pub fn jacobi_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    ev.sort_by(|x, y| y.partial_cmp(x).unwrap());
    ev
}

pub fn pearson(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let syy: f64 = y.iter().map(|b| (b - my).powi(2)).sum();
    sxy / (sxx * syy).sqrt()
}

pub fn median(xs: &[f64]) -> f64 {
    let mut s = xs.to_vec();
    s.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let k = s.len();
    if k % 2 == 1 {
        s[k / 2]
    } else {
        0.5 * (s[k / 2 - 1] + s[k / 2])
    }
}

/// Fraction of items whose cluster's majority label matches their own.
pub fn purity(assignment: &[usize], labels: &[&str]) -> f64 {
    use std::collections::HashMap;
    let mut counts: HashMap<usize, HashMap<&str, usize>> = HashMap::new();
    for (&c, &l) in assignment.iter().zip(labels) {
        *counts.entry(c).or_default().entry(l).or_default() += 1;
    }
    let majority: usize = counts.values().map(|m| m.values().copied().max().unwrap()).sum();
    majority as f64 / assignment.len() as f64
}
