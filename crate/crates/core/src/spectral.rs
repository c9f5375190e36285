//! Top adjacency eigenvalues as a global graph descriptor.
//!
//! Small graphs go through a dense symmetric eigensolver. Larger ones use
//! Lanczos with full reorthogonalization; converged Ritz pairs are locked
//! and later runs start orthogonal to them, which recovers repeated
//! eigenvalues that a single Krylov space cannot see.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::Rng;

use crate::compare::{pairwise_compare, DistanceMatrix, Metric};
use crate::error::{Error, Result};
use crate::features::csv_field;
use crate::generators::rng_from_seed;
use crate::graph::Graph;

pub const DEFAULT_K: usize = 10;
/// Graphs up to this many nodes are solved densely.
pub const DENSE_LIMIT: usize = 64;
pub const RESIDUAL_TOL: f64 = 1e-8;
const MAX_ROUNDS: usize = 64;
const START_SEED: u64 = 0x5eed_1a9c_2b3d_4e5f;

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralVector {
    pub name: String,
    /// Non-increasing; zero-padded when the graph has fewer than `k` nodes.
    pub values: Vec<f64>,
}

impl SpectralVector {
    pub fn k(&self) -> usize {
        self.values.len()
    }

    pub fn csv_header(k: usize) -> String {
        let mut h = String::from("graph");
        for i in 1..=k {
            h.push_str(&format!(",lambda{i}"));
        }
        h
    }

    pub fn csv_row(&self) -> String {
        let mut row = csv_field(&self.name);
        for v in &self.values {
            row.push(',');
            row.push_str(&v.to_string());
        }
        row
    }
}

fn matvec(g: &Graph, x: &[f64], y: &mut [f64]) {
    for (i, yi) in y.iter_mut().enumerate() {
        *yi = g.neighbors(i).iter().map(|&j| x[j as usize]).sum();
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

/// `‖A v − λ v‖` for a unit vector `v`.
pub fn residual(g: &Graph, lambda: f64, v: &[f64]) -> f64 {
    let mut av = vec![0.0; v.len()];
    matvec(g, v, &mut av);
    axpy(-lambda, v, &mut av);
    norm(&av)
}

fn converged(res: f64, lambda: f64) -> bool {
    res <= RESIDUAL_TOL * lambda.abs().max(1.0)
}

/// All eigenvalues of the dense adjacency matrix, non-increasing.
pub fn dense_spectrum(g: &Graph) -> Vec<f64> {
    let n = g.node_count();
    let a = DMatrix::from_fn(n, n, |i, j| if g.has_edge(i, j) { 1.0 } else { 0.0 });
    let mut vals: Vec<f64> = SymmetricEigen::new(a).eigenvalues.iter().copied().collect();
    vals.sort_by(|a, b| b.total_cmp(a));
    vals
}

struct RitzPair {
    value: f64,
    vector: Vec<f64>,
}

/// Removes the components along `basis` (two passes of classical Gram-Schmidt).
fn orthogonalize(w: &mut [f64], basis: &[Vec<f64>]) {
    for _ in 0..2 {
        for q in basis {
            let c = dot(w, q);
            axpy(-c, q, w);
        }
    }
}

/// One Lanczos run of at most `dim` steps orthogonal to `locked`. Returns
/// Ritz pairs sorted by value, largest first.
fn lanczos_run(g: &Graph, locked: &[Vec<f64>], dim: usize, round: u64) -> Vec<RitzPair> {
    let n = g.node_count();
    let mut rng = rng_from_seed(START_SEED ^ round.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let mut q: Vec<f64> = (0..n).map(|_| rng.random::<f64>() - 0.5).collect();
    orthogonalize(&mut q, locked);
    let qn = norm(&q);
    if qn < 1e-12 {
        return Vec::new();
    }
    q.iter_mut().for_each(|v| *v /= qn);

    let mut basis: Vec<Vec<f64>> = vec![q];
    let mut alpha = Vec::with_capacity(dim);
    let mut beta: Vec<f64> = Vec::with_capacity(dim);
    let mut w = vec![0.0; n];
    loop {
        let j = basis.len() - 1;
        matvec(g, &basis[j], &mut w);
        let a = dot(&w, &basis[j]);
        alpha.push(a);
        orthogonalize(&mut w, locked);
        orthogonalize(&mut w, &basis);
        let b = norm(&w);
        if basis.len() >= dim || b <= 1e-10 * a.abs().max(1.0) {
            break;
        }
        beta.push(b);
        basis.push(w.iter().map(|v| v / b).collect());
    }

    let m = alpha.len();
    let t = DMatrix::from_fn(m, m, |i, j| {
        if i == j {
            alpha[i]
        } else if i + 1 == j {
            beta[i]
        } else if j + 1 == i {
            beta[j]
        } else {
            0.0
        }
    });
    let eig = SymmetricEigen::new(t);
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    order
        .into_iter()
        .map(|c| {
            let s = eig.eigenvectors.column(c);
            let mut x = vec![0.0; n];
            for (k, qk) in basis.iter().enumerate() {
                axpy(s[k], qk, &mut x);
            }
            let xn = norm(&x);
            x.iter_mut().for_each(|v| *v /= xn);
            RitzPair {
                value: eig.eigenvalues[c],
                vector: x,
            }
        })
        .collect()
}

/// The `want` algebraically largest eigenvalues via locked Lanczos restarts.
pub fn lanczos_top(g: &Graph, want: usize) -> Result<Vec<f64>> {
    let n = g.node_count();
    let want = want.min(n);
    let mut locked_vals: Vec<f64> = Vec::new();
    let mut locked_vecs: Vec<Vec<f64>> = Vec::new();
    let mut dim = (2 * want + 20).max(40);
    let mut worst = 0.0f64;

    for round in 0..MAX_ROUNDS {
        let avail = n - locked_vecs.len();
        if avail == 0 {
            break;
        }
        let ritz = lanczos_run(g, &locked_vecs, dim.min(avail), round as u64);
        let Some(top) = ritz.first() else { break };

        let mut sorted = locked_vals.clone();
        sorted.sort_by(|a, b| b.total_cmp(a));
        let threshold = if sorted.len() >= want { sorted[want - 1] } else { f64::NEG_INFINITY };
        if top.value <= threshold + RESIDUAL_TOL * threshold.abs().max(1.0) {
            let res = residual(g, top.value, &top.vector);
            if converged(res, top.value) || dim >= avail {
                break;
            }
        }

        let mut added = 0;
        for pair in &ritz {
            if pair.value <= threshold {
                break;
            }
            let res = residual(g, pair.value, &pair.vector);
            if !converged(res, pair.value) {
                worst = worst.max(res);
                break;
            }
            locked_vals.push(pair.value);
            locked_vecs.push(pair.vector.clone());
            added += 1;
        }
        if added == 0 {
            if dim >= avail {
                return Err(Error::NoConvergence { residual: worst });
            }
            dim = (dim * 2).min(avail);
        }
    }

    if locked_vals.len() < want && locked_vecs.len() < n {
        return Err(Error::NoConvergence { residual: worst });
    }
    locked_vals.sort_by(|a, b| b.total_cmp(a));
    locked_vals.truncate(want);
    Ok(locked_vals)
}

/// The `k` algebraically largest adjacency eigenvalues, zero-padded to `k`.
pub fn top_eigenvalues(g: &Graph, k: usize, name: impl Into<String>) -> Result<SpectralVector> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let mut values = if g.node_count() <= DENSE_LIMIT {
        let mut all = dense_spectrum(g);
        all.truncate(k);
        all
    } else {
        lanczos_top(g, k)?
    };
    values.resize(k, 0.0);
    Ok(SpectralVector {
        name: name.into(),
        values,
    })
}

/// Pairwise distances between spectral vectors of equal length.
pub fn eig_compare(specs: &[SpectralVector], metric: Metric) -> Result<DistanceMatrix> {
    if let Some(first) = specs.first() {
        if let Some(bad) = specs.iter().find(|s| s.k() != first.k()) {
            return Err(Error::LengthMismatch(bad.k(), first.k()));
        }
    }
    let items: Vec<(&str, &[f64])> = specs.iter().map(|s| (s.name.as_str(), s.values.as_slice())).collect();
    pairwise_compare(&items, metric)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_ba, gen_er, gen_ws};
    use crate::graph::tests::graph;

    fn close_all(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn closed_form_spectra() {
        let k3 = top_eigenvalues(&graph("a b\nb c\na c"), 3, "k3").unwrap();
        assert!(close_all(&k3.values, &[2.0, -1.0, -1.0], 1e-12));
        let star = top_eigenvalues(&graph("c a\nc b\nc d"), 4, "s").unwrap();
        let r3 = 3f64.sqrt();
        assert!(close_all(&star.values, &[r3, 0.0, 0.0, -r3], 1e-12));
        let c4 = top_eigenvalues(&graph("a b\nb c\nc d\nd a"), 4, "c4").unwrap();
        assert!(close_all(&c4.values, &[2.0, 0.0, 0.0, -2.0], 1e-12));
    }

    #[test]
    fn pads_small_graphs() {
        let s = top_eigenvalues(&graph("a b"), 5, "e").unwrap();
        assert!(close_all(&s.values, &[1.0, -1.0, 0.0, 0.0, 0.0], 1e-12));
        assert!(top_eigenvalues(&graph("a b"), 0, "e").is_err());
    }

    #[test]
    fn lanczos_agrees_with_dense() {
        for (i, g) in [
            gen_er(60, 150, 1).unwrap(),
            gen_ba(64, 3, 2).unwrap(),
            gen_ws(50, 4, 0.0, 3).unwrap(),
            graph("c a\nc b\nc d\nc e\nc f\nx y"),
        ]
        .iter()
        .enumerate()
        {
            let dense = dense_spectrum(g);
            let k = 10.min(g.node_count());
            let iter = lanczos_top(g, k).unwrap();
            assert!(close_all(&iter, &dense[..k], 1e-6), "graph {i}: {iter:?} vs {:?}", &dense[..k]);
        }
    }

    #[test]
    fn repeated_eigenvalues_recovered() {
        // ring lattice eigenvalues 2cos(2πj/n) + 2cos(4πj/n) come in pairs
        let g = gen_ws(40, 4, 0.0, 0).unwrap();
        let dense = dense_spectrum(&g);
        let iter = lanczos_top(&g, 10).unwrap();
        assert!(close_all(&iter, &dense[..10], 1e-6), "{iter:?} vs {:?}", &dense[..10]);
    }

    #[test]
    fn large_graph_residuals_and_bounds() {
        let g = gen_ba(3000, 4, 9).unwrap();
        let s = top_eigenvalues(&g, 10, "ba").unwrap();
        for w in s.values.windows(2) {
            assert!(w[0] >= w[1]);
        }
        let avg_degree = 2.0 * g.edge_count() as f64 / g.node_count() as f64;
        assert!(s.values[0] >= avg_degree && s.values[0] <= g.max_degree() as f64);
    }

    #[test]
    fn eig_compare_checks_k() {
        let a = SpectralVector { name: "a".into(), values: vec![1.0, 0.5] };
        let b = SpectralVector { name: "b".into(), values: vec![1.0] };
        assert!(matches!(eig_compare(&[a.clone(), b], Metric::Canberra), Err(Error::LengthMismatch(..))));
        let c = SpectralVector { name: "c".into(), values: vec![1.0, 0.5] };
        assert_eq!(eig_compare(&[a, c], Metric::Canberra).unwrap().get(0, 1), 0.0);
    }
}
