mod common;

use common::*;
use netsimile::generators::{gen_ba, gen_er, gen_ff, gen_ws, GenSpec, ModelKind};
use netsimile::spectral::{dense_spectrum, eig_compare, top_eigenvalues};
use netsimile::compare::Metric;
use netsimile::Graph;

fn average_degree(g: &Graph) -> f64 {
    2.0 * g.edge_count() as f64 / g.node_count() as f64
}

#[test]
fn edge_counts_follow_construction() {
    for seed in 0..5 {
        assert_eq!(gen_er(1000, 2000, seed).unwrap().edge_count(), 2000);
        assert_eq!(gen_ba(1000, 4, seed).unwrap().edge_count(), 3990);
        assert_eq!(gen_ws(2000, 4, 0.3, seed).unwrap().edge_count(), 4000);
        assert_eq!(gen_er(1000, 2000, seed).unwrap().node_count(), 1000);
    }
}

#[test]
fn same_spec_same_edge_list() {
    for kind in ModelKind::ALL {
        let spec = GenSpec::standard(kind, 500, 21);
        let a = spec.generate().unwrap().to_canonical_edge_list();
        let b = spec.generate().unwrap().to_canonical_edge_list();
        assert_eq!(a, b);
        let other = GenSpec::standard(kind, 500, 22).generate().unwrap().to_canonical_edge_list();
        assert_ne!(a, other);
    }
}

#[test]
fn ba_max_degree_grows_with_size() {
    let max_degrees = |n: usize| -> Vec<f64> {
        (0..10).map(|s| gen_ba(n, 4, s).unwrap().max_degree() as f64).collect()
    };
    assert!(median(&max_degrees(10_000)) > median(&max_degrees(1000)));
}

#[test]
fn forest_fire_densifies() {
    for seed in 0..5 {
        let ff = gen_ff(10_000, 0.2, 0.4, 4, seed).unwrap();
        let er = gen_er(10_000, 20_000, seed).unwrap();
        assert!(average_degree(&ff) > average_degree(&er), "seed {seed}");
    }
}

#[test]
fn ws_lattice_clustering() {
    let g = gen_ws(30, 4, 0.0, 1).unwrap();
    let fm = netsimile::extract_features(&g, "ring");
    assert!(fm.rows.iter().all(|r| r.degree == 4.0 && r.clustering == 0.5));
}

#[test]
fn spectrum_invariant_under_relabeling() {
    for kind in ModelKind::ALL {
        for n in [40, 400] {
            let g = generate(kind, n, 8);
            let h = g.permute(&random_permutation(n, 3)).unwrap();
            let a = top_eigenvalues(&g, 10, "g").unwrap();
            let b = top_eigenvalues(&h, 10, "h").unwrap();
            for (x, y) in a.values.iter().zip(&b.values) {
                assert!((x - y).abs() <= 1e-7, "{kind}-{n}: {x} vs {y}");
            }
            let dm = eig_compare(&[a, b], Metric::Canberra).unwrap();
            assert!(dm.get(0, 1) < 1e-6);
        }
    }
}

#[test]
fn iterative_and_dense_agree() {
    for seed in 0..5 {
        let g = gen_er(64, 150, seed).unwrap();
        let dense = dense_spectrum(&g);
        let iterative = netsimile::spectral::lanczos_top(&g, 10).unwrap();
        for (a, b) in iterative.iter().zip(&dense) {
            assert!((a - b).abs() <= 1e-6);
        }
    }
}

#[test]
fn leading_eigenvalue_within_degree_bounds() {
    for seed in 0..3 {
        let g = gen_ws(500, 6, 0.1, seed).unwrap();
        let lambda = top_eigenvalues(&g, 3, "g").unwrap().values[0];
        assert!(lambda >= average_degree(&g) - 1e-9);
        assert!(lambda <= g.max_degree() as f64 + 1e-9);
    }
}
