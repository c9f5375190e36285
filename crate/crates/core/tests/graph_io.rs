mod common;

use common::*;
use netsimile::features::triangle_counts;
use netsimile::generators::ModelKind;
use netsimile::{load_edge_list, Graph};
use proptest::prelude::*;

fn edge_set() -> impl Strategy<Value = Vec<(u8, u8)>> {
    prop::collection::vec((0u8..25, 0u8..25), 1..80)
}

fn to_text(edges: &[(u8, u8)]) -> String {
    edges.iter().map(|(u, v)| format!("n{u} n{v}\n")).collect()
}

fn sorted_degrees(g: &Graph) -> Vec<usize> {
    let mut d: Vec<usize> = (0..g.node_count()).map(|i| g.degree(i)).collect();
    d.sort_unstable();
    d
}

proptest! {
    #[test]
    fn canonical_round_trip(edges in edge_set()) {
        let g = load_edge_list(to_text(&edges).as_bytes()).unwrap();
        let text = g.to_canonical_edge_list();
        let h = load_edge_list(text.as_bytes()).unwrap();
        prop_assert_eq!(&h, &g);
        prop_assert_eq!(h.to_canonical_edge_list(), text);
    }

    #[test]
    fn line_order_and_direction_do_not_matter(edges in edge_set(), seed in any::<u64>()) {
        let g = load_edge_list(to_text(&edges).as_bytes()).unwrap();
        let perm = random_permutation(edges.len(), seed);
        let mut shuffled = vec![(0, 0); edges.len()];
        for (i, &p) in perm.iter().enumerate() {
            let (u, v) = edges[i];
            shuffled[p] = if seed % 2 == 0 { (v, u) } else { (u, v) };
        }
        let h = load_edge_list(to_text(&shuffled).as_bytes()).unwrap();
        prop_assert_eq!(g, h);
    }

    #[test]
    fn loaded_graph_invariants(edges in edge_set()) {
        let g = load_edge_list(to_text(&edges).as_bytes()).unwrap();
        let mut half_edges = 0;
        for i in 0..g.node_count() {
            let nb = g.neighbors(i);
            prop_assert!(nb.windows(2).all(|w| w[0] < w[1]));
            prop_assert!(!nb.contains(&(i as u32)));
            for &j in nb {
                prop_assert!(g.has_edge(j as usize, i));
            }
            half_edges += nb.len();
        }
        prop_assert_eq!(half_edges, 2 * g.edge_count());
    }

    #[test]
    fn permutation_preserves_structure(edges in edge_set(), seed in any::<u64>()) {
        let g = load_edge_list(to_text(&edges).as_bytes()).unwrap();
        let h = g.permute(&random_permutation(g.node_count(), seed)).unwrap();
        prop_assert_eq!(h.edge_count(), g.edge_count());
        prop_assert_eq!(sorted_degrees(&h), sorted_degrees(&g));
        let tri = |g: &Graph| triangle_counts(g).iter().sum::<usize>();
        prop_assert_eq!(tri(&h), tri(&g));
        // labels travel with their nodes
        for (u, v) in g.edges() {
            let (a, b) = (h.index_of(g.label(u)).unwrap(), h.index_of(g.label(v)).unwrap());
            prop_assert!(h.has_edge(a, b));
        }
    }
}

#[test]
fn generated_graphs_round_trip() {
    for kind in ModelKind::ALL {
        let g = generate(kind, 300, 11);
        let h = load_edge_list(g.to_canonical_edge_list().as_bytes()).unwrap();
        assert_eq!(h.node_count(), g.node_count());
        assert_eq!(h.edge_count(), g.edge_count());
        assert_eq!(sorted_degrees(&h), sorted_degrees(&g));
    }
}

#[test]
fn comments_and_errors() {
    let g = load_edge_list(b"# header\n% other\n\na b\n  b   c \n").unwrap();
    assert_eq!((g.node_count(), g.edge_count()), (3, 2));
    let err = load_edge_list(b"a b\n\nx\n").unwrap_err().to_string();
    assert!(err.contains("line 3"), "{err}");
}
