use kplex::graph::{parse_auto, parse_dimacs, parse_weighted_edge_list, write_weighted_edge_list, GraphError};
use kplex::WeightedGraph;
use proptest::prelude::*;

#[test]
fn bundled_instances() {
    for (file, n, m, d) in [("johnson8-2-4.clq", 28, 210, 0.556), ("hamming6-4.clq", 64, 704, 0.349)] {
        let text = std::fs::read_to_string(format!("{}/data/{file}", env!("CARGO_MANIFEST_DIR"))).unwrap();
        let g = parse_dimacs(&text).unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (n, m), "{file}");
        assert!((g.density().unwrap() - d).abs() < 5e-4, "{file}");
        assert!(g.adjacency_consistent());
    }
}

#[test]
fn parse_errors() {
    assert!(matches!(parse_dimacs("e 1 2\n"), Err(GraphError::MissingProblemLine)));
    assert!(matches!(parse_dimacs("p edge 2 1\ne 1 3\n"), Err(GraphError::NodeOutOfRange { .. })));
    assert!(matches!(parse_dimacs("p edge 2 1\ne 2 2\n"), Err(GraphError::SelfLoop { .. })));
    assert!(matches!(parse_weighted_edge_list("2\n1 2 5\n1 2 7\n"), Err(GraphError::ConflictingWeight { .. })));
    assert!(matches!(parse_weighted_edge_list("2\nq 1 -1\n"), Err(GraphError::BadNodeWeight { .. })));
    assert!(parse_weighted_edge_list("2\n1 x 5\n").is_err());
    // header count mismatch only warns
    assert_eq!(parse_dimacs("p edge 3 5\ne 1 2\ne 2 1\n").unwrap().edge_count(), 1);
    assert_eq!(parse_auto("# c\n2\n1 2 -4500\n").unwrap().weight(1, 2), Some(-4500.0));
}

proptest! {
    #[test]
    fn edge_list_round_trip(n in 1usize..30, density in 0.0f64..1.0, seed in any::<u64>(), with_q in any::<bool>()) {
        let mut g = WeightedGraph::random(n, density, (-1000, 1000), seed).map_weights(|i, j, w| w + ((i + j) % 4) as f64 * 0.25);
        if with_q {
            g = g.with_node_weights((1..=n).map(|i| (i % 5) as f64 * 0.5).collect()).unwrap();
        }
        let text = write_weighted_edge_list(&g);
        let back = parse_weighted_edge_list(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(g.edge_count() + g.complement_edges().len(), n * (n - 1) / 2);
    }

    #[test]
    fn pullan_weights_in_range(n in 1usize..250, density in 0.0f64..0.2, seed in any::<u64>()) {
        let g = WeightedGraph::random(n, density, (1, 1), seed);
        let p = kplex::graph::apply_pullan_weights(&g);
        prop_assert_eq!(p.edge_count(), g.edge_count());
        prop_assert!(p.edges().iter().all(|e| (1.0..=200.0).contains(&e.w) && e.w == (((e.i + e.j) % 200) + 1) as f64));
    }
}
