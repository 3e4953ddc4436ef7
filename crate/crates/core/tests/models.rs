mod common;

use std::collections::BTreeSet;

use common::{oracle_optimum, partition_blocks, random_graph, Side};
use kplex::model::{
    add_capacity_bounds, add_component_limit, build_f1c, build_f1s, build_fks, export_lp, IlpModel, ModelError,
    VarKind,
};
use kplex::solver::enumerate_model_solutions;
use kplex::WeightedGraph;
use proptest::prelude::*;

fn complete(n: usize, seed: u64) -> WeightedGraph {
    random_graph(n, 1.0, (-9, 9), seed)
}

/// Best objective over all feasible assignments, by enumeration.
fn model_optimum(m: &IlpModel) -> Option<i64> {
    enumerate_model_solutions(m, usize::MAX)
        .unwrap()
        .iter()
        .map(|a| m.objective_value(a).round() as i64)
        .max()
}

#[test]
fn f1s_equals_f1c_on_complete_graphs() {
    for n in 2..=8 {
        let g = complete(n, n as u64);
        let a = build_f1c(&g).unwrap();
        let b = build_f1s(&g);
        assert_eq!(a.variables, b.variables);
        assert_eq!(a.objective, b.objective);
        let rows = |m: &IlpModel| m.constraints.iter().map(|c| format!("{:?}{:?}{}", c.terms, c.sense, c.rhs)).collect::<BTreeSet<_>>();
        assert_eq!(rows(&a), rows(&b), "n {n}");
    }
    let path = WeightedGraph::new(3, [(1, 2, 1.0), (2, 3, 1.0)]).unwrap();
    assert!(matches!(build_f1c(&path), Err(ModelError::NotComplete { missing: 1 })));
    assert!(matches!(build_fks(&path, 1, true), Err(ModelError::KTooSmall { k: 1 })));
}

#[test]
fn feasible_assignments_are_transitive() {
    for s in 0..30u64 {
        let n = 5 + (s % 2) as usize;
        let g = random_graph(n, 0.6, (1, 5), 100 + s);
        for k in 2..=3 {
            let m = build_fks(&g, k, true).unwrap();
            for a in enumerate_model_solutions(&m, usize::MAX).unwrap() {
                let pt = m.assignment_to_partition(&a);
                for (id, kind) in m.variables.iter().enumerate() {
                    let (i, j) = kind.pair().unwrap();
                    assert_eq!(a[id], pt.same_component(i, j), "selected pairs must be exactly the same-component pairs");
                }
            }
        }
    }
}

#[test]
fn capacity_models_match_constrained_partitions() {
    for s in 0..25u64 {
        let n = 5 + (s % 2) as usize;
        let g = random_graph(n, 0.6, (-20, 40), 200 + s);
        for ub in [2.0, 3.0, 4.0, 5.0] {
            let m = add_capacity_bounds(&build_f1s(&g), &g, None, Some(ub)).unwrap();
            let side = Side { ub: Some(ub), ..Side::default() };
            assert_eq!(model_optimum(&m), oracle_optimum(&g, 1, side), "F1s seed {s} ub {ub}");
            let m = add_capacity_bounds(&build_fks(&g, 2, true).unwrap(), &g, None, Some(ub)).unwrap();
            assert_eq!(model_optimum(&m), oracle_optimum(&g, 2, side), "Fks seed {s} ub {ub}");
        }
        for lb in [2.0, 3.0] {
            let m = add_capacity_bounds(&build_fks(&g, 2, true).unwrap(), &g, Some(lb), None).unwrap();
            let side = Side { lb: Some(lb), ..Side::default() };
            assert_eq!(model_optimum(&m), oracle_optimum(&g, 2, side), "Fks seed {s} lb {lb}");
        }
    }
}

#[test]
fn capacity_examples() {
    let g = random_graph(5, 0.7, (1, 9), 300);
    let m = add_capacity_bounds(&build_f1s(&g), &g, None, Some(1.0)).unwrap();
    let sols = enumerate_model_solutions(&m, usize::MAX).unwrap();
    assert_eq!(sols, vec![vec![false; m.variables.len()]]);
    let plain = enumerate_model_solutions(&build_f1s(&g), usize::MAX).unwrap();
    let m = add_capacity_bounds(&build_f1s(&g), &g, Some(1.0), None).unwrap();
    assert_eq!(enumerate_model_solutions(&m, usize::MAX).unwrap(), plain);
    assert!(matches!(add_capacity_bounds(&build_f1s(&g), &g, Some(3.0), Some(2.0)), Err(ModelError::LbAboveUb { .. })));
    assert!(matches!(add_capacity_bounds(&build_f1s(&g), &g, Some(6.0), None), Err(ModelError::LbAboveTotal { .. })));
}

#[test]
fn component_limit_models_match_partitions() {
    for s in 0..25u64 {
        let n = 4 + (s % 2) as usize;
        let g = random_graph(n, 0.6, (-20, 40), 400 + s);
        for p in 1..=3usize {
            if n * p + n * (n - 1) / 2 > 25 {
                continue;
            }
            let side = Side { p: Some(p), ..Side::default() };
            let m = add_component_limit(&build_f1s(&g), &g, p).unwrap();
            assert_eq!(model_optimum(&m), oracle_optimum(&g, 1, side), "F1s seed {s} P {p}");
            let m = add_component_limit(&build_fks(&g, 2, true).unwrap(), &g, p).unwrap();
            assert_eq!(model_optimum(&m), oracle_optimum(&g, 2, side), "Fks seed {s} P {p}");
            // induced partitions respect the limit
            for a in enumerate_model_solutions(&m, usize::MAX).unwrap() {
                assert!(m.assignment_to_partition(&a).component_count() <= p);
            }
        }
    }
}

#[test]
fn component_limit_variables() {
    let g = WeightedGraph::new(3, [(1, 2, 1.0)]).unwrap();
    let m = add_component_limit(&build_f1s(&g), &g, 2).unwrap();
    let z: Vec<_> = m.variables.iter().filter(|v| matches!(v, VarKind::NodeComp { .. })).collect();
    assert_eq!(z.len(), 6);
    assert!(matches!(add_component_limit(&m, &g, 2), Err(ModelError::AlreadyPresent { .. })));
    assert!(matches!(add_component_limit(&build_f1s(&g), &g, 0), Err(ModelError::ZeroComponents)));
}

#[test]
fn enumeration_limit() {
    let g = complete(8, 1);
    assert!(enumerate_model_solutions(&build_f1s(&g), 10).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn f1s_induces_exactly_clique_partitions(n in 2usize..6, density in 0.0f64..1.0, seed in any::<u64>()) {
        let g = random_graph(n, density, (1, 3), seed);
        let m = build_f1s(&g);
        let sols = enumerate_model_solutions(&m, usize::MAX).unwrap();
        let induced: BTreeSet<_> = sols.iter().map(|a| partition_blocks(&m.assignment_to_partition(a))).collect();
        prop_assert_eq!(induced.len(), sols.len());
        prop_assert_eq!(induced, common::kplex_partitions(&g, 1));
    }

    #[test]
    fn export_is_pure(n in 2usize..7, density in 0.0f64..1.0, seed in any::<u64>(), k in 2usize..4) {
        let g = random_graph(n, density, (-5, 5), seed);
        let m = build_fks(&g, k, true).unwrap();
        prop_assert_eq!(export_lp(&m), export_lp(&build_fks(&g, k, true).unwrap()));
    }
}
