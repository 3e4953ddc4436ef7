//! Ground-truth definitions for k-plex partitions.
//!
//! Nothing here depends on the ILP models or on the search; these functions
//! are the reference the rest of the crate is checked against.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::config::{SolverConfig, CAPACITY_EPS};
use crate::graph::WeightedGraph;
use crate::partition::Partition;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemanticsError {
    #[error("node set is empty")]
    EmptySet,
    #[error("node {node} outside 1..={n}")]
    NodeOutOfRange { node: usize, n: usize },
    #[error("k must be at least 1")]
    ZeroK,
}

/// True iff every member of `set` is adjacent to at least `|set| - k` other
/// members.
pub fn is_kplex(g: &WeightedGraph, set: &[usize], k: usize) -> Result<bool, SemanticsError> {
    if set.is_empty() {
        return Err(SemanticsError::EmptySet);
    }
    if k == 0 {
        return Err(SemanticsError::ZeroK);
    }
    let n = g.node_count();
    if let Some(&node) = set.iter().find(|&&v| v == 0 || v > n) {
        return Err(SemanticsError::NodeOutOfRange { node, n });
    }
    Ok(kplex_unchecked(g, set, k))
}

pub(crate) fn kplex_unchecked(g: &WeightedGraph, set: &[usize], k: usize) -> bool {
    let need = set.len().saturating_sub(k);
    set.iter().all(|&i| set.iter().filter(|&&j| j != i && g.has_edge(i, j)).count() >= need)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Violation {
    NotKPlex { label: usize },
    BelowLb { label: usize, weight: f64 },
    AboveUb { label: usize, weight: f64 },
    TooManyComponents { count: usize, limit: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotKPlex { label } => write!(f, "component {label} is not a k-plex"),
            Violation::BelowLb { label, weight } => {
                write!(f, "component {label} has node weight {weight} below lb")
            }
            Violation::AboveUb { label, weight } => {
                write!(f, "component {label} has node weight {weight} above ub")
            }
            Violation::TooManyComponents { count, limit } => {
                write!(f, "{count} components exceed the limit {limit}")
            }
        }
    }
}

/// Every violated condition of `pt` under `cfg`; empty means feasible.
pub fn validate_partition(g: &WeightedGraph, pt: &Partition, cfg: &SolverConfig) -> Vec<Violation> {
    let mut out = Vec::new();
    for (idx, members) in pt.components().iter().enumerate() {
        let label = idx + 1;
        if !kplex_unchecked(g, members, cfg.k.max(1)) {
            out.push(Violation::NotKPlex { label });
        }
        let weight: f64 = members.iter().map(|&v| g.node_weight(v)).sum();
        if let Some(lb) = cfg.lb {
            if weight < lb - CAPACITY_EPS {
                out.push(Violation::BelowLb { label, weight });
            }
        }
        if let Some(ub) = cfg.ub {
            if weight > ub + CAPACITY_EPS {
                out.push(Violation::AboveUb { label, weight });
            }
        }
    }
    if let Some(limit) = cfg.max_components {
        let count = pt.component_count();
        if count > limit {
            out.push(Violation::TooManyComponents { count, limit });
        }
    }
    out
}

/// Sum of weights of edges whose endpoints share a component.
pub fn partition_weight(g: &WeightedGraph, pt: &Partition) -> f64 {
    let inside = g.edges().iter().filter(|e| pt.same_component(e.i, e.j));
    if g.is_integral() {
        inside.map(|e| e.w as i64).sum::<i64>() as f64
    } else {
        inside.map(|e| e.w).sum()
    }
}

/// Labels of multi-node components without a single internal edge.
pub fn spurious_components(g: &WeightedGraph, pt: &Partition) -> Vec<usize> {
    pt.components()
        .iter()
        .enumerate()
        .filter(|(_, members)| {
            members.len() >= 2
                && members.iter().enumerate().all(|(a, &i)| members[a + 1..].iter().all(|&j| !g.has_edge(i, j)))
        })
        .map(|(idx, _)| idx + 1)
        .collect()
}

/// Whether nonnegative weights and `k >= n - min degree` make the whole node
/// set an optimal partition.
pub fn prop1_applies(g: &WeightedGraph, k: usize) -> bool {
    !g.has_negative_weight() && k + g.min_degree() >= g.node_count()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PartitionStats {
    pub comp: usize,
    pub largest: usize,
    /// Singletons over n, in percent.
    pub singlt: f64,
    pub weight: f64,
}

pub fn partition_stats(g: &WeightedGraph, pt: &Partition) -> PartitionStats {
    let comps = pt.components();
    let singles = comps.iter().filter(|c| c.len() == 1).count();
    PartitionStats {
        comp: comps.len(),
        largest: comps.iter().map(Vec::len).max().unwrap_or(0),
        singlt: if pt.node_count() == 0 { 0.0 } else { singles as f64 * 100.0 / pt.node_count() as f64 },
        weight: partition_weight(g, pt),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize, f64)]) -> WeightedGraph {
        WeightedGraph::new(n, edges.iter().copied()).unwrap()
    }

    fn complete(n: usize) -> WeightedGraph {
        WeightedGraph::new(n, (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j, 1.0)))).unwrap()
    }

    #[test]
    fn kplex_examples() {
        let k4 = complete(4);
        assert!(is_kplex(&k4, &[1, 2, 3, 4], 1).unwrap());
        // star: center 1 with leaves 2, 3, 4
        let star = graph(4, &[(1, 2, 1.0), (1, 3, 1.0), (1, 4, 1.0)]);
        assert!(!is_kplex(&star, &[1, 2, 3, 4], 2).unwrap());
        assert!(is_kplex(&star, &[1, 2, 3, 4], 3).unwrap());
        let empty = graph(3, &[]);
        assert!(is_kplex(&empty, &[1, 2, 3], 3).unwrap());
        assert!(!is_kplex(&empty, &[1, 2, 3], 2).unwrap());
        assert_eq!(is_kplex(&empty, &[], 1), Err(SemanticsError::EmptySet));
        assert_eq!(is_kplex(&empty, &[4], 1), Err(SemanticsError::NodeOutOfRange { node: 4, n: 3 }));
    }

    #[test]
    fn validation() {
        let g = graph(5, &[(1, 2, 1.0), (2, 3, 1.0)]);
        assert!(validate_partition(&g, &Partition::singletons(5), &SolverConfig::new(1)).is_empty());
        let cfg = SolverConfig::new(1).with_max_components(4);
        assert_eq!(
            validate_partition(&g, &Partition::singletons(5), &cfg),
            vec![Violation::TooManyComponents { count: 5, limit: 4 }]
        );
        let k5 = complete(5);
        assert!(validate_partition(&k5, &Partition::whole(5), &SolverConfig::new(1)).is_empty());
        let path = Partition::from_labels(vec![1, 1, 1, 2, 3]).unwrap();
        assert_eq!(validate_partition(&g, &path, &SolverConfig::new(1)), vec![Violation::NotKPlex { label: 1 }]);
        assert!(validate_partition(&g, &path, &SolverConfig::new(2)).is_empty());
        let cfg = SolverConfig::new(2).with_ub(2.0).with_lb(2.0);
        let v = validate_partition(&g, &path, &cfg);
        assert!(v.contains(&Violation::AboveUb { label: 1, weight: 3.0 }));
        assert!(v.contains(&Violation::BelowLb { label: 2, weight: 1.0 }));
    }

    #[test]
    fn weights() {
        let tri = graph(3, &[(1, 2, 3.0), (1, 3, -5.0), (2, 3, 4.0)]);
        assert_eq!(partition_weight(&tri, &Partition::whole(3)), 2.0);
        assert_eq!(partition_weight(&tri, &Partition::singletons(3)), 0.0);
    }

    #[test]
    fn spurious() {
        let g = graph(5, &[(3, 4, 1.0), (3, 5, 1.0), (4, 5, 1.0)]);
        assert!(spurious_components(&g, &Partition::singletons(5)).is_empty());
        let p = Partition::from_labels(vec![1, 1, 2, 2, 2]).unwrap();
        assert_eq!(spurious_components(&g, &p), vec![1]);
    }

    #[test]
    fn prop1() {
        assert!(prop1_applies(&complete(6), 1));
        let neg = graph(3, &[(1, 2, 1.0), (2, 3, -1.0), (1, 3, 1.0)]);
        assert!(!prop1_applies(&neg, 5));
        // 8 nodes, minimum degree 2: applies from k = 6
        let mut edges = vec![];
        for i in 1..=8usize {
            edges.push((i, i % 8 + 1, 1.0));
        }
        let ring = graph(8, &edges);
        assert!(!prop1_applies(&ring, 5));
        assert!(prop1_applies(&ring, 6));
    }

    #[test]
    fn stats() {
        let g = complete(10);
        let p = Partition::from_labels(vec![1, 1, 1, 1, 1, 1, 1, 2, 3, 4]).unwrap();
        let s = partition_stats(&g, &p);
        assert_eq!((s.comp, s.largest, s.singlt), (4, 7, 30.0));
        let s = partition_stats(&complete(4), &Partition::singletons(4));
        assert_eq!((s.comp, s.largest, s.singlt), (4, 1, 100.0));
        let s = partition_stats(&g, &Partition::whole(10));
        assert_eq!((s.comp, s.largest, s.singlt, s.weight), (1, 10, 0.0, 45.0));
    }
}
