//! Independent reference implementations shared by the integration tests.
//! Nothing here calls into the solver or the semantics module.

#![allow(dead_code)]

use std::collections::BTreeSet;

use kplex::WeightedGraph;

/// Every set partition of `0..n` as a label vector (restricted-growth form),
/// produced by plain recursion.
pub fn all_partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(pos: usize, n: usize, cur: &mut Vec<usize>, max: usize, out: &mut Vec<Vec<usize>>) {
        if pos == n {
            out.push(cur.clone());
            return;
        }
        for label in 0..=max + 1 {
            if pos == 0 && label > 0 {
                break;
            }
            cur.push(label);
            rec(pos + 1, n, cur, if pos == 0 { 0 } else { max.max(label) }, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(0, n, &mut Vec::new(), 0, &mut out);
    }
    out
}

/// Components of a label vector as sorted 1-based node lists, sorted.
pub fn blocks(labels: &[usize]) -> BTreeSet<BTreeSet<usize>> {
    let mut groups = std::collections::BTreeMap::<usize, BTreeSet<usize>>::new();
    for (v, &l) in labels.iter().enumerate() {
        groups.entry(l).or_default().insert(v + 1);
    }
    groups.into_values().collect()
}

/// Each member misses at most `k - 1` others.
pub fn kplex_ok(g: &WeightedGraph, block: &BTreeSet<usize>, k: usize) -> bool {
    block.iter().all(|&i| block.iter().filter(|&&j| j != i && g.weight(i, j).is_none()).count() < k)
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Side {
    pub lb: Option<f64>,
    pub ub: Option<f64>,
    pub p: Option<usize>,
}

pub fn feasible(g: &WeightedGraph, labels: &[usize], k: usize, side: Side) -> bool {
    let bs = blocks(labels);
    if side.p.is_some_and(|p| bs.len() > p) {
        return false;
    }
    bs.iter().all(|b| {
        let q: f64 = b.iter().map(|&v| g.node_weight(v)).sum();
        kplex_ok(g, b, k) && side.lb.is_none_or(|lb| q >= lb - 1e-9) && side.ub.is_none_or(|ub| q <= ub + 1e-9)
    })
}

/// Intra-component weight in exact integer arithmetic (weights are integral
/// in every generated instance).
pub fn weight(g: &WeightedGraph, labels: &[usize]) -> i64 {
    g.edges().iter().filter(|e| labels[e.i - 1] == labels[e.j - 1]).map(|e| e.w as i64).sum()
}

/// Best feasible value, or `None` when nothing is feasible.
pub fn oracle_optimum(g: &WeightedGraph, k: usize, side: Side) -> Option<i64> {
    all_partitions(g.node_count())
        .iter()
        .filter(|l| feasible(g, l, k, side))
        .map(|l| weight(g, l))
        .max()
}

/// All feasible partitions (no side constraints) as block sets.
pub fn kplex_partitions(g: &WeightedGraph, k: usize) -> BTreeSet<BTreeSet<BTreeSet<usize>>> {
    all_partitions(g.node_count())
        .iter()
        .filter(|l| feasible(g, l, k, Side::default()))
        .map(|l| blocks(l))
        .collect()
}

pub fn partition_blocks(p: &kplex::Partition) -> BTreeSet<BTreeSet<usize>> {
    p.components().into_iter().map(|c| c.into_iter().collect()).collect()
}

/// Seeded random graph with integer weights.
pub fn random_graph(n: usize, density: f64, weights: (i64, i64), seed: u64) -> WeightedGraph {
    WeightedGraph::random(n, density, weights, seed)
}
