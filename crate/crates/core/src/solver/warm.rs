use crate::config::{SolverConfig, CAPACITY_EPS};
use crate::graph::WeightedGraph;
use crate::partition::Partition;
use crate::semantics::{kplex_unchecked, validate_partition};

/// Greedy incumbent: merge components along the best positive connecting
/// weight while the union stays a feasible k-plex, force further merges to
/// meet `P` and `lb`, then move single nodes while that helps.
///
/// Returns `None` when the greedy passes cannot satisfy the side
/// constraints; the exact search then starts without an incumbent.
pub fn greedy_warm_start(g: &WeightedGraph, cfg: &SolverConfig) -> Option<Partition> {
    let n = g.node_count();
    let k = cfg.k.max(1);
    let mut comps: Vec<Vec<usize>> = (1..=n).map(|i| vec![i]).collect();
    let q = |c: &[usize]| c.iter().map(|&v| g.node_weight(v)).sum::<f64>();
    let fits_ub = |w: f64| cfg.ub.is_none_or(|ub| w <= ub + CAPACITY_EPS);
    if comps.iter().any(|c| !fits_ub(q(c))) {
        return None;
    }
    let mergeable = |a: &[usize], b: &[usize]| {
        let union: Vec<usize> = a.iter().chain(b).copied().collect();
        fits_ub(q(&union)) && kplex_unchecked(g, &union, k)
    };

    // best feasible merge, optionally including non-positive ones
    let best_merge = |comps: &[Vec<usize>], only_positive: bool, must_touch: Option<usize>| {
        let label = component_labels(n, comps);
        let c = comps.len();
        let mut between = vec![0.0; c * c];
        for e in g.edges() {
            let (a, b) = (label[e.i - 1], label[e.j - 1]);
            if a != b {
                between[a.min(b) * c + a.max(b)] += e.w;
            }
        }
        let mut best: Option<(f64, usize, usize)> = None;
        for a in 0..c {
            for b in a + 1..c {
                if must_touch.is_some_and(|t| t != a && t != b) {
                    continue;
                }
                let w = between[a * c + b];
                if only_positive && w <= 0.0 {
                    continue;
                }
                if best.is_some_and(|(bw, _, _)| w <= bw) {
                    continue;
                }
                if mergeable(&comps[a], &comps[b]) {
                    best = Some((w, a, b));
                }
            }
        }
        best
    };

    let merge = |comps: &mut Vec<Vec<usize>>, a: usize, b: usize| {
        let moved = comps.remove(b);
        comps[a].extend(moved);
        comps[a].sort_unstable();
    };

    while let Some((_, a, b)) = best_merge(&comps, true, None) {
        merge(&mut comps, a, b);
    }
    if let Some(p) = cfg.max_components {
        while comps.len() > p {
            let (_, a, b) = best_merge(&comps, false, None)?;
            merge(&mut comps, a, b);
        }
    }
    if let Some(lb) = cfg.lb {
        while let Some(short) = comps.iter().position(|c| q(c) < lb - CAPACITY_EPS) {
            let (_, a, b) = best_merge(&comps, false, Some(short))?;
            merge(&mut comps, a, b);
        }
    }

    relocate(g, cfg, &mut comps);
    let pt = Partition::from_components(n, &comps).ok()?;
    validate_partition(g, &pt, cfg).is_empty().then_some(pt)
}

fn component_labels(n: usize, comps: &[Vec<usize>]) -> Vec<usize> {
    let mut label = vec![0; n];
    for (c, members) in comps.iter().enumerate() {
        for &v in members {
            label[v - 1] = c;
        }
    }
    label
}

/// First-improvement single-node moves until none helps. Leaving a k-plex
/// keeps it a k-plex, so only the destination and the capacities are checked.
fn relocate(g: &WeightedGraph, cfg: &SolverConfig, comps: &mut Vec<Vec<usize>>) {
    let n = g.node_count();
    let k = cfg.k.max(1);
    let q = |c: &[usize]| c.iter().map(|&v| g.node_weight(v)).sum::<f64>();
    for _round in 0..(4 * n).max(1) {
        let label = component_labels(n, comps);
        let mut improved = false;
        'nodes: for v in 1..=n {
            let from = label[v - 1];
            let mut gain = vec![0.0; comps.len()];
            for &u in g.neighbors(v) {
                gain[label[u - 1]] += g.weight(v, u).unwrap_or(0.0);
            }
            let rest = q(&comps[from]) - g.node_weight(v);
            if comps[from].len() > 1 && cfg.lb.is_some_and(|lb| rest < lb - CAPACITY_EPS) {
                continue;
            }
            for to in 0..comps.len() {
                if to == from || gain[to] <= gain[from] {
                    continue;
                }
                let mut union = comps[to].clone();
                union.push(v);
                if cfg.ub.is_some_and(|ub| q(&union) > ub + CAPACITY_EPS) || !kplex_unchecked(g, &union, k) {
                    continue;
                }
                comps[from].retain(|&x| x != v);
                comps[to] = union;
                comps[to].sort_unstable();
                comps.retain(|c| !c.is_empty());
                improved = true;
                break 'nodes;
            }
        }
        if !improved {
            break;
        }
    }
}
