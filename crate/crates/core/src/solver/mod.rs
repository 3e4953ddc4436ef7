//! Exact solving: branch-and-bound engine, brute-force oracle, exhaustive
//! model enumerator and a warm-start heuristic.

mod bnb;
mod bound;
mod brute;
mod enumerate;
mod score;
mod warm;

use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use crate::config::{ConfigError, SolverConfig};
use crate::graph::WeightedGraph;
use crate::partition::Partition;
use crate::semantics::partition_weight;

pub use brute::{brute_force_optimum, BRUTE_FORCE_MAX_NODES};
pub use enumerate::{enumerate_model_solutions, ENUMERATE_MAX_VARS};
pub use warm::greedy_warm_start;

use bnb::{Instance, Limits, Mode, Searcher, Shared};
use score::Score;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolveError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("brute force is limited to {max} nodes, graph has {n}")]
    TooManyNodes { n: usize, max: usize },
    #[error("model enumeration is limited to {max} variables, model has {vars}")]
    TooManyVariables { vars: usize, max: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Optimal,
    Feasible,
    Infeasible,
    Timeout,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Optimal => "OPTIMAL",
            Status::Feasible => "FEASIBLE",
            Status::Infeasible => "INFEASIBLE",
            Status::Timeout => "TIMEOUT",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    pub status: Status,
    /// Incumbent value (LB); absent without an incumbent.
    pub value: Option<f64>,
    /// Proven upper bound (UB); absent when infeasibility was proven.
    pub best_bound: Option<f64>,
    pub d_gap: Option<f64>,
    /// `d_gap` holds `UB - LB` instead of a percentage (UB ≤ 0).
    pub gap_is_absolute: bool,
    pub partition: Option<Partition>,
    pub nodes_explored: u64,
    pub elapsed: Duration,
}

impl SolveResult {
    pub(crate) fn infeasible(nodes: u64, elapsed: Duration) -> Self {
        Self {
            status: Status::Infeasible,
            value: None,
            best_bound: None,
            d_gap: None,
            gap_is_absolute: false,
            partition: None,
            nodes_explored: nodes,
            elapsed,
        }
    }

    pub(crate) fn optimal(value: f64, partition: Partition, nodes: u64, elapsed: Duration) -> Self {
        Self {
            status: Status::Optimal,
            value: Some(value),
            best_bound: Some(value),
            d_gap: Some(0.0),
            gap_is_absolute: false,
            partition: Some(partition),
            nodes_explored: nodes,
            elapsed,
        }
    }
}

/// `((UB − LB) / UB) · 100`. Returns `(gap, absolute)`; when `UB ≤ 0` and
/// `LB < UB` the percentage is meaningless and `UB − LB` is returned instead.
pub fn duality_gap(lb: f64, ub: f64) -> (f64, bool) {
    if lb >= ub {
        (0.0, false)
    } else if ub <= 0.0 {
        (ub - lb, true)
    } else {
        ((ub - lb) / ub * 100.0, false)
    }
}

/// Maximum-weight feasible partition by branch-and-bound.
pub fn solve_exact(g: &WeightedGraph, cfg: &SolverConfig) -> Result<SolveResult, ConfigError> {
    cfg.validate()?;
    Ok(if g.is_integral() { run::<i64>(g, cfg) } else { run::<f64>(g, cfg) })
}

fn build_instance<S: Score>(g: &WeightedGraph, cfg: &SolverConfig) -> Instance<S> {
    let n = g.node_count();
    let mut adj = vec![false; n * n];
    let mut w = vec![S::ZERO; n * n];
    for e in g.edges() {
        let (a, b) = (e.i - 1, e.j - 1);
        adj[a * n + b] = true;
        adj[b * n + a] = true;
        w[a * n + b] = S::from_weight(e.w);
        w[b * n + a] = S::from_weight(e.w);
    }
    let neighbors: Vec<Vec<usize>> = (1..=n).map(|i| g.neighbors(i).iter().map(|&j| j - 1).collect()).collect();
    let size_cap = if cfg.k == 1 {
        bound::clique_caps(n, &adj)
    } else {
        (0..n).map(|u| (neighbors[u].len() + cfg.k).min(n)).collect()
    };
    let q: Vec<f64> = (1..=n).map(|i| g.node_weight(i)).collect();
    let mut sorted = q.clone();
    sorted.sort_by(f64::total_cmp);
    let mut q_prefix = vec![0.0];
    for x in &sorted {
        q_prefix.push(q_prefix.last().copied().unwrap_or(0.0) + x);
    }
    Instance {
        n,
        k: cfg.k,
        adj,
        w,
        neighbors,
        q,
        lb: cfg.lb,
        ub: cfg.ub,
        max_comps: cfg.max_components.unwrap_or(n).min(n),
        share: Vec::new(),
        partners: Vec::new(),
        size_cap,
        q_prefix,
    }
}

/// Descending Σ|w| over incident edges, ties by id.
fn assignment_order(g: &WeightedGraph) -> Vec<usize> {
    let n = g.node_count();
    let mut strength = vec![0.0; n];
    for e in g.edges() {
        strength[e.i - 1] += e.w.abs();
        strength[e.j - 1] += e.w.abs();
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| strength[b].total_cmp(&strength[a]).then(a.cmp(&b)));
    order
}

fn labels_to_partition(labels: &[usize]) -> Partition {
    Partition::from_keys(labels)
}

fn run<S: Score>(g: &WeightedGraph, cfg: &SolverConfig) -> SolveResult {
    let start = Instant::now();
    let deadline = cfg.time_limit.map(|t| start + t);
    let n = g.node_count();
    let mut inst = build_instance::<S>(g, cfg);

    let warm = greedy_warm_start(g, cfg).map(|p| {
        let v = partition_weight(g, &p);
        let labels = p.labels().iter().map(|l| l - 1).collect::<Vec<_>>();
        (v, labels)
    });

    let mut edges = Vec::new();
    let mut positive_total = 0.0;
    for e in g.edges() {
        if e.w > 0.0 {
            edges.push((e.i - 1, e.j - 1, e.w));
            positive_total += e.w;
        }
    }
    let root_limit: Vec<usize> = (0..n).map(|u| inst.partner_limit(u, 0, 0.0)).collect();
    let split_budget = cfg.time_limit.map_or(Duration::from_secs(5), |t| (t / 10).min(Duration::from_secs(5)));
    let split = bound::optimize_split(&bound::SplitInput {
        n,
        edges: &edges,
        partner_limit: &root_limit,
        target: warm.as_ref().map(|w| w.0),
        good_enough: warm.as_ref().map(|w| w.0 + 1e-9),
        time_budget: split_budget,
        max_iters: 4000,
    });
    let root_bound = split.root_bound.min(positive_total);
    inst.set_share(split.share);
    log::debug!("root bound {root_bound}, warm start {:?}", warm.as_ref().map(|w| w.0));

    let order = assignment_order(g);
    let shared = Shared::new(warm);
    let limits = Limits { deadline, progress_every: cfg.progress_every, root_bound };

    if cfg.workers > 1 {
        bnb::search_parallel(&inst, &order, &shared, &limits, cfg.workers);
    } else {
        let mut s = Searcher::new(&inst, &order, &shared, &limits, Mode::Optimize);
        s.dfs(0);
        s.flush();
    }
    let mut nodes = shared.nodes.load(std::sync::atomic::Ordering::Relaxed);
    let timed_out = shared.timed_out.load(std::sync::atomic::Ordering::Relaxed);

    let Some((value, labels)) = shared.take() else {
        if timed_out {
            return SolveResult {
                status: Status::Timeout,
                value: None,
                best_bound: Some(root_bound),
                d_gap: None,
                gap_is_absolute: false,
                partition: None,
                nodes_explored: nodes,
                elapsed: start.elapsed(),
            };
        }
        return SolveResult::infeasible(nodes, start.elapsed());
    };

    if timed_out {
        let ub = root_bound.max(value);
        let (gap, abs) = duality_gap(value, ub);
        return SolveResult {
            status: Status::Feasible,
            value: Some(value),
            best_bound: Some(ub),
            d_gap: Some(gap),
            gap_is_absolute: abs,
            partition: Some(labels_to_partition(&labels)),
            nodes_explored: nodes,
            elapsed: start.elapsed(),
        };
    }

    let mut partition = labels_to_partition(&labels);
    if cfg.deterministic {
        // Second pass in id order: the first completion reaching the optimum
        // is the restricted-growth-smallest optimal partition.
        let identity: Vec<usize> = (0..n).collect();
        let lex_shared = Shared::new(None);
        let mut s = Searcher::new(&inst, &identity, &lex_shared, &limits, Mode::FirstReaching { target: value });
        s.dfs(0);
        nodes += s.nodes();
        match s.found() {
            Some(l) => partition = labels_to_partition(l),
            None if s.stopped() => log::warn!("time limit hit while canonicalizing; returning an arbitrary optimum"),
            None => log::warn!("canonical pass found no optimum; returning the search incumbent"),
        }
    }
    SolveResult::optimal(value, partition, nodes, start.elapsed())
}
