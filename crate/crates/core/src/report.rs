//! Run reports in table and JSON form.

use serde::{Deserialize, Serialize};

use crate::config::SolverConfig;
use crate::graph::WeightedGraph;
use crate::semantics::partition_stats;
use crate::solver::SolveResult;

pub const TABLE_HEADER: &str = "instance n |E| d k opt/best d_gap time comp largest singlt";

/// One solver run; serializes to the JSON report schema.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub instance: String,
    pub n: usize,
    pub edges: usize,
    pub density: Option<f64>,
    pub k: usize,
    pub lb: Option<f64>,
    pub ub: Option<f64>,
    #[serde(rename = "P")]
    pub p: Option<usize>,
    pub status: String,
    pub value: Option<f64>,
    pub ub_bound: Option<f64>,
    pub d_gap: Option<f64>,
    #[serde(default)]
    pub gap_is_absolute: bool,
    pub elapsed_s: f64,
    pub comp: Option<usize>,
    pub largest: Option<usize>,
    pub singlt_pct: Option<f64>,
    pub components: Vec<Vec<usize>>,
}

impl RunReport {
    pub fn new(instance: &str, g: &WeightedGraph, cfg: &SolverConfig, res: &SolveResult) -> Self {
        let stats = res.partition.as_ref().map(|p| partition_stats(g, p));
        Self {
            instance: instance.to_string(),
            n: g.node_count(),
            edges: g.edge_count(),
            density: g.density().ok(),
            k: cfg.k,
            lb: cfg.lb,
            ub: cfg.ub,
            p: cfg.max_components,
            status: res.status.to_string(),
            value: res.value,
            ub_bound: res.best_bound,
            d_gap: res.d_gap,
            gap_is_absolute: res.gap_is_absolute,
            elapsed_s: res.elapsed.as_secs_f64(),
            comp: stats.as_ref().map(|s| s.comp),
            largest: stats.as_ref().map(|s| s.largest),
            singlt_pct: stats.as_ref().map(|s| s.singlt),
            components: res.partition.as_ref().map(|p| p.components()).unwrap_or_default(),
        }
    }

    /// One row under [`TABLE_HEADER`]; absent values print as `-`.
    pub fn table_row(&self) -> String {
        fn opt<T>(v: Option<T>, f: impl Fn(T) -> String) -> String {
            v.map_or_else(|| "-".to_string(), f)
        }
        let gap = opt(self.d_gap, |g| if self.gap_is_absolute { format!("{g}(abs)") } else { format!("{g:.2}") });
        format!(
            "{} {} {} {} {} {} {} {:.2} {} {} {}",
            self.instance,
            self.n,
            self.edges,
            opt(self.density, |d| format!("{d:.5}")),
            self.k,
            opt(self.value, format_value),
            gap,
            self.elapsed_s,
            opt(self.comp, |c| c.to_string()),
            opt(self.largest, |c| c.to_string()),
            opt(self.singlt_pct, |s| format!("{s:.2}")),
        )
    }
}

pub fn format_value(v: f64) -> String {
    if v.fract() == 0.0 && v.abs() < 1e15 {
        format!("{}", v as i64)
    } else {
        format!("{v}")
    }
}

/// `instance n |E| d` line for the `stats` subcommand.
pub fn stats_row(instance: &str, g: &WeightedGraph) -> String {
    let d = g.density().map_or_else(|_| "-".to_string(), |d| format!("{d:.5}"));
    format!("{instance} {} {} {d}", g.node_count(), g.edge_count())
}
