//! Solver-agnostic 0/1 linear models for k-plex partitioning.
//!
//! Three families are built from a [`WeightedGraph`]:
//!
//! * `F1c`: clique partitioning on a complete graph, one `x` per pair and the
//!   three triangle inequalities per triple (rows 1-3).
//! * `F1s`: the sparse variant, `x` only on real edges, triangle rows over
//!   fully present triples (rows 5-7) and a two-edge exclusion row for every
//!   triple missing exactly one pair (row 8).
//! * `Fks`: k-plex partitioning, `x` on edges plus `v` on missing pairs,
//!   triangle rows over all triples (rows 10-12) and a per-node cap of `k - 1`
//!   selected missing pairs (row 13).
//!
//! Capacity rows (16-19) and component-limit rows (20-24) are layered on top
//! by [`add_capacity_bounds`] and [`add_component_limit`].

mod build;
mod lp;

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::partition::Partition;

pub use build::{add_capacity_bounds, add_component_limit, build_f1c, build_f1s, build_fks};
pub use lp::export_lp;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("F1c requires a complete graph ({missing} pairs missing)")]
    NotComplete { missing: usize },
    #[error("Fks needs k >= 2 (got {k}); use F1s for k = 1")]
    KTooSmall { k: usize },
    #[error("lower capacity {lb} exceeds upper capacity {ub}")]
    LbAboveUb { lb: f64, ub: f64 },
    #[error("lower capacity {lb} exceeds the total node weight {total}; no partition can satisfy it")]
    LbAboveTotal { lb: f64, total: f64 },
    #[error("capacity bounds must be finite and nonnegative")]
    BadCapacity,
    #[error("component limit must be at least 1")]
    ZeroComponents,
    #[error("model already carries {what}")]
    AlreadyPresent { what: &'static str },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    F1c,
    F1s,
    Fks,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::F1c => "F1c",
            Family::F1s => "F1s",
            Family::Fks => "Fks",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VarKind {
    /// Real edge `(i, j)`, `i < j`.
    EdgeX { i: usize, j: usize },
    /// Missing pair `(i, j)`, `i < j`.
    MissingV { i: usize, j: usize },
    /// Node `node` sits in component slot `comp`.
    NodeComp { node: usize, comp: usize },
}

impl VarKind {
    pub fn name(&self) -> String {
        match *self {
            VarKind::EdgeX { i, j } => format!("x_{i}_{j}"),
            VarKind::MissingV { i, j } => format!("v_{i}_{j}"),
            VarKind::NodeComp { node, comp } => format!("z_{node}_{comp}"),
        }
    }

    pub fn pair(&self) -> Option<(usize, usize)> {
        match *self {
            VarKind::EdgeX { i, j } | VarKind::MissingV { i, j } => Some((i, j)),
            VarKind::NodeComp { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

impl Sense {
    pub fn symbol(self) -> &'static str {
        match self {
            Sense::Le => "<=",
            Sense::Ge => ">=",
            Sense::Eq => "=",
        }
    }

    pub fn holds(self, lhs: f64, rhs: f64) -> bool {
        const EPS: f64 = 1e-9;
        match self {
            Sense::Le => lhs <= rhs + EPS,
            Sense::Ge => lhs >= rhs - EPS,
            Sense::Eq => (lhs - rhs).abs() <= EPS,
        }
    }
}

/// Constraint family label, numbered as in the formulation, or `Derived`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RowTag {
    Family(u8),
    Derived,
}

impl fmt::Display for RowTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RowTag::Family(n) => write!(f, "({n})"),
            RowTag::Derived => f.write_str("derived"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub terms: Vec<(usize, f64)>,
    pub sense: Sense,
    pub rhs: f64,
    pub tag: RowTag,
}

impl Constraint {
    pub fn satisfied_by(&self, assignment: &[bool]) -> bool {
        let lhs: f64 = self.terms.iter().filter(|(v, _)| assignment[*v]).map(|(_, c)| c).sum();
        self.sense.holds(lhs, self.rhs)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModelMeta {
    pub n: usize,
    pub k: usize,
    pub family: Family,
    /// k = 2 redundant rows were omitted.
    pub reduced: bool,
    pub lb: Option<f64>,
    pub ub: Option<f64>,
    pub max_components: Option<usize>,
    /// Degree rows with no missing pair, counted but not emitted.
    pub dropped_vacuous: usize,
}

/// Binary maximization model. Variable ids are indices into `variables`.
#[derive(Debug, Clone, PartialEq)]
pub struct IlpModel {
    pub variables: Vec<VarKind>,
    pub objective: Vec<(usize, f64)>,
    pub constraints: Vec<Constraint>,
    pub meta: ModelMeta,
    pairs: HashMap<(usize, usize), usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Dimensions {
    pub variables: usize,
    pub constraints: usize,
    /// Constraint count including dropped vacuous degree rows.
    pub constraints_before_drop: usize,
}

impl IlpModel {
    pub(crate) fn new(meta: ModelMeta) -> Self {
        Self { variables: Vec::new(), objective: Vec::new(), constraints: Vec::new(), meta, pairs: HashMap::new() }
    }

    pub(crate) fn add_var(&mut self, kind: VarKind) -> usize {
        let id = self.variables.len();
        if let Some(p) = kind.pair() {
            self.pairs.insert(p, id);
        }
        self.variables.push(kind);
        id
    }

    /// The `x` or `v` variable of pair `(i, j)`, in either orientation.
    pub fn pair_var(&self, i: usize, j: usize) -> Option<usize> {
        self.pairs.get(&if i < j { (i, j) } else { (j, i) }).copied()
    }

    pub fn dimensions(&self) -> Dimensions {
        Dimensions {
            variables: self.variables.len(),
            constraints: self.constraints.len(),
            constraints_before_drop: self.constraints.len() + self.meta.dropped_vacuous,
        }
    }

    pub fn objective_value(&self, assignment: &[bool]) -> f64 {
        self.objective.iter().filter(|(v, _)| assignment[*v]).map(|(_, c)| c).sum()
    }

    pub fn is_feasible(&self, assignment: &[bool]) -> bool {
        assignment.len() == self.variables.len() && self.constraints.iter().all(|c| c.satisfied_by(assignment))
    }

    /// Partition induced by an assignment: connected components of the graph
    /// whose edges are the pairs with `x = 1` or `v = 1`. Only meaningful on
    /// feasible assignments.
    pub fn assignment_to_partition(&self, assignment: &[bool]) -> Partition {
        let n = self.meta.n;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut a: usize) -> usize {
            while parent[a] != a {
                parent[a] = parent[parent[a]];
                a = parent[a];
            }
            a
        }
        for (id, kind) in self.variables.iter().enumerate() {
            if let (true, Some((i, j))) = (assignment[id], kind.pair()) {
                let (a, b) = (find(&mut parent, i - 1), find(&mut parent, j - 1));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let roots: Vec<usize> = (0..n).map(|v| find(&mut parent, v)).collect();
        Partition::from_keys(&roots)
    }
}

/// `(variable count, constraint count)` plus the pre-drop count.
pub fn model_dimensions(m: &IlpModel) -> Dimensions {
    m.dimensions()
}
