//! Sparse weighted undirected graphs.
//!
//! Nodes are identified `1..=n` everywhere in the public API, following the
//! DIMACS convention. Every edge `(i, j)` is stored once with `i < j`.

use std::collections::HashMap;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("missing problem line (`p edge <n> <m>`)")]
    MissingProblemLine,
    #[error("graph must have at least one node")]
    NoNodes,
    #[error("node {node} outside 1..={n}")]
    NodeOutOfRange { node: usize, n: usize },
    #[error("self-loop on node {node}")]
    SelfLoop { node: usize },
    #[error("edge ({i},{j}) given twice with conflicting weights {first} and {second}")]
    ConflictingWeight { i: usize, j: usize, first: f64, second: f64 },
    #[error("weight of node {node} is {value}; node weights must be nonnegative and finite")]
    BadNodeWeight { node: usize, value: f64 },
    #[error("edge ({i},{j}) has non-finite weight")]
    NonFiniteWeight { i: usize, j: usize },
    #[error("density is undefined for n = {n} (needs n >= 2)")]
    UndefinedDensity { n: usize },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub i: usize,
    pub j: usize,
    pub w: f64,
}

/// Simple undirected graph with real edge weights and optional node weights.
///
/// Immutable once built; all constructors validate the invariants.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    n: usize,
    edges: Vec<Edge>,
    neighbors: Vec<Vec<usize>>,
    node_weights: Option<Vec<f64>>,
    lookup: HashMap<(usize, usize), usize>,
}

fn ordered(i: usize, j: usize) -> (usize, usize) {
    if i < j {
        (i, j)
    } else {
        (j, i)
    }
}

impl WeightedGraph {
    /// Builds a graph from `(i, j, w)` triples. Repeated pairs (in either
    /// orientation) collapse when their weights agree and are rejected
    /// otherwise.
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        if n == 0 {
            return Err(GraphError::NoNodes);
        }
        let mut weights: HashMap<(usize, usize), f64> = HashMap::new();
        for (a, b, w) in edges {
            for node in [a, b] {
                if node == 0 || node > n {
                    return Err(GraphError::NodeOutOfRange { node, n });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop { node: a });
            }
            let (i, j) = ordered(a, b);
            if !w.is_finite() {
                return Err(GraphError::NonFiniteWeight { i, j });
            }
            if let Some(&first) = weights.get(&(i, j)) {
                if first != w {
                    return Err(GraphError::ConflictingWeight { i, j, first, second: w });
                }
            } else {
                weights.insert((i, j), w);
            }
        }
        let mut edges: Vec<Edge> = weights.into_iter().map(|((i, j), w)| Edge { i, j, w }).collect();
        edges.sort_by_key(|e| (e.i, e.j));
        Ok(Self::from_sorted(n, edges, None))
    }

    fn from_sorted(n: usize, edges: Vec<Edge>, node_weights: Option<Vec<f64>>) -> Self {
        let mut neighbors = vec![Vec::new(); n];
        let mut lookup = HashMap::with_capacity(edges.len());
        for (idx, e) in edges.iter().enumerate() {
            neighbors[e.i - 1].push(e.j);
            neighbors[e.j - 1].push(e.i);
            lookup.insert((e.i, e.j), idx);
        }
        for list in &mut neighbors {
            list.sort_unstable();
        }
        Self { n, edges, neighbors, node_weights, lookup }
    }

    /// Attaches node weights `q_1..q_n` (index 0 holds `q_1`).
    pub fn with_node_weights(mut self, q: Vec<f64>) -> Result<Self, GraphError> {
        if q.len() != self.n {
            return Err(GraphError::NodeOutOfRange { node: q.len(), n: self.n });
        }
        if let Some((idx, &value)) = q.iter().enumerate().find(|(_, v)| !(v.is_finite() && **v >= 0.0)) {
            return Err(GraphError::BadNodeWeight { node: idx + 1, value });
        }
        self.node_weights = Some(q);
        Ok(self)
    }

    /// Same structure and node weights, new edge weights.
    pub fn map_weights(&self, mut f: impl FnMut(usize, usize, f64) -> f64) -> Self {
        let edges = self.edges.iter().map(|e| Edge { w: f(e.i, e.j, e.w), ..*e }).collect();
        Self::from_sorted(self.n, edges, self.node_weights.clone())
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn nodes(&self) -> impl Iterator<Item = usize> {
        1..=self.n
    }

    /// Sorted neighbor ids of `i`.
    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.neighbors[i - 1]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.neighbors[i - 1].len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.lookup.contains_key(&ordered(i, j))
    }

    pub fn weight(&self, i: usize, j: usize) -> Option<f64> {
        self.lookup.get(&ordered(i, j)).map(|&idx| self.edges[idx].w)
    }

    /// `q_i`, defaulting to 1 when the graph carries no node weights.
    pub fn node_weight(&self, i: usize) -> f64 {
        self.node_weights.as_ref().map_or(1.0, |q| q[i - 1])
    }

    pub fn has_node_weights(&self) -> bool {
        self.node_weights.is_some()
    }

    pub fn total_node_weight(&self) -> f64 {
        self.nodes().map(|i| self.node_weight(i)).sum()
    }

    pub fn total_edge_weight(&self) -> f64 {
        if self.is_integral() {
            self.edges.iter().map(|e| e.w as i64).sum::<i64>() as f64
        } else {
            self.edges.iter().map(|e| e.w).sum()
        }
    }

    /// True when every edge weight is an integer small enough for exact
    /// `i64` accumulation over the whole graph.
    pub fn is_integral(&self) -> bool {
        let limit = (1u64 << 52) as f64 / (self.edges.len().max(1) as f64);
        self.edges.iter().all(|e| e.w.fract() == 0.0 && e.w.abs() <= limit)
    }

    pub fn has_negative_weight(&self) -> bool {
        self.edges.iter().any(|e| e.w < 0.0)
    }

    /// Rebuilds the neighbor index from the edge list and compares.
    pub fn adjacency_consistent(&self) -> bool {
        let rebuilt = Self::from_sorted(self.n, self.edges.clone(), None);
        rebuilt.neighbors == self.neighbors
            && self.edges.windows(2).all(|p| (p[0].i, p[0].j) < (p[1].i, p[1].j))
            && self.edges.iter().all(|e| e.i < e.j && e.j <= self.n)
    }

    /// Missing pairs `(i, j)`, `i < j`, in lexicographic order.
    pub fn complement_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.n * (self.n - 1) / 2 - self.edges.len());
        for i in 1..=self.n {
            let mut nb = self.neighbors(i).iter().copied().filter(|&j| j > i).peekable();
            for j in i + 1..=self.n {
                if nb.peek() == Some(&j) {
                    nb.next();
                } else {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// `2|E| / (n (n - 1))`.
    pub fn density(&self) -> Result<f64, GraphError> {
        if self.n < 2 {
            return Err(GraphError::UndefinedDensity { n: self.n });
        }
        Ok(2.0 * self.edges.len() as f64 / (self.n as f64 * (self.n as f64 - 1.0)))
    }

    pub fn min_degree(&self) -> usize {
        self.neighbors.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// Seeded Erdős–Rényi `G(n, p)` with integer weights drawn uniformly
    /// from `weight_range`.
    pub fn random(n: usize, p: f64, weight_range: (i64, i64), seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut edges = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                if rng.gen_bool(p) {
                    let w = rng.gen_range(weight_range.0..=weight_range.1) as f64;
                    edges.push(Edge { i, j, w });
                }
            }
        }
        Self::from_sorted(n.max(1), edges, None)
    }
}

/// Pullan weighting `w_ij = ((i + j) mod 200) + 1` on 1-based ids.
pub fn apply_pullan_weights(g: &WeightedGraph) -> WeightedGraph {
    g.map_weights(|i, j, _| (((i + j) % 200) + 1) as f64)
}

/// Sets every edge weight to 1.
pub fn apply_unit_weights(g: &WeightedGraph) -> WeightedGraph {
    g.map_weights(|_, _, _| 1.0)
}

fn parse_num<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T, GraphError> {
    let tok = tok.ok_or_else(|| GraphError::Parse { line, msg: format!("missing {what}") })?;
    tok.parse()
        .map_err(|_| GraphError::Parse { line, msg: format!("invalid {what} `{tok}`") })
}

/// Parses the DIMACS clique format. All edge weights are 1.
pub fn parse_dimacs(text: &str) -> Result<WeightedGraph, GraphError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        let mut toks = line.split_whitespace();
        match toks.next() {
            None => continue,
            Some(t) if t.starts_with('c') => continue,
            Some("p") => {
                if header.is_some() {
                    return Err(GraphError::Parse { line: line_no, msg: "second problem line".into() });
                }
                let _format: String = parse_num(toks.next(), line_no, "problem format")?;
                let n: usize = parse_num(toks.next(), line_no, "node count")?;
                let m: usize = parse_num(toks.next(), line_no, "edge count")?;
                if n == 0 {
                    return Err(GraphError::NoNodes);
                }
                header = Some((n, m));
            }
            Some("e") => {
                let (n, _) = header.ok_or(GraphError::MissingProblemLine)?;
                let i: usize = parse_num(toks.next(), line_no, "edge endpoint")?;
                let j: usize = parse_num(toks.next(), line_no, "edge endpoint")?;
                for node in [i, j] {
                    if node == 0 || node > n {
                        return Err(GraphError::NodeOutOfRange { node, n });
                    }
                }
                if i == j {
                    return Err(GraphError::SelfLoop { node: i });
                }
                edges.push((i, j, 1.0));
            }
            // other DIMACS line kinds (e.g. `n` node descriptors) carry nothing we use
            Some(_) => continue,
        }
    }
    let (n, m) = header.ok_or(GraphError::MissingProblemLine)?;
    let g = WeightedGraph::new(n, edges)?;
    if g.edge_count() != m {
        log::warn!("DIMACS header announces {m} edges, file lists {} distinct edges", g.edge_count());
    }
    Ok(g)
}

/// Parses the weighted edge-list format:
///
/// ```text
/// # comment
/// <n>
/// <i> <j> <w>
/// q <i> <value>
/// ```
pub fn parse_weighted_edge_list(text: &str) -> Result<WeightedGraph, GraphError> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    let mut q: Vec<(usize, f64, usize)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut toks = line.split_whitespace();
        let Some(count) = n else {
            let v: usize = parse_num(toks.next(), line_no, "node count")?;
            if toks.next().is_some() {
                return Err(GraphError::Parse { line: line_no, msg: "expected a single node count".into() });
            }
            if v == 0 {
                return Err(GraphError::NoNodes);
            }
            n = Some(v);
            continue;
        };
        let first = toks.next().unwrap_or_default();
        if first == "q" {
            let node: usize = parse_num(toks.next(), line_no, "node id")?;
            let value: f64 = parse_num(toks.next(), line_no, "node weight")?;
            if node == 0 || node > count {
                return Err(GraphError::NodeOutOfRange { node, n: count });
            }
            q.push((node, value, line_no));
        } else {
            let i: usize = parse_num(Some(first), line_no, "edge endpoint")?;
            let j: usize = parse_num(toks.next(), line_no, "edge endpoint")?;
            let w: f64 = parse_num(toks.next(), line_no, "edge weight")?;
            edges.push((i, j, w));
        }
        if let Some(extra) = toks.next() {
            return Err(GraphError::Parse { line: line_no, msg: format!("unexpected token `{extra}`") });
        }
    }
    let n = n.ok_or(GraphError::NoNodes)?;
    let g = WeightedGraph::new(n, edges)?;
    if q.is_empty() {
        return Ok(g);
    }
    let mut weights = vec![1.0; n];
    let mut seen = vec![false; n];
    for (node, value, line) in q {
        if seen[node - 1] && weights[node - 1] != value {
            return Err(GraphError::Parse { line, msg: format!("conflicting weight for node {node}") });
        }
        seen[node - 1] = true;
        weights[node - 1] = value;
    }
    g.with_node_weights(weights)
}

/// Writes the weighted edge-list format; node weights are written only when
/// the graph carries them.
pub fn write_weighted_edge_list(g: &WeightedGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# n={} m={}", g.node_count(), g.edge_count());
    let _ = writeln!(out, "{}", g.node_count());
    for e in g.edges() {
        let _ = writeln!(out, "{} {} {}", e.i, e.j, e.w);
    }
    if g.has_node_weights() {
        for i in g.nodes() {
            let _ = writeln!(out, "q {} {}", i, g.node_weight(i));
        }
    }
    out
}

/// Picks the parser from content: a `p` line before any edge means DIMACS.
pub fn parse_auto(text: &str) -> Result<WeightedGraph, GraphError> {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#') && !l.starts_with('c'));
    match first {
        Some(l) if l.starts_with("p ") || l.starts_with("e ") => parse_dimacs(text),
        _ => parse_weighted_edge_list(text),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> WeightedGraph {
        let edges = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j, 1.0)));
        WeightedGraph::new(n, edges).unwrap()
    }

    #[test]
    fn dimacs_small() {
        let g = parse_dimacs("c hi\np edge 3 2\ne 1 2\ne 2 3\n").unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.weight(1, 2), Some(1.0));
        assert_eq!(g.weight(3, 2), Some(1.0));
        assert!(!g.has_edge(1, 3));
    }

    #[test]
    fn dimacs_single_node() {
        let g = parse_dimacs("p edge 1 0").unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (1, 0));
    }

    #[test]
    fn dimacs_duplicates_collapse() {
        let g = parse_dimacs("p edge 3 3\ne 1 2\ne 2 1\ne 1 2\n").unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn dimacs_errors() {
        assert_eq!(parse_dimacs("e 1 2\n"), Err(GraphError::MissingProblemLine));
        assert_eq!(parse_dimacs("c nothing\n"), Err(GraphError::MissingProblemLine));
        assert!(matches!(parse_dimacs("p edge x 1\n"), Err(GraphError::Parse { line: 1, .. })));
        assert_eq!(parse_dimacs("p edge 3 1\ne 1 4\n"), Err(GraphError::NodeOutOfRange { node: 4, n: 3 }));
        assert_eq!(parse_dimacs("p edge 3 1\ne 2 2\n"), Err(GraphError::SelfLoop { node: 2 }));
    }

    #[test]
    fn edge_list_basic() {
        let g = parse_weighted_edge_list("2\n1 2 -4500\n").unwrap();
        assert_eq!(g.weight(1, 2), Some(-4500.0));
        let g = parse_weighted_edge_list("# c\n3\n1 2 5\nq 1 2.5\n").unwrap();
        assert_eq!(g.node_weight(1), 2.5);
        assert_eq!(g.node_weight(2), 1.0);
        assert_eq!(g.node_weight(3), 1.0);
    }

    #[test]
    fn edge_list_errors() {
        assert!(matches!(
            parse_weighted_edge_list("2\n1 2 5\n1 2 7\n"),
            Err(GraphError::ConflictingWeight { i: 1, j: 2, .. })
        ));
        assert!(matches!(parse_weighted_edge_list("2\n1 2 abc\n"), Err(GraphError::Parse { line: 2, .. })));
        assert!(matches!(parse_weighted_edge_list("2\n1 3 1\n"), Err(GraphError::NodeOutOfRange { .. })));
        assert!(matches!(parse_weighted_edge_list("2\nq 1 -1\n"), Err(GraphError::BadNodeWeight { node: 1, .. })));
        // same weight repeated is not a conflict
        assert_eq!(parse_weighted_edge_list("2\n1 2 5\n2 1 5\n").unwrap().edge_count(), 1);
    }

    #[test]
    fn pullan() {
        let g = WeightedGraph::new(200, [(1, 2, 0.0), (100, 105, 0.0), (99, 101, 0.0)]).unwrap();
        let p = apply_pullan_weights(&g);
        assert_eq!(p.weight(1, 2), Some(4.0));
        assert_eq!(p.weight(100, 105), Some(6.0));
        assert_eq!(p.weight(99, 101), Some(1.0));
    }

    #[test]
    fn complements() {
        assert!(complete(4).complement_edges().is_empty());
        let g = WeightedGraph::new(3, [(1, 2, 1.0)]).unwrap();
        assert_eq!(g.complement_edges(), vec![(1, 3), (2, 3)]);
        let mut edges = Vec::new();
        for i in 1..=13 {
            for j in i + 1..=14 {
                if edges.len() < 84 {
                    edges.push((i, j, 1.0));
                }
            }
        }
        let g = WeightedGraph::new(75, edges).unwrap();
        assert_eq!(g.edge_count(), 84);
        assert_eq!(g.complement_edges().len(), 2691);
        assert!((g.density().unwrap() - 0.03027).abs() < 1e-5);
    }

    #[test]
    fn density_and_degree() {
        assert_eq!(complete(5).density().unwrap(), 1.0);
        assert_eq!(WeightedGraph::new(5, []).unwrap().density().unwrap(), 0.0);
        assert_eq!(WeightedGraph::new(1, []).unwrap().density(), Err(GraphError::UndefinedDensity { n: 1 }));
        assert_eq!(WeightedGraph::new(4, []).unwrap().min_degree(), 0);
        assert_eq!(complete(6).min_degree(), 5);
        let path = WeightedGraph::new(3, [(1, 2, 1.0), (2, 3, 1.0)]).unwrap();
        assert_eq!(path.min_degree(), 1);
    }

    #[test]
    fn bundled_johnson_density() {
        let g = parse_dimacs(include_str!("../data/johnson8-2-4.clq")).unwrap();
        assert_eq!(g.node_count(), 28);
        assert!((g.density().unwrap() - 0.556).abs() < 5e-4);
        let g = parse_dimacs(include_str!("../data/hamming6-4.clq")).unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (64, 704));
        assert!((g.density().unwrap() - 0.349).abs() < 5e-4);
    }

    #[test]
    fn auto_detect() {
        assert_eq!(parse_auto("c x\np edge 2 1\ne 1 2\n").unwrap().edge_count(), 1);
        assert_eq!(parse_auto("2\n1 2 3\n").unwrap().weight(1, 2), Some(3.0));
    }
}
