//! Node partitions in restricted-growth form.

use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("partition covers {got} nodes, graph has {expected}")]
    WrongSize { expected: usize, got: usize },
    #[error("label 0 on node {node}; labels are positive")]
    ZeroLabel { node: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("node {node} has no label")]
    Unlabeled { node: usize },
}

/// Total assignment of nodes `1..=n` to positive component labels.
///
/// Constructors canonicalize: node 1 carries label 1 and every node's label
/// is at most one more than the largest label among smaller ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    labels: Vec<usize>,
}

impl Partition {
    /// From arbitrary positive labels (index 0 is node 1).
    pub fn from_labels(labels: Vec<usize>) -> Result<Self, PartitionError> {
        if let Some(pos) = labels.iter().position(|&l| l == 0) {
            return Err(PartitionError::ZeroLabel { node: pos + 1 });
        }
        let mut p = Self { labels };
        p.canonicalize();
        Ok(p)
    }

    /// From any per-node keys; equal keys share a component.
    pub fn from_keys<K: Eq + std::hash::Hash>(keys: &[K]) -> Self {
        let mut map = std::collections::HashMap::new();
        let labels = keys
            .iter()
            .map(|k| {
                let next = map.len() + 1;
                *map.entry(k).or_insert(next)
            })
            .collect();
        Self { labels }
    }

    pub fn from_components(n: usize, comps: &[Vec<usize>]) -> Result<Self, PartitionError> {
        let mut labels = vec![0; n];
        for (c, members) in comps.iter().enumerate() {
            for &v in members {
                if v == 0 || v > n {
                    return Err(PartitionError::WrongSize { expected: n, got: v });
                }
                labels[v - 1] = c + 1;
            }
        }
        if let Some(pos) = labels.iter().position(|&l| l == 0) {
            return Err(PartitionError::Unlabeled { node: pos + 1 });
        }
        Self::from_labels(labels)
    }

    pub fn singletons(n: usize) -> Self {
        Self { labels: (1..=n).collect() }
    }

    pub fn whole(n: usize) -> Self {
        Self { labels: vec![1; n] }
    }

    /// Relabels into restricted-growth form.
    pub fn canonicalize(&mut self) {
        let mut map = std::collections::HashMap::new();
        for l in &mut self.labels {
            let next = map.len() + 1;
            *l = *map.entry(*l).or_insert(next);
        }
    }

    pub fn is_canonical(&self) -> bool {
        let mut max = 0;
        self.labels.iter().all(|&l| {
            let ok = l >= 1 && l <= max + 1;
            max = max.max(l);
            ok
        })
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, node: usize) -> usize {
        self.labels[node - 1]
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn component_count(&self) -> usize {
        self.labels.iter().copied().max().unwrap_or(0)
    }

    /// Member lists indexed by `label - 1`, members ascending.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comps = vec![Vec::new(); self.component_count()];
        for (idx, &l) in self.labels.iter().enumerate() {
            comps[l - 1].push(idx + 1);
        }
        comps
    }

    pub fn same_component(&self, i: usize, j: usize) -> bool {
        self.labels[i - 1] == self.labels[j - 1]
    }

    /// `<node> <label>` per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (idx, l) in self.labels.iter().enumerate() {
            let _ = writeln!(out, "{} {}", idx + 1, l);
        }
        out
    }

    /// Reads `<node> <label>` lines (`#` comments allowed) for a graph of
    /// `n` nodes.
    pub fn parse_text(text: &str, n: usize) -> Result<Self, PartitionError> {
        let mut labels = vec![0usize; n];
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: &str| PartitionError::Parse { line: idx + 1, msg: msg.to_string() };
            let mut toks = line.split_whitespace();
            let node: usize = toks.next().and_then(|t| t.parse().ok()).ok_or_else(|| err("bad node id"))?;
            let label: usize = toks.next().and_then(|t| t.parse().ok()).ok_or_else(|| err("bad label"))?;
            if toks.next().is_some() {
                return Err(err("trailing tokens"));
            }
            if node == 0 || node > n {
                return Err(PartitionError::WrongSize { expected: n, got: node });
            }
            if label == 0 {
                return Err(PartitionError::ZeroLabel { node });
            }
            if labels[node - 1] != 0 && labels[node - 1] != label {
                return Err(err("node labeled twice"));
            }
            labels[node - 1] = label;
        }
        if let Some(pos) = labels.iter().position(|&l| l == 0) {
            return Err(PartitionError::Unlabeled { node: pos + 1 });
        }
        Self::from_labels(labels)
    }
}

/// Iterates every partition of `1..=n` as restricted-growth strings in
/// lexicographic order.
pub struct RestrictedGrowth {
    labels: Vec<usize>,
    prefix_max: Vec<usize>,
    done: bool,
}

impl RestrictedGrowth {
    pub fn new(n: usize) -> Self {
        Self { labels: vec![1; n], prefix_max: vec![1; n], done: n == 0 }
    }
}

impl Iterator for RestrictedGrowth {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.done {
            return None;
        }
        let current = Partition { labels: self.labels.clone() };
        // advance: rightmost position that can still grow
        let n = self.labels.len();
        let mut pos = n;
        while pos > 1 {
            pos -= 1;
            if self.labels[pos] <= self.prefix_max[pos - 1] {
                self.labels[pos] += 1;
                self.prefix_max[pos] = self.prefix_max[pos - 1].max(self.labels[pos]);
                for t in pos + 1..n {
                    self.labels[t] = 1;
                    self.prefix_max[t] = self.prefix_max[pos];
                }
                return Some(current);
            }
        }
        self.done = true;
        Some(current)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_numbers() {
        let bell = [1usize, 1, 2, 5, 15, 52, 203, 877, 4140];
        for (n, &b) in bell.iter().enumerate().skip(1) {
            let all: Vec<_> = RestrictedGrowth::new(n).collect();
            assert_eq!(all.len(), b, "n = {n}");
            assert!(all.iter().all(Partition::is_canonical));
            assert!(all.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn canonical_relabel() {
        let p = Partition::from_labels(vec![3, 3, 7, 3, 1]).unwrap();
        assert_eq!(p.labels(), &[1, 1, 2, 1, 3]);
        assert_eq!(p.components(), vec![vec![1, 2, 4], vec![3], vec![5]]);
        assert!(Partition::from_labels(vec![1, 0]).is_err());
    }

    #[test]
    fn text_round_trip() {
        let p = Partition::from_labels(vec![1, 2, 1, 3]).unwrap();
        assert_eq!(Partition::parse_text(&p.to_text(), 4).unwrap(), p);
        assert_eq!(Partition::parse_text("1 1\n", 2), Err(PartitionError::Unlabeled { node: 2 }));
        assert!(Partition::parse_text("1 1\n1 2\n", 1).is_err());
    }
}
