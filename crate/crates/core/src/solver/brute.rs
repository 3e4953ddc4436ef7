use std::time::Instant;

use super::{SolveError, SolveResult};
use crate::config::SolverConfig;
use crate::graph::WeightedGraph;
use crate::partition::RestrictedGrowth;
use crate::semantics::{partition_weight, validate_partition};

/// Bell(12) ≈ 4.2 million partitions.
pub const BRUTE_FORCE_MAX_NODES: usize = 12;

/// Exhaustive oracle: every set partition in restricted-growth order,
/// filtered by [`validate_partition`]. Ties keep the first (smallest) one.
pub fn brute_force_optimum(g: &WeightedGraph, cfg: &SolverConfig) -> Result<SolveResult, SolveError> {
    cfg.validate()?;
    let n = g.node_count();
    if n > BRUTE_FORCE_MAX_NODES {
        return Err(SolveError::TooManyNodes { n, max: BRUTE_FORCE_MAX_NODES });
    }
    let start = Instant::now();
    let mut best = None;
    let mut count = 0u64;
    for pt in RestrictedGrowth::new(n) {
        count += 1;
        if !validate_partition(g, &pt, cfg).is_empty() {
            continue;
        }
        let v = partition_weight(g, &pt);
        if best.as_ref().is_none_or(|(b, _)| v > *b) {
            best = Some((v, pt));
        }
    }
    Ok(match best {
        Some((v, pt)) => SolveResult::optimal(v, pt, count, start.elapsed()),
        None => SolveResult::infeasible(count, start.elapsed()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::Status;

    #[test]
    fn spec_examples() {
        let tri = WeightedGraph::new(3, [(1, 2, 1.0), (2, 3, 1.0), (1, 3, 1.0)]).unwrap();
        let r = brute_force_optimum(&tri, &SolverConfig::new(1)).unwrap();
        assert_eq!(r.value, Some(3.0));
        assert_eq!(r.partition.unwrap().component_count(), 1);

        let path = WeightedGraph::new(3, [(1, 2, 5.0), (2, 3, 5.0)]).unwrap();
        let r = brute_force_optimum(&path, &SolverConfig::new(1)).unwrap();
        assert_eq!(r.value, Some(5.0));
        let r = brute_force_optimum(&path, &SolverConfig::new(2)).unwrap();
        assert_eq!(r.value, Some(10.0));
        assert_eq!(r.partition.unwrap().component_count(), 1);
    }

    #[test]
    fn limits() {
        let g = WeightedGraph::new(13, []).unwrap();
        assert!(matches!(brute_force_optimum(&g, &SolverConfig::new(1)), Err(SolveError::TooManyNodes { .. })));
        let path = WeightedGraph::new(3, [(1, 2, 5.0), (2, 3, 5.0)]).unwrap();
        let r = brute_force_optimum(&path, &SolverConfig::new(1).with_max_components(1)).unwrap();
        assert_eq!(r.status, Status::Infeasible);
    }
}
