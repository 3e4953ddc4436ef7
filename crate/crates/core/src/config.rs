use std::time::Duration;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error("k must be at least 1")]
    ZeroK,
    #[error("lower capacity {lb} exceeds upper capacity {ub}")]
    LbAboveUb { lb: f64, ub: f64 },
    #[error("capacity bounds must be finite and nonnegative")]
    BadCapacity,
    #[error("component limit must be at least 1")]
    ZeroComponents,
    #[error("worker count must be at least 1")]
    ZeroWorkers,
}

/// Problem parameters plus search controls.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub k: usize,
    pub time_limit: Option<Duration>,
    /// Minimum total node weight per component.
    pub lb: Option<f64>,
    /// Maximum total node weight per component.
    pub ub: Option<f64>,
    /// Maximum number of components.
    pub max_components: Option<usize>,
    pub deterministic: bool,
    pub workers: usize,
    /// Emit a progress line to stderr every this many search nodes.
    pub progress_every: Option<u64>,
}

impl SolverConfig {
    pub fn new(k: usize) -> Self {
        Self {
            k,
            time_limit: None,
            lb: None,
            ub: None,
            max_components: None,
            deterministic: true,
            workers: 1,
            progress_every: None,
        }
    }

    pub fn with_lb(mut self, lb: f64) -> Self {
        self.lb = Some(lb);
        self
    }

    pub fn with_ub(mut self, ub: f64) -> Self {
        self.ub = Some(ub);
        self
    }

    pub fn with_max_components(mut self, p: usize) -> Self {
        self.max_components = Some(p);
        self
    }

    pub fn with_time_limit(mut self, limit: Duration) -> Self {
        self.time_limit = Some(limit);
        self
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.k == 0 {
            return Err(ConfigError::ZeroK);
        }
        for b in [self.lb, self.ub].into_iter().flatten() {
            if !(b.is_finite() && b >= 0.0) {
                return Err(ConfigError::BadCapacity);
            }
        }
        if let (Some(lb), Some(ub)) = (self.lb, self.ub) {
            if lb > ub {
                return Err(ConfigError::LbAboveUb { lb, ub });
            }
        }
        if self.max_components == Some(0) {
            return Err(ConfigError::ZeroComponents);
        }
        if self.workers == 0 {
            return Err(ConfigError::ZeroWorkers);
        }
        Ok(())
    }
}

/// Slack used when comparing sums of node weights against lb/ub.
pub(crate) const CAPACITY_EPS: f64 = 1e-9;
