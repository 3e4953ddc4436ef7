use std::fmt::Debug;
use std::ops::{Add, AddAssign, Sub, SubAssign};

/// Objective arithmetic. `i64` is used whenever every edge weight is an
/// integer, which makes optimum comparisons exact; `f64` otherwise, with a
/// relative tolerance of 1e-9.
///
/// Incumbent values travel as `f64`; integer values stay below 2^53 so the
/// conversion is exact.
pub(crate) trait Score:
    Copy + PartialOrd + Add<Output = Self> + Sub<Output = Self> + AddAssign + SubAssign + Send + Sync + Debug + 'static
{
    const ZERO: Self;
    fn from_weight(w: f64) -> Self;
    fn to_f64(self) -> f64;
    /// A leaf of value `value` beats the incumbent.
    fn improves(value: Self, incumbent: f64) -> bool;
    /// No completion under `bound` can beat the incumbent.
    fn bound_prunes(bound: f64, incumbent: f64) -> bool;
    /// No completion under `bound` can reach `target`.
    fn bound_misses(bound: f64, target: f64) -> bool;
    fn reaches(value: Self, target: f64) -> bool;
}

const REL_TOL: f64 = 1e-9;

fn tol(x: f64) -> f64 {
    REL_TOL * x.abs().max(1.0)
}

impl Score for i64 {
    const ZERO: Self = 0;

    fn from_weight(w: f64) -> Self {
        w as i64
    }

    fn to_f64(self) -> f64 {
        self as f64
    }

    fn improves(value: Self, incumbent: f64) -> bool {
        value as f64 > incumbent
    }

    fn bound_prunes(bound: f64, incumbent: f64) -> bool {
        // integral optimum: the bound must clear incumbent + 1
        bound < incumbent + 1.0 - 1e-7 * bound.abs().max(1.0)
    }

    fn bound_misses(bound: f64, target: f64) -> bool {
        bound < target - 1e-7 * bound.abs().max(1.0)
    }

    fn reaches(value: Self, target: f64) -> bool {
        value as f64 >= target
    }
}

impl Score for f64 {
    const ZERO: Self = 0.0;

    fn from_weight(w: f64) -> Self {
        w
    }

    fn to_f64(self) -> f64 {
        self
    }

    fn improves(value: Self, incumbent: f64) -> bool {
        value > incumbent + tol(incumbent)
    }

    fn bound_prunes(bound: f64, incumbent: f64) -> bool {
        bound <= incumbent + tol(incumbent)
    }

    fn bound_misses(bound: f64, target: f64) -> bool {
        bound < target - tol(target)
    }

    fn reaches(value: Self, target: f64) -> bool {
        value >= target - tol(target)
    }
}
