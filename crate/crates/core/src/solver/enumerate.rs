use super::SolveError;
use crate::model::{IlpModel, Sense};

/// 2^25 assignments bound the sweep.
pub const ENUMERATE_MAX_VARS: usize = 25;

/// Every feasible 0/1 assignment of `m`, up to `cap`, in lexicographic order
/// (variable 0 most significant, 0 before 1). Rows are checked on partial
/// assignments by their reachable activity range, so infeasible subtrees are
/// skipped early.
pub fn enumerate_model_solutions(m: &IlpModel, cap: usize) -> Result<Vec<Vec<bool>>, SolveError> {
    let vars = m.variables.len();
    if vars > ENUMERATE_MAX_VARS {
        return Err(SolveError::TooManyVariables { vars, max: ENUMERATE_MAX_VARS });
    }
    let mut rows_of: Vec<Vec<(usize, f64)>> = vec![Vec::new(); vars];
    let mut lo = vec![0.0; m.constraints.len()];
    let mut hi = vec![0.0; m.constraints.len()];
    for (r, c) in m.constraints.iter().enumerate() {
        for &(v, coef) in &c.terms {
            rows_of[v].push((r, coef));
            if coef < 0.0 {
                lo[r] += coef;
            } else {
                hi[r] += coef;
            }
        }
    }
    let mut search = Enum { m, rows_of, lo, hi, cur: vec![false; vars], out: Vec::new(), cap };
    if search.rows_possible(0..m.constraints.len()) {
        search.dfs(0);
    }
    Ok(search.out)
}

struct Enum<'a> {
    m: &'a IlpModel,
    rows_of: Vec<Vec<(usize, f64)>>,
    lo: Vec<f64>,
    hi: Vec<f64>,
    cur: Vec<bool>,
    out: Vec<Vec<bool>>,
    cap: usize,
}

const EPS: f64 = 1e-9;

impl Enum<'_> {
    fn rows_possible(&self, rows: impl IntoIterator<Item = usize>) -> bool {
        rows.into_iter().all(|r| {
            let c = &self.m.constraints[r];
            match c.sense {
                Sense::Le => self.lo[r] <= c.rhs + EPS,
                Sense::Ge => self.hi[r] >= c.rhs - EPS,
                Sense::Eq => self.lo[r] <= c.rhs + EPS && self.hi[r] >= c.rhs - EPS,
            }
        })
    }

    /// Fixes variable `v` to `value`, narrowing the activity ranges.
    fn fix(&mut self, v: usize, value: bool, undo: bool) {
        let sign = if undo { -1.0 } else { 1.0 };
        for &(r, coef) in &self.rows_of[v] {
            if value {
                // activity gains coef for sure
                if coef < 0.0 {
                    self.hi[r] += sign * coef;
                } else {
                    self.lo[r] += sign * coef;
                }
            } else if coef < 0.0 {
                self.lo[r] -= sign * coef;
            } else {
                self.hi[r] -= sign * coef;
            }
        }
    }

    fn dfs(&mut self, v: usize) {
        if self.out.len() >= self.cap {
            return;
        }
        if v == self.cur.len() {
            self.out.push(self.cur.clone());
            return;
        }
        for value in [false, true] {
            self.cur[v] = value;
            self.fix(v, value, false);
            let rows: Vec<usize> = self.rows_of[v].iter().map(|&(r, _)| r).collect();
            if self.rows_possible(rows) {
                self.dfs(v + 1);
            }
            self.fix(v, value, true);
        }
        self.cur[v] = false;
    }
}
