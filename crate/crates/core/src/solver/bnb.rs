//! Assignment branch-and-bound.
//!
//! Nodes are placed one at a time, in a fixed order, into an existing
//! component or into one new component (so component indices form a
//! restricted-growth string over the order and every partition is reached
//! once). A branch is cut when a component stops being a k-plex, exceeds
//! `ub`, when the component count would pass `P`, when the `lb` deficit can
//! no longer be covered, or when the bound cannot beat the incumbent.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use super::score::Score;
use crate::config::CAPACITY_EPS;

const NONE: usize = usize::MAX;
const CHECK_EVERY: u64 = 1024;

/// Dense, 0-based view of the instance.
pub(crate) struct Instance<S> {
    pub n: usize,
    pub k: usize,
    pub adj: Vec<bool>,
    pub w: Vec<S>,
    pub neighbors: Vec<Vec<usize>>,
    pub q: Vec<f64>,
    pub lb: Option<f64>,
    pub ub: Option<f64>,
    pub max_comps: usize,
    pub share: Vec<f64>,
    /// Neighbors with positive share, best share first.
    pub partners: Vec<Vec<usize>>,
    pub size_cap: Vec<usize>,
    /// `q_prefix[t]` = sum of the `t` smallest node weights.
    pub q_prefix: Vec<f64>,
}

impl<S: Score> Instance<S> {
    pub(crate) fn set_share(&mut self, share: Vec<f64>) {
        let n = self.n;
        self.partners = (0..n)
            .map(|u| {
                let mut p: Vec<usize> = self.neighbors[u].iter().copied().filter(|&v| share[u * n + v] > 0.0).collect();
                p.sort_by(|&a, &b| share[u * n + b].total_cmp(&share[u * n + a]).then(a.cmp(&b)));
                p
            })
            .collect();
        self.share = share;
    }

    /// Most unassigned partners `u` can still take in a component of
    /// `size` members and node weight `comp_q`.
    pub(crate) fn partner_limit(&self, u: usize, size: usize, comp_q: f64) -> usize {
        let mut t = self.size_cap[u].saturating_sub(size + 1);
        if let Some(ub) = self.ub {
            let room = ub - comp_q - self.q[u] + CAPACITY_EPS;
            let fit = self.q_prefix.partition_point(|&s| s <= room).saturating_sub(1);
            t = t.min(fit);
        }
        t
    }
}

/// Incumbent shared between workers. The value cell only ever increases.
pub(crate) struct Shared {
    best_bits: AtomicU64,
    best: Mutex<Option<(f64, Vec<usize>)>>,
    pub stop: AtomicBool,
    pub nodes: AtomicU64,
    pub timed_out: AtomicBool,
}

impl Shared {
    pub(crate) fn new(initial: Option<(f64, Vec<usize>)>) -> Self {
        let v = initial.as_ref().map_or(f64::NEG_INFINITY, |(v, _)| *v);
        Self {
            best_bits: AtomicU64::new(v.to_bits()),
            best: Mutex::new(initial),
            stop: AtomicBool::new(false),
            nodes: AtomicU64::new(0),
            timed_out: AtomicBool::new(false),
        }
    }

    pub(crate) fn best_value(&self) -> f64 {
        f64::from_bits(self.best_bits.load(Ordering::Acquire))
    }

    /// Offers a solution; among equal values the lexicographically smaller
    /// labelling wins so that merged results do not depend on timing.
    fn offer<S: Score>(&self, value: S, labels: Vec<usize>) {
        let mut guard = self.best.lock().expect("incumbent lock");
        let replace = match guard.as_ref() {
            None => true,
            Some((v, l)) => S::improves(value, *v) || (value.to_f64() == *v && labels < *l),
        };
        if replace {
            let v = value.to_f64();
            *guard = Some((v, labels));
            self.best_bits.store(v.max(self.best_value()).to_bits(), Ordering::Release);
        }
    }

    pub(crate) fn take(&self) -> Option<(f64, Vec<usize>)> {
        self.best.lock().expect("incumbent lock").clone()
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) enum Mode {
    /// Maximize; options tried best score first.
    Optimize,
    /// Stop at the first completion reaching `target`; options tried in
    /// label order, so the first hit is the lexicographically smallest.
    FirstReaching { target: f64 },
}

pub(crate) struct Limits {
    pub deadline: Option<Instant>,
    pub progress_every: Option<u64>,
    pub root_bound: f64,
}

pub(crate) struct Searcher<'a, S> {
    inst: &'a Instance<S>,
    order: &'a [usize],
    shared: &'a Shared,
    limits: &'a Limits,
    mode: Mode,
    comp_of: Vec<usize>,
    members: Vec<Vec<usize>>,
    comp_q: Vec<f64>,
    miss: Vec<usize>,
    gain: Vec<S>,
    nonadj: Vec<u32>,
    current: S,
    free_q: f64,
    joinable: Vec<bool>,
    nodes: u64,
    stopped: bool,
    found: Option<Vec<usize>>,
}

impl<'a, S: Score> Searcher<'a, S> {
    pub(crate) fn new(inst: &'a Instance<S>, order: &'a [usize], shared: &'a Shared, limits: &'a Limits, mode: Mode) -> Self {
        let n = inst.n;
        Self {
            inst,
            order,
            shared,
            limits,
            mode,
            comp_of: vec![NONE; n],
            members: Vec::new(),
            comp_q: Vec::new(),
            miss: vec![0; n],
            gain: vec![S::ZERO; n * n],
            nonadj: vec![0; n * n],
            current: S::ZERO,
            free_q: inst.q.iter().sum(),
            joinable: vec![false; n],
            nodes: 0,
            stopped: false,
            found: None,
        }
    }

    pub(crate) fn nodes(&self) -> u64 {
        self.nodes
    }

    pub(crate) fn stopped(&self) -> bool {
        self.stopped
    }

    pub(crate) fn found(&self) -> Option<&[usize]> {
        self.found.as_deref()
    }

    fn assign(&mut self, u: usize, c: usize) {
        let inst = self.inst;
        let n = inst.n;
        if c == self.members.len() {
            self.members.push(Vec::new());
            self.comp_q.push(0.0);
        }
        for &m in &self.members[c] {
            if !inst.adj[u * n + m] {
                self.miss[m] += 1;
            }
        }
        self.miss[u] = self.nonadj[u * n + c] as usize;
        self.current += self.gain[u * n + c];
        self.members[c].push(u);
        self.comp_q[c] += inst.q[u];
        self.free_q -= inst.q[u];
        self.comp_of[u] = c;
        for v in 0..n {
            self.gain[v * n + c] += inst.w[v * n + u];
            if v != u && !inst.adj[v * n + u] {
                self.nonadj[v * n + c] += 1;
            }
        }
    }

    fn unassign(&mut self, u: usize) {
        let inst = self.inst;
        let n = inst.n;
        let c = self.comp_of[u];
        for v in 0..n {
            self.gain[v * n + c] -= inst.w[v * n + u];
            if v != u && !inst.adj[v * n + u] {
                self.nonadj[v * n + c] -= 1;
            }
        }
        self.members[c].pop();
        self.comp_q[c] -= inst.q[u];
        self.free_q += inst.q[u];
        self.comp_of[u] = NONE;
        self.current -= self.gain[u * n + c];
        for &m in &self.members[c] {
            if !inst.adj[u * n + m] {
                self.miss[m] -= 1;
            }
        }
        self.miss[u] = 0;
        if self.members[c].is_empty() && c + 1 == self.members.len() {
            self.members.pop();
            self.comp_q.pop();
        }
    }

    /// Places `order[d]` into `prefix[d]` for every `d`.
    pub(crate) fn apply(&mut self, prefix: &[usize]) {
        for (d, &c) in prefix.iter().enumerate() {
            self.assign(self.order[d], c);
        }
    }

    pub(crate) fn reset(&mut self, depth: usize) {
        for d in (0..depth).rev() {
            self.unassign(self.order[d]);
        }
    }

    fn can_join(&self, u: usize, c: usize) -> bool {
        let inst = self.inst;
        let n = inst.n;
        let missing = self.nonadj[u * n + c] as usize;
        if missing >= inst.k {
            return false;
        }
        if let Some(ub) = inst.ub {
            if self.comp_q[c] + inst.q[u] > ub + CAPACITY_EPS {
                return false;
            }
        }
        if missing > 0 {
            for &m in &self.members[c] {
                if !inst.adj[u * n + m] && self.miss[m] + 1 >= inst.k {
                    return false;
                }
            }
        }
        true
    }

    fn future(&self, u: usize, comp: Option<usize>) -> f64 {
        let inst = self.inst;
        let n = inst.n;
        let (size, cq) = comp.map_or((0, 0.0), |c| (self.members[c].len(), self.comp_q[c]));
        let limit = inst.partner_limit(u, size, cq);
        if limit == 0 {
            return 0.0;
        }
        let mut sum = 0.0;
        let mut taken = 0;
        for &v in &inst.partners[u] {
            if self.comp_of[v] != NONE {
                continue;
            }
            if let Some(c) = comp {
                if self.nonadj[v * n + c] as usize >= inst.k {
                    continue;
                }
                if let Some(ub) = inst.ub {
                    if cq + inst.q[u] + inst.q[v] > ub + CAPACITY_EPS {
                        continue;
                    }
                }
            }
            sum += inst.share[u * n + v];
            taken += 1;
            if taken == limit {
                break;
            }
        }
        sum
    }

    /// Upper bound on completions of the current partial assignment, or
    /// `None` when no feasible completion exists. Fills `branch` with the
    /// scored options of `order[depth]`.
    pub(crate) fn evaluate(&mut self, depth: usize, branch: &mut Vec<(f64, usize)>) -> Option<f64> {
        let inst = self.inst;
        let n = inst.n;
        let ncomp = self.members.len();
        let can_open = ncomp < inst.max_comps;
        let base = self.current.to_f64();
        let mut total = base;
        let mut simple = base;
        branch.clear();
        for (idx, &u) in self.order[depth..].iter().enumerate() {
            let mut best = f64::NEG_INFINITY;
            for c in 0..ncomp {
                let ok = self.can_join(u, c);
                self.joinable[c] = ok;
                if ok {
                    let v = self.gain[u * n + c].to_f64() + self.future(u, Some(c));
                    if idx == 0 {
                        branch.push((v, c));
                    }
                    best = best.max(v);
                }
            }
            if can_open {
                let v = self.future(u, None);
                if idx == 0 {
                    branch.push((v, ncomp));
                }
                best = best.max(v);
            }
            if best == f64::NEG_INFINITY {
                return None;
            }
            total += best;
            for &v in &inst.neighbors[u] {
                let w = inst.w[u * n + v].to_f64();
                if w <= 0.0 {
                    continue;
                }
                let c = self.comp_of[v];
                if c == NONE {
                    if v > u {
                        simple += w;
                    }
                } else if self.joinable[c] {
                    simple += w;
                }
            }
        }
        if let Some(lb) = inst.lb {
            if !self.lb_coverable(depth, lb) {
                return None;
            }
        }
        Some(total.min(simple))
    }

    fn lb_coverable(&self, depth: usize, lb: f64) -> bool {
        let inst = self.inst;
        let n = inst.n;
        let mut deficit_total = 0.0;
        for c in 0..self.members.len() {
            let deficit = lb - self.comp_q[c];
            if deficit <= CAPACITY_EPS {
                continue;
            }
            deficit_total += deficit;
            let reachable: f64 = self.order[depth..]
                .iter()
                .filter(|&&v| {
                    (self.nonadj[v * n + c] as usize) < inst.k
                        && inst.ub.is_none_or(|ub| self.comp_q[c] + inst.q[v] <= ub + CAPACITY_EPS)
                })
                .map(|&v| inst.q[v])
                .sum();
            if reachable + CAPACITY_EPS < deficit {
                return false;
            }
        }
        deficit_total <= self.free_q + CAPACITY_EPS
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes.is_multiple_of(CHECK_EVERY) {
            self.shared.nodes.fetch_add(CHECK_EVERY, Ordering::Relaxed);
            if self.shared.stop.load(Ordering::Relaxed) {
                self.stopped = true;
            } else if self.limits.deadline.is_some_and(|d| Instant::now() >= d) {
                self.shared.timed_out.store(true, Ordering::Relaxed);
                self.shared.stop.store(true, Ordering::Relaxed);
                self.stopped = true;
            }
        }
        if let Some(every) = self.limits.progress_every {
            if every > 0 && self.nodes.is_multiple_of(every) {
                let lb = self.shared.best_value();
                let ub = self.limits.root_bound.max(lb);
                let (gap, _) = super::duality_gap(lb, ub);
                eprintln!("nodes={} LB={} UB={:.2} gap={:.2}%", self.nodes, lb, ub, gap);
            }
        }
        !self.stopped
    }

    fn leaf(&mut self) {
        if let Some(lb) = self.inst.lb {
            if self.comp_q.iter().any(|&q| q < lb - CAPACITY_EPS) {
                return;
            }
        }
        match self.mode {
            Mode::Optimize => {
                if S::improves(self.current, self.shared.best_value())
                    || self.current.to_f64() == self.shared.best_value()
                {
                    self.shared.offer(self.current, self.comp_of.clone());
                }
            }
            Mode::FirstReaching { target } => {
                if S::reaches(self.current, target) {
                    self.found = Some(self.comp_of.clone());
                }
            }
        }
    }

    pub(crate) fn dfs(&mut self, depth: usize) {
        if !self.tick() {
            return;
        }
        if depth == self.inst.n {
            self.leaf();
            return;
        }
        let mut branch = Vec::new();
        let Some(bound) = self.evaluate(depth, &mut branch) else {
            return;
        };
        match self.mode {
            Mode::Optimize => {
                let inc = self.shared.best_value();
                if inc > f64::NEG_INFINITY && S::bound_prunes(bound, inc) {
                    return;
                }
                branch.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
            }
            Mode::FirstReaching { target } => {
                if S::bound_misses(bound, target) {
                    return;
                }
                branch.sort_by_key(|&(_, c)| c);
            }
        }
        let u = self.order[depth];
        for &(_, c) in &branch {
            self.assign(u, c);
            self.dfs(depth + 1);
            self.unassign(u);
            if self.stopped || self.found.is_some() {
                return;
            }
        }
    }

    pub(crate) fn flush(&self) {
        self.shared.nodes.fetch_add(self.nodes % CHECK_EVERY, Ordering::Relaxed);
    }
}

/// Splits the top of the tree into at least `want` prefixes (or stops at a
/// full depth) and lets `workers` threads drain them.
pub(crate) fn search_parallel<S: Score>(
    inst: &Instance<S>,
    order: &[usize],
    shared: &Shared,
    limits: &Limits,
    workers: usize,
) {
    let want = workers * 8;
    let mut frontier: Vec<Vec<usize>> = vec![Vec::new()];
    let mut depth = 0;
    {
        let mut probe = Searcher::new(inst, order, shared, limits, Mode::Optimize);
        let mut branch = Vec::new();
        while frontier.len() < want && depth < inst.n {
            let mut next = Vec::new();
            for prefix in &frontier {
                probe.apply(prefix);
                if let Some(bound) = probe.evaluate(depth, &mut branch) {
                    let inc = shared.best_value();
                    if !(inc > f64::NEG_INFINITY && S::bound_prunes(bound, inc)) {
                        branch.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
                        for &(_, c) in &branch {
                            let mut p = prefix.clone();
                            p.push(c);
                            next.push(p);
                        }
                    }
                }
                probe.reset(depth);
            }
            frontier = next;
            depth += 1;
        }
        probe.flush();
    }
    let cursor = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..workers {
            let frontier = &frontier;
            let cursor = &cursor;
            std::thread::Builder::new()
                .stack_size(256 << 20)
                .spawn_scoped(scope, move || {
                    let mut s = Searcher::new(inst, order, shared, limits, Mode::Optimize);
                    loop {
                        let i = cursor.fetch_add(1, Ordering::Relaxed);
                        if i >= frontier.len() || s.stopped() {
                            break;
                        }
                        s.apply(&frontier[i]);
                        s.dfs(depth);
                        s.reset(depth);
                    }
                    s.flush();
                })
                .expect("spawn search worker");
        }
    });
}
