//! Partition-based greedy heuristics.
//!
//! Both build one walk at a time from a random start, always extending toward
//! the vertex closest to expiry among those that keep the periodic walk
//! feasible. Vertices that cannot join the current walk are expired and left
//! for the next robot, so every vertex ends up in exactly one walk.

mod detour;
mod orienteering;
mod simple;

pub use detour::max_feasible_detour;
pub use orienteering::solve_orienteering_greedy;
pub use simple::solve_simple_greedy;

use num_traits::ToPrimitive;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{prefix_feasible_ticks, ExpiryState, Instance, Solution, Step, TimedWalk};
use crate::time::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreedyConfig {
    /// Weight factor for vertices the walk already visits, in `(0, 1]`.
    pub m: Rational,
    pub restarts: usize,
    pub seed: u64,
}

impl Default for GreedyConfig {
    fn default() -> Self {
        GreedyConfig { m: Rational::new(1, 10), restarts: 5, seed: 0 }
    }
}

impl GreedyConfig {
    pub fn validate(&self) -> Result<()> {
        if self.m <= Rational::from_integer(0) || self.m > Rational::from_integer(1) {
            return Err(Error::Config(format!("m = {} must lie in (0, 1]", self.m)));
        }
        if self.restarts == 0 {
            return Err(Error::Config("restarts must be at least 1".into()));
        }
        Ok(())
    }

    pub(crate) fn m_f64(&self) -> f64 {
        self.m.to_f64().unwrap_or(0.1)
    }
}

/// Runs `build` once per restart, each with its own random stream, and keeps
/// the fewest walks (then the shortest total length, then the earliest run).
fn best_of_restarts(
    inst: &Instance,
    cfg: &GreedyConfig,
    build: impl Fn(&Instance, &GreedyConfig, &mut ChaCha8Rng) -> Vec<TimedWalk>,
) -> Result<Solution> {
    cfg.validate()?;
    let mut best: Option<(usize, i64, Vec<TimedWalk>)> = None;
    for i in 0..cfg.restarts {
        let mut rng = restart_rng(cfg.seed, i);
        let walks = build(inst, cfg, &mut rng);
        let total = walks.iter().map(|w| walk_ticks(inst, w)).sum::<i64>();
        if best.as_ref().is_none_or(|(n, t, _)| (walks.len(), total) < (*n, *t)) {
            best = Some((walks.len(), total, walks));
        }
    }
    Ok(Solution::new(best.expect("restarts >= 1").2))
}

pub(crate) fn restart_rng(seed: u64, restart: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(restart as u64);
    rng
}

fn walk_ticks(inst: &Instance, w: &TimedWalk) -> i64 {
    let holds: i64 = w.steps.iter().map(|s| s.hold.ticks(inst.step()).expect("hold on grid")).sum();
    let k = w.steps.len();
    holds + (0..k).map(|i| inst.dist_ticks(w.steps[i].vertex, w.steps[(i + 1) % k].vertex)).sum::<i64>()
}

/// Upper bound on appends per walk; a walk this long stops and leaves what it
/// has not reached to later robots.
fn append_cap(n: usize) -> usize {
    64 * n + 64
}

/// Vertices still to be assigned, and the walk under construction.
struct Builder<'a> {
    inst: &'a Instance,
    steps: Vec<(usize, i64)>,
    state: ExpiryState,
    visited: Vec<bool>,
    expired: Vec<bool>,
}

impl<'a> Builder<'a> {
    fn new(inst: &'a Instance, start: usize) -> Self {
        let mut visited = vec![false; inst.n()];
        visited[start] = true;
        Builder {
            inst,
            steps: vec![(start, 0)],
            state: ExpiryState::start(inst, start),
            visited,
            expired: vec![false; inst.n()],
        }
    }

    fn start(&self) -> usize {
        self.steps[0].0
    }

    fn current(&self) -> usize {
        self.state.current
    }

    /// True when every open vertex (not expired) is already on the walk.
    fn done(&self, open: &[usize]) -> bool {
        open.iter().all(|&v| self.visited[v] || self.expired[v])
    }

    /// Open candidates other than the current vertex, most urgent first.
    fn by_urgency(&self, open: &[usize]) -> Vec<usize> {
        let here = self.current();
        let mut c: Vec<usize> = open.iter().copied().filter(|&v| v != here && !self.expired[v]).collect();
        c.sort_by_key(|&v| (self.state.get(v), v));
        c
    }

    /// Feasibility of the walk extended by `y`, with the last leg lasting
    /// `leg` ticks (direct travel if `None`).
    fn feasible_with(&self, y: usize, leg: Option<i64>) -> bool {
        let mut steps = self.steps.clone();
        steps.push((y, 0));
        prefix_feasible_ticks(&steps, leg, self.inst)
    }

    /// First open vertex, in urgency order, that keeps the walk feasible.
    /// Unvisited vertices that fail are expired on the way.
    fn pick_target(&mut self, open: &[usize]) -> Option<usize> {
        for y in self.by_urgency(open) {
            if self.feasible_with(y, None) {
                return Some(y);
            }
            if !self.visited[y] {
                self.expired[y] = true;
            }
        }
        None
    }

    fn push(&mut self, v: usize, travel: i64, hold: i64) {
        self.state.advance(self.inst, v, travel, hold);
        self.steps.push((v, hold));
        self.visited[v] = true;
    }

    fn check_invariant(&self) {
        debug_assert!(
            prefix_feasible_ticks(&self.steps, None, self.inst),
            "greedy walk prefix lost periodic feasibility"
        );
    }

    fn into_walk(self) -> TimedWalk {
        let steps = self
            .steps
            .iter()
            .map(|&(v, h)| Step::new(v, self.inst.ticks_to_time(h)))
            .collect();
        TimedWalk::new(steps, crate::time::Time::ZERO)
    }
}

/// Robot loop shared by both heuristics: `extend` grows one walk until it
/// returns false; the visited vertices leave the pool.
fn build_walks(
    inst: &Instance,
    rng: &mut ChaCha8Rng,
    mut extend: impl FnMut(&mut Builder, &[usize]) -> bool,
) -> Vec<TimedWalk> {
    let mut open: Vec<usize> = inst.vertices().collect();
    let mut walks = Vec::new();
    while !open.is_empty() {
        let start = open[rng.random_range(0..open.len())];
        let mut b = Builder::new(inst, start);
        let cap = append_cap(inst.n());
        let mut appends = 0;
        while !b.done(&open) && appends < cap && extend(&mut b, &open) {
            b.check_invariant();
            appends += 1;
        }
        let visited = b.visited.clone();
        open.retain(|&v| !visited[v]);
        walks.push(b.into_walk());
    }
    walks
}
