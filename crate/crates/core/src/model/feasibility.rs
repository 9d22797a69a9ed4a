//! Time-to-expiry bookkeeping and the periodic feasibility check.

use std::ops::{Add, Sub};

use num_traits::Zero;

use crate::model::{Instance, TimedWalk};
use crate::time::Time;

/// Time-to-expiry vector of a single robot's walk.
///
/// `s[i]` is how long vertex `i` may still go unvisited. Arriving at a vertex
/// (and for the duration of a hold there) resets its entry to `r(i)`; every
/// other entry drops by the time that passes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpiryState {
    pub s: Vec<i64>,
    pub current: usize,
    /// Elapsed walk time in instance ticks, holds included.
    pub elapsed: i64,
}

impl ExpiryState {
    /// Robot standing at `start` at time 0, every vertex fresh.
    pub fn start(inst: &Instance, start: usize) -> Self {
        let s = inst.vertices().map(|v| inst.r_ticks(v)).collect();
        ExpiryState { s, current: start, elapsed: 0 }
    }

    /// Move to `to` taking `travel` ticks, then stay there for `hold` ticks.
    pub fn advance(&mut self, inst: &Instance, to: usize, travel: i64, hold: i64) {
        let dt = travel + hold;
        for (i, s) in self.s.iter_mut().enumerate() {
            *s = if i == to { inst.r_ticks(i) } else { *s - dt };
        }
        self.current = to;
        self.elapsed += dt;
    }

    /// Stay at the current vertex for `hold` more ticks.
    pub fn hold(&mut self, inst: &Instance, hold: i64) {
        let here = self.current;
        self.advance(inst, here, 0, hold);
    }

    pub fn get(&self, v: usize) -> i64 {
        self.s[v]
    }
}

/// Checks a cyclic sequence of visits in which step `i` is followed by a leg
/// of `legs[i]` time units (the last leg closes the cycle). Returns true iff
/// every vertex in the sequence is revisited within its constraint.
///
/// Runs over two copies of the cycle so that every gap, including the one
/// across the period boundary, is seen once in full. Tracks the last
/// departure per vertex, which is the same as decrementing every expiry each
/// step but costs O(1) per visit.
pub(crate) fn cyclic_feasible<T>(
    steps: &[(usize, T)],
    legs: &[T],
    limit: impl Fn(usize) -> T,
    n: usize,
) -> bool
where
    T: Copy + Ord + Zero + Add<Output = T> + Sub<Output = T>,
{
    debug_assert_eq!(steps.len(), legs.len());
    let mut last_departure: Vec<Option<T>> = vec![None; n];
    for &(v, _) in steps {
        last_departure[v] = Some(T::zero());
    }
    let mut now = T::zero();
    for _ in 0..2 {
        for (&(v, hold), &leg) in steps.iter().zip(legs) {
            let left = last_departure[v].expect("initialised above");
            if now - left > limit(v) {
                return false;
            }
            now = now + hold;
            last_departure[v] = Some(now);
            now = now + leg;
        }
    }
    true
}

/// True iff the periodic repetition of `walk` keeps every vertex it visits
/// within its latency constraint. Vertices outside the walk are ignored.
pub fn periodic_feasibility(walk: &TimedWalk, inst: &Instance) -> bool {
    assert!(!walk.steps.is_empty(), "periodic_feasibility on an empty walk");
    let steps: Vec<(usize, Time)> = walk.steps.iter().map(|s| (s.vertex, s.hold)).collect();
    let legs: Vec<Time> = (0..walk.steps.len()).map(|i| walk.leg(inst, i)).collect();
    cyclic_feasible(&steps, &legs, |v| inst.r(v), inst.n())
}

/// Tick-based check used by the greedy solvers: `steps` are `(vertex, hold)`
/// pairs, consecutive steps are joined by direct travel except that the leg
/// into the last step takes `last_leg` ticks instead.
pub(crate) fn prefix_feasible_ticks(
    steps: &[(usize, i64)],
    last_leg: Option<i64>,
    inst: &Instance,
) -> bool {
    let k = steps.len();
    let mut legs: Vec<i64> = (0..k)
        .map(|i| inst.dist_ticks(steps[i].0, steps[(i + 1) % k].0))
        .collect();
    if let (Some(d), true) = (last_leg, k >= 2) {
        legs[k - 2] = d;
    }
    cyclic_feasible(steps, &legs, |v| inst.r_ticks(v), inst.n())
}
