use crate::error::Result;
use crate::greedy::{best_of_restarts, build_walks, GreedyConfig};
use crate::model::{Instance, Solution};

/// Extends each walk by the most urgent vertex that keeps it feasible.
pub fn solve_simple_greedy(inst: &Instance, cfg: &GreedyConfig) -> Result<Solution> {
    best_of_restarts(inst, cfg, |inst, _, rng| {
        build_walks(inst, rng, |b, open| match b.pick_target(open) {
            Some(y) => {
                let travel = inst.dist_ticks(b.current(), y);
                b.push(y, travel, 0);
                true
            }
            None => false,
        })
    })
}
