use crate::error::Result;
use crate::greedy::detour::detour_ticks;
use crate::greedy::{best_of_restarts, build_walks, Builder, GreedyConfig};
use crate::model::{Instance, Solution};
use crate::subroutines::orienteering_ticks;

/// Like the simple greedy, but the leg toward each target is stretched to the
/// longest feasible duration and filled with a prize-collecting path.
///
/// Prizes are `1 / s_v` so urgent vertices weigh most; vertices already on
/// the walk are scaled by `cfg.m`. Unvisited vertices whose expiry would pass
/// before the walk could close through them are expired first. Time left over
/// when the path is shorter than the stretched leg is spent holding at the
/// target.
pub fn solve_orienteering_greedy(inst: &Instance, cfg: &GreedyConfig) -> Result<Solution> {
    best_of_restarts(inst, cfg, |inst, cfg, rng| {
        let m = cfg.m_f64();
        build_walks(inst, rng, |b, open| {
            let Some(y) = b.pick_target(open) else { return false };
            extend_toward(b, open, y, m);
            true
        })
    })
}

fn extend_toward(b: &mut Builder, open: &[usize], y: usize, m: f64) {
    let inst = b.inst;
    let x = b.current();
    let a = b.start();
    let d = detour_ticks(&b.steps, y, b.state.get(y), inst);

    let close = d + inst.dist_ticks(y, a);
    for &z in open {
        if z != y && !b.visited[z] && !b.expired[z] && b.state.get(z) < close {
            b.expired[z] = true;
        }
    }

    let candidates: Vec<usize> = open.iter().copied().filter(|&v| !b.expired[v]).collect();
    let psi: Vec<f64> = inst
        .vertices()
        .map(|v| {
            let w = 1.0 / b.state.get(v).max(1) as f64;
            if b.visited[v] {
                w * m
            } else {
                w
            }
        })
        .collect();
    let path = orienteering_ticks(inst, &candidates, x, y, d, &psi);
    debug_assert!(path.length <= d);

    for w in path.vertices.windows(2) {
        let hold = if w[1] == y { d - path.length } else { 0 };
        b.push(w[1], inst.dist_ticks(w[0], w[1]), hold);
    }
}
