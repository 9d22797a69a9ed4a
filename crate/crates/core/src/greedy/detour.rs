use crate::model::{prefix_feasible_ticks, ExpiryState, Instance, TimedWalk};
use crate::time::Time;

/// Longest last leg `d` toward `y` such that the periodic walk `[W, y]` with
/// that leg stays feasible.
///
/// Searches the multiples of the instance grid step between `dist(x, y)` and
/// `y`'s current time to expiry `s_y`; feasibility only gets harder as the
/// leg grows, so binary search applies. Returns `dist(x, y)` when no longer
/// leg works.
///
/// # Panics
/// If `walk` is empty or has holds off the instance grid.
pub fn max_feasible_detour(walk: &TimedWalk, y: usize, inst: &Instance) -> Time {
    assert!(!walk.is_empty(), "detour from an empty walk");
    let steps: Vec<(usize, i64)> = walk
        .steps
        .iter()
        .map(|s| (s.vertex, s.hold.ticks(inst.step()).expect("hold on the instance grid")))
        .collect();
    let mut state = ExpiryState::start(inst, steps[0].0);
    state.hold(inst, steps[0].1);
    for w in steps.windows(2) {
        state.advance(inst, w[1].0, inst.dist_ticks(w[0].0, w[1].0), w[1].1);
    }
    inst.ticks_to_time(detour_ticks(&steps, y, state.get(y), inst))
}

pub(crate) fn detour_ticks(steps: &[(usize, i64)], y: usize, s_y: i64, inst: &Instance) -> i64 {
    let x = steps.last().expect("non-empty prefix").0;
    let mut with_y = steps.to_vec();
    with_y.push((y, 0));
    let ok = |d: i64| prefix_feasible_ticks(&with_y, Some(d), inst);

    let mut lo = inst.dist_ticks(x, y);
    let mut hi = s_y.max(lo);
    if !ok(lo) {
        return lo;
    }
    while lo < hi {
        let mid = lo + (hi - lo + 1) / 2;
        if ok(mid) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    lo
}
