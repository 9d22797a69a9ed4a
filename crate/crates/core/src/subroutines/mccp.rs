use crate::model::Instance;
use crate::subroutines::{improve_two_opt, tour_ticks, tsp_tour, Cycle};
use crate::time::Time;

/// Approximation factor assumed for [`mccp`] when auditing robot counts.
///
/// Tour splitting has no proven constant on top of a heuristic tour; this value
/// is the one the test suite checks against exhaustive cycle-cover search.
pub const MCCP_ALPHA: u32 = 5;

/// Covers `subset` with few vertex-disjoint cycles of length at most `lambda`.
///
/// Splits a heuristic tour into maximal consecutive segments of path length at
/// most `lambda / 2` (closing a segment at most doubles it), then joins
/// neighbouring segments while the closed result still fits. Every rotation of
/// the tour is tried and the cover with the fewest cycles is kept. A vertex
/// farther than `lambda / 2` from all others ends up as a zero-length
/// singleton cycle, so a cover always exists.
///
/// # Panics
/// If `subset` is empty.
pub fn mccp(inst: &Instance, subset: &[usize], lambda: Time) -> Vec<Cycle> {
    let tour = tsp_tour(inst, subset);
    let budget = lambda.floor_ticks(inst.step());
    let k = tour.vertices.len();

    let cover = if tour_ticks(inst, &tour.vertices) <= budget {
        vec![tour.vertices.clone()]
    } else {
        let mut best: Option<(usize, i64, Vec<Vec<usize>>)> = None;
        for s in 0..k {
            let mut order = tour.vertices.clone();
            order.rotate_left(s);
            let cycles = merge(inst, split(inst, &order, budget), budget);
            let total: i64 = cycles.iter().map(|c| tour_ticks(inst, c)).sum();
            if best.as_ref().is_none_or(|(n, t, _)| (cycles.len(), total) < (*n, *t)) {
                best = Some((cycles.len(), total, cycles));
            }
        }
        best.expect("non-empty tour").2
    };

    let cycles: Vec<Cycle> = cover
        .into_iter()
        .map(|mut c| {
            improve_two_opt(inst, &mut c);
            Cycle::new(inst, c)
        })
        .collect();
    assert_cover(inst, subset, &cycles, budget);
    cycles
}

fn split(inst: &Instance, order: &[usize], budget: i64) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut path = 0;
    for &v in order {
        match out.last_mut() {
            Some(seg) if 2 * (path + inst.dist_ticks(*seg.last().unwrap(), v)) <= budget => {
                path += inst.dist_ticks(*seg.last().unwrap(), v);
                seg.push(v);
            }
            _ => {
                out.push(vec![v]);
                path = 0;
            }
        }
    }
    out
}

fn merge(inst: &Instance, segments: Vec<Vec<usize>>, budget: i64) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    for seg in segments {
        if let Some(last) = out.last_mut() {
            let mut joined = last.clone();
            joined.extend_from_slice(&seg);
            if tour_ticks(inst, &joined) <= budget {
                *last = joined;
                continue;
            }
        }
        out.push(seg);
    }
    out
}

fn assert_cover(inst: &Instance, subset: &[usize], cycles: &[Cycle], budget: i64) {
    let mut seen: Vec<usize> = cycles.iter().flat_map(|c| c.vertices.iter().copied()).collect();
    seen.sort_unstable();
    let mut want = subset.to_vec();
    want.sort_unstable();
    want.dedup();
    assert_eq!(seen, want, "cycle cover must partition the subset");
    for c in cycles {
        assert!(tour_ticks(inst, &c.vertices) <= budget, "cycle over budget");
    }
}
